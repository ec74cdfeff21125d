"""Zero-sum constants of rank <= 2 finite abelian groups.

Exhaustive computation of D, eta, s and s_{exp N}; enumeration and
classification of the extremal sequences; verification commands for the
supporting structural lemmas.
"""

from .constants import SearchReport, check_direct_formulas, formula_value, longest_lacking
from .criteria import (
    Criterion,
    SumProfile,
    build_profile,
    has_zero_sum_of_length,
    lacks,
    verify_shift_lemma,
    witness,
)
from .groups import (
    Automorphism,
    Element,
    GroupSpec,
    automorphisms,
    is_basis_pair,
    is_generating_pair,
    natural_projection,
    order_of,
)
from .inverse import (
    CheckResult,
    ClassifyMatch,
    ExtremalEnumeration,
    ExtremalForm,
    ExtremalKind,
    FormTag,
    LemmaName,
    check_property,
    classify,
    construct,
    enumerate_extremal,
    reproduce_exp_minus_1,
    verify_lemma,
)
from .search import SearchOptions, SearchOutcome, exists_lacking_subsequence, longest_lacking_search
from .sequences import (
    Sequence,
    SequenceParseError,
    apply_hom,
    canonical_form,
    parse_sequence,
    shift,
    sum_of,
)

__all__ = [
    "Automorphism",
    "CheckResult",
    "ClassifyMatch",
    "Criterion",
    "Element",
    "ExtremalEnumeration",
    "ExtremalForm",
    "ExtremalKind",
    "FormTag",
    "GroupSpec",
    "LemmaName",
    "SearchOptions",
    "SearchOutcome",
    "SearchReport",
    "Sequence",
    "SequenceParseError",
    "SumProfile",
    "apply_hom",
    "automorphisms",
    "build_profile",
    "canonical_form",
    "check_direct_formulas",
    "check_property",
    "classify",
    "construct",
    "enumerate_extremal",
    "exists_lacking_subsequence",
    "formula_value",
    "has_zero_sum_of_length",
    "is_basis_pair",
    "is_generating_pair",
    "lacks",
    "longest_lacking",
    "longest_lacking_search",
    "natural_projection",
    "order_of",
    "parse_sequence",
    "reproduce_exp_minus_1",
    "shift",
    "sum_of",
    "verify_lemma",
    "verify_shift_lemma",
    "witness",
]
