"""Extremal sequences: constructors, exhaustive enumeration, classification.

For G = C_m + C_mn of rank two the longest sequences without a short zero-sum
subsequence (length eta(G)-1), respectively without a zero-sum subsequence of
length exp(G) (length s(G)-1), fall into four parameterized families:

    ETA_A: e1^(m-1) e2^(sm-1) (-x*e1+e2)^((n+1-s)m-1)
           for a basis {e1, e2} with ord(e2) = mn, gcd(x, m) = 1, s in [1, n]
    ETA_B: g1^(m-1) g2^(mn-1) (-g1+g2)^(m-1)
           for a generating pair {g1, g2} with ord(g2) = mn
    S_A:   g^(tm-1) (e1+g)^((n+1-t)m-1) (e2+g)^(sm-1) (-x*e1+e2+g)^((n+1-s)m-1)
           as in ETA_A plus t in [1, n] and a translation g in G
    S_B:   g^(mn-1) (g1+g)^(m-1) (g2+g)^(mn-1) (-g1+g2+g)^(m-1)
           as in ETA_B plus a translation g in G

The families overlap; classify() returns every parameterization that
reproduces a sequence, and an empty result is a finding, not an error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum
from functools import lru_cache
from itertools import combinations_with_replacement, permutations
from typing import Optional

from .constants import formula_value
from .criteria import Criterion, has_zero_sum_of_length, lacks
from .groups import (
    Element,
    GroupSpec,
    automorphisms,
    is_basis_pair,
    is_generating_pair,
    order_of,
)
from .search import SearchOptions, longest_lacking_search
from .sequences import Sequence, canonical_form


class FormTag(Enum):
    ETA_A = "eta_a"
    ETA_B = "eta_b"
    S_A = "s_a"
    S_B = "s_b"


class ExtremalKind(Enum):
    ETA = "eta"
    S = "s"


class LemmaName(Enum):
    NOSHORT = "noshort"
    TWO_M = "two-m"
    INVCYC = "invcyc"


@dataclass(frozen=True, order=True)
class ExtremalForm:
    """One parameterization of an extremal family.

    e1/e2 hold the basis for the A forms and the generating pair for the
    B forms; x, s, t, g are present only where the family uses them.
    """

    tag: FormTag
    e1: Element
    e2: Element
    x: Optional[int] = None
    s: Optional[int] = None
    t: Optional[int] = None
    g: Optional[Element] = None

    @property
    def group(self) -> GroupSpec:
        return self.e1.group

    def sort_key(self):
        order = {FormTag.ETA_A: 0, FormTag.ETA_B: 1, FormTag.S_A: 2, FormTag.S_B: 3}
        return (
            order[self.tag],
            self.e1.index,
            self.e2.index,
            self.x if self.x is not None else -1,
            self.s if self.s is not None else -1,
            self.t if self.t is not None else -1,
            self.g.index if self.g is not None else -1,
        )


@dataclass(frozen=True)
class ClassifyMatch:
    """A form that reproduces a classified sequence.

    x_normalized records whether the optional normalization x <= m/2 holds
    (vacuously true for the B forms); ord_g1 is kept as metadata since the
    families do not constrain the order of the first pair element.
    """

    form: ExtremalForm
    x_normalized: bool
    ord_g1: int

    def to_json(self) -> dict:
        f = self.form
        out = {
            "form": f.tag.value,
            "e1": [f.e1.a, f.e1.b],
            "e2": [f.e2.a, f.e2.b],
        }
        if f.x is not None:
            out["x"] = f.x
        if f.s is not None:
            out["s"] = f.s
        if f.t is not None:
            out["t"] = f.t
        if f.g is not None:
            out["g"] = [f.g.a, f.g.b]
        return out


def _validate_form(form: ExtremalForm) -> None:
    grp = form.group
    if grp.rank != 2:
        raise ValueError("extremal forms need a group of rank 2")
    m, n, mn = grp.m, grp.n, grp.exponent
    if form.e2.group != grp or (form.g is not None and form.g.group != grp):
        raise ValueError("form parameters from different groups")
    if order_of(form.e2) != mn:
        raise ValueError(f"ord(e2) = {order_of(form.e2)}, need exp(G) = {mn}")
    if form.tag in (FormTag.ETA_A, FormTag.S_A):
        if not is_basis_pair(form.e1, form.e2):
            raise ValueError(f"({form.e1}, {form.e2}) is not a basis pair")
        if form.x is None or form.x < 1 or math.gcd(form.x, m) != 1:
            raise ValueError(f"x = {form.x} must be >= 1 with gcd(x, m) = 1")
        if form.s is None or not 1 <= form.s <= n:
            raise ValueError(f"s = {form.s} outside [1, {n}]")
    else:
        if not is_generating_pair(form.e1, form.e2):
            raise ValueError(f"({form.e1}, {form.e2}) is not a generating pair")
    if form.tag is FormTag.S_A:
        if form.t is None or not 1 <= form.t <= n:
            raise ValueError(f"t = {form.t} outside [1, {n}]")
    if form.tag in (FormTag.S_A, FormTag.S_B):
        if form.g is None:
            raise ValueError("the s-families need a translation element g")


def _form_items(form: ExtremalForm) -> list[tuple[Element, int]]:
    grp = form.group
    m, n, mn = grp.m, grp.n, grp.exponent
    e1, e2 = form.e1, form.e2
    if form.tag is FormTag.ETA_A:
        return [
            (e1, m - 1),
            (e2, form.s * m - 1),
            (-form.x * e1 + e2, (n + 1 - form.s) * m - 1),
        ]
    if form.tag is FormTag.ETA_B:
        return [(e1, m - 1), (e2, mn - 1), (e2 - e1, m - 1)]
    g = form.g
    if form.tag is FormTag.S_A:
        return [
            (g, form.t * m - 1),
            (e1 + g, (n + 1 - form.t) * m - 1),
            (e2 + g, form.s * m - 1),
            (-form.x * e1 + e2 + g, (n + 1 - form.s) * m - 1),
        ]
    return [(g, mn - 1), (e1 + g, m - 1), (e2 + g, mn - 1), (e2 - e1 + g, m - 1)]


def construct(form: ExtremalForm) -> Sequence:
    """The literal sequence of the chosen family.

    Raises ValueError on invalid parameters and asserts the two defining
    facts: the length is eta(G)-1 (ETA families) or s(G)-1 (S families) and
    the sequence lacks the matching zero-sum pattern.
    """
    _validate_form(form)
    grp = form.group
    seq = Sequence.from_items(grp, _form_items(form))
    eta_family = form.tag in (FormTag.ETA_A, FormTag.ETA_B)
    crit = Criterion.SHORT if eta_family else Criterion.EXACT_EXP
    expected = formula_value(grp, crit) - 1
    if len(seq) != expected:
        raise RuntimeError(f"constructed length {len(seq)} != {expected} for {form}")
    if not lacks(seq, crit):
        raise RuntimeError(f"constructed sequence has a forbidden zero-sum: {form}")
    return seq


@lru_cache(maxsize=None)
def _ordered_bases(group: GroupSpec) -> tuple[tuple[Element, Element], ...]:
    """Every ordered basis (e1, e2) with ord(e2) = exp(G).

    These are exactly the automorphism images of the standard basis: in
    C_m + C_mn a basis with ord(e2) = mn forces ord(e1) = m.
    """
    pairs = [(a.img1, a.img2) for a in automorphisms(group)]
    return tuple(sorted(pairs, key=lambda p: (p[0].index, p[1].index)))


@lru_cache(maxsize=None)
def _generating_pairs(group: GroupSpec) -> tuple[tuple[Element, Element], ...]:
    """Every ordered generating pair (g1, g2) with ord(g2) = exp(G)."""
    mn = group.exponent
    out = []
    for g1 in group.elements():
        for g2 in group.elements():
            if order_of(g2) == mn and is_generating_pair(g1, g2):
                out.append((g1, g2))
    return tuple(out)


def _units(m: int) -> list[int]:
    return [x for x in range(1, m) if math.gcd(x, m) == 1]


def classify(seq: Sequence) -> list[ClassifyMatch]:
    """Every parameterization whose construct() equals the sequence.

    Scans all candidate basis/generating pairs and parameter values, with
    multiplicity lookups as early exits; for a valid form the stated support
    elements are pairwise distinct, so the multiplicity pattern determines
    s and t directly.  An empty result means the sequence matches no family.
    """
    grp = seq.group
    if grp.rank != 2:
        raise ValueError("classification needs a group of rank 2")
    m, n, mn = grp.m, grp.n, grp.exponent
    total = len(seq)
    eta_len = formula_value(grp, Criterion.SHORT) - 1
    s_len = formula_value(grp, Criterion.EXACT_EXP) - 1
    if total not in (eta_len, s_len):
        raise ValueError(
            f"not an extremal-length sequence: |S| = {total}, expected {eta_len} or {s_len}"
        )
    cnt = seq.counts
    forms: list[ExtremalForm] = []

    def param_s(count: int) -> Optional[int]:
        # count == s*m - 1 for some s in [1, n]?
        if (count + 1) % m:
            return None
        s = (count + 1) // m
        return s if 1 <= s <= n else None

    if total == eta_len:
        for e1, e2 in _ordered_bases(grp):
            if cnt[e1.index] != m - 1:
                continue
            s = param_s(cnt[e2.index])
            if s is None:
                continue
            for x in _units(m):
                third = e2 - x * e1
                if cnt[third.index] == (n + 1 - s) * m - 1:
                    forms.append(ExtremalForm(FormTag.ETA_A, e1, e2, x=x, s=s))
        for g1, g2 in _generating_pairs(grp):
            if (
                cnt[g1.index] == m - 1
                and cnt[g2.index] == mn - 1
                and cnt[(g2 - g1).index] == m - 1
            ):
                forms.append(ExtremalForm(FormTag.ETA_B, g1, g2))
    else:
        for e1, e2 in _ordered_bases(grp):
            for x in _units(m):
                delta = e2 - x * e1
                for g in grp.elements():
                    t = param_s(cnt[g.index])
                    if t is None:
                        continue
                    if cnt[(e1 + g).index] != (n + 1 - t) * m - 1:
                        continue
                    s = param_s(cnt[(e2 + g).index])
                    if s is None:
                        continue
                    if cnt[(delta + g).index] != (n + 1 - s) * m - 1:
                        continue
                    forms.append(ExtremalForm(FormTag.S_A, e1, e2, x=x, s=s, t=t, g=g))
        for g1, g2 in _generating_pairs(grp):
            for g in grp.elements():
                if (
                    cnt[g.index] == mn - 1
                    and cnt[(g1 + g).index] == m - 1
                    and cnt[(g2 + g).index] == mn - 1
                    and cnt[(g2 - g1 + g).index] == m - 1
                ):
                    forms.append(ExtremalForm(FormTag.S_B, g1, g2, g=g))

    forms.sort(key=ExtremalForm.sort_key)
    return [
        ClassifyMatch(
            form=f,
            x_normalized=(2 * f.x <= m) if f.x is not None else True,
            ord_g1=order_of(f.e1),
        )
        for f in forms
    ]


@dataclass
class ExtremalEnumeration:
    group: GroupSpec
    kind: ExtremalKind
    sequences: list[Sequence]
    complete: bool
    nodes: int


def enumerate_extremal(
    group: GroupSpec,
    kind: ExtremalKind,
    up_to_aut: bool = False,
    options: Optional[SearchOptions] = None,
) -> ExtremalEnumeration:
    """All sequences of extremal length lacking the matching pattern.

    With up_to_aut, one representative per automorphism orbit (the canonical
    form), in deterministic order either way.
    """
    crit = Criterion.SHORT if kind is ExtremalKind.ETA else Criterion.EXACT_EXP
    opts = replace(options or SearchOptions(), collect_all=True)
    target = formula_value(group, crit) - 1
    out = longest_lacking_search(group, crit, opts, depth_cap=target + 3)
    if out.complete and out.max_length != target:
        raise RuntimeError(
            f"extremal search reached length {out.max_length}, expected {target}"
        )
    seqs = [Sequence(group, c) for c in out.sequences]
    if up_to_aut:
        seqs = sorted({canonical_form(s) for s in seqs})
    return ExtremalEnumeration(group, kind, seqs, out.complete, out.nodes)


@dataclass
class CheckResult:
    """Outcome of a property or lemma verification run."""

    name: str
    params: dict
    status: str  # "verified" | "falsified" | "unverified"
    counterexamples: list[Sequence]
    details: dict
    nodes: int = 0

    @property
    def ok(self) -> bool:
        return self.status == "verified"

    def to_json(self) -> dict:
        return {
            "check": self.name,
            "params": self.params,
            "status": self.status,
            "counterexamples": [s.text() for s in self.counterexamples],
            "details": self.details,
            "nodes": self.nodes,
        }


def check_property(m: int, which: str, options: Optional[SearchOptions] = None) -> CheckResult:
    """Does every extremal sequence over C_m + C_m have the shape T^(m-1)?

    which = "C" checks the eta-extremals, "D" the s-extremals.  Exhaustive
    within the node budget; a budget hit reports "unverified" rather than
    trusting anything not recomputed here.
    """
    which = which.upper()
    if which not in ("C", "D"):
        raise ValueError(f"property must be 'C' or 'D', got {which!r}")
    if m < 2:
        raise ValueError("property checks need m >= 2")
    group = GroupSpec(m, m)
    kind = ExtremalKind.ETA if which == "C" else ExtremalKind.S
    enum = enumerate_extremal(group, kind, options=options)
    rep = m - 1
    bad = [s for s in enum.sequences if any(c % rep for c in s.counts)]
    if not enum.complete:
        status = "unverified"
    else:
        status = "falsified" if bad else "verified"
    return CheckResult(
        name=f"property-{which}",
        params={"m": m},
        status=status,
        counterexamples=bad,
        details={"extremal_count": len(enum.sequences), "length": 3 * m - 3 if which == "C" else 4 * m - 4},
        nodes=enum.nodes,
    )


def _check_noshort(m: int) -> CheckResult:
    """Every short-zero-sum-free T^(m-1) with |T| = 3 over C_m + C_m comes from
    a basis: T = f1 f2 (-x*f1 + f2) with gcd(x, m) = 1 and x <= m/2, and
    dropping any one term of T leaves a zero-sum free (m-1)-th power."""
    if m < 2:
        raise ValueError("noshort needs m >= 2")
    group = GroupSpec(m, m)
    elems = list(group.elements())
    x_values: set[int] = set()
    passing = 0
    bad: list[Sequence] = []
    for combo in combinations_with_replacement(elems, 3):
        t_seq = Sequence.from_items(group, [(e, 1) for e in combo])
        power = t_seq ** (m - 1)
        if not lacks(power, Criterion.SHORT):
            continue
        passing += 1
        supp = t_seq.support()
        found = []
        for f1, f2 in permutations(supp, 2):
            f3 = next(e for e in supp if e not in (f1, f2))
            if not is_basis_pair(f1, f2):
                continue
            for x in _units(m):
                if 2 * x <= m and f3 == f2 - x * f1:
                    found.append((f1, f2, x))
        if not found:
            bad.append(power)
            continue
        x_values.update(x for _, _, x in found)
        for f in supp:
            rest = (t_seq.without(Sequence.from_items(group, [(f, 1)]))) ** (m - 1)
            if not lacks(rest, Criterion.ANY):
                bad.append(power)
                break
    return CheckResult(
        name="noshort",
        params={"m": m},
        status="falsified" if bad else "verified",
        counterexamples=bad,
        details={"powers_checked": passing, "x_values": sorted(x_values)},
    )


def _check_two_m(m: int) -> CheckResult:
    """For every T^(m-1) of length 4m-4 over C_m + C_m without a length-m
    zero-sum, dropping any one term of T leaves no zero-sum of length 2m."""
    if m < 2:
        raise ValueError("two-m needs m >= 2")
    group = GroupSpec(m, m)
    elems = list(group.elements())
    passing = 0
    bad: list[Sequence] = []
    for combo in combinations_with_replacement(elems, 4):
        t_seq = Sequence.from_items(group, [(e, 1) for e in combo])
        power = t_seq ** (m - 1)
        if not lacks(power, Criterion.EXACT_EXP):
            continue
        passing += 1
        for f in t_seq.support():
            rest = (t_seq.without(Sequence.from_items(group, [(f, 1)]))) ** (m - 1)
            if has_zero_sum_of_length(rest, 2 * m):
                bad.append(power)
                break
    return CheckResult(
        name="two-m",
        params={"m": m},
        status="falsified" if bad else "verified",
        counterexamples=bad,
        details={"powers_checked": passing},
    )


def _check_invcyc(n: int, options: Optional[SearchOptions] = None) -> CheckResult:
    """The cyclic inverse structure: zero-sum free extremals are e^(n-1) with
    <e> = C_n, and length-n-free extremals are g^(n-1) (g+e)^(n-1)."""
    if n < 1:
        raise ValueError("invcyc needs n >= 1")
    group = GroupSpec.cyclic(n)
    opts = replace(options or SearchOptions(), collect_all=True)
    nodes = 0
    complete = True

    out_any = longest_lacking_search(group, Criterion.ANY, opts, depth_cap=n + 2)
    nodes += out_any.nodes
    complete = complete and out_any.complete
    got_any = {Sequence(group, c) for c in out_any.sequences}
    generators = [e for e in group.elements() if order_of(e) == n]
    pred_any = {Sequence.from_items(group, [(e, n - 1)]) for e in generators}

    out_s = longest_lacking_search(group, Criterion.EXACT_EXP, opts, depth_cap=2 * n + 1)
    nodes += out_s.nodes
    complete = complete and out_s.complete
    got_s = {Sequence(group, c) for c in out_s.sequences}
    pred_s = {
        Sequence.from_items(group, [(g, n - 1), (g + e, n - 1)])
        for e in generators
        for g in group.elements()
    }

    bad = sorted((got_any ^ pred_any) | (got_s ^ pred_s))
    if not complete:
        status = "unverified"
    else:
        status = "falsified" if bad else "verified"
    return CheckResult(
        name="invcyc",
        params={"n": n},
        status=status,
        counterexamples=bad,
        details={
            "zero_sum_free_count": len(got_any),
            "expected_zero_sum_free": len(pred_any),
            "length_n_free_count": len(got_s),
            "expected_length_n_free": len(pred_s),
        },
        nodes=nodes,
    )


def verify_lemma(
    name: LemmaName,
    m: Optional[int] = None,
    n: Optional[int] = None,
    options: Optional[SearchOptions] = None,
) -> CheckResult:
    if name is LemmaName.NOSHORT:
        if m is None:
            raise ValueError("noshort needs m")
        return _check_noshort(m)
    if name is LemmaName.TWO_M:
        if m is None:
            raise ValueError("two-m needs m")
        return _check_two_m(m)
    if name is LemmaName.INVCYC:
        if n is None:
            raise ValueError("invcyc needs n")
        return _check_invcyc(n, options)
    raise ValueError(f"unknown lemma {name!r}")


def reproduce_exp_minus_1(m: int, n: int) -> tuple[Sequence, dict]:
    """A length-(s(G)-1) sequence over C_m + C_mn without a length-exp(G)
    zero-sum in which every multiplicity stays below exp(G) - 1.

    Uses the S_A family with x = 1, s = t = 2, g = 0; the multiplicity bound
    needs n >= 3.  Returns the sequence and the three verified facts.
    """
    if m < 2:
        raise ValueError("need m >= 2")
    if n < 3:
        raise ValueError("need n >= 3: for n <= 2 some multiplicity reaches exp(G) - 1")
    group = GroupSpec(m, m * n)
    form = ExtremalForm(
        FormTag.S_A,
        group.element(1, 0),
        group.element(0, 1),
        x=1,
        s=2,
        t=2,
        g=group.zero,
    )
    seq = construct(form)
    expected_len = formula_value(group, Criterion.EXACT_EXP) - 1
    report = {
        "group": str(group),
        "length": len(seq),
        "expected_length": expected_len,
        "lacks_exact_exp": lacks(seq, Criterion.EXACT_EXP),
        "max_multiplicity": seq.max_multiplicity(),
        "exp_minus_1": group.exponent - 1,
    }
    report["ok"] = (
        report["length"] == expected_len
        and report["lacks_exact_exp"]
        and report["max_multiplicity"] < report["exp_minus_1"]
    )
    return seq, report
