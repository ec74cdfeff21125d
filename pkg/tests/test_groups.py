import itertools

import pytest
from conftest import oracle_order

from zerosum import (
    GroupSpec,
    automorphisms,
    is_basis_pair,
    is_generating_pair,
    natural_projection,
    order_of,
)
from zerosum.groups import element_permutation

SMALL_GROUPS = [GroupSpec(2, 2), GroupSpec(2, 4), GroupSpec(3, 3), GroupSpec(1, 5), GroupSpec(2, 6)]


def test_invariant_factor_normalization():
    assert GroupSpec(4, 2) == GroupSpec(2, 4)
    assert GroupSpec(3, 4) == GroupSpec(1, 12)
    assert GroupSpec(6, 4) == GroupSpec(2, 12)
    g = GroupSpec(6, 4)
    assert (g.n1, g.n2) == (2, 12)


def test_rejects_nonpositive_factors():
    with pytest.raises(ValueError):
        GroupSpec(0, 3)
    with pytest.raises(ValueError):
        GroupSpec(2, -2)


def test_accessors_match_definitions():
    g = GroupSpec(3, 6)
    assert (g.m, g.n, g.exponent, g.order, g.rank) == (3, 2, 6, 18, 2)
    assert GroupSpec(1, 7).rank == 1
    assert GroupSpec(1, 1).rank == 0
    assert GroupSpec(2, 2).n == 1


def test_parse_and_str_roundtrip():
    assert GroupSpec.parse("2,6") == GroupSpec(2, 6)
    assert GroupSpec.parse("7") == GroupSpec.cyclic(7)
    assert str(GroupSpec(2, 6)) == "2,6"
    assert str(GroupSpec.cyclic(7)) == "7"
    with pytest.raises(ValueError):
        GroupSpec.parse("2;6")
    with pytest.raises(ValueError):
        GroupSpec.parse("2,3,4")


def test_element_reduction_and_arithmetic():
    g = GroupSpec(2, 4)
    e = g.element(3, 5)
    assert (e.a, e.b) == (1, 1)
    assert (e + e) == g.element(0, 2)
    assert (-e) == g.element(1, 3)
    assert 3 * e == g.element(1, 3)
    assert str(e) == "(1,1)"
    assert g.element_at(e.index) == e


def test_order_of_examples():
    assert order_of(GroupSpec(2, 4).element(1, 2)) == 2
    assert order_of(GroupSpec(3, 6).element(0, 1)) == 6
    assert order_of(GroupSpec(5, 10).zero) == 1


def test_order_of_against_oracle():
    for g in SMALL_GROUPS:
        for e in g.elements():
            assert order_of(e) == oracle_order(e)


def test_order_of_sum_divides_lcm():
    import math

    for g in SMALL_GROUPS:
        for e1 in g.elements():
            for e2 in g.elements():
                o1, o2 = order_of(e1), order_of(e2)
                assert math.lcm(o1, o2) % order_of(e1 + e2) == 0


def test_basis_pair_examples():
    g = GroupSpec(2, 4)
    assert is_basis_pair(g.element(1, 0), g.element(0, 1))
    # 2*(1,1) + 2*(0,1) = 0 yet 2*(1,1) = (0,2) != 0: dependent
    assert not is_basis_pair(g.element(1, 1), g.element(0, 1))
    h = GroupSpec(2, 2)
    assert not is_basis_pair(h.element(1, 0), h.element(1, 0))
    with pytest.raises(ValueError):
        is_basis_pair(GroupSpec(1, 5).element(0, 1), GroupSpec(1, 5).element(0, 2))


def test_generating_pair_examples():
    g = GroupSpec(2, 4)
    assert is_generating_pair(g.element(1, 1), g.element(0, 1))
    assert is_generating_pair(GroupSpec(2, 2).element(1, 0), GroupSpec(2, 2).element(0, 1))
    assert not is_generating_pair(g.element(0, 1), g.element(0, 3))


def test_basis_implies_generating_and_not_conversely():
    g = GroupSpec(2, 4)
    gen_not_basis = 0
    for e1 in g.elements():
        for e2 in g.elements():
            if is_basis_pair(e1, e2):
                assert is_generating_pair(e1, e2)
            elif is_generating_pair(e1, e2):
                gen_not_basis += 1
    assert gen_not_basis > 0  # n = 2 > 1 admits non-basis generating pairs


def test_automorphism_counts():
    # |GL(2, F_2)| = 6, |GL(2, F_3)| = 48, units mod 5 = 4
    assert len(automorphisms(GroupSpec(2, 2))) == 6
    assert len(automorphisms(GroupSpec(3, 3))) == 48
    assert len(automorphisms(GroupSpec(1, 5))) == 4


def test_automorphism_bound_error():
    with pytest.raises(ValueError):
        automorphisms(GroupSpec(30, 30))


def test_automorphisms_preserve_order_and_are_bijective():
    for g in SMALL_GROUPS:
        for aut in automorphisms(g):
            perm = element_permutation(aut)
            assert sorted(perm) == list(range(g.order))
            for e in g.elements():
                assert order_of(aut(e)) == order_of(e)


def test_automorphisms_closed_under_composition_and_inverse():
    import math

    for g in [GroupSpec(2, 2), GroupSpec(2, 4), GroupSpec(1, 5)]:
        auts = set(automorphisms(g))
        assert math.factorial(g.order) % len(auts) == 0
        for a in auts:
            assert a.inverse() in auts
            assert a.compose(a.inverse()) == next(
                x for x in auts if element_permutation(x) == tuple(range(g.order))
            )
        for a, b in itertools.islice(itertools.product(auts, auts), 200):
            assert a.compose(b) in auts


def test_natural_projection():
    g = GroupSpec(2, 6)
    quot, proj = natural_projection(g)
    assert quot == GroupSpec(2, 2)
    assert proj(g.element(1, 3)) == quot.element(1, 1)

    g = GroupSpec(3, 6)
    quot, proj = natural_projection(g)
    kernel = [e for e in g.elements() if proj(e).is_zero()]
    assert kernel == [g.element(0, 0), g.element(0, 3)]
    assert len(kernel) == g.n

    g = GroupSpec(2, 2)
    quot, proj = natural_projection(g)
    assert all(proj(e).index == e.index for e in g.elements())

    with pytest.raises(ValueError):
        natural_projection(GroupSpec(1, 5))


def test_natural_projection_is_homomorphism():
    g = GroupSpec(3, 6)
    _, proj = natural_projection(g)
    for e1 in g.elements():
        for e2 in g.elements():
            assert proj(e1 + e2) == proj(e1) + proj(e2)
