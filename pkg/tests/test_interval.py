import pytest
from hypothesis import given, settings, strategies as st

from gcdmf import IntervalMonoid, build_poset, make_standard
from gcdmf.errors import LiteralSyntaxError, NotAnInterval, NotLocalLattice, UnknownGenerator

import oracles

PA = IntervalMonoid(make_standard("PA"))
PA_REL = {(i, j) for i in range(7) for j in range(7) if PA.poset.leq(i, j)}
PA_ELEMS = sorted(oracles.im_elements(7, PA_REL, 2))
PA_ELEMS3 = oracles.im_elements(7, PA_REL, 3)


def test_normal_form_merges_adjacent_intervals():
    assert PA.element([(0, 1), (1, 2)]) == ((0, 2),)
    assert PA.element([(0, 1), (1, 1), (1, 2), (3, 4)]) == ((0, 2), (3, 4))
    assert PA.mul(PA.interval(0, 3), PA.interval(3, 4)) == ((0, 4),)
    assert PA.mul(PA.identity(), PA.interval(0, 3)) == ((0, 3),)
    with pytest.raises(NotAnInterval):
        PA.element([(2, 0)])


def test_requires_local_lattice():
    p = build_poset(list("xabcd"), [("x", "a"), ("x", "b"), ("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")])
    with pytest.raises(NotLocalLattice):
        IntervalMonoid(p)
    IntervalMonoid(p, require_local_lattice=False)


def test_parse_and_format_round_trip():
    a = PA.parse("[0,1][3,4]")
    assert a == ((0, 1), (3, 4))
    assert PA.format(a) == "[0,1]*[3,4]"
    assert PA.parse(PA.format(a)) == a
    assert PA.parse("1") == ()
    with pytest.raises(LiteralSyntaxError):
        PA.parse("[0,1")
    with pytest.raises(UnknownGenerator):
        PA.parse("[0,9]")


def test_atoms_and_intervals():
    assert len(PA.atoms()) == 9
    assert len(PA.proper_intervals()) == len(PA_REL) - 7
    assert sorted(PA.elements_up_to(2)) == PA_ELEMS


@given(st.sampled_from(PA_ELEMS), st.sampled_from(PA_ELEMS))
@settings(max_examples=200, deadline=None)
def test_divisibility_and_quotients_match_brute_force(a, b):
    left = oracles.left_divides(a, b, PA_ELEMS)
    right = oracles.right_divides(a, b, PA_ELEMS)
    assert PA.left_divides(a, b) == left
    assert PA.right_divides(a, b) == right
    if left:
        assert PA.mul(a, PA.left_quotient(a, b)) == b
    if right:
        assert PA.mul(PA.right_quotient(b, a), a) == b


@given(st.sampled_from(PA_ELEMS), st.sampled_from(PA_ELEMS))
@settings(max_examples=200, deadline=None)
def test_lcm_is_least_among_common_multiples(a, b):
    m = PA.right_lcm(a, b)
    commons = [x for x in PA_ELEMS if oracles.left_divides(a, x, PA_ELEMS) and oracles.left_divides(b, x, PA_ELEMS)]
    if m is None:
        assert commons == []
    else:
        assert oracles.left_divides(a, m, PA_ELEMS3) and oracles.left_divides(b, m, PA_ELEMS3)
        assert all(oracles.left_divides(m, x, PA_ELEMS) for x in commons)


def test_lcm_examples_on_pa():
    # [0,1] and [0,3] both lie below 2, the only common upper bound
    assert PA.right_lcm(PA.interval(0, 1), PA.interval(0, 3)) == ((0, 2),)
    assert PA.right_lcm(PA.interval(0, 1), PA.interval(1, 2)) is None
    assert PA.left_lcm(PA.interval(1, 2), PA.interval(3, 2)) == ((0, 2),)
    assert PA.left_gcd(PA.interval(0, 2), PA.interval(0, 6)) == ((0, 1),)
    assert PA.right_gcd(PA.interval(1, 2), PA.interval(0, 4)) == ()


def test_divisor_lists():
    a = PA.parse("[0,2]")
    # [0,x] for x in the interval [0,2] = {0,1,3,2}
    assert sorted(PA.left_divisors(a)) == sorted([(), ((0, 1),), ((0, 3),), ((0, 2),)])
    assert sorted(PA.right_divisors(a)) == sorted([(), ((1, 2),), ((3, 2),), ((0, 2),)])
