from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from gcdmf.errors import LiteralSyntaxError, NonHomogeneous, UnknownGenerator
from gcdmf.presented import (MB_DERIVATION_LINES, STANDARD_PRESENTATIONS, Found, NoneWithin, PresentedMonoid, Unknown,
                             Yes, check_malcev_instance, common_right_multiple_bounded, equal, expand_derivation,
                             free_commutative, free_reduce, group_trivial_bounded, inverse, make_presentation,
                             maximal_common_right_divisors, parse_interval_signed, parse_presentation, parse_signed,
                             presentation_mb, presentation_md, swap_labels, verify_group_derivation)

import oracles

MONOIDS = {name: PresentedMonoid(build()) for name, build in STANDARD_PRESENTATIONS.items()}


def words_up_to(k, length):
    return [w for n in range(length + 1) for w in product(range(k), repeat=n)]


@pytest.mark.parametrize("name,atoms,relations", [
    ("MD", 6, 3), ("MB", 24, 11), ("Q11", 11, 11), ("QC4", 8, 7), ("QC6", 9, 9),
])
def test_presentation_sizes(name, atoms, relations):
    pres = MONOIDS[name].pres
    assert (len(pres.atoms), len(pres.relations)) == (atoms, relations)


@pytest.mark.parametrize("name", ["MD", "Q11", "QC4", "QC6"])
def test_word_problem_matches_rewriting_closure(name):
    M = MONOIDS[name]
    k = len(M.pres.atoms)
    words = words_up_to(k, 3)
    for w in words[:: max(1, len(words) // 150)]:
        cls = oracles.congruence_class(M.pres.relations, w)
        assert M.congruence_class(w) == frozenset(cls)
        assert all(M.canon(x) == M.canon(w) for x in cls)


def test_relations_hold():
    M = MONOIDS["MD"]
    for l, r in (("ab'", "ba'"), ("bc'", "cb'"), ("ac'", "ca'")):
        assert equal(M, M.parse(l), M.parse(r))
    assert not equal(M, M.parse("ab"), M.parse("ba"))


def test_mb_interval_words_are_distinct():
    M = MONOIDS["MB"]
    u, v = M.parse("[1,12][12,123]"), M.parse("[1,13][13,123]")
    assert not equal(M, u, v)
    assert u not in oracles.congruence_class(M.pres.relations, v)
    assert maximal_common_right_divisors(M, u, v) == {()}
    # the other squares of the truncated cube do commute
    assert equal(M, M.parse("[1,12][12,124]"), M.parse("[1,14][14,124]"))


def test_text_round_trips():
    M = MONOIDS["MB"]
    u = M.parse("[1,12][12,123]")
    assert M.format(u) == "[1,12]*[12,123]"
    assert M.parse(M.format(u)) == u
    for name in ("QC4", "MD"):
        pres = MONOIDS[name].pres
        assert parse_presentation(pres.to_text()).relations == pres.relations
        assert parse_presentation(pres.to_json()).relations == pres.relations
    q = parse_presentation("atoms: a b c; rel: ab = ba")
    assert q.atoms == ("a", "b", "c") and len(q.relations) == 1
    with pytest.raises(LiteralSyntaxError):
        parse_presentation("atoms: a b; rel: ab ba")
    with pytest.raises(NonHomogeneous):
        make_presentation(["a", "b"], [("ab", "a")])
    with pytest.raises(UnknownGenerator):
        MONOIDS["QC4"].parse("aq")


def test_lcms_agree_with_bounded_multiple_search():
    for name in ("MD", "QC4", "QC6", "Q11"):
        M = MONOIDS[name]
        atoms = M.atoms()
        for x, y in product(atoms, atoms):
            assert M.right_lcm(x, y) == M.right_lcm_bounded(x, y, 4), (name, x, y)
            assert M.left_lcm(x, y) == M.left_lcm_bounded(x, y, 4), (name, x, y)


def test_md_common_multiples():
    M = MONOIDS["MD"]
    a, b, c = (M.parse(x) for x in "abc")
    assert M.format(M.right_lcm(a, b)) == "ab'"
    for pair in ((a, b), (b, c), (a, c)):
        assert isinstance(common_right_multiple_bounded(M, pair, 4), Found)
    assert common_right_multiple_bounded(M, (a, b, c), 6) == NoneWithin(6)


def test_free_words():
    w = ((0, 1), (1, 1), (1, -1), (0, -1), (2, 1))
    assert free_reduce(w) == ((2, 1),)
    assert free_reduce(w + inverse(w)) == ()
    assert free_reduce(w) == tuple(oracles.free_reduce(w))


def test_group_triviality_search():
    pres = free_commutative(2)
    comm = parse_signed(pres, "a b a^-1 b^-1")
    res = group_trivial_bounded(pres, comm)
    assert isinstance(res, Yes)
    assert verify_group_derivation(pres, res.derivation)
    assert isinstance(group_trivial_bounded(pres, parse_signed(pres, "a"), radius=4), Unknown)


def test_derivation_checker():
    pres = presentation_mb()
    for lines in (MB_DERIVATION_LINES, [swap_labels(t) for t in MB_DERIVATION_LINES]):
        steps = expand_derivation(pres, [parse_interval_signed(pres, t) for t in lines])
        assert verify_group_derivation(pres, steps)
        assert len(steps) - 1 == 46
        broken = steps[:3] + steps[4:]
        assert not verify_group_derivation(pres, broken)
    assert swap_labels("[1,12][12,123][3,13]") == "[1,13][13,123][2,12]"


def test_malcev_search_on_free_commutative():
    M = PresentedMonoid(free_commutative(2))
    assert check_malcev_instance(M, 2) == (True, None)


@given(st.lists(st.sampled_from("abc"), max_size=5), st.lists(st.sampled_from("abc"), max_size=5))
@settings(max_examples=100, deadline=None)
def test_free_commutative_equality_is_multiset_equality(u, v):
    M = PresentedMonoid(free_commutative(3))
    same = sorted(u) == sorted(v)
    assert equal(M, M.parse("".join(u) or "1"), M.parse("".join(v) or "1")) == same


def test_md_presentation_builder():
    assert presentation_md().name == "MD"
