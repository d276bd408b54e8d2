"""Cover combinatorics: refinement, meets, normalization, stars."""

import pytest
from hypothesis import given, settings, strategies as st

from locfine.carrier import (
    CarrierMismatchError,
    Preorder,
    SubsetCarrier,
    all_canonical_covers,
    cover_key,
    fold_meet,
    meet_cover,
    mutually_refine,
    normalize,
    refines,
    restrict,
    star_refines,
)

f = frozenset


def s(*names):
    return f(names)


@pytest.fixture
def c3():
    return SubsetCarrier(["0", "1", "2"])


def cov(*member_sets):
    return f(f(m) for m in member_sets)


class TestRefines:
    def test_member_containment(self, c3):
        u = cov("0", "12")
        v = cov("01", "12")
        assert refines(u, v, c3)

    def test_reflexive(self, c3):
        u = cov("01", "12")
        assert refines(u, u, c3)

    def test_negative(self, c3):
        u = cov("01", "12")
        v = cov("0", "12")
        # {0,1} is contained in neither {0} nor {1,2}
        assert not refines(u, v, c3)

    def test_unknown_element_rejected(self, c3):
        with pytest.raises(CarrierMismatchError):
            refines(cov("03"), cov("01"), c3)


class TestMeetCover:
    def test_pairwise_intersections(self, c3):
        u = cov("01", "2")
        v = cov("0", "12")
        assert meet_cover(u, v, c3) == cov("0", "1", "2")

    def test_top_is_identity(self, c3):
        u = cov("01", "12")
        m = meet_cover(u, f({c3.top}), c3)
        assert m == normalize(u, c3)

    def test_preorder_common_lower_bound(self):
        p = Preorder.from_edges("tbcd", [("d", "b"), ("d", "c"), ("b", "t"), ("c", "t")], "t")
        assert meet_cover(f({"b"}), f({"c"}), p) == f({"d"})


class TestNormalize:
    def test_subsumed_members_removed(self, c3):
        assert normalize(cov("01", "0", "1"), c3) == cov("01")

    def test_idempotent_on_normal_cover(self, c3):
        u = cov("01", "12")
        assert normalize(u, c3) == u

    def test_empty_member_dropped(self, c3):
        assert normalize(f({f(), f({"2"})}), c3) == cov("2")

    def test_preorder_equivalent_elements_collapse(self):
        p = Preorder(["a", "b", "t"], [("a", "b"), ("b", "a"), ("a", "t"), ("b", "t")], "t")
        assert normalize(f({"a", "b"}), p) == f({"a"})


class TestRestrict:
    def test_intersect_then_normalize(self, c3):
        u = cov("01", "12")
        assert restrict(u, s("1", "2"), c3) == cov("12")

    def test_top_restriction(self, c3):
        u = cov("01", "0")
        assert restrict(u, c3.top, c3) == normalize(u, c3)

    def test_empty_restriction(self, c3):
        assert restrict(cov("01"), f(), c3) == f()

    def test_union_equals_trace(self, c3):
        u = cov("01", "2")
        a = s("1", "2")
        traced = restrict(u, a, c3)
        assert frozenset().union(*traced) == a & frozenset().union(*u)


class TestStarRefines:
    def test_singletons_star_refine(self, c3):
        v = cov("0", "1", "2")
        u = cov("01", "12")
        assert star_refines(v, u, c3)

    def test_trivial_cover(self, c3):
        v = f({c3.top})
        assert star_refines(v, v, c3)

    def test_overlapping_cover_fails(self, c3):
        v = cov("01", "12")
        # St({0,1}, v) = {0,1,2} fits in no member.
        assert not star_refines(v, v, c3)


# Exhaustive law checks over every canonical cover of a 3-point carrier.

def _all_covers(carrier):
    return all_canonical_covers(carrier)


def test_refines_is_reflexive_and_transitive_exhaustively(c3):
    covers = _all_covers(c3)
    for u in covers:
        assert refines(u, u, c3)
    for u in covers:
        for v in covers:
            if not refines(u, v, c3):
                continue
            for w in covers:
                if refines(v, w, c3):
                    assert refines(u, w, c3)


def test_meet_cover_is_glb_exhaustively(c3):
    covers = _all_covers(c3)
    for u in covers:
        for v in covers:
            m = meet_cover(u, v, c3)
            assert refines(m, u, c3) and refines(m, v, c3)
            for w in covers:
                if refines(w, u, c3) and refines(w, v, c3):
                    assert refines(w, m, c3)


def test_meet_cover_commutative_associative_up_to_mutual_refinement(c3):
    covers = [u for u in _all_covers(c3) if u][:12]
    for u in covers:
        for v in covers:
            assert meet_cover(u, v, c3) == meet_cover(v, u, c3)
    for u in covers[:6]:
        for v in covers[:6]:
            for w in covers[:6]:
                left = meet_cover(meet_cover(u, v, c3), w, c3)
                right = meet_cover(u, meet_cover(v, w, c3), c3)
                assert mutually_refine(left, right, c3)


points4 = st.frozensets(st.sampled_from(["0", "1", "2", "3"]), max_size=4)
covers4 = st.frozensets(points4, max_size=4)


@settings(max_examples=150, deadline=None)
@given(covers4)
def test_normalize_idempotent(u):
    c = SubsetCarrier(["0", "1", "2", "3"])
    n = normalize(u, c)
    assert normalize(n, c) == n
    assert mutually_refine(u, n, c)


@settings(max_examples=150, deadline=None)
@given(covers4, covers4)
def test_refines_invariant_under_normalization(u, v):
    c = SubsetCarrier(["0", "1", "2", "3"])
    assert refines(u, v, c) == refines(normalize(u, c), normalize(v, c), c)


@settings(max_examples=100, deadline=None)
@given(st.lists(covers4, min_size=1, max_size=3))
def test_fold_meet_refines_every_input(cs):
    c = SubsetCarrier(["0", "1", "2", "3"])
    m = fold_meet(cs, c)
    for u in cs:
        assert refines(m, normalize(u, c), c)


def test_cover_key_is_deterministic(c3):
    u = cov("01", "2")
    assert cover_key(u, c3) == (("0", "1"), ("2",))


def test_preorder_rejects_non_transitive_relation():
    with pytest.raises(ValueError):
        Preorder("abc", [("a", "b"), ("b", "c")], "c")


def test_preorder_requires_dominating_top():
    with pytest.raises(ValueError):
        Preorder.from_edges("ab", [], "a")
