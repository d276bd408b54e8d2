"""Game solver: winners, strategies, and agreement with closure membership."""

import random

import pytest

from locfine.carrier import SubsetCarrier, all_canonical_covers, restrict
from locfine.covering import CoveringMonoid, check_witness, member, rank
from locfine.errors import NoStrategyError
from locfine.game import (
    GameSpec,
    Player,
    extract_strategy,
    replay,
    solve,
    theorem6_check,
    unwind_strategy,
)

f = frozenset


def cov(*member_sets):
    return f(f(m) for m in member_sets)


@pytest.fixture
def c3():
    return SubsetCarrier(["0", "1", "2"])


def covering_covers(c):
    return [u for u in all_canonical_covers(c)
            if u and f().union(*u) == c.points]


class TestSolve:
    def test_trivial_target_player_one_wins_without_moving(self, c3):
        m = CoveringMonoid(c3, (cov("01", "12"),))
        result = solve(GameSpec(m, f({c3.top})))
        assert result.winner is Player.I
        assert result.strategy.moves == {}

    def test_basis_cover_won_in_one_move(self, c3):
        u = cov("01", "12")
        m = CoveringMonoid(c3, (u,))
        result = solve(GameSpec(m, u))
        assert result.winner is Player.I
        assert result.strategy.moves[c3.top] == u

    def test_player_two_wins_on_singletons(self, c3):
        m = CoveringMonoid(c3, (cov("01", "12"),))
        v = cov("0", "1", "2")
        result = solve(GameSpec(m, v))
        assert result.winner is Player.II
        assert not member(m, v, use_lambda=True)
        assert c3.top not in result.winning_set

    def test_start_in_winning_set_iff_player_one(self, c3):
        m = CoveringMonoid(c3, (cov("01", "12"),))
        for v in all_canonical_covers(c3):
            res = solve(GameSpec(m, v))
            assert (res.winner is Player.I) == (c3.top in res.winning_set)

    def test_winning_set_matches_per_piece_membership(self, c3):
        # Theorem-6 style, piece by piece: a piece wins exactly when the
        # restriction of the closure meet refines the target there.
        rng = random.Random(23)
        covers = covering_covers(c3)
        for _ in range(12):
            basis = tuple(rng.choice(covers) for _ in range(rng.randint(1, 2)))
            m = CoveringMonoid(c3, basis)
            v = all_canonical_covers(c3)[rng.randrange(19)]
            res = solve(GameSpec(m, v))
            from locfine.covering import global_meet
            meet = global_meet(m)
            for p in c3.elements():
                local = restrict(meet, p, c3)
                expect = all(any(q <= t for t in v) for q in local)
                assert (p in res.winning_set) == expect


class TestStrategy:
    def test_empty_strategy_for_trivial_target(self, c3):
        m = CoveringMonoid(c3, (cov("01", "12"),))
        assert extract_strategy(GameSpec(m, f({c3.top}))).moves == {}

    def test_depth_one_strategy_maps_top(self, c3):
        u = cov("0", "12")
        m = CoveringMonoid(c3, (u,))
        strat = extract_strategy(GameSpec(m, u))
        assert strat.moves[c3.top] == u

    def test_no_strategy_error_for_player_two_games(self, c3):
        m = CoveringMonoid(c3, (cov("01", "12"),))
        with pytest.raises(NoStrategyError):
            extract_strategy(GameSpec(m, cov("0", "1", "2")))

    def test_two_round_strategy_replays_through_winning_pieces(self):
        c = SubsetCarrier(["0", "1", "2"])
        b1 = cov("01", "2")
        b2 = cov("0", "12")
        m = CoveringMonoid(c, (b1, b2))
        v = cov("0", "1", "2")
        g = GameSpec(m, v)
        res = solve(g)
        assert res.winner is Player.I
        assert len(res.strategy.moves) >= 2
        visited, depth = replay(g, res.strategy)
        assert visited <= res.winning_set
        assert depth <= 2

    def test_replays_terminate_within_rank_bound(self, c3):
        rng = random.Random(31)
        covers = covering_covers(c3)
        for _ in range(20):
            basis = tuple(rng.choice(covers) for _ in range(rng.randint(1, 3)))
            m = CoveringMonoid(c3, basis)
            for v in all_canonical_covers(c3)[:12]:
                g = GameSpec(m, v)
                res = solve(g)
                if res.winner is Player.I:
                    _, depth = replay(g, res.strategy)
                    assert depth <= rank(m) + 1


class TestTheorem6:
    def test_trivial_target_both_sides_true(self, c3):
        m = CoveringMonoid(c3, (cov("01", "12"),))
        assert theorem6_check(m, f({c3.top}))

    def test_player_two_fixture_both_sides_false(self, c3):
        m = CoveringMonoid(c3, (cov("01", "12"),))
        assert theorem6_check(m, cov("0", "1", "2"))

    def test_exhaustive_on_two_points(self):
        c = SubsetCarrier(["0", "1"])
        covers = covering_covers(c)
        all_covers = all_canonical_covers(c)
        for i, b1 in enumerate(covers):
            for b2 in covers[i:]:
                m = CoveringMonoid(c, (b1, b2))
                for v in all_covers:
                    assert theorem6_check(m, v)


class TestProductGame:
    def test_two_factor_game_via_product_monoid(self):
        """The rectangular product game is the same engine run over the
        product monoid with a rectangle target."""
        from locfine.covering import fine_monoid
        from locfine.frames import space_discrete, space_sierpinski
        from locfine.products import product_monoid

        pm = product_monoid([fine_monoid(space_sierpinski()),
                             fine_monoid(space_discrete("pq"))])
        pc = pm.carrier
        # target: the finest rectangle cover of the product
        target = f(f({pt}) for pt in pc.points)
        g = GameSpec(pm, target)
        res = solve(g)
        assert theorem6_check(pm, target)
        assert (res.winner is Player.I) == member(pm, target, use_lambda=True)
        if res.winner is Player.I:
            replay(g, res.strategy)


class TestWitnessRoundTrip:
    def test_strategy_unwinds_to_a_valid_witness(self, c3):
        rng = random.Random(37)
        covers = covering_covers(c3)
        for _ in range(15):
            basis = tuple(rng.choice(covers) for _ in range(rng.randint(1, 2)))
            m = CoveringMonoid(c3, basis)
            for v in all_canonical_covers(c3)[:10]:
                g = GameSpec(m, v)
                res = solve(g)
                assert (res.winner is Player.I) == member(m, v, use_lambda=True)
                if res.winner is Player.I:
                    tree = unwind_strategy(g, res.strategy)
                    assert check_witness(m, v, tree)

    def test_player_two_has_escaping_reply_everywhere(self, c3):
        # From any losing piece, every playable cover leaves a member that is
        # neither dominated nor winning.
        m = CoveringMonoid(c3, (cov("01", "12"),))
        v = cov("0", "1", "2")
        res = solve(GameSpec(m, v))
        assert res.winner is Player.II
        losing = [p for p in c3.elements() if p not in res.winning_set]
        for p in losing:
            for b in m.basis:
                tr = restrict(b, p, c3)
                assert any(q not in res.winning_set and
                           not any(q <= t for t in v) for q in tr)
