"""The cover-refinement game, formal entailment, and bounded search.

Run with: python3 demos/05_games_formal_and_bounded.py
"""

from locfine import (
    CoveringMonoid,
    FormalPresentation,
    GameSpec,
    Judgment,
    SubsetCarrier,
    bounded_member,
    derivation,
    entails,
    solve,
    theorem6_check,
)

f = frozenset


def cov(*member_sets):
    return f(f(m) for m in member_sets)


print("Player I plays monoid covers restricted to the current piece;")
print("Player II picks a member escaping the target.  I wins finite plays.\n")

c = SubsetCarrier(["0", "1", "2"])
m = CoveringMonoid(c, (cov("01", "2"), cov("0", "12")))
target = cov("0", "1", "2")
result = solve(GameSpec(m, target))
print("Crossing covers vs singleton target: winner =", result.winner.name)
for piece in sorted(result.strategy.moves, key=lambda p: tuple(sorted(p))):
    move = result.strategy.moves[piece]
    print("  at {" + ",".join(sorted(piece)) + "} play",
          " ".join("{" + ",".join(sorted(x)) + "}" for x in
                   sorted(move, key=lambda x: tuple(sorted(x)))))

single = CoveringMonoid(c, (cov("01", "12"),))
print("\nA single overlapping cover loses the same game:",
      solve(GameSpec(single, target)).winner.name)
print("The game verdict always matches closure membership:",
      theorem6_check(single, target) and theorem6_check(m, target))

print("\nFormal entailment over a meet-semilattice base:")
elems = ("0", "1", "b", "c")
mul = {("b", "b"): "b", ("c", "c"): "c", ("b", "c"): "0",
       ("0", "0"): "0", ("0", "b"): "0", ("0", "c"): "0"}
p = FormalPresentation(elems, "1", mul, (
    Judgment("1", f({"b", "c"})), Judgment("b", f({"0"})), Judgment("c", f({"0"}))))
goal = Judgment("1", f({"0"}))
print("  1 |= {0} derivable:", entails(p, goal))
d = derivation(p, goal)
print("  by rule:", d.rule, "from", [str(q.conclusion) for q in d.premises])

print("\nBounded search over a lazily presented infinite structure:")
print("dyadic intervals of [0,1); each piece is covered by its two halves.")


def halves(piece):
    level, index = piece
    return [[(level + 1, 2 * index), (level + 1, 2 * index + 1)]]


def inside(piece, target_piece):
    level, index = piece
    tl, ti = target_piece
    return level >= tl and index >> (level - tl) == ti


quarters = [(2, i) for i in range(4)]
found = bounded_member(halves, quarters, 2, start=(0, 0), le=inside)
print("  cover by quarters, depth 2:", "proven" if found else "unknown",
      f"(tree depth {found.depth()})" if found else "")
missing = bounded_member(halves, quarters, 1, start=(0, 0), le=inside)
print("  cover by quarters, depth 1:", "proven" if missing else "unknown",
      "(no negative is implied)")
