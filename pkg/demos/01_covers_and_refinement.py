"""Covers over finite carriers: refinement, meets, traces, stars.

Run with: python3 demos/01_covers_and_refinement.py
"""

from locfine import (
    Preorder,
    SubsetCarrier,
    meet_cover,
    normalize,
    refines,
    restrict,
    star_refines,
)

f = frozenset


def cov(*member_sets):
    return f(f(m) for m in member_sets)


def show(u):
    return " ".join("{" + ",".join(sorted(m)) + "}"
                    for m in sorted(u, key=lambda m: tuple(sorted(m))))


carrier = SubsetCarrier(["0", "1", "2"])
print("Carrier: all subsets of {0, 1, 2}, ordered by inclusion.\n")

u = cov("01", "2")
v = cov("0", "12")
print("u =", show(u))
print("v =", show(v))
print("u refines v?", refines(u, v, carrier))
print("v refines u?", refines(v, u, carrier))

m = meet_cover(u, v, carrier)
print("\nTheir meet (greatest lower bound under refinement):", show(m))
print("The meet refines both:", refines(m, u, carrier) and refines(m, v, carrier))

messy = cov("01", "0", "1", "")
print("\nNormalization keeps only maximal, nonempty members:")
print(" ", show(messy), "->", show(normalize(messy, carrier)))

piece = f({"1", "2"})
print("\nTrace of u on the piece {1,2}:", show(restrict(u, piece, carrier)))

print("\nStar refinement encodes uniform-style normality:")
singletons = cov("0", "1", "2")
overlap = cov("01", "12")
print("  singletons star-refine the overlapping pair:",
      star_refines(singletons, overlap, carrier))
print("  the overlapping pair does not star-refine itself:",
      star_refines(overlap, overlap, carrier))

print("\nAbstract preorders work the same way; meets keep the maximal")
print("common lower bounds.  Here d sits below both b and c:")
p = Preorder.from_edges("tbcd", [("b", "t"), ("c", "t"), ("d", "b"), ("d", "c")], "t")
print("  {b} /\\ {c} =", set(meet_cover(f({"b"}), f({"c"}), p)))
