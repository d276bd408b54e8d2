"""Finite frames, frames of finite spaces, points, and spatiality.

A finite frame is a finite lattice satisfying the distributive (Heyting)
law ``x /\\ (y \\/ z) = (x /\\ y) \\/ (x /\\ z)``; over a finite carrier this
is equivalent to distributivity over arbitrary joins.  Points are completely
prime filters; in a finite lattice every such filter is the up-set of a
join-prime element, which is how they are enumerated.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import InvalidTopologyError


@dataclass(frozen=True)
class SpaceDescription:
    """A finite topological space: a point set and its opens."""

    points: frozenset
    opens: frozenset

    def validate(self):
        """Raise InvalidTopologyError unless the opens form a topology."""
        if frozenset() not in self.opens:
            raise InvalidTopologyError("the empty set must be open")
        if self.points not in self.opens:
            raise InvalidTopologyError("the full point set must be open")
        for o in self.opens:
            if not o <= self.points:
                raise InvalidTopologyError(f"open {sorted(o)} is not a subset of the points")
        for a in self.opens:
            for b in self.opens:
                if a & b not in self.opens:
                    raise InvalidTopologyError(
                        f"intersection {sorted(a & b)} of opens is not open")
                if a | b not in self.opens:
                    raise InvalidTopologyError(
                        f"union {sorted(a | b)} of opens is not open")

    @property
    def is_t0(self) -> bool:
        for p, q in combinations(sorted(self.points), 2):
            if not any((p in o) != (q in o) for o in self.opens):
                return False
        return True

    def min_open(self, p) -> frozenset:
        """Smallest open containing a point (finite spaces always have one)."""
        out = self.points
        for o in self.opens:
            if p in o and o < out:
                out = o
        return out


def open_label(o) -> str:
    return "{" + ",".join(sorted(o)) + "}"


class Frame:
    """A finite lattice with explicit join/meet tables.

    Construction does not enforce the frame laws; ``validate_frame`` reports
    every violated law so that broken inputs can be diagnosed.  ``meanings``
    optionally records the concrete open set each element denotes when the
    frame was built from a space.
    """

    def __init__(self, elements, le_pairs, meanings=None):
        self.elements = tuple(sorted(set(elements)))
        names = set(self.elements)
        rel = {(a, b) for (a, b) in le_pairs if a in names and b in names}
        for a in names:
            rel.add((a, a))
        self.le_set = frozenset(rel)
        self.meanings = dict(meanings) if meanings else None
        self._down = {x: frozenset(y for y in self.elements if (y, x) in rel)
                      for x in self.elements}
        self._up = {x: frozenset(y for y in self.elements if (x, y) in rel)
                    for x in self.elements}
        self.bottom = self._unique_extremum(min_side=True)
        self.top = self._unique_extremum(min_side=False)
        self.join_table = {}
        self.meet_table = {}
        for a in self.elements:
            for b in self.elements:
                self.join_table[(a, b)] = self._bound(a, b, upper=True)
                self.meet_table[(a, b)] = self._bound(a, b, upper=False)

    def _unique_extremum(self, min_side):
        side = self._down if min_side else self._up
        cands = [x for x in self.elements if len(side[x]) == 1]
        full = [x for x in cands
                if all((x, y) in self.le_set if min_side else (y, x) in self.le_set
                       for y in self.elements)]
        return full[0] if len(full) == 1 else None

    def _bound(self, a, b, upper):
        if upper:
            common = self._up[a] & self._up[b]
            best = [x for x in common
                    if all((x, y) in self.le_set for y in common)]
        else:
            common = self._down[a] & self._down[b]
            best = [x for x in common
                    if all((y, x) in self.le_set for y in common)]
        return best[0] if len(best) == 1 else None

    def le(self, a, b) -> bool:
        return (a, b) in self.le_set

    def join(self, a, b):
        return self.join_table[(a, b)]

    def meet(self, a, b):
        return self.meet_table[(a, b)]

    def big_join(self, xs):
        acc = self.bottom
        for x in xs:
            acc = self.join_table[(acc, x)]
            if acc is None:
                return None
        return acc

    def big_meet(self, xs):
        acc = self.top
        for x in xs:
            acc = self.meet_table[(acc, x)]
            if acc is None:
                return None
        return acc

    def down_set(self, x):
        return self._down[x]

    def up_set(self, x):
        return self._up[x]

    def meaning(self, x):
        if self.meanings is None:
            raise KeyError("this frame does not carry open-set meanings")
        return self.meanings[x]

    def __len__(self):
        return len(self.elements)

    def __repr__(self):
        return f"Frame({len(self.elements)} elements)"


def frame_from_space(s: SpaceDescription) -> Frame:
    """The frame of opens of a finite space, ordered by inclusion."""
    s.validate()
    labels = {o: open_label(o) for o in s.opens}
    le = {(labels[a], labels[b]) for a in s.opens for b in s.opens if a <= b}
    f = Frame(labels.values(), le, meanings={labels[o]: o for o in s.opens})
    report = validate_frame(f)
    if report.violations:
        raise InvalidTopologyError("; ".join(report.violations))
    return f


@dataclass(frozen=True)
class FrameReport:
    violations: tuple

    @property
    def ok(self) -> bool:
        return not self.violations


def validate_frame(f: Frame, exhaustive_limit: int = 10) -> FrameReport:
    """Report every violated lattice or Heyting law.

    Binary distributivity is checked always; for frames with at most
    ``exhaustive_limit`` elements the Heyting law is additionally checked
    against every subset (the two are equivalent on finite lattices).
    """
    out = []
    elems = f.elements
    for a, b in f.le_set:
        if (b, a) in f.le_set and a != b:
            out.append(f"antisymmetry fails: {a} and {b} are mutually below each other")
    for a, b in f.le_set:
        for c in elems:
            if (b, c) in f.le_set and (a, c) not in f.le_set:
                out.append(f"transitivity fails: {a} <= {b} <= {c}")
    if f.bottom is None:
        out.append("no bottom element")
    if f.top is None:
        out.append("no top element")
    for a in elems:
        for b in elems:
            if f.join_table[(a, b)] is None:
                out.append(f"join of {a} and {b} does not exist")
            if f.meet_table[(a, b)] is None:
                out.append(f"meet of {a} and {b} does not exist")
    if out:
        return FrameReport(tuple(out))
    for x in elems:
        for y in elems:
            for z in elems:
                lhs = f.meet(x, f.join(y, z))
                rhs = f.join(f.meet(x, y), f.meet(x, z))
                if lhs != rhs:
                    out.append(
                        f"Heyting law fails: {x} /\\ ({y} \\/ {z}) = {lhs} "
                        f"but ({x} /\\ {y}) \\/ ({x} /\\ {z}) = {rhs}")
    if not out and len(elems) <= exhaustive_limit:
        subsets = [[]]
        for e in elems:
            subsets += [s + [e] for s in subsets]
        for x in elems:
            for sub in subsets:
                lhs = f.meet(x, f.big_join(sub))
                rhs = f.big_join(f.meet(x, y) for y in sub)
                if lhs != rhs:
                    out.append(
                        f"Heyting law fails on subset {sub} at {x}")
    return FrameReport(tuple(out))


@dataclass(frozen=True)
class Point:
    """A completely prime filter, with its least element for bookkeeping."""

    least: str
    filter: frozenset


def points_of(f: Frame):
    """All points, one per completely prime filter, in element order.

    In a finite lattice a completely prime filter is the up-set of a
    join-prime element, so those are enumerated directly.
    """
    out = []
    for q in f.elements:
        if q == f.bottom:
            continue
        prime = True
        for x in f.elements:
            for y in f.elements:
                if f.le(q, f.join(x, y)) and not (f.le(q, x) or f.le(q, y)):
                    prime = False
                    break
            if not prime:
                break
        if prime:
            out.append(Point(least=q, filter=f.up_set(q)))
    return tuple(out)


def point_extent(f: Frame, x) -> frozenset:
    """The set of points whose filter contains x."""
    if x not in set(f.elements):
        raise KeyError(f"unknown frame element: {x!r}")
    return frozenset(p for p in points_of(f) if x in p.filter)


def is_spatial(f: Frame):
    """Whether x -> extent(x) is injective; on failure return a witness pair."""
    pts = points_of(f)
    seen = {}
    for x in f.elements:
        ext = frozenset(p for p in pts if x in p.filter)
        if ext in seen:
            return False, (seen[ext], x)
        seen[ext] = x
    return True, None


def _signatures(f: Frame):
    sig = {x: (len(f.down_set(x)), len(f.up_set(x))) for x in f.elements}
    for _ in range(len(f.elements)):
        nxt = {}
        for x in f.elements:
            below = tuple(sorted(sig[y] for y in f.down_set(x)))
            above = tuple(sorted(sig[y] for y in f.up_set(x)))
            nxt[x] = (sig[x], below, above)
        if len(set(nxt.values())) == len(set(sig.values())):
            return sig
        sig = nxt
    return sig


def frame_iso(f: Frame, g: Frame):
    """Search for an order isomorphism; returns (found, mapping or None)."""
    if len(f.elements) != len(g.elements):
        return False, None
    sf, sg = _signatures(f), _signatures(g)
    if sorted(sf.values()) != sorted(sg.values()):
        return False, None
    order = sorted(f.elements, key=lambda x: (sf[x], x))
    candidates = {x: sorted(y for y in g.elements if sg[y] == sf[x]) for x in order}

    mapping = {}
    used = set()

    def backtrack(i):
        if i == len(order):
            return True
        x = order[i]
        for y in candidates[x]:
            if y in used:
                continue
            ok = True
            for x2, y2 in mapping.items():
                if f.le(x, x2) != g.le(y, y2) or f.le(x2, x) != g.le(y2, y):
                    ok = False
                    break
            if ok:
                mapping[x] = y
                used.add(y)
                if backtrack(i + 1):
                    return True
                del mapping[x]
                used.discard(y)
        return False

    if backtrack(0):
        return True, dict(mapping)
    return False, None


# Small space constructors used across tests, demos, and fixtures.

def space_one_point() -> SpaceDescription:
    return SpaceDescription(frozenset({"p"}), frozenset({frozenset(), frozenset({"p"})}))


def space_sierpinski() -> SpaceDescription:
    """Two points; the open point is ``b``."""
    return SpaceDescription(
        frozenset({"a", "b"}),
        frozenset({frozenset(), frozenset({"b"}), frozenset({"a", "b"})}))


def space_discrete(names) -> SpaceDescription:
    pts = sorted(names)
    subsets = [[]]
    for p in pts:
        subsets += [s + [p] for s in subsets]
    return SpaceDescription(frozenset(pts), frozenset(frozenset(s) for s in subsets))


def space_chain3() -> SpaceDescription:
    """Three points whose opens form a 4-chain."""
    return SpaceDescription(
        frozenset({"0", "1", "2"}),
        frozenset({frozenset(), frozenset({"2"}), frozenset({"1", "2"}),
                   frozenset({"0", "1", "2"})}))


def space_six_opens() -> SpaceDescription:
    """A 3-point T0 space with six opens (one isolated point over a 2-chain)."""
    return SpaceDescription(
        frozenset({"x", "y", "z"}),
        frozenset({frozenset(), frozenset({"y"}), frozenset({"z"}),
                   frozenset({"y", "z"}), frozenset({"x", "y"}),
                   frozenset({"x", "y", "z"})}))


def chain_frame(n: int) -> Frame:
    """The n-element chain 0 < 1 < ... < n-1 as a frame."""
    names = [f"c{i}" for i in range(n)]
    le = {(names[i], names[j]) for i in range(n) for j in range(i, n)}
    return Frame(names, le)


def boolean_frame_2() -> Frame:
    """The four-element Boolean lattice."""
    le = {("0", "a", ), ("0", "b"), ("0", "1"), ("a", "1"), ("b", "1")}
    return Frame(["0", "a", "b", "1"], le)


def diamond_m3() -> Frame:
    """M3: three incomparable middles, a classic non-distributive lattice."""
    mid = ["a", "b", "c"]
    le = {("0", m) for m in mid} | {(m, "1") for m in mid} | {("0", "1")}
    return Frame(["0", "1"] + mid, le)
