"""Finite carriers and the combinatorics of covers.

A carrier is a finite pre-ordered universe of pieces with a top element and a
meet structure.  Two kinds are provided:

* ``SubsetCarrier`` -- the pieces are all subsets of a finite point set,
  ordered by inclusion, with intersection as meet.  Pieces are ``frozenset``
  instances of point names.
* ``Preorder`` -- an abstract finite preorder given by an explicit relation,
  with a unique top.  Pieces are opaque string ids; the meet of two pieces is
  the set of maximal common lower bounds.

A *cover* is a finite set of pieces, represented as a ``frozenset``.  Covers
are compared by the refinement preorder (``u`` refines ``v`` when every member
of ``u`` lies below some member of ``v``) and are stored in a normalized form:
no duplicates, no empty member on a subset carrier, only maximal members, and
on preorders one representative per equivalence class of mutually comparable
elements.  Normalized covers are canonical: two normalized covers refine each
other exactly when they are equal, which is what makes the saturation engines
terminate and memoise safely.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Iterator, Union

from .errors import CarrierMismatchError, LimitExceededError

Element = Union[str, frozenset]
Cover = frozenset

# Ceiling for canonical-cover enumeration; overridable per call.
DEFAULT_MAX_COVERS = 200_000


class SubsetCarrier:
    """All subsets of a finite point set, ordered by inclusion."""

    def __init__(self, points: Iterable[str]):
        self.points = frozenset(points)
        self.top = self.points

    def is_element(self, e) -> bool:
        return isinstance(e, frozenset) and e <= self.points

    def check_element(self, e):
        if not self.is_element(e):
            raise CarrierMismatchError(f"not a subset of the carrier points: {e!r}")

    def le(self, a, b) -> bool:
        return a <= b

    def meet2(self, a, b):
        """Maximal common lower bounds of a pair (here: the intersection)."""
        return [a & b]

    def key(self, e):
        return tuple(sorted(e))

    def rep(self, e):
        return e

    def elements(self) -> Iterator[frozenset]:
        """All subsets in canonical order (2^n of them)."""
        pts = sorted(self.points)
        for r in range(len(pts) + 1):
            for combo in combinations(pts, r):
                yield frozenset(combo)

    def class_reps(self):
        return list(self.elements())

    def __repr__(self):
        return f"SubsetCarrier({sorted(self.points)})"

    def __eq__(self, other):
        return isinstance(other, SubsetCarrier) and self.points == other.points

    def __hash__(self):
        return hash(("SubsetCarrier", self.points))


class Preorder:
    """A finite preorder with a unique top element.

    The relation must be reflexive and transitive over the declared elements;
    the constructor checks this and raises ``ValueError`` otherwise.  Use
    ``Preorder.from_edges`` to build one from a sparse edge list (the
    reflexive-transitive closure is taken automatically).
    """

    def __init__(self, elements: Iterable[str], le_pairs: Iterable[tuple], top: str):
        self.elements_tuple = tuple(sorted(set(elements)))
        names = set(self.elements_tuple)
        rel = {(a, b) for (a, b) in le_pairs}
        for a, b in rel:
            if a not in names or b not in names:
                raise ValueError(f"relation mentions unknown element: {(a, b)}")
        for a in names:
            rel.add((a, a))
        for a, b in list(rel):
            for c in names:
                if (b, c) in rel and (a, c) not in rel:
                    raise ValueError(f"relation is not transitive: {a} <= {b} <= {c}")
        if top not in names:
            raise ValueError(f"unknown top element: {top}")
        for a in names:
            if (a, top) not in rel:
                raise ValueError(f"top does not dominate {a}")
        self.top = top
        self._le = frozenset(rel)
        # Representative of each equivalence class: the least name in it.
        self._rep = {}
        for a in names:
            cls = sorted(b for b in names if (a, b) in rel and (b, a) in rel)
            self._rep[a] = cls[0]

    @classmethod
    def from_edges(cls, elements, edges, top):
        """Build from a sparse ``a <= b`` edge list; closure is computed."""
        names = set(elements)
        rel = {(a, a) for a in names} | {tuple(e) for e in edges}
        changed = True
        while changed:
            changed = False
            for a, b in list(rel):
                for b2, c in list(rel):
                    if b == b2 and (a, c) not in rel:
                        rel.add((a, c))
                        changed = True
        return cls(names, rel, top)

    def is_element(self, e) -> bool:
        return e in self._rep

    def check_element(self, e):
        if not self.is_element(e):
            raise CarrierMismatchError(f"unknown element id: {e!r}")

    def le(self, a, b) -> bool:
        return (a, b) in self._le

    def meet2(self, a, b):
        """Maximal common lower bounds, one per equivalence class."""
        lower = {self._rep[p] for p in self.elements_tuple
                 if self.le(p, a) and self.le(p, b)}
        return [p for p in lower
                if not any(q != p and self.le(p, q) for q in lower)]

    def key(self, e):
        return (e,)

    def rep(self, e):
        return self._rep[e]

    def elements(self):
        return iter(self.elements_tuple)

    def class_reps(self):
        reps = sorted(set(self._rep.values()))
        return reps

    def le_pairs(self):
        return self._le

    def __repr__(self):
        return f"Preorder({len(self.elements_tuple)} elements, top={self.top!r})"

    def __eq__(self, other):
        return (isinstance(other, Preorder)
                and self.elements_tuple == other.elements_tuple
                and self._le == other._le and self.top == other.top)

    def __hash__(self):
        return hash(("Preorder", self.elements_tuple, self._le, self.top))


Carrier = Union[SubsetCarrier, Preorder]


def cover_key(u: Cover, carrier) -> tuple:
    """Deterministic sort key for a cover."""
    return tuple(sorted(carrier.key(m) for m in u))


def sorted_members(u: Cover, carrier) -> list:
    return sorted(u, key=carrier.key)


def normalize(u: Iterable, carrier) -> Cover:
    """Canonical form of a cover.

    Drops duplicates, empty members (subset carriers), members subsumed by a
    strictly larger member, and equivalence-class duplicates on preorders.
    The result mutually refines the input.
    """
    members = set()
    for m in u:
        carrier.check_element(m)
        m = carrier.rep(m)
        if isinstance(carrier, SubsetCarrier) and not m:
            continue
        members.add(m)
    kept = []
    for m in members:
        if any(m2 != m and carrier.le(m, m2) for m2 in members):
            continue
        kept.append(m)
    return frozenset(kept)


def refines(u: Cover, v: Cover, carrier) -> bool:
    """u refines v: every member of u lies below some member of v.

    An empty piece on a subset carrier refines vacuously, so refinement is
    invariant under normalization.
    """
    for m in u:
        carrier.check_element(m)
    for m in v:
        carrier.check_element(m)
    empty_ok = isinstance(carrier, SubsetCarrier)
    return all(
        (empty_ok and not a) or any(carrier.le(a, b) for b in v)
        for a in u
    )


def mutually_refine(u: Cover, v: Cover, carrier) -> bool:
    return refines(u, v, carrier) and refines(v, u, carrier)


def meet_cover(u: Cover, v: Cover, carrier) -> Cover:
    """Greatest lower bound of two covers in the refinement preorder.

    On a subset carrier this is the normalized cover of pairwise
    intersections; on a preorder, the normalized set of maximal common lower
    bounds taken over all member pairs.
    """
    pieces = []
    for a in u:
        carrier.check_element(a)
        for b in v:
            carrier.check_element(b)
            pieces.extend(carrier.meet2(a, b))
    return normalize(pieces, carrier)


def fold_meet(covers: Iterable[Cover], carrier) -> Cover:
    """Meet of a nonempty family of covers, folded in the given order."""
    it = iter(covers)
    try:
        acc = normalize(next(it), carrier)
    except StopIteration:
        raise ValueError("fold_meet needs at least one cover")
    for c in it:
        acc = meet_cover(acc, c, carrier)
    return acc


def restrict(u: Cover, a, carrier: SubsetCarrier) -> Cover:
    """Trace of a cover on a piece: the normalized cover {m & a : m in u}."""
    if not isinstance(carrier, SubsetCarrier):
        raise CarrierMismatchError("restrict is defined on subset carriers only")
    carrier.check_element(a)
    return normalize((m & a for m in u), carrier)


def star(m, v: Cover) -> frozenset:
    """St(m, v): union of the members of v meeting m."""
    out = set(m)
    for m2 in v:
        if m2 & m:
            out |= m2
    return frozenset(out)


def star_refines(v: Cover, u: Cover, carrier: SubsetCarrier) -> bool:
    """Every star St(m, v) is contained in some member of u."""
    if not isinstance(carrier, SubsetCarrier):
        raise CarrierMismatchError("star refinement is defined on subset carriers only")
    for m in v:
        carrier.check_element(m)
        if not any(star(m, v) <= b for b in u):
            return False
    return True


def antichains(elements, le, max_count: int = DEFAULT_MAX_COVERS):
    """All antichains of a finite poset of class representatives.

    ``elements`` must be mutually incomparable-or-equal-free representatives;
    the empty antichain is included.  Raises ``LimitExceededError`` when the
    count would exceed ``max_count``.
    """
    elems = list(elements)
    out = [frozenset()]

    def extend(prefix, start):
        for i in range(start, len(elems)):
            e = elems[i]
            if any(le(e, p) or le(p, e) for p in prefix):
                continue
            chosen = prefix + [e]
            out.append(frozenset(chosen))
            if len(out) > max_count:
                raise LimitExceededError(
                    f"more than {max_count} canonical covers; raise the guard to proceed")
            extend(chosen, i + 1)

    extend([], 0)
    return out


def all_canonical_covers(carrier, max_count: int = DEFAULT_MAX_COVERS):
    """All normalized covers over a carrier, in deterministic order."""
    if isinstance(carrier, SubsetCarrier):
        reps = [e for e in carrier.class_reps() if e]
    else:
        reps = carrier.class_reps()
    reps.sort(key=carrier.key)
    chains = antichains(reps, carrier.le, max_count=max_count)
    chains.sort(key=lambda c: cover_key(c, carrier))
    return chains


def is_cover_of_top(u: Cover, carrier) -> bool:
    """On a subset carrier: the members exhaust the point set."""
    if isinstance(carrier, SubsetCarrier):
        acc = set()
        for m in u:
            acc |= m
        return frozenset(acc) == carrier.points
    return True
