"""Covering relations and monoids of covers.

Two closure engines live here:

* ``saturate`` closes a relation of (piece, cover) pairs under the four
  covering-relation axioms: C1 membership, C2 order, C3 meets, C4
  transitivity.  Pairs are kept in canonical form (class-representative
  subjects, normalized covers), which bounds the state space and makes the
  round-based derivation deterministic.

* ``lambda_close`` closes a monoid of covers of the top element under the
  locally fine combination.  A monoid's own membership asks for a single
  basis cover refining the query; the closure's membership asks for a
  meet-combination of basis covers.  The two coincide exactly when the basis
  is meet-directed, which is what ``is_locally_fine`` reports.

``rank`` measures how many combination stages the closure needs: stage d
membership is witnessed by Noetherian trees of depth at most d + 1 whose
node covers are restrictions of basis covers (``witness_tree`` builds such a
tree, ``bounded_member`` searches for one under a caller-supplied lazy
enumeration).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from . import carrier as oc
from .carrier import (
    Cover,
    Preorder,
    SubsetCarrier,
    all_canonical_covers,
    cover_key,
    fold_meet,
    meet_cover,
    normalize,
    refines,
    restrict,
    star_refines,
)
from .errors import CarrierMismatchError
from .frames import SpaceDescription

DEFAULT_MAX_COVERS = 5000


@dataclass(frozen=True)
class DerivationTrace:
    """Stagewise record of a closure: (stage index, newly added items)."""

    stages: tuple

    def stage_of(self, item):
        for idx, added in self.stages:
            if item in added:
                return idx
        return None

    @property
    def final_is_empty(self) -> bool:
        return bool(self.stages) and not self.stages[-1][1]


@dataclass(frozen=True)
class CoveringRelation:
    """A set of (piece, cover) pairs over a carrier, canonicalized."""

    carrier: object
    pairs: frozenset
    closed: bool = False

    def __post_init__(self):
        canon = set()
        for (a, u) in self.pairs:
            self.carrier.check_element(a)
            canon.add((self.carrier.rep(a), normalize(u, self.carrier)))
        object.__setattr__(self, "pairs", frozenset(canon))

    def holds(self, a, u) -> bool:
        self.carrier.check_element(a)
        return (self.carrier.rep(a), normalize(u, self.carrier)) in self.pairs

    def sorted_pairs(self):
        return sorted(self.pairs,
                      key=lambda p: (self.carrier.key(p[0]), cover_key(p[1], self.carrier)))


@dataclass(frozen=True)
class CoveringMonoid:
    """A monoid of covers of top, given by a finite basis.

    A cover belongs to the monoid when some basis cover refines it; the
    meet-and-coarsening filter semantics is obtained through
    ``lambda_close`` / ``member(..., use_lambda=True)``.  An empty basis
    denotes the filter generated by the trivial cover {top}.
    """

    carrier: object
    basis: tuple

    def __post_init__(self):
        covers = []
        for u in self.basis:
            if isinstance(self.carrier, SubsetCarrier):
                union = frozenset().union(*u) if u else frozenset()
                if union != self.carrier.points:
                    raise ValueError(
                        f"basis cover does not cover the points: {sorted(map(sorted, u))}")
            covers.append(normalize(u, self.carrier))
        if not covers:
            covers = [normalize([self.carrier.top], self.carrier)]
        uniq = sorted(set(covers), key=lambda c: cover_key(c, self.carrier))
        object.__setattr__(self, "basis", tuple(uniq))


@dataclass(frozen=True)
class NoetherianTree:
    """A well-founded tree of pieces; leaves are the End set."""

    node: object
    children: tuple = ()

    def leaves(self):
        if not self.children:
            return (self.node,)
        out = []
        for c in self.children:
            out.extend(c.leaves())
        return tuple(out)

    def depth(self) -> int:
        if not self.children:
            return 0
        return 1 + max(c.depth() for c in self.children)


# ---------------------------------------------------------------------------
# Relational saturation (C1-C4)
# ---------------------------------------------------------------------------

class _CoverSpace:
    """Interned canonical covers over a carrier, with memoized meets."""

    def __init__(self, carrier, max_covers):
        self.carrier = carrier
        self.covers = all_canonical_covers(carrier, max_count=max_covers)
        self.cid = {c: i for i, c in enumerate(self.covers)}
        if isinstance(carrier, SubsetCarrier):
            self.subjects = sorted(carrier.class_reps(), key=carrier.key)
        else:
            self.subjects = sorted(carrier.class_reps(), key=carrier.key)
        self.sid = {s: i for i, s in enumerate(self.subjects)}
        self._meets = {}
        self.member_sids = [frozenset(self.sid[self.carrier.rep(m)] for m in c)
                            for c in self.covers]

    def canon_pair(self, a, u):
        a = self.carrier.rep(a)
        u = normalize(u, self.carrier)
        return self.sid[a], self.cid[u]

    def meet_id(self, i, j):
        if i > j:
            i, j = j, i
        got = self._meets.get((i, j))
        if got is None:
            got = self.cid[meet_cover(self.covers[i], self.covers[j], self.carrier)]
            self._meets[(i, j)] = got
        return got


def _close(space, initial, want_provenance):
    """Round-based closure under C1-C4; returns (pairs, stage list, provenance)."""
    carrier = space.carrier
    present = set(initial)
    provenance = {}
    stages = []

    forced = []
    for ci, c in enumerate(space.covers):
        for m in c:
            forced.append(((space.sid[carrier.rep(m)], ci), "C1"))
    for a in space.subjects:
        for b in space.subjects:
            if carrier.le(a, b):
                ci = space.cid[normalize([b], carrier)]
                forced.append(((space.sid[a], ci), "C2"))

    round_no = 0
    first = True
    while True:
        round_no += 1
        added = {}

        def propose(pair, rule):
            if pair not in present and pair not in added:
                added[pair] = rule

        if first:
            for pair, rule in forced:
                propose(pair, rule)
        by_subject = {}
        for (si, ci) in present:
            by_subject.setdefault(si, []).append(ci)
        for si, cids in sorted(by_subject.items()):
            cids = sorted(cids)
            for i in cids:
                for j in cids:
                    if i < j:
                        propose((si, space.meet_id(i, j)), "C3")
        holders = {}
        for (si, ci) in present:
            holders.setdefault(ci, set()).add(si)
        holder_sets = {ci: frozenset(s) for ci, s in holders.items()}
        for vi in range(len(space.covers)):
            hs = holder_sets.get(vi, frozenset())
            for (si, ui) in present:
                if space.member_sids[ui] <= hs:
                    propose((si, vi), "C4")
        first = False
        stage_pairs = frozenset(
            (space.subjects[si], space.covers[ci]) for (si, ci) in added)
        stages.append((round_no, stage_pairs))
        if not added:
            break
        for pair, rule in added.items():
            present.add(pair)
            if want_provenance:
                provenance[pair] = rule
    return present, stages, provenance


def saturate(rel: CoveringRelation, max_covers: int = DEFAULT_MAX_COVERS):
    """Least covering relation containing ``rel`` and closed under C1-C4.

    The trace records stage 0 (the canonicalized generators) followed by one
    stage per derivation round; the final stage is empty.
    """
    space = _CoverSpace(rel.carrier, max_covers)
    initial = {space.canon_pair(a, u) for (a, u) in rel.pairs}
    present, stages, _ = _close(space, initial, want_provenance=False)
    pairs = frozenset((space.subjects[si], space.covers[ci]) for (si, ci) in present)
    trace = DerivationTrace(((0, frozenset(rel.pairs)),) + tuple(stages))
    return CoveringRelation(rel.carrier, pairs, closed=True), trace


@dataclass(frozen=True)
class AuditReport:
    """Missing consequences of each axiom, relative to the stored pairs."""

    c1: tuple
    c2: tuple
    c3: tuple
    c4: tuple

    @property
    def ok(self) -> bool:
        return not (self.c1 or self.c2 or self.c3 or self.c4)

    def lines(self, carrier):
        out = []
        for rule, missing in (("C1", self.c1), ("C2", self.c2),
                              ("C3", self.c3), ("C4", self.c4)):
            for (a, u) in missing:
                out.append(f"{rule} violated: missing pair ({_fmt_elem(a)}, "
                           f"{_fmt_cover(u, carrier)})")
        return out


def _fmt_elem(e):
    if isinstance(e, frozenset):
        return "{" + " ".join(sorted(e)) + "}"
    return str(e)


def _fmt_cover(u, carrier):
    if isinstance(carrier, SubsetCarrier):
        return " ".join(_fmt_elem(m) for m in oc.sorted_members(u, carrier))
    return "{" + " ".join(str(m) for m in oc.sorted_members(u, carrier)) + "}"


def audit_axioms(rel: CoveringRelation, max_covers: int = DEFAULT_MAX_COVERS) -> AuditReport:
    """Report every pair the axioms force but the relation lacks.

    Each missing pair is attributed to the first rule that derives it in the
    canonical closure order, so an unclosed generator set shows its C4
    composites explicitly.
    """
    space = _CoverSpace(rel.carrier, max_covers)
    initial = {space.canon_pair(a, u) for (a, u) in rel.pairs}
    present, _, provenance = _close(space, initial, want_provenance=True)
    buckets = {"C1": [], "C2": [], "C3": [], "C4": []}
    for pair in present - initial:
        rule = provenance[pair]
        si, ci = pair
        buckets[rule].append((space.subjects[si], space.covers[ci]))
    key = lambda p: (rel.carrier.key(p[0]), cover_key(p[1], rel.carrier))
    return AuditReport(
        c1=tuple(sorted(buckets["C1"], key=key)),
        c2=tuple(sorted(buckets["C2"], key=key)),
        c3=tuple(sorted(buckets["C3"], key=key)),
        c4=tuple(sorted(buckets["C4"], key=key)),
    )


# ---------------------------------------------------------------------------
# Monoids of covers and the locally fine closure
# ---------------------------------------------------------------------------

def meet_closure(basis, carrier):
    """All folded meets of nonempty subsets of the basis, canonicalized."""
    out = []
    seen = set()
    bs = list(basis)
    for r in range(1, len(bs) + 1):
        for sub in combinations(bs, r):
            m = fold_meet(sub, carrier)
            if m not in seen:
                seen.add(m)
                out.append(m)
    return sorted(out, key=lambda c: cover_key(c, carrier))


def global_meet(m: CoveringMonoid) -> Cover:
    return fold_meet(m.basis, m.carrier)


def member(m: CoveringMonoid, v: Cover, use_lambda: bool = True) -> bool:
    """Whether v belongs to the monoid, or to its locally fine closure.

    With ``use_lambda`` the meet of the whole basis stands in for the
    closure: it refines every locally fine combination, so membership of v
    is equivalent to the meet refining v.
    """
    v = normalize(v, m.carrier)
    if use_lambda:
        return refines(global_meet(m), v, m.carrier)
    return any(refines(b, v, m.carrier) for b in m.basis)


def lambda_close(m: CoveringMonoid, variant: str = "slow"):
    """The locally fine closure, as a monoid with a meet-closed basis.

    The trace presents the closure stagewise: the slow variant meets one
    more basis cover per stage, the classic variant meets the accumulated
    stage with itself.  Both reach the same fixpoint.
    """
    if variant not in ("slow", "classic"):
        raise ValueError(f"unknown variant: {variant!r}")
    c = m.carrier
    cumulative = list(m.basis)
    seen = set(cumulative)
    stages = [(0, frozenset(m.basis))]
    frontier = list(m.basis)
    idx = 0
    while True:
        idx += 1
        if variant == "slow":
            candidates = [meet_cover(u, b, c) for u in frontier for b in m.basis]
        else:
            candidates = [meet_cover(u, w, c) for u in cumulative for w in cumulative]
        new = []
        for cand in sorted(set(candidates), key=lambda x: cover_key(x, c)):
            if cand not in seen:
                seen.add(cand)
                new.append(cand)
        stages.append((idx, frozenset(new)))
        if not new:
            break
        cumulative.extend(new)
        frontier = new
    closed = CoveringMonoid(c, tuple(cumulative))
    return closed, DerivationTrace(tuple(stages))


def is_locally_fine(m: CoveringMonoid) -> bool:
    """Whether the closure adds no membership: some basis cover refines the
    meet of the whole basis."""
    target = global_meet(m)
    return any(refines(b, target, m.carrier) for b in m.basis)


def _restrict_to_piece(cover, piece, carrier):
    if isinstance(carrier, SubsetCarrier):
        return restrict(cover, piece, carrier)
    return meet_cover(cover, frozenset([piece]), carrier)


def _depth_member(m: CoveringMonoid, v: Cover, depth: int) -> bool:
    """Noetherian trees of depth <= depth with basis-restriction covers."""
    c = m.carrier
    v = normalize(v, c)
    memo = {}

    def dec(piece, d):
        key = (piece, d)
        got = memo.get(key)
        if got is not None:
            return got
        if any(c.le(piece, t) for t in v):
            memo[key] = True
            return True
        if d == 0:
            memo[key] = False
            return False
        for b in m.basis:
            pieces = _restrict_to_piece(b, piece, c)
            if pieces and all(dec(q, d - 1) for q in oc.sorted_members(pieces, c)):
                memo[key] = True
                return True
        memo[key] = False
        return False

    return dec(c.rep(c.top) if isinstance(c, Preorder) else c.top, depth)


def rank(m: CoveringMonoid) -> int:
    """Least stage at which the derivative sequence stabilizes (0 when the
    monoid is already locally fine)."""
    target = global_meet(m)
    alpha = 0
    while True:
        if _depth_member(m, target, alpha + 1):
            return alpha
        alpha += 1
        if alpha > len(m.basis):
            raise AssertionError("derivative sequence failed to stabilize")


def witness_tree(m: CoveringMonoid, v: Cover):
    """A Noetherian tree establishing membership of v in the closure.

    Root is the top piece; the children of each internal node are the trace
    of a basis cover on that node; the leaves refine v.  Returns None when
    v is not a member.
    """
    c = m.carrier
    if not isinstance(c, SubsetCarrier):
        raise CarrierMismatchError("witness trees are built over subset carriers")
    v = normalize(v, c)
    if not member(m, v, use_lambda=True):
        return None
    top = c.top
    if any(top <= t for t in v):
        return NoetherianTree(top)
    for b in m.basis:
        if refines(b, v, c):
            kids = tuple(NoetherianTree(p) for p in oc.sorted_members(b, c))
            return NoetherianTree(top, kids)
    order = list(m.basis)

    def build(piece, i):
        if any(piece <= t for t in v):
            return NoetherianTree(piece)
        assert i < len(order), "member() promised a refinement the tree lost"
        pieces = restrict(order[i], piece, c)
        kids = tuple(build(q, i + 1) for q in oc.sorted_members(pieces, c))
        return NoetherianTree(piece, kids)

    return build(top, 0)


def check_witness(m: CoveringMonoid, v: Cover, tree: NoetherianTree) -> bool:
    """Structural validity of a witness tree: rooted at top, node covers are
    traces of basis covers, leaves refine v."""
    c = m.carrier
    v = normalize(v, c)
    if tree.node != c.top:
        return False
    if not refines(frozenset(tree.leaves()), v, c):
        return False

    def walk(t):
        if not t.children:
            return True
        kids = frozenset(ch.node for ch in t.children)
        if frozenset().union(*kids) != t.node:
            return False
        if not any(refines(restrict(b, t.node, c), kids, c) for b in m.basis):
            return False
        return all(walk(ch) for ch in t.children)

    return walk(tree)


def bounded_member(covers_of, v, depth: int, *, start, le=None):
    """Depth-bounded search for a Noetherian witness over a lazy structure.

    ``covers_of(piece)`` yields finitely many covers (iterables of pieces) of
    the piece; ``le`` compares pieces (subset containment by default).
    Returns a tree when one of depth <= depth exists, else None; a None
    answer carries no negative information.
    """
    if le is None:
        le = lambda a, b: a <= b
    targets = list(v)
    memo = {}

    def attempt(piece, d):
        key = (piece, d)
        if key in memo:
            return memo[key]
        if any(le(piece, t) for t in targets):
            out = NoetherianTree(piece)
            memo[key] = out
            return out
        if d == 0:
            memo[key] = None
            return None
        for cov in covers_of(piece):
            kids = []
            ok = True
            for q in cov:
                sub = attempt(q, d - 1)
                if sub is None:
                    ok = False
                    break
                kids.append(sub)
            if ok:
                out = NoetherianTree(piece, tuple(kids))
                memo[key] = out
                return out
        memo[key] = None
        return None

    for d in range(depth + 1):
        memo.clear()
        got = attempt(start, d)
        if got is not None:
            return got
    return None


def lazy_view(m: CoveringMonoid):
    """Adapter exposing a finite monoid through the lazy enumerator contract."""
    c = m.carrier

    def covers_of(piece):
        out = []
        for b in m.basis:
            tr = restrict(b, piece, c)
            if tr:
                out.append(oc.sorted_members(tr, c))
        return out

    return covers_of


def is_normal(m: CoveringMonoid) -> bool:
    """Every basis cover is star-refined by a member of the meet closure."""
    c = m.carrier
    if not isinstance(c, SubsetCarrier):
        raise CarrierMismatchError("normality is defined over subset carriers")
    closure = meet_closure(m.basis, c)
    return all(any(star_refines(w, b, c) for w in closure) for b in m.basis)


def induced_relation_holds(m: CoveringMonoid, piece, family) -> bool:
    """The relation a monoid induces on pieces: some member traces on the
    piece to a refinement of the family."""
    c = m.carrier
    return any(refines(restrict(b, piece, c), normalize(family, c), c)
               for b in m.basis)


def fine_monoid(space: SpaceDescription) -> CoveringMonoid:
    """The monoid of all open covers of a finite space."""
    space.validate()
    c = SubsetCarrier(space.points)
    opens = sorted((o for o in space.opens if o), key=c.key)
    covers = [anti for anti in oc.antichains(opens, lambda a, b: a <= b)
              if frozenset().union(*anti) == space.points]
    if not space.points:
        covers = [frozenset()]
    return CoveringMonoid(c, tuple(covers))
