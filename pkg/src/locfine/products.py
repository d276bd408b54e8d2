"""Products of cover monoids, generated locales, and frame coproducts.

The coproduct of finite frames is built the way a covering relation
generates a locale: take the weak product of the frames as a poset, generate
a covering relation from single-coordinate splits (a pair (a, U) where U
replaces one coordinate of a by a family join-dominating it), close under
C1-C4, and quotient subsets of the product by mutual covering.  Equivalence
classes are represented by their saturation sat(U) = {b : Cov(b, U)}, which
is canonical because U <= V holds exactly when sat(U) is contained in
sat(V).

For product carriers the C1-C4 closure is computed lazily and goal-directed:
for a fixed target cover, the derivable subjects form a least fixpoint under
"some single-coordinate split lands entirely in the derived set".  Meets of
derivable covers stay derivable because splits are stable under meets, so
the fixpoint agrees with the full closure.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product as iproduct

from .carrier import (
    Preorder,
    SubsetCarrier,
    all_canonical_covers,
    antichains,
    cover_key,
    fold_meet,
    normalize,
    refines,
)
from .covering import CoveringMonoid, CoveringRelation, member, saturate
from .errors import LimitExceededError
from .frames import Frame, SpaceDescription, frame_from_space, is_spatial, points_of

DEFAULT_MAX_COVERS = 5000


# ---------------------------------------------------------------------------
# Products of spaces and of cover monoids
# ---------------------------------------------------------------------------

def product_points(point_sets):
    """Cartesian product of point sets, named by comma-joined components."""
    combos = list(iproduct(*[sorted(ps) for ps in point_sets]))
    return [",".join(c) for c in combos], combos


def product_space(spaces) -> SpaceDescription:
    """The product topology, by closing rectangle opens under union."""
    for s in spaces:
        s.validate()
    names, _ = product_points([s.points for s in spaces])
    rects = set()
    for opens in iproduct(*[sorted(s.opens, key=lambda o: tuple(sorted(o)))
                            for s in spaces]):
        rects.add(frozenset(",".join(c) for c in iproduct(*[sorted(o) for o in opens])))
    opens = set(rects)
    opens.add(frozenset())
    changed = True
    while changed:
        changed = False
        for a in list(opens):
            for b in list(opens):
                u = a | b
                if u not in opens:
                    opens.add(u)
                    changed = True
    return SpaceDescription(frozenset(names), frozenset(opens))


def pullback_cover(cover, axis, point_sets):
    """Preimage of a factor cover under the projection to that factor."""
    names, combos = product_points(point_sets)
    out = set()
    for u in cover:
        out.add(frozenset(name for name, combo in zip(names, combos)
                          if combo[axis] in u))
    return frozenset(out)


def product_monoid(ms, max_basis: int = DEFAULT_MAX_COVERS) -> CoveringMonoid:
    """Product of cover monoids over subset carriers.

    The basis consists of all finite meets of pullbacks of factor basis
    covers (basic rectangular covers).
    """
    if not ms:
        raise ValueError("the product of no monoids is undefined")
    for m in ms:
        if not isinstance(m.carrier, SubsetCarrier):
            raise ValueError("product_monoid expects subset carriers")
    point_sets = [m.carrier.points for m in ms]
    names, _ = product_points(point_sets)
    carrier = SubsetCarrier(names)
    pullbacks = []
    for i, m in enumerate(ms):
        for b in m.basis:
            pullbacks.append(normalize(pullback_cover(b, i, point_sets), carrier))
    pullbacks = sorted(set(pullbacks), key=lambda c: cover_key(c, carrier))
    basis = []
    seen = set()
    count = 0
    for r in range(1, len(pullbacks) + 1):
        for sub in combinations(pullbacks, r):
            count += 1
            if count > max_basis:
                raise LimitExceededError(
                    f"product basis would exceed {max_basis} meets")
            m = fold_meet(sub, carrier)
            if m not in seen:
                seen.add(m)
                basis.append(m)
    return CoveringMonoid(carrier, tuple(basis))


# ---------------------------------------------------------------------------
# Canonical covering relations and generated locales
# ---------------------------------------------------------------------------

def frame_preorder(f: Frame) -> Preorder:
    return Preorder(f.elements, f.le_set, f.top)


def canonical_cov(f: Frame, max_covers: int = DEFAULT_MAX_COVERS) -> CoveringRelation:
    """The full relation {(a, U) : a <= join U} of a finite frame."""
    carrier = frame_preorder(f)
    covers = all_canonical_covers(carrier, max_count=max_covers)
    pairs = set()
    for u in covers:
        j = f.big_join(u)
        for a in f.elements:
            if f.le(a, j):
                pairs.add((a, u))
    return CoveringRelation(carrier, frozenset(pairs), closed=True)


@dataclass
class GeneratedLocale:
    """A locale presented by saturated subsets of a base carrier."""

    carrier: object
    cov: object
    elements: tuple
    frame: Frame
    reps: dict

    def label_of(self, satset):
        return self._by_set[satset]

    def __post_init__(self):
        self._by_set = {self.frame.meaning(x): x for x in self.frame.elements}


def _locale_from_sats(carrier, cov, sats_with_reps) -> GeneratedLocale:
    ordered = sorted(sats_with_reps,
                     key=lambda s: (len(s), tuple(sorted(carrier.key(e) for e in s))))
    labels = {s: f"x{i}" for i, s in enumerate(ordered)}
    le = {(labels[a], labels[b]) for a in ordered for b in ordered if a <= b}
    frame = Frame(labels.values(), le, meanings={labels[s]: s for s in ordered})
    reps = {labels[s]: sats_with_reps[s] for s in ordered}
    return GeneratedLocale(carrier, cov, tuple(ordered), frame, reps)


def locale_from_cov(rel: CoveringRelation,
                    max_covers: int = DEFAULT_MAX_COVERS) -> GeneratedLocale:
    """The locale a covering relation generates.

    Elements are the distinct saturations of canonical covers, ordered by
    inclusion; joins are saturations of unions and meets saturations of
    member-wise meets.
    """
    if not rel.closed:
        rel, _ = saturate(rel, max_covers=max_covers)
    carrier = rel.carrier
    covers = all_canonical_covers(carrier, max_count=max_covers)
    by_cover = {}
    for (a, u) in rel.pairs:
        by_cover.setdefault(u, set()).add(a)
    sats = {}
    for u in covers:
        s = frozenset(by_cover.get(u, ()))
        if s not in sats:
            sats[s] = u
    return _locale_from_sats(carrier, rel, sats)


class ProductCoverage:
    """Lazy C1-C4 closure of single-coordinate splits over a frame product.

    ``holds(a, U)`` decides membership of a pair by a least fixpoint over
    the product elements; the full derivable set for each target cover is
    memoised.
    """

    def __init__(self, factors, max_covers: int = DEFAULT_MAX_COVERS):
        self.factors = list(factors)
        elems = [tuple(c) for c in iproduct(*[f.elements for f in self.factors])]
        le = set()
        for a in elems:
            for b in elems:
                if all(f.le(x, y) for f, x, y in zip(self.factors, a, b)):
                    le.add((a, b))
        top = tuple(f.top for f in self.factors)
        self.carrier = Preorder(elems, le, top)
        self.top = top
        self._splits = []
        for f in self.factors:
            covers = antichains(sorted(f.elements), f.le, max_count=max_covers)
            table = {}
            for x in f.elements:
                table[x] = [c for c in covers
                            if f.big_join(c) is not None and f.le(x, f.big_join(c))]
            self._splits.append(table)
        self._memo = {}

    def derivable_set(self, target) -> frozenset:
        """All product elements b with (b, target) in the closure."""
        target = normalize(target, self.carrier)
        got = self._memo.get(target)
        if got is not None:
            return got
        elems = self.carrier.class_reps()
        derived = {b for b in elems
                   if any(self.carrier.le(b, t) for t in target)}
        changed = True
        while changed:
            changed = False
            for b in elems:
                if b in derived:
                    continue
                hit = False
                for i in range(len(self.factors)):
                    for s in self._splits[i][b[i]]:
                        kids = [b[:i] + (x,) + b[i + 1:] for x in s]
                        if all(k in derived for k in kids):
                            hit = True
                            break
                    if hit:
                        break
                if hit:
                    derived.add(b)
                    changed = True
        out = frozenset(derived)
        self._memo[target] = out
        return out

    def holds(self, a, u) -> bool:
        self.carrier.check_element(a)
        return a in self.derivable_set(u)


@dataclass
class EmbeddingPhi:
    """The map u -> [u] from the product poset into the coproduct frame."""

    assignments: dict

    def __getitem__(self, b):
        return self.assignments[b]


def coproduct_frames(fs, max_covers: int = DEFAULT_MAX_COVERS):
    """Coproduct of finite frames via the generated locale.

    Returns the locale together with the embedding of the weak product into
    it.  Locale elements are generated from the singleton saturations by
    closing under joins.
    """
    coverage = ProductCoverage(fs, max_covers=max_covers)
    carrier = coverage.carrier
    sats = {}

    def note(satset, rep):
        if satset not in sats:
            sats[satset] = normalize(rep, carrier)
            return True
        return False

    note(coverage.derivable_set(frozenset()), frozenset())
    for b in carrier.class_reps():
        note(coverage.derivable_set(frozenset([b])), frozenset([b]))
    frontier = list(sats)
    while frontier:
        items = list(sats.items())
        new_frontier = []
        for s1 in frontier:
            r1 = sats[s1]
            for s2, r2 in items:
                u = normalize(r1 | r2, carrier)
                satu = coverage.derivable_set(u)
                if note(satu, u):
                    new_frontier.append(satu)
        frontier = new_frontier
        if len(sats) > max_covers:
            raise LimitExceededError("coproduct locale exceeded the size guard")
    locale = _locale_from_sats(carrier, coverage, sats)
    phi = EmbeddingPhi({
        b: locale.label_of(coverage.derivable_set(frozenset([b])))
        for b in carrier.class_reps()})
    return locale, phi


# ---------------------------------------------------------------------------
# The product theorems as executable reports
# ---------------------------------------------------------------------------

def _space_frames(spaces):
    return [frame_from_space(s) for s in spaces]


def _rects(factors, point_sets):
    """rect(b): the concrete open box each product element denotes."""
    names, combos = product_points(point_sets)
    out = {}
    for b in iproduct(*[f.elements for f in factors]):
        opens = [f.meaning(x) for f, x in zip(factors, b)]
        out[tuple(b)] = frozenset(
            name for name, combo in zip(names, combos)
            if all(c in o for c, o in zip(combo, opens)))
    return out


def embed_phi_check(locale: GeneratedLocale, phi: EmbeddingPhi,
                    coverage=None, max_covers: int = DEFAULT_MAX_COVERS):
    """Verify the coproduct embedding: order preserved and reflected, pairs
    carried into the locale's canonical relation, and every locale cover
    refined by the image of a derivable product cover."""
    coverage = coverage if coverage is not None else locale.cov
    carrier = locale.carrier
    frame = locale.frame
    report = []
    elems = carrier.class_reps()
    bottoms = [f.bottom for f in coverage.factors]
    degenerate = {b for b in elems
                  if any(x == bot for x, bot in zip(b, bottoms))}
    for u in elems:
        for v in elems:
            if carrier.le(u, v) and not frame.le(phi[u], phi[v]):
                report.append(f"phi drops the order at {u} <= {v}")
            if u in degenerate or v in degenerate:
                continue
            if frame.le(phi[u], phi[v]) and not carrier.le(u, v):
                report.append(f"phi conflates {u} and {v}")
    for u in degenerate:
        # every tuple with a bottom coordinate presents the empty piece
        if phi[u] != frame.bottom:
            report.append(f"degenerate element {u} misses the bottom")
    covers = all_canonical_covers(carrier, max_count=max_covers)
    for u in covers:
        derived = coverage.derivable_set(u)
        image_join = frame.big_join(phi[x] for x in u)
        for a in elems:
            if a in derived and not frame.le(phi[a], image_join):
                report.append(f"phi drops pair ({a}, {sorted(map(str, u))})")
    frame_covers = antichains(sorted(frame.elements), frame.le, max_count=max_covers)
    for e in frame_covers:
        if frame.big_join(e) != frame.top:
            continue
        u = normalize(frozenset().union(*(locale.reps[x] for x in e)), carrier)
        if not coverage.holds(carrier.rep(coverage.top), u):
            report.append(f"no derivable preimage for locale cover {sorted(e)}")
            continue
        for b in u:
            if not any(frame.le(phi[b], x) for x in e):
                report.append(
                    f"image member {phi[b]} escapes locale cover {sorted(e)}")
    return report


def rect_basis_check(spaces, max_covers: int = DEFAULT_MAX_COVERS):
    """Every geometric cover of a box is refined by a derivable box cover.

    Exhaustive over canonical covers of the product poset when the count
    fits the guard; otherwise each subject is reduced to its finest
    atomistic box cover (valid when atoms denote single points, e.g. for
    discrete factors).
    """
    factors = _space_frames(spaces)
    coverage = ProductCoverage(factors, max_covers=max_covers)
    carrier = coverage.carrier
    rect = _rects(factors, [s.points for s in spaces])
    elems = carrier.class_reps()
    report = []
    try:
        covers = all_canonical_covers(carrier, max_count=max_covers)
    except LimitExceededError:
        covers = None
    if covers is not None:
        for a in elems:
            for u in covers:
                union = frozenset().union(*(rect[x] for x in u)) if u else frozenset()
                if not rect[a] <= union:
                    continue
                finest = normalize(
                    frozenset(b for b in elems
                              if carrier.le(b, a) and
                              any(rect[b] <= rect[x] for x in u)), carrier)
                if not coverage.holds(a, finest):
                    report.append(
                        f"no rectangular refinement derivable for "
                        f"({a}, cover of size {len(u)})")
        return report
    for a in elems:
        below = [b for b in elems if carrier.le(b, a) and rect[b]]
        atoms = [b for b in below
                 if not any(b2 != b and carrier.le(b2, b) and rect[b2] for b2 in below)]
        atom_union = frozenset().union(*(rect[b] for b in atoms)) if atoms else frozenset()
        applicable = (all(len(rect[b]) == 1 for b in atoms)
                      and atom_union == rect[a])
        if not applicable:
            raise LimitExceededError(
                "exhaustive cover scan too large and the atomistic reduction "
                "does not apply")
        if not coverage.holds(a, normalize(frozenset(atoms), carrier)):
            report.append(f"finest box cover of {a} is not derivable")
    return report


def spatial_product_eq(spaces, max_covers: int = DEFAULT_MAX_COVERS):
    """Compare the closed product relation with the geometric fine relation,
    and report spatiality of the coproduct frame alongside."""
    for s in spaces:
        s.validate()
        if not s.is_t0:
            raise ValueError("spatial_product_eq needs T0 factors")
    factors = _space_frames(spaces)
    coverage = ProductCoverage(factors, max_covers=max_covers)
    carrier = coverage.carrier
    rect = _rects(factors, [s.points for s in spaces])
    covers = all_canonical_covers(carrier, max_count=max_covers)
    mismatches = 0
    for u in covers:
        union = frozenset().union(*(rect[x] for x in u)) if u else frozenset()
        derived = coverage.derivable_set(u)
        for a in carrier.class_reps():
            geo = rect[a] <= union
            if geo != (a in derived):
                mismatches += 1
    locale, _ = coproduct_frames(factors, max_covers=max_covers)
    spatial, _ = is_spatial(locale.frame)
    equal = mismatches == 0
    report = [
        f"closed product relation equals geometric covering: {str(equal).lower()}"
        + ("" if equal else f" ({mismatches} mismatching pairs)"),
        f"coproduct frame spatial: {str(spatial).lower()} "
        f"(elements={len(locale.frame)}, points={len(points_of(locale.frame))})",
    ]
    return equal and spatial, report


def star_variant_eq(spaces, regular=None, max_covers: int = DEFAULT_MAX_COVERS):
    """Compare top-pairs of the closed product relation with closure
    membership in the product of fine cover monoids, and report whether that
    closure captures exactly the open-refinable covers of the product."""
    from .covering import fine_monoid

    if regular is None:
        raise ValueError("regularity must be asserted per factor")
    regular = list(regular)
    if len(regular) != len(spaces):
        raise ValueError("one regularity flag per factor is required")
    factors = _space_frames(spaces)
    coverage = ProductCoverage(factors, max_covers=max_covers)
    carrier = coverage.carrier
    rect = _rects(factors, [s.points for s in spaces])
    pm = product_monoid([fine_monoid(s) for s in spaces], max_basis=max_covers)
    pcarrier = pm.carrier

    report = []
    if not all(regular):
        report.append("warning: non-regular factor flagged; equivalence not asserted")

    eq74 = True
    covers = all_canonical_covers(carrier, max_count=max_covers)
    top = carrier.rep(coverage.top)
    for u in covers:
        lhs = coverage.holds(top, u)
        point_cover = normalize(frozenset(rect[x] for x in u), pcarrier)
        rhs = member(pm, point_cover, use_lambda=True)
        if lhs != rhs:
            eq74 = False
    report.append(
        f"top pairs of the closed product relation match closure membership: "
        f"{str(eq74).lower()}")

    prod = product_space(spaces)
    finest_open = normalize(
        frozenset(prod.min_open(p) for p in prod.points), pcarrier)
    eq86 = True
    for v in all_canonical_covers(pcarrier, max_count=max_covers):
        lhs = member(pm, v, use_lambda=True)
        rhs = refines(finest_open, v, pcarrier)
        if lhs != rhs:
            eq86 = False
    locale, _ = coproduct_frames(factors, max_covers=max_covers)
    spatial, _ = is_spatial(locale.frame)
    report.append(
        f"closure of the fine-monoid product equals the fine monoid of the "
        f"product: {str(eq86).lower()}")
    report.append(f"coproduct frame spatial: {str(spatial).lower()}")
    return eq74 and eq86 == spatial, report
