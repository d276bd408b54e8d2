"""Entailment over a commutative monoid base, with derivation trees.

A presentation is a finite commutative monoid together with axiom judgments
``a |= U``.  Entailment is the least relation containing the axioms and
closed under four rules: membership (a in U), divisibility (a*b |= {a}),
products (a |= U and a |= V give a |= U*V), and transitivity (a |= U and
u |= V for every u in U give a |= V).  Transitivity is the relational face
of the locally fine closure, so the covers of the unit always form a
locally fine monoid over the divisibility preorder.
"""

from __future__ import annotations

from dataclasses import dataclass

from .carrier import Preorder, cover_key
from .covering import CoveringMonoid, CoveringRelation


@dataclass(frozen=True)
class Judgment:
    subject: str
    cover: frozenset

    def __repr__(self):
        return f"{self.subject} |= {{{','.join(sorted(self.cover))}}}"


@dataclass(frozen=True)
class FormalPresentation:
    """A commutative monoid base (elements, product table, unit) plus axioms."""

    elements: tuple
    unit: str
    mul: dict
    axioms: tuple = ()

    def __post_init__(self):
        elems = tuple(sorted(set(self.elements)))
        object.__setattr__(self, "elements", elems)
        names = set(elems)
        if self.unit not in names:
            raise ValueError(f"unknown unit: {self.unit!r}")
        table = dict(self.mul)
        for a in elems:
            table[(a, self.unit)] = a
            table[(self.unit, a)] = a
        for a in elems:
            for b in elems:
                if (a, b) not in table and (b, a) in table:
                    table[(a, b)] = table[(b, a)]
        for a in elems:
            for b in elems:
                if (a, b) not in table:
                    raise ValueError(f"product {a}*{b} is undefined")
                if table[(a, b)] not in names:
                    raise ValueError(f"product {a}*{b} leaves the base")
                if table[(a, b)] != table[(b, a)]:
                    raise ValueError(f"product is not commutative at {a},{b}")
        for a in elems:
            for b in elems:
                for c in elems:
                    if table[(table[(a, b)], c)] != table[(a, table[(b, c)])]:
                        raise ValueError(f"product is not associative at {a},{b},{c}")
        object.__setattr__(self, "mul", table)
        ax = []
        for j in self.axioms:
            if j.subject not in names or not set(j.cover) <= names:
                raise ValueError(f"axiom mentions unknown elements: {j}")
            ax.append(Judgment(j.subject, frozenset(j.cover)))
        object.__setattr__(self, "axioms", tuple(ax))

    def product(self, a, b):
        return self.mul[(a, b)]

    def cover_product(self, u, v):
        return frozenset(self.product(a, b) for a in u for b in v)

    def all_covers(self):
        out = [frozenset()]
        for e in self.elements:
            out += [s | {e} for s in out]
        return sorted(set(out), key=lambda s: (len(s), tuple(sorted(s))))


@dataclass(frozen=True)
class Derivation:
    """A proof tree: leaves are axioms or rule-1/2 instances."""

    conclusion: Judgment
    rule: str
    premises: tuple = ()

    def height(self) -> int:
        if not self.premises:
            return 1
        return 1 + max(p.height() for p in self.premises)


def _saturate_judgments(p: FormalPresentation):
    """All derivable judgments with the rule and premises that first derive
    each one, in deterministic round order."""
    derived = {}

    def jkey(j):
        return (j.subject, tuple(sorted(j.cover)))

    def propose(batch, j, rule, premises):
        if j not in derived and j not in batch:
            batch[j] = (rule, premises)

    covers = p.all_covers()
    batch = {}
    for j in p.axioms:
        propose(batch, j, "axiom", ())
    for u in covers:
        for a in sorted(u):
            propose(batch, Judgment(a, u), "member", ())
    for a in p.elements:
        for b in p.elements:
            propose(batch, Judgment(p.product(a, b), frozenset({a})), "divide", ())
    while batch:
        for j in sorted(batch, key=jkey):
            derived[j] = batch[j]
        batch = {}
        by_subject = {}
        for j in derived:
            by_subject.setdefault(j.subject, []).append(j)
        for a, js in sorted(by_subject.items()):
            js = sorted(js, key=jkey)
            for j1 in js:
                for j2 in js:
                    prod = p.cover_product(j1.cover, j2.cover)
                    propose(batch, Judgment(a, prod), "product", (j1, j2))
        for j in sorted(derived, key=jkey):
            for v in covers:
                sub = []
                ok = True
                for u in sorted(j.cover):
                    ju = Judgment(u, v)
                    if ju not in derived:
                        ok = False
                        break
                    sub.append(ju)
                if ok:
                    propose(batch, Judgment(j.subject, v), "compose",
                            (j,) + tuple(sub))
    return derived


def entails(p: FormalPresentation, j: Judgment) -> bool:
    """Whether the judgment is derivable from the axioms by the four rules."""
    names = set(p.elements)
    if j.subject not in names or not set(j.cover) <= names:
        raise ValueError(f"judgment mentions unknown elements: {j}")
    return Judgment(j.subject, frozenset(j.cover)) in _saturate_judgments(p)


def derivation(p: FormalPresentation, j: Judgment):
    """A proof tree for the judgment, or None when it is not derivable."""
    derived = _saturate_judgments(p)
    j = Judgment(j.subject, frozenset(j.cover))
    if j not in derived:
        return None

    def build(goal, seen):
        rule, premises = derived[goal]
        return Derivation(goal, rule,
                          tuple(build(q, seen) for q in premises))

    return build(j, set())


def divisibility_preorder(p: FormalPresentation) -> Preorder:
    """x <= a when x is a multiple of a; the unit is the top."""
    edges = set()
    for a in p.elements:
        for b in p.elements:
            edges.add((p.product(a, b), a))
    return Preorder.from_edges(p.elements, edges, p.unit)


def covers_of_unit(p: FormalPresentation) -> CoveringMonoid:
    """The monoid of derivable covers of the unit, over divisibility."""
    derived = _saturate_judgments(p)
    pre = divisibility_preorder(p)
    basis = [j.cover for j in derived if j.subject == p.unit and j.cover]
    basis.sort(key=lambda u: cover_key(frozenset(pre.rep(x) for x in u), pre))
    return CoveringMonoid(pre, tuple(frozenset(u) for u in basis))


def to_covering_relation(p: FormalPresentation) -> CoveringRelation:
    """The presentation as an unclosed relation over divisibility.

    Besides the axioms, the translation carries one product-descent pair
    (m, {a*b}) per meet bound m of each element pair: on a non-idempotent
    base the product a*b sits strictly below the order-theoretic meet, and
    these pairs are exactly what lets C3 plus transitivity recover the
    product rule.
    """
    pre = divisibility_preorder(p)
    pairs = {(j.subject, j.cover) for j in p.axioms}
    for a in p.elements:
        for b in p.elements:
            prod = p.product(a, b)
            for m in pre.meet2(a, b):
                if not pre.le(m, prod):
                    pairs.add((m, frozenset({prod})))
    return CoveringRelation(pre, frozenset(pairs))


def derivable_judgments(p: FormalPresentation):
    """All derivable judgments, sorted."""
    return tuple(sorted(_saturate_judgments(p),
                        key=lambda j: (j.subject, tuple(sorted(j.cover)))))
