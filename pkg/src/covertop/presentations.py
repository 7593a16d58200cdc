"""Presentation styles for formal covers, the ≤ₘ preorder and the Dot construction."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as cartesian

from .core import LATTICE_CAP, bits, check_size, powerset_base
from .errors import InputError
from .generation import DeltaOp, OpCover, SubsetOp, generate_formal, make_axiom_set, make_delta
from .morphisms import Relation
from .operations import LawReport, _fail, _pass, down_delta
from .saturation import Cover, FunctionCover

LHD_CAP = 5
DOT_CAP = 8


@dataclass
class Presentation:
    """A cover with the operation of one presentation style.

    ``style`` is ``circ``, ``lhd``, ``leq`` or ``bullet``; ``payload`` holds
    the preorder pairs or the monoid table when relevant.
    """
    style: str
    cover: Cover
    op: SubsetOp
    payload: object = None
    generated: OpCover | None = None
    checks: list = field(default_factory=list)

    @property
    def base(self):
        return self.cover.base


def is_lhd_formal(cover: Cover) -> LawReport:
    """a ◁ U and a ◁ V ⇒ a ◁ U↓V, exhaustively over (a, U, V)."""
    n = len(cover.base)
    check_size(n, LHD_CAP, "lhd-formality check")
    sat = cover.closure_mask
    down = down_delta(cover)
    N = 1 << n
    bad = {}
    for U, V in cartesian(range(N), repeat=2):
        miss = sat(U) & sat(V) & ~sat(down.lift_mask(U, V))
        if miss:
            bad[U, V] = miss
    checked = 0
    for a in range(n):
        for U, V in cartesian(range(N), repeat=2):
            checked += 1
            if bad.get((U, V), 0) >> a & 1:
                return _fail("lhd_formal", cover.base, checked, [("a", a)],
                             [("U", U), ("V", V)])
    return _pass("lhd_formal", checked)


def as_lhd_formal(cover: Cover) -> Presentation:
    return Presentation("lhd", cover, SubsetOp(down_delta(cover)),
                        checks=[is_lhd_formal(cover)])


def as_leq_formal(preorder, user_axioms) -> Presentation:
    """Formal cover generated with δ = ↓ of the preorder; checks a ≤ b ⇒ a ◁ {b}."""
    delta = preorder if isinstance(preorder, DeltaOp) else \
        make_delta(user_axioms.base, "preorder", preorder)
    if delta.kind != "preorder":
        raise InputError("as_leq_formal needs a preorder")
    oc = generate_formal(delta.base, user_axioms, delta)
    return Presentation("leq", oc.cover, oc.op, delta.payload, oc,
                        [check_leq_left(oc.cover, delta)])


def check_leq_left(cover: Cover, preorder: DeltaOp) -> LawReport:
    """a ≤ b ⇒ a ◁ {b}."""
    base = cover.base
    for k, (a, b) in enumerate(preorder.payload, 1):
        if not cover.covers(a, base.singleton(b)):
            return _fail("leq_left", base, k, [("a", base.index(a)), ("b", base.index(b))])
    return _pass("leq_left", len(preorder.payload))


def as_bullet_formal(monoid, user_axioms, unit=None) -> Presentation:
    """Formal cover generated with δ(a,b) = {a•b}."""
    delta = monoid if isinstance(monoid, DeltaOp) else \
        make_delta(user_axioms.base, "monoid", monoid, unit=unit)
    if delta.kind != "monoid":
        raise InputError("as_bullet_formal needs a monoid")
    oc = generate_formal(delta.base, user_axioms, delta)
    return Presentation("bullet", oc.cover, oc.op, delta.payload, oc)


def m_preorder(monoid: DeltaOp) -> DeltaOp:
    """Smallest preorder with a•b ≤ a and a•b ≤ b, as a preorder-kind δ."""
    if monoid.kind != "monoid":
        raise InputError("m_preorder needs a monoid")
    base = monoid.base
    n = len(base)
    leq = [[i == j for j in range(n)] for i in range(n)]
    for a, b in cartesian(range(n), repeat=2):
        (c,) = bits(monoid.table[a][b])
        leq[c][a] = leq[c][b] = True
    for k, i, j in cartesian(range(n), repeat=3):
        if leq[i][k] and leq[k][j]:
            leq[i][j] = True
    els = base.elements
    pairs = [(els[i], els[j]) for i in range(n) for j in range(n) if leq[i][j] and i != j]
    return make_delta(base, "preorder", pairs)


def is_finitary(cover: Cover) -> bool:
    """Always true on a finite base: any cover U is its own finite witness."""
    return True


def is_unary(cover: Cover) -> LawReport:
    """a ◁ U ⇒ a ◁ {u} for some u in U."""
    n = len(cover.base)
    sat = cover.closure_mask
    singles = [sat(1 << i) for i in range(n)]
    checked = 0
    for a in range(n):
        for U in range(1 << n):
            checked += 1
            if sat(U) >> a & 1 and not any(singles[u] >> a & 1 for u in bits(U)):
                return _fail("unary", cover.base, checked, [("a", a)], [("U", U)])
    return _pass("unary", checked)


# -- Dot construction -----------------------------------------------------

@dataclass
class DotConstruction:
    presentation: Presentation
    r: Relation        # S → Dot(S)
    r_back: Relation   # Dot(S) → S


def dot_construction(S) -> DotConstruction:
    """Covers on S correspond to covers on finite subsets of S with union.

    A finite subset l stands for the meet of its members: r⁻l is the
    intersection of the saturations of its elements, and r⁻{} = S. The
    cover on finite subsets is l ◁′ K iff r⁻l ◁ r⁻K.
    """
    cover = getattr(S, "cover", S)
    base = cover.base
    check_size(len(base), DOT_CAP, "Dot construction")
    P = powerset_base(base)
    sat = cover.closure_mask
    n = len(base)
    singles = [sat(1 << i) for i in range(n)]
    r_pre = []
    for m in range(1 << n):
        acc = base.full_mask
        for i in bits(m):
            acc &= singles[i]
        r_pre.append(acc)

    def image(K: int) -> int:
        out = 0
        for l in bits(K):
            out |= r_pre[l]
        return out

    def closure(K: int) -> int:
        target = sat(image(K))
        out = 0
        for l, pre in enumerate(r_pre):
            if pre & ~target == 0:
                out |= 1 << l
        return out

    dot_cover = FunctionCover(P, closure)
    r = Relation(base, P, r_pre)
    back = [sum(1 << l for l, pre in enumerate(r_pre) if pre & ~singles[b] == 0)
            for b in range(n)]
    r_back = Relation(P, base, back)
    els = P.elements
    table = [[1 << (x | y) for y in range(len(els))] for x in range(len(els))]
    mult = tuple(((els[x], els[y]), els[x | y]) for x in range(len(els)) for y in range(len(els)))
    union = DeltaOp(P, table, "monoid", {"table": mult, "unit": frozenset()})
    pres = Presentation("bullet", dot_cover, SubsetOp(union), payload="union")
    return DotConstruction(pres, r, r_back)


def dot_axioms(dot: DotConstruction):
    """An axiom set generating the Dot cover: l ◁ K for each inclusion-minimal K covering l."""
    cover = dot.presentation.cover
    P = cover.base
    check_size(len(P), LATTICE_CAP, "Dot axiom extraction")
    N = P.full_mask + 1
    rows = {}
    for K in range(N):
        for l in bits(cover.closure_mask(K) & ~K):
            rows.setdefault(l, []).append(K)
    entries = []
    for l in range(len(P)):
        Ks = rows.get(l, [])
        minimal = [K for K in Ks if not any(J != K and J & ~K == 0 for J in Ks)]
        entries += [(P.element(l), [P.element(i) for i in bits(K)]) for K in minimal]
    return make_axiom_set(P, entries)
