"""Relations between bases and validation of cover maps.

A relation r from S to T relates elements of S to elements of T; its
preimage ``r⁻V`` collects the elements of S related to something in V.
Maps are kept as raw relations and compared with :func:`maps_equal`.
"""

from __future__ import annotations

from itertools import product as cartesian

from .core import Base, Subset, bits, check_size
from .errors import BaseMismatchError, InputError
from .operations import LawReport, _fail, _pass

EXHAUSTIVE_CAP = 12


class Relation:
    def __init__(self, source: Base, target: Base, pre):
        """``pre[j]`` is the mask of source elements related to target element j."""
        self.source = source
        self.target = target
        self.pre = tuple(pre)
        if len(self.pre) != len(target):
            raise InputError("one preimage per target element is required")

    @classmethod
    def from_pairs(cls, source: Base, target: Base, pairs) -> "Relation":
        pre = [0] * len(target)
        for s, t in pairs:
            pre[target.index(t)] |= 1 << source.index(s)
        return cls(source, target, pre)

    def pairs(self) -> list:
        """Related pairs sorted by (source index, target index)."""
        out = []
        for i in range(len(self.source)):
            for j, m in enumerate(self.pre):
                if m >> i & 1:
                    out.append((self.source.element(i), self.target.element(j)))
        return out

    def __eq__(self, other):
        return isinstance(other, Relation) and self.source == other.source \
            and self.target == other.target and self.pre == other.pre

    def __hash__(self):
        return hash((self.source, self.target, self.pre))

    def __repr__(self):
        body = ", ".join(f"({self.source.label(a)},{self.target.label(b)})"
                         for a, b in self.pairs())
        return f"Relation({{{body}}})"

    def rminus_mask(self, v: int) -> int:
        out = 0
        for j in bits(v):
            out |= self.pre[j]
        return out

    def rminus(self, V: Subset) -> Subset:
        if V.base != self.target:
            raise BaseMismatchError("subset is not over the relation's target")
        return Subset(self.source, self.rminus_mask(V.mask))

    def transpose(self) -> "Relation":
        return Relation.from_pairs(self.target, self.source, [(b, a) for a, b in self.pairs()])


def rminus(r: Relation, V: Subset) -> Subset:
    return r.rminus(V)


def identity(base: Base) -> Relation:
    return Relation(base, base, [1 << i for i in range(len(base))])


def compose(r: Relation, s: Relation) -> Relation:
    """r: S→T then s: T→W. The composite's preimage is r⁻ applied after s⁻."""
    if r.target != s.source:
        raise BaseMismatchError("relations do not compose: target and source differ")
    return Relation(r.source, s.target, [r.rminus_mask(m) for m in s.pre])


def _cover_of(x):
    return getattr(x, "cover", x)


def is_basic_cover_map(r: Relation, S_cover, T_cover, method: str = "axioms") -> LawReport:
    """Check that r⁻ respects covers.

    ``axioms`` checks r⁻b ◁ r⁻C(b,i) for every generating axiom of the
    target. ``exhaustive`` checks r⁻(𝒜V) ⊆ 𝒜(r⁻V) for every V ⊆ T.
    """
    S, T = _cover_of(S_cover), _cover_of(T_cover)
    if r.source != S.base or r.target != T.base:
        raise BaseMismatchError("relation does not match the covers' bases")
    sat = S.closure_mask
    tb = T.base
    law = "basic_cover_map"
    if method == "axioms":
        axioms = getattr(T, "axioms", None)
        if axioms is None:
            raise InputError("axioms method needs an inductively generated target")
        checked = 0
        for ax in axioms:
            checked += 1
            if r.pre[ax.head] & ~sat(r.rminus_mask(ax.cover.mask)):
                return _fail(law, tb, checked, [("b", ax.head)], [("cover", ax.cover.mask)],
                             note=f"axiom {format_id(ax.ident)}")
        return _pass(law, checked)
    if method == "exhaustive":
        check_size(len(tb), EXHAUSTIVE_CAP, "exhaustive map check")
        tsat = T.closure_mask
        for V in range(tb.full_mask + 1):
            target = sat(r.rminus_mask(V))
            for b in bits(tsat(V)):
                if r.pre[b] & ~target:
                    return _fail(law, tb, V + 1, [("b", b)], [("V", V)])
        return _pass(law, tb.full_mask + 1)
    raise InputError(f"unknown method {method!r}")


def format_id(ident) -> str:
    """Axiom id as a compact string, e.g. ``locax(a,user(1),b)``."""
    if isinstance(ident, tuple):
        head, *rest = ident
        return f"{head}(" + ",".join(format_id(p) for p in rest) + ")"
    return str(ident)


def _op_preserved(r: Relation, S, T, law: str):
    sat, lm = S.cover.closure_mask, S.op.lift_mask
    tdelta = T.delta
    tb = T.base
    n = len(tb)
    checked = 0
    for b1, b2 in cartesian(range(n), repeat=2):
        if (b1, b2) in tdelta.overflow:
            continue
        checked += 1
        left = sat(r.rminus_mask(tdelta.table[b1][b2]))
        right = sat(lm(r.pre[b1], r.pre[b2]))
        if left != right:
            return _fail(law, tb, checked, [("b1", b1), ("b2", b2)])
    return _pass(law, checked)


def is_convergent_map(r: Relation, S, T, method: str = "axioms") -> LawReport:
    """Basic cover map with r⁻(δ_T(b1,b2)) =_𝒜 r⁻b1 ∘ r⁻b2 for all target pairs.

    Pairs flagged as overflow in a bounded target are skipped.
    """
    basic = is_basic_cover_map(r, S.cover, T.cover, method)
    if not basic:
        basic.law = "convergent_map"
        return basic
    return _op_preserved(r, S, T, "convergent_map")


def is_unital_map(r: Relation, S, T, method: str = "axioms") -> LawReport:
    rep = is_convergent_map(r, S, T, method)
    rep.law = "unital_map"
    if not rep:
        return rep
    if S.unit is None or T.unit is None:
        raise InputError("unital map check needs units on both covers")
    if S.cover.closure_mask(r.rminus_mask(T.unit.mask)) != S.cover.closure_mask(S.unit.mask):
        return _fail("unital_map", T.base, rep.checked + 1, subsets=[("I", T.unit.mask)],
                     note="unit not preserved")
    return _pass("unital_map", rep.checked + 1)


def is_formal_map(r: Relation, S, T, method: str = "axioms") -> LawReport:
    rep = is_convergent_map(r, S, T, method)
    rep.law = "formal_map"
    if not rep:
        return rep
    sat = S.cover.closure_mask
    if sat(r.rminus_mask(T.base.full_mask)) != sat(S.base.full_mask):
        return _fail("formal_map", T.base, rep.checked + 1, note="relation is not total")
    return _pass("formal_map", rep.checked + 1)


def unital_conditions(r: Relation, S, T) -> LawReport:
    """The three generator-level conditions for a map into a generated unital cover.

    Only the user axioms of T are checked, together with preservation of δ
    on element pairs and of the unit.
    """
    sat = S.cover.closure_mask
    tb = T.base
    checked = 0
    for ax in T.user_axioms:
        checked += 1
        if r.pre[ax.head] & ~sat(r.rminus_mask(ax.cover.mask)):
            return _fail("unital_conditions", tb, checked, [("b", ax.head)],
                         [("cover", ax.cover.mask)])
    rep = _op_preserved(r, S, T, "unital_conditions")
    if not rep:
        return rep
    if sat(r.rminus_mask(T.unit.mask)) != sat(S.unit.mask):
        return _fail("unital_conditions", tb, checked, subsets=[("I", T.unit.mask)])
    return _pass("unital_conditions", checked + rep.checked + 1)


def unital_map_exhaustive(r: Relation, S, T) -> LawReport:
    """Direct check: basic map over all target subsets, ∘ preserved on all
    subset pairs, unit preserved."""
    rep = is_basic_cover_map(r, S.cover, T.cover, "exhaustive")
    if not rep:
        return rep
    sat, lm = S.cover.closure_mask, S.op.lift_mask
    tl = T.op.lift_mask
    N = T.base.full_mask + 1
    for k, (U, V) in enumerate(cartesian(range(N), repeat=2), 1):
        if sat(r.rminus_mask(tl(U, V))) != sat(lm(r.rminus_mask(U), r.rminus_mask(V))):
            return _fail("unital_map", T.base, k, subsets=[("U", U), ("V", V)])
    if sat(r.rminus_mask(T.unit.mask)) != sat(S.unit.mask):
        return _fail("unital_map", T.base, N * N + 1, subsets=[("I", T.unit.mask)])
    return _pass("unital_map", N * N + 1)


def maps_equal(r1: Relation, r2: Relation, S, T=None) -> bool:
    """r1⁻b =_𝒜 r2⁻b for every target element b, saturating in S."""
    return first_difference(r1, r2, S, T) is None


def first_difference(r1: Relation, r2: Relation, S, T=None):
    """First target element where the two maps differ mod the source cover, or None."""
    S = _cover_of(S)
    if r1.source != r2.source or r1.target != r2.target:
        raise BaseMismatchError("relations have different types")
    if r1.source != S.base or (T is not None and _cover_of(T).base != r1.target):
        raise BaseMismatchError("covers do not match the relations")
    sat = S.closure_mask
    for j, (m1, m2) in enumerate(zip(r1.pre, r2.pre)):
        if sat(m1) != sat(m2):
            return r1.target.element(j)
    return None
