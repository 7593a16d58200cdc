"""Free constructions: O on bounded list bases, then Q and L, with their
unit maps, factorizations and a bounded derivation search.

O works on lists of length at most ``max_len``. Concatenations that would
exceed the bound are flagged as overflow and every axiom instance built
from one is skipped, so every cover fact derived here is sound but the
cover may be missing facts that longer lists would provide.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product as cartesian

from .core import Base, Subset, bits, list_base
from .errors import InputError
from .generation import (Axiom, AxiomSet, DeltaOp, OpCover, circ_basic_cover,
                         generate_convergent, generate_formal)
from .morphisms import (Relation, compose, first_difference, format_id, identity,
                        is_basic_cover_map, is_convergent_map, is_formal_map, is_unital_map,
                        unital_conditions)
from .operations import LawReport, _fail, _pass
from .saturation import GeneratedCover

DEFAULT_DEPTH = 6


# -- O ------------------------------------------------------------------------

@dataclass
class FreeStage:
    """Output of O, Q or L together with its unit map."""
    result: OpCover
    unit_map: Relation
    report: LawReport | None = None


def O(S, max_len: int = 3) -> FreeStage:
    """The ∘-basic cover on lists of atoms with concatenation and unit ``[]``.

    Axioms: ``[a] ◁ {[u] | u in C(a,i)}`` for each axiom of S, and
    ``l•k ◁ {k•l}`` whenever both concatenations fit in the bound.
    ``i_S`` relates ``[a]`` to ``a``.
    """
    cover = getattr(S, "cover", S)
    if not isinstance(cover, GeneratedCover):
        raise InputError("O needs an inductively generated cover")
    if max_len < 2:
        raise InputError("O needs max_len of at least 2")
    atoms = cover.base
    B = list_base(atoms, max_len)
    lab = B.labels()
    rows = [[] for _ in B.elements]
    for ax in cover.axioms:
        a = atoms.element(ax.head)
        head = B.index((a,))
        cov = B.subset([(u,) for u in ax.cover])
        rows[head].append(Axiom(head, ("o_axiom", lab[head], ax.ident), cov, "user"))
    for l, k in cartesian(B.elements, repeat=2):
        lk, kl = B.concat(l, k), B.concat(k, l)
        if lk is None or kl is None or lk == kl:
            continue
        head = B.index(lk)
        ident = ("o_comm", lab[B.index(l)], lab[B.index(k)])
        rows[head].append(Axiom(head, ident, B.subset([kl]), "commutativity"))
    axioms = AxiomSet(B, rows)
    concat = DeltaOp.from_function(B, lambda l, k: _wrap(B.concat(l, k)), kind="table")
    result = circ_basic_cover(B, axioms, concat, B.subset([()]))
    i_S = Relation(B, atoms, [1 << B.index((a,)) for a in atoms])
    return FreeStage(result, i_S, is_basic_cover_map(i_S, result.cover, cover))


def _wrap(x):
    return None if x is None else [x]


def check_circ_basic(C: OpCover) -> list:
    """Associativity and commutativity mod =_𝒜 on element pairs and triples,
    and the unit law a =_𝒜 {a}∘I, skipping overflowing products."""
    sat = C.cover.closure_mask
    d = C.delta
    n = len(C.base)
    reports = []
    checked = 0
    bad = None
    for a, b, c in cartesian(range(n), repeat=3):
        l, f1 = d.lift_checked(d.table[a][b], 1 << c)
        r, f2 = d.lift_checked(1 << a, d.table[b][c])
        if f1 or f2 or (a, b) in d.overflow or (b, c) in d.overflow:
            continue
        checked += 1
        if sat(l) != sat(r):
            bad = [("a", a), ("b", b), ("c", c)]
            break
    reports.append(_fail("associativity", C.base, checked, bad) if bad
                   else _pass("associativity", checked))
    checked, bad = 0, None
    for a, b in cartesian(range(n), repeat=2):
        if (a, b) in d.overflow or (b, a) in d.overflow:
            continue
        checked += 1
        if sat(d.table[a][b]) != sat(d.table[b][a]):
            bad = [("a", a), ("b", b)]
            break
    reports.append(_fail("commutativity", C.base, checked, bad) if bad
                   else _pass("commutativity", checked))
    checked, bad = 0, None
    for a in range(n):
        v, flagged = d.lift_checked(1 << a, C.unit.mask)
        if flagged:
            continue
        checked += 1
        if sat(v) != sat(1 << a):
            bad = [("a", a)]
            break
    reports.append(_fail("unit", C.base, checked, bad) if bad else _pass("unit", checked))
    return reports


# -- Q and L --------------------------------------------------------------

def Q(C: OpCover) -> FreeStage:
    """Regenerate as a unital convergent cover from all axioms of C, its δ and unit."""
    if not isinstance(getattr(C, "delta", None), DeltaOp):
        raise InputError("Q needs an operation given by an element table δ")
    if C.unit is None:
        raise InputError("Q needs a unit")
    out = generate_convergent(C.base, C.cover.axioms, C.delta, C.unit)
    j = identity(C.base)
    rep = is_basic_cover_map(j, out.cover, C.cover)
    if rep:
        rep = unital_conditions(j, out, C)
    return FreeStage(out, j, rep)


def L(Qout: OpCover) -> FreeStage:
    """Regenerate as a formal cover from the same user axioms and δ."""
    if not isinstance(getattr(Qout, "delta", None), DeltaOp):
        raise InputError("L needs an operation given by an element table δ")
    out = generate_formal(Qout.base, Qout.user_axioms, Qout.delta)
    k = identity(Qout.base)
    if Qout.unit is None:
        return FreeStage(out, k, is_convergent_map(k, out, Qout))
    return FreeStage(out, k, is_unital_map(k, out, Qout))


def saturation_chain(*stages) -> LawReport:
    """𝒜 of each stage is contained in 𝒜 of the next, on every subset."""
    covers = [getattr(s, "cover", s) for s in stages]
    base = covers[0].base
    checked = 0
    for U in range(base.full_mask + 1):
        for lo, hi in zip(covers, covers[1:]):
            checked += 1
            if lo.closure_mask(U) & ~hi.closure_mask(U):
                return _fail("saturation_chain", base, checked, subsets=[("U", U)])
    return _pass("saturation_chain", checked)


# -- factorizations -------------------------------------------------------

@dataclass
class Factorization:
    map: Relation
    validity: LawReport
    triangle: LawReport


def _triangle(law: str, composite: Relation, r: Relation, T) -> LawReport:
    diff = first_difference(composite, r, T)
    if diff is None:
        return _pass(law, len(r.target))
    return LawReport(law, False, {"elements": {"b": r.target.label(diff)}, "subsets": {}})


def factor_through_O(r: Relation, T: OpCover, stage: FreeStage) -> Factorization:
    """r: T → S for a ∘-basic cover T; r̂⁻[a1..an] = r⁻a1 ∘ … ∘ r⁻an and r̂⁻[] = I."""
    B = stage.result.base
    if r.target != B.atoms or r.source != T.base:
        raise InputError("map does not match the cover and the list base")
    pre = []
    for l in B.elements:
        if not l:
            pre.append(T.unit.mask)
            continue
        acc = r.pre[r.target.index(l[0])]
        for a in l[1:]:
            acc = T.op.lift_mask(acc, r.pre[r.target.index(a)])
        pre.append(acc)
    hat = Relation(T.base, B, pre)
    valid = is_unital_map(hat, T, stage.result)
    tri = _triangle("o_triangle", compose(hat, stage.unit_map), r, T.cover)
    return Factorization(hat, valid, tri)


def factor_through_Q(r: Relation, T: OpCover, stage: FreeStage) -> Factorization:
    """r itself, revalidated as a unital convergent map into Q's output."""
    valid = unital_conditions(r, T, stage.result)
    tri = _triangle("q_triangle", compose(r, stage.unit_map), r, T.cover)
    return Factorization(r, valid, tri)


def factor_through_L(r: Relation, T: OpCover, stage: FreeStage) -> Factorization:
    """r itself, revalidated as a formal map into L's output."""
    valid = is_formal_map(r, T, stage.result)
    tri = _triangle("l_triangle", compose(r, stage.unit_map), r, T.cover)
    return Factorization(r, valid, tri)


# -- bounded derivations --------------------------------------------------

@dataclass
class DerivationTree:
    element: object
    cover: Subset
    rule: str                       # reflexivity | infinity
    axiom_id: tuple | None = None
    children: list = field(default_factory=list)

    def to_json(self) -> dict:
        base = self.cover.base
        out = {"goal": {"element": base.label(self.element), "cover": self.cover.labels()},
               "rule": self.rule}
        if self.axiom_id is not None:
            out["axiom_id"] = format_id(self.axiom_id)
        out["children"] = [c.to_json() for c in self.children]
        return out

    def pretty(self, indent: int = 0) -> str:
        base = self.cover.base
        goal = f"{base.label(self.element)} ◁ {{{','.join(self.cover.labels())}}}"
        rule = self.rule if self.axiom_id is None else f"{self.rule} {format_id(self.axiom_id)}"
        lines = ["  " * indent + f"{goal}  by {rule}"]
        lines += [c.pretty(indent + 1) for c in self.children]
        return "\n".join(lines)

    def size(self) -> int:
        return 1 + sum(c.size() for c in self.children)


def bounded_derive(cover, elem, K: Subset, depth: int = DEFAULT_DEPTH):
    """Search for a derivation of ``elem ◁ K`` using at most ``depth`` nested axiom steps.

    Reflexivity is tried first, then the axioms of the element in order.
    Depth bounds are tried from 0 upward, so the tree returned is one of
    least height. Returns ``None`` when nothing is found; that is not a
    proof of absence.
    """
    cover = getattr(cover, "cover", cover)
    base = cover.base
    if K.base != base:
        raise InputError("goal cover is over a different base")
    if depth < 0:
        raise InputError("depth must be non-negative")
    k = K.mask
    entries = cover.axioms.entries

    @lru_cache(maxsize=None)
    def search(x: int, d: int):
        if k >> x & 1:
            return ("refl",)
        if d == 0:
            return None
        for pos, ax in enumerate(entries[x]):
            subs = []
            for u in bits(ax.cover.mask):
                found = search(u, d - 1)
                if found is None:
                    break
                subs.append(u)
            else:
                return ("ax", pos, tuple(subs), d)
        return None

    def build(x: int, d: int) -> DerivationTree:
        found = search(x, d)
        if found[0] == "refl":
            return DerivationTree(base.element(x), K, "reflexivity")
        _, pos, subs, d = found
        ax = entries[x][pos]
        return DerivationTree(base.element(x), K, "infinity", ax.ident,
                              [build(u, d - 1) for u in subs])

    x = base.index(elem)
    for d in range(depth + 1):
        if search(x, d) is not None:
            return build(x, d)
    return None


def validate_derivation(tree: DerivationTree, cover) -> bool:
    """Independent check: leaves are reflexivity instances and each axiom step
    names an axiom of the element whose cover is exactly the children's goals."""
    cover = getattr(cover, "cover", cover)
    base = cover.base
    x = base.index(tree.element)
    if tree.rule == "reflexivity":
        return not tree.children and tree.element in tree.cover
    if tree.rule != "infinity":
        return False
    match = [ax for ax in cover.axioms.entries[x] if ax.ident == tree.axiom_id]
    if len(match) != 1:
        return False
    kids = {base.index(c.element) for c in tree.children}
    if len(kids) != len(tree.children) or sum(1 << i for i in kids) != match[0].cover.mask:
        return False
    return all(c.cover == tree.cover and validate_derivation(c, cover) for c in tree.children)


def parse_goal(base: Base, text: str):
    """``"a1.a2 :: l1,l2"`` into (list element, Subset); ``[]`` is the empty list."""
    if "::" not in text:
        raise InputError("goal must look like 'a.b :: l1,l2'")
    left, right = (p.strip() for p in text.split("::", 1))

    def one(s: str):
        s = s.strip()
        if base.kind != "lists":
            return base.by_label(s)
        if s in ("[]", ""):
            atoms = ()
        else:
            atoms = tuple(base.atoms.by_label(t.strip()) for t in s.split("."))
        if atoms not in base:
            raise InputError(f"list {s!r} is not in the base (max length {base.max_len})")
        return atoms

    items = [one(s) for s in right.split(",")] if right else []
    return one(left), base.subset(items)


def generator_agreement(formal: OpCover, dot) -> list:
    """Lists k, l (non-empty) where k ◁ {l} differs from set(k) ◁ {set(l)} in the Dot cover."""
    B = formal.base
    P = dot.presentation.cover.base
    sat = formal.cover.closure_mask
    dsat = dot.presentation.cover.closure_mask
    img = [P.index(frozenset(l)) for l in B.elements]
    out = []
    for l in range(len(B)):
        if not B.element(l):
            continue
        up = sat(1 << l)
        dup = dsat(1 << img[l])
        for k in range(len(B)):
            if not B.element(k):
                continue
            if bool(up >> k & 1) != bool(dup >> img[k] & 1):
                out.append((B.element(k), B.element(l)))
    return out
