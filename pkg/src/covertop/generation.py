"""Axiom sets, element operations and the generation pipelines.

The transformations only ever append axioms. For every element the
entries of the input axiom set stay a prefix of the output entries.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from itertools import product as cartesian
from typing import Iterable, Mapping

from .core import Base, Subset, bits, product_base
from .errors import BaseMismatchError, InputError
from .saturation import GeneratedCover

TAGS = ("user", "commutativity", "associativity", "locax", "weakening",
        "contraction", "unit", "tensor_left", "tensor_right")


@dataclass(frozen=True)
class Axiom:
    head: int          # index of the covered element
    ident: tuple       # (tag, coordinates...)
    cover: Subset
    tag: str

    def element(self):
        return self.cover.base.element(self.head)


class AxiomSet:
    """For each element a, an ordered list of axioms ``a ◁ C(a,i)``."""

    def __init__(self, base: Base, entries):
        self.base = base
        self.entries = tuple(tuple(e) for e in entries)
        if len(self.entries) != len(base):
            raise InputError("one entry list per base element is required")
        for i, row in enumerate(self.entries):
            seen = set()
            for ax in row:
                if ax.head != i:
                    raise InputError("axiom filed under the wrong element")
                if ax.tag not in TAGS:
                    raise InputError(f"unknown provenance tag {ax.tag!r}")
                if ax.cover.base != base:
                    raise BaseMismatchError("axiom cover is over a different base")
                if ax.ident in seen:
                    raise InputError(f"duplicate axiom id {ax.ident!r} for "
                                     f"{base.label(base.element(i))}")
                seen.add(ax.ident)

    def __iter__(self):
        for row in self.entries:
            yield from row

    def __len__(self):
        return sum(len(row) for row in self.entries)

    def __eq__(self, other):
        return isinstance(other, AxiomSet) and self.base == other.base \
            and self.entries == other.entries

    def __hash__(self):
        return hash((self.base, self.entries))

    def for_element(self, a) -> tuple:
        return self.entries[self.base.index(a)]

    def extend(self, new: Mapping[int, list]) -> "AxiomSet":
        rows = [row + tuple(new.get(i, ())) for i, row in enumerate(self.entries)]
        return AxiomSet(self.base, rows)

    def count_by_tag(self) -> dict:
        counts: dict = {}
        for ax in self:
            counts[ax.tag] = counts.get(ax.tag, 0) + 1
        return counts


def make_axiom_set(base: Base, entries: Iterable = ()) -> AxiomSet:
    """User axioms from ``(element, cover)`` pairs; the cover is a Subset or an iterable."""
    rows = [[] for _ in base.elements]
    for elem, cover in entries:
        i = base.index(elem)
        if isinstance(cover, Subset):
            if cover.base != base:
                raise BaseMismatchError("cover is over a different base")
        else:
            cover = base.subset(cover)
        rows[i].append(Axiom(i, ("user", len(rows[i]) + 1), cover, "user"))
    return AxiomSet(base, rows)


# -- element operations ---------------------------------------------------

class DeltaOp:
    """A total map δ from pairs of elements to subsets.

    ``overflow`` lists index pairs whose true value falls outside a bounded
    base; their table entry is empty and lifts through them are flagged.
    """

    def __init__(self, base: Base, table, kind: str = "table", payload=None,
                 overflow: frozenset = frozenset()):
        self.base = base
        self.kind = kind
        self.payload = payload
        self.table = tuple(tuple(row) for row in table)
        self.overflow = frozenset(overflow)
        n = len(base)
        if len(self.table) != n or any(len(row) != n for row in self.table):
            raise InputError("operation table must be |S|×|S|")

    def __eq__(self, other):
        return isinstance(other, DeltaOp) and self.base == other.base \
            and self.table == other.table and self.overflow == other.overflow

    def __hash__(self):
        return hash((self.base, self.table))

    def value(self, a, b) -> Subset:
        return Subset(self.base, self.table[self.base.index(a)][self.base.index(b)])

    def lift_mask(self, u: int, v: int) -> int:
        if not u or not v:
            return 0
        out = 0
        vs = list(bits(v))
        for i in bits(u):
            row = self.table[i]
            for j in vs:
                out |= row[j]
        return out

    def lift_checked(self, u: int, v: int) -> tuple:
        """``(mask, overflowed)`` where the flag reports an out-of-bound pair."""
        out = self.lift_mask(u, v)
        if not self.overflow or not u or not v:
            return out, False
        vs = list(bits(v))
        flagged = any((i, j) in self.overflow for i in bits(u) for j in vs)
        return out, flagged

    @classmethod
    def from_function(cls, base: Base, fn, kind: str = "table", payload=None) -> "DeltaOp":
        """Build from ``fn(a, b)`` returning an iterable of elements, or ``None`` for overflow."""
        table, overflow = [], set()
        for i, a in enumerate(base.elements):
            row = []
            for j, b in enumerate(base.elements):
                val = fn(a, b)
                if val is None:
                    overflow.add((i, j))
                    row.append(0)
                else:
                    row.append(base.subset(val).mask)
            table.append(row)
        return cls(base, table, kind, payload, frozenset(overflow))


class SubsetOp:
    """The operation on subsets lifted from δ: U∘V = ∪ δ(a,b) over a in U, b in V."""

    def __init__(self, delta: DeltaOp):
        self.delta = delta
        self.base = delta.base

    def lift(self, U: Subset, V: Subset) -> Subset:
        for W in (U, V):
            if W.base != self.base:
                raise BaseMismatchError("operand is over a different base")
        return Subset(self.base, self.delta.lift_mask(U.mask, V.mask))

    def lift_mask(self, u: int, v: int) -> int:
        return self.delta.lift_mask(u, v)

    def overflowed(self, U: Subset, V: Subset) -> bool:
        return self.delta.lift_checked(U.mask, V.mask)[1]


def make_delta(base: Base, kind: str, payload, unit=None) -> DeltaOp:
    """Validate and build δ.

    * ``table``: mapping ``(a, b) -> iterable of elements``, total over S×S.
    * ``preorder``: iterable of pairs ``(x, y)`` meaning x ≤ y; reflexive pairs
      are implied, transitivity is checked. δ(a,b) is the common down-set.
    * ``monoid``: mapping ``(a, b) -> element`` plus ``unit``; associativity
      and the two-sided unit are checked exhaustively.
    """
    els = base.elements
    n = len(els)
    if kind == "table":
        table = [[0] * n for _ in range(n)]
        seen = set()
        for (a, b), val in dict(payload).items():
            i, j = base.index(a), base.index(b)
            table[i][j] = base.subset(val).mask
            seen.add((i, j))
        missing = [(els[i], els[j]) for i in range(n) for j in range(n) if (i, j) not in seen]
        if missing:
            a, b = missing[0]
            raise InputError(f"operation table is partial: no entry for "
                             f"({base.label(a)}, {base.label(b)})")
        return DeltaOp(base, table, "table", None)
    if kind == "preorder":
        leq = [[i == j for j in range(n)] for i in range(n)]
        pairs = []
        for x, y in payload:
            leq[base.index(x)][base.index(y)] = True
            pairs.append((x, y))
        for i, j, k in cartesian(range(n), repeat=3):
            if leq[i][j] and leq[j][k] and not leq[i][k]:
                raise InputError(f"preorder is not transitive: {base.label(els[i])} ≤ "
                                 f"{base.label(els[j])} ≤ {base.label(els[k])}")
        down = [sum(1 << i for i in range(n) if leq[i][j]) for j in range(n)]
        table = [[down[a] & down[b] for b in range(n)] for a in range(n)]
        closed = tuple((els[i], els[j]) for i in range(n) for j in range(n)
                       if leq[i][j] and i != j)
        return DeltaOp(base, table, "preorder", closed)
    if kind == "monoid":
        if unit is None:
            raise InputError("monoid needs a unit element")
        ui = base.index(unit)
        op = [[None] * n for _ in range(n)]
        for (a, b), c in dict(payload).items():
            op[base.index(a)][base.index(b)] = base.index(c)
        for i, j in cartesian(range(n), repeat=2):
            if op[i][j] is None:
                raise InputError(f"monoid table is partial: no entry for "
                                 f"({base.label(els[i])}, {base.label(els[j])})")
        for i, j, k in cartesian(range(n), repeat=3):
            if op[op[i][j]][k] != op[i][op[j][k]]:
                raise InputError(f"monoid table is not associative at ({base.label(els[i])}, "
                                 f"{base.label(els[j])}, {base.label(els[k])})")
        for i in range(n):
            if op[ui][i] != i or op[i][ui] != i:
                raise InputError(f"{base.label(unit)} is not a two-sided unit")
        table = [[1 << op[i][j] for j in range(n)] for i in range(n)]
        mult = tuple(((els[i], els[j]), els[op[i][j]]) for i in range(n) for j in range(n))
        return DeltaOp(base, table, "monoid", {"table": mult, "unit": unit})
    raise InputError(f"unknown operation kind {kind!r}")


# -- transformations ------------------------------------------------------

def _same_base(A: AxiomSet, delta: DeltaOp) -> None:
    if A.base != delta.base:
        raise BaseMismatchError("axiom set and operation live over different bases")


def _new_rows():
    return defaultdict(list)


def extend_semigroup_axioms(A: AxiomSet, delta: DeltaOp) -> AxiomSet:
    """Add commutativity then associativity axioms (the J,D stage)."""
    _same_base(A, delta)
    base = A.base
    n = len(base)
    lab = base.labels()
    T, over = delta.table, delta.overflow
    new = _new_rows()
    for b, c in cartesian(range(n), repeat=2):
        if (b, c) in over or (c, b) in over:
            continue
        cover = Subset(base, T[c][b])
        for a in bits(T[b][c]):
            new[a].append(Axiom(a, ("commutativity", lab[b], lab[c]), cover, "commutativity"))
    for b, c, d in cartesian(range(n), repeat=3):
        if (b, c) in over or (c, d) in over:
            continue
        left, of1 = delta.lift_checked(T[b][c], 1 << d)
        right, of2 = delta.lift_checked(1 << b, T[c][d])
        if of1 or of2:
            continue
        cover = Subset(base, right)
        for a in bits(left):
            new[a].append(Axiom(a, ("associativity", lab[b], lab[c], lab[d]), cover,
                                "associativity"))
    return A.extend(new)


def add_unit_axioms(A: AxiomSet, delta: DeltaOp, unit: Subset) -> AxiomSet:
    """Add a ◁ a∘I and x ◁ {a} for every x in a∘I."""
    _same_base(A, delta)
    if unit.base != A.base:
        raise BaseMismatchError("unit is over a different base")
    base = A.base
    lab = base.labels()
    new = _new_rows()
    for a in range(len(base)):
        ai, flagged = delta.lift_checked(1 << a, unit.mask)
        if flagged:
            continue
        new[a].append(Axiom(a, ("unit", "right"), Subset(base, ai), "unit"))
        for x in bits(ai):
            new[x].append(Axiom(x, ("unit", "inverse", lab[a]), Subset(base, 1 << a), "unit"))
    return A.extend(new)


def localize(A_jd: AxiomSet, delta: DeltaOp) -> AxiomSet:
    """For a in δ(b,c) and each axiom j of b, add a ◁ D(b,j)∘c. Not iterated."""
    _same_base(A_jd, delta)
    base = A_jd.base
    n = len(base)
    lab = base.labels()
    T, over = delta.table, delta.overflow
    new = _new_rows()
    for b, c in cartesian(range(n), repeat=2):
        bc = T[b][c]
        if not bc or (b, c) in over:
            continue
        for ax in A_jd.entries[b]:
            cover, flagged = delta.lift_checked(ax.cover.mask, 1 << c)
            if flagged:
                continue
            cov = Subset(base, cover)
            for a in bits(bc):
                new[a].append(Axiom(a, ("locax", lab[b], ax.ident, lab[c]), cov, "locax"))
    return A_jd.extend(new)


def add_frame_axioms(A: AxiomSet, delta: DeltaOp) -> AxiomSet:
    """Weakening a ◁ {c} for a in δ(b,c), then contraction a ◁ a∘a."""
    _same_base(A, delta)
    base = A.base
    n = len(base)
    lab = base.labels()
    T, over = delta.table, delta.overflow
    new = _new_rows()
    for b, c in cartesian(range(n), repeat=2):
        if (b, c) in over:
            continue
        for a in bits(T[b][c]):
            new[a].append(Axiom(a, ("weakening", lab[b], lab[c]), Subset(base, 1 << c),
                                "weakening"))
    for a in range(n):
        if (a, a) in over:
            continue
        new[a].append(Axiom(a, ("contraction",), Subset(base, T[a][a]), "contraction"))
    return A.extend(new)


def tensor_axioms(S_axioms: AxiomSet, T_axioms: AxiomSet, base: Base | None = None) -> AxiomSet:
    """Rectangle axioms (a,b) ◁ C(a,i)×{b} and (a,b) ◁ {a}×D(b,j) on the product base."""
    S, T = S_axioms.base, T_axioms.base
    prod = base if base is not None else product_base(S, T)
    m = len(T)
    rows = []
    for i, j in cartesian(range(len(S)), range(m)):
        row = []
        for ax in S_axioms.entries[i]:
            mask = 0
            for k in bits(ax.cover.mask):
                mask |= 1 << (k * m + j)
            row.append(Axiom(i * m + j, ("tensor_left", ax.ident), Subset(prod, mask),
                             "tensor_left"))
        for ax in T_axioms.entries[j]:
            mask = ax.cover.mask << (i * m)
            row.append(Axiom(i * m + j, ("tensor_right", ax.ident), Subset(prod, mask),
                             "tensor_right"))
        rows.append(row)
    return AxiomSet(prod, rows)


# -- pipelines ------------------------------------------------------------

@dataclass
class OpCover:
    """A generated cover together with its lifted operation.

    ``mode`` is ``circ`` (a basic cover carrying an operation and unit),
    ``convergent`` or ``formal``. ``user_axioms`` and ``delta`` are the
    generating data, kept so later stages can rerun generation.
    """
    cover: GeneratedCover
    op: SubsetOp
    unit: Subset | None
    user_axioms: AxiomSet
    delta: DeltaOp
    mode: str

    @property
    def base(self) -> Base:
        return self.cover.base

    def __iter__(self):
        return iter((self.cover, self.op))


def _check_inputs(base: Base, user_axioms: AxiomSet, delta: DeltaOp | None = None):
    if user_axioms.base != base:
        raise BaseMismatchError("user axioms are over a different base")
    if delta is not None and delta.base != base:
        raise BaseMismatchError("operation is over a different base")


def generate_basic(base: Base, user_axioms: AxiomSet) -> GeneratedCover:
    _check_inputs(base, user_axioms)
    return GeneratedCover(user_axioms)


def convergent_axioms(user_axioms: AxiomSet, delta: DeltaOp, unit: Subset | None = None) -> AxiomSet:
    A = extend_semigroup_axioms(user_axioms, delta)
    if unit is not None:
        A = add_unit_axioms(A, delta, unit)
    return localize(A, delta)


def formal_axioms(user_axioms: AxiomSet, delta: DeltaOp) -> AxiomSet:
    A = localize(extend_semigroup_axioms(user_axioms, delta), delta)
    return add_frame_axioms(A, delta)


def generate_convergent(base: Base, user_axioms: AxiomSet, delta: DeltaOp,
                        unit: Subset | None = None) -> OpCover:
    _check_inputs(base, user_axioms, delta)
    if unit is not None and unit.base != base:
        raise BaseMismatchError("unit is over a different base")
    cover = GeneratedCover(convergent_axioms(user_axioms, delta, unit))
    return OpCover(cover, SubsetOp(delta), unit, user_axioms, delta, "convergent")


def generate_formal(base: Base, user_axioms: AxiomSet, delta: DeltaOp) -> OpCover:
    _check_inputs(base, user_axioms, delta)
    cover = GeneratedCover(formal_axioms(user_axioms, delta))
    return OpCover(cover, SubsetOp(delta), base.full(), user_axioms, delta, "formal")


def circ_basic_cover(base: Base, user_axioms: AxiomSet, delta: DeltaOp, unit: Subset) -> OpCover:
    """A basic cover carrying an operation and unit, with no generated laws."""
    _check_inputs(base, user_axioms, delta)
    return OpCover(GeneratedCover(user_axioms), SubsetOp(delta), unit, user_axioms, delta, "circ")
