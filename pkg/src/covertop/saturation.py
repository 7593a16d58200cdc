"""Saturation engine, cover queries, the lattice of formal opens and two oracles."""

from __future__ import annotations

import functools
from typing import Callable

from .core import LATTICE_CAP, Base, Subset, bits, check_size
from .errors import BaseMismatchError, InputError

DEFAULT_CACHE = 4096
ORACLE_CAP = 5


class Cover:
    """Anything with a saturation function on subsets of a base.

    Subclasses implement ``_closure(mask) -> mask``; results are memoized in
    a bounded LRU (``functools.lru_cache`` is thread safe).
    """

    def __init__(self, base: Base, cache_size: int = DEFAULT_CACHE):
        self.base = base
        self._cached = functools.lru_cache(maxsize=cache_size)(self._closure)

    def _closure(self, mask: int) -> int:
        raise NotImplementedError

    def _check(self, U: Subset) -> None:
        if U.base is not self.base and U.base != self.base:
            raise BaseMismatchError("subset is over a different base than the cover")

    def closure_mask(self, mask: int) -> int:
        return self._cached(mask)

    def saturate(self, U: Subset) -> Subset:
        self._check(U)
        return Subset(self.base, self._cached(U.mask))

    def covers(self, a, U: Subset) -> bool:
        self._check(U)
        return bool(self._cached(U.mask) >> self.base.index(a) & 1)

    def covers_subset(self, U: Subset, V: Subset) -> bool:
        self._check(U)
        self._check(V)
        return U.mask & ~self._cached(V.mask) == 0

    def eq_mod(self, U: Subset, V: Subset) -> bool:
        self._check(U)
        self._check(V)
        return self._cached(U.mask) == self._cached(V.mask)

    def table(self) -> list:
        """Saturation of every subset, indexed by mask."""
        return [self._cached(m) for m in range(self.base.full_mask + 1)]


class GeneratedCover(Cover):
    """The least cover containing an axiom set.

    Saturation runs a worklist: each axiom keeps a countdown of cover
    elements not yet reached, and fires when it hits zero.
    """

    def __init__(self, axioms, cache_size: int = DEFAULT_CACHE):
        super().__init__(axioms.base, cache_size)
        self.axioms = axioms
        n = len(self.base)
        heads, sizes, empty_heads = [], [], 0
        index = [[] for _ in range(n)]
        for ax in axioms:
            k = len(heads)
            heads.append(ax.head)
            c = ax.cover.mask
            sizes.append(bin(c).count("1"))
            if c == 0:
                empty_heads |= 1 << ax.head
            for i in bits(c):
                index[i].append(k)
        self._heads = heads
        self._sizes = sizes
        self._index = index
        self._empty_heads = empty_heads

    def _closure(self, mask: int) -> int:
        remaining = list(self._sizes)
        heads, index = self._heads, self._index
        result = mask
        stack = list(bits(mask))
        new = self._empty_heads & ~result
        result |= new
        stack.extend(bits(new))
        while stack:
            x = stack.pop()
            for k in index[x]:
                remaining[k] -= 1
                if remaining[k] == 0:
                    h = heads[k]
                    if not result >> h & 1:
                        result |= 1 << h
                        stack.append(h)
        return result


class FunctionCover(Cover):
    """A cover given by a black-box closure function on masks."""

    def __init__(self, base: Base, closure: Callable[[int], int],
                 cache_size: int = DEFAULT_CACHE):
        self._fn = closure
        super().__init__(base, cache_size)

    def _closure(self, mask: int) -> int:
        return self._fn(mask)


def saturate(cover: Cover, U: Subset) -> Subset:
    return cover.saturate(U)


def covers(cover: Cover, a, U: Subset) -> bool:
    return cover.covers(a, U)


def covers_subset(cover: Cover, U: Subset, V: Subset) -> bool:
    return cover.covers_subset(U, V)


def eq_mod_A(cover: Cover, U: Subset, V: Subset) -> bool:
    return cover.eq_mod(U, V)


def oracle_saturate(cover: GeneratedCover, U: Subset) -> Subset:
    """Round-based naive fixpoint: full scans until a scan adds nothing."""
    cover._check(U)
    axioms = [(ax.head, ax.cover.mask) for ax in cover.axioms]
    current = U.mask
    while True:
        before = current
        for head, c in axioms:
            if c & ~current == 0:
                current |= 1 << head
        if current == before:
            return Subset(cover.base, current)


class SatLattice:
    """The saturated subsets of a cover ordered by inclusion."""

    def __init__(self, cover: Cover, points: list):
        self.cover = cover
        self.points = points
        self._pos = {p.mask: i for i, p in enumerate(points)}

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __contains__(self, U):
        return isinstance(U, Subset) and U.mask in self._pos

    @property
    def bottom(self) -> Subset:
        return self.points[0]

    @property
    def top(self) -> Subset:
        return self.points[-1]

    def join(self, x: Subset, y: Subset) -> Subset:
        return self.cover.saturate(x | y)

    def meet(self, x: Subset, y: Subset) -> Subset:
        return x & y

    def hasse_edges(self) -> list:
        """Covering pairs (lower, upper) of the inclusion order, as point indices."""
        edges = []
        masks = [p.mask for p in self.points]
        for j, up in enumerate(masks):
            below = [i for i, m in enumerate(masks) if m != up and m & ~up == 0]
            for i in below:
                lo = masks[i]
                if not any(masks[k] != lo and lo & ~masks[k] == 0 for k in below if k != i):
                    edges.append((i, j))
        return edges


def sat_lattice(cover: Cover) -> SatLattice:
    check_size(len(cover.base), LATTICE_CAP, "lattice enumeration")
    points = [Subset(cover.base, m) for m in range(cover.base.full_mask + 1)
              if cover.closure_mask(m) == m]
    return SatLattice(cover, points)


# -- semantic oracle ------------------------------------------------------

def _monotone_transitive(T: list, n: int) -> None:
    """Close a table in place so that it is monotone and idempotent."""
    N = len(T)
    while True:
        changed = False
        for m in range(N):
            acc = T[m]
            for i in bits(m):
                acc |= T[m ^ (1 << i)]
            acc |= T[acc]
            if acc != T[m]:
                T[m] = acc
                changed = True
        if not changed:
            return


def semantic_closure_oracle(base: Base, user_axioms, delta=None, mode: str = "convergent",
                            unit: Subset | None = None) -> list:
    """Least closure table satisfying the cover laws for ``mode``, by global fixpoint.

    Works directly on the table ``T[V] = {a : a covered by V}`` for all
    subsets V and closes it under rule instances until nothing changes.
    ``mode`` is ``basic``, ``convergent`` or ``formal``. Returns a list of
    masks indexed by the mask of the argument.
    """
    if mode not in ("basic", "convergent", "formal"):
        raise InputError(f"unknown mode {mode!r}")
    if mode != "basic" and delta is None:
        raise InputError(f"mode {mode} needs an operation")
    n = len(base)
    check_size(n, ORACLE_CAP, "semantic closure oracle")
    if user_axioms.base != base:
        raise BaseMismatchError("axioms are over a different base")
    N = 1 << n
    T = list(range(N))
    facts = [(ax.cover.mask, 1 << ax.head) for ax in user_axioms]
    lift = None
    if mode != "basic":
        if delta.base != base:
            raise BaseMismatchError("operation is over a different base")
        lift = [[delta.lift_mask(u, v) for v in range(N)] for u in range(N)]
    unit_mask = unit.mask if unit is not None else None

    while True:
        before = list(T)
        for target, covered in facts:
            T[target] |= covered
        if lift is not None:
            for v in range(N):
                tv = T[v]
                for w in range(N):
                    # stability in both arguments
                    T[lift[v][w]] |= lift[tv][w]
                    T[lift[w][v]] |= lift[w][tv]
                    # commutativity
                    T[lift[w][v]] |= lift[v][w]
            for u in range(N):
                for v in range(N):
                    uv = lift[u][v]
                    for w in range(N):
                        left = lift[uv][w]
                        right = lift[u][lift[v][w]]
                        T[right] |= left
                        T[left] |= right
            if unit_mask is not None:
                for u in range(N):
                    ui = lift[u][unit_mask]
                    T[ui] |= u
                    T[u] |= ui
            if mode == "formal":
                for u in range(N):
                    T[lift[u][u]] |= u
                    for v in range(N):
                        T[u] |= lift[u][v]
                        T[v] |= lift[u][v]
        _monotone_transitive(T, n)
        if T == before:
            return T
