"""Finite bases and subsets represented as integer bit masks.

A :class:`Base` is an ordered, immutable universe of elements. Elements of
atomic bases are strings; product elements are pairs, list elements are
tuples of atoms and powerset elements are frozensets of atoms. A
:class:`Subset` is a mask over the enumeration order of its base.
"""

from __future__ import annotations

import itertools
import os
from typing import Iterable, Iterator

from .errors import BaseMismatchError, InputError, SizeCapError

ATOMIC_CAP = 20
POWERSET_CAP = 16
LATTICE_CAP = 16


def size_cap(default: int) -> int:
    """Return ``default``, lowered by ``COVERTOP_MAX_BASE`` if that is smaller."""
    raw = os.environ.get("COVERTOP_MAX_BASE")
    if raw:
        try:
            return min(default, int(raw))
        except ValueError:
            raise InputError(f"COVERTOP_MAX_BASE must be an integer, got {raw!r}")
    return default


def check_size(n: int, default: int, what: str) -> None:
    cap = size_cap(default)
    if n > cap:
        raise SizeCapError(f"{what}: size {n} exceeds cap {cap}")


def bits(mask: int) -> Iterator[int]:
    """Indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Base:
    """An ordered finite universe.

    Use :func:`make_base`, :func:`product_base`, :func:`list_base` or
    :func:`powerset_base` rather than calling the constructor directly.
    """

    def __init__(self, kind: str, elements: tuple, *, left=None, right=None,
                 atoms=None, max_len=None):
        self.kind = kind
        self.elements = elements
        self.left = left
        self.right = right
        self.atoms = atoms
        self.max_len = max_len
        self._index = {x: i for i, x in enumerate(elements)}
        self._hash = hash((kind, elements))
        self._labels = None
        self.full_mask = (1 << len(elements)) - 1

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x):
        try:
            return x in self._index
        except TypeError:
            return False

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Base):
            return NotImplemented
        return self._hash == other._hash and self.kind == other.kind \
            and self.elements == other.elements

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Base({self.kind}, {len(self)} elements)"

    # element access
    def index(self, x) -> int:
        try:
            return self._index[x]
        except (KeyError, TypeError):
            raise InputError(f"element {self.describe(x)} is not in the base")

    def element(self, i: int):
        return self.elements[i]

    def label(self, x) -> str:
        """Printable name of an element, unique within the base."""
        if self.kind == "atomic":
            return str(x)
        if self.kind == "product":
            return f"({self.left.label(x[0])},{self.right.label(x[1])})"
        if self.kind == "lists":
            return "[" + ",".join(self.atoms.label(a) for a in x) + "]"
        members = sorted(x, key=self.atoms.index)
        return "{" + ",".join(self.atoms.label(a) for a in members) + "}"

    def labels(self) -> tuple:
        if self._labels is None:
            self._labels = tuple(self.label(x) for x in self.elements)
        return self._labels

    def by_label(self, name: str):
        try:
            return self.elements[self.labels().index(name)]
        except ValueError:
            raise InputError(f"unknown element {name!r}")

    def describe(self, x) -> str:
        try:
            return repr(self.label(x))
        except Exception:
            return repr(x)

    # subsets
    def subset(self, items: Iterable = ()) -> "Subset":
        mask = 0
        for x in items:
            mask |= 1 << self.index(x)
        return Subset(self, mask)

    def from_mask(self, mask: int) -> "Subset":
        if mask < 0 or mask > self.full_mask:
            raise InputError(f"mask {mask} out of range for {self!r}")
        return Subset(self, mask)

    def singleton(self, x) -> "Subset":
        return Subset(self, 1 << self.index(x))

    def empty(self) -> "Subset":
        return Subset(self, 0)

    def full(self) -> "Subset":
        return Subset(self, self.full_mask)

    # compound structure
    def concat(self, l: tuple, k: tuple):
        """Concatenate two lists of a list base; ``None`` when the result is out of bound."""
        if self.kind != "lists":
            raise InputError("concat needs a list base")
        if len(l) + len(k) > self.max_len:
            return None
        return l + k

    def union_of(self, x: frozenset, y: frozenset) -> frozenset:
        if self.kind != "powerset":
            raise InputError("union_of needs a powerset base")
        return x | y


class Subset:
    """A subset of a base, stored as a bit mask."""

    __slots__ = ("base", "mask")

    def __init__(self, base: Base, mask: int):
        self.base = base
        self.mask = mask

    def _same(self, other: "Subset") -> None:
        if not isinstance(other, Subset):
            raise TypeError(f"expected Subset, got {type(other).__name__}")
        if self.base is not other.base and self.base != other.base:
            raise BaseMismatchError("subsets live over different bases")

    def __eq__(self, other):
        if not isinstance(other, Subset):
            return NotImplemented
        return self.mask == other.mask and (self.base is other.base or self.base == other.base)

    def __hash__(self):
        return hash((self.base, self.mask))

    def __iter__(self):
        els = self.base.elements
        return (els[i] for i in bits(self.mask))

    def __len__(self):
        return bin(self.mask).count("1")

    def __bool__(self):
        return self.mask != 0

    def __contains__(self, x):
        return x in self.base and bool(self.mask >> self.base.index(x) & 1)

    def __or__(self, other):
        self._same(other)
        return Subset(self.base, self.mask | other.mask)

    def __and__(self, other):
        self._same(other)
        return Subset(self.base, self.mask & other.mask)

    def __sub__(self, other):
        self._same(other)
        return Subset(self.base, self.mask & ~other.mask)

    def __le__(self, other):
        self._same(other)
        return self.mask & ~other.mask == 0

    def __ge__(self, other):
        return other <= self

    def labels(self) -> list:
        return [self.base.label(x) for x in self]

    def __repr__(self):
        return "{" + ", ".join(self.labels()) + "}"


# -- constructors ---------------------------------------------------------

def make_base(names) -> Base:
    names = list(names)
    if not names:
        raise InputError("base must have at least one element")
    seen = set()
    for n in names:
        if not isinstance(n, str) or not n:
            raise InputError(f"element names must be nonempty strings, got {n!r}")
        if n in seen:
            raise InputError(f"duplicate element {n!r}")
        seen.add(n)
    check_size(len(names), ATOMIC_CAP, "atomic base")
    return Base("atomic", tuple(names))


def product_base(left: Base, right: Base) -> Base:
    elements = tuple(itertools.product(left.elements, right.elements))
    return Base("product", elements, left=left, right=right)


def list_base(atoms: Base, max_len: int) -> Base:
    if max_len < 1:
        raise InputError("max_len must be at least 1")
    elements = []
    for k in range(max_len + 1):
        elements.extend(itertools.product(atoms.elements, repeat=k))
    return Base("lists", tuple(elements), atoms=atoms, max_len=max_len)


def powerset_base(atoms: Base) -> Base:
    check_size(len(atoms), POWERSET_CAP, "powerset base")
    elements = tuple(frozenset(atoms.elements[i] for i in bits(m))
                     for m in range(1 << len(atoms)))
    return Base("powerset", elements, atoms=atoms)


def rectangle(prod: Base, U: Subset, V: Subset) -> Subset:
    """The subset U×V of a product base."""
    if prod.kind != "product":
        raise InputError("rectangle needs a product base")
    n = len(prod.right)
    mask = 0
    for i in bits(U.mask):
        row = V.mask << (i * n)
        mask |= row
    return Subset(prod, mask)


# -- subset algebra -------------------------------------------------------

def union(U: Subset, V: Subset) -> Subset:
    return U | V


def intersect(U: Subset, V: Subset) -> Subset:
    return U & V


def contains(U: Subset, a) -> bool:
    return a in U


def is_subset(U: Subset, V: Subset) -> bool:
    return U <= V


def enumerate_all_subsets(base: Base) -> Iterator[Subset]:
    """All subsets of ``base`` in mask-value order."""
    for m in range(base.full_mask + 1):
        yield Subset(base, m)
