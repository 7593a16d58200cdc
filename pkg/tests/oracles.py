"""Reference implementations on plain Python sets, sharing no code with the
library's bitmask engine. Used to compute expected values in the tests."""

from itertools import chain, combinations


def all_subsets(items):
    """Recursive enumeration: subsets without the head, then with it."""
    items = list(items)
    if not items:
        return [frozenset()]
    rest = all_subsets(items[1:])
    return rest + [s | {items[0]} for s in rest]


def closure(axioms, U):
    """Least superset of U closed under ``a ◁ C`` for each (a, C) in axioms."""
    P = set(U)
    changed = True
    while changed:
        changed = False
        for a, C in axioms:
            if a not in P and set(C) <= P:
                P.add(a)
                changed = True
    return frozenset(P)


def lift(delta, U, V):
    """delta maps (a, b) to a set; U∘V is the union over U×V."""
    return frozenset(chain.from_iterable(delta[a, b] for a in U for b in V))


def raw_axioms(cover):
    """(head element, cover elements) pairs from a library axiom set."""
    base = cover.base
    return [(base.element(ax.head), frozenset(ax.cover)) for ax in cover.axioms]


def delta_dict(op):
    base = op.base
    return {(a, b): frozenset(op.delta.value(a, b)) for a in base for b in base}


def table(cover_axioms, elements):
    """Saturation of every subset, keyed by frozenset."""
    return {U: closure(cover_axioms, U) for U in all_subsets(elements)}


def pairs(xs):
    return list(combinations(xs, 2))
