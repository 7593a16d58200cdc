"""Small named presentations used by the tests, the docs and the CLI examples."""

from __future__ import annotations

from .core import make_base
from .generation import (OpCover, generate_basic, generate_convergent, generate_formal,
                         make_axiom_set, make_delta)


def abc_basic():
    """S = {a,b,c} with the single axiom a ◁ {b,c}."""
    S = make_base(["a", "b", "c"])
    return generate_basic(S, make_axiom_set(S, [("a", ["b", "c"])]))


def chain_base():
    return make_base(["z", "o"])


def chain_min():
    """δ = min on the two-element chain z ≤ o."""
    return make_delta(chain_base(), "preorder", [("z", "o")])


def chain_basic():
    S = chain_base()
    return generate_basic(S, make_axiom_set(S, [("z", ["o"])]))


def chain_formal() -> OpCover:
    S = chain_base()
    return generate_formal(S, make_axiom_set(S), chain_min())


def chain_convergent() -> OpCover:
    S = chain_base()
    return generate_convergent(S, make_axiom_set(S), chain_min())


def vee_preorder():
    """p ≤ t and q ≤ t."""
    S = make_base(["p", "q", "t"])
    return make_delta(S, "preorder", [("p", "t"), ("q", "t")])


def vee_formal() -> OpCover:
    delta = vee_preorder()
    return generate_formal(delta.base, make_axiom_set(delta.base), delta)


def saturating_monoid():
    """{e,g,h}: e is the unit, g•g = h and h absorbs g and h."""
    S = make_base(["e", "g", "h"])
    table = {}
    value = {"e": 0, "g": 1, "h": 2}
    name = ["e", "g", "h"]
    for x in name:
        for y in name:
            table[(x, y)] = name[min(2, value[x] + value[y])]
    return make_delta(S, "monoid", table, unit="e")


def monoid_convergent() -> OpCover:
    delta = saturating_monoid()
    S = delta.base
    return generate_convergent(S, make_axiom_set(S), delta, S.subset(["e"]))


def monoid_formal() -> OpCover:
    delta = saturating_monoid()
    return generate_formal(delta.base, make_axiom_set(delta.base), delta)


def discrete_diagonal(base):
    """δ(x,y) = {x} when x = y, empty otherwise."""
    return make_delta(base, "table", {(x, y): [x] if x == y else []
                                      for x in base for y in base})


def abc_discrete_convergent() -> OpCover:
    S = make_base(["a", "b", "c"])
    return generate_convergent(S, make_axiom_set(S, [("a", ["b", "c"])]), discrete_diagonal(S))


def abc_discrete_formal() -> OpCover:
    S = make_base(["a", "b", "c"])
    return generate_formal(S, make_axiom_set(S, [("a", ["b", "c"])]), discrete_diagonal(S))


def axiom_free(n: int = 3):
    S = make_base([f"x{i}" for i in range(n)])
    return generate_basic(S, make_axiom_set(S))


def convergent_fixtures() -> dict:
    return {
        "chain": chain_convergent(),
        "monoid": monoid_convergent(),
        "abc_discrete": abc_discrete_convergent(),
    }


def formal_fixtures() -> dict:
    return {
        "chain": chain_formal(),
        "vee": vee_formal(),
        "monoid": monoid_formal(),
        "abc_discrete": abc_discrete_formal(),
    }


def basic_fixtures() -> dict:
    return {
        "abc": abc_basic(),
        "chain": chain_basic(),
        "free3": axiom_free(3),
    }
