"""Lifted operations, the derived ↓ and implication, and exhaustive law checkers.

Every checker returns a :class:`LawReport`. Checkers scan their quantified
variables in the order they are named in the law (elements by base index,
subsets by mask value) and report the first counterexample found.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as cartesian

from .core import Subset, bits, check_size
from .errors import BaseMismatchError, InputError
from .generation import DeltaOp, SubsetOp
from .saturation import Cover, sat_lattice

ELEMENT_CAP = 12
PAIR_CAP = 8
TRIPLE_CAP = 5
ADJUNCTION_CAP = 4


@dataclass
class LawReport:
    law: str
    passed: bool
    witness: dict | None = None
    checked: int = 0
    note: str = ""

    def __bool__(self):
        return self.passed

    def to_json(self) -> dict:
        return {"law": self.law, "passed": self.passed, "witness": self.witness}


def _fail(law, base, checked, elements=(), subsets=(), note=""):
    wit = {
        "elements": {k: base.label(base.element(i)) for k, i in elements},
        "subsets": {k: [base.label(base.element(i)) for i in bits(m)] for k, m in subsets},
    }
    return LawReport(law, False, wit, checked, note)


def _pass(law, checked, note=""):
    return LawReport(law, True, None, checked, note)


def _prepare(cover: Cover, op):
    if op.base != cover.base:
        raise BaseMismatchError("operation and cover live over different bases")
    return cover.closure_mask, op.lift_mask, len(cover.base)


def lift(op: SubsetOp, U: Subset, V: Subset) -> Subset:
    return op.lift(U, V)


# -- derived operations ---------------------------------------------------

def _down_masks(cover: Cover) -> list:
    n = len(cover.base)
    return [cover.closure_mask(1 << i) for i in range(n)]


def down_delta(cover: Cover) -> DeltaOp:
    """The table δ(a,b) = ↓a ∩ ↓b of the cover-induced preorder."""
    down = _down_masks(cover)
    n = len(down)
    return DeltaOp(cover.base, [[down[a] & down[b] for b in range(n)] for a in range(n)],
                   "table")


def down_op(cover: Cover) -> SubsetOp:
    return SubsetOp(down_delta(cover))


def down_arrow(cover: Cover, U: Subset, V: Subset) -> Subset:
    """(↓U) ∩ (↓V) where a ≤ b means a ◁ {b}."""
    cover._check(U)
    cover._check(V)
    down = _down_masks(cover)
    du = dv = 0
    for i in bits(U.mask):
        du |= down[i]
    for i in bits(V.mask):
        dv |= down[i]
    return Subset(cover.base, du & dv)


def down_arrow_leq(preorder: DeltaOp, U: Subset, V: Subset) -> Subset:
    """(↓U) ∩ (↓V) for a preorder given as a ``preorder``-kind δ."""
    if preorder.kind != "preorder":
        raise InputError("down_arrow_leq needs a preorder-kind operation")
    return SubsetOp(preorder).lift(U, V)


def implication(cover: Cover, op, U: Subset, V: Subset) -> Subset:
    """{a | a∘U ◁ V}."""
    sat, lm, n = _prepare(cover, op)
    target = sat(V.mask)
    out = 0
    for a in range(n):
        if lm(1 << a, U.mask) & ~target == 0:
            out |= 1 << a
    return Subset(cover.base, out)


def _implication_mask(sat, lm, n, u, v):
    target = sat(v)
    return sum(1 << a for a in range(n) if lm(1 << a, u) & ~target == 0)


# -- law checkers ---------------------------------------------------------

def _level(level):
    if level not in ("element", "subset"):
        raise InputError(f"level must be 'element' or 'subset', got {level!r}")


def check_localization(cover, op, level="element") -> LawReport:
    """Element: a ◁ U ⇒ a∘b ◁ U∘b. Subset: U ◁ V ⇒ U∘W ◁ V∘W and W∘U ◁ W∘V."""
    _level(level)
    sat, lm, n = _prepare(cover, op)
    N = 1 << n
    base = cover.base
    law = "localization"
    if level == "element":
        check_size(n, ELEMENT_CAP, "element-level localization")
        checked = 0
        for a in range(n):
            for b in range(n):
                ab = lm(1 << a, 1 << b)
                for U in range(N):
                    checked += 1
                    if sat(U) >> a & 1 and ab & ~sat(lm(U, 1 << b)):
                        return _fail(law, base, checked, [("a", a), ("b", b)], [("U", U)])
        return _pass(law, checked)
    check_size(n, TRIPLE_CAP, "subset-level localization")
    checked = 0
    for U, V, W in cartesian(range(N), repeat=3):
        checked += 1
        if U & ~sat(V):
            continue
        if lm(U, W) & ~sat(lm(V, W)) or lm(W, U) & ~sat(lm(W, V)):
            return _fail(law, base, checked, subsets=[("U", U), ("V", V), ("W", W)])
    return _pass(law, checked)


def check_stability(cover, op, level="element") -> LawReport:
    """Element: a ◁ U and b ◁ V ⇒ a∘b ◁ U∘V. Subset: U ◁ V ⇒ U∘W ◁ V∘W."""
    _level(level)
    sat, lm, n = _prepare(cover, op)
    N = 1 << n
    base = cover.base
    law = "stability"
    if level == "subset":
        report = check_localization(cover, op, "subset")
        report.law = law
        return report
    check_size(n, PAIR_CAP, "element-level stability")
    checked = 0
    for U, V in cartesian(range(N), repeat=2):
        checked += 1
        target = sat(lm(U, V))
        su, sv = sat(U), sat(V)
        if lm(su, sv) & ~target == 0:
            continue
        for a in bits(su):
            for b in bits(sv):
                if lm(1 << a, 1 << b) & ~target:
                    return _fail(law, base, checked, [("a", a), ("b", b)],
                                 [("U", U), ("V", V)])
    return _pass(law, checked)


def check_well_defined(cover, op) -> LawReport:
    """𝒜(𝒜U ∘ 𝒜V) = 𝒜(U∘V) for all subset pairs."""
    sat, lm, n = _prepare(cover, op)
    check_size(n, PAIR_CAP, "well-definedness")
    N = 1 << n
    for k, (U, V) in enumerate(cartesian(range(N), repeat=2), 1):
        if sat(lm(sat(U), sat(V))) != sat(lm(U, V)):
            return _fail("well_defined", cover.base, k, subsets=[("U", U), ("V", V)])
    return _pass("well_defined", N * N)


def check_associativity(cover, op, level="element") -> LawReport:
    """(x∘y)∘z =_𝒜 x∘(y∘z)."""
    _level(level)
    sat, lm, n = _prepare(cover, op)
    base = cover.base
    if level == "element":
        check_size(n, ELEMENT_CAP, "element-level associativity")
        rng, wrap = range(n), (lambda i: 1 << i)
    else:
        check_size(n, TRIPLE_CAP, "subset-level associativity")
        rng, wrap = range(1 << n), (lambda m: m)
    checked = 0
    for x, y, z in cartesian(rng, repeat=3):
        checked += 1
        X, Y, Z = wrap(x), wrap(y), wrap(z)
        if sat(lm(lm(X, Y), Z)) != sat(lm(X, lm(Y, Z))):
            if level == "element":
                return _fail("associativity", base, checked, [("a", x), ("b", y), ("c", z)])
            return _fail("associativity", base, checked, subsets=[("U", x), ("V", y), ("W", z)])
    return _pass("associativity", checked)


def check_commutativity(cover, op, level="element") -> LawReport:
    """x∘y =_𝒜 y∘x."""
    _level(level)
    sat, lm, n = _prepare(cover, op)
    base = cover.base
    if level == "element":
        check_size(n, ELEMENT_CAP, "element-level commutativity")
        rng, wrap = range(n), (lambda i: 1 << i)
    else:
        check_size(n, PAIR_CAP, "subset-level commutativity")
        rng, wrap = range(1 << n), (lambda m: m)
    checked = 0
    for x, y in cartesian(rng, repeat=2):
        checked += 1
        if sat(lm(wrap(x), wrap(y))) != sat(lm(wrap(y), wrap(x))):
            if level == "element":
                return _fail("commutativity", base, checked, [("a", x), ("b", y)])
            return _fail("commutativity", base, checked, subsets=[("U", x), ("V", y)])
    return _pass("commutativity", checked)


def check_distributivity(cover, op, level="lattice") -> LawReport:
    """∘ distributes over joins.

    ``lattice``: on formal opens, (x ∨ y)·z = x·z ∨ y·z and ⊥·z = ⊥ in both
    arguments, with x·y = 𝒜(x∘y). ``subset``: (U ∪ U')∘V =_𝒜 U∘V ∪ U'∘V.
    """
    sat, lm, n = _prepare(cover, op)
    check_size(n, TRIPLE_CAP, "distributivity")
    base = cover.base
    law = "distributivity"
    checked = 0
    if level == "subset":
        N = 1 << n
        for U, U2, V in cartesian(range(N), repeat=3):
            checked += 1
            if sat(lm(U | U2, V)) != sat(lm(U, V) | lm(U2, V)):
                return _fail(law, base, checked, subsets=[("U", U), ("U2", U2), ("V", V)])
        return _pass(law, checked)
    if level != "lattice":
        raise InputError(f"unknown distributivity level {level!r}")
    points = [p.mask for p in sat_lattice(cover)]
    bottom = points[0]

    def mult(x, y):
        return sat(lm(x, y))

    for z in points:
        checked += 1
        if mult(bottom, z) != bottom or mult(z, bottom) != bottom:
            return _fail(law, base, checked, subsets=[("bottom", bottom), ("z", z)],
                         note="empty join not preserved")
    for x, y, z in cartesian(points, repeat=3):
        checked += 1
        j = sat(x | y)
        if mult(j, z) != sat(mult(x, z) | mult(y, z)) or \
                mult(z, j) != sat(mult(z, x) | mult(z, y)):
            return _fail(law, base, checked, subsets=[("x", x), ("y", y), ("z", z)])
    return _pass(law, checked)


def check_weakening(cover, op, level="element") -> LawReport:
    """Element: b∘c ◁ b and b∘c ◁ c. Subset: U∘V ◁ U and U∘V ◁ V."""
    _level(level)
    sat, lm, n = _prepare(cover, op)
    base = cover.base
    if level == "element":
        check_size(n, ELEMENT_CAP, "element-level weakening")
        rng, wrap = range(n), (lambda i: 1 << i)
    else:
        check_size(n, PAIR_CAP, "subset-level weakening")
        rng, wrap = range(1 << n), (lambda m: m)
    checked = 0
    for x, y in cartesian(rng, repeat=2):
        checked += 1
        X, Y = wrap(x), wrap(y)
        xy = lm(X, Y)
        if xy & ~sat(X) or xy & ~sat(Y):
            if level == "element":
                return _fail("weakening", base, checked, [("b", x), ("c", y)])
            return _fail("weakening", base, checked, subsets=[("U", x), ("V", y)])
    return _pass("weakening", checked)


def weakening_counterexamples(cover, op) -> list:
    """All element pairs (b, c), as labels, violating b∘c ◁ b or b∘c ◁ c."""
    sat, lm, n = _prepare(cover, op)
    base = cover.base
    out = []
    for b, c in cartesian(range(n), repeat=2):
        bc = lm(1 << b, 1 << c)
        if bc & ~sat(1 << b) or bc & ~sat(1 << c):
            out.append((base.label(base.element(b)), base.label(base.element(c))))
    return out


def check_contraction(cover, op, level="element") -> LawReport:
    """Element: a ◁ a∘a. Subset: U ◁ U∘U."""
    _level(level)
    sat, lm, n = _prepare(cover, op)
    base = cover.base
    if level == "element":
        check_size(n, ELEMENT_CAP, "element-level contraction")
        for a in range(n):
            if not sat(lm(1 << a, 1 << a)) >> a & 1:
                return _fail("contraction", base, a + 1, [("a", a)])
        return _pass("contraction", n)
    check_size(n, PAIR_CAP, "subset-level contraction")
    N = 1 << n
    for U in range(N):
        if U & ~sat(lm(U, U)):
            return _fail("contraction", base, U + 1, subsets=[("U", U)])
    return _pass("contraction", N)


def check_unit(cover, op, unit: Subset, level="element") -> LawReport:
    """x =_𝒜 x∘I and x =_𝒜 I∘x."""
    _level(level)
    sat, lm, n = _prepare(cover, op)
    if unit.base != cover.base:
        raise BaseMismatchError("unit is over a different base")
    base, I = cover.base, unit.mask
    if level == "element":
        check_size(n, ELEMENT_CAP, "element-level unit")
        rng, wrap = range(n), (lambda i: 1 << i)
    else:
        check_size(n, PAIR_CAP, "subset-level unit")
        rng, wrap = range(1 << n), (lambda m: m)
    for k, x in enumerate(rng, 1):
        X = wrap(x)
        if not (sat(X) == sat(lm(X, I)) == sat(lm(I, X))):
            if level == "element":
                return _fail("unit", base, k, [("a", x)], [("I", I)])
            return _fail("unit", base, k, subsets=[("U", x), ("I", I)])
    return _pass("unit", len(rng))


def check_frame_equality(cover, op) -> LawReport:
    """𝒜(U∘V) = 𝒜U ∩ 𝒜V for all subset pairs."""
    sat, lm, n = _prepare(cover, op)
    check_size(n, PAIR_CAP, "frame equality")
    N = 1 << n
    for k, (U, V) in enumerate(cartesian(range(N), repeat=2), 1):
        if sat(lm(U, V)) != sat(U) & sat(V):
            return _fail("frame_equality", cover.base, k, subsets=[("U", U), ("V", V)])
    return _pass("frame_equality", N * N)


def check_meet_coincidence(cover, op) -> LawReport:
    """U∘V =_𝒜 U↓V for all subset pairs."""
    sat, lm, n = _prepare(cover, op)
    check_size(n, PAIR_CAP, "meet coincidence")
    down = down_delta(cover)
    N = 1 << n
    for k, (U, V) in enumerate(cartesian(range(N), repeat=2), 1):
        if sat(lm(U, V)) != sat(down.lift_mask(U, V)):
            return _fail("meet_coincidence", cover.base, k, subsets=[("U", U), ("V", V)])
    return _pass("meet_coincidence", N * N)


def check_top_unit(cover, op) -> LawReport:
    """𝒜(a∘S) = 𝒜{a}: the whole base acts as unit."""
    sat, lm, n = _prepare(cover, op)
    full = cover.base.full_mask
    for a in range(n):
        if sat(lm(1 << a, full)) != sat(1 << a):
            return _fail("top_unit", cover.base, a + 1, [("a", a)])
    return _pass("top_unit", n)


def check_adjunction(cover, op) -> LawReport:
    """W∘U ◁ V ⟺ W ◁ U→V over all subset triples."""
    sat, lm, n = _prepare(cover, op)
    check_size(n, ADJUNCTION_CAP, "adjunction")
    N = 1 << n
    imp = {}
    checked = 0
    for W, U, V in cartesian(range(N), repeat=3):
        checked += 1
        if (U, V) not in imp:
            imp[U, V] = _implication_mask(sat, lm, n, U, V)
        left = lm(W, U) & ~sat(V) == 0
        right = W & ~sat(imp[U, V]) == 0
        if left != right:
            return _fail("adjunction", cover.base, checked,
                         subsets=[("W", W), ("U", U), ("V", V)])
    return _pass("adjunction", checked)


# -- predicates from the weakening/contraction chains ----------------------

def weakening_chain(cover, op) -> dict:
    """Three equivalent forms of weakening, evaluated separately.

    ``subset_saturated``: 𝒜(U∘V) ⊆ 𝒜U ∩ 𝒜V; ``subset``: U∘V ◁ U and U∘V ◁ V;
    ``element``: a∘b ◁ a and a∘b ◁ b.
    """
    sat, lm, n = _prepare(cover, op)
    N = 1 << n
    pairs = list(cartesian(range(N), repeat=2))
    return {
        "subset_saturated": all(sat(lm(U, V)) & ~(sat(U) & sat(V)) == 0 for U, V in pairs),
        "subset": all(lm(U, V) & ~(sat(U) & sat(V)) == 0 for U, V in pairs),
        "element": check_weakening(cover, op).passed,
    }


def contraction_chain(cover, op) -> dict:
    """Three equivalent forms of contraction (under stability).

    ``subset_saturated``: 𝒜U ∩ 𝒜V ⊆ 𝒜(U∘V); ``subset``: U ◁ U∘U;
    ``element``: a ◁ a∘a.
    """
    sat, lm, n = _prepare(cover, op)
    N = 1 << n
    return {
        "subset_saturated": all((sat(U) & sat(V)) & ~sat(lm(U, V)) == 0
                                for U, V in cartesian(range(N), repeat=2)),
        "subset": all(U & ~sat(lm(U, U)) == 0 for U in range(N)),
        "element": check_contraction(cover, op).passed,
    }


# -- suites ---------------------------------------------------------------

def _auto(n, cap):
    return "subset" if n <= cap else "element"


def convergent_law_suite(cover, op, unit: Subset | None = None) -> list:
    n = len(cover.base)
    reports = [
        check_localization(cover, op, "element"),
        check_stability(cover, op, "element" if n <= PAIR_CAP else "subset"),
        check_associativity(cover, op, _auto(n, TRIPLE_CAP)),
        check_commutativity(cover, op, _auto(n, PAIR_CAP)),
    ]
    if n <= PAIR_CAP:
        reports.append(check_well_defined(cover, op))
    if n <= TRIPLE_CAP:
        reports.append(check_distributivity(cover, op))
    if n <= ADJUNCTION_CAP:
        reports.append(check_adjunction(cover, op))
    if unit is not None:
        reports.append(check_unit(cover, op, unit))
    return reports


def formal_law_suite(cover, op) -> list:
    n = len(cover.base)
    reports = [
        check_localization(cover, op, "element"),
        check_associativity(cover, op, _auto(n, TRIPLE_CAP)),
        check_commutativity(cover, op, "element"),
        check_weakening(cover, op),
        check_contraction(cover, op),
        check_top_unit(cover, op),
    ]
    if n <= PAIR_CAP:
        reports.append(check_frame_equality(cover, op))
        reports.append(check_meet_coincidence(cover, op))
    return reports


def all_laws(cover, op, unit: Subset | None = None) -> list:
    """Every applicable law, each reported once, in a fixed order."""
    n = len(cover.base)
    reports = convergent_law_suite(cover, op, unit)
    reports += [check_weakening(cover, op), check_contraction(cover, op)]
    if n <= PAIR_CAP:
        reports += [check_frame_equality(cover, op), check_meet_coincidence(cover, op)]
    return reports
