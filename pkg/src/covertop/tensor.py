"""Tensor products of generated covers, the symmetric monoidal structure
and comultiplications induced by an operation."""

from __future__ import annotations

from .core import Base, check_size, make_base, product_base
from .errors import InputError
from .generation import DeltaOp, SubsetOp, make_axiom_set, tensor_axioms
from .morphisms import Relation, compose, first_difference, identity, is_basic_cover_map
from .operations import LawReport, _pass
from .saturation import GeneratedCover

COHERENCE_CAP = 16
STAR = "*"


class TensorCover(GeneratedCover):
    """The cover on S×T generated by rectangle axioms."""

    def __init__(self, left: GeneratedCover, right: GeneratedCover):
        self.left = left
        self.right = right
        super().__init__(tensor_axioms(left.axioms, right.axioms))


def _generated(x) -> GeneratedCover:
    cover = getattr(x, "cover", x)
    if not hasattr(cover, "axioms"):
        raise InputError("tensor needs inductively generated covers")
    return cover


def tensor_cover(S, T) -> TensorCover:
    return TensorCover(_generated(S), _generated(T))


def unit_cover() -> GeneratedCover:
    """The cover E on the one-point base with no axioms."""
    E = make_base([STAR])
    return GeneratedCover(make_axiom_set(E))


def tensor_map(r1: Relation, r2: Relation) -> Relation:
    """(a1,a2) relates to (b1,b2) iff a1 r1 b1 and a2 r2 b2."""
    src = product_base(r1.source, r2.source)
    tgt = product_base(r1.target, r2.target)
    n2 = len(r1.source), len(r2.source)
    pre = []
    for m1 in r1.pre:
        for m2 in r2.pre:
            mask = 0
            for i in range(n2[0]):
                if m1 >> i & 1:
                    mask |= m2 << (i * n2[1])
            pre.append(mask)
    return Relation(src, tgt, pre)


# -- structural isomorphisms ----------------------------------------------

def gamma(S1: Base, S2: Base) -> Relation:
    """Swap S1⊗S2 → S2⊗S1."""
    src, tgt = product_base(S1, S2), product_base(S2, S1)
    return Relation.from_pairs(src, tgt, [((a, b), (b, a)) for a, b in src])


def alpha(S1: Base, S2: Base, S3: Base) -> Relation:
    """Re-association S1⊗(S2⊗S3) → (S1⊗S2)⊗S3."""
    src = product_base(S1, product_base(S2, S3))
    tgt = product_base(product_base(S1, S2), S3)
    return Relation.from_pairs(src, tgt, [((a, (b, c)), ((a, b), c)) for a, (b, c) in src])


def lam(S: Base) -> Relation:
    """Left unitor E⊗S → S."""
    E = make_base([STAR])
    return Relation.from_pairs(product_base(E, S), S, [((STAR, a), a) for a in S])


def rho(S: Base) -> Relation:
    """Right unitor S⊗E → S."""
    E = make_base([STAR])
    return Relation.from_pairs(product_base(S, E), S, [((a, STAR), a) for a in S])


def structural_iso(kind: str, *bases: Base) -> tuple:
    """Return ``(iso, inverse)`` for ``alpha``, ``lambda``, ``rho`` or ``gamma``."""
    builders = {"alpha": (alpha, 3), "lambda": (lam, 1), "rho": (rho, 1), "gamma": (gamma, 2)}
    if kind not in builders:
        raise InputError(f"unknown structural isomorphism {kind!r}")
    fn, arity = builders[kind]
    if len(bases) != arity:
        raise InputError(f"{kind} takes {arity} base(s), got {len(bases)}")
    r = fn(*bases)
    return r, r.transpose()


def _equation(name: str, r1: Relation, r2: Relation, source_cover) -> LawReport:
    diff = first_difference(r1, r2, source_cover)
    if diff is None:
        return _pass(name, len(r1.target))
    tb = r1.target
    return LawReport(name, False, {"elements": {"b": tb.label(diff)}, "subsets": {}})


def _chain(*rels: Relation) -> Relation:
    """Compose left to right: the first relation is applied first."""
    out = rels[0]
    for r in rels[1:]:
        out = compose(out, r)
    return out


def check_coherence(S1, S2, S3, S4) -> list:
    """The six coherence equations of the symmetric monoidal structure, each as a report."""
    covers = [_generated(S) for S in (S1, S2, S3, S4)]
    b1, b2, b3, b4 = (c.base for c in covers)
    size = len(b1) * len(b2) * len(b3) * len(b4)
    check_size(size, COHERENCE_CAP, "coherence check")
    c1, c2, c3, c4 = covers
    E = unit_cover()
    e = E.base
    reports = []

    # pentagon on S1⊗(S2⊗(S3⊗S4))
    src = tensor_cover(c1, tensor_cover(c2, tensor_cover(c3, c4)))
    b34 = product_base(b3, b4)
    b12 = product_base(b1, b2)
    lhs = _chain(alpha(b1, b2, b34), alpha(b12, b3, b4))
    rhs = _chain(tensor_map(identity(b1), alpha(b2, b3, b4)),
                 alpha(b1, product_base(b2, b3), b4),
                 tensor_map(alpha(b1, b2, b3), identity(b4)))
    reports.append(_equation("pentagon", lhs, rhs, src))

    # triangle on S1⊗(E⊗S2)
    src = tensor_cover(c1, tensor_cover(E, c2))
    lhs = _chain(alpha(b1, e, b2), tensor_map(rho(b1), identity(b2)))
    rhs = tensor_map(identity(b1), lam(b2))
    reports.append(_equation("triangle", lhs, rhs, src))

    # unitors agree on E⊗E
    reports.append(_equation("unitors_on_unit", lam(e), rho(e), tensor_cover(E, E)))

    # symmetry is self-inverse
    src = tensor_cover(c2, c1)
    rep = _equation("symmetry_inverse", gamma(b2, b1), gamma(b1, b2).transpose(), src)
    if rep:
        rep = _equation("symmetry_inverse", _chain(gamma(b2, b1), gamma(b1, b2)),
                        identity(product_base(b2, b1)), src)
    reports.append(rep)

    # right unitor through the symmetry
    src = tensor_cover(c1, E)
    reports.append(_equation("unitor_symmetry", rho(b1), _chain(gamma(b1, e), lam(b1)), src))

    # hexagon on S1⊗(S2⊗S3)
    src = tensor_cover(c1, tensor_cover(c2, c3))
    lhs = _chain(alpha(b1, b2, b3), gamma(product_base(b1, b2), b3), alpha(b3, b1, b2))
    rhs = _chain(tensor_map(identity(b1), gamma(b2, b3)), alpha(b1, b3, b2),
                 tensor_map(gamma(b1, b3), identity(b2)))
    reports.append(_equation("hexagon", lhs, rhs, src))
    return reports


# -- comultiplication -----------------------------------------------------

def mu_from_circ(oc) -> Relation:
    """μ: S → S⊗S with μ⁻(a,b) = δ(a,b)."""
    delta: DeltaOp = oc.delta
    S = oc.base
    prod = product_base(S, S)
    n = len(S)
    return Relation(S, prod, [delta.table[i][j] for i in range(n) for j in range(n)])


def circ_from_mu(cover, mu: Relation) -> SubsetOp:
    """The operation with δ(a,b) = μ⁻(a,b)."""
    S = getattr(cover, "cover", cover).base
    if mu.source != S or mu.target != product_base(S, S):
        raise InputError("comultiplication must be a relation S → S⊗S")
    n = len(S)
    table = [[mu.pre[i * n + j] for j in range(n)] for i in range(n)]
    return SubsetOp(DeltaOp(S, table, "table"))


def ops_equal_mod(cover, op1, op2) -> bool:
    """U∘V =_𝒜 U∘'V for every subset pair."""
    cover = getattr(cover, "cover", cover)
    sat = cover.closure_mask
    N = cover.base.full_mask + 1
    return all(sat(op1.lift_mask(u, v)) == sat(op2.lift_mask(u, v))
               for u in range(N) for v in range(N))


def counit_from_unit(base: Base, unit) -> Relation:
    """η: S → E with η⁻(∗) = I."""
    E = make_base([STAR])
    return Relation(base, E, [unit.mask])


def check_cosemigroup(S, mu: Relation) -> list:
    """Co-associativity and co-commutativity of μ as maps_equal identities."""
    cover = _generated(S)
    b = cover.base
    ident = identity(b)
    reports = [is_basic_cover_map(mu, cover, tensor_cover(cover, cover))]
    reports[0].law = "comultiplication_map"
    lhs = _chain(mu, tensor_map(ident, mu), alpha(b, b, b))
    rhs = _chain(mu, tensor_map(mu, ident))
    reports.append(_equation("coassociativity", lhs, rhs, cover))
    reports.append(_equation("cocommutativity", _chain(mu, gamma(b, b)), mu, cover))
    return reports


def check_comonoid(S, mu: Relation, eta: Relation | None = None) -> list:
    """Co-semigroup laws plus both counit triangles. η defaults to the total relation."""
    cover = _generated(S)
    b = cover.base
    E = make_base([STAR])
    if eta is None:
        eta = Relation(b, E, [b.full_mask])
    reports = check_cosemigroup(cover, mu)
    ident = identity(b)
    left = _chain(mu, tensor_map(eta, ident))
    right = _chain(mu, tensor_map(ident, eta))
    reports.append(_equation("counit_left", left, lam(b).transpose(), cover))
    reports.append(_equation("counit_right", right, rho(b).transpose(), cover))
    return reports
