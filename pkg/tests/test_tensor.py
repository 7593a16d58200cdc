from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from covertop import fixtures as F
from covertop.core import Subset, make_base, product_base
from covertop.errors import InputError
from covertop.generation import DeltaOp, generate_basic, make_axiom_set
from covertop.morphisms import Relation, compose, identity, is_basic_cover_map, maps_equal
from covertop.tensor import (check_coherence, check_comonoid, check_cosemigroup, circ_from_mu,
                             counit_from_unit, gamma, mu_from_circ, ops_equal_mod,
                             structural_iso, tensor_cover, tensor_map, unit_cover)

from oracles import all_subsets, closure, raw_axioms


def test_tensor_axiom_schema():
    S = F.abc_basic()
    T = F.axiom_free(2)
    tc = tensor_cover(S, T)
    got = sorted((tc.base.element(ax.head), sorted(ax.cover)) for ax in tc.axioms)
    t0, t1 = T.base.elements
    assert got == sorted([(("a", t), [("b", t), ("c", t)]) for t in (t0, t1)])
    assert all(ax.tag == "tensor_left" for ax in tc.axioms)


def test_tensor_axiom_count():
    one = lambda: generate_basic(make_base(["p", "q"]), make_axiom_set(
        make_base(["p", "q"]), [("p", ["q"])]))
    assert len(list(tensor_cover(one(), one()).axioms)) == 4
    free = tensor_cover(F.axiom_free(2), F.axiom_free(3))
    assert list(free.axioms) == []
    assert all(free.closure_mask(m) == m for m in range(64))


def test_rectangle_closure_on_chain():
    c = F.chain_formal()
    tc = tensor_cover(c, c)
    P = tc.base
    assert tc.saturate(P.subset([("o", "o")])) == P.full()


def test_unit_cover():
    E = unit_cover()
    assert len(E.base) == 1 and E.closure_mask(0) == 0 and E.closure_mask(1) == 1


def test_tensor_map_rectangles():
    c = F.chain_formal()
    S = c.base
    r = Relation.from_pairs(S, S, [("z", "z"), ("z", "o"), ("o", "o")])
    s = identity(S)
    t = tensor_map(r, s)
    P = t.target
    for V, W in product(range(4), repeat=2):
        rect = Subset(P, sum(1 << (i * 2 + j) for i in range(2) for j in range(2)
                             if V >> i & 1 and W >> j & 1))
        want = {(a, b) for a in Subset(S, r.rminus_mask(V)) for b in Subset(S, W)}
        assert set(Subset(t.source, t.rminus_mask(rect.mask))) == want
    assert tensor_map(s, s) == identity(product_base(S, S))
    tc = tensor_cover(c, c)
    assert is_basic_cover_map(t, tc, tc)


def test_functoriality():
    c = F.chain_formal()
    S = c.base
    r = Relation.from_pairs(S, S, [("z", "z"), ("z", "o"), ("o", "o")])
    r2 = Relation.from_pairs(S, S, [("o", "o"), ("z", "z")])
    lhs = tensor_map(compose(r, r2), compose(r2, r))
    rhs = compose(tensor_map(r, r2), tensor_map(r2, r))
    assert maps_equal(lhs, rhs, tensor_cover(c, c))


def test_structural_isos():
    c = F.chain_basic()
    S = c.base
    g, g_inv = structural_iso("gamma", S, S)
    tc = tensor_cover(c, c)
    assert maps_equal(compose(g, g), identity(tc.base), tc)
    lm, lm_inv = structural_iso("lambda", S)
    src = tensor_cover(unit_cover(), c)
    assert is_basic_cover_map(lm, src, c) and is_basic_cover_map(lm_inv, c, src)
    assert maps_equal(compose(lm, lm_inv), identity(src.base), src)
    two = make_base(["p", "q"])
    al, al_inv = structural_iso("alpha", two, two, two)
    assert compose(al, al_inv) == identity(al.source)
    with pytest.raises(InputError):
        structural_iso("beta", S)
    with pytest.raises(InputError):
        structural_iso("gamma", S)


def test_coherence_all_pass():
    c = F.chain_basic()
    reports = check_coherence(c, c, c, c)
    assert [r.law for r in reports] == ["pentagon", "triangle", "unitors_on_unit",
                                        "symmetry_inverse", "unitor_symmetry", "hexagon"]
    assert all(reports)
    p = generate_basic(make_base(["p", "q"]), make_axiom_set(make_base(["p", "q"]),
                                                             [("p", ["q"])]))
    assert all(check_coherence(c, p, F.axiom_free(2), c))


def test_mu_examples():
    ch = F.chain_formal()
    mu = mu_from_circ(ch)
    P = mu.target
    assert set(Subset(ch.base, mu.rminus_mask(P.singleton(("z", "o")).mask))) == {"z"}
    m = F.monoid_convergent()
    mm = mu_from_circ(m)
    assert is_basic_cover_map(mm, m, tensor_cover(m, m))
    assert maps_equal(compose(mu, gamma(ch.base, ch.base)), mu, ch)


def test_round_trips_on_convergent_fixtures():
    for name, oc in F.convergent_fixtures().items():
        mu = mu_from_circ(oc)
        assert ops_equal_mod(oc, circ_from_mu(oc, mu), oc.op), name
        assert maps_equal(mu_from_circ(_with_op(oc, circ_from_mu(oc, mu))), mu, oc), name
        assert all(check_cosemigroup(oc, mu)), name


def _with_op(oc, op):
    class Shim:
        base = oc.base
        delta = op.delta
    return Shim


def test_diagonal_mu():
    S = make_base(["p", "q"])
    mu = Relation.from_pairs(S, product_base(S, S), [("p", ("p", "p")), ("q", ("q", "q"))])
    op = circ_from_mu(generate_basic(S, make_axiom_set(S)), mu)
    assert op.delta.table == ((1, 0), (0, 2))


def test_comonoid_on_monoid_fixture():
    m = F.monoid_convergent()
    eta = counit_from_unit(m.base, m.unit)
    reports = check_comonoid(m, mu_from_circ(m), eta)
    assert all(reports), [r for r in reports if not r]


def test_non_associative_mu_fails():
    S = make_base(["x", "y"])
    cover = generate_basic(S, make_axiom_set(S))
    delta = DeltaOp(S, [[2, 1], [1, 1]], "table")
    mu = mu_from_circ(type("C", (), {"base": S, "delta": delta}))
    reports = {r.law: r for r in check_cosemigroup(cover, mu)}
    assert reports["cocommutativity"]
    bad = reports["coassociativity"]
    assert not bad and bad.witness["elements"]


def test_circ_from_mu_rejects_wrong_shape():
    S = make_base(["p", "q"])
    with pytest.raises(InputError):
        circ_from_mu(generate_basic(S, make_axiom_set(S)), identity(S))


def small_cover(data, prefix):
    n = data.draw(st.integers(1, 3))
    B = make_base([f"{prefix}{i}" for i in range(n)])
    els = st.sampled_from(B.elements)
    ax = [(data.draw(els), data.draw(st.sets(els, max_size=2)))
          for _ in range(data.draw(st.integers(0, 3)))]
    return generate_basic(B, make_axiom_set(B, ax))


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_rectangle_law_and_rule(data):
    S, T = small_cover(data, "s"), small_cover(data, "t")
    tc = tensor_cover(S, T)
    # tensor axioms rebuilt from scratch on sets
    tax = [((a, b), frozenset((c, b) for c in C)) for a, C in raw_axioms(S) for b in T.base]
    tax += [((a, b), frozenset((a, d) for d in D)) for b, D in raw_axioms(T) for a in S.base]
    for U in all_subsets(S.base.elements):
        sU = closure(raw_axioms(S), U)
        for V in all_subsets(T.base.elements):
            sV = closure(raw_axioms(T), V)
            rect = frozenset(product(U, V))
            got = tc.saturate(tc.base.subset(rect))
            assert set(got) == closure(tax, rect)
            assert set(tc.saturate(tc.base.subset(product(sU, sV)))) == set(got)
            assert set(product(sU, sV)) <= set(got)
