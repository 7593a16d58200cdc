import pytest
from hypothesis import given, settings, strategies as st

from covertop import fixtures as F
from covertop.core import list_base, make_base
from covertop.errors import BaseMismatchError, InputError
from covertop.generation import (DeltaOp, add_frame_axioms, add_unit_axioms,
                                 extend_semigroup_axioms, generate_convergent, generate_formal,
                                 localize, make_axiom_set, make_delta, tensor_axioms)

from oracles import closure

ABC = make_base(["a", "b", "c"])


def covers_of(A):
    return [(A.base.element(ax.head), set(ax.cover), ax.tag) for ax in A]


def test_make_axiom_set():
    A = make_axiom_set(ABC, [("a", ["b", "c"])])
    (ax,) = A.for_element("a")
    assert set(ax.cover) == {"b", "c"} and ax.ident == ("user", 1) and ax.tag == "user"
    assert len(make_axiom_set(ABC)) == 0
    with pytest.raises(InputError):
        make_axiom_set(ABC, [("z", ["a"])])
    with pytest.raises(BaseMismatchError):
        make_axiom_set(ABC, [("a", make_base(["x"]).subset(["x"]))])


def test_make_delta_preorder_and_monoid():
    d = F.chain_min()
    assert set(d.value("z", "o")) == {"z"}
    # the common down-set of o and o is {z,o}; mod the formal cover it equals {o}
    assert set(d.value("o", "o")) == {"z", "o"}
    cover = F.chain_formal().cover
    assert cover.eq_mod(d.value("o", "o"), d.base.subset(["o"]))
    m = F.saturating_monoid()
    assert set(m.value("g", "g")) == {"h"}


def test_make_delta_errors():
    S = make_base(["e", "g", "h"])
    bad = {(x, y): "e" if "e" in (x, y) else "g" for x in "egh" for y in "egh"}
    bad["e", "g"] = bad["g", "e"] = "g"
    bad["e", "h"] = bad["h", "e"] = "h"
    bad["g", "g"] = "h"
    with pytest.raises(InputError, match="associative"):
        make_delta(S, "monoid", bad, unit="e")
    with pytest.raises(InputError, match="transitive"):
        make_delta(S, "preorder", [("e", "g"), ("g", "h")])
    with pytest.raises(InputError, match="partial"):
        make_delta(S, "table", {("e", "e"): []})
    with pytest.raises(InputError):
        make_delta(S, "monoid", {(x, y): "e" for x in "egh" for y in "egh"}, unit="e")


def test_semigroup_axioms_on_monoid_are_trivial():
    m = F.saturating_monoid()
    A = extend_semigroup_axioms(make_axiom_set(m.base), m)
    assert len(A) > 0
    assert all(cov == {head} for head, cov, _ in covers_of(A))


def test_semigroup_axioms_asymmetric_table():
    S = make_base(["x", "y", "z", "w"])
    table = {(p, q): [] for p in S for q in S}
    table["x", "y"], table["y", "x"] = ["z"], ["w"]
    A = extend_semigroup_axioms(make_axiom_set(S), make_delta(S, "table", table))
    comm = [(h, c) for h, c, tag in covers_of(A) if tag == "commutativity"]
    assert comm == [("z", {"w"}), ("w", {"z"})]


def test_localize_trace():
    table = {(p, q): (["a"] if p == "a" else []) for p in ABC for q in ABC}
    d = make_delta(ABC, "table", table)
    user = make_axiom_set(ABC, [("a", ["b", "c"])])
    jd = extend_semigroup_axioms(user, d)
    out = localize(jd, d)
    loc = [ax for ax in out if ax.tag == "locax"]
    # a ∈ δ(a,x) for each x; the user axiom of a gives a ◁ {b,c}∘{x} = ∅
    user_loc = [ax for ax in loc if ax.ident[2] == ("user", 1)]
    assert [ax.ident[3] for ax in user_loc] == ["a", "b", "c"]
    assert all(not ax.cover for ax in user_loc)
    assert all(ax.ident[1] == "a" for ax in loc)


def test_localize_with_empty_delta_adds_nothing():
    d = make_delta(ABC, "table", {(p, q): [] for p in ABC for q in ABC})
    user = make_axiom_set(ABC, [("a", ["b", "c"])])
    assert localize(user, d) == user


def test_frame_axioms():
    chain = F.chain_min()
    A = add_frame_axioms(make_axiom_set(chain.base), chain)
    assert ("z", {"o"}, "weakening") in covers_of(A)
    m = F.saturating_monoid()
    A = add_frame_axioms(make_axiom_set(m.base), m)
    assert ("g", {"h"}, "contraction") in covers_of(A)


def test_frame_axioms_with_empty_delta_cover_everything_by_empty():
    S = make_base(["x", "y"])
    d = make_delta(S, "table", {(p, q): [] for p in S for q in S})
    A = add_frame_axioms(make_axiom_set(S), d)
    assert [(h, c) for h, c, _ in covers_of(A)] == [("x", set()), ("y", set())]
    assert closure([(h, frozenset(c)) for h, c, _ in covers_of(A)], frozenset()) == {"x", "y"}


def test_unit_axioms():
    m = F.saturating_monoid()
    A = add_unit_axioms(make_axiom_set(m.base), m, m.base.subset(["e"]))
    assert all(cov == {head} for head, cov, _ in covers_of(A))
    A = add_unit_axioms(make_axiom_set(m.base), m, m.base.empty())
    assert [(h, c) for h, c, _ in covers_of(A)] == [("e", set()), ("g", set()), ("h", set())]
    chain = F.chain_min()
    A = add_unit_axioms(make_axiom_set(chain.base), chain, chain.base.full())
    got = {(h, frozenset(c)) for h, c, _ in covers_of(A)}
    assert got == {("z", frozenset("z")), ("o", frozenset({"z", "o"})), ("z", frozenset({"o"})),
                   ("o", frozenset({"o"}))}


def test_tensor_axiom_counts():
    T = make_base(["x", "y"])
    A = tensor_axioms(make_axiom_set(ABC, [("a", ["b", "c"])]), make_axiom_set(T))
    assert [(h, set(c)) for h, c, _ in covers_of(A)] == [
        (("a", "x"), {("b", "x"), ("c", "x")}), (("a", "y"), {("b", "y"), ("c", "y")})]
    assert len(tensor_axioms(make_axiom_set(ABC), make_axiom_set(T))) == 0
    S = F.chain_base()
    one = make_axiom_set(S, [("z", ["o"])])
    assert len(tensor_axioms(one, one)) == 4


def test_overflow_pairs_are_skipped():
    B = list_base(make_base(["a"]), 2)
    concat = DeltaOp.from_function(B, lambda l, k: None if B.concat(l, k) is None
                                   else [B.concat(l, k)])
    A = extend_semigroup_axioms(make_axiom_set(B), concat)
    for ax in A:
        assert len(B.element(ax.head)) <= 2
    # [a]•[a,a] would overflow, so no instance of it is built
    assert not any(ax.ident[1:] == ("[a]", "[a,a]") for ax in A)
    assert concat.lift_checked(B.subset([("a",)]).mask, B.subset([("a", "a")]).mask)[1]


@st.composite
def tables(draw, n_max=4):
    n = draw(st.integers(1, n_max))
    S = make_base([f"s{i}" for i in range(n)])
    vals = st.sets(st.sampled_from(S.elements), max_size=2)
    table = {(p, q): sorted(draw(vals)) for p in S for q in S}
    k = draw(st.integers(0, 3))
    user = [(draw(st.sampled_from(S.elements)), sorted(draw(vals))) for _ in range(k)]
    return S, make_axiom_set(S, user), make_delta(S, "table", table)


@settings(max_examples=60, deadline=None)
@given(tables())
def test_transformations_extend_by_prefix_and_are_deterministic(data):
    S, user, d = data
    stages = [user]
    stages.append(extend_semigroup_axioms(stages[-1], d))
    stages.append(localize(stages[-1], d))
    stages.append(add_frame_axioms(stages[-1], d))
    for lo, hi in zip(stages, stages[1:]):
        for r1, r2 in zip(lo.entries, hi.entries):
            assert r2[:len(r1)] == r1
    assert localize(extend_semigroup_axioms(user, d), d) == stages[2]


@settings(max_examples=60, deadline=None)
@given(tables())
def test_formal_contains_convergent(data):
    S, user, d = data
    conv = generate_convergent(S, user, d).cover
    form = generate_formal(S, user, d).cover
    for u in range(S.full_mask + 1):
        assert conv.closure_mask(u) & ~form.closure_mask(u) == 0


@settings(max_examples=60, deadline=None)
@given(tables())
def test_formal_output_has_weakening_and_contraction(data):
    S, user, d = data
    cover, op = generate_formal(S, user, d)
    for b in range(len(S)):
        assert cover.closure_mask(1 << b) >> b & 1
        assert cover.closure_mask(op.lift_mask(1 << b, 1 << b)) >> b & 1
        for c in range(len(S)):
            bc = op.lift_mask(1 << b, 1 << c)
            assert bc & ~cover.closure_mask(1 << c) == 0


@st.composite
def preorders(draw):
    n = draw(st.integers(1, 4))
    S = make_base([f"p{i}" for i in range(n)])
    rel = {(i, j) for i in range(n) for j in range(n)
           if i != j and draw(st.booleans())}
    changed = True
    while changed:
        changed = False
        for (i, j) in list(rel):
            for (k, l) in list(rel):
                if j == k and i != l and (i, l) not in rel:
                    rel.add((i, l))
                    changed = True
    pairs = [(S.element(i), S.element(j)) for i, j in sorted(rel)]
    return S, make_delta(S, "preorder", pairs)


@settings(max_examples=60, deadline=None)
@given(preorders())
def test_leq_left_in_formal_output(data):
    S, d = data
    cover = generate_formal(S, make_axiom_set(S), d).cover
    for a, b in d.payload:
        assert cover.covers(a, S.singleton(b))


def test_singleton_min_table_generates_the_same_covers():
    S = F.chain_base()
    table = {(a, b): [min(a, b, key=S.index)] for a in S for b in S}
    mn = make_delta(S, "table", table)
    for gen in (generate_formal, generate_convergent):
        assert gen(S, make_axiom_set(S), mn).cover.table() == \
            gen(S, make_axiom_set(S), F.chain_min()).cover.table()
