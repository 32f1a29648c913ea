from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from leala import constructions as C, structure as S
from leala.algebra import FAIL, INCONCLUSIVE, PASS
from leala.roots import RootDatum, build_root_datum, scale_form
from leala.scalars import ONE
from leala.semidefinite import kac_suite

from conftest import datum, factory, scaled


@pytest.fixture(scope="module")
def cores():
    return {n: S.core(factory(n), datum(n)) for n in
            ("A2", "B2", "loop", "loop-w2", "loop-B2", "heis", "not-tame", "level3", "witt")}


@pytest.mark.parametrize("name,dim", [("A2", 8), ("B2", 10), ("loop-w2", 3 * 5 + 1), ("heis", 0),
                                      ("witt", 0), ("level3", 15)])
def test_core_dims(cores, name, dim):
    assert cores[name].dim == dim


def test_core_idempotent(cores):
    # the core of the subalgebra spanned by the core is the core: regenerate and compare spans
    for name in ("A2", "loop-w2", "level3"):
        c1 = cores[name]
        c2 = S.core(factory(name), datum(name))
        assert c1.dim == c2.dim
        e = c1.span()
        assert all(e.contains(v) for v in c2.basis())


def test_loop_core_contains_c_not_d(cores):
    A = factory("loop-w2")
    e = cores["loop-w2"].span()
    assert e.contains({A.index["c"]: ONE})
    assert not e.contains({A.index["d"]: ONE})


@pytest.mark.parametrize("name", ["A2", "B2", "loop", "loop-w2", "loop-B2", "not-tame", "level3"])
def test_core_checks_pass(cores, name):
    c = cores[name]
    for rep in (S.check_core_ideal(c), S.check_lie_torus_grading(c), S.check_s_sets(c)):
        assert rep.verdict == PASS, (rep.check, rep.witnesses[:2])


def test_injected_vector_fails_condition_one(cores):
    c = cores["loop-w2"]
    A = c.algebra
    r = next(w for w in c.slots if c.datum.norm(w) != 0)
    extra = {A.index["d"]: ONE}
    bad = S.inject(c, r, extra)
    rep = S.check_lie_torus_grading(bad)
    assert rep.verdict == FAIL
    assert any(w["condition"] == 1 for w in rep.witnesses)


def test_double_grading_splits_loop_roots(cores):
    c = cores["loop-w2"]
    omegas = {om for om, _ in c.double_grading.values()}
    deltas = {dl for _, dl in c.double_grading.values()}
    assert len([o for o in omegas if any(o)]) == 2
    assert len(deltas) == 5


def test_s_sets_of_loop(cores):
    c = cores["loop-w2"]
    assert len(c.lambda_basis()) == 1
    for a in c.dotted:
        assert len(c.s_sets[a]) == 5


@pytest.mark.parametrize("name,expected", [("A2", True), ("loop", True), ("loop-B2", True),
                                           ("not-tame", False), ("level3", False)])
def test_tame(cores, name, expected):
    rep = S.check_tame(factory(name), cores[name])
    assert rep.verdict == PASS
    assert S.is_tame(rep) is expected


def test_centralizer_orthogonal_to_core(cores):
    # B(C_L(L_c), L_c) = 0 on every instance
    for name, c in cores.items():
        A = c.algebra
        vecs, _ = S.centralizer(A, c.basis())
        for v in vecs:
            assert all(A.form(v, u) == 0 for u in c.basis())


def test_not_tame_with_trivial_s_is_tame():
    A = C.build_indecomposable_not_tame("A1", 2, (0,))
    assert S.is_tame(S.check_tame(A)) is True


@pytest.mark.parametrize("name", ["not-tame", "heis", "heis2", "A2", "loop"])
def test_indecomposable_certified(name):
    rep = S.check_decomposable(factory(name), datum(name))
    assert S.is_indecomposable(rep) is True


def test_heisenberg_trivial_s_decomposes():
    A = C.build_heisenberg_null((0,), 1)
    rep = S.check_decomposable(A)
    assert S.is_indecomposable(rep) is False
    assert rep.data["result"]["family"] == "central"


def test_direct_sum_decomposes_with_valid_witness():
    A = C.direct_sum(factory("A1"), factory("A1"))
    rep = S.check_decomposable(A)
    assert S.is_indecomposable(rep) is False
    res = rep.data["result"]
    assert res["family"] == "root-split"
    D = build_root_datum(A)
    # oracle: H1 kills the roots of factor 2, H2 kills those of factor 1, H1 perp H2
    from leala.scalars import parse_scalar
    def vec(h):
        return {A.index[k]: parse_scalar(v) for k, v in h.items()}
    H1 = [vec(h) for h in res["factor1"]["H"]]
    H2 = [vec(h) for h in res["factor2"]["H"]]
    assert len(H1) + len(H2) == len(A.cartan)
    assert all(A.form(a, b) == 0 for a in H1 for b in H2)
    for h in H2:
        for i in range(A.dim):
            if A.symbols[i].endswith("#1") and i not in A.cartan:
                assert A.bracket(h, {i: ONE}) == {}


def test_lemma_9_4_direction():
    for name in ("A2", "B2", "loop", "loop-B2", "not-tame", "level3", "heis"):
        tame = S.is_tame(S.check_tame(factory(name)))
        if tame:
            assert S.is_indecomposable(S.check_decomposable(factory(name), datum(name))) is True


NULLITY_ZERO = {
    "A2": lambda: factory("A2"),
    "B3": lambda: factory("B3"),
    "level3": lambda: factory("level3"),
    "level-B2-z": lambda: C.build_nullity_zero_level(C.SimpleType("B", 2), [C.EX_6_2_2], z_dim=1,
                                                     psi=[[0, 1], [1, 0]]).algebra,
    "level-A2-two-d": lambda: C.build_nullity_zero_level(
        C.SimpleType("A", 2), [C.EX_6_2_1, C.DiagonalPattern((), ("periodic", (1, 0)))]).algebra,
}


@pytest.mark.parametrize("name", sorted(NULLITY_ZERO))
def test_triangle(name):
    A = NULLITY_ZERO[name]()
    rep = S.nullity_zero_triangle(A)
    assert rep.verdict == PASS, rep.data
    preds = rep.data["predicates"]
    assert len(set(preds.values())) == 1


@pytest.mark.parametrize("name", sorted(NULLITY_ZERO))
def test_split_nullity_zero(name):
    A = NULLITY_ZERO[name]()
    sp = S.split_nullity_zero(A)
    assert sp.report.verdict == PASS, sp.report.witnesses
    assert sp.core.dim + len(sp.d_part) + len(sp.z_part) == A.dim


def test_split_of_tower_level():
    sp = S.split_nullity_zero(factory("level3"))
    A = factory("level3")
    assert sp.d_part == []
    # the finite level has d = ad h for an h in g_n, so d - h is central
    z = sp.z_part
    assert len(z) == 1
    assert A.index["d1"] in z[0]


def test_split_requires_nullity_zero():
    with pytest.raises(S.HypothesisError):
        S.split_nullity_zero(factory("loop"))


def test_radical_in_center():
    A = factory("level3")
    n = A.dim
    sigma = {(i, j): A.form_basis(i, j) for i in range(n) for j in range(i, n) if A.form_basis(i, j) != 0}
    rep = S.check_radical_in_center(A, sigma)
    assert rep.verdict == PASS
    assert rep.data["radical_dim"] == 0
    # shifting B(d1, d1) keeps invariance; the radical can only meet the center
    d = A.index["d1"]
    for shift in (1, -2, 5):
        sig = dict(sigma)
        sig[(d, d)] = sig.get((d, d), 0) + shift
        assert S.check_radical_in_center(A, sig).verdict == PASS


def test_sigma_vanishing_on_d_is_not_invariant():
    A = factory("level3")
    d = A.index["d1"]
    n = A.dim
    sigma = {(i, j): A.form_basis(i, j) for i in range(n) for j in range(i, n)
             if A.form_basis(i, j) != 0 and d not in (i, j)}
    with pytest.raises(S.HypothesisError, match="not invariant"):
        S.check_radical_in_center(A, sigma)


def test_radical_in_center_gates():
    A = factory("A2")
    with pytest.raises(S.HypothesisError):
        S.check_radical_in_center(A, {(0, 0): 1})
    with pytest.raises(S.HypothesisError):
        S.check_radical_in_center(A, {})


def tower(pattern, validate=True, series="A", ranks=(3, 4, 5)):
    return C.build_nullity_zero(series, list(ranks), [pattern], validate=validate)


def test_tower_ex_6_2_1():
    tr = S.outer_tower_test(tower(C.EX_6_2_1))
    assert tr.support_sizes == [3, 4, 5]
    assert not tr.stabilized and tr.growing


def test_tower_almost_scalar():
    with pytest.raises(C.BuilderRefusal, match="A cannot be an almost scalar matrix"):
        tower(C.ALMOST_SCALAR)
    tr = S.outer_tower_test(tower(C.ALMOST_SCALAR, validate=False))
    assert tr.stabilized and not tr.growing


def test_tower_type_b_constant():
    tr = S.outer_tower_test(tower(C.EX_6_2_2, series="B"))
    assert tr.growing and not tr.stabilized


def test_tower_needs_three_levels():
    with pytest.raises(S.HypothesisError):
        S.outer_tower_test(tower(C.EX_6_2_1, ranks=(3, 4)))


@given(st.lists(st.integers(-3, 3), min_size=1, max_size=3), st.integers(-3, 3))
def test_inner_representative_realizes_derivation(head, c):
    lvl = C.build_nullity_zero_level(C.SimpleType("A", 3), [C.DiagonalPattern(tuple(head), ("constant", c))])
    A = lvl.algebra
    h = S.inner_representative(lvl)
    hv = {A.index[k]: v for k, v in h.items()}
    d = {A.index["d1"]: ONE}
    for i in range(A.dim):
        if i in A.cartan:
            continue
        assert A.bracket(d, {i: ONE}) == A.bracket(hv, {i: ONE})


@pytest.mark.parametrize("name,labels", [("A2", {"A2"}), ("C2", {"B2", "C2"}), ("B2", {"B2", "C2"}),
                                         ("A3", {"A3", "D3"}), ("A1", {"A1", "B1", "C1"}),
                                         ("B3", {"B3"}), ("D4", {"D4"}), ("loop", {"A1", "B1", "C1"}),
                                         ("loop-B2", {"B2", "C2"})])
def test_recognition(name, labels):
    t = S.recognize_finite_type(kac_suite(scaled(name))["quotient"])
    assert set(t.labels) == labels


def test_recognition_nonreduced_bc():
    D = RootDatum.synthetic([(0,), (1,), (-1,), (2,), (-2,)], [[1]])
    t = S.recognize_finite_type(kac_suite(D)["quotient"])
    assert t.nonreduced and t.labels == {"BC1"}
    D = RootDatum.synthetic(
        [(0, 0)] + [(s * a, s * b) for a, b in ((1, 0), (0, 1), (2, 0), (0, 2), (1, 1), (1, -1))
                    for s in (1, -1)], [[1, 0], [0, 1]])
    t = S.recognize_finite_type(kac_suite(D)["quotient"])
    assert t.labels == {"BC2"}


def test_recognition_hint_picks_primary():
    t = S.recognize_finite_type(kac_suite(scaled("C2"))["quotient"], "C2")
    assert t.primary == "C2"
    assert t.describe() == "type C2 (labels {B2,C2})"


def test_core_simple_on_split(cores):
    assert S.check_core_simple(cores["A2"]).verdict == PASS
    assert S.check_core_simple(cores["level3"]).verdict == PASS
