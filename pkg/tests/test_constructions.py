from fractions import Fraction

import pytest

from leala import algebra, constructions as C
from leala.algebra import FAIL, PASS
from leala.scalars import ONE, T

from conftest import factory

DIMS = {"A1": 3, "A2": 8, "A3": 15, "B2": 10, "C2": 10, "B3": 21, "C3": 21, "D4": 28, "D3": 15}
# dual Coxeter number times 2, i.e. Killing / trace on the defining representation
KILLING_RATIO = {"A1": 4, "A2": 6, "A3": 8, "B2": 3, "B3": 5, "C2": 6, "C3": 8, "D3": 4, "D4": 6}


def killing(A, i, j):
    """tr(ad x_i ad x_j) from the structure constants."""
    total = Fraction(0)
    for k in range(A.dim):
        v = A.bracket({i: ONE}, A.bracket({j: ONE}, {k: ONE}))
        total += v.get(k, 0)
    return total


@pytest.mark.parametrize("name", sorted(DIMS))
def test_split_dims(name):
    A = C.build_split_simple(name)
    assert A.dim == DIMS[name]
    assert len(A.cartan) == int(name[1])


@pytest.mark.parametrize("name", ["A1", "A2", "B2", "C2", "D3", "B3"])
def test_killing_ratio(name):
    A = C.build_split_simple(name)
    r = Fraction(KILLING_RATIO[name])
    assert A.window["killing_over_trace"] == r
    for i in range(A.dim):
        for j in range(i, A.dim):
            assert killing(A, i, j) == r * A.form_basis(i, j)


@pytest.mark.parametrize("name", ["B2", "C2", "D3"])
def test_split_satisfies_axioms(name):
    A = C.build_split_simple(name)
    assert algebra.check_jacobi(A).verdict == PASS
    assert algebra.check_invariance(A).verdict == PASS
    assert algebra.check_admissible(A).verdict == PASS


def test_simple_type_parse():
    t = C.SimpleType.parse("C3")
    assert (t.series, t.rank, t.size, t.label) == ("C", 3, 6, "C3")
    with pytest.raises((C.BuilderRefusal, ValueError)):
        C.SimpleType.parse("E6")
    with pytest.raises((C.BuilderRefusal, ValueError)):
        C.SimpleType.parse("D1")


@pytest.mark.parametrize("w", [0, 1, 2, 3])
def test_loop_dims(w):
    A = C.build_loop_eala("A1", C.GroupDatum((1,), w))
    assert A.dim == 3 * (2 * w + 1) + 2


def test_loop_window_zero_flag():
    A = C.build_loop_eala("A1", C.GroupDatum((1,), 0))
    assert A.window.get("degenerate_slice")


def test_loop_form_is_trace_form_times_delta():
    A = factory("loop-w2")
    e, f = A.index["e[1,2]|1"], A.index["e[2,1]|-1"]
    assert A.form_basis(e, f) == 1
    assert A.form_basis(A.index["e[1,2]|1"], A.index["e[2,1]|1"]) == 0
    assert A.form_basis(A.index["c"], A.index["d"]) == 1


def test_loop_central_term():
    A = factory("loop-w2")
    h1, hm1 = A.index["h[1]|1"], A.index["h[1]|-1"]
    # [h t, h t^-1] = 1 * tr(h h) c
    assert A.bracket_basis(h1, hm1) == {A.index["c"]: 2}


def test_heisenberg_dims_and_zero_gram():
    A = factory("heis2")
    assert A.dim == 2 + 4 * 2
    from leala.roots import build_root_datum
    D = build_root_datum(A)
    assert not D.anisotropic
    assert all(D.ip(a, b) == 0 for a in D.roots for b in D.roots)


@pytest.mark.parametrize("kwargs", [dict(S=(1, -1)), dict(S=(0, 1)), dict(phi_values=(1, 1), S=((0, 0),))])
def test_heisenberg_refusals(kwargs):
    with pytest.raises(C.BuilderRefusal):
        C.build_heisenberg_null(**kwargs)


@pytest.mark.parametrize("n,w", [(2, 1), (2, 2), (3, 1)])
def test_witt_dims(n, w):
    A = C.build_witt_null(n, w)
    boxes = (2 * w + 1) ** n
    assert A.dim == 2 * (n + (boxes - 1) * (n - 1))


def test_witt_refuses_rank_one():
    with pytest.raises(C.BuilderRefusal):
        C.build_witt_null(1, 2)


@pytest.mark.parametrize("name", ["witt", "witt-mr"])
def test_witt_identities(name):
    rep = C.check_witt_identities(factory(name))
    assert rep.verdict == PASS, rep.witnesses[:2]


def test_witt_cocycle_changes_brackets():
    a, b = factory("witt"), factory("witt-mr")
    assert a.symbols == b.symbols
    assert a.structure != b.structure
    assert a.gram == b.gram


def test_witt_center_is_y0():
    A = factory("witt")
    from leala.structure import center
    vecs, _ = center(A)
    names = sorted(s for v in vecs for s in A.named(v))
    assert names == ["y[0,0;1]", "y[0,0;2]"]


def test_witt_c_alpha_spans_bracket():
    A = factory("witt-mr")
    c = C.witt_c_alpha(A, (1, 0))
    assert c and all(A.symbols[k].startswith("y[0,0") for k in c)


def test_not_tame_dims():
    A = C.build_indecomposable_not_tame("A1", 2, (0, 1, -1))
    assert A.dim == 3 * 5 + 2 + 2


def test_not_tame_refuses_s_outside_window():
    with pytest.raises(C.BuilderRefusal):
        C.build_indecomposable_not_tame("A1", 1, (0, 2, -2))


def test_patterns():
    assert [C.EX_6_2_1.entry(i) for i in (1, 2, 3)] == [1, 2, 3]
    assert [C.ALMOST_SCALAR.entry(i) for i in (1, 2, 3, 4)] == [2, 0, 1, 1]
    assert C.ALMOST_SCALAR.tail_constant() and not C.EX_6_2_1.tail_constant()
    assert C.ZERO_PATTERN.eventually_zero()
    p = C.DiagonalPattern((), ("periodic", (1, 2)))
    assert [p.entry(i) for i in range(1, 5)] == [1, 2, 1, 2]


def test_pattern_validation():
    C.validate_pattern("A", C.EX_6_2_1)
    C.validate_pattern("B", C.EX_6_2_2)
    with pytest.raises(C.BuilderRefusal, match="A cannot be an almost scalar matrix"):
        C.validate_pattern("A", C.ALMOST_SCALAR)
    with pytest.raises(C.BuilderRefusal):
        C.validate_pattern("C", C.ZERO_PATTERN)
    with pytest.raises(C.BuilderRefusal):
        C.build_nullity_zero("A", [3], [C.ALMOST_SCALAR])


@pytest.mark.parametrize("n", [3, 4, 5])
def test_nullity_zero_levels_pass_axioms(n):
    lvl = C.build_nullity_zero("A", [n], [C.EX_6_2_1]).levels[0]
    A = lvl.algebra
    assert A.dim == DIMS.get(f"A{n}", (n + 1) ** 2 - 1) + 1
    for rep in (algebra.check_jacobi(A), algebra.check_invariance(A), algebra.check_admissible(A)):
        assert rep.verdict == PASS


def test_nullity_zero_with_z_and_psi():
    lvl = C.build_nullity_zero_level(C.SimpleType("B", 2), [C.EX_6_2_2], z_dim=1,
                                     psi=[[0, 1], [1, 0]])
    assert algebra.check_admissible(lvl.algebra).verdict == PASS
    with pytest.raises(C.BuilderRefusal):
        C.build_nullity_zero_level(C.SimpleType("B", 2), [C.EX_6_2_2], z_dim=1,
                                   psi=[[1, 0], [0, 0]])


def test_nullity_zero_over_qt():
    lvl = C.build_nullity_zero_level(C.SimpleType("A", 2), [C.DiagonalPattern((), ("affine", T, 0))])
    assert algebra.check_jacobi(lvl.algebra).verdict == PASS
    assert algebra.check_invariance(lvl.algebra).verdict == PASS


def test_direct_sum():
    A = C.direct_sum(factory("A1"), factory("A1"))
    assert A.dim == 6
    assert algebra.check_jacobi(A).verdict == PASS
    assert algebra.check_admissible(A).verdict == PASS


def test_negative_control_inputs_fail():
    assert algebra.check_jacobi(C.flip_sign(factory("A2"), ("e[1,2]", "e[2,3]"))).verdict == FAIL
    assert algebra.check_invariance(C.with_form(factory("A2"), ("h[1]", "h[2]"), 5)).verdict == FAIL
