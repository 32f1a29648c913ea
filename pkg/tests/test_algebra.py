from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from leala import algebra, constructions as C
from leala.algebra import FAIL, PASS, AlgebraBuilder, WindowOverflow
from leala.scalars import T

from conftest import factory


def test_sl2_bracket_table():
    A = factory("A1")
    h, e, f = (A.index[s] for s in ("h[1]", "e[1,2]", "e[2,1]"))
    assert A.bracket_basis(h, e) == {e: 2}
    assert A.bracket_basis(h, f) == {f: -2}
    assert A.bracket_basis(e, f) == {h: 1}
    assert A.bracket_basis(f, e) == {h: -1}
    assert A.form_basis(h, h) == 2 and A.form_basis(e, f) == 1


@pytest.mark.parametrize("name", ["A1", "A2", "B2", "C2", "loop-w2", "heis", "witt", "witt-mr", "not-tame"])
def test_axioms_hold(name):
    A = factory(name)
    for rep in (algebra.check_jacobi(A), algebra.check_invariance(A), algebra.check_admissible(A),
                algebra.check_grade_additivity(A), algebra.check_graded_orthogonality(A)):
        assert rep.verdict == PASS, (rep.check, rep.witnesses[:2])


def test_bracket_antisymmetric_and_bilinear():
    A = factory("B2")
    for i in range(A.dim):
        assert A.bracket_basis(i, i) == {}
        for j in range(A.dim):
            r1 = A.bracket_basis(i, j)
            r2 = A.bracket_basis(j, i)
            assert r1 == {k: -v for k, v in r2.items()}


@given(st.dictionaries(st.integers(0, 9), st.integers(-3, 3).map(Fraction)),
       st.dictionaries(st.integers(0, 9), st.integers(-3, 3).map(Fraction)))
def test_invariance_on_random_vectors(x, y):
    A = factory("B2")
    x = {k: v for k, v in x.items() if v}
    y = {k: v for k, v in y.items() if v}
    for z in range(A.dim):
        zv = {z: Fraction(1)}
        assert A.form(A.bracket(x, y), zv) == A.form(x, A.bracket(y, zv))


def test_flipped_sign_fails_jacobi_with_witness():
    A = C.flip_sign(factory("A2"), ("e[1,2]", "e[2,3]"))
    rep = algebra.check_jacobi(A)
    assert rep.verdict == FAIL
    assert rep.witnesses and "triple" in rep.witnesses[0]


def test_corrupted_form_fails_invariance():
    A = C.with_form(factory("A1"), ("h[1]", "h[1]"), 3)
    rep = algebra.check_invariance(A)
    assert rep.verdict == FAIL and rep.witnesses


def test_degenerate_form_fails_admissible():
    A = C.with_form(factory("A1"), ("e[1,2]", "e[2,1]"), 0)
    rep = algebra.check_admissible(A)
    assert rep.verdict == FAIL
    assert any(w["axiom"] == "A2" for w in rep.witnesses)


def test_dependent_phi_fails_a1():
    A = C.build_loop_eala("A1", C.GroupDatum((1, 1), 1), allow_dependent=True)
    rep = algebra.check_admissible(A)
    assert rep.verdict == FAIL
    assert any(w["axiom"] == "A1" for w in rep.witnesses)


def test_dependent_phi_refused_by_default():
    with pytest.raises(C.BuilderRefusal):
        C.build_loop_eala("A1", C.GroupDatum((1, 1), 1))


def test_window_overflow_raises():
    A = factory("loop-w2")
    i, j = sorted(A.overflow)[0]
    with pytest.raises(WindowOverflow):
        A.bracket_basis(i, j)


def test_overflow_is_not_a_failure():
    rep = algebra.check_jacobi(factory("loop-w2"))
    assert rep.verdict == PASS
    assert rep.stats["inconclusive"] > 0


def test_nothing_decided_is_inconclusive():
    rep = algebra.conclude("x", [], 0, 5)
    assert rep.verdict == algebra.INCONCLUSIVE


def test_fail_needs_witness():
    with pytest.raises(ValueError):
        algebra.CheckReport("x", FAIL)


@pytest.mark.parametrize("name", ["A2", "loop-Qt", "heis2", "witt-mr", "level3"])
def test_json_round_trip_bit_exact(name):
    A = factory(name)
    text = algebra.dumps(A)
    B = algebra.loads(text)
    assert B == A
    assert algebra.dumps(B) == text


def test_json_field_name():
    assert algebra.to_json(factory("loop-Qt"))["field"] == "Q(t)"
    assert algebra.to_json(factory("A1"))["field"] == "Q"


def test_malformed_json_rejected():
    doc = algebra.to_json(factory("A1"))
    doc["structure"][0]["left"] = "nonexistent"
    with pytest.raises((algebra.MalformedAlgebra, KeyError, ValueError)):
        algebra.from_json(doc)


def test_sampled_mode_deterministic():
    A = factory("A3")
    r1 = algebra.check_jacobi(A, ("sampled", 40), seed=7)
    r2 = algebra.check_jacobi(A, ("sampled", 40), seed=7)
    assert r1.to_json() == r2.to_json()
    assert r1.stats["decided"] == 40


def test_threads_do_not_change_report(monkeypatch):
    A = factory("B2")
    base = algebra.check_jacobi(A).to_json()
    monkeypatch.setenv("LEALA_THREADS", "4")
    assert algebra.check_jacobi(A).to_json() == base
    bad = C.flip_sign(A, ("x[+1]", "x[+2]"))
    monkeypatch.setenv("LEALA_THREADS", "1")
    single = algebra.check_jacobi(bad).to_json()
    monkeypatch.setenv("LEALA_THREADS", "3")
    assert algebra.check_jacobi(bad).to_json() == single


def test_weights_computed_from_cartan():
    b = AlgebraBuilder({"builder": "synthetic"})
    b.add("h", (0,), True)
    b.add("e", (1,))
    b.add("f", (-1,))
    b.set_bracket("h", "e", {"e": 2})
    b.set_bracket("h", "f", {"f": -2})
    b.set_bracket("e", "f", {"h": 1})
    b.set_form("h", "h", 2)
    b.set_form("e", "f", 1)
    A = b.build()
    assert A.weights[A.index["e"]] == (2,)
    assert A.weights[A.index["f"]] == (-2,)


def test_weights_over_qt():
    A = factory("loop-Qt")
    d_weights = {A.weights[i] for i in range(A.dim)}
    assert any(any(not isinstance(x, Fraction) for x in w) for w in d_weights)
    assert T in {x for w in d_weights for x in w} or -T in {x for w in d_weights for x in w}


def test_centralizer_of_h_is_h():
    A = factory("A2")
    vecs, excluded = algebra.centralizer(A, [{h: Fraction(1)} for h in A.cartan])
    assert not excluded
    assert len(vecs) == len(A.cartan)
