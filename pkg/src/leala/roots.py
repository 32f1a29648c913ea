"""Root data of an admissible triple: induced form, triplets, reflections, strings.

A :class:`RootDatum` can come from an algebra (:func:`build_root_datum`) or be
given abstractly by a list of weights and a matrix for the induced form
(:meth:`RootDatum.synthetic`), which is how negative controls are built.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import linalg
from .algebra import (CheckReport, GradedAlgebra, MalformedAlgebra, ONE, Vector, Weight,
                      WindowOverflow, ZERO, check_admissible, conclude, enc, enc_vec, negate)
from .scalars import Scalar, as_scalar, is_rational, ScalarError

STRING_SCAN = 8


class RootDatumError(ValueError):
    def __init__(self, message, report: Optional[CheckReport] = None):
        super().__init__(message)
        self.report = report


class CartanIntegerError(ValueError):
    def __init__(self, xi, alpha, value):
        super().__init__(f"2(xi,alpha)/(alpha,alpha) = {enc(value)} is not an integer")
        self.witness = {"xi": enc_vec(xi), "alpha": enc_vec(alpha), "value": enc(value)}


def add(a: Weight, b: Weight, c=1) -> Weight:
    return tuple(x + c * y for x, y in zip(a, b))


def scale(a: Weight, c) -> Weight:
    return tuple(c * x for x in a)


@dataclass(frozen=True)
class RootDatum:
    """Roots of ``(L, H, B)`` with the induced form ``(xi, eta) = xi^T M eta``.

    ``roots`` lists R in canonical order (first appearance in the basis) and
    includes 0 whenever ``L_0 != 0``.  ``isotropic`` holds the *nonzero*
    isotropic roots.  ``scale`` is the factor ``u`` with ``B' = u B``; the
    stored matrix already includes it.
    """

    roots: Tuple[Weight, ...]
    anisotropic: Tuple[Weight, ...]
    isotropic: Tuple[Weight, ...]
    matrix: Tuple[Tuple[Scalar, ...], ...]
    representatives: Dict[Weight, Vector] = field(default_factory=dict)
    scale: Scalar = Fraction(1)
    window: dict = field(default_factory=dict)
    algebra: Optional[GradedAlgebra] = field(default=None, compare=False, repr=False)
    notes: Tuple[str, ...] = ()

    @classmethod
    def synthetic(cls, roots: Sequence[Sequence], matrix: Sequence[Sequence], window=None):
        """Abstract datum: weights are coordinate vectors, form given by ``matrix``."""
        m = tuple(tuple(as_scalar(x) for x in row) for row in matrix)
        rs = []
        for r in roots:
            w = tuple(as_scalar(x) for x in r)
            if w not in rs:
                rs.append(w)
        return cls._classify(rs, m, {}, ONE, dict(window or {"builder": "synthetic"}), None, ())

    @classmethod
    def _classify(cls, roots, matrix, reps, u, window, algebra, notes):
        def ip(a, b):
            return linalg.dot(a, linalg.matvec(matrix, b)) if matrix else ZERO

        aniso = tuple(r for r in roots if ip(r, r) != 0)
        iso = tuple(r for r in roots if ip(r, r) == 0 and any(x != 0 for x in r))
        return cls(tuple(roots), aniso, iso, matrix, reps, u, window, algebra, tuple(notes))

    # ---------------------------------------------------------------------
    def ip(self, xi: Weight, eta: Weight) -> Scalar:
        if not self.matrix:
            return ZERO
        return linalg.dot(xi, linalg.matvec(self.matrix, eta))

    def norm(self, xi: Weight) -> Scalar:
        return self.ip(xi, xi)

    @property
    def zero(self) -> Weight:
        return tuple(ZERO for _ in self.matrix)

    @property
    def rank_h(self) -> int:
        return len(self.matrix)

    def is_root(self, w: Weight) -> bool:
        return w in self._rootset

    @property
    def _rootset(self):
        s = self.__dict__.get("_rs")
        if s is None:
            s = frozenset(self.roots)
            object.__setattr__(self, "_rs", s)
        return s

    def decides(self, w: Weight) -> bool:
        """Whether membership of ``w`` in R is settled at this window."""
        if self.algebra is None:
            return True
        return self.algebra.decides_weight(w)

    def without(self, root: Weight) -> "RootDatum":
        """Negative-control helper: the same datum with one root deleted."""
        rs = [r for r in self.roots if r != root]
        return RootDatum._classify(rs, self.matrix, self.representatives, self.scale,
                                   self.window, self.algebra, self.notes + ("root deleted",))

    @property
    def is_null(self) -> bool:
        return not self.anisotropic

    def summary(self) -> dict:
        return {"roots": len(self.roots), "anisotropic": len(self.anisotropic),
                "isotropic": len(self.isotropic), "scale": enc(self.scale)}


def build_root_datum(A: GradedAlgebra) -> RootDatum:
    rep = check_admissible(A)
    if rep.failed:
        raise RootDatumError("algebra is not admissible at its window", rep)
    reps = rep.data["representatives"]
    decomposition = rep.data["decomposition"]
    roots = list(decomposition)
    G = A.cartan_gram()
    matrix = tuple(tuple(r) for r in linalg.inverse(G)) if G else ()
    zero = tuple(ZERO for _ in A.cartan)
    if zero in decomposition:
        reps = dict(reps)
        reps[zero] = {}
    return RootDatum._classify(roots, matrix, reps, ONE, A.window, A, ())


def scale_form(D: RootDatum) -> Tuple[Scalar, RootDatum]:
    """Rescale so that anisotropic norms are rational and positive where the convention asks.

    Returns ``u`` with ``B' = u B``.  Null systems are returned unchanged.
    """
    if not D.anisotropic:
        return ONE, replace(D, notes=D.notes + ("null system: scaling is vacuous",))
    first = D.norm(D.anisotropic[0])
    holds = all(is_rational(D.norm(b)) for b in D.anisotropic) and is_rational(first) and first > 0
    u = ONE if holds else first
    inv = ONE / u
    matrix = tuple(tuple(x * inv for x in row) for row in D.matrix)
    reps = {w: {k: x * inv for k, x in v.items()} for w, v in D.representatives.items()}
    out = replace(D, matrix=matrix, representatives=reps, scale=D.scale * u)
    for b in out.anisotropic:
        if not is_rational(out.norm(b)):
            raise RootDatumError(f"anisotropic norm {enc(out.norm(b))} is not rational after scaling")
    return u, out


# ---------------------------------------------------------------------------


def coroot_value(D: RootDatum, xi: Weight, alpha: Weight) -> Scalar:
    return 2 * D.ip(xi, alpha) / D.norm(alpha)


def cartan_integer(D: RootDatum, xi: Weight, alpha: Weight) -> int:
    if D.norm(alpha) == 0:
        raise ValueError("alpha must be anisotropic")
    v = coroot_value(D, xi, alpha)
    if not is_rational(v) or v.denominator != 1:
        raise CartanIntegerError(xi, alpha, v)
    return int(v)


def check_cartan_integers(D: RootDatum) -> CheckReport:
    fails, n = [], 0
    for a in D.anisotropic:
        for x in D.roots:
            n += 1
            try:
                cartan_integer(D, x, a)
            except CartanIntegerError as e:
                fails.append(e.witness)
    return conclude("cartan-integers", fails, n, 0, D.window)


def check_bound(D: RootDatum) -> CheckReport:
    """|xi(h_alpha)| <= 4 on R x R^x."""
    fails, n = [], 0
    for a in D.anisotropic:
        for x in D.roots:
            n += 1
            v = coroot_value(D, x, a)
            if not is_rational(v) or abs(v) > 4:
                fails.append({"xi": enc_vec(x), "alpha": enc_vec(a), "value": enc(v)})
    return conclude("bound", fails, n, 0, D.window)


def reflect(D: RootDatum, alpha: Weight, mu: Weight) -> Weight:
    return add(mu, alpha, -coroot_value(D, mu, alpha))


def check_reflection_closure(D: RootDatum) -> CheckReport:
    fails, ok, undecided = [], 0, 0
    for a in D.anisotropic:
        for x in D.roots:
            s = reflect(D, a, x)
            if D.is_root(s):
                ok += 1
            elif D.decides(s):
                ok += 1
                fails.append({"alpha": enc_vec(a), "xi": enc_vec(x), "image": enc_vec(s)})
            else:
                undecided += 1
    return conclude("reflection-closure", fails, ok, undecided, D.window)


@dataclass
class RootString:
    d: Optional[int]
    u: Optional[int]
    verdict: str
    witness: dict = field(default_factory=dict)
    undecided: int = 0


def root_string(D: RootDatum, A: Optional[GradedAlgebra], xi: Weight, alpha: Weight) -> RootString:
    """The alpha-string through xi, scanned for |n| <= 8.

    ``A`` is accepted for interface symmetry; membership decisions go
    through the datum's window.
    """
    status = {}
    for n in range(-STRING_SCAN, STRING_SCAN + 1):
        w = add(xi, alpha, n)
        status[n] = True if D.is_root(w) else (False if D.decides(w) else None)
    if not status[0]:
        raise ValueError("xi is not a root")

    def walk(step):
        k = 0
        while abs(k + step) <= STRING_SCAN and status[k + step]:
            k += step
        if abs(k + step) > STRING_SCAN:
            return abs(k), "malformed"
        if status[k + step] is None:
            return abs(k), None
        return abs(k), "ok"

    u, su = walk(1)
    d, sd = walk(-1)
    wit = {"xi": enc_vec(xi), "alpha": enc_vec(alpha)}
    if "malformed" in (su, sd):
        return RootString(d, u, "fail", dict(wit, reason="string longer than scan bound"))
    if su is None or sd is None:
        return RootString(None, None, "inconclusive-at-window", wit)
    beyond = [n for n in status if (n > u or n < -d)]
    broken = [n for n in beyond if status[n]]
    undecided = sum(1 for n in beyond if status[n] is None)
    if broken:
        return RootString(d, u, "fail", dict(wit, reason="broken string", extra_points=broken))
    value = coroot_value(D, xi, alpha)
    if d - u != value:
        return RootString(d, u, "fail", dict(wit, reason="d - u differs from xi(h_alpha)",
                                             d=d, u=u, value=enc(value)))
    return RootString(d, u, "pass", undecided=undecided)


def check_root_strings(D: RootDatum, A: Optional[GradedAlgebra] = None) -> CheckReport:
    fails, ok, undecided = [], 0, 0
    for a in D.anisotropic:
        for x in D.roots:
            s = root_string(D, A, x, a)
            if s.verdict == "pass":
                ok += 1
            elif s.verdict == "fail":
                ok += 1
                fails.append(s.witness)
            else:
                undecided += 1
    return conclude("root-strings", fails, ok, undecided, D.window)


# ---------------------------------------------------------------------------
# triplets


@dataclass
class Sl2Triplet:
    x: Vector
    h: Vector
    y: Vector


@dataclass
class HeisenbergTriplet:
    x: Vector
    t: Vector
    y: Vector


def _pairing(A: GradedAlgebra, xi: Weight):
    pos = [b for b in range(A.dim) if A.weights[b] == xi]
    neg = [b for b in range(A.dim) if A.weights[b] == negate(xi)]
    for i in pos:
        for j in neg:
            v = A.form_basis(i, j)
            if v != 0:
                return i, j, v
    raise RootDatumError(f"no nondegenerate pair for root {enc_vec(xi)} inside the window")


def _raw_rep(D: RootDatum, xi: Weight) -> Vector:
    return {k: x * D.scale for k, x in D.representatives[xi].items()}


def sl2_triplet(D: RootDatum, A: GradedAlgebra, alpha: Weight) -> Sl2Triplet:
    if D.norm(alpha) == 0:
        raise ValueError("alpha must be anisotropic")
    i, j, v = _pairing(A, alpha)
    t = _raw_rep(D, alpha)
    c = 2 / (D.norm(alpha) * D.scale)  # 2/(alpha,alpha) in the algebra's own form
    x = {i: ONE}
    y = {j: c / v}
    h = {k: c * a for k, a in t.items()}
    trip = Sl2Triplet(x, h, y)
    if (A.bracket(x, y) != h or A.bracket(h, x) != {i: Fraction(2)}
            or A.bracket(h, y) != {j: -2 * c / v}):
        raise RootDatumError(f"sl2 relations fail for {enc_vec(alpha)}")
    return trip


def heisenberg_triplet(D: RootDatum, A: GradedAlgebra, delta: Weight) -> HeisenbergTriplet:
    if D.norm(delta) != 0 or not any(x != 0 for x in delta):
        raise ValueError("delta must be a nonzero isotropic root")
    i, j, v = _pairing(A, delta)
    t = _raw_rep(D, delta)
    x, y = {i: ONE}, {j: ONE / v}
    if A.bracket(x, y) != t or A.bracket(t, x) or A.bracket(t, y):
        raise RootDatumError(f"Heisenberg relations fail for {enc_vec(delta)}")
    return HeisenbergTriplet(x, t, y)


def check_triplets(D: RootDatum, A: GradedAlgebra) -> CheckReport:
    fails, ok, skipped = [], 0, 0
    for r in D.roots:
        if not any(x != 0 for x in r):
            continue
        try:
            if D.norm(r) != 0:
                sl2_triplet(D, A, r)
            else:
                heisenberg_triplet(D, A, r)
            ok += 1
        except WindowOverflow:
            skipped += 1
        except RootDatumError as e:
            if A.decides_weight(negate(r)):
                ok += 1
                fails.append({"root": enc_vec(r), "error": str(e)})
            else:
                skipped += 1
    return conclude("triplets", fails, ok, skipped, D.window)


def check_eq_1_0(D: RootDatum, A: GradedAlgebra) -> CheckReport:
    """[x, y] = B(x, y) t_xi for basis x in L_xi, y in L_-xi."""
    fails, ok, skipped = [], 0, 0
    for b in range(A.dim):
        xi = A.weights[b]
        if xi not in D.representatives:
            continue
        t = _raw_rep(D, xi)
        for c in range(A.dim):
            if A.weights[c] != negate(xi):
                continue
            try:
                lhs = A.bracket({b: ONE}, {c: ONE})
            except WindowOverflow:
                skipped += 1
                continue
            ok += 1
            f = A.form_basis(b, c)
            rhs = {k: f * x for k, x in t.items() if f * x != 0}
            if lhs != rhs:
                fails.append({"x": A.symbols[b], "y": A.symbols[c]})
    return conclude("eq-1.0", fails, ok, skipped, D.window)


# ---------------------------------------------------------------------------
# lemma suite


def check_lemma_2_1_4(D: RootDatum, A: GradedAlgebra) -> CheckReport:
    """dim L_alpha = 1 for anisotropic alpha."""
    counts: Dict[Weight, int] = {}
    for w in A.weights:
        counts[w] = counts.get(w, 0) + 1
    fails = [{"alpha": enc_vec(a), "dim": counts.get(a, 0)}
             for a in D.anisotropic if counts.get(a, 0) != 1]
    return conclude("dim-anisotropic", fails, len(D.anisotropic), 0, D.window)


def check_lemma_2_1_3(D: RootDatum) -> CheckReport:
    """k alpha is not a root for k in {+-2, +-3, +-1/2}."""
    fails, ok, undecided = [], 0, 0
    for a in D.anisotropic:
        for k in (2, -2, 3, -3, Fraction(1, 2), Fraction(-1, 2)):
            w = scale(a, k)
            if D.is_root(w):
                ok += 1
                fails.append({"alpha": enc_vec(a), "k": enc(Fraction(k))})
            elif D.decides(w):
                ok += 1
            else:
                undecided += 1
    return conclude("multiples", fails, ok, undecided, D.window)


def check_lemma_2_2(D: RootDatum) -> CheckReport:
    fails, n = [], 0
    for a in D.anisotropic:
        for b in D.anisotropic:
            if D.is_root(add(a, b)) and D.is_root(add(a, b, -1)):
                n += 1
                if D.norm(a) != D.norm(b):
                    fails.append({"alpha": enc_vec(a), "beta": enc_vec(b),
                                  "norms": [enc(D.norm(a)), enc(D.norm(b))]})
    notes = [] if n else ["hypothesis never met: vacuous pass"]
    return conclude("equal-length", fails, n, 0, D.window, notes)


def components(D: RootDatum) -> List[List[Weight]]:
    roots = list(D.anisotropic)
    seen, out = set(), []
    for r in roots:
        if r in seen:
            continue
        comp, stack = [], [r]
        seen.add(r)
        while stack:
            x = stack.pop()
            comp.append(x)
            for y in roots:
                if y not in seen and D.ip(x, y) != 0:
                    seen.add(y)
                    stack.append(y)
        out.append(sorted(comp, key=roots.index))
    return out


def check_irreducible(D: RootDatum) -> CheckReport:
    if not D.anisotropic:
        return conclude("irreducible", [], 1, 0, D.window, ["R^x is empty: vacuous pass"])
    comps = components(D)
    fails = []
    if len(comps) > 1:
        fails.append({"components": [[enc_vec(r) for r in c] for c in comps]})
    return conclude("irreducible", fails, 1, 0, D.window)


def check_local_nilpotence(D: RootDatum, A: GradedAlgebra, depth_bound: int = 8) -> CheckReport:
    """Iterate ad x (x a basis vector of an anisotropic root space) on every basis symbol."""
    fails, ok, undecided = [], 0, 0
    aniso = set(D.anisotropic)
    for b in range(A.dim):
        if A.weights[b] not in aniso:
            continue
        for s in range(A.dim):
            v = {s: ONE}
            status = "ok"
            for _ in range(depth_bound):
                try:
                    v = A.bracket({b: ONE}, v)
                except WindowOverflow:
                    status = "out"
                    break
                if not v:
                    break
            else:
                status = "bound"
            if status == "ok":
                ok += 1
            elif status == "out":
                undecided += 1
            else:
                ok += 1
                fails.append({"x": A.symbols[b], "start": A.symbols[s],
                              "depth": depth_bound})
    return conclude("local-nilpotence", fails, ok, undecided, D.window)


def check_isotropic_orthogonal(D: RootDatum) -> CheckReport:
    """(xi, delta) = 0 for xi in R, delta in R^0."""
    fails, n = [], 0
    for d in D.isotropic:
        for x in D.roots:
            n += 1
            v = D.ip(x, d)
            if v != 0:
                fails.append({"xi": enc_vec(x), "delta": enc_vec(d), "value": enc(v)})
    return conclude("isotropic-orthogonal", fails, n, 0, D.window)


def check_positive_norms(D: RootDatum) -> CheckReport:
    """After scaling: (gamma, gamma) > 0 on R^x (rational sign test)."""
    fails = []
    for a in D.anisotropic:
        v = D.norm(a)
        if not is_rational(v):
            raise RootDatumError(f"norm {enc(v)} is not rational; scale the form first")
        if v <= 0:
            fails.append({"alpha": enc_vec(a), "norm": enc(v)})
    return conclude("positive-norms", fails, len(D.anisotropic), 0, D.window)


def check_isotropic_lines(D: RootDatum) -> CheckReport:
    """Among observed roots alpha + n delta at most one is isotropic (alpha anisotropic)."""
    fails, n = [], 0
    roots = D._rootset
    for a in D.anisotropic:
        for d in D.isotropic:
            hits = [k for k in range(-STRING_SCAN, STRING_SCAN + 1)
                    if add(a, d, k) in roots and D.norm(add(a, d, k)) == 0]
            n += 1
            if len(hits) > 1:
                fails.append({"alpha": enc_vec(a), "delta": enc_vec(d), "n": hits})
    return conclude("isotropic-lines", fails, n, 0, D.window)


def lemma_suite(D: RootDatum, A: Optional[GradedAlgebra] = None) -> List[CheckReport]:
    out = [check_cartan_integers(D), check_bound(D), check_reflection_closure(D),
           check_root_strings(D, A), check_lemma_2_1_3(D), check_lemma_2_2(D),
           check_isotropic_orthogonal(D), check_isotropic_lines(D), check_irreducible(D)]
    if A is not None:
        out += [check_lemma_2_1_4(D, A), check_triplets(D, A), check_eq_1_0(D, A),
                check_local_nilpotence(D, A)]
    return out
