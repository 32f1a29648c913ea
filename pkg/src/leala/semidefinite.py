"""The rational span of the roots, its radical, and exact semidefiniteness.

Everything here is exact: weights with coordinates in Q(t) are flattened to
rational vectors over a common denominator, which is a Q-linear injection, so
Q-spans, ranks and kernels computed on the flattened vectors are the true ones.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from . import linalg
from .algebra import CheckReport, ONE, ZERO, conclude, enc, enc_vec
from .roots import RootDatum, RootDatumError
from .scalars import common_denominator, flatten, is_rational

QVec = Tuple[Fraction, ...]


def _flat_map(weights: Sequence[Sequence]):
    coords = [x for w in weights for x in w]
    if not coords:
        return lambda w: ()
    den = common_denominator(coords)
    deg = max(len(r) for r in flatten(coords, den)) if coords else 0

    def f(w):
        return tuple(x for row in flatten(list(w), den, deg) for x in row)
    return f


@dataclass
class RootLattice:
    spanning_roots: List[tuple]
    gram: List[List[Fraction]]
    coords: Dict[tuple, QVec]
    window: dict = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return len(self.spanning_roots)

    def ip(self, u: Sequence, v: Sequence):
        return linalg.dot(u, linalg.matvec(self.gram, v))


def build_lattice(D: RootDatum) -> RootLattice:
    """Greedy Q-basis of span R in canonical root order, with its Gram matrix."""
    roots = list(D.roots)
    f = _flat_map(roots)
    ech = linalg.Echelon()
    spanning = []
    for r in roots:
        v = {k: x for k, x in enumerate(f(r)) if x != 0}
        if ech.add(v):
            spanning.append(r)
    gram = []
    for a in spanning:
        row = []
        for b in spanning:
            v = D.ip(a, b)
            if not is_rational(v):
                raise RootDatumError(f"induced form value {enc(v)} is not rational; scale the form")
            row.append(Fraction(v))
        gram.append(row)
    # coordinates of every root in the spanning basis
    cols = [f(r) for r in spanning]
    mat = linalg.transpose([list(c) for c in cols]) if cols else []
    coords = {}
    for r in roots:
        if not spanning:
            coords[r] = ()
            continue
        sol = linalg.solve(mat, list(f(r)))
        coords[r] = tuple(Fraction(x) for x in sol)
    return RootLattice(spanning, gram, coords, D.window)


# ---------------------------------------------------------------------------
# PSD certification


@dataclass
class PSDCertificate:
    psd: bool
    order: List[int]                       # permutation: row k of P is e_order[k]
    lower: List[List[Fraction]]            # unit lower triangular
    diagonal: List[Fraction]
    witness: Optional[List[Fraction]] = None
    witness_value: Optional[Fraction] = None

    @property
    def pivots(self) -> List[Fraction]:
        return self.diagonal

    def recompose(self):
        """Return (P G P^T computed from G is done by caller), L D L^T."""
        n = len(self.diagonal)
        return [[sum((self.lower[i][k] * self.diagonal[k] * self.lower[j][k] for k in range(n)), ZERO)
                 for j in range(n)] for i in range(n)]

    def to_json(self) -> dict:
        out = {"psd": self.psd, "order": self.order,
               "pivots": [enc(x) for x in self.diagonal]}
        if self.psd:
            out["lower"] = [[enc(x) for x in row] for row in self.lower]
        if self.witness is not None:
            out["witness"] = [enc(x) for x in self.witness]
            out["witness_value"] = enc(self.witness_value)
        return out


def permuted(G, order):
    return [[G[i][j] for j in order] for i in order]


def quad(G, x):
    return linalg.dot(x, linalg.matvec(G, x))


def _witness(G, pivots: List[int], rest: List[int], w: Dict[int, Fraction]):
    """x with x^T G x equal to the Schur-complement value of w on ``rest``."""
    n = len(G)
    x = [ZERO] * n
    for k, v in w.items():
        x[k] = v
    if pivots:
        g11 = [[G[i][j] for j in pivots] for i in pivots]
        rhs = [-sum((G[i][k] * v for k, v in w.items()), ZERO) for i in pivots]
        y = linalg.solve(g11, rhs)
        for i, v in zip(pivots, y):
            x[i] = v
    return x


def _small_witness(G):
    n = len(G)
    cands = [[ONE if k == i else ZERO for k in range(n)] for i in range(n)]
    for i, j in itertools.combinations(range(n), 2):
        for s in (ONE, -ONE):
            v = [ZERO] * n
            v[i], v[j] = ONE, s
            cands.append(v)
    for v in cands:
        q = quad(G, v)
        if q < 0:
            return v, q
    return None


def certify_psd(G: Sequence[Sequence]) -> PSDCertificate:
    """Exact LDL^T with symmetric pivoting.

    At each step the first remaining index with positive diagonal is the
    pivot.  A negative diagonal means not PSD.  When only zero diagonals are
    left the residual must vanish identically (otherwise a 2x2 principal
    block [[0, b], [b, 0]] gives a negative direction).
    """
    n = len(G)
    G = [[Fraction(x) for x in row] for row in G]
    for i in range(n):
        for j in range(n):
            if G[i][j] != G[j][i]:
                raise ValueError("matrix is not symmetric")
    S = [row[:] for row in G]
    remaining = list(range(n))
    order: List[int] = []
    cols: Dict[int, Dict[int, Fraction]] = {}
    diag: List[Fraction] = []
    failure = None
    while remaining:
        neg = next((i for i in remaining if S[i][i] < 0), None)
        if neg is not None:
            failure = {neg: ONE}
            break
        p = next((i for i in remaining if S[i][i] > 0), None)
        if p is None:
            bad = next(((i, j) for i in remaining for j in remaining if S[i][j] != 0), None)
            if bad is not None:
                i, j = bad
                failure = {i: ONE, j: -ONE if S[i][j] > 0 else ONE}
            break
        d = S[p][p]
        remaining.remove(p)
        col = {i: S[i][p] / d for i in remaining}
        for i in remaining:
            if col[i] != 0:
                for j in remaining:
                    S[i][j] -= col[i] * S[p][j]
        order.append(p)
        cols[p] = col
        diag.append(d)
    if failure is not None:
        small = _small_witness(G)
        if small is not None:
            x, q = small
        else:
            x = _witness(G, order, remaining, failure)
            q = quad(G, x)
        assert q < 0
        return PSDCertificate(False, order + remaining, [], diag, x, q)
    order = order + remaining
    diag = diag + [ZERO] * (n - len(diag))
    pos = {i: k for k, i in enumerate(order)}
    L = linalg.identity(n)
    for p, col in cols.items():
        k = pos[p]
        for i, v in col.items():
            L[pos[i]][k] = v
    return PSDCertificate(True, order, L, diag)


def verify_certificate(G, cert: PSDCertificate) -> bool:
    if not cert.psd:
        return cert.witness is not None and quad([[Fraction(x) for x in r] for r in G], cert.witness) < 0
    n = len(G)
    if any(cert.lower[i][i] != 1 or any(cert.lower[i][j] != 0 for j in range(i + 1, n))
           for i in range(n)):
        return False
    if any(x < 0 for x in cert.diagonal):
        return False
    return permuted(G, cert.order) == cert.recompose()


def check_psd(G, window=None) -> CheckReport:
    """PSD verdict for a Gram matrix: pass with certificate, or fail with x^T G x < 0."""
    cert = certify_psd(G)
    ok = cert.psd and verify_certificate(G, cert)
    wit = [] if ok else [cert.to_json()]
    rep = conclude("psd", wit, 1, 0, window or {})
    rep.data["certificate"] = cert
    return rep


def principal_minor_psd(G) -> bool:
    """Oracle: PSD iff every principal minor is >= 0."""
    n = len(G)
    for k in range(1, n + 1):
        for idx in itertools.combinations(range(n), k):
            if _det([[Fraction(G[i][j]) for j in idx] for i in idx]) < 0:
                return False
    return True


def _det(m):
    m = [row[:] for row in m]
    n = len(m)
    det = ONE
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c] != 0), None)
        if p is None:
            return ZERO
        if p != c:
            m[c], m[p] = m[p], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            if f:
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return det


# ---------------------------------------------------------------------------
# radical and quotient


@dataclass
class QuotientSystem:
    classes: Dict[tuple, QVec]
    roots_bar: List[QVec]
    form_bar: List[List[Fraction]]
    basis_indices: List[int]

    @property
    def rank(self) -> int:
        return len(self.form_bar)

    @property
    def zero(self) -> QVec:
        return tuple(ZERO for _ in self.form_bar)

    def ip(self, u, v):
        return linalg.dot(u, linalg.matvec(self.form_bar, v)) if self.form_bar else ZERO

    @property
    def nonzero(self) -> List[QVec]:
        z = self.zero
        return [r for r in self.roots_bar if r != z]


@dataclass
class RadicalReport:
    radical_basis: List[List[Fraction]]
    nullity: int
    psd: bool
    certificate: PSDCertificate
    quotient: QuotientSystem

    def to_json(self) -> dict:
        return {"nullity": self.nullity, "psd": self.psd,
                "radical_basis": [[enc(x) for x in v] for v in self.radical_basis],
                "certificate": self.certificate.to_json(),
                "quotient_rank": self.quotient.rank}


def quotient_map(L: RootLattice, radical: List[List[Fraction]]):
    n = L.dim
    ech = linalg.Echelon()
    for v in radical:
        ech.add({k: x for k, x in enumerate(v) if x != 0})
    basis = []
    for i in range(n):
        if ech.add({i: ONE}):
            basis.append(i)
    # columns: e_q (q in basis) then radical vectors
    cols = [[ONE if k == q else ZERO for k in range(n)] for q in basis] + [list(v) for v in radical]
    mat = linalg.transpose(cols) if cols else []

    def project(v):
        if not basis:
            return ()
        sol = linalg.solve(mat, list(v))
        return tuple(sol[:len(basis)])
    return basis, project


def radical_and_nullity(L: RootLattice) -> RadicalReport:
    radical = linalg.kernel(L.gram, L.dim) if L.dim else []
    cert = certify_psd(L.gram)
    basis, project = quotient_map(L, radical)
    classes = {r: project(c) for r, c in L.coords.items()}
    seen = []
    for v in classes.values():
        if v not in seen:
            seen.append(v)
    form_bar = [[L.gram[i][j] for j in basis] for i in basis]
    q = QuotientSystem(classes, seen, form_bar, basis)
    return RadicalReport(radical, len(radical), cert.psd, cert, q)


def quotient_root_system(L: RootLattice, D: RootDatum,
                         rad: Optional[RadicalReport] = None) -> Tuple[QuotientSystem, CheckReport]:
    rad = rad or radical_and_nullity(L)
    Q = rad.quotient
    fails, notes = [], []
    decided = undecided = 0
    z = Q.zero
    # R-bar = R-bar^x u {0}: isotropic roots go to 0, anisotropic ones do not
    for r in D.roots:
        decided += 1
        img = Q.classes[r]
        if (D.norm(r) == 0) != (img == z):
            fails.append({"axiom": "classes", "root": enc_vec(r), "image": enc_vec(img)})
    nz = Q.nonzero
    for a in nz:
        decided += 1
        if Q.ip(a, a) <= 0:
            fails.append({"axiom": "positive", "root_bar": enc_vec(a)})
    lifts = {}
    for r in D.roots:
        lifts.setdefault(Q.classes[r], r)
    for a in nz:
        na = Q.ip(a, a)
        if na <= 0:
            continue
        for b in Q.roots_bar:
            c = 2 * Q.ip(b, a) / na
            decided += 1
            if c.denominator != 1:
                fails.append({"axiom": "integrality", "alpha_bar": enc_vec(a), "beta_bar": enc_vec(b),
                              "value": enc(c)})
                continue
            img = tuple(x - c * y for x, y in zip(b, a))
            if img in Q.classes.values():
                continue
            # the image class may simply be outside the window
            from .roots import reflect
            s = reflect(D, lifts[a], lifts[b])
            if D.decides(s):
                fails.append({"axiom": "reflection", "alpha_bar": enc_vec(a), "beta_bar": enc_vec(b)})
            else:
                decided -= 1
                undecided += 1
    # irreducibility on R-bar^x
    if nz:
        comps = _components(nz, Q.ip)
        decided += 1
        if len(comps) > 1:
            fails.append({"axiom": "irreducible", "components": [[enc_vec(x) for x in c] for c in comps]})
    else:
        notes.append("degenerate: R-bar = {0}")
    notes.append(f"|R-bar| = {len(Q.roots_bar)} (finite at window)")
    return Q, conclude("quotient-root-system", fails, decided, undecided, L.window, notes)


def _components(vs, ip):
    seen, out = set(), []
    for v in vs:
        if v in seen:
            continue
        comp, stack = [], [v]
        seen.add(v)
        while stack:
            x = stack.pop()
            comp.append(x)
            for y in vs:
                if y not in seen and ip(x, y) != 0:
                    seen.add(y)
                    stack.append(y)
        out.append(comp)
    return out


# ---------------------------------------------------------------------------


@dataclass
class NullRankReport:
    group_rank: Optional[int]
    basis: List[List[Fraction]]
    notes: List[str]

    def to_json(self) -> dict:
        return {"group_rank": self.group_rank,
                "basis": [[enc(x) for x in v] for v in self.basis], "notes": self.notes}


def null_rank(D: RootDatum, L: RootLattice) -> NullRankReport:
    """Rank of the subgroup generated by the observed isotropic roots."""
    notes = ["rank of the subgroup generated by the observed (windowed) isotropic roots"]
    if D.window.get("non_free_limit"):
        notes.append("non-free in the limit (declared by construction metadata)")
    rows = [L.coords[r] for r in D.isotropic]
    if not rows:
        return NullRankReport(0, [], notes)
    den = 1
    for r in rows:
        for x in r:
            den = lcm(den, x.denominator)
    ints = [[int(x * den) for x in r] for r in rows]
    hb = linalg.hermite_basis(ints)
    basis = [[Fraction(x, den) for x in r] for r in hb]
    return NullRankReport(len(hb), basis, notes)


def nondegenerate_hull(G: Sequence[Sequence], Y: Sequence[Sequence]) -> List[List]:
    """Finite-dimensional Y~ containing Y with nondegenerate restricted form.

    Follows the inductive construction: split off a radical vector u of the
    restriction, adjoin x with (u, x) = 1, correct the remaining vectors so
    that the new pair is an orthogonal summand, and repeat.
    """
    n = len(G)

    def ip(a, b):
        return linalg.dot(a, linalg.matvec(G, b))

    Y = [list(v) for v in Y]
    ech = linalg.Echelon()
    basisY = []
    for v in Y:
        if ech.add({k: x for k, x in enumerate(v) if x != 0}):
            basisY.append(v)
    if not basisY:
        return []
    gramY = [[ip(a, b) for b in basisY] for a in basisY]
    ker = linalg.kernel(gramY, len(basisY))
    us = [[sum((c * v[k] for c, v in zip(kv, basisY)), ZERO) for k in range(n)] for kv in ker]
    # complement of the radical inside Y, chosen greedily from Y's basis
    e2 = linalg.Echelon()
    for u in us:
        e2.add({k: x for k, x in enumerate(u) if x != 0})
    ys = [v for v in basisY if e2.add({k: x for k, x in enumerate(v) if x != 0})]
    while us:
        u1 = us[0]
        k = next((k for k in range(n) if ip(u1, [ONE if j == k else ZERO for j in range(n)]) != 0), None)
        if k is None:
            raise ValueError("ambient form is degenerate: no x with (u, x) = 1")
        ek = [ONE if j == k else ZERO for j in range(n)]
        x1 = [c / ip(u1, ek) for c in ek]
        ys = [[a - ip(y, x1) * b for a, b in zip(y, u1)] for y in ys] + [u1, x1]
        us = [[a - ip(x1, u) * b for a, b in zip(u, u1)] for u in us[1:]]
    return ys


def is_nondegenerate(G, vectors) -> bool:
    if not vectors:
        return True
    m = [[linalg.dot(a, linalg.matvec(G, b)) for b in vectors] for a in vectors]
    return linalg.rank(m) == len(vectors)


def full_subsystem(Q: QuotientSystem, M: Sequence[QVec]) -> Tuple[List[QVec], CheckReport]:
    """(span_Q M) intersected with R-bar^x."""
    M = [tuple(m) for m in M]
    if not M:
        return [], conclude("full-subsystem", [], 1, 0, notes=["M is empty"])
    for m in M:
        if m not in Q.nonzero:
            raise ValueError("M must consist of nonzero quotient roots")
    ech = linalg.Echelon()
    for m in M:
        ech.add({k: x for k, x in enumerate(m) if x != 0})
    sub = [r for r in Q.nonzero if ech.contains({k: x for k, x in enumerate(r) if x != 0})]
    fails = []
    connected = len(_components(M, Q.ip)) == 1
    if connected and len(_components(sub, Q.ip)) != 1:
        fails.append({"subsystem": [enc_vec(r) for r in sub], "reason": "not irreducible"})
    notes = [f"|subsystem| = {len(sub)}"]
    return sub, conclude("full-subsystem", fails, 1, 0, notes=notes)


def check_lears(roots: Sequence[Sequence], form: Sequence[Sequence],
                decides: Optional[Callable] = None, window=None) -> CheckReport:
    """The four LEARS axioms plus the |2(b,a)/(a,a)| <= 4 bound, on a finite set."""
    rs = [tuple(r) for r in roots]
    rset = set(rs)

    def ip(a, b):
        return linalg.dot(a, linalg.matvec(form, b))

    fails = []
    decided = undecided = 0
    for a in rs:
        decided += 1
        if ip(a, a) == 0:
            fails.append({"axiom": 1, "root": enc_vec(a)})
    aniso = [a for a in rs if ip(a, a) != 0]
    for a in aniso:
        na = ip(a, a)
        for b in rs:
            c = 2 * ip(a, b) / na
            decided += 1
            if not is_rational(c) or c.denominator != 1:
                fails.append({"axiom": 2, "alpha": enc_vec(a), "beta": enc_vec(b), "value": enc(c)})
                continue
            if abs(c) > 4:
                fails.append({"axiom": "bound", "alpha": enc_vec(a), "beta": enc_vec(b), "value": enc(c)})
            s = tuple(x - c * y for x, y in zip(b, a))
            if s in rset:
                continue
            if decides is None or decides(s):
                fails.append({"axiom": 3, "alpha": enc_vec(a), "beta": enc_vec(b), "image": enc_vec(s)})
            else:
                decided -= 1
                undecided += 1
    if aniso and len(_components(aniso, ip)) > 1:
        fails.append({"axiom": 4, "components": len(_components(aniso, ip))})
    return conclude("lears", fails, decided, undecided, window or {})


def kac_suite(D: RootDatum) -> dict:
    """Lattice, radical, PSD certificate, quotient and null rank for a scaled datum."""
    L = build_lattice(D)
    rad = radical_and_nullity(L)
    Q, qrep = quotient_root_system(L, D, rad)
    nr = null_rank(D, L)
    return {"lattice": L, "radical": rad, "quotient": Q, "quotient_report": qrep, "null_rank": nr}
