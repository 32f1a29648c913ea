"""Example factory: split simple matrix algebras, loop EALAs, null systems, towers.

Every builder returns a :class:`~leala.algebra.GradedAlgebra` whose ``window``
dict records the builder name, its parameters and the grade bounds under which
it was materialized.  Brackets that would leave the window are recorded as
overflow, never silently dropped.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from . import linalg
from .algebra import (AlgebraBuilder, GradedAlgebra, MalformedAlgebra, ONE, ZERO,
                      enc, enc_vec)
from .scalars import Scalar, as_scalar, format_scalar, parse_scalar, q_linear_independent

Mat = Dict[Tuple[int, int], Fraction]


class BuilderRefusal(ValueError):
    """Raised when parameters violate a hypothesis of the construction."""


# ---------------------------------------------------------------------------
# matrices


def mat_mul(x: Mat, y: Mat) -> Mat:
    out: Mat = {}
    rows: Dict[int, List[Tuple[int, Fraction]]] = {}
    for (a, b), v in y.items():
        rows.setdefault(a, []).append((b, v))
    for (a, b), v in x.items():
        for c, w in rows.get(b, ()):
            s = out.get((a, c), ZERO) + v * w
            if s == 0:
                out.pop((a, c), None)
            else:
                out[(a, c)] = s
    return out


def mat_add(x: Mat, y: Mat, c=ONE) -> Mat:
    return linalg.sp_add(x, y, c)


def commutator(x: Mat, y: Mat) -> Mat:
    return mat_add(mat_mul(x, y), mat_mul(y, x), -ONE)


def trace(x: Mat) -> Fraction:
    return sum((v for (a, b), v in x.items() if a == b), ZERO)


def transpose(x: Mat) -> Mat:
    return {(b, a): v for (a, b), v in x.items()}


# ---------------------------------------------------------------------------
# split simple algebras


@dataclass(frozen=True)
class SimpleType:
    series: str
    rank: int

    def __post_init__(self):
        if self.series not in "ABCD" or len(self.series) != 1:
            raise BuilderRefusal(f"unknown series {self.series!r}")
        if self.rank < 1 or (self.series == "D" and self.rank < 2):
            raise BuilderRefusal(f"rank {self.rank} too small for type {self.series}")

    @classmethod
    def parse(cls, text: str) -> "SimpleType":
        text = text.strip().upper()
        return cls(text[0], int(text[1:]))

    @property
    def label(self) -> str:
        return f"{self.series}{self.rank}"

    @property
    def size(self) -> int:
        """Size of the defining matrices."""
        n = self.rank
        return {"A": n + 1, "B": 2 * n + 1, "C": 2 * n, "D": 2 * n}[self.series]

    @property
    def killing_over_trace(self) -> int:
        """kappa = c * tr(xy) on the defining representation."""
        N = self.size
        return {"A": 2 * N, "B": N - 2, "C": N + 2, "D": N - 2}[self.series]


def s_matrix(t: SimpleType) -> Mat:
    """The Gram matrix s with sx = -x^T s defining B, C, D."""
    n = t.rank
    s: Mat = {}
    for i in range(n):
        if t.series == "C":
            s[(i, n + i)] = ONE
            s[(n + i, i)] = -ONE
        else:
            s[(i, n + i)] = ONE
            s[(n + i, i)] = ONE
    if t.series == "B":
        s[(2 * n, 2 * n)] = ONE
    return s


def _eps(t: SimpleType, a: int) -> Tuple[int, ...]:
    n = t.rank
    if t.series == "A":
        return tuple(1 if k == a else 0 for k in range(n + 1))
    v = [0] * n
    if a < n:
        v[a] = 1
    elif a < 2 * n:
        v[a - n] = -1
    return tuple(v)


def weight_name(w: Sequence[int]) -> str:
    toks = []
    for i, x in enumerate(w):
        toks += [("+" if x > 0 else "-") + str(i + 1)] * abs(x)
    return "x[" + "".join(toks) + "]"


@dataclass
class MatrixRealization:
    """Eigenbasis of a matrix Lie algebra with a diagonal Cartan."""

    type: SimpleType
    names: List[str]
    mats: List[Mat]
    grades: List[Tuple[int, ...]]
    cartan: List[int]

    def __post_init__(self):
        self.index = {n: i for i, n in enumerate(self.names)}
        self._groups: Dict[Tuple[int, ...], List[int]] = {}
        for i, g in enumerate(self.grades):
            self._groups.setdefault(g, []).append(i)
        self._solvers = {}

    def grade_of(self, m: Mat) -> Optional[Tuple[int, ...]]:
        gs = {tuple(x - y for x, y in zip(_eps(self.type, a), _eps(self.type, b))) for (a, b) in m}
        if len(gs) > 1:
            raise MalformedAlgebra("matrix is not weight-homogeneous")
        return gs.pop() if gs else None

    def decompose(self, m: Mat) -> Dict[int, Fraction]:
        """Coordinates of a homogeneous-or-mixed matrix in the basis."""
        out: Dict[int, Fraction] = {}
        parts: Dict[Tuple[int, ...], Mat] = {}
        for (a, b), v in m.items():
            g = tuple(x - y for x, y in zip(_eps(self.type, a), _eps(self.type, b)))
            parts.setdefault(g, {})[(a, b)] = v
        for g, part in parts.items():
            idx = self._groups.get(g)
            if idx is None:
                raise MalformedAlgebra("matrix leaves the algebra")
            keys = sorted(set(k for i in idx for k in self.mats[i]) | set(part))
            cols = [[self.mats[i].get(k, ZERO) for i in idx] for k in keys]
            sol = linalg.solve(cols, [part.get(k, ZERO) for k in keys])
            if sol is None:
                raise MalformedAlgebra("matrix is not in the span of the basis")
            for i, c in zip(idx, sol):
                if c != 0:
                    out[i] = c
        return out


def realization(t: SimpleType) -> MatrixRealization:
    n, N = t.rank, t.size
    names, mats, grades, cartan = [], [], [], []

    def add(name, m, grade, is_cartan=False):
        if is_cartan:
            cartan.append(len(names))
        names.append(name)
        mats.append(m)
        grades.append(tuple(grade))

    if t.series == "A":
        zero = (0,) * N
        for i in range(n):
            add(f"h[{i + 1}]", {(i, i): ONE, (i + 1, i + 1): -ONE}, zero, True)
        pairs = sorted(((i, j) for i in range(N) for j in range(N) if i < j),
                       key=lambda p: (p[1] - p[0], p[0]))
        for i, j in pairs:
            for a, b in ((i, j), (j, i)):
                g = tuple(x - y for x, y in zip(_eps(t, a), _eps(t, b)))
                add(f"e[{a + 1},{b + 1}]", {(a, b): ONE}, g)
        return MatrixRealization(t, names, mats, grades, cartan)

    s = s_matrix(t)
    zero = (0,) * n
    for i in range(n):
        h = {(i, i): ONE, (n + i, n + i): -ONE}
        if mat_add(mat_mul(s, h), mat_mul(transpose(h), s)):
            raise MalformedAlgebra("diagonal Cartan element violates sx = -x^T s")
        add(f"h[{i + 1}]", h, zero, True)
    groups: Dict[Tuple[int, ...], List[Tuple[int, int]]] = {}
    for a in range(N):
        for b in range(N):
            g = tuple(x - y for x, y in zip(_eps(t, a), _eps(t, b)))
            if any(g):
                groups.setdefault(g, []).append((a, b))
    pos = sorted((g for g in groups if next(x for x in g if x) > 0),
                 key=lambda g: (sum(abs(x) for x in g), tuple(-abs(x) for x in g), tuple(-x for x in g)))
    for p in pos:
        for g in (p, tuple(-x for x in p)):
            units = groups[g]
            # equations: entries of s x + x^T s, linear in the unit coefficients
            eqs: Dict[Tuple[int, int], Dict[int, Fraction]] = {}
            for k, u in enumerate(units):
                e = {u: ONE}
                for key, v in mat_add(mat_mul(s, e), mat_mul(transpose(e), s)).items():
                    eqs.setdefault(key, {})[k] = v
            for vec in linalg.sparse_kernel(list(eqs.values()), list(range(len(units)))):
                add(weight_name(g), {units[k]: v for k, v in vec.items()}, g)
    if len(names) != len(set(names)):
        raise MalformedAlgebra("root space of dimension > 1 in a split simple algebra")
    return MatrixRealization(t, names, mats, grades, cartan)


def _add_matrix_brackets(b: AlgebraBuilder, R: MatrixRealization, prefix="", suffix=""):
    names = [prefix + nm + suffix for nm in R.names]
    for i, j in itertools.combinations(range(len(R.names)), 2):
        m = commutator(R.mats[i], R.mats[j])
        if m:
            b.set_bracket(names[i], names[j], {names[k]: v for k, v in R.decompose(m).items()})


def build_split_simple(t, u: Scalar = 1) -> GradedAlgebra:
    """Matrix realization with diagonal Cartan and the form ``u * tr(xy)``."""
    if isinstance(t, str):
        t = SimpleType.parse(t)
    R = realization(t)
    b = AlgebraBuilder({"builder": "split", "type": t.label, "form": "trace",
                        "form_scale": format_scalar(as_scalar(u)),
                        "killing_over_trace": t.killing_over_trace})
    for k, nm in enumerate(R.names):
        b.add(nm, R.grades[k], k in R.cartan)
    _add_matrix_brackets(b, R)
    u = as_scalar(u)
    for i in range(len(R.names)):
        for j in range(i, len(R.names)):
            v = trace(mat_mul(R.mats[i], R.mats[j]))
            if v:
                b.set_form(R.names[i], R.names[j], u * v)
    return b.build()


# ---------------------------------------------------------------------------
# loop EALAs


@dataclass(frozen=True)
class GroupDatum:
    """Lambda = Z^k with phi given on the standard basis, materialized on a box."""

    phi_values: Tuple[Scalar, ...]
    window: int

    def __post_init__(self):
        object.__setattr__(self, "phi_values", tuple(as_scalar(x) for x in self.phi_values))
        if self.window < 0:
            raise BuilderRefusal("window must be nonnegative")

    @property
    def generators(self) -> int:
        return len(self.phi_values)

    def phi(self, lam: Sequence[int]) -> Scalar:
        return sum((x * p for x, p in zip(lam, self.phi_values)), ZERO)

    @property
    def injective(self) -> bool:
        return q_linear_independent(self.phi_values)

    def box(self) -> List[Tuple[int, ...]]:
        r = range(-self.window, self.window + 1)
        pts = list(itertools.product(r, repeat=self.generators))
        return sorted(pts, key=_lambda_key)

    def in_box(self, lam) -> bool:
        return all(abs(x) <= self.window for x in lam)


def _lambda_key(lam):
    return (sum(abs(x) for x in lam), tuple((-abs(x), x < 0) for x in lam))


def _lam_name(lam) -> str:
    return ",".join(str(x) for x in lam)


def build_loop_eala(g, group: GroupDatum, allow_dependent: bool = False) -> GradedAlgebra:
    """g (x) F[Lambda] + Fc + Fd_phi with the trace form in place of the Killing form.

    Basis order: slices lambda = 0, e1, -e1, ... ; in each slice the Cartan
    type symbols, then root vectors.  ``allow_dependent`` lets negative
    controls build a non-injective phi (the result then fails (A1)).
    """
    if isinstance(g, str):
        g = SimpleType.parse(g)
    if group.generators < 1:
        raise BuilderRefusal("Lambda needs at least one generator")
    if not allow_dependent and not group.injective:
        raise BuilderRefusal("phi-values are Q-linearly dependent: phi is not injective, "
                             "so H is not self-centralizing")
    R = realization(g)
    base = build_split_simple(g)
    k = group.generators
    win = {"builder": "loop", "type": g.label,
           "phi": [format_scalar(x) for x in group.phi_values],
           "window": group.window, "form": "trace",
           "killing_over_trace": g.killing_over_trace,
           "bounds": [[-group.window, group.window]] * k + [None] * len(R.grades[0]),
           "free_exact": True}
    if group.window == 0:
        win["degenerate_slice"] = True
    if not group.injective:
        win["phi_injective"] = False
    b = AlgebraBuilder(win)
    lams = group.box()
    zero = (0,) * k

    def sym(i, lam):
        return f"{R.names[i]}|{_lam_name(lam)}"

    order = R.cartan + [i for i in range(len(R.names)) if i not in R.cartan]
    for lam in lams:
        for i in order:
            b.add(sym(i, lam), lam + R.grades[i], cartan=(lam == zero and i in R.cartan))
        if lam == zero:
            gz = (0,) * (k + len(R.grades[0]))
            b.add("c", gz, cartan=True)
            b.add("d", gz, cartan=True)
    b.set_form("c", "d", 1)
    n = len(R.names)
    for lam in lams:
        p = group.phi(lam)
        for i in range(n):
            if p != 0:
                b.set_bracket("d", sym(i, lam), {sym(i, lam): p})
    for lam, mu in itertools.product(lams, repeat=2):
        s = tuple(x + y for x, y in zip(lam, mu))
        p = group.phi(lam)
        for i in range(n):
            for j in range(n):
                x, y = sym(i, lam), sym(j, mu)
                if b.index[x] > b.index[y]:
                    continue
                r = base.bracket_basis(base.index[R.names[i]], base.index[R.names[j]])
                f = base.form_basis(base.index[R.names[i]], base.index[R.names[j]])
                if not group.in_box(s):
                    if r:
                        b.mark_overflow(x, y)
                    continue
                res = {sym(R.index[base.symbols[kk]], s): v for kk, v in r.items()}
                if s == zero and f != 0 and p != 0:
                    res["c"] = p * f
                if res and x != y:
                    b.set_bracket(x, y, res)
                if s == zero and f != 0:
                    b.set_form(x, y, f)
    return b.build()


# ---------------------------------------------------------------------------
# null systems


def _as_lams(S) -> List[Tuple[int, ...]]:
    out = []
    for s in S:
        t = tuple(s) if isinstance(s, (tuple, list)) else (int(s),)
        if t not in out:
            out.append(t)
    return out


def build_heisenberg_null(S=(0, 1, -1), dims=1, phi_values=(1,)) -> GradedAlgebra:
    """Heisenberg-type null system N = sum N_delta with N_0 = Fc + Fd hyperbolic."""
    lams = _as_lams(S)
    k = len(lams[0]) if lams else 1
    zero = (0,) * k
    if zero not in lams:
        raise BuilderRefusal("S must contain 0")
    for lam in lams:
        if tuple(-x for x in lam) not in lams:
            raise BuilderRefusal("S must be symmetric: delta in S requires -delta in S")
    group = GroupDatum(tuple(phi_values), 0)
    if group.generators != k:
        raise BuilderRefusal("phi needs one value per coordinate of Lambda")
    if not group.injective:
        raise BuilderRefusal("phi must be injective")
    dim = (lambda lam: dims) if isinstance(dims, int) else (lambda lam: dims[lam if len(lam) > 1 else lam[0]])
    for lam in lams:
        if lam != zero and dim(lam) != dim(tuple(-x for x in lam)):
            raise BuilderRefusal("dims(delta) must equal dims(-delta)")
        if lam != zero and dim(lam) < 1:
            raise BuilderRefusal("dims must be positive")
    b = AlgebraBuilder({"builder": "heisenberg", "S": [list(l) for l in lams],
                        "dims": dims if isinstance(dims, int) else {str(kk): v for kk, v in dims.items()},
                        "phi": [format_scalar(x) for x in group.phi_values]})
    b.add("c", zero, cartan=True)
    b.add("d", zero, cartan=True)
    b.set_form("c", "d", 1)
    nz = sorted((l for l in lams if l != zero), key=_lambda_key)

    def sym(lam, j):
        return f"x[{_lam_name(lam)};{j}]"

    for lam in nz:
        for j in range(1, dim(lam) + 1):
            b.add(sym(lam, j), lam)
    for lam in nz:
        p = group.phi(lam)
        for j in range(1, dim(lam) + 1):
            b.set_bracket("d", sym(lam, j), {sym(lam, j): p})
            neg = tuple(-x for x in lam)
            if b.index[sym(lam, j)] < b.index[sym(neg, j)]:
                b.set_form(sym(lam, j), sym(neg, j), 1)
                b.set_bracket(sym(lam, j), sym(neg, j), {"c": p})
    return b.build()


def build_abelian(gram: Sequence[Sequence], names: Optional[Sequence[str]] = None) -> GradedAlgebra:
    """L = H abelian with a nondegenerate form; the trivial null system."""
    n = len(gram)
    names = list(names or [f"h{i + 1}" for i in range(n)])
    b = AlgebraBuilder({"builder": "abelian"})
    for nm in names:
        b.add(nm, (), cartan=True)
    for i in range(n):
        for j in range(i, n):
            b.set_form(names[i], names[j], gram[i][j])
    return b.build()


def _perp_basis(alpha: Sequence[int], n: int) -> List[List[Fraction]]:
    """Basis of {d in F^n : d . alpha = 0} (rref kernel, so alpha and -alpha agree)."""
    if not any(alpha):
        return linalg.identity(n)
    return linalg.kernel([[Fraction(x) for x in alpha]], n)


def _complement_index(alpha: Sequence[int]) -> int:
    return next(i for i, x in enumerate(alpha) if x)


def build_witt_null(n: int = 2, window: int = 2, cocycle: str = "trivial") -> GradedAlgebra:
    """N = W' + Y' graded by Z^n, materialized on the box |alpha_i| <= window.

    W'_alpha = t_alpha (alpha-perp) with basis from the rref kernel.  Y'_alpha
    consists of functionals restricted to W'_{-alpha}; its basis is dual to the
    basis of alpha-perp, so the pairing with W'_{-alpha} is the identity.
    """
    if n < 2:
        raise BuilderRefusal("n >= 2 is required, otherwise W'_alpha = 0 for alpha != 0")
    if cocycle not in ("trivial", "moody_rao"):
        raise BuilderRefusal(f"unknown cocycle {cocycle!r}")
    group = GroupDatum(tuple([ONE] * n), window)
    box = [lam for lam in itertools.product(range(-window, window + 1), repeat=n)]
    box.sort(key=_lambda_key)
    zero = (0,) * n
    b = AlgebraBuilder({"builder": "witt", "n": n, "window": window, "cocycle": cocycle,
                        "bounds": [[-window, window]] * n})
    perp = {a: _perp_basis(a, n) for a in box}

    def wsym(a, j):
        return f"w[{_lam_name(a)};{j + 1}]"

    def ysym(a, j):
        return f"y[{_lam_name(a)};{j + 1}]"

    for a in box:
        for j in range(len(perp[a])):
            b.add(wsym(a, j), a, cartan=(a == zero))
    for a in box:
        for j in range(len(perp[a])):
            b.add(ysym(a, j), a, cartan=(a == zero))

    def dot(u, v):
        return sum((Fraction(x) * y for x, y in zip(u, v)), ZERO)

    def lift(a, j):
        """Full functional c in F^n restricting to the j-th dual basis vector on alpha-perp."""
        P = perp[a] if a in perp else _perp_basis(a, n)
        rows = [list(p) for p in P]
        rhs = [ONE if k == j else ZERO for k in range(len(P))]
        if any(a):
            i0 = _complement_index(a)
            rows.append([ONE if k == i0 else ZERO for k in range(n)])
            rhs.append(ZERO)
        return linalg.solve(rows, rhs)

    lifts = {(a, j): lift(a, j) for a in box for j in range(len(perp[a]))}

    def w_coords(target, dvec):
        P = perp.get(target) or _perp_basis(target, n)
        sol = linalg.solve(linalg.transpose(P), list(dvec))
        if sol is None:
            raise MalformedAlgebra("W' bracket left W'")
        return sol

    def y_coords(target, func):
        """Coordinates of the functional ``func`` (vector in F^n) in the basis of Y'_target."""
        P = perp.get(target) or _perp_basis(target, n)
        return [dot(func, p) for p in P]

    def emit(x, y, target, wvec, yfunc):
        res = {}
        if wvec is not None and any(v != 0 for v in wvec):
            for j, c in enumerate(w_coords(target, wvec)):
                if c != 0:
                    res[wsym(target, j)] = c
        if yfunc is not None:
            for j, c in enumerate(y_coords(target, yfunc)):
                if c != 0:
                    res[ysym(target, j)] = c
        if not res:
            return
        if target in perp:
            b.set_bracket(x, y, res)
        else:
            b.mark_overflow(x, y)

    for a, c_ in itertools.product(box, repeat=2):
        tgt = tuple(x + y for x, y in zip(a, c_))
        for i, d in enumerate(perp[a]):
            # W' x W'
            for j, d2 in enumerate(perp[c_]):
                x, y = wsym(a, i), wsym(c_, j)
                if b.index[x] >= b.index[y]:
                    continue
                wvec = [dot(d, c_) * q - dot(d2, a) * p for p, q in zip(d, d2)]
                yfunc = None
                if cocycle == "moody_rao":
                    coef = dot(d2, a) * dot(d, c_)
                    if coef != 0:
                        yfunc = [coef * (s - t) for s, t in zip(a, c_)]
                emit(x, y, tgt, wvec, yfunc)
            # W' x Y'
            for j in range(len(perp[c_])):
                x, y = wsym(a, i), ysym(c_, j)
                cf = lifts[(c_, j)]
                cd = dot(cf, d)
                func = [cd * s + dot(d, c_) * t for s, t in zip(a, cf)]
                if b.index[x] < b.index[y]:
                    emit(x, y, tgt, None, func)
                else:
                    emit(y, x, tgt, None, [-v for v in func])
    # form: B(t_a c, t_-a d) = c(d)
    for a in box:
        neg = tuple(-x for x in a)
        for i in range(len(perp[a])):
            b.set_form(ysym(a, i), wsym(neg, i), 1)
    return b.build()


def witt_c_alpha(A: GradedAlgebra, alpha: Sequence[int]) -> Dict[int, Fraction]:
    """The central element c_alpha = sum alpha_i delta_i of Y_0 as a vector."""
    n = A.window["n"]
    zero = ",".join(["0"] * n)
    return {A.index[f"y[{zero};{i + 1}]"]: Fraction(a) for i, a in enumerate(alpha) if a}


# ---------------------------------------------------------------------------
# example with a non-tame centralizer


def build_indecomposable_not_tame(g="A1", window: int = 2, S=(0, 1, -1), dims: int = 1) -> GradedAlgebra:
    """Affine algebra (g loop with c, d) plus a Heisenberg null part commuting with the loop part."""
    if isinstance(g, str):
        g = SimpleType.parse(g)
    lams = _as_lams(S)
    if (0,) not in lams:
        raise BuilderRefusal("S must contain 0")
    for lam in lams:
        if (-lam[0],) not in lams:
            raise BuilderRefusal("S must be symmetric")
        if abs(lam[0]) > window:
            raise BuilderRefusal("S must lie inside the window")
    A = build_loop_eala(g, GroupDatum((ONE,), window))
    R = realization(g)
    b = AlgebraBuilder(dict(A.window, builder="not-tame", S=[l[0] for l in lams], dims=dims))
    ne = len(R.grades[0])
    for s, gr in zip(A.symbols, A.grades):
        b.add(s, gr, cartan=(A.index[s] in A.cartan))
    nz = sorted((l[0] for l in lams if l[0] != 0), key=lambda m: (abs(m), m < 0))

    def sym(m, j):
        return f"n[{m};{j}]"

    for m in nz:
        for j in range(1, dims + 1):
            b.add(sym(m, j), (m,) + (0,) * ne)
    for (i, j), v in A.structure.items():
        b.set_bracket(A.symbols[i], A.symbols[j], {A.symbols[k]: x for k, x in v.items()})
    for (i, j) in A.overflow:
        b.mark_overflow(A.symbols[i], A.symbols[j])
    for (i, j), v in A.gram.items():
        b.set_form(A.symbols[i], A.symbols[j], v)
    for m in nz:
        for j in range(1, dims + 1):
            b.set_bracket("d", sym(m, j), {sym(m, j): m})
            if m > 0:
                b.set_form(sym(m, j), sym(-m, j), 1)
                b.set_bracket(sym(m, j), sym(-m, j), {"c": m})
    return b.build()


# ---------------------------------------------------------------------------
# nullity-0 towers


@dataclass(frozen=True)
class DiagonalPattern:
    """Diagonal entries a_1, a_2, ... : an explicit head followed by a tail rule.

    Tail rules: ("affine", p, q) gives a_i = p*i + q, ("periodic", values)
    cycles, ("constant", c).  For types B, C, D the entry a_i is used for
    the pair (i, I+i) as a_i and -a_i, and the odd B index carries 0.
    """

    head: Tuple[Scalar, ...] = ()
    tail: tuple = ("constant", 0)

    def entry(self, i: int) -> Scalar:
        """a_i for i >= 1."""
        if i <= len(self.head):
            return as_scalar(self.head[i - 1])
        kind = self.tail[0]
        if kind == "affine":
            return as_scalar(self.tail[1]) * i + as_scalar(self.tail[2])
        if kind == "periodic":
            vals = self.tail[1]
            return as_scalar(vals[(i - len(self.head) - 1) % len(vals)])
        if kind == "constant":
            return as_scalar(self.tail[1])
        raise BuilderRefusal(f"unknown tail rule {kind!r}")

    def tail_constant(self) -> bool:
        kind = self.tail[0]
        if kind == "affine":
            return as_scalar(self.tail[1]) == 0
        if kind == "periodic":
            return len({as_scalar(v) for v in self.tail[1]}) == 1
        return True

    def eventually_zero(self) -> bool:
        kind = self.tail[0]
        if kind == "affine":
            return as_scalar(self.tail[1]) == 0 and as_scalar(self.tail[2]) == 0
        if kind == "periodic":
            return all(as_scalar(v) == 0 for v in self.tail[1])
        return as_scalar(self.tail[1]) == 0

    def to_json(self):
        tail = [self.tail[0]] + [[format_scalar(as_scalar(v)) for v in x] if isinstance(x, (list, tuple))
                                 else format_scalar(as_scalar(x)) for x in self.tail[1:]]
        return {"head": [format_scalar(as_scalar(x)) for x in self.head], "tail": tail}

    @classmethod
    def from_json(cls, doc: dict) -> "DiagonalPattern":
        kind, *args = doc["tail"]
        if kind == "periodic":
            tail = (kind, tuple(parse_scalar(x) for x in args[0]))
        else:
            tail = (kind, *(parse_scalar(x) for x in args))
        return cls(tuple(parse_scalar(x) for x in doc["head"]), tail)


EX_6_2_1 = DiagonalPattern((), ("affine", 1, 0))
EX_6_2_2 = DiagonalPattern((), ("constant", 1))
ALMOST_SCALAR = DiagonalPattern((2, 0), ("constant", 1))
ZERO_PATTERN = DiagonalPattern((), ("constant", 0))


def validate_pattern(series: str, p: DiagonalPattern):
    """Refuse patterns that cannot give an outer derivation in the limit."""
    if series == "A":
        if p.tail_constant():
            raise BuilderRefusal("almost scalar diagonal on sl-type: A cannot be an almost scalar "
                                 "matrix, since ad A is then inner")
    elif p.eventually_zero():
        raise BuilderRefusal("diagonal pattern has only finitely many nonzero entries, "
                             "so its adjoint action is inner")


def pattern_matrix(t: SimpleType, p: DiagonalPattern) -> Mat:
    n = t.rank
    m: Mat = {}
    if t.series == "A":
        for i in range(n + 1):
            v = p.entry(i + 1)
            if v != 0:
                m[(i, i)] = v
        return m
    for i in range(n):
        v = p.entry(i + 1)
        if v != 0:
            m[(i, i)] = v
            m[(n + i, n + i)] = -v
    return m


@dataclass
class TowerLevel:
    type: SimpleType
    algebra: GradedAlgebra
    derivations: List[Mat]
    d_symbols: List[str]
    z_symbols: List[str]


@dataclass
class Tower:
    series: str
    patterns: List[DiagonalPattern]
    levels: List[TowerLevel] = field(default_factory=list)
    validated: bool = True


def build_nullity_zero_level(t: SimpleType, patterns: Sequence[DiagonalPattern], z_dim: int = 0,
                             u: Scalar = 1, psi: Optional[Sequence[Sequence]] = None) -> TowerLevel:
    """g_n + D + Z with the form u*tr + psi and B(d, h) = u*tr(A h)."""
    u = as_scalar(u)
    if u == 0:
        raise BuilderRefusal("u must be nonzero")
    nd = len(patterns)
    m = nd + z_dim
    psi = [[as_scalar(x) for x in row] for row in (psi or [[ZERO] * m for _ in range(m)])]
    if len(psi) != m or any(len(r) != m for r in psi):
        raise BuilderRefusal("psi must be a square matrix on D + Z")
    for i in range(m):
        for j in range(m):
            if psi[i][j] != psi[j][i]:
                raise BuilderRefusal("psi must be symmetric")
    if z_dim:
        # Z cap rad psi = 0: no nonzero z (supported on Z) with psi(z, .) = 0
        rows = [[psi[r][nd + c] for c in range(z_dim)] for r in range(m)]
        if linalg.kernel(rows, z_dim):
            raise BuilderRefusal("Z meets the radical of psi; the form u*tr + psi is then degenerate "
                                 "(it is nondegenerate exactly when Z cap rad psi = 0)")
    R = realization(t)
    base = build_split_simple(t, u)
    mats = [pattern_matrix(t, p) for p in patterns]
    dsyms = [f"d{k + 1}" for k in range(nd)]
    zsyms = [f"z{k + 1}" for k in range(z_dim)]
    win = {"builder": "nullity0", "type": t.label, "u": format_scalar(u),
           "patterns": [p.to_json() for p in patterns], "z_dim": z_dim,
           "psi": [[format_scalar(x) for x in r] for r in psi]}
    b = AlgebraBuilder(win)
    for k, nm in enumerate(R.names):
        b.add(nm, R.grades[k], k in R.cartan)
    zero = R.grades[R.cartan[0]]
    for s in dsyms + zsyms:
        b.add(s, zero, cartan=True)
    for (i, j), v in base.structure.items():
        b.set_bracket(base.symbols[i], base.symbols[j], {base.symbols[k]: x for k, x in v.items()})
    for (i, j), v in base.gram.items():
        b.set_form(base.symbols[i], base.symbols[j], v)
    for s, A in zip(dsyms, mats):
        for k, nm in enumerate(R.names):
            c = commutator(A, R.mats[k])
            if c:
                b.set_bracket(s, nm, {R.names[kk]: v for kk, v in R.decompose(c).items()})
            if k in R.cartan:
                v = u * trace(mat_mul(A, R.mats[k]))
                if v:
                    b.set_form(s, nm, v)
    extra = dsyms + zsyms
    for i in range(m):
        for j in range(i, m):
            if psi[i][j] != 0:
                b.set_form(extra[i], extra[j], psi[i][j])
    return TowerLevel(t, b.build(), mats, dsyms, zsyms)


def build_nullity_zero(series: str, ranks: Sequence[int], patterns: Sequence[DiagonalPattern],
                       z_dim: int = 0, u: Scalar = 1, psi=None, validate: bool = True) -> Tower:
    """Tower of truncations g_n + D + Z over a rank ladder, names stable under inclusion."""
    if validate:
        for p in patterns:
            validate_pattern(series, p)
    tower = Tower(series, list(patterns), validated=validate)
    for r in sorted(ranks):
        tower.levels.append(build_nullity_zero_level(SimpleType(series, r), patterns, z_dim, u, psi))
    return tower


# ---------------------------------------------------------------------------
# synthetic inputs and negative controls


def direct_sum(A: GradedAlgebra, B: GradedAlgebra, tags=("1", "2")) -> GradedAlgebra:
    """Orthogonal direct sum (L1 + L2, H1 + H2, B1 perp B2)."""
    b = AlgebraBuilder({"builder": "direct-sum", "parts": [A.window, B.window]})
    ga, gb = len(A.grades[0]) if A.grades else 0, len(B.grades[0]) if B.grades else 0
    for X, tag, pre, post in ((A, tags[0], 0, gb), (B, tags[1], ga, 0)):
        for s, g in zip(X.symbols, X.grades):
            b.add(f"{s}#{tag}", (0,) * pre + tuple(g) + (0,) * post, cartan=X.index[s] in X.cartan)
    for X, tag in ((A, tags[0]), (B, tags[1])):
        for (i, j), v in X.structure.items():
            b.set_bracket(f"{X.symbols[i]}#{tag}", f"{X.symbols[j]}#{tag}",
                          {f"{X.symbols[k]}#{tag}": x for k, x in v.items()})
        for (i, j) in X.overflow:
            b.mark_overflow(f"{X.symbols[i]}#{tag}", f"{X.symbols[j]}#{tag}")
        for (i, j), v in X.gram.items():
            b.set_form(f"{X.symbols[i]}#{tag}", f"{X.symbols[j]}#{tag}", v)
    return b.build()


def with_structure(A: GradedAlgebra, pair: Tuple[str, str], result: Dict[str, object],
                   recompute_weights: bool = False) -> GradedAlgebra:
    """Copy of A with one structure constant replaced (for corrupted inputs)."""
    i, j = A.index[pair[0]], A.index[pair[1]]
    vec = {A.index[k]: as_scalar(v) for k, v in result.items() if as_scalar(v) != 0}
    if i > j:
        i, j = j, i
        vec = {k: -v for k, v in vec.items()}
    st = dict(A.structure)
    st[(i, j)] = vec
    return GradedAlgebra(A.symbols, A.grades, A.weights, A.cartan, st, A.gram, A.overflow,
                         dict(A.window, corrupted=f"bracket {pair[0]},{pair[1]}"))


def flip_sign(A: GradedAlgebra, pair: Tuple[str, str]) -> GradedAlgebra:
    """Negate one stored structure constant: the standard corrupted table."""
    i, j = A.index[pair[0]], A.index[pair[1]]
    r = A.bracket_basis(i, j)
    return with_structure(A, pair, {A.symbols[k]: -v for k, v in r.items()})


def with_form(A: GradedAlgebra, pair: Tuple[str, str], value) -> GradedAlgebra:
    i, j = sorted((A.index[pair[0]], A.index[pair[1]]))
    gram = dict(A.gram)
    gram[(i, j)] = as_scalar(value)
    return GradedAlgebra(A.symbols, A.grades, A.weights, A.cartan, A.structure, gram, A.overflow,
                         dict(A.window, corrupted=f"form {pair[0]},{pair[1]}"))


def sl2_with_extra_root_space() -> GradedAlgebra:
    """sl2 plus a second copy of L_alpha and L_-alpha (violates dim L_alpha = 1)."""
    b = AlgebraBuilder({"builder": "synthetic", "kind": "double root space"})
    b.add("h", (0,), True)
    for s, g in (("e", 1), ("f", -1), ("e2", 1), ("f2", -1)):
        b.add(s, (g,))
    b.set_bracket("h", "e", {"e": 2})
    b.set_bracket("h", "f", {"f": -2})
    b.set_bracket("h", "e2", {"e2": 2})
    b.set_bracket("h", "f2", {"f2": -2})
    b.set_bracket("e", "f", {"h": 1})
    b.set_bracket("e2", "f2", {"h": 1})
    b.set_form("h", "h", 2)
    b.set_form("e", "f", 1)
    b.set_form("e2", "f2", 1)
    return b.build()


def sl2_with_cycle() -> GradedAlgebra:
    """sl2 plus two symbols a, b with ad e cycling a -> b -> a (not locally nilpotent)."""
    A = build_split_simple("A1")
    symbols = A.symbols + ["a", "b"]
    grades = A.grades + [(0, 0), (0, 0)]
    weights = A.weights + [(Fraction(1),), (Fraction(1),)]
    ia, ib = len(A.symbols), len(A.symbols) + 1
    e = A.index["e[1,2]"]
    st = dict(A.structure)
    st[(e, ia)] = {ib: ONE}
    st[(e, ib)] = {ia: ONE}
    gram = dict(A.gram)
    gram[(ia, ib)] = ONE
    return GradedAlgebra(symbols, grades, weights, A.cartan, st, gram, (),
                         {"builder": "synthetic", "kind": "ad-cycle"})


def check_witt_identities(A: GradedAlgebra):
    """[W'_a, W'_-a] = 0 and [N_a, N_-a] = F c_a for a != 0 in the window; center = Y_0."""
    from .algebra import centralizer, conclude, span, WindowOverflow

    if A.window.get("builder") != "witt":
        raise BuilderRefusal("not a Witt-type null system")
    n, win = A.window["n"], A.window["window"]
    box = sorted(itertools.product(range(-win, win + 1), repeat=n), key=_lambda_key)
    fails, decided = [], 0
    by_grade: Dict[tuple, List[int]] = {}
    for i, g in enumerate(A.grades):
        by_grade.setdefault(tuple(g), []).append(i)
    for a in box:
        if not any(a) or a > tuple(-x for x in a):
            continue
        neg = tuple(-x for x in a)
        ca = witt_c_alpha(A, a)
        sp = span([])
        for i in by_grade[a]:
            for j in by_grade[neg]:
                r = A.bracket_basis(i, j)
                decided += 1
                if A.symbols[i][0] == "w" and A.symbols[j][0] == "w" and r:
                    fails.append({"identity": "[W'_a, W'_-a] = 0", "pair": [A.symbols[i], A.symbols[j]]})
                if r:
                    sp.add(r)
        if len(sp) != 1 or not sp.contains(ca):
            fails.append({"identity": "[N_a, N_-a] = F c_a", "alpha": list(a), "span_dim": len(sp)})
    zero = (0,) * n
    y0 = [i for i in by_grade[zero] if A.symbols[i][0] == "y"]
    Z, excluded = centralizer(A, [{i: ONE} for i in range(A.dim)])
    ZE, YE = span(Z), span([{i: ONE} for i in y0])
    decided += 1
    if len(ZE) != len(YE) or not all(ZE.contains({i: ONE}) for i in y0):
        fails.append({"identity": "center = Y_0", "center_dim": len(ZE), "y0_dim": len(YE)})
    G = [[A.form_basis(i, j) for j in range(A.dim)] for i in range(A.dim)]
    decided += 1
    if linalg.rank(G) != A.dim:
        fails.append({"identity": "B nondegenerate on the window", "rank": linalg.rank(G), "dim": A.dim})
    notes = [f"{len(excluded)} boundary symbols have brackets leaving the window"] if excluded else []
    return conclude("witt-identities", fails, decided, 0, A.window, notes)
