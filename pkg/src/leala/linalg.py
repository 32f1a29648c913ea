"""Exact linear algebra over the scalar field (Q or Q(t)).

Dense routines take lists of rows.  :class:`Echelon` keeps an incrementally
reduced basis of sparse vectors (``dict`` key -> scalar) and is the workhorse
for span, closure and membership questions on algebra elements.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Dict, Hashable, List, Optional, Sequence, Tuple

from .scalars import ZERO, ONE

Matrix = List[List]
Sparse = Dict[Hashable, object]


def zeros(m: int, n: int) -> Matrix:
    return [[ZERO] * n for _ in range(m)]


def identity(n: int) -> Matrix:
    out = zeros(n, n)
    for i in range(n):
        out[i][i] = ONE
    return out


def transpose(a: Matrix) -> Matrix:
    return [list(col) for col in zip(*a)] if a else []


def matmul(a: Matrix, b: Matrix) -> Matrix:
    bt = transpose(b)
    return [[sum((x * y for x, y in zip(row, col)), ZERO) for col in bt] for row in a]


def matvec(a: Matrix, v: Sequence) -> list:
    return [sum((x * y for x, y in zip(row, v)), ZERO) for row in a]


def dot(u: Sequence, v: Sequence):
    return sum((x * y for x, y in zip(u, v)), ZERO)


def rref(rows: Sequence[Sequence]) -> Tuple[Matrix, List[int]]:
    """Reduced row echelon form and pivot columns."""
    a = [list(r) for r in rows]
    if not a:
        return [], []
    m, n = len(a), len(a[0])
    pivots: List[int] = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, m) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = ONE / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(m):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return a[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1])


def kernel(rows: Sequence[Sequence], ncols: Optional[int] = None) -> Matrix:
    """Basis of {x : A x = 0}; one vector per free column, free entry 1."""
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    red, piv = rref(rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        v = [ZERO] * ncols
        v[f] = ONE
        for row, p in zip(red, piv):
            v[p] = -row[f]
        basis.append(v)
    return basis


def solve(a: Sequence[Sequence], b: Sequence) -> Optional[list]:
    """One solution of ``A x = b`` (free variables 0) or ``None``."""
    n = len(a[0]) if a else 0
    aug = [list(row) + [rhs] for row, rhs in zip(a, b)]
    red, piv = rref(aug)
    if n in piv:
        return None
    x = [ZERO] * n
    for row, p in zip(red, piv):
        x[p] = row[n]
    return x


def inverse(a: Sequence[Sequence]) -> Matrix:
    n = len(a)
    aug = [list(row) + e for row, e in zip(a, identity(n))]
    red, piv = rref(aug)
    if piv[:n] != list(range(n)) or len(piv) < n:
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in red]


def is_zero_matrix(a: Sequence[Sequence]) -> bool:
    return all(x == 0 for row in a for x in row)


# ---------------------------------------------------------------------------
# sparse vectors


def sp_add(u: Sparse, v: Sparse, c=ONE) -> Sparse:
    out = dict(u)
    for k, x in v.items():
        y = out.get(k, ZERO) + c * x
        if y == 0:
            out.pop(k, None)
        else:
            out[k] = y
    return out


def sp_scale(u: Sparse, c) -> Sparse:
    if c == 0:
        return {}
    return {k: c * x for k, x in u.items()}


class Echelon:
    """Incrementally reduced basis of a subspace of sparse vectors.

    Rows are kept fully reduced with respect to each other's pivots, so a
    vector is in the span iff it reduces to zero.  A new row pivots on its
    smallest key under ``order`` (a key function).
    """

    def __init__(self, order=None):
        self.order = order or (lambda k: k)
        self.rows: Dict[Hashable, Sparse] = {}

    def __len__(self):
        return len(self.rows)

    def reduce(self, v: Sparse) -> Sparse:
        v = {k: x for k, x in v.items() if x != 0}
        for p, row in self.rows.items():
            c = v.get(p)
            if c is not None:
                v = sp_add(v, row, -c)
        return v

    def contains(self, v: Sparse) -> bool:
        return not self.reduce(v)

    def add(self, v: Sparse) -> bool:
        """Insert ``v``; return True if the span grew."""
        r = self.reduce(v)
        if not r:
            return False
        p = min(r, key=self.order)
        r = sp_scale(r, ONE / r[p])
        for q, row in list(self.rows.items()):
            c = row.get(p)
            if c is not None:
                self.rows[q] = sp_add(row, r, -c)
        self.rows[p] = r
        return True

    def basis(self) -> List[Sparse]:
        return [self.rows[p] for p in sorted(self.rows, key=self.order)]


def sparse_kernel(rows: Sequence[Sparse], unknowns: Sequence[Hashable]) -> List[Sparse]:
    """Kernel of the linear map x -> (sum_j row[j] x_j)_rows over named unknowns."""
    idx = {u: i for i, u in enumerate(unknowns)}
    dense = []
    for r in rows:
        if r:
            v = [ZERO] * len(unknowns)
            for k, x in r.items():
                v[idx[k]] = x
            dense.append(v)
    out = []
    for vec in kernel(dense, len(unknowns)):
        out.append({unknowns[i]: x for i, x in enumerate(vec) if x != 0})
    return out


# ---------------------------------------------------------------------------
# integer lattices


def hermite_basis(rows: Sequence[Sequence[int]]) -> List[List[int]]:
    """Row-style Hermite normal form basis of the Z-span of integer rows."""
    a = [list(map(int, r)) for r in rows if any(r)]
    if not a:
        return []
    n = len(a[0])
    out: List[List[int]] = []
    col = 0
    while a and col < n:
        nz = [r for r in a if r[col] != 0]
        if not nz:
            col += 1
            continue
        # Euclid on the column
        while len(nz) > 1:
            nz.sort(key=lambda r: abs(r[col]))
            piv = nz[0]
            new = [piv]
            for r in nz[1:]:
                q = r[col] // piv[col]
                rr = [x - q * y for x, y in zip(r, piv)]
                if any(rr):
                    new.append(rr)
            rest = [r for r in a if r[col] == 0]
            a = rest + new
            nz = [r for r in a if r[col] != 0]
        piv = nz[0]
        if piv[col] < 0:
            piv = [-x for x in piv]
        out.append(piv)
        a = [r for r in a if r[col] == 0]
        col += 1
    # reduce entries above pivots
    for i, r in enumerate(out):
        p = next(j for j, x in enumerate(r) if x)
        for k in range(i):
            q = out[k][p] // r[p]
            if q:
                out[k] = [x - q * y for x, y in zip(out[k], r)]
    return out


def lcm_denominators(values) -> int:
    from math import lcm

    d = 1
    for v in values:
        d = lcm(d, Fraction(v).denominator)
    return d
