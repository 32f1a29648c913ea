"""Graded Lie algebras with a split Cartan and an invariant form, materialized on a window.

An algebra is a finite list of basis symbols, each homogeneous for an integer
grading and a simultaneous eigenvector of the Cartan part ``H``.  Elements
(``Vector``) are sparse ``dict`` maps from basis *index* to scalar; use
:meth:`GradedAlgebra.vector` / :meth:`GradedAlgebra.named` to convert from and
to symbol ids.

Structure constants are stored once per unordered pair ``(i, j)`` with
``i < j`` in basis order.  A pair whose true bracket leaves the window is
recorded in ``overflow``; asking for it raises :class:`WindowOverflow` rather
than returning a truncated (and therefore wrong) answer.
"""
from __future__ import annotations

import itertools
import json
import os
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from . import linalg
from .scalars import (ZERO, ONE, Scalar, as_scalar, common_denominator, flatten,
                      format_scalar, is_rational, parse_scalar, ScalarError)

Vector = Dict[int, Scalar]
Weight = Tuple[Scalar, ...]
Grade = Tuple[int, ...]

PASS, FAIL, INCONCLUSIVE = "pass", "fail", "inconclusive-at-window"


class WindowOverflow(LookupError):
    """A bracket whose value lies outside the materialized window."""


class MalformedAlgebra(ValueError):
    pass


# ---------------------------------------------------------------------------
# reports


@dataclass
class CheckReport:
    check: str
    verdict: str
    window: dict = field(default_factory=dict)
    witnesses: list = field(default_factory=list)
    stats: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)
    data: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.verdict == FAIL and not self.witnesses:
            raise ValueError(f"{self.check}: fail verdict without witness")

    @property
    def passed(self) -> bool:
        return self.verdict == PASS

    @property
    def failed(self) -> bool:
        return self.verdict == FAIL

    def to_json(self) -> dict:
        out = {"check": self.check, "verdict": self.verdict,
               "window": self.window, "witnesses": self.witnesses}
        if self.stats:
            out["stats"] = self.stats
        if self.notes:
            out["notes"] = self.notes
        if "result" in self.data:
            out["result"] = self.data["result"]
        return out


def conclude(name, failures, decided, inconclusive, window=None, notes=(), data=None,
             extra_witnesses=()) -> CheckReport:
    """Verdict policy shared by every checker.

    fail if any decided item failed; pass if at least one item was decided
    (undecidable items are counted, not failed); inconclusive if the window
    decided nothing at all.  An empty check (nothing to verify) passes.
    """
    if failures:
        verdict = FAIL
    elif decided or not inconclusive:
        verdict = PASS
    else:
        verdict = INCONCLUSIVE
    wit = list(failures) + list(extra_witnesses)
    return CheckReport(name, verdict, dict(window or {}), wit,
                       {"decided": decided, "inconclusive": inconclusive},
                       list(notes), dict(data or {}))


def enc(x) -> str:
    return format_scalar(x)


def enc_vec(v: Sequence) -> list:
    return [enc(x) for x in v]


# ---------------------------------------------------------------------------


class GradedAlgebra:
    """Immutable windowed Lie algebra ``(L, H, B)``.

    Parameters are normally produced by :class:`AlgebraBuilder` or
    :func:`from_json`; the constructor only validates shapes.
    """

    def __init__(self, symbols: Sequence[str], grades: Sequence[Grade],
                 weights: Sequence[Weight], cartan: Sequence[int],
                 structure: Dict[Tuple[int, int], Vector],
                 gram: Dict[Tuple[int, int], Scalar],
                 overflow: Iterable[Tuple[int, int]] = (),
                 window: Optional[dict] = None):
        self.symbols = list(symbols)
        self.index = {s: i for i, s in enumerate(self.symbols)}
        if len(self.index) != len(self.symbols):
            raise MalformedAlgebra("duplicate basis identifiers")
        self.grades = [tuple(g) for g in grades]
        self.weights = [tuple(w) for w in weights]
        self.cartan = list(cartan)
        self.structure = {k: dict(v) for k, v in structure.items() if v}
        self.overflow = set(overflow)
        self.gram = {k: v for k, v in gram.items() if v != 0}
        self.window = dict(window or {})
        for (i, j) in list(self.structure) + list(self.overflow):
            if not i < j:
                raise MalformedAlgebra("structure keys must be ordered pairs i < j")
        for (i, j) in self.gram:
            if not i <= j:
                raise MalformedAlgebra("form keys must satisfy i <= j")
        nh = len(self.cartan)
        for w in self.weights:
            if len(w) != nh:
                raise MalformedAlgebra("weight length differs from Cartan dimension")
        self._locator = None

    # basics ---------------------------------------------------------------
    @property
    def dim(self) -> int:
        return len(self.symbols)

    def __len__(self):
        return self.dim

    def vector(self, terms: Dict[str, object]) -> Vector:
        return {self.index[k]: as_scalar(v) for k, v in terms.items() if as_scalar(v) != 0}

    def named(self, v: Vector) -> Dict[str, Scalar]:
        return {self.symbols[i]: x for i, x in sorted(v.items())}

    def basis_vector(self, i) -> Vector:
        return {self.index[i] if isinstance(i, str) else i: ONE}

    @property
    def bounds(self):
        return self.window.get("bounds")

    # operations -----------------------------------------------------------
    def bracket_basis(self, i: int, j: int) -> Vector:
        if i == j:
            return {}
        if i < j:
            if (i, j) in self.overflow:
                raise WindowOverflow((self.symbols[i], self.symbols[j]))
            return self.structure.get((i, j), {})
        if (j, i) in self.overflow:
            raise WindowOverflow((self.symbols[i], self.symbols[j]))
        r = self.structure.get((j, i))
        return {k: -x for k, x in r.items()} if r else {}

    def bracket(self, x: Vector, y: Vector) -> Vector:
        out: Vector = {}
        for i, a in x.items():
            for j, b in y.items():
                if i == j:
                    continue
                r = self.bracket_basis(i, j)
                if r:
                    c = a * b
                    for k, z in r.items():
                        v = out.get(k, ZERO) + c * z
                        if v == 0:
                            out.pop(k, None)
                        else:
                            out[k] = v
        return out

    def form_basis(self, i: int, j: int) -> Scalar:
        return self.gram.get((i, j) if i <= j else (j, i), ZERO)

    def form(self, x: Vector, y: Vector) -> Scalar:
        s = ZERO
        for i, a in x.items():
            for j, b in y.items():
                g = self.form_basis(i, j)
                if g != 0:
                    s += a * b * g
        return s

    def cartan_gram(self) -> List[list]:
        return [[self.form_basis(i, j) for j in self.cartan] for i in self.cartan]

    def field_name(self) -> str:
        vals = itertools.chain(
            (x for w in self.weights for x in w),
            (x for v in self.structure.values() for x in v.values()),
            self.gram.values())
        return "Q" if all(is_rational(x) for x in vals) else "Q(t)"

    # window --------------------------------------------------------------
    def in_window_grade(self, g: Sequence) -> bool:
        b = self.bounds
        if not b:
            return True
        for x, lim in zip(g, b):
            if lim is not None and not (lim[0] <= x <= lim[1]):
                return False
        return True

    def decides_weight(self, mu: Weight) -> bool:
        """Whether membership of ``mu`` in R is settled by the window.

        True when ``mu`` would sit at a grade inside the window (so its root
        space, if any, is materialized) or when no grade at all carries that
        weight.  Uses a linear fit grade -> weight over the basis.
        """
        if self._locator is None:
            self._locator = _WindowLocator(self)
        return self._locator.decides(mu)

    # comparison ----------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, GradedAlgebra):
            return NotImplemented
        return to_json(self) == to_json(other)

    def __repr__(self):
        return f"<GradedAlgebra dim={self.dim} cartan={len(self.cartan)} window={self.window.get('builder')}>"


class _WindowLocator:
    def __init__(self, A: GradedAlgebra):
        self.trivial = not A.bounds or all(b is None for b in A.bounds)
        if self.trivial:
            return
        self.bounded = [k for k, b in enumerate(A.bounds) if b is not None]
        self.free = [k for k, b in enumerate(A.bounds) if b is None]
        self.bounds = A.bounds
        # free_exact: every grade on the unbounded coordinates that occurs in
        # the untruncated algebra already occurs in the window
        self.free_grades = (sorted({tuple(g[k] for k in self.free) for g in A.grades})
                            if A.window.get("free_exact") and self.free else None)
        allw = [x for w in A.weights for x in w]
        self.den = common_denominator(allw)
        nh = len(A.cartan)
        flat = flatten(allw, self.den) if allw else []
        self.deg = len(flat[0]) if flat else 0
        W = [sum(flat[r * nh:(r + 1) * nh], []) for r in range(A.dim)]
        G = [[Fraction(x) for x in g] for g in A.grades]
        ng = len(G[0]) if G else 0
        nw = len(W[0]) if W else 0
        aug = [g + w for g, w in zip(G, W)]
        red, piv = linalg.rref(aug)
        self.ok = all(p < ng for p in piv)
        if not self.ok:
            return
        M = linalg.zeros(ng, nw)
        for row, p in zip(red, piv):
            M[p] = row[ng:]
        self.ok = linalg.matmul(G, M) == W if W and W[0] else True
        self.M = M
        self.Mt = linalg.transpose(M) if nw else []
        self.ng = ng
        kern = linalg.kernel(self.Mt, ng) if self.Mt else linalg.identity(ng)
        self.determined = all(v[k] == 0 for v in kern for k in self.bounded)
        self.nh = nh
        if self.free_grades is not None and M and M[0]:
            self.Mt_bounded = linalg.transpose([M[k] for k in self.bounded])
            self.bounded_unique = not linalg.kernel(self.Mt_bounded, len(self.bounded))

    def decides(self, mu: Weight) -> bool:
        if self.trivial:
            return True
        if not self.ok or not self.determined:
            return False
        try:
            f = sum(flatten(list(mu), self.den, self.deg), [])
        except ScalarError:
            return True  # not a Q-combination of materialized weights' shape
        if self.free_grades is not None and self.Mt and self.bounded_unique:
            return self._decides_by_free_grades(f)
        if not self.Mt:
            x = [ZERO] * self.ng
        else:
            x = linalg.solve(self.Mt, f)
            if x is None:
                return True
        for k in self.bounded:
            v = x[k]
            if Fraction(v).denominator != 1:
                return True
            lo, hi = self.bounds[k]
            if not lo <= v <= hi:
                return False
        return True


    def _decides_by_free_grades(self, f) -> bool:
        # mu is a root only at grade (lam, eps) with eps among the known free
        # grades; for each such eps, lam is unique and must lie in the box
        for eps in self.free_grades:
            target = list(f)
            for k, e in zip(self.free, eps):
                if e:
                    target = [t - e * m for t, m in zip(target, self.M[k])]
            lam = linalg.solve(self.Mt_bounded, target)
            if lam is None or any(Fraction(v).denominator != 1 for v in lam):
                continue
            for k, v in zip(self.bounded, lam):
                lo, hi = self.bounds[k]
                if not lo <= v <= hi:
                    return False
        return True


# ---------------------------------------------------------------------------
# builder


class AlgebraBuilder:
    """Accumulates symbols, brackets and form values; computes weights on build."""

    def __init__(self, window: Optional[dict] = None):
        self.symbols: List[str] = []
        self.index: Dict[str, int] = {}
        self.grades: List[Grade] = []
        self.cartan: List[str] = []
        self.table: Dict[Tuple[int, int], Vector] = {}
        self.overflow: set = set()
        self.gram: Dict[Tuple[int, int], Scalar] = {}
        self.window = dict(window or {})

    def add(self, sid: str, grade: Sequence[int], cartan: bool = False) -> int:
        if sid in self.index:
            raise MalformedAlgebra(f"duplicate symbol {sid}")
        self.index[sid] = len(self.symbols)
        self.symbols.append(sid)
        self.grades.append(tuple(int(g) for g in grade))
        if cartan:
            self.cartan.append(sid)
        return self.index[sid]

    def __contains__(self, sid):
        return sid in self.index

    def set_bracket(self, a: str, b: str, result: Dict[str, object]):
        i, j = self.index[a], self.index[b]
        if i == j:
            if result:
                raise MalformedAlgebra("[b, b] must vanish")
            return
        vec = {self.index[k]: as_scalar(v) for k, v in result.items() if as_scalar(v) != 0}
        if i > j:
            i, j = j, i
            vec = {k: -v for k, v in vec.items()}
        if vec:
            self.table[(i, j)] = vec
        else:
            self.table.pop((i, j), None)

    def mark_overflow(self, a: str, b: str):
        i, j = sorted((self.index[a], self.index[b]))
        self.overflow.add((i, j))

    def set_form(self, a: str, b: str, value):
        i, j = sorted((self.index[a], self.index[b]))
        v = as_scalar(value)
        if v != 0:
            self.gram[(i, j)] = v
        else:
            self.gram.pop((i, j), None)

    def build(self) -> GradedAlgebra:
        cart = [self.index[c] for c in self.cartan]
        proto = GradedAlgebra(self.symbols, self.grades, [()] * len(self.symbols), [],
                              self.table, self.gram, self.overflow, self.window)
        weights = compute_weights(proto, cart)
        return GradedAlgebra(self.symbols, self.grades, weights, cart, self.table,
                             self.gram, self.overflow, self.window)


def compute_weights(A: GradedAlgebra, cartan: Sequence[int]) -> List[Weight]:
    """Eigenvalues of ad h on each basis symbol; raises if not an eigenbasis."""
    out = []
    for b in range(A.dim):
        w = []
        for h in cartan:
            try:
                r = A.bracket_basis(h, b)
            except WindowOverflow:
                raise MalformedAlgebra(f"[{A.symbols[h]}, {A.symbols[b]}] leaves the window")
            if not r:
                w.append(ZERO)
            elif set(r) == {b}:
                w.append(r[b])
            else:
                raise MalformedAlgebra(
                    f"{A.symbols[b]} is not an eigenvector of ad {A.symbols[h]}")
        out.append(tuple(w))
    return out


# ---------------------------------------------------------------------------
# checks


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("LEALA_THREADS", "1")))
    except ValueError:
        return 1


def _chunked_map(fn, items: list):
    n = _threads()
    if n == 1 or len(items) < 2 * n:
        return [fn(items)]
    size = -(-len(items) // n)
    chunks = [items[k:k + size] for k in range(0, len(items), size)]
    with ThreadPoolExecutor(max_workers=n) as ex:
        return list(ex.map(fn, chunks))


def _triples(A: GradedAlgebra, mode, seed: int = 0):
    n = A.dim
    if mode == "exhaustive":
        return list(itertools.combinations(range(n), 3))
    kind, count = mode
    if kind != "sampled":
        raise ValueError(f"unknown mode {mode!r}")
    rng = random.Random(seed)
    out = set()
    total = n * (n - 1) * (n - 2) // 6
    while len(out) < min(count, total):
        out.add(tuple(sorted(rng.sample(range(n), 3))))
    return sorted(out)


def _vec_witness(A, v):
    return {A.symbols[k]: enc(x) for k, x in sorted(v.items())}


def check_jacobi(A: GradedAlgebra, mode="exhaustive", seed: int = 0) -> CheckReport:
    """[[x,y],z] + [[y,z],x] + [[z,x],y] = 0 on basis triples."""
    triples = _triples(A, mode, seed)

    def work(chunk):
        fails, ok, skipped = [], 0, 0
        for i, j, k in chunk:
            x, y, z = {i: ONE}, {j: ONE}, {k: ONE}
            try:
                s = linalg.sp_add(linalg.sp_add(A.bracket(A.bracket(x, y), z),
                                                A.bracket(A.bracket(y, z), x)),
                                  A.bracket(A.bracket(z, x), y))
            except WindowOverflow:
                skipped += 1
                continue
            ok += 1
            if s:
                fails.append({"triple": [A.symbols[i], A.symbols[j], A.symbols[k]],
                              "jacobiator": _vec_witness(A, s)})
        return fails, ok, skipped

    fails, ok, skipped = [], 0, 0
    for f, o, s in _chunked_map(work, triples):
        fails += f
        ok += o
        skipped += s
    return conclude("jacobi", fails[:1] + fails[1:20], ok, skipped, A.window,
                    notes=[f"mode={mode if isinstance(mode, str) else 'sampled'}"])


def check_invariance(A: GradedAlgebra, mode="exhaustive", seed: int = 0) -> CheckReport:
    """B([x,y],z) = B(x,[y,z]) on basis triples, including repeated indices."""
    n = A.dim
    fails, ok, skipped = [], 0, 0

    def f(i, j, k):
        return A.form(A.bracket({i: ONE}, {j: ONE}), {k: ONE})

    def record(i, j, k, lhs, rhs):
        fails.append({"triple": [A.symbols[i], A.symbols[j], A.symbols[k]],
                      "B([x,y],z)": enc(lhs), "B(x,[y,z])": enc(rhs)})

    cases = []
    for i, j, k in _triples(A, mode, seed):
        cases += [(i, j, k), (j, k, i), (k, i, j)]
    if mode == "exhaustive":
        for i in range(n):
            for k in range(n):
                if i != k:
                    cases += [(i, k, i), (i, i, k)]
    for i, j, k in cases:
        try:
            lhs = f(i, j, k)
            rhs = A.form({i: ONE}, A.bracket({j: ONE}, {k: ONE}))
        except WindowOverflow:
            skipped += 1
            continue
        ok += 1
        if lhs != rhs:
            record(i, j, k, lhs, rhs)
    return conclude("invariance", fails[:20], ok, skipped, A.window)


def root_decomposition(A: GradedAlgebra) -> Dict[Weight, List[int]]:
    """Group basis indices by weight; verifies the declared weights are eigenvalues."""
    actual = compute_weights(A, A.cartan)
    for b, (w, d) in enumerate(zip(actual, A.weights)):
        if w != d:
            raise MalformedAlgebra(f"declared weight of {A.symbols[b]} is not its ad-H eigenvalue")
    out: Dict[Weight, List[int]] = {}
    for b, w in enumerate(A.weights):
        out.setdefault(w, []).append(b)
    return out


def negate(w: Weight) -> Weight:
    return tuple(-x for x in w)


def check_graded_orthogonality(A: GradedAlgebra) -> CheckReport:
    fails = []
    for (i, j), v in sorted(A.gram.items()):
        s = tuple(a + b for a, b in zip(A.weights[i], A.weights[j]))
        if any(x != 0 for x in s):
            fails.append({"pair": [A.symbols[i], A.symbols[j]], "value": enc(v),
                          "weight_sum": enc_vec(s)})
    return conclude("graded-orthogonality", fails, len(A.gram), 0, A.window)


def check_grade_additivity(A: GradedAlgebra) -> CheckReport:
    fails = []
    for (i, j), v in sorted(A.structure.items()):
        g = tuple(a + b for a, b in zip(A.grades[i], A.grades[j]))
        w = tuple(a + b for a, b in zip(A.weights[i], A.weights[j]))
        for k in v:
            if A.grades[k] != g or A.weights[k] != w:
                fails.append({"pair": [A.symbols[i], A.symbols[j]], "term": A.symbols[k]})
    return conclude("grade-additivity", fails, len(A.structure), 0, A.window)


def cartan_representatives(A: GradedAlgebra, roots: Iterable[Weight]):
    """Solve B(t, h) = xi(h) for t in H, per root.  Returns (reps, unsolvable)."""
    G = A.cartan_gram()
    reps, bad = {}, []
    for xi in roots:
        sol = linalg.solve(G, list(xi)) if G else ([] if not any(x != 0 for x in xi) else None)
        if sol is None:
            bad.append(xi)
        else:
            reps[xi] = {A.cartan[k]: c for k, c in enumerate(sol) if c != 0}
    return reps, bad


def check_admissible(A: GradedAlgebra) -> CheckReport:
    """Axioms (A1) self-centralizing H, (A2) nondegenerate B, (A3) roots represented in H."""
    decomposition = root_decomposition(A)
    fails, notes = [], []
    decided = undecided = 0
    zero = tuple(ZERO for _ in A.cartan)
    cart = set(A.cartan)

    # (A1): centralizer of H inside the window
    rows = []
    for h in A.cartan:
        for b in range(A.dim):
            r = A.bracket_basis(h, b)
            for k, x in r.items():
                rows.append((h, k, b, x))
    eqs: Dict[Tuple[int, int], Dict[int, Scalar]] = {}
    for h, k, b, x in rows:
        eqs.setdefault((h, k), {})[b] = x
    cent = linalg.sparse_kernel(list(eqs.values()), list(range(A.dim)))
    hspan = linalg.Echelon()
    for h in A.cartan:
        hspan.add({h: ONE})
    extra = [v for v in cent if not hspan.contains(v)]
    decided += 1
    if extra:
        fails.append({"axiom": "A1", "centralizer_outside_H": [_vec_witness(A, v) for v in extra]})

    # (A2): pairing L_xi x L_-xi nondegenerate, and on H x H
    for xi, syms in decomposition.items():
        neg = negate(xi)
        if neg not in decomposition:
            if A.decides_weight(neg):
                decided += 1
                fails.append({"axiom": "A2", "root": enc_vec(xi), "reason": "-xi is not a root"})
            else:
                undecided += 1
            continue
        other = decomposition[neg]
        block = [[A.form_basis(i, j) for j in other] for i in syms]
        decided += 1
        if len(syms) != len(other) or linalg.rank(block) < len(syms):
            fails.append({"axiom": "A2", "root": enc_vec(xi),
                          "block_rank": linalg.rank(block), "dims": [len(syms), len(other)]})
    if A.cartan and linalg.rank(A.cartan_gram()) < len(A.cartan):
        fails.append({"axiom": "A2", "reason": "B restricted to H x H is degenerate"})
    orth = check_graded_orthogonality(A)
    if orth.failed:
        fails.append({"axiom": "A2", "graded_orthogonality": orth.witnesses[:5]})

    # (A3)
    roots = [xi for xi in decomposition if xi != zero]
    reps, bad = cartan_representatives(A, roots)
    decided += len(roots)
    for xi in bad:
        fails.append({"axiom": "A3", "root": enc_vec(xi)})
    if not roots:
        notes.append("R = {0}" if decomposition else "empty algebra")
    return conclude("admissible", fails, decided, undecided, A.window, notes,
                    data={"representatives": reps, "decomposition": decomposition})


# ---------------------------------------------------------------------------
# JSON interchange ("leala-algebra v1")

FORMAT = "leala-algebra v1"


def to_json(A: GradedAlgebra) -> dict:
    def res(v):
        return [{"id": A.symbols[k], "coeff": enc(x)} for k, x in sorted(v.items())]

    structure = []
    keys = sorted(set(A.structure) | A.overflow)
    for (i, j) in keys:
        entry = {"left": A.symbols[i], "right": A.symbols[j],
                 "result": res(A.structure.get((i, j), {}))}
        if (i, j) in A.overflow:
            entry["overflow"] = True
        structure.append(entry)
    return {
        "format": FORMAT,
        "field": A.field_name(),
        "basis": [{"id": s, "grade": list(g), "weight": enc_vec(w)}
                  for s, g, w in zip(A.symbols, A.grades, A.weights)],
        "structure": structure,
        "cartan": [A.symbols[h] for h in A.cartan],
        "form": [{"left": A.symbols[i], "right": A.symbols[j], "value": enc(v)}
                 for (i, j), v in sorted(A.gram.items())],
        "window": A.window,
    }


def from_json(doc: dict) -> GradedAlgebra:
    if doc.get("format", FORMAT) != FORMAT:
        raise MalformedAlgebra(f"unsupported format {doc.get('format')!r}")
    symbols = [b["id"] for b in doc["basis"]]
    index = {s: i for i, s in enumerate(symbols)}
    grades = [tuple(b["grade"]) for b in doc["basis"]]
    weights = [tuple(parse_scalar(x) for x in b["weight"]) for b in doc["basis"]]
    structure, overflow = {}, set()
    for e in doc["structure"]:
        i, j = index[e["left"]], index[e["right"]]
        vec = {index[t["id"]]: parse_scalar(t["coeff"]) for t in e["result"]}
        if i > j:
            i, j = j, i
            vec = {k: -v for k, v in vec.items()}
        if e.get("overflow"):
            overflow.add((i, j))
        elif vec:
            structure[(i, j)] = vec
    gram = {}
    for e in doc["form"]:
        i, j = sorted((index[e["left"]], index[e["right"]]))
        gram[(i, j)] = parse_scalar(e["value"])
    cartan = [index[c] for c in doc["cartan"]]
    return GradedAlgebra(symbols, grades, weights, cartan, structure, gram, overflow,
                         doc.get("window", {}))


def dumps(A: GradedAlgebra) -> str:
    return json.dumps(to_json(A), indent=1, sort_keys=False) + "\n"


def loads(text: str) -> GradedAlgebra:
    return from_json(json.loads(text))


def save(A: GradedAlgebra, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(A))


def load(path) -> GradedAlgebra:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


# ---------------------------------------------------------------------------
# subspaces


def span(vectors: Iterable[Vector]) -> linalg.Echelon:
    e = linalg.Echelon()
    for v in vectors:
        e.add(v)
    return e


def centralizer(A: GradedAlgebra, S: Sequence[Vector], within: Optional[Sequence[int]] = None):
    """Solve [x, s] = 0 for all s in S, x in the span of ``within`` (default: all basis).

    Works weight space by weight space (valid because the basis is an
    eigenbasis and each s is split into weight components first).  Basis
    symbols whose bracket with some s leaves the window are excluded, and
    reported, since their contribution cannot be computed.
    """
    cand = list(range(A.dim)) if within is None else list(within)
    # split S into weight-homogeneous parts
    parts = []
    for s in S:
        byw: Dict[Weight, Vector] = {}
        for k, x in s.items():
            byw.setdefault(A.weights[k], {})[k] = x
        parts.extend(byw.values())
    byweight: Dict[Weight, List[int]] = {}
    for b in cand:
        byweight.setdefault(A.weights[b], []).append(b)
    out, excluded = [], []
    for w, syms in byweight.items():
        usable = []
        for b in syms:
            try:
                for s in parts:
                    A.bracket({b: ONE}, s)
                usable.append(b)
            except WindowOverflow:
                excluded.append(b)
        eqs: Dict[Tuple[int, int], Dict[int, Scalar]] = {}
        for si, s in enumerate(parts):
            for b in usable:
                for k, x in A.bracket({b: ONE}, s).items():
                    eqs.setdefault((si, k), {})[b] = x
        out.extend(linalg.sparse_kernel(list(eqs.values()), usable))
    return out, excluded
