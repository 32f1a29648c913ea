"""Core, Lie torus grading, tameness, decomposability and nullity-0 structure.

All answers are computed at the algebra's window.  A report that depends on
symbols outside the window says so through ``inconclusive-at-window`` counts
or notes rather than guessing.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from . import linalg
from .algebra import (FAIL, INCONCLUSIVE, PASS, CheckReport, GradedAlgebra, WindowOverflow,
                      centralizer, check_invariance, conclude, enc, enc_vec, negate, span)
from .roots import RootDatum, build_root_datum, scale_form
from .scalars import ONE, ZERO, as_scalar
from .semidefinite import QuotientSystem, is_nondegenerate, kac_suite, nondegenerate_hull

Vector = Dict[int, object]
Weight = tuple


class HypothesisError(ValueError):
    """An input does not satisfy the hypotheses of the statement being checked."""


def _named(A: GradedAlgebra, v: Vector) -> dict:
    return {A.symbols[k]: enc(x) for k, x in sorted(v.items())}


def _is_zero_weight(w) -> bool:
    return all(x == 0 for x in w)


# ---------------------------------------------------------------------------
# core


@dataclass
class CoreData:
    """Windowed core: homogeneous spanning vectors sorted into weight slots."""

    algebra: GradedAlgebra
    datum: RootDatum
    slots: Dict[Weight, List[Vector]]
    generators: List[Weight]
    overflow: int = 0
    double_grading: Dict[Weight, Tuple[Weight, Weight]] = field(default_factory=dict)
    dotted: List[Weight] = field(default_factory=list)
    s_sets: Dict[Weight, List[Weight]] = field(default_factory=dict)
    notes: List[str] = field(default_factory=list)

    def basis(self) -> List[Vector]:
        return [v for w in self.slots for v in self.slots[w]]

    @property
    def dim(self) -> int:
        return sum(len(v) for v in self.slots.values())

    def span(self) -> linalg.Echelon:
        return span(self.basis())

    def slot_dim(self, w: Weight) -> int:
        return len(self.slots.get(w, ()))

    def symbols(self) -> List[str]:
        """Basis symbols appearing in the core (for display)."""
        keys = sorted({k for v in self.basis() for k in v})
        return [self.algebra.symbols[k] for k in keys]

    def to_json(self) -> dict:
        return {"dim": self.dim, "overflow": self.overflow,
                "generators": [enc_vec(w) for w in self.generators],
                "dotted": [enc_vec(w) for w in self.dotted],
                "lambda_generators": len(self.lambda_basis()),
                "notes": list(self.notes)}

    def lambda_basis(self) -> List[Weight]:
        """Weights spanning the group generated by the S-sets (as a Q-span basis)."""
        ech = linalg.Echelon()
        out = []
        for ws in self.s_sets.values():
            for w in ws:
                if ech.add({i: x for i, x in enumerate(w) if x != 0}):
                    out.append(w)
        return out


def _weight_of(A: GradedAlgebra, v: Vector) -> Weight:
    ws = {A.weights[k] for k in v}
    if len(ws) != 1:
        raise ValueError("vector is not weight-homogeneous")
    return ws.pop()


def core(A: GradedAlgebra, D: Optional[RootDatum] = None) -> CoreData:
    """Subalgebra generated by the anisotropic root spaces, closed within the window."""
    D = D or build_root_datum(A)
    aniso = set(D.anisotropic)
    gens = [{i: ONE} for i in range(A.dim) if A.weights[i] in aniso]
    slots: Dict[Weight, linalg.Echelon] = {}
    vecs: Dict[Weight, List[Vector]] = {}
    overflow = 0

    def insert(v) -> bool:
        w = _weight_of(A, v)
        e = slots.setdefault(w, linalg.Echelon())
        if e.add(v):
            vecs.setdefault(w, []).append(v)
            return True
        return False

    queue = [g for g in gens if insert(g)]
    while queue:
        v = queue.pop(0)
        for g in gens:
            try:
                w = A.bracket(g, v)
            except WindowOverflow:
                overflow += 1
                continue
            if w and insert(w):
                queue.append(w)
    # canonical order: by weight first appearance in the basis
    order = {}
    for i in range(A.dim):
        order.setdefault(A.weights[i], i)
    slots_sorted = {w: vecs[w] for w in sorted(vecs, key=lambda w: order.get(w, 0))}
    C = CoreData(A, D, slots_sorted, sorted(aniso, key=lambda w: order.get(w, 0)), overflow)
    if overflow:
        C.notes.append(f"{overflow} generator brackets leave the window; core shown at window")
    _double_grading(C)
    return C


def _double_grading(C: CoreData):
    """Pick dotted representatives per class of R-bar and record (omega, delta) for each root."""
    D = C.datum
    if not D.anisotropic:
        return
    _, Ds = scale_form(D)
    Q = kac_suite(Ds)["quotient"]
    classes = Q.classes
    by_class: Dict[tuple, List[Weight]] = {}
    for r in D.roots:  # canonical (basis) order
        if D.norm(r) != 0:
            by_class.setdefault(classes[r], []).append(r)
    dotted: Dict[tuple, Weight] = {}
    # reduced classes first: a-bar with a-bar/2 not a class
    for cb in by_class:
        half = tuple(x / 2 for x in cb)
        if half not in by_class:
            dotted[cb] = by_class[cb][0]
    for cb in by_class:
        if cb not in dotted:
            half = tuple(x / 2 for x in cb)
            dotted[cb] = tuple(2 * x for x in dotted[half])
    C.dotted = list(dotted.values())
    z = D.zero
    for r in D.roots:
        if D.norm(r) != 0:
            a = dotted[classes[r]]
            C.double_grading[r] = (a, tuple(x - y for x, y in zip(r, a)))
            C.s_sets.setdefault(a, []).append(tuple(x - y for x, y in zip(r, a)))
        else:
            C.double_grading[r] = (z, r)


def inject(C: CoreData, weight: Weight, v: Vector) -> CoreData:
    """Copy of C with an extra vector filed under ``weight`` (negative control)."""
    slots = {w: list(vs) for w, vs in C.slots.items()}
    slots.setdefault(weight, []).append(dict(v))
    return CoreData(C.algebra, C.datum, slots, C.generators, C.overflow, dict(C.double_grading),
                    list(C.dotted), dict(C.s_sets), C.notes + ["corrupted: injected vector"])


def check_core_ideal(C: CoreData) -> CheckReport:
    """[L, L_c] is contained in L_c at window."""
    A = C.algebra
    E = C.span()
    fails, decided, undecided = [], 0, 0
    for v in C.basis():
        for b in range(A.dim):
            try:
                w = A.bracket({b: ONE}, v)
            except WindowOverflow:
                undecided += 1
                continue
            decided += 1
            if not E.contains(w):
                fails.append({"x": A.symbols[b], "core_vector": _named(A, v), "bracket": _named(A, w)})
                if len(fails) >= 5:
                    break
    return conclude("core-ideal", fails, decided, undecided, A.window)


def check_lie_torus_grading(C: CoreData) -> CheckReport:
    """The three Lie torus conditions on the windowed core."""
    A, D = C.algebra, C.datum
    fails, notes = [], []
    decided = undecided = 0
    if not D.anisotropic:
        return conclude("lie-torus", [], 0, 0, A.window, ["core = 0"])
    dotted = set(C.dotted)
    reduced = {a for a in dotted if tuple(x / 2 for x in a) not in dotted}
    # (1) dim (L_c)^delta_alpha <= 1, and = 1 for delta = 0 with alpha reduced
    for r, (a, delta) in C.double_grading.items():
        if D.norm(r) == 0:
            continue
        decided += 1
        k = C.slot_dim(r)
        if k > 1:
            fails.append({"condition": 1, "omega": enc_vec(a), "delta": enc_vec(delta), "dim": k})
        if _is_zero_weight(delta) and a in reduced and k != 1:
            fails.append({"condition": 1, "omega": enc_vec(a), "delta": "0", "dim": k})
    # (2) sl2 pairing
    for r, (a, delta) in C.double_grading.items():
        if D.norm(r) == 0 or C.slot_dim(r) != 1:
            continue
        neg = negate(r)
        if C.slot_dim(neg) < 1:
            if D.decides(neg):
                fails.append({"condition": 2, "root": enc_vec(r), "reason": "no partner in (L_c)_-alpha"})
            else:
                undecided += 1
            continue
        x, y = C.slots[r][0], C.slots[neg][0]
        try:
            h = A.bracket(x, y)
        except WindowOverflow:
            undecided += 1
            continue
        bxy = A.form(x, y)
        if bxy == 0:
            fails.append({"condition": 2, "root": enc_vec(r), "reason": "B(x, y) = 0"})
            continue
        na = D.norm(a)
        h = {k: v * 2 / (na * bxy) for k, v in h.items()}
        for w, vs in C.slots.items():
            om = C.double_grading.get(w, (D.zero, w))[0] if not _is_zero_weight(w) else D.zero
            target = 2 * D.ip(om, a) / na
            for u in vs:
                decided += 1
                got = A.bracket(h, u)
                want = {k: target * c for k, c in u.items() if target * c != 0}
                if got != want:
                    fails.append({"condition": 2, "root": enc_vec(r), "u": _named(A, u)})
                    break
    # (3) (L_c)^delta_0 is spanned by brackets of opposite anisotropic slots
    deltas = [w for w in C.slots if D.norm(w) == 0] if C.slots else []
    for dlt in deltas:
        lhs = C.slots[dlt]
        rhs = linalg.Echelon()
        missing = False
        for r in C.slots:
            if D.norm(r) == 0 or (_is_zero_weight(r)):
                continue
            partner = tuple(x - y for x, y in zip(dlt, r))
            if partner not in C.slots:
                if not D.decides(partner):
                    missing = True
                continue
            for x in C.slots[r]:
                for y in C.slots[partner]:
                    try:
                        rhs.add(A.bracket(x, y))
                    except WindowOverflow:
                        missing = True
        equal = len(rhs) == len(lhs) and all(rhs.contains(v) for v in lhs)
        if equal:
            decided += 1
        elif missing:
            undecided += 1
        else:
            decided += 1
            fails.append({"condition": 3, "delta": enc_vec(dlt), "lhs_dim": len(lhs), "rhs_dim": len(rhs)})
    if C.overflow:
        notes.append("core truncated at window")
    return conclude("lie-torus", fails, decided, undecided, A.window, notes)


def check_s_sets(C: CoreData) -> CheckReport:
    """S_{2a} is contained in S_a, and 0 lies in S_a exactly for reduced a."""
    fails, decided = [], 0
    dotted = set(C.dotted)
    for a in C.dotted:
        half = tuple(x / 2 for x in a)
        S = set(C.s_sets.get(a, ()))
        zero = C.datum.zero
        decided += 1
        if half in dotted:
            if zero in S:
                fails.append({"dotted": enc_vec(a), "reason": "0 in S for a non-reduced class"})
            small = set(C.s_sets.get(half, ()))
            for v in S:
                decided += 1
                if C.datum.decides(tuple(x + y for x, y in zip(half, v))) and v not in small:
                    fails.append({"dotted": enc_vec(a), "v": enc_vec(v)})
        elif zero not in S:
            fails.append({"dotted": enc_vec(a), "reason": "0 not in S for a reduced class"})
    return conclude("s-sets", fails, decided, 0, C.algebra.window)


def check_core_simple(C: CoreData) -> CheckReport:
    """Ideal closure from each homogeneous core vector must give the whole core."""
    A = C.algebra
    basis = C.basis()
    n = len(basis)
    fails, decided, undecided = [], 0, 0
    if n == 0:
        return conclude("core-simple", [], 0, 0, A.window, ["core = 0"])
    for v in basis:
        ideal = linalg.Echelon()
        ideal.add(v)
        queue = [v]
        overflowed = False
        while queue and len(ideal) < n:
            u = queue.pop()
            for g in basis:
                try:
                    w = A.bracket(g, u)
                except WindowOverflow:
                    overflowed = True
                    continue
                if w and ideal.add(w):
                    queue.append(w)
        if len(ideal) == n:
            decided += 1
        elif overflowed or C.overflow:
            undecided += 1
        else:
            decided += 1
            fails.append({"seed": _named(A, v), "ideal_dim": len(ideal), "core_dim": n})
            break
    notes = ["simple at this window"] if not fails and not undecided else []
    return conclude("core-simple", fails, decided, undecided, A.window, notes)


# ---------------------------------------------------------------------------
# centralizer and tameness


def center(A: GradedAlgebra) -> Tuple[List[Vector], List[int]]:
    return centralizer(A, [{i: ONE} for i in range(A.dim)])


def center_in_h(A: GradedAlgebra) -> List[Vector]:
    """Center computed inside H (where it always lies): common kernel of the weights."""
    vecs, _ = centralizer(A, [{i: ONE} for i in range(A.dim)], within=A.cartan)
    return vecs


def check_tame(A: GradedAlgebra, C: Optional[CoreData] = None) -> CheckReport:
    """Centralizer of the core is contained in the core; also B(C_L(L_c), L_c) = 0."""
    C = C or core(A)
    cvecs, excluded = centralizer(A, C.basis())
    E = C.span()
    fails, notes = [], []
    decided = undecided = 0
    outside = []
    for v in cvecs:
        decided += 1
        if not E.contains(v):
            outside.append(v)
        for u in C.basis():
            if A.form(v, u) != 0:
                fails.append({"claim": "B(C_L(L_c), L_c) = 0", "x": _named(A, v), "u": _named(A, u)})
                break
    undecided += len(excluded)
    if excluded:
        notes.append(f"{len(excluded)} boundary symbols excluded from the centralizer solve")
    result = {"tame": not outside, "centralizer_dim": len(cvecs), "core_dim": C.dim,
              "outside_core": [_named(A, v) for v in outside[:4]]}
    return conclude("tame", fails, decided, undecided, A.window, notes, data={"result": result})


def is_tame(rep: CheckReport) -> Optional[bool]:
    if rep.verdict != PASS:
        return None
    return rep.data["result"]["tame"]


# ---------------------------------------------------------------------------
# decomposability


@dataclass
class _Graph:
    nodes: List[Weight]
    adj: Dict[Weight, set]

    def components(self) -> List[List[Weight]]:
        seen, out = set(), []
        for n in self.nodes:
            if n in seen:
                continue
            comp, stack = [], [n]
            seen.add(n)
            while stack:
                x = stack.pop()
                comp.append(x)
                for y in self.adj[x]:
                    if y not in seen:
                        seen.add(y)
                        stack.append(y)
            out.append(sorted(comp, key=self.nodes.index))
        return out


def compatibility_graph(A: GradedAlgebra, D: RootDatum) -> _Graph:
    """Nonzero roots; edges for nonzero brackets (including those leaving the window),
    nonzero induced form, and the pairing of a root with its negative."""
    spaces: Dict[Weight, List[int]] = {}
    for i in range(A.dim):
        if not _is_zero_weight(A.weights[i]):
            spaces.setdefault(A.weights[i], []).append(i)
    nodes = list(spaces)
    adj = {n: set() for n in nodes}

    def link(a, b):
        if a != b:
            adj[a].add(b)
            adj[b].add(a)

    for a in nodes:
        if negate(a) in adj:
            link(a, negate(a))
    for (i, j), v in A.structure.items():
        wi, wj = A.weights[i], A.weights[j]
        if wi in adj and wj in adj and v:
            link(wi, wj)
    for (i, j) in A.overflow:
        wi, wj = A.weights[i], A.weights[j]
        if wi in adj and wj in adj:
            link(wi, wj)
    for a, b in itertools.combinations(nodes, 2):
        if D.ip(a, b) != 0:
            link(a, b)
    return _Graph(nodes, adj)


def _h_gram(A: GradedAlgebra):
    return A.cartan_gram()


def _t_vectors(A: GradedAlgebra, D: RootDatum, roots: Sequence[Weight]) -> List[List]:
    """t_xi in Cartan coordinates."""
    pos = {c: k for k, c in enumerate(A.cartan)}
    out = []
    for r in roots:
        v = [ZERO] * len(A.cartan)
        for c, x in D.representatives[r].items():
            v[pos[c]] = x
        out.append(v)
    return out


def _span_rank(vs) -> int:
    return linalg.rank(vs) if vs else 0


def _hull_between(G, T1, T2):
    """Nondegenerate H1 with T1 <= H1 <= T2-perp, or None."""
    n = len(G)
    if T2:
        W = linalg.kernel([linalg.matvec(G, t) for t in T2], n)
    else:
        W = linalg.identity(n)
    radW = [w for w in _perp_within(G, W)]
    # complement C of rad W inside W containing T1
    ech = linalg.Echelon()
    for r in radW:
        ech.add({k: x for k, x in enumerate(r) if x != 0})
    Cb = []
    for v in list(T1) + list(W):
        if ech.add({k: x for k, x in enumerate(v) if x != 0}):
            Cb.append(v)
    if not Cb:
        return []
    GC = [[linalg.dot(a, linalg.matvec(G, b)) for b in Cb] for a in Cb]
    coords = []
    for t in T1:
        sol = linalg.solve(linalg.transpose(Cb), t)
        if sol is None:
            return None
        coords.append(sol)
    try:
        hull = nondegenerate_hull(GC, coords)
    except ValueError:
        return None
    return [[sum((c * b[k] for c, b in zip(h, Cb)), ZERO) for k in range(n)] for h in hull]


def _perp_within(G, W):
    """Radical of the form restricted to span W (as ambient vectors)."""
    if not W:
        return []
    GW = [[linalg.dot(a, linalg.matvec(G, b)) for b in W] for a in W]
    ker = linalg.kernel(GW, len(W))
    n = len(G)
    return [[sum((c * w[k] for c, w in zip(kv, W)), ZERO) for k in range(n)] for kv in ker]


def _split_witness(A, D, G, group1, group2):
    T1 = _t_vectors(A, D, group1)
    T2 = _t_vectors(A, D, group2)
    # spans must meet trivially and be orthogonal
    if _span_rank(T1) + _span_rank(T2) != _span_rank(T1 + T2):
        return None
    for a in group1:
        for b in group2:
            if D.ip(a, b) != 0:
                return None
    H1 = _hull_between(G, [t for t in T1], [t for t in T2])
    if H1 is None:
        return None
    H1 = [h for h in H1]
    if H1 and not is_nondegenerate(G, H1):
        return None
    H2 = linalg.kernel([linalg.matvec(G, h) for h in H1], len(G)) if H1 else linalg.identity(len(G))
    if not H2 or not is_nondegenerate(G, H2):
        return None
    if any(linalg.dot(t, linalg.matvec(G, h)) != 0 for t in T2 for h in H1):
        return None
    return H1, H2


def check_decomposable(A: GradedAlgebra, D: Optional[RootDatum] = None,
                       max_components: int = 12) -> CheckReport:
    """Certify indecomposable (by exhaustion of the root-space splittings) or
    decomposable (by an explicit witness); otherwise inconclusive.

    A nonzero root space always lies inside one factor, so a decomposition is
    a 2-coloring of the components of the compatibility graph plus an
    orthogonal splitting of H; the all-one-color case leaves a central,
    nondegenerate second factor.
    """
    D = D or build_root_datum(A)
    G = _h_gram(A)
    graph = compatibility_graph(A, D)
    comps = graph.components()
    result = {"components": len(comps)}
    data = {"result": result}
    notes = []
    complete = not A.overflow
    cart = A.cartan
    # (i) all roots in one factor: a central nondegenerate piece splits off
    Z = center_in_h(A)
    for z in Z:
        if A.form(z, z) != 0 and A.dim > 1:
            result.update(decomposable=True, family="central",
                        factor2={"H": [_named(A, z)], "roots": []})
            return CheckReport("decomposable", PASS, A.window, [],
                               {"decided": 1, "inconclusive": 0},
                               ["decomposable: a central vector with B(z, z) != 0 splits off"], data)
    zg = [[A.form(a, b) for b in Z] for a in Z]
    if any(x != 0 for row in zg for x in row) and A.dim > 1:
        # B|Z nonzero but every diagonal vanishes: some z1 + z2 is anisotropic
        for a, b in itertools.combinations(Z, 2):
            if A.form(a, b) != 0:
                z = linalg.sp_add(a, b)
                result.update(decomposable=True, family="central", factor2={"H": [_named(A, z)], "roots": []})
                return CheckReport("decomposable", PASS, A.window, [], {"decided": 1, "inconclusive": 0},
                                   ["decomposable: a central vector with B(z, z) != 0 splits off"], data)
    if not comps:
        result["decomposable"] = False
        return CheckReport("decomposable", PASS, A.window, [], {"decided": 1, "inconclusive": 0},
                           ["indecomposable: no roots and B vanishes on the center"], data)
    if len(comps) == 1:
        result["decomposable"] = False
        if A.window.get("builder") == "heisenberg":
            result["family"] = "c+ud"
            notes.append("the family H1 = F(c+ud), H2 = F(c-ud) is excluded: delta(c +- ud) = +-u phi(delta) != 0")
        notes.append("indecomposable (certified): the compatibility graph is connected and "
                     "B vanishes on the center")
        return CheckReport("decomposable", PASS, A.window, [], {"decided": 1, "inconclusive": 0}, notes, data)
    if len(comps) > max_components:
        return CheckReport("decomposable", INCONCLUSIVE, A.window, [], {"decided": 0, "inconclusive": 1},
                           [f"{len(comps)} components: splitting search skipped"], data)
    first, rest = comps[0], comps[1:]
    tried = 0
    for mask in range(0, 2 ** len(rest)):
        g1 = list(first) + [r for k, c in enumerate(rest) if mask >> k & 1 for r in c]
        g2 = [r for k, c in enumerate(rest) if not mask >> k & 1 for r in c]
        if not g2:
            continue
        tried += 1
        w = _split_witness(A, D, G, g1, g2)
        if w is None:
            continue
        H1, H2 = w
        result.update(decomposable=True, family="root-split",
                    factor1={"roots": [enc_vec(r) for r in g1],
                             "H": [{A.symbols[cart[k]]: enc(x) for k, x in enumerate(h) if x != 0} for h in H1]},
                    factor2={"roots": [enc_vec(r) for r in g2],
                             "H": [{A.symbols[cart[k]]: enc(x) for k, x in enumerate(h) if x != 0} for h in H2]})
        if not complete:
            return CheckReport("decomposable", INCONCLUSIVE, A.window, [], {"decided": 0, "inconclusive": 1},
                               ["a splitting exists at this window; it is not certified because "
                                "brackets leave the window"], data)
        return CheckReport("decomposable", PASS, A.window, [], {"decided": 1, "inconclusive": 0},
                           ["decomposable: orthogonal splitting assembled"], data)
    result["decomposable"] = False
    result["splittings_tried"] = tried
    notes.append("indecomposable (certified): no 2-coloring of the root components admits "
                 "an orthogonal splitting of H")
    return CheckReport("decomposable", PASS, A.window, [], {"decided": 1, "inconclusive": 0}, notes, data)


def is_indecomposable(rep: CheckReport) -> Optional[bool]:
    if rep.verdict != PASS:
        return None
    return not rep.data["result"]["decomposable"]


# ---------------------------------------------------------------------------
# nullity-0 structure


@dataclass
class NullityZeroSplit:
    core: CoreData
    d_part: List[Vector]
    z_part: List[Vector]
    report: CheckReport

    def to_json(self) -> dict:
        A = self.core.algebra
        return {"core_dim": self.core.dim, "D": [_named(A, v) for v in self.d_part],
                "Z": [_named(A, v) for v in self.z_part], "report": self.report.to_json()}


def _center_of_span(A: GradedAlgebra, vecs: List[Vector]) -> List[Vector]:
    """Center of the subalgebra spanned by ``vecs`` (assumed closed)."""
    n = len(vecs)
    eqs: Dict[Tuple[int, int], Dict[int, object]] = {}
    for i, v in enumerate(vecs):
        for j, w in enumerate(vecs):
            for k, x in A.bracket(v, w).items():
                eqs.setdefault((j, k), {})[i] = x
    ker = linalg.sparse_kernel(list(eqs.values()), list(range(n)))
    out = []
    for kv in ker:
        acc: Vector = {}
        for i, c in kv.items():
            acc = linalg.sp_add(acc, vecs[i], c)
        out.append(acc)
    return out


def split_nullity_zero(A: GradedAlgebra, D: Optional[RootDatum] = None) -> NullityZeroSplit:
    """L = L_c + D + Z with H = (H cap L_c) + D + Z; D is the first complement in basis order."""
    D = D or build_root_datum(A)
    _, Ds = scale_form(D)
    nullity = kac_suite(Ds)["radical"].nullity
    if nullity != 0:
        raise HypothesisError(f"nullity is {nullity}; the splitting needs nullity 0")
    if A.overflow:
        raise HypothesisError("a nullity-0 algebra must be given without window overflow")
    C = core(A, D)
    Z, _ = center(A)
    fails, notes = [], []
    decided = 0
    hset = set(A.cartan)
    for z in Z:
        decided += 1
        if not set(z) <= hset:
            fails.append({"claim": "Z in H", "z": _named(A, z)})
    hc = list(C.slots.get(D.zero, []))
    ech = span(hc + Z)
    dpart = []
    for c in A.cartan:
        if ech.add({c: ONE}):
            dpart.append({c: ONE})
    decided += 1
    if C.dim + len(dpart) + len(Z) != A.dim:
        fails.append({"claim": "L = L_c + D + Z", "dims": [C.dim, len(dpart), len(Z), A.dim]})
    for a, b in itertools.combinations(dpart, 2):
        decided += 1
        if A.bracket(a, b):
            fails.append({"claim": "D abelian"})
    cd = C.basis() + dpart
    cz = _center_of_span(A, cd)
    decided += 1
    if cz:
        fails.append({"claim": "L_c + D centreless", "center": [_named(A, v) for v in cz]})
    rep = conclude("split-nullity-0", fails, decided, 0, A.window, notes,
                   data={"core_dim": C.dim, "D_dim": len(dpart), "Z_dim": len(Z)})
    return NullityZeroSplit(C, dpart, Z, rep)


def check_radical_in_center(A: GradedAlgebra, sigma: Dict[Tuple[int, int], object],
                            g_part: Optional[List[Vector]] = None) -> CheckReport:
    """rad(sigma) lies in the center, for an invariant symmetric sigma nonzero on g x g."""
    S = GradedAlgebra(A.symbols, A.grades, A.weights, A.cartan, A.structure,
                      {(min(i, j), max(i, j)): as_scalar(v) for (i, j), v in sigma.items()},
                      A.overflow, A.window)
    inv = check_invariance(S)
    if inv.failed:
        raise HypothesisError("sigma is not invariant: " + str(inv.witnesses[0]))
    g = g_part if g_part is not None else core(A).basis()
    if all(S.form(x, y) == 0 for x in g for y in g):
        raise HypothesisError("sigma vanishes on g x g")
    n = A.dim
    M = [[S.form_basis(i, j) for j in range(n)] for i in range(n)]
    rad = linalg.kernel(M, n)
    Zv, excluded = center(A)
    ZE = span(Zv)
    fails = []
    for r in rad:
        v = {k: x for k, x in enumerate(r) if x != 0}
        if not ZE.contains(v):
            fails.append({"radical_vector": _named(A, v)})
    return conclude("radical-in-center", fails, len(rad) + 1, len(excluded), A.window,
                    data={"radical_dim": len(rad), "center_dim": len(Zv)})


# ---------------------------------------------------------------------------
# towers


@dataclass
class TowerTrace:
    levels: List[Tuple[int, Optional[Dict[str, str]], int]]
    stabilized: bool
    growing: bool
    notes: List[str] = field(default_factory=list)

    @property
    def support_sizes(self) -> List[int]:
        return [s for _, _, s in self.levels]

    def to_json(self) -> dict:
        return {"levels": [{"rank": r, "h": h, "support": s} for r, h, s in self.levels],
                "stabilized": self.stabilized, "growing": self.growing, "notes": self.notes}


def inner_representative(level, which: int = 0) -> Dict[str, Fraction]:
    """h in the Cartan of g_n with ad h = ad d on g_n."""
    A = level.algebra
    dsym = level.d_symbols[which]
    dpos = A.cartan.index(A.index[dsym])
    hs = [c for c in A.cartan if A.symbols[c].startswith("h[")]
    hpos = [A.cartan.index(c) for c in hs]
    rows, rhs = [], []
    for i in range(A.dim):
        if i in A.cartan:
            continue
        w = A.weights[i]
        rows.append([w[p] for p in hpos])
        rhs.append(w[dpos])
    sol = linalg.solve(rows, rhs)
    if sol is None:
        raise ArithmeticError("diagonal derivation has no inner representative at a finite level")
    return {A.symbols[c]: x for c, x in zip(hs, sol) if x != 0}


def outer_tower_test(tower, which: int = 0) -> TowerTrace:
    if len(tower.levels) < 3:
        raise HypothesisError("the tower test needs at least 3 levels")
    levels = []
    reps = []
    for lv in tower.levels:
        h = inner_representative(lv, which)
        reps.append(h)
        levels.append((lv.type.rank, {k: enc(v) for k, v in h.items()}, len(h)))
    stabilized = reps[-1] == reps[-2] == reps[-3]
    sizes = [s for _, _, s in levels]
    growing = all(a < b for a, b in zip(sizes, sizes[1:]))
    notes = [f"stabilization proxy: last 3 of {len(levels)} levels compared"]
    return TowerTrace(levels, stabilized, growing, notes)


# ---------------------------------------------------------------------------
# finite type recognition


@dataclass(frozen=True)
class TypeRecognition:
    labels: FrozenSet[str]
    primary: Optional[str]
    nonreduced: bool
    rank: int
    count: int
    norms: Tuple[Tuple[str, int], ...]

    def to_json(self) -> dict:
        return {"labels": sorted(self.labels), "primary": self.primary, "nonreduced": self.nonreduced,
                "rank": self.rank, "roots": self.count, "norms": [list(x) for x in self.norms]}

    def describe(self) -> str:
        if not self.labels:
            return "unknown"
        lab = "{" + ",".join(sorted(self.labels)) + "}"
        return f"type {self.primary} (labels {lab})" if len(self.labels) > 1 else f"type {self.primary}"


def _reduced_labels(l: int, count: int, norms: Dict[Fraction, int]) -> set:
    out = set()
    lengths = sorted(norms)
    if len(lengths) == 1:
        if count == l * (l + 1):
            out.add(f"A{l}")
            if l == 1:
                out |= {"B1", "C1"}
        if l >= 3 and count == 2 * l * (l - 1):
            out.add(f"D{l}")
        if (l, count) in ((6, 72), (7, 126), (8, 240)):
            out.add(f"E{l}")
    elif len(lengths) == 2:
        short, long_ = lengths
        ratio = long_ / short
        ns = norms[short]
        if ratio == 2 and count == 2 * l * l:
            if l >= 2 and ns == 2 * l:
                out.add(f"B{l}")
            if l >= 2 and ns == 2 * l * (l - 1):
                out.add(f"C{l}")
        if ratio == 2 and l == 4 and count == 48 and ns == 24:
            out.add("F4")
        if ratio == 3 and l == 2 and count == 12 and ns == 6:
            out.add("G2")
    return out


def recognize_finite_type(Q: QuotientSystem, hint: Optional[str] = None) -> TypeRecognition:
    """Recognize R-bar by rank, root count, norm multiset and the presence of a, 2a."""
    nz = Q.nonzero
    l, count = Q.rank, len(nz)
    norms: Dict[Fraction, int] = {}
    for r in nz:
        v = Q.ip(r, r)
        norms[v] = norms.get(v, 0) + 1
    roots = set(nz)
    nonreduced = any(tuple(2 * x for x in r) in roots for r in nz)
    labels = set()
    if count == 0:
        labels = set()
    elif nonreduced:
        if len(norms) == 3 or (l == 1 and len(norms) == 2):
            if count == 2 * l * l + 2 * l:
                labels.add(f"BC{l}")
    else:
        labels = _reduced_labels(l, count, norms)
    primary = None
    if labels:
        primary = hint if hint in labels else sorted(labels)[0]
    return TypeRecognition(frozenset(labels), primary, nonreduced, l, count,
                           tuple(sorted((enc(k), v) for k, v in norms.items())))


# ---------------------------------------------------------------------------
# Corollary 9.2 triangle


def nullity_zero_triangle(A: GradedAlgebra, D: Optional[RootDatum] = None) -> CheckReport:
    """tame, centreless and indecomposable agree at nullity 0 (each computed independently)."""
    D = D or build_root_datum(A)
    tame = check_tame(A)
    Zv, _ = center(A)
    dec = check_decomposable(A, D)
    preds = {"tame": is_tame(tame),
             "centreless": not Zv,
             "indecomposable": is_indecomposable(dec)}
    if any(v is None for v in preds.values()):
        return CheckReport("nullity0-triangle", INCONCLUSIVE, A.window, [],
                           {"decided": 0, "inconclusive": 1}, [], {"predicates": preds})
    fails = [] if len(set(preds.values())) == 1 else [{"predicates": preds}]
    return conclude("nullity0-triangle", fails, 1, 0, A.window, data={"predicates": preds})
