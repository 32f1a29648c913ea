"""
Null systems: no anisotropic roots at all
=========================================

A Heisenberg-type system and the Witt-type system W' + Y' with and without
the Moody-Rao cocycle.  The form on the span of the roots vanishes, yet the
algebras are admissible.
"""
from leala import constructions as C, roots as R, semidefinite as S, structure as St
from leala.algebra import check_admissible, check_jacobi
from leala.scalars import format_scalar

# Heisenberg: N = Fc + Fd + sum over delta in S of N_delta
N = C.build_heisenberg_null((0, 1, -1, 2, -2), dims=2)
D = R.build_root_datum(N)
print("Heisenberg: dim", N.dim, " |R0| =", len(D.isotropic), " |Rx| =", len(D.anisotropic))
K = S.kac_suite(D)
print("  gram on span R:", [[format_scalar(x) for x in row] for row in K["lattice"].gram], " nullity", K["radical"].nullity)
dec = St.check_decomposable(N, D)
print("  decomposable?", dec.data["result"]["decomposable"], "-", dec.notes[-1])

# with S = {0} the hyperbolic plane Fc + Fd splits off
N0 = C.build_heisenberg_null((0,), 1)
print("  S = {0}:", St.check_decomposable(N0).data["result"])

# Witt type, n = 2: roots are the alpha in Z^2 inside the window
for cocycle in ("trivial", "moody_rao"):
    W = C.build_witt_null(2, 2, cocycle)
    print(f"Witt ({cocycle}): dim {W.dim}, jacobi {check_jacobi(W).verdict}, "
          f"admissible {check_admissible(W).verdict}")
    rep = C.check_witt_identities(W)
    print("  [N_a, N_-a] = F c_a and center = Y_0:", rep.verdict, rep.stats)
    Z, _ = St.center(W)
    print("  center:", [sorted(W.named(z)) for z in Z])
    K = S.kac_suite(R.build_root_datum(W))
    print("  nullity", K["radical"].nullity, " null rank", K["null_rank"].group_rank)
