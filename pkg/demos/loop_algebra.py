"""
The sl2 loop algebra with its central extension and degree derivation
=====================================================================

Build L = sl2 (x) F[t, t^-1] + Fc + Fd on the window |m| <= 3, check the axioms,
and look at its roots, nullity and quotient root system.
"""
from leala import constructions as C, roots as R, semidefinite as S, structure as St
from leala.algebra import check_admissible, check_invariance, check_jacobi
from leala.scalars import T, format_scalar

A = C.build_loop_eala("A1", C.GroupDatum((1,), 3))
print(A, "dim", A.dim)

# Jacobi, invariance of the trace form and the admissibility axioms
for rep in (check_jacobi(A), check_invariance(A), check_admissible(A)):
    print(f"{rep.check:>12}: {rep.verdict}  {rep.stats}")

# roots come as eigenvalues on H = (h, c, d): the pair (alpha, m) sits at (2 alpha, 0, m)
D = R.scale_form(R.build_root_datum(A))[1]
print("anisotropic roots:", len(D.anisotropic), " isotropic:", len(D.isotropic))

# a root string near the middle of the window is fully decided ...
alpha = (2, 0, 0)
xi = (-2, 0, 1)
s = R.root_string(D, A, xi, alpha)
print("alpha-string through xi: d =", s.d, "u =", s.u, " xi(h_alpha) =", R.cartan_integer(D, xi, alpha))

# ... while one that would leave the window is reported as undecided
rep = R.check_root_strings(D, A)
print("root strings:", rep.verdict, rep.stats)

K = S.kac_suite(D)
print("nullity", K["radical"].nullity, " null rank", K["null_rank"].group_rank)
print("quotient:", St.recognize_finite_type(K["quotient"], "A1").describe())
print("PSD pivots:", [format_scalar(x) for x in K["radical"].certificate.diagonal])

# two Q-independent values of phi give nullity 2
B = C.build_loop_eala("A1", C.GroupDatum((1, T), 1))
K2 = S.kac_suite(R.scale_form(R.build_root_datum(B))[1])
print("phi = (1, t): nullity", K2["radical"].nullity, " null rank", K2["null_rank"].group_rank)

# the core is everything except d, and its centralizer is Fc: the algebra is tame
core = St.core(A)
tame = St.check_tame(A, core)
print("core dim", core.dim, " tame:", St.is_tame(tame), tame.data["result"]["centralizer_dim"])
