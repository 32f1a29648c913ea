"""
What a failure looks like
=========================

Each checker is run on a deliberately broken input.  Every one of them must
come back with a fail verdict and a concrete witness.
"""
import json

from leala import constructions as C, roots as R, semidefinite as S, structure as St
from leala.algebra import check_admissible, check_invariance, check_jacobi

sl3 = C.build_split_simple("A2")
o5 = C.build_split_simple("B2")
loop = C.build_loop_eala("A1", C.GroupDatum((1,), 2))


def show(title, rep):
    print(f"{title}: {rep.verdict}")
    print("   witness:", json.dumps(rep.witnesses[0], sort_keys=True)[:150])


show("flipped sign in [e12, e23]", check_jacobi(C.flip_sign(sl3, ("e[1,2]", "e[2,3]"))))
show("B(h1, h2) changed to 5", check_invariance(C.with_form(sl3, ("h[1]", "h[2]"), 5)))
show("phi = (1, 1) on Z^2", check_admissible(C.build_loop_eala("A1", C.GroupDatum((1, 1), 1),
                                                              allow_dependent=True)))

D = R.scale_form(R.build_root_datum(o5))[1]
show("B2 with one root deleted", R.check_reflection_closure(D.without(D.anisotropic[0])))

core = St.core(loop)
slot = next(w for w in core.slots if core.datum.norm(w) != 0)
show("core slot with an extra vector", St.check_lie_torus_grading(St.inject(core, slot, {loop.index["d"]: 1})))

show("gram [[1,2],[2,1]]", S.check_psd([[1, 2], [2, 1]]))
