"""Exact computations with locally extended affine Lie algebras.

Submodules: ``scalars`` (Q and Q(t)), ``linalg``, ``algebra`` (windowed graded
algebras and axiom checks), ``roots``, ``semidefinite``, ``constructions``,
``structure``, ``suites`` and ``cli``.
"""
from .algebra import (FAIL, INCONCLUSIVE, PASS, AlgebraBuilder, CheckReport, GradedAlgebra,
                      check_admissible, check_invariance, check_jacobi)
from .constructions import (DiagonalPattern, GroupDatum, SimpleType, build_heisenberg_null,
                            build_indecomposable_not_tame, build_loop_eala, build_nullity_zero,
                            build_split_simple, build_witt_null)
from .roots import RootDatum, build_root_datum, scale_form
from .scalars import T, rational_function
from .semidefinite import certify_psd, kac_suite
from .structure import check_decomposable, check_tame, core, outer_tower_test, recognize_finite_type

__version__ = "0.1.0"
