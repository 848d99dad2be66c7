"""Exact Hom/Ext computations, brick enumeration and Frobenius-Perron dimension estimates for bound quiver algebras."""

from .linalg import GF, QQ, Field, FieldMismatchError, kernel_basis, parse_field, rank, rref, solve
from .quiver import (
    AdmissibilityReport, BoundQuiver, Path, PathBasis, Quiver, QuiverError, Relation, check_admissible,
    check_loop_commutativity, loop_extend, loop_reduce, path_basis,
)
from .builders import canonical, cyclic_tube, dynkin, example_four_vertex, recognize
from .representation import (
    HomSpace, Representation, are_isomorphic, check_representation, direct_sum, hom_dim, hom_space, is_brick, simple,
)
from .ext import ext1_cocycle_dim, ext1_dim, euler_form, projective, syzygy, top_radical
from .spectral import (
    FactoredPoly, Radius, RootInterval, compare_roots, isolated_max_value, run_max_value, shifted_root,
    spectral_radius,
)
from .bricks import (
    BrickList, BrickSet, FpEstimate, ModuleList, WitnessNotFound, enumerate_brick_sets, enumerate_bricks,
    enumerate_modules, fpdim_search, loop_extension_report, predict_fpdim, tube_witness,
)
from .polynomial import poly_brick_check, poly_ext1, polynomial_fpdim_report
from .dsl import DSLError, QuiverFile, dump, parse
from .estimator import FPDimEstimator

__version__ = "0.1.0"

__all__ = [
    "GF", "QQ", "Field", "FieldMismatchError", "kernel_basis", "parse_field", "rank", "rref", "solve",
    "AdmissibilityReport", "BoundQuiver", "Path", "PathBasis", "Quiver", "QuiverError", "Relation",
    "check_admissible", "check_loop_commutativity", "loop_extend", "loop_reduce", "path_basis", "canonical",
    "cyclic_tube", "dynkin", "example_four_vertex", "recognize", "HomSpace", "Representation",
    "are_isomorphic", "check_representation", "direct_sum", "hom_dim", "hom_space", "is_brick", "simple",
    "ext1_cocycle_dim", "ext1_dim", "euler_form", "projective", "syzygy", "top_radical", "FactoredPoly",
    "Radius", "RootInterval", "compare_roots", "isolated_max_value", "run_max_value", "shifted_root",
    "spectral_radius", "BrickList", "BrickSet", "FpEstimate", "ModuleList", "WitnessNotFound",
    "enumerate_brick_sets", "enumerate_bricks", "enumerate_modules", "fpdim_search", "loop_extension_report",
    "predict_fpdim", "tube_witness", "poly_brick_check", "poly_ext1", "polynomial_fpdim_report", "DSLError",
    "QuiverFile", "dump", "parse", "FPDimEstimator",
]
