"""Varchenko matrices of oriented matroids: construction, factorization and
determinant formulas, with the supporting Möbius and homology computations."""

from .signs import Sign, SignVector, compose, separator, separator_mask
from .om import (
    GroundSet,
    OMError,
    OrientedMatroid,
    check_axioms,
    contraction,
    deletion,
    from_arrangement,
    from_covectors,
    reorient,
    restriction,
    star,
)
from .matroid import bounded_tope_count, underlying
from .polyalg import MultiPoly, PolyMatrix, SizeGuardError, det_modp, det_symbolic
from .poset import FinitePoset
from .homology import ComplexTooLarge, SimplicialComplex, order_complex, reduced_homology
from .report import Report
from .varchenko import (
    build_calMe,
    build_Me,
    build_varchenko,
    det_formula,
    refined_formula,
    verify_det,
    verify_factorization,
)

__version__ = "0.1.0"

__all__ = [
    "Sign", "SignVector", "compose", "separator", "separator_mask",
    "GroundSet", "OMError", "OrientedMatroid", "check_axioms", "contraction", "deletion",
    "from_arrangement", "from_covectors", "reorient", "restriction", "star",
    "bounded_tope_count", "underlying",
    "MultiPoly", "PolyMatrix", "SizeGuardError", "det_modp", "det_symbolic",
    "FinitePoset", "ComplexTooLarge", "SimplicialComplex", "order_complex", "reduced_homology",
    "Report",
    "build_calMe", "build_Me", "build_varchenko", "det_formula", "refined_formula",
    "verify_det", "verify_factorization",
]
