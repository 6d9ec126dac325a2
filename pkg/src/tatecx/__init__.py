"""Exact Tate homology and cohomology over small rings.

Complexes of finitely generated graded modules over ``F_p``, ``Z/n`` and
graded quotients ``F_p[x, ...]/I``, their tensor and Hom complexes, the
pinched variants, and finite-window verification of complete resolutions.
"""

from .complexes import (
    ChainComplex,
    ChainMap,
    ComplexError,
    HomologyTable,
    Report,
    UndeterminedDegreeError,
    WindowComplex,
    build_free_resolution,
    homology,
    verify_complex,
)
from .constructions import (
    HomComplex,
    PinchedHom,
    PinchedTensor,
    TensorComplex,
    adjunction_iso,
    check_isomorphism,
    commutativity_iso,
    swap_iso,
)
from .matrix import Matrix
from .modules import Module
from .rings import Ring, RingError, graded_quotient, int_mod, prime_field
from .tate import CompleteResolution, TateError

__version__ = "0.1.0"

__all__ = [
    "ChainComplex",
    "ChainMap",
    "CompleteResolution",
    "ComplexError",
    "HomComplex",
    "HomologyTable",
    "Matrix",
    "Module",
    "PinchedHom",
    "PinchedTensor",
    "Report",
    "Ring",
    "RingError",
    "TateError",
    "TensorComplex",
    "UndeterminedDegreeError",
    "WindowComplex",
    "adjunction_iso",
    "build_free_resolution",
    "check_isomorphism",
    "commutativity_iso",
    "graded_quotient",
    "homology",
    "int_mod",
    "prime_field",
    "swap_iso",
    "verify_complex",
]
