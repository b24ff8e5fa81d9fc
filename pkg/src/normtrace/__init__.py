"""Norms and traces over finite field towers.

Counts N_n(a, b) = #{z in F_{q^n} : Norm z = a, Tr z = b} by exhaustive
enumeration, Artin-Schreier curve point counts, Gauss sums and closed forms,
checks the classical and refined bounds against exact values, and counts
irreducible polynomials with prescribed trace and norm coefficients.
"""

__version__ = "0.1.0"

from .errors import NormTraceError, ScaleExceeded  # noqa: E402
from .fieldtower import FieldTower, build_tower  # noqa: E402

__all__ = ["__version__", "NormTraceError", "ScaleExceeded", "FieldTower", "build_tower"]
