"""Exact decision procedures for real radical expressibility of polynomial roots."""

__version__ = "0.1.0"

from .classify import Verdict, analyze_sextic_case_study, classify, cubic_radical_obstruction
from .poly import Poly, parse_poly
from .realroots import count_real_roots, isolate_real_roots

__all__ = ["Poly", "Verdict", "analyze_sextic_case_study", "classify", "count_real_roots",
           "cubic_radical_obstruction", "isolate_real_roots", "parse_poly"]
