"""Reduction-based creative telescoping for hypergeometric and q-hypergeometric terms."""

from .arith import RatFunc, format_poly, format_ratfunc
from .bounds import QProperDescriptor, az_bound, bound_report, compile_qproper
from .errors import CTError
from .expr import parse_ratfunc
from .reduce import complement_basis, is_summable, reduce_shell, rnf_and_basis
from .rnf import compute_rnf, standardize_kernel
from .shiftcase import QSHIFT, SHIFT, CaseTag
from .telescope import Found, NoTelescoper, TermSpec, find_telescoper, validate_term, verify_certificate

__version__ = "0.1.0"

__all__ = [
    "CTError", "CaseTag", "Found", "NoTelescoper", "QProperDescriptor", "QSHIFT", "RatFunc",
    "SHIFT", "TermSpec", "az_bound", "bound_report", "compile_qproper", "complement_basis",
    "compute_rnf", "find_telescoper", "format_poly", "format_ratfunc", "is_summable",
    "parse_ratfunc", "reduce_shell", "rnf_and_basis", "standardize_kernel", "validate_term",
    "verify_certificate",
]
