"""Kurepa's left factorial K(z) and its companion K1(z) over the complex plane."""
from ._backend import BACKEND
from .core import (
    EvalResult,
    Flag,
    Method,
    TailBoundParams,
    k1,
    k1_series,
    k1_tail_bound,
    kurepa,
    kurepa_incgamma,
    kurepa_integral,
    kurepa_slavic,
    l1_constant,
    left_factorial_exact,
    left_factorial_sequence,
    numerical_residue,
    pv_k1,
    pv_kurepa,
    residue_k1,
    residue_kurepa,
    symmetric_limit,
    tail_bound_params,
)
from .errors import BranchError, ConvergenceError, DomainError, KurepaError, PoleError

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BranchError",
    "ConvergenceError",
    "DomainError",
    "EvalResult",
    "Flag",
    "KurepaError",
    "Method",
    "PoleError",
    "TailBoundParams",
    "k1",
    "k1_series",
    "k1_tail_bound",
    "kurepa",
    "kurepa_incgamma",
    "kurepa_integral",
    "kurepa_slavic",
    "l1_constant",
    "left_factorial_exact",
    "left_factorial_sequence",
    "numerical_residue",
    "pv_k1",
    "pv_kurepa",
    "residue_k1",
    "residue_kurepa",
    "symmetric_limit",
    "tail_bound_params",
]
