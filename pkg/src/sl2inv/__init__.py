"""Invariant rings of SL2 acting on sums of binary forms.

Exact polynomial arithmetic, transvectants, Poincare series, sieve bounds
on generator counts, and evaluation-based checks of generator lists and
systems of parameters.
"""
from .exactalg import Poly, rank, var
from .forms import BinaryForm, ModuleSpec, PointInV, act, in_nullcone, random_sl2
from .transvect import discriminant, sylvester_resultant, transvect_coeffs, transvectant
from .expr import eval_invariant, parse_expr, print_expr
from .poincare import dim_invariants, hd_one_two, r_one_two, series
from .tamisage import classic_tamisage, hd_lower, refined_bounds
from .genfind import (Inconclusive, construct_one_two, count_new_generators, extend_with_linear,
                      span_dimension, verify_generators, verify_hsop_candidate)

__version__ = "0.1.0"

__all__ = [
    "Poly", "rank", "var", "BinaryForm", "ModuleSpec", "PointInV", "act", "in_nullcone",
    "random_sl2", "discriminant", "sylvester_resultant", "transvect_coeffs", "transvectant",
    "eval_invariant", "parse_expr", "print_expr", "dim_invariants", "hd_one_two", "r_one_two",
    "series", "classic_tamisage", "hd_lower", "refined_bounds", "Inconclusive",
    "construct_one_two", "count_new_generators", "extend_with_linear", "span_dimension",
    "verify_generators", "verify_hsop_candidate",
]
