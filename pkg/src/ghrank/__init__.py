"""Generalized Hadamard matrices over GF(q) and the rank and kernel of their codes."""

from .constructions import (
    InfeasibleError,
    SwitchPlan,
    build_kernel_target,
    build_rank_kernel_target,
    kronecker,
    s_q,
    s_q_swapped,
    switch,
    sylvester,
)
from .gf import FieldSpec, element_arith, field_new, field_of_order, sum_of_squares
from .ghcode import (
    Code,
    LinearBasis,
    c_code,
    dual_basis,
    f_code,
    is_self_dual,
    is_self_orthogonal,
    is_subfield_additive,
    kernel_p,
    kernel_q,
    min_distance,
    puncture_by_kernel,
    rank_p,
    rank_q,
)
from .ghmatrix import GhMatrix, apply_moves, is_gh, normalize, translation_equivalent, transpose
from .invariants import InvariantProfile, nonequivalence_certificate, profile, verify_bounds

__version__ = "0.1.0"
