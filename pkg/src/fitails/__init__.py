"""Exact integer computations for the tails of finitely presented FI-modules."""

__version__ = "0.1.0"

from .combinatorics import (  # noqa: E402
    GroupRingElement,
    Injection,
    Permutation,
    compose,
    delta,
    derangements,
    enumerate_injections,
    expand_bracket_product,
    invert,
    oi_decompose,
    shuffle,
)
from .linalg import AbelianGroup, IntMatrix, cokernel, kernel_saturated, smith_normal_form  # noqa: E402
from .presentation import FIPresentation, evaluate_xi, parse_presentation, presentation_matrix_at  # noqa: E402
from .tails import TailProfile, evaluate_tail, oracle_check, tail_invariants  # noqa: E402
from .xi import XiVector, XiWord, act, d_kernel, group_ring_coords, xi_basis  # noqa: E402
