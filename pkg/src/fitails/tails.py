"""Tail invariants and the stable-range structure of ``M_n``.

For a module presented in degrees ``<= d`` the tail invariants are
``A_ell = coker Xi(ell)_Z`` for ``ell = 0..d``, and for ``n >= 2d - 1``::

    M_n = (+)_ell A_ell^(C(n, ell) - C(n, ell - 1))

The oracle recomputes ``M_n`` directly from the degree-``n`` presentation
matrix and compares.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import List, Optional

from .linalg import AbelianGroup, cokernel
from .presentation import FIPresentation, evaluate_xi, presentation_matrix_at, presentation_size_at

log = logging.getLogger(__name__)

DEFAULT_MAX_CELLS = 2_000_000


class MatrixTooLarge(RuntimeError):
    pass


def multiplicity(n: int, ell: int) -> int:
    """``C(n, ell) - C(n, ell - 1)``."""
    return math.comb(n, ell) - (math.comb(n, ell - 1) if ell else 0)


@dataclass(frozen=True)
class TailProfile:
    degree: int
    invariants: tuple

    @property
    def stable_from(self) -> int:
        return max(2 * self.degree - 1, 0)

    @property
    def poly_degree(self) -> int:
        return effective_poly_degree(self)

    def invariant(self, ell: int) -> AbelianGroup:
        return self.invariants[ell] if 0 <= ell < len(self.invariants) else AbelianGroup()

    def to_json(self) -> dict:
        return {
            "d": self.degree,
            "stable_from": self.stable_from,
            "invariants": [a.to_json() for a in self.invariants],
            "poly_degree": self.poly_degree,
        }


def tail_invariants(z: FIPresentation) -> TailProfile:
    d = z.degree
    groups = tuple(cokernel(evaluate_xi(z, ell).matrix) for ell in range(d + 1))
    return TailProfile(d, groups)


def evaluate_tail(profile: TailProfile, n: int, check_range: bool = True) -> AbelianGroup:
    if check_range and n < profile.stable_from:
        raise ValueError(
            f"n = {n} is below the stable range; the decomposition holds for n >= {profile.stable_from}"
        )
    parts = [(a, multiplicity(n, ell)) for ell, a in enumerate(profile.invariants)]
    return AbelianGroup.sum_multiples([(a, k) for a, k in parts if k > 0])


def effective_poly_degree(profile: TailProfile) -> int:
    """Largest ``ell`` with ``A_ell != 0``; -1 when every invariant vanishes."""
    nonzero = [ell for ell, a in enumerate(profile.invariants) if not a.is_zero()]
    return nonzero[-1] if nonzero else -1


def module_at(z: FIPresentation, n: int, max_cells: Optional[int] = DEFAULT_MAX_CELLS) -> AbelianGroup:
    """``M_n`` computed from the degree-``n`` presentation matrix."""
    rows, cols = presentation_size_at(z, n)
    if max_cells is not None and rows * cols > max_cells:
        raise MatrixTooLarge(
            f"degree-{n} presentation matrix is {rows}x{cols} = {rows * cols} cells, cap is {max_cells}"
        )
    return cokernel(presentation_matrix_at(z, n).matrix)


@dataclass
class OracleReport:
    n: int
    stable_from: int
    predicted: Optional[AbelianGroup]
    actual: AbelianGroup

    @property
    def in_range(self) -> bool:
        return self.n >= self.stable_from

    @property
    def equal(self) -> Optional[bool]:
        """Verdict in the stable range, ``None`` below it."""
        if not self.in_range:
            return None
        return self.predicted == self.actual

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "stable_from": self.stable_from,
            "in_range": self.in_range,
            "predicted": self.predicted.to_json() if self.predicted is not None else None,
            "actual": self.actual.to_json(),
            "equal": self.equal,
        }


def oracle_check(
    z: FIPresentation, n: int, max_cells: Optional[int] = DEFAULT_MAX_CELLS, profile: TailProfile | None = None
) -> OracleReport:
    profile = profile or tail_invariants(z)
    actual = module_at(z, n, max_cells)
    predicted = evaluate_tail(profile, n, check_range=False)
    return OracleReport(n, profile.stable_from, predicted, actual)
