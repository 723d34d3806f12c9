"""Exact linear algebra over the integers.

Smith normal form drives everything here: cokernels, saturated kernels,
unimodular inverses and lattice comparisons.  The elimination loop runs in
the compiled int64 kernel when it is importable and every entry fits;
overflow or a missing extension routes the matrix through the pure-Python
kernel, which works with arbitrary-precision integers.  Set
``FITAILS_BACKEND=python`` to force the fallback.
"""
from __future__ import annotations

import logging
import math
import os
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Sequence, Tuple

from . import _snf_py

log = logging.getLogger(__name__)

try:
    import numpy as _np

    from ._snf_ext import diagonalize_int64 as _diagonalize_int64
except ImportError:  # pragma: no cover - depends on the build
    _diagonalize_int64 = None

_INT64_SAFE = 1 << 62


def available_backends() -> List[str]:
    return (["cython"] if _diagonalize_int64 is not None else []) + ["python"]


def default_backend() -> str:
    forced = os.environ.get("FITAILS_BACKEND", "").strip().lower()
    if forced in ("python", "cython"):
        if forced == "cython" and _diagonalize_int64 is None:
            raise ImportError("FITAILS_BACKEND=cython but the extension is not built")
        return forced
    return "cython" if _diagonalize_int64 is not None else "python"


BACKEND = default_backend()


class IntMatrix:
    """Dense integer matrix with arbitrary-precision entries."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows: int, cols: int, data: Sequence[Sequence[int]] | None = None):
        self.rows = rows
        self.cols = cols
        if data is None:
            self.data = [[0] * cols for _ in range(rows)]
        else:
            self.data = [list(map(int, r)) for r in data]
            if len(self.data) != rows or any(len(r) != cols for r in self.data):
                raise ValueError(f"data does not have shape {rows}x{cols}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(len(rows), cols, rows)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int) -> "IntMatrix":
        m = cls(rows, len(columns))
        for j, col in enumerate(columns):
            for i, v in enumerate(col):
                m.data[i][j] = v
        return m

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        m = cls(n, n)
        for i in range(n):
            m.data[i][i] = 1
        return m

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, idx):
        i, j = idx
        return self.data[i][j]

    def __eq__(self, other) -> bool:
        return isinstance(other, IntMatrix) and self.shape == other.shape and self.data == other.data

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shapes {self.shape} and {other.shape} do not multiply")
        out = IntMatrix(self.rows, other.cols)
        odata = other.data
        for i, row in enumerate(self.data):
            acc = out.data[i]
            for k, a in enumerate(row):
                if a:
                    orow = odata[k]
                    for j in range(other.cols):
                        b = orow[j]
                        if b:
                            acc[j] += a * b
        return out

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows, [list(c) for c in zip(*self.data)] if self.rows else [[] for _ in range(self.cols)])

    def column(self, j: int) -> List[int]:
        return [r[j] for r in self.data]

    def is_diagonal(self) -> bool:
        return all(v == 0 for i, r in enumerate(self.data) for j, v in enumerate(r) if i != j)

    def nnz(self) -> int:
        return sum(1 for r in self.data for v in r if v)

    def tolist(self) -> List[List[int]]:
        return [list(r) for r in self.data]

    def __repr__(self) -> str:
        return f"IntMatrix({self.rows}x{self.cols})"


@dataclass(frozen=True)
class AbelianGroup:
    """``Z^free_rank (+) Z/d1 (+) ... `` with ``d1 | d2 | ...`` and every ``di >= 2``."""

    free_rank: int = 0
    invariant_factors: Tuple[int, ...] = field(default_factory=tuple)

    def __post_init__(self):
        facs = tuple(int(d) for d in self.invariant_factors)
        object.__setattr__(self, "invariant_factors", facs)
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        for a, b in zip(facs, facs[1:]):
            if b % a:
                raise ValueError(f"invariant factors {facs} do not form a divisibility chain")
        if any(d < 2 for d in facs):
            raise ValueError("invariant factors must be at least 2")

    @classmethod
    def from_cyclic(cls, free_rank: int, orders: Iterable[Tuple[int, int]] | Iterable[int]) -> "AbelianGroup":
        """Normalize ``Z^r (+) sum of Z/m`` given ``(m, multiplicity)`` pairs or bare orders."""
        counts: Counter = Counter()
        for item in orders:
            m, mult = item if isinstance(item, tuple) else (item, 1)
            m = abs(int(m))
            if mult < 0:
                raise ValueError("negative multiplicity")
            if m == 0:
                free_rank += mult
            elif m > 1 and mult:
                counts[m] += mult
        return cls(free_rank, _invariant_factors(counts))

    def direct_sum(self, other: "AbelianGroup", times: int = 1) -> "AbelianGroup":
        return self.sum_multiples([(self, 1), (other, times)])

    @staticmethod
    def sum_multiples(parts: Iterable[Tuple["AbelianGroup", int]]) -> "AbelianGroup":
        free = 0
        orders: Counter = Counter()
        for g, mult in parts:
            if mult < 0:
                raise ValueError("negative multiplicity")
            free += g.free_rank * mult
            for d in g.invariant_factors:
                orders[d] += mult
        return AbelianGroup.from_cyclic(free, list(orders.items()))

    @property
    def torsion(self) -> Tuple[int, ...]:
        return self.invariant_factors

    def is_zero(self) -> bool:
        return self.free_rank == 0 and not self.invariant_factors

    def to_json(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.invariant_factors)}

    @classmethod
    def from_json(cls, obj: dict) -> "AbelianGroup":
        return cls(obj["free_rank"], tuple(obj["torsion"]))

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank:
            parts.append(f"Z^{self.free_rank}")
        run_value, run = None, 0
        for d in list(self.invariant_factors) + [None]:
            if d == run_value:
                run += 1
                continue
            if run_value is not None:
                parts.append(f"(Z/{run_value})^{run}" if run > 1 else f"Z/{run_value}")
            run_value, run = d, 1
        return " (+) ".join(parts) if parts else "0"


def _factorize(n: int) -> dict:
    from sympy import factorint

    return factorint(n)


def _invariant_factors(counts: Counter) -> Tuple[int, ...]:
    """Invariant factors of ``sum m^count`` via primary decomposition."""
    if not counts:
        return ()
    # prime -> Counter(exponent -> multiplicity)
    primary: dict = {}
    for m, mult in counts.items():
        for p, e in _factorize(m).items():
            primary.setdefault(p, Counter())[e] += mult
    length = max(sum(c.values()) for c in primary.values())
    factors = [1] * length
    for p, exps in primary.items():
        # largest exponents go to the largest (last) factors
        pos = length - 1
        for e in sorted(exps, reverse=True):
            pe = p ** e
            for _ in range(exps[e]):
                factors[pos] *= pe
                pos -= 1
    return tuple(factors)


# ---------------------------------------------------------------- Smith form


def _fits_int64(data: Sequence[Sequence[int]]) -> bool:
    return all(-_INT64_SAFE < v < _INT64_SAFE for r in data for v in r)


def diagonalize(
    m: IntMatrix, track_u: bool = True, track_v: bool = True, backend: Optional[str] = None
) -> Tuple[List[int], Optional[List[List[int]]], Optional[List[List[int]]]]:
    """Raw diagonalization ``U M V = diag`` (no sign or divisibility normalization)."""
    backend = backend or BACKEND
    if backend == "cython" and _diagonalize_int64 is not None and _fits_int64(m.data):
        a = _np.array(m.data, dtype=_np.int64).reshape(m.rows, m.cols)
        u = _np.eye(m.rows, dtype=_np.int64) if track_u else _np.zeros((0, 0), dtype=_np.int64)
        v = _np.eye(m.cols, dtype=_np.int64) if track_v else _np.zeros((0, 0), dtype=_np.int64)
        try:
            diag = _diagonalize_int64(a, u, v)
        except OverflowError:
            log.debug("int64 overflow on %dx%d matrix; using arbitrary precision", m.rows, m.cols)
        else:
            return (
                diag,
                u.tolist() if track_u else None,
                v.tolist() if track_v else None,
            )
    elif backend not in ("cython", "python"):
        raise ValueError(f"unknown backend {backend!r}")
    return _snf_py.diagonalize(m.data, m.rows, m.cols, track_u, track_v)


def _xgcd(a: int, b: int) -> Tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return x0, y0, a


def _normalize(diag: List[int], U, V) -> List[int]:
    """Make the diagonal positive with ``d_i | d_{i+1}``, updating ``U`` and ``V``."""
    d = list(diag)
    k = len(d)
    for i in range(k):
        if d[i] < 0:
            d[i] = -d[i]
            if U is not None:
                U[i] = [-x for x in U[i]]
    for i in range(k):
        for j in range(i + 1, k):
            a, b = d[i], d[j]
            if b % a == 0:
                continue
            x, y, g = _xgcd(a, b)
            ag, bg = a // g, b // g
            if U is not None:
                ui, uj = U[i], U[j]
                U[i] = [x * p + y * q for p, q in zip(ui, uj)]
                U[j] = [-bg * p + ag * q for p, q in zip(ui, uj)]
            if V is not None:
                for row in V:
                    vi, vj = row[i], row[j]
                    row[i] = vi + vj
                    row[j] = -y * bg * vi + x * ag * vj
            d[i], d[j] = g, a * bg
    return d


@dataclass
class SmithForm:
    U: Optional[IntMatrix]
    D: IntMatrix
    V: Optional[IntMatrix]
    diagonal: List[int]

    @property
    def rank(self) -> int:
        return len(self.diagonal)

    def __iter__(self):
        return iter((self.U, self.D, self.V))


def smith_normal_form(
    m: IntMatrix, compute_u: bool = True, compute_v: bool = True, backend: Optional[str] = None
) -> SmithForm:
    """``U M V = D`` with ``D`` diagonal, ``d_i | d_{i+1}``, ``d_i > 0`` on the
    nonzero part and ``U``, ``V`` unimodular."""
    diag, U, V = diagonalize(m, compute_u, compute_v, backend)
    diag = _normalize(diag, U, V)
    D = IntMatrix(m.rows, m.cols)
    for i, v in enumerate(diag):
        D.data[i][i] = v
    return SmithForm(
        IntMatrix(m.rows, m.rows, U) if U is not None else None,
        D,
        IntMatrix(m.cols, m.cols, V) if V is not None else None,
        diag,
    )


def invariant_factors(m: IntMatrix, backend: Optional[str] = None) -> List[int]:
    """Nonzero Smith diagonal, units included."""
    diag, _, _ = diagonalize(m, False, False, backend)
    return _normalize(diag, None, None)


def rank(m: IntMatrix) -> int:
    return len(invariant_factors(m))


def cokernel(m: IntMatrix, backend: Optional[str] = None) -> AbelianGroup:
    """``Z^rows / (column span of m)``."""
    diag = invariant_factors(m, backend)
    return AbelianGroup(m.rows - len(diag), tuple(d for d in diag if d > 1))


def kernel_saturated(m: IntMatrix, backend: Optional[str] = None) -> List[List[int]]:
    """A basis of the full lattice ``{v in Z^cols : m v = 0}``."""
    diag, _, V = diagonalize(m, False, True, backend)
    r = len(diag)
    return [[V[i][j] for i in range(m.cols)] for j in range(r, m.cols)]


def is_unimodular(m: IntMatrix, backend: Optional[str] = None) -> bool:
    if m.rows != m.cols:
        return False
    diag = invariant_factors(m, backend)
    return len(diag) == m.rows and all(d == 1 for d in diag)


def unimodular_inverse(m: IntMatrix, backend: Optional[str] = None) -> IntMatrix:
    """Exact inverse of a square matrix with determinant +-1."""
    if m.rows != m.cols:
        raise ValueError("only square matrices have inverses")
    snf = smith_normal_form(m, backend=backend)
    if snf.rank != m.rows or any(d != 1 for d in snf.diagonal):
        raise ValueError("matrix is not unimodular")
    return snf.V @ snf.U


def abs_determinant(m: IntMatrix) -> int:
    if m.rows != m.cols:
        raise ValueError("determinant of a non-square matrix")
    diag = invariant_factors(m)
    return math.prod(diag) if len(diag) == m.rows else 0


def solve_integer(m: IntMatrix, b: Sequence[int]) -> Optional[List[int]]:
    """Some integer ``x`` with ``m x = b``, or ``None``."""
    snf = smith_normal_form(m)
    ub = [sum(u * v for u, v in zip(row, b)) for row in snf.U.data]
    y = [0] * m.cols
    for i, d in enumerate(snf.diagonal):
        if ub[i] % d:
            return None
        y[i] = ub[i] // d
    if any(ub[i] for i in range(snf.rank, m.rows)):
        return None
    return [sum(row[j] * y[j] for j in range(m.cols)) for row in snf.V.data]


def lattices_equal(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]], dim: int) -> bool:
    """Whether two generator lists span the same sublattice of ``Z^dim``."""

    def covolume(gens):
        if not gens:
            return 0, 1
        diag = invariant_factors(IntMatrix.from_columns(list(gens), dim))
        return len(diag), math.prod(diag)

    ra, va = covolume(a)
    rb, vb = covolume(b)
    ru, vu = covolume(list(a) + list(b))
    return ra == rb == ru and va == vb == vu
