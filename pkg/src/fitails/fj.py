"""Hom-spaces of FJ through the Lie-bracket basis.

A basis morphism ``Xi(ell) -> Xi(m)`` at level ``d`` is an injection
``f: [m] -> [d]`` together with a product of left-nested brackets whose
blocks partition ``[d] \\ im f``.  Its value on ``xi_{d,m}``-coordinates is
the inverse of ``f * brackets``; in higher degrees the x-letters are
appended, and for ``ell < d`` the result is precomposed with the shuffle
map ``u_{ell,d}``.

Everything is stored as coordinates in ``Z S_n`` relative to
``xi_{n,m}``: since ``Xi(m)_n`` is free on that element, a morphism is
determined by the image of ``xi_{n,ell}``.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from .combinatorics import (
    GroupRingElement,
    Injection,
    Word,
    bracket_basis,
    derangements,
    enumerate_injections,
    expand_brackets,
    falling_factorial,
    perm_inverse,
    shuffle,
)
from .linalg import IntMatrix, invariant_factors, solve_integer
from .xi import XiVector, group_ring_coords

log = logging.getLogger(__name__)

# Coordinates of a composite "first phi, then psi" are coords(phi) * coords(psi).
# Fixed by comparison with direct evaluation (see the composition tests).
INNER_FACTOR_FIRST = True


@dataclass(frozen=True)
class FJBasisElement:
    source: int
    target: int
    level: int
    f: Injection
    blocks: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        blocks = tuple(tuple(b) for b in self.blocks)
        object.__setattr__(self, "blocks", blocks)
        d = self.level
        if d < max(self.source, self.target):
            raise ValueError(f"level {d} is below max(source, target)")
        if self.f.domain_size != self.target or self.f.codomain_size != d:
            raise ValueError(f"f must be an injection [{self.target}] -> [{d}]")
        rest = sorted(set(range(1, d + 1)) - set(self.f.images))
        letters = sorted(v for b in blocks for v in b)
        if letters != rest:
            raise ValueError(f"blocks {blocks} do not partition {rest}")
        for b in blocks:
            if len(b) < 2 or b[0] != min(b):
                raise ValueError(f"bad bracket {list(b)}")
        mins = [b[0] for b in blocks]
        if mins != sorted(mins):
            raise ValueError("blocks must be ordered by their minima")

    def __str__(self) -> str:
        inner = ",".join("[" + ",".join(map(str, b)) + "]" for b in self.blocks)
        return f"d={self.level} f={self.f} blocks=[{inner}]"

    def to_json(self) -> dict:
        return {
            "source": self.source,
            "target": self.target,
            "level": self.level,
            "f": list(self.f.images),
            "blocks": [list(b) for b in self.blocks],
        }

    def top_coords(self) -> Dict[Word, int]:
        """Coordinates of the image of ``xi_{d,ell}`` ignoring the ``u`` map."""
        terms = expand_brackets(self.blocks, prefix=self.f.images)
        return {perm_inverse(p): c for p, c in terms.items()}


def fj_basis_at_level(ell: int, m: int, d: int) -> List[FJBasisElement]:
    if d < max(ell, m):
        return []
    out = []
    for f in enumerate_injections(m, d):
        rest = sorted(set(range(1, d + 1)) - set(f.images))
        for blocks in bracket_basis(rest):
            out.append(FJBasisElement(ell, m, d, f, tuple(blocks)))
    return out


def level_count(ell: int, m: int, d: int) -> int:
    if d < max(ell, m):
        return 0
    return falling_factorial(d, m) * derangements(d - m)


def fj_basis(ell: int, m: int, max_level: int) -> List[FJBasisElement]:
    """All basis elements of level ``<= max_level``, by level then injection."""
    out = []
    for d in range(max(ell, m), max_level + 1):
        out.extend(fj_basis_at_level(ell, m, d))
    return out


@lru_cache(maxsize=256)
def _u_words(ell: int, d: int, n: int) -> Tuple[Word, ...]:
    head = tuple(range(1, ell + 1))
    return tuple(head + w for w in sorted(shuffle(range(ell + 1, d + 1), range(d + 1, n + 1))))


def u_map(ell: int, d: int, n: int) -> XiVector:
    """``u_{ell,d}(xi_{n,ell})`` in ``Xi(d)_n``."""
    if not 0 <= ell <= d <= n:
        raise ValueError(f"u map needs ell <= d <= n, got {ell}, {d}, {n}")
    return XiVector(d, n, {w: 1 for w in _u_words(ell, d, n)})


def _precompose(terms: Dict[Word, int], words: Sequence[Word]) -> Dict[Word, int]:
    """``sum_w w . (terms)``: apply each permutation ``w`` to every term."""
    out: Dict[Word, int] = {}
    for w in words:
        for e, c in terms.items():
            u = tuple(e[v - 1] for v in w)
            out[u] = out.get(u, 0) + c
    return {u: c for u, c in out.items() if c}


def evaluate_at_level(b: FJBasisElement, n: int) -> XiVector:
    """Image of ``xi_{n,ell}`` in ``Xi(m)_n``."""
    if n < b.level:
        raise ValueError(f"degree {n} is below the level {b.level}")
    tail = tuple(range(b.level + 1, n + 1))
    terms = {w + tail: c for w, c in b.top_coords().items()}
    if b.source < b.level:
        terms = _precompose(terms, _u_words(b.source, b.level, n))
    return XiVector(b.target, n, terms)


def coords_at(b: FJBasisElement, n: int) -> GroupRingElement:
    return group_ring_coords(evaluate_at_level(b, n))


@dataclass
class FJMorphism:
    """Finite combination of basis elements (a truncation of the full series)."""

    source: int
    target: int
    coefficients: Dict[FJBasisElement, int] = field(default_factory=dict)

    def __post_init__(self):
        self.coefficients = {b: c for b, c in self.coefficients.items() if c}
        for b in self.coefficients:
            if (b.source, b.target) != (self.source, self.target):
                raise ValueError(f"{b} is not a morphism {self.source} -> {self.target}")

    @classmethod
    def basis(cls, b: FJBasisElement) -> "FJMorphism":
        return cls(b.source, b.target, {b: 1})

    @classmethod
    def identity(cls, ell: int) -> "FJMorphism":
        b = FJBasisElement(ell, ell, ell, Injection(tuple(range(1, ell + 1)), ell), ())
        return cls.basis(b)

    def coords(self, n: int) -> GroupRingElement:
        """Coordinates at degree ``n``; summands above level ``n`` vanish there."""
        out = GroupRingElement(n, {})
        for b, c in self.coefficients.items():
            if b.level <= n:
                out = out + coords_at(b, n).scale(c)
        return out

    def evaluate(self, n: int) -> XiVector:
        return XiVector(self.target, n, dict(self.coords(n).terms))


def compose_coords(inner: GroupRingElement, outer: GroupRingElement) -> GroupRingElement:
    return inner * outer if INNER_FACTOR_FIRST else outer * inner


def compose(g: FJMorphism, f: FJMorphism, n: int) -> GroupRingElement:
    """Coordinates of ``g o f`` (``f`` applied first) at degree ``n``."""
    if f.target != g.source:
        raise ValueError(f"cannot compose {f.source}->{f.target} with {g.source}->{g.target}")
    return compose_coords(f.coords(n), g.coords(n))


# ---------------------------------------------------------------- truncations


@dataclass
class TruncatedHomSpace:
    source: int
    target: int
    level: int
    basis: List[FJBasisElement]
    lattice: List[GroupRingElement]

    @property
    def rank(self) -> int:
        return len(self.lattice)

    def matrix(self) -> IntMatrix:
        """Columns are lattice generators in the lexicographic basis of ``Z S_d``."""
        perms = _perm_index(self.level)
        cols = [g.vector(perms) for g in self.lattice]
        return IntMatrix.from_columns(cols, len(perms))

    def coordinates(self, e: GroupRingElement) -> Optional[List[int]]:
        """Integer coordinates of ``e`` in the generators, or ``None``."""
        if not self.lattice:
            return [] if not e else None
        return solve_integer(self.matrix(), e.vector(_perm_index(self.level)))


@lru_cache(maxsize=16)
def _perm_index(d: int) -> Dict[Word, int]:
    from itertools import permutations

    return {p: i for i, p in enumerate(permutations(range(1, d + 1)))}


def truncated_hom(ell: int, m: int, d: int) -> TruncatedHomSpace:
    """``FJ_{<=d}(ell, m)`` as a sublattice of ``Z S_d``."""
    basis = fj_basis(ell, m, d)
    lattice = [coords_at(b, d) for b in basis]
    return TruncatedHomSpace(ell, m, d, basis, lattice)


def lattice_rank(space: TruncatedHomSpace) -> int:
    if not space.lattice:
        return 0
    return len(invariant_factors(space.matrix()))


@dataclass
class QRing:
    degree: int
    entries: List[List[TruncatedHomSpace]]
    # (l, m, p) -> [i][j] -> coordinates of gen_i(l,m) * gen_j(m,p) in entry (l,p)
    structure: Dict[Tuple[int, int, int], List[List[List[int]]]]

    @property
    def ranks(self) -> List[List[int]]:
        return [[e.rank for e in row] for row in self.entries]

    @property
    def total_rank(self) -> int:
        return sum(sum(r) for r in self.ranks)


def q_ring(d: int, with_structure: bool = True) -> QRing:
    """Rows are sources, columns targets; entry ``(l, m)`` is ``FJ_{<=d}(l, m)``."""
    entries = [[truncated_hom(l, m, d) for m in range(d + 1)] for l in range(d + 1)]
    structure: Dict[Tuple[int, int, int], List[List[List[int]]]] = {}
    if with_structure:
        for l in range(d + 1):
            for m in range(d + 1):
                for p in range(d + 1):
                    a, b, target = entries[l][m], entries[m][p], entries[l][p]
                    if not a.lattice or not b.lattice:
                        continue
                    table = []
                    for x in a.lattice:
                        row = []
                        for y in b.lattice:
                            coords = target.coordinates(compose_coords(x, y))
                            if coords is None:
                                raise ArithmeticError(
                                    f"product of ({l},{m}) and ({m},{p}) generators leaves the lattice"
                                )
                            row.append(coords)
                        table.append(row)
                    structure[(l, m, p)] = table
    return QRing(d, entries, structure)
