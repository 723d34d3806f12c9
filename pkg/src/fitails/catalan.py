"""The Catalan basis of ``Z FI(k, n)`` and its matching pairing with injections.

A Catalan function is a strictly increasing ``c: [ell] -> [n]`` with
``c(i) >= 2i``.  A basis element of ``CB^c_ell(k, n)`` is a word of
``Xi(ell)_k`` whose numbered letter ``j`` stands for the value ``c(j)``; the
FI^op action is therefore the one on ``Xi(ell)``, relabelled.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple

from .combinatorics import Injection, Word, enumerate_injections
from .linalg import IntMatrix, abs_determinant, unimodular_inverse
from .xi import act_word, format_word, tokenize_word, xi_basis_tuples

__all__ = [
    "CatalanFunction",
    "CBElement",
    "catalan_set",
    "cb_basis",
    "cb_prime_basis",
    "matches",
    "pairing_matrix",
    "chi",
    "chi_inverse_column",
    "act_cb",
    "chi_vector",
    "is_perfect",
    "ballot",
]


@dataclass(frozen=True, order=True)
class CatalanFunction:
    n: int
    values: Tuple[int, ...]

    def __post_init__(self):
        vals = tuple(self.values)
        object.__setattr__(self, "values", vals)
        for i, v in enumerate(vals, 1):
            if v < 2 * i or v > self.n:
                raise ValueError(f"c({i}) = {v} violates 2i <= c(i) <= n")
        if any(a >= b for a, b in zip(vals, vals[1:])):
            raise ValueError(f"{vals} is not strictly increasing")

    @property
    def ell(self) -> int:
        return len(self.values)

    def __call__(self, i: int) -> int:
        return self.values[i - 1]

    def __str__(self) -> str:
        return "[" + ",".join(map(str, self.values)) + "]"


@dataclass(frozen=True)
class CBElement:
    """``c`` together with a word of ``Xi(ell)_k`` (numbered letter ``j`` means ``c(j)``)."""

    c: CatalanFunction
    word: Word

    def __post_init__(self):
        word = tuple(self.word)
        object.__setattr__(self, "word", word)
        if sorted(word) != list(range(1, len(word) + 1)) or self.c.ell > len(word):
            raise ValueError(f"{word} is not a word of Xi({self.c.ell})_{len(word)}")

    @property
    def ell(self) -> int:
        return self.c.ell

    @property
    def k(self) -> int:
        return len(self.word)

    @property
    def n(self) -> int:
        return self.c.n

    def positions(self) -> List[Tuple[str, int]]:
        """Per position: ``("c", value)`` or ``("x", real index)``."""
        ell = self.ell
        return [("c", self.c(v)) if v <= ell else ("x", v - ell) for v in self.word]

    @classmethod
    def parse(cls, text: str, c: Sequence[int], n: int) -> "CBElement":
        """Parse ``x152x2`` style text given the values of ``c``."""
        cf = CatalanFunction(n, tuple(c))
        labels = {v: j for j, v in enumerate(cf.values, 1)}
        letters = []
        for code, is_real in tokenize_word(text):
            if is_real:
                letters.append(cf.ell + code)
            elif code in labels:
                letters.append(labels[code])
            else:
                raise ValueError(f"{code} is not a value of c = {cf}")
        return cls(cf, tuple(letters))

    def __str__(self) -> str:
        return format_word(self.word, self.ell, self.c.values)


def catalan_set(ell: int, n: int) -> List[CatalanFunction]:
    return [CatalanFunction(n, v) for v in _catalan_tuples(ell, n)]


@lru_cache(maxsize=None)
def _catalan_tuples(ell: int, n: int) -> Tuple[Tuple[int, ...], ...]:
    return tuple(
        v
        for v in itertools.combinations(range(1, n + 1), ell)
        if all(x >= 2 * i for i, x in enumerate(v, 1))
    )


def ballot(n: int, ell: int) -> int:
    return math.comb(n, ell) - (math.comb(n, ell - 1) if ell >= 1 else 0)


def cb_basis(k: int, n: int, max_ell: int | None = None) -> List[CBElement]:
    """``CB(k, n)`` ordered by ``ell``, then ``c``, then word."""
    top = k if max_ell is None else min(k, max_ell)
    out = []
    for ell in range(top + 1):
        words = xi_basis_tuples(ell, k)
        for c in catalan_set(ell, n):
            out.extend(CBElement(c, w) for w in words)
    return out


def cb_prime_basis(k: int, n: int) -> List[CBElement]:
    """``CB'(k, n)``: summands with ``ell <= min(k, n - k)``."""
    if k > n:
        return []
    return cb_basis(k, n, min(k, n - k))


def matches(f: Injection, pi: CBElement) -> bool:
    if f.domain_size != pi.k or f.codomain_size != pi.n:
        raise ValueError("injection and Catalan element have different sizes")
    return _matches(f.images, pi.word, pi.c.values)


def _matches(images: Sequence[int], word: Word, cvals: Sequence[int]) -> bool:
    ell = len(cvals)
    reals = []
    for img, v in zip(images, word):
        if v <= ell:
            if img != cvals[v - 1]:
                return False
        else:
            reals.append((v, img))
    reals.sort()
    return all(a[1] < b[1] for a, b in zip(reals, reals[1:]))


def pairing_matrix(k: int, n: int) -> Tuple[IntMatrix, List[Injection], List[CBElement]]:
    """Rows ``FI(k, n)`` (lexicographic), columns ``CB'(k, n)``; entry 1 on a match."""
    rows = enumerate_injections(k, n)
    cols = cb_prime_basis(k, n)
    m = IntMatrix(len(rows), len(cols))
    for j, pi in enumerate(cols):
        word, cv = pi.word, pi.c.values
        for i, f in enumerate(rows):
            if _matches(f.images, word, cv):
                m.data[i][j] = 1
    return m, rows, cols


def chi(k: int, n: int) -> IntMatrix:
    return pairing_matrix(k, n)[0]


def chi_vector(f: Injection) -> Dict[CBElement, int]:
    """``chi(f)``: the Catalan elements matched by ``f``."""
    return {pi: 1 for pi in cb_basis(f.domain_size, f.codomain_size) if matches(f, pi)}


def is_perfect(k: int, n: int) -> bool:
    m = chi(k, n)
    return m.rows == m.cols and abs_determinant(m) == 1


@lru_cache(maxsize=16)
def _inverse(k: int, n: int) -> IntMatrix:
    return unimodular_inverse(chi(k, n))


def chi_inverse_column(pi: CBElement) -> Dict[Injection, int]:
    """``chi^{-1}(pi)`` as a combination of injections (needs ``n >= 2k - 1``)."""
    k, n = pi.k, pi.n
    if n < 2 * k - 1:
        raise ValueError(f"chi^-1 needs n >= 2k-1 = {2 * k - 1}, got n = {n}")
    _, rows, cols = pairing_matrix(k, n)
    inv = _inverse(k, n)
    r = cols.index(pi)
    return {f: c for f, c in zip(rows, inv.data[r]) if c}


def act_cb(g: Injection, pi: CBElement) -> CBElement | None:
    """Precompose with ``g: [k'] -> [k]``; ``None`` when a value of ``c`` is lost."""
    if g.codomain_size != pi.k:
        raise ValueError("injection does not land in the word's positions")
    w = act_word(g.images, pi.word, pi.ell)
    return None if w is None else CBElement(pi.c, w)
