"""The FI^op-modules Xi(ell).

A basis word of ``Xi(ell)_n`` is stored as a tuple of letter codes
``1..n``: codes ``1..ell`` are the numbered letters and code ``ell + i`` is
``x_i``.  Under this encoding ``xi_{n,ell} = 1..ell x_1..x_{n-ell}`` is the
identity tuple, the canonical basis order is lexicographic order on tuples,
and a word is its own coordinate in ``Z S_n`` (``sigma . w = w o sigma``).
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterator, List, Sequence, Tuple

from .combinatorics import GroupRingElement, Injection, Word, delta, standardize

__all__ = [
    "XiWord",
    "XiVector",
    "xi_basis",
    "xi_element",
    "act",
    "act_word",
    "apply_group_ring",
    "group_ring_coords",
    "d_kernel",
]


def _letter_text(code: int, ell: int, fixed_labels: Sequence[int] | None = None) -> str:
    if code <= ell:
        v = code if fixed_labels is None else fixed_labels[code - 1]
        return str(v) if v < 10 else f"({v})"
    i = code - ell
    return f"x{i}" if i < 10 else f"x({i})"


def format_word(letters: Sequence[int], ell: int, fixed_labels: Sequence[int] | None = None) -> str:
    if not letters:
        return "()"
    return "".join(_letter_text(c, ell, fixed_labels) for c in letters)


_TOKEN = re.compile(r"x(\d|\(\d+\))|(\d|\(\d+\))")


def tokenize_word(text: str) -> List[Tuple[int, bool]]:
    """Split a word into ``(number, is_x_letter)`` tokens."""
    text = text.strip()
    if text == "()":
        return []
    out, pos = [], 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ValueError(f"bad word {text!r} at offset {pos}")
        if m.group(1) is not None:
            out.append((int(m.group(1).strip("()")), True))
        else:
            out.append((int(m.group(2).strip("()")), False))
        pos = m.end()
    return out


def parse_word(text: str, ell: int) -> Word:
    """Inverse of :func:`format_word` for plain numbered letters."""
    return tuple(ell + v if real else v for v, real in tokenize_word(text))


@dataclass(frozen=True)
class XiWord:
    ell: int
    letters: Word

    def __post_init__(self):
        if sorted(self.letters) != list(range(1, len(self.letters) + 1)):
            raise ValueError(f"{self.letters} is not a bijection onto the alphabet")
        if self.ell > len(self.letters):
            raise ValueError("word shorter than its numbered alphabet")

    @property
    def n(self) -> int:
        return len(self.letters)

    @classmethod
    def parse(cls, text: str, ell: int) -> "XiWord":
        return cls(ell, parse_word(text, ell))

    def __str__(self) -> str:
        return format_word(self.letters, self.ell)


class XiVector:
    """Integer combination of basis words of ``Xi(ell)_n``."""

    __slots__ = ("ell", "n", "terms")

    def __init__(self, ell: int, n: int, terms: Dict[Word, int] | None = None):
        self.ell = ell
        self.n = n
        self.terms = {w: c for w, c in (terms or {}).items() if c}

    @classmethod
    def from_word(cls, word: XiWord, coeff: int = 1) -> "XiVector":
        return cls(word.ell, word.n, {word.letters: coeff})

    @classmethod
    def parse(cls, text: str, ell: int) -> "XiVector":
        """Parse ``"2x11x2 - 2x21x1"`` style sums."""
        terms: Dict[Word, int] = {}
        n = None
        for sign, coef, word in re.findall(r"([+-]?)\s*(?:(\d+)\*)?\s*([^\s+-]+)", text):
            letters = parse_word(word, ell)
            n = len(letters) if n is None else n
            c = (int(coef) if coef else 1) * (-1 if sign == "-" else 1)
            terms[letters] = terms.get(letters, 0) + c
        return cls(ell, n or 0, terms)

    def _check(self, other: "XiVector") -> None:
        if (self.ell, self.n) != (other.ell, other.n):
            raise ValueError(
                f"Xi({self.ell})_{self.n} and Xi({other.ell})_{other.n} do not mix"
            )

    def __add__(self, other: "XiVector") -> "XiVector":
        self._check(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, 0) + c
        return XiVector(self.ell, self.n, out)

    def __neg__(self) -> "XiVector":
        return XiVector(self.ell, self.n, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "XiVector") -> "XiVector":
        return self + (-other)

    def scale(self, k: int) -> "XiVector":
        return XiVector(self.ell, self.n, {w: k * c for w, c in self.terms.items()})

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, XiVector)
            and (self.ell, self.n) == (other.ell, other.n)
            and self.terms == other.terms
        )

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def words(self) -> Iterator[Tuple[XiWord, int]]:
        for w in sorted(self.terms):
            yield XiWord(self.ell, w), self.terms[w]

    def concat_reals(self, n: int) -> "XiVector":
        """Append ``x_{k+1} .. x_{n-ell}`` to every word (``k = self.n - ell``)."""
        tail = tuple(range(self.n + 1, n + 1))
        return XiVector(self.ell, n, {w + tail: c for w, c in self.terms.items()})

    def vector(self, basis: Sequence[Word] | None = None) -> List[int]:
        basis = xi_basis_tuples(self.ell, self.n) if basis is None else basis
        return [self.terms.get(w, 0) for w in basis]

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w in sorted(self.terms):
            c = self.terms[w]
            mag = "" if abs(c) == 1 else f"{abs(c)}*"
            parts.append(("- " if c < 0 else "+ ") + mag + format_word(w, self.ell))
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[1:]

    def __repr__(self) -> str:
        return f"XiVector(ell={self.ell}, n={self.n}, {str(self)!r})"


@lru_cache(maxsize=64)
def xi_basis_tuples(ell: int, n: int) -> Tuple[Word, ...]:
    if n < ell:
        return ()
    return tuple(itertools.permutations(range(1, n + 1)))


def xi_basis(ell: int, n: int) -> List[XiWord]:
    """Basis words of ``Xi(ell)_n`` in canonical (lexicographic) order."""
    return [XiWord(ell, w) for w in xi_basis_tuples(ell, n)]


def xi_element(n: int, ell: int) -> XiVector:
    """``xi_{n,ell} = 1..ell x_1..x_{n-ell}``."""
    if n < ell:
        raise ValueError(f"xi_{{{n},{ell}}} needs n >= ell")
    return XiVector(ell, n, {tuple(range(1, n + 1)): 1})


def act_word(images: Sequence[int], word: Word, ell: int) -> Word | None:
    """Precompose ``word`` with an injection and standardize; ``None`` if a
    numbered letter is lost."""
    sub = [word[v - 1] for v in images]
    if ell:
        present = 0
        for c in sub:
            if c <= ell:
                present += 1
        if present != ell:
            return None
    return standardize(sub)


def act(f: Injection, v: XiVector) -> XiVector:
    """Action of ``f: [m] -> [n]`` sending ``Xi(ell)_n`` to ``Xi(ell)_m``."""
    if f.codomain_size != v.n:
        raise ValueError(f"injection into [{f.codomain_size}] cannot act on degree {v.n}")
    m = f.domain_size
    out: Dict[Word, int] = {}
    images = f.images
    for w, c in v.terms.items():
        u = act_word(images, w, v.ell)
        if u is not None:
            out[u] = out.get(u, 0) + c
    return XiVector(v.ell, m, out)


def apply_group_ring(e: GroupRingElement, v: XiVector) -> XiVector:
    """Left action of ``Z S_n`` on ``Xi(ell)_n``: ``sigma . w = w o sigma``."""
    if e.size != v.n:
        raise ValueError("group ring element and vector sizes differ")
    out: Dict[Word, int] = {}
    for p, a in e.terms.items():
        for w, c in v.terms.items():
            u = tuple(w[i - 1] for i in p)
            out[u] = out.get(u, 0) + a * c
    return XiVector(v.ell, v.n, out)


def group_ring_coords(v: XiVector) -> GroupRingElement:
    """The unique ``e`` with ``e . xi_{n,ell} = v``."""
    return GroupRingElement(v.n, dict(v.terms))


def delta_matrix(ell: int, n: int) -> List[List[int]]:
    """Rows ``Xi(ell)_{n-1}`` (stacked over ``i = 1..n``), columns ``Xi(ell)_n``."""
    cols = xi_basis_tuples(ell, n)
    rows = xi_basis_tuples(ell, n - 1)
    index = {w: r for r, w in enumerate(rows)}
    mat = [[0] * len(cols) for _ in range(n * len(rows))]
    for i in range(1, n + 1):
        images = delta(i, n).images
        offset = (i - 1) * len(rows)
        for j, w in enumerate(cols):
            u = act_word(images, w, ell)
            if u is not None:
                mat[offset + index[u]][j] += 1
    return mat


def d_kernel(n: int) -> List[XiVector]:
    """Saturated basis of ``D_n``: vectors of ``Xi(0)_n`` killed by every ``delta_i``."""
    from .linalg import IntMatrix, kernel_saturated

    cols = xi_basis_tuples(0, n)
    if n == 0:
        return [xi_element(0, 0)]
    mat = IntMatrix.from_rows(delta_matrix(0, n), cols=len(cols))
    return [
        XiVector(0, n, {w: c for w, c in zip(cols, vec) if c})
        for vec in kernel_saturated(mat)
    ]
