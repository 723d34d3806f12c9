"""Injections, permutations, shuffles and Lie-bracket words.

Injections are stored as tuples of images, ``images[i] = f(i + 1)``, with
values in ``1..n``.  Permutations are injections with ``k == n``.  The text
form is a bracketed comma list, e.g. ``[3,1]``.

Group-ring elements are products in ``Z S_n`` under the convention that
``(p * q)`` acts as ``p`` after ``q`` on the left of a word, i.e. the
underlying permutation is ``q o p``.  This matches the precomposition action
on words used throughout the package.
"""
from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterable, Iterator, List, Sequence, Tuple

Word = Tuple[int, ...]


def _fmt_letter(v: int) -> str:
    return str(v) if v < 10 else f"({v})"


def format_one_line(images: Sequence[int]) -> str:
    """One-line notation with multi-digit letters parenthesized."""
    if not images:
        return "()"
    return "".join(_fmt_letter(v) for v in images)


@dataclass(frozen=True)
class Injection:
    images: Tuple[int, ...]
    codomain_size: int

    def __post_init__(self):
        images = tuple(int(v) for v in self.images)
        object.__setattr__(self, "images", images)
        n = self.codomain_size
        if len(images) > n:
            raise ValueError(f"injection of {len(images)} points into [{n}]")
        if len(set(images)) != len(images):
            raise ValueError(f"repeated image in {list(images)}")
        for v in images:
            if not 1 <= v <= n:
                raise ValueError(f"image {v} outside [1, {n}]")

    @property
    def domain_size(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __str__(self) -> str:
        return "[" + ",".join(map(str, self.images)) + "]"

    @classmethod
    def parse(cls, text: str, codomain_size: int | None = None) -> "Injection":
        m = re.fullmatch(r"\s*\[\s*([0-9,\s]*)\]\s*", text)
        if m is None:
            raise ValueError(f"malformed injection {text!r}")
        body = m.group(1).strip()
        images = tuple(int(t) for t in body.split(",")) if body else ()
        if codomain_size is None:
            codomain_size = max(images, default=0)
        return cls(images, codomain_size)

    def is_monotone(self) -> bool:
        return all(a < b for a, b in zip(self.images, self.images[1:]))


class Permutation(Injection):
    def __init__(self, images: Sequence[int], size: int | None = None):
        images = tuple(images)
        super().__init__(images, len(images) if size is None else size)
        if self.codomain_size != len(images):
            raise ValueError("a permutation needs as many images as points")

    @property
    def size(self) -> int:
        return self.codomain_size

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(1, n + 1))

    def inverse(self) -> "Permutation":
        return Permutation(perm_inverse(self.images))

    def __str__(self) -> str:
        return format_one_line(self.images)


def compose(f: Injection, g: Injection) -> Injection:
    """``g o f`` for ``f: a -> b`` and ``g: b -> c``."""
    if f.codomain_size != g.domain_size:
        raise ValueError(
            f"cannot compose {f} (into [{f.codomain_size}]) with {g} "
            f"(from [{g.domain_size}])"
        )
    return Injection(tuple(g.images[v - 1] for v in f.images), g.codomain_size)


def delta(i: int, n: int) -> Injection:
    """The monotone injection ``[n-1] -> [n]`` missing ``i``."""
    if not 1 <= i <= n:
        raise ValueError(f"delta index {i} outside [1, {n}]")
    return Injection(tuple(v for v in range(1, n + 1) if v != i), n)


def oi_decompose(f: Injection) -> Tuple[Permutation, Injection]:
    """Split ``f = h o sigma`` with ``sigma`` a permutation and ``h`` monotone."""
    srt = sorted(f.images)
    h = Injection(tuple(srt), f.codomain_size)
    rank = {v: r + 1 for r, v in enumerate(srt)}
    sigma = Permutation(tuple(rank[v] for v in f.images))
    return sigma, h


def enumerate_injections(k: int, n: int) -> List[Injection]:
    return [Injection(t, n) for t in _injection_tuples(k, n)]


@lru_cache(maxsize=None)
def _injection_tuples(k: int, n: int) -> Tuple[Tuple[int, ...], ...]:
    if k > n or k < 0:
        return ()
    return tuple(itertools.permutations(range(1, n + 1), k))


def falling_factorial(n: int, k: int) -> int:
    if k > n:
        return 0
    return math.perm(n, k)


# ---------------------------------------------------------------- words


def perm_inverse(p: Sequence[int]) -> Word:
    inv = [0] * len(p)
    for i, v in enumerate(p, 1):
        inv[v - 1] = i
    return tuple(inv)


def standardize(seq: Sequence[int]) -> Word:
    """Replace values by their ranks ``1..len(seq)``."""
    order = sorted(range(len(seq)), key=seq.__getitem__)
    out = [0] * len(seq)
    for r, i in enumerate(order, 1):
        out[i] = r
    return tuple(out)


def shuffle(w1: Sequence, w2: Sequence) -> Dict[tuple, int]:
    """All interleavings of two words over disjoint letters, coefficient 1."""
    w1, w2 = tuple(w1), tuple(w2)
    if set(w1) & set(w2):
        raise ValueError("shuffled words must use disjoint letters")
    n = len(w1) + len(w2)
    out: Dict[tuple, int] = {}
    for pos in itertools.combinations(range(n), len(w1)):
        word = [None] * n
        it1, it2 = iter(w1), iter(w2)
        chosen = set(pos)
        for i in range(n):
            word[i] = next(it1) if i in chosen else next(it2)
        out[tuple(word)] = 1
    return out


def _check_bracket(block: Sequence[int]) -> None:
    if len(block) < 2:
        raise ValueError(f"bracket {list(block)} needs at least two letters")
    if len(set(block)) != len(block):
        raise ValueError(f"repeated letter in bracket {list(block)}")
    if block[0] != min(block):
        raise ValueError(f"bracket {list(block)} must start with its minimum")


def expand_bracket(block: Sequence[int]) -> Dict[Word, int]:
    """Left-nested bracket ``[[..[s1,s2],..],sr]`` as a signed sum of words."""
    _check_bracket(block)
    terms: Dict[Word, int] = {(block[0],): 1}
    for s in block[1:]:
        nxt: Dict[Word, int] = {}
        for w, c in terms.items():
            nxt[w + (s,)] = nxt.get(w + (s,), 0) + c
            nxt[(s,) + w] = nxt.get((s,) + w, 0) - c
        terms = nxt
    return terms


def expand_brackets(blocks: Sequence[Sequence[int]], prefix: Word = ()) -> Dict[Word, int]:
    """Concatenated product ``prefix * b1 * b2 ...`` of bracket expansions."""
    mins = [b[0] for b in blocks]
    if mins != sorted(mins):
        raise ValueError("blocks must be ordered by their minima")
    seen = set(prefix)
    terms: Dict[Word, int] = {tuple(prefix): 1}
    for b in blocks:
        if seen & set(b):
            raise ValueError(f"block {list(b)} overlaps an earlier letter")
        seen |= set(b)
        exp = expand_bracket(b)
        terms = {w + u: c * e for w, c in terms.items() for u, e in exp.items()}
    return terms


def set_partitions_min2(letters: Sequence[int]) -> Iterator[List[Tuple[int, ...]]]:
    """Partitions into blocks of size >= 2, blocks sorted by minimum."""
    letters = sorted(letters)
    if not letters:
        yield []
        return
    first, rest = letters[0], letters[1:]
    for size in range(1, len(rest) + 1):
        for others in itertools.combinations(rest, size):
            remaining = [v for v in rest if v not in others]
            for tail in set_partitions_min2(remaining):
                yield [(first,) + others] + tail


def bracket_orderings(block: Sequence[int]) -> Iterator[Tuple[int, ...]]:
    """The ``(|S|-1)!`` left-nested brackets on ``block`` starting at its minimum."""
    block = sorted(block)
    for rest in itertools.permutations(block[1:]):
        yield (block[0],) + rest


def bracket_basis(letters: Sequence[int]) -> Iterator[List[Tuple[int, ...]]]:
    """Products of brackets over a partition of ``letters``; one per derangement."""
    for partition in set_partitions_min2(letters):
        for choice in itertools.product(*(list(bracket_orderings(b)) for b in partition)):
            yield list(choice)


@lru_cache(maxsize=None)
def derangements(n: int) -> int:
    if n < 0:
        raise ValueError("negative size")
    if n == 0:
        return 1
    if n == 1:
        return 0
    return (n - 1) * (derangements(n - 1) + derangements(n - 2))


# ---------------------------------------------------------------- group ring


class GroupRingElement:
    """Element of ``Z S_n``: a dict from one-line tuples to nonzero integers."""

    __slots__ = ("size", "terms")

    def __init__(self, size: int, terms: Dict[Word, int] | Iterable = ()):
        self.size = size
        clean: Dict[Word, int] = {}
        items = terms.items() if isinstance(terms, dict) else terms
        for p, c in items:
            p = tuple(p)
            if len(p) != size:
                raise ValueError(f"permutation {p} does not have size {size}")
            if c:
                clean[p] = clean.get(p, 0) + c
                if not clean[p]:
                    del clean[p]
        self.terms = clean

    @classmethod
    def identity(cls, n: int) -> "GroupRingElement":
        return cls(n, {tuple(range(1, n + 1)): 1})

    @classmethod
    def parse(cls, text: str) -> "GroupRingElement":
        """Parse ``"123 - 213 + 2*321"``; letters above 9 go in parentheses."""
        terms: Dict[Word, int] = {}
        size = None
        pattern = re.compile(r"\s*([+-]?)\s*(?:(\d+)\s*\*\s*)?((?:\d|\(\d+\))+)")
        pos, text = 0, text.strip()
        while pos < len(text):
            m = pattern.match(text, pos)
            if m is None:
                raise ValueError(f"cannot parse group ring element at {text[pos:]!r}")
            sign = -1 if m.group(1) == "-" else 1
            coef = int(m.group(2)) if m.group(2) else 1
            perm = tuple(int(t.strip("()")) for t in re.findall(r"\(\d+\)|\d", m.group(3)))
            size = len(perm) if size is None else size
            terms[perm] = terms.get(perm, 0) + sign * coef
            pos = m.end()
        return cls(size or 0, terms)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GroupRingElement)
            and self.size == other.size
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.size, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __add__(self, other: "GroupRingElement") -> "GroupRingElement":
        out = dict(self.terms)
        for p, c in other.terms.items():
            out[p] = out.get(p, 0) + c
        return GroupRingElement(self.size, out)

    def __neg__(self) -> "GroupRingElement":
        return GroupRingElement(self.size, {p: -c for p, c in self.terms.items()})

    def __sub__(self, other: "GroupRingElement") -> "GroupRingElement":
        return self + (-other)

    def scale(self, k: int) -> "GroupRingElement":
        return GroupRingElement(self.size, {p: k * c for p, c in self.terms.items()})

    def __mul__(self, other: "GroupRingElement") -> "GroupRingElement":
        if self.size != other.size:
            raise ValueError("group ring elements of different sizes")
        out: Dict[Word, int] = {}
        for p, a in self.terms.items():
            for q, b in other.terms.items():
                r = tuple(q[v - 1] for v in p)
                out[r] = out.get(r, 0) + a * b
        return GroupRingElement(self.size, out)

    def vector(self, basis_index: Dict[Word, int]) -> List[int]:
        vec = [0] * len(basis_index)
        for p, c in self.terms.items():
            vec[basis_index[p]] = c
        return vec

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for p in sorted(self.terms):
            c = self.terms[p]
            mag = "" if abs(c) == 1 else f"{abs(c)}*"
            word = format_one_line(p)
            parts.append(("- " if c < 0 else "+ ") + mag + word)
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[1:]

    def __repr__(self) -> str:
        return f"GroupRingElement({self.size}, {str(self)!r})"


def invert(e: GroupRingElement) -> GroupRingElement:
    """Replace every permutation by its inverse."""
    return GroupRingElement(e.size, {perm_inverse(p): c for p, c in e.terms.items()})


def expand_bracket_product(blocks: Sequence[Sequence[int]]) -> GroupRingElement:
    """Expand a product of left-nested brackets covering ``[n]`` into ``Z S_n``."""
    letters = [v for b in blocks for v in b]
    n = len(letters)
    if sorted(letters) != list(range(1, n + 1)):
        raise ValueError(f"blocks {blocks} do not partition [1..{n}]")
    return GroupRingElement(n, expand_brackets(blocks))
