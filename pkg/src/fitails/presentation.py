"""FI-matrices: presentations of FI-modules by free modules.

File format::

    # comment
    generators: 2
    relations: 3
    entry 1 1: +1*[1,2] +1*[2,3] +1*[3,1]

Entry ``i j`` is a combination of injections ``[a_i] -> [b_j]``; omitted
entries are zero.  Indices are 1-based.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple

from .combinatorics import Injection, compose, enumerate_injections
from .linalg import IntMatrix
from .xi import act_word, format_word, xi_basis_tuples

__all__ = [
    "FIPresentation",
    "PresentationError",
    "parse_presentation",
    "format_presentation",
    "load_presentation",
    "evaluate_xi",
    "presentation_matrix_at",
]

Entry = Dict[Tuple[int, ...], int]


class PresentationError(ValueError):
    def __init__(self, msg: str, line: int | None = None, col: int | None = None):
        self.line, self.col = line, col
        where = "" if line is None else f"line {line}" + ("" if col is None else f", col {col}") + ": "
        super().__init__(where + msg)


@dataclass
class FIPresentation:
    generator_degrees: List[int]
    relation_degrees: List[int]
    # (i, j) 0-based -> {images: coefficient}
    entries: Dict[Tuple[int, int], Entry] = field(default_factory=dict)

    def __post_init__(self):
        for deg in self.generator_degrees + self.relation_degrees:
            if deg < 0:
                raise PresentationError(f"negative degree {deg}")
        clean = {}
        for (i, j), terms in self.entries.items():
            if not (0 <= i < len(self.generator_degrees) and 0 <= j < len(self.relation_degrees)):
                raise PresentationError(f"entry ({i + 1},{j + 1}) out of range")
            a, b = self.generator_degrees[i], self.relation_degrees[j]
            for images in terms:
                Injection(images, b)
                if len(images) != a:
                    raise PresentationError(
                        f"entry ({i + 1},{j + 1}): {list(images)} is not an injection [{a}] -> [{b}]"
                    )
            terms = {tuple(k): c for k, c in terms.items() if c}
            if terms:
                clean[(i, j)] = terms
        self.entries = clean

    @property
    def degree(self) -> int:
        """Largest generator or relation degree (0 for the empty presentation)."""
        return max(self.generator_degrees + self.relation_degrees, default=0)

    def entry(self, i: int, j: int) -> Entry:
        return self.entries.get((i, j), {})

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FIPresentation)
            and self.generator_degrees == other.generator_degrees
            and self.relation_degrees == other.relation_degrees
            and self.entries == other.entries
        )

    def permuted(self, gen_order: Sequence[int], rel_order: Sequence[int]) -> "FIPresentation":
        """Reorder generators and relations (new position ``p`` holds old ``order[p]``)."""
        gpos = {old: new for new, old in enumerate(gen_order)}
        rpos = {old: new for new, old in enumerate(rel_order)}
        return FIPresentation(
            [self.generator_degrees[k] for k in gen_order],
            [self.relation_degrees[k] for k in rel_order],
            {(gpos[i], rpos[j]): dict(t) for (i, j), t in self.entries.items()},
        )


_TERM = re.compile(r"\s*([+-]?\s*\d*)\s*\*?\s*\[([^\]]*)\]\s*")


def _parse_degrees(text: str, lineno: int, col: int) -> List[int]:
    out = []
    for m in re.finditer(r"\S+", text):
        tok = m.group()
        if not tok.isdigit():
            raise PresentationError(f"degree {tok!r} is not a natural number", lineno, col + m.start())
        out.append(int(tok))
    return out


def _parse_terms(text: str, lineno: int, col: int) -> Entry:
    terms: Entry = {}
    pos = 0
    while pos < len(text):
        if not text[pos:].strip():
            break
        m = _TERM.match(text, pos)
        if m is None:
            raise PresentationError("expected a term like +2*[1,3]", lineno, col + pos)
        coef_txt = m.group(1).replace(" ", "")
        if coef_txt in ("", "+"):
            coef = 1
        elif coef_txt == "-":
            coef = -1
        else:
            coef = int(coef_txt)
        inner = m.group(2).strip()
        try:
            images = tuple(int(v) for v in inner.split(",")) if inner else ()
        except ValueError:
            raise PresentationError(f"malformed injection [{inner}]", lineno, col + m.start(2)) from None
        terms[images] = terms.get(images, 0) + coef
        pos = m.end()
    return terms


def parse_presentation(text: str) -> FIPresentation:
    gens = rels = None
    raw: Dict[Tuple[int, int], Tuple[Entry, int]] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        body = line.split("#", 1)[0]
        if not body.strip():
            continue
        head, sep, rest = body.partition(":")
        if not sep:
            raise PresentationError("expected 'key: value'", lineno, 1)
        col = len(head) + 2
        key = head.strip()
        if key == "generators":
            if gens is not None:
                raise PresentationError("generators declared twice", lineno, 1)
            gens = _parse_degrees(rest, lineno, col)
        elif key == "relations":
            if rels is not None:
                raise PresentationError("relations declared twice", lineno, 1)
            rels = _parse_degrees(rest, lineno, col)
        elif key.startswith("entry"):
            m = re.fullmatch(r"entry\s+(\d+)\s+(\d+)", key)
            if m is None:
                raise PresentationError("expected 'entry i j'", lineno, 1)
            i, j = int(m.group(1)), int(m.group(2))
            if (i, j) in raw:
                raise PresentationError(f"entry {i} {j} declared twice", lineno, 1)
            raw[(i, j)] = (_parse_terms(rest, lineno, col), lineno)
        else:
            raise PresentationError(f"unknown key {key!r}", lineno, 1)
    if gens is None:
        raise PresentationError("missing 'generators:' line")
    rels = rels or []
    entries = {}
    for (i, j), (terms, lineno) in raw.items():
        if not (1 <= i <= len(gens) and 1 <= j <= len(rels)):
            raise PresentationError(f"entry {i} {j} outside {len(gens)}x{len(rels)}", lineno, 1)
        a, b = gens[i - 1], rels[j - 1]
        for images in terms:
            if len(images) != a:
                raise PresentationError(
                    f"[{','.join(map(str, images))}] has {len(images)} points, generator {i} has degree {a}",
                    lineno,
                )
            try:
                Injection(images, b)
            except ValueError as exc:
                raise PresentationError(f"{exc} (relation {j} has degree {b})", lineno) from None
        entries[(i - 1, j - 1)] = terms
    return FIPresentation(gens, rels, entries)


def load_presentation(path) -> FIPresentation:
    with open(path, encoding="utf-8") as fh:
        return parse_presentation(fh.read())


def format_presentation(z: FIPresentation) -> str:
    lines = [
        "generators: " + " ".join(map(str, z.generator_degrees)),
        "relations: " + " ".join(map(str, z.relation_degrees)),
    ]
    for (i, j) in sorted(z.entries):
        terms = z.entries[(i, j)]
        body = " ".join(
            f"{c:+d}*[{','.join(map(str, images))}]" for images, c in sorted(terms.items())
        )
        lines.append(f"entry {i + 1} {j + 1}: {body}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- matrices


@dataclass
class LabeledMatrix:
    matrix: IntMatrix
    row_labels: List[str]
    col_labels: List[str]

    def to_json(self) -> dict:
        return {
            "rows": self.matrix.rows,
            "cols": self.matrix.cols,
            "row_labels": self.row_labels,
            "col_labels": self.col_labels,
            "data": self.matrix.tolist(),
        }


def _block_label(block: int, count: int, text: str) -> str:
    return text if count == 1 else f"{block + 1}:{text}"


def evaluate_xi(z: FIPresentation, ell: int) -> LabeledMatrix:
    """The map ``(+)_j Xi(ell)_{b_j} -> (+)_i Xi(ell)_{a_i}``; rows are the generator side."""
    row_bases = [xi_basis_tuples(ell, a) for a in z.generator_degrees]
    col_bases = [xi_basis_tuples(ell, b) for b in z.relation_degrees]
    row_off = [0]
    for basis in row_bases:
        row_off.append(row_off[-1] + len(basis))
    col_off = [0]
    for basis in col_bases:
        col_off.append(col_off[-1] + len(basis))
    mat = IntMatrix(row_off[-1], col_off[-1])
    for (i, j), terms in z.entries.items():
        rindex = {w: r for r, w in enumerate(row_bases[i])}
        if not rindex:
            continue
        for cj, w in enumerate(col_bases[j]):
            col = col_off[j] + cj
            for images, c in terms.items():
                u = act_word(images, w, ell)
                if u is not None:
                    mat.data[row_off[i] + rindex[u]][col] += c
    g, r = len(row_bases), len(col_bases)
    row_labels = [_block_label(i, g, format_word(w, ell)) for i, b in enumerate(row_bases) for w in b]
    col_labels = [_block_label(j, r, format_word(w, ell)) for j, b in enumerate(col_bases) for w in b]
    return LabeledMatrix(mat, row_labels, col_labels)


def presentation_size_at(z: FIPresentation, n: int) -> Tuple[int, int]:
    from .combinatorics import falling_factorial

    return (
        sum(falling_factorial(n, a) for a in z.generator_degrees),
        sum(falling_factorial(n, b) for b in z.relation_degrees),
    )


def presentation_matrix_at(z: FIPresentation, n: int) -> LabeledMatrix:
    """``Z FI(b, n) -> Z FI(a, n)`` in degree ``n``; the cokernel is ``M_n``."""
    row_sets = [enumerate_injections(a, n) for a in z.generator_degrees]
    col_sets = [enumerate_injections(b, n) for b in z.relation_degrees]
    row_off = [0]
    for s in row_sets:
        row_off.append(row_off[-1] + len(s))
    mat = IntMatrix(row_off[-1], sum(len(s) for s in col_sets))
    col = 0
    for j, cols in enumerate(col_sets):
        entries = [(i, [(Injection(im, z.relation_degrees[j]), c) for im, c in z.entry(i, j).items()])
                   for i in range(len(row_sets))]
        for g in cols:
            for i, terms in entries:
                if not terms:
                    continue
                index = _injection_index(z.generator_degrees[i], n)
                for f, c in terms:
                    mat.data[row_off[i] + index[compose(f, g).images]][col] += c
            col += 1
    g, r = len(row_sets), len(col_sets)
    row_labels = [_block_label(i, g, str(f)) for i, s in enumerate(row_sets) for f in s]
    col_labels = [_block_label(j, r, str(f)) for j, s in enumerate(col_sets) for f in s]
    return LabeledMatrix(mat, row_labels, col_labels)


_INDEX_CACHE: Dict[Tuple[int, int], Dict[Tuple[int, ...], int]] = {}


def _injection_index(k: int, n: int) -> Dict[Tuple[int, ...], int]:
    key = (k, n)
    if key not in _INDEX_CACHE:
        _INDEX_CACHE[key] = {f.images: r for r, f in enumerate(enumerate_injections(k, n))}
    return _INDEX_CACHE[key]
