"""Command-line interface.

Exit status: 0 on success, 1 when the oracle disagrees with the predicted
tail, 2 on bad input (unreadable file, parse error, out-of-range degree,
matrix cap exceeded).
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import List, Optional

from . import __version__
from .catalan import pairing_matrix
from .fj import coords_at, fj_basis, level_count, q_ring
from .linalg import abs_determinant, cokernel
from .presentation import PresentationError, evaluate_xi, load_presentation
from .tails import DEFAULT_MAX_CELLS, MatrixTooLarge, evaluate_tail, oracle_check, tail_invariants

EPILOG = """\
basis orders:
  Xi(ell)_n   words in lexicographic order of letters, with 1 < 2 < ... < ell
              < x1 < x2 < ...  (e.g. 12x1, 1x12, 21x1, 2x11, x112, x121)
  FI(k, n)    injections in lexicographic order of image lists [f(1),...,f(k)]
  CB'(k, n)   by ell, then Catalan function c (lexicographic), then word
  Z S_d       permutations in lexicographic one-line order

presentation files:
  generators: a1 a2 ...
  relations:  b1 b2 ...
  entry i j:  +1*[1,2] -3*[2,3] ...     (injection [a_i] -> [b_j], 1-based i, j)
  lines starting with # are comments; omitted entries are zero.

exit status: 0 ok, 1 oracle mismatch, 2 input error
"""


class InputError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True)


def _load(path):
    try:
        return load_presentation(path)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from None
    except PresentationError as exc:
        raise InputError(f"{path}: {exc}") from None
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from None


def _format_matrix(labeled) -> List[str]:
    m = labeled.matrix
    if m.rows == 0 or m.cols == 0:
        return [f"({m.rows}x{m.cols} matrix)"]
    width = max(
        [len(s) for s in labeled.col_labels] + [len(str(v)) for r in m.data for v in r]
    )
    lw = max(len(s) for s in labeled.row_labels)
    lines = [" " * lw + " " + " ".join(s.rjust(width) for s in labeled.col_labels)]
    for label, row in zip(labeled.row_labels, m.data):
        lines.append(label.ljust(lw) + " " + " ".join(str(v).rjust(width) for v in row))
    return lines


# ---------------------------------------------------------------- commands


def cmd_tails(args):
    profile = tail_invariants(_load(args.file))
    if args.json:
        return profile.to_json(), 0
    lines = [f"d={profile.degree}", f"stable_from={profile.stable_from}"]
    lines += [f"A_{ell}={a}" for ell, a in enumerate(profile.invariants)]
    lines.append(f"poly_degree={profile.poly_degree}")
    return lines, 0


def cmd_evaluate(args):
    profile = tail_invariants(_load(args.file))
    if args.n < profile.stable_from:
        raise InputError(
            f"n = {args.n} is below the stable range; the tail formula holds for n >= {profile.stable_from}"
        )
    group = evaluate_tail(profile, args.n)
    if args.json:
        return {"n": args.n, "stable_from": profile.stable_from, "group": group.to_json()}, 0
    return [f"M_{args.n}={group}"], 0


def cmd_xi_matrix(args):
    if args.ell < 0:
        raise InputError("--ell must be nonnegative")
    labeled = evaluate_xi(_load(args.file), args.ell)
    coker = cokernel(labeled.matrix)
    if args.json:
        return {"ell": args.ell, "matrix": labeled.to_json(), "cokernel": coker.to_json()}, 0
    lines = [f"Xi({args.ell})_Z: {labeled.matrix.rows}x{labeled.matrix.cols}"]
    lines += _format_matrix(labeled)
    lines.append(f"coker={coker}")
    return lines, 0


def cmd_oracle(args):
    if args.n < 0:
        raise InputError("--n must be nonnegative")
    z = _load(args.file)
    try:
        report = oracle_check(z, args.n, args.max_matrix_cells)
    except MatrixTooLarge as exc:
        raise InputError(f"{exc}; raise --max-matrix-cells to allow it") from None
    status = 1 if report.equal is False else 0
    if args.json:
        return report.to_json(), status
    verdict = {True: "equal", False: "MISMATCH", None: "no verdict (below stable range)"}[report.equal]
    return [
        f"n={report.n}",
        f"stable_from={report.stable_from}",
        f"predicted={report.predicted}",
        f"actual={report.actual}",
        f"verdict={verdict}",
    ], status


def cmd_fj_basis(args):
    if min(args.source, args.target, args.max_level) < 0:
        raise InputError("--source, --target and --max-level must be nonnegative")
    elems = fj_basis(args.source, args.target, args.max_level)
    counts = {
        str(d): level_count(args.source, args.target, d)
        for d in range(max(args.source, args.target), args.max_level + 1)
    }
    if args.json:
        items = []
        for b in elems:
            obj = b.to_json()
            obj["coords"] = str(coords_at(b, b.level))
            items.append(obj)
        return {
            "source": args.source,
            "target": args.target,
            "max_level": args.max_level,
            "counts": counts,
            "elements": items,
        }, 0
    lines = [f"FJ({args.source},{args.target}) basis up to level {args.max_level}: {len(elems)} elements"]
    lines += [f"  {b}  ->  {coords_at(b, b.level)}" for b in elems]
    return lines, 0


def cmd_qring(args):
    if args.degree < 0:
        raise InputError("--degree must be nonnegative")
    q = q_ring(args.degree)
    from itertools import permutations

    from .combinatorics import format_one_line

    if args.json:
        entries = [
            [
                {
                    "source": e.source,
                    "target": e.target,
                    "rank": e.rank,
                    "generators": [str(g) for g in e.lattice],
                }
                for e in row
            ]
            for row in q.entries
        ]
        products = [
            {"left": l, "middle": m, "right": p, "table": table}
            for (l, m, p), table in sorted(q.structure.items())
        ]
        return {
            "degree": q.degree,
            "basis": [format_one_line(p) for p in permutations(range(1, q.degree + 1))],
            "entries": entries,
            "ranks": q.ranks,
            "total_rank": q.total_rank,
            "products": products,
        }, 0
    lines = [f"Q_{q.degree}: rows are sources, columns targets"]
    for row in q.entries:
        for e in row:
            gens = ", ".join(f"({g})" for g in e.lattice) or "0"
            lines.append(f"  ({e.source},{e.target}) rank {e.rank}: {gens}")
    lines.append("ranks=" + json.dumps(q.ranks))
    lines.append(f"total_rank={q.total_rank}")
    return lines, 0


def cmd_pairing(args):
    if args.k < 0 or args.n < 0:
        raise InputError("--k and --n must be nonnegative")
    m, rows, cols = pairing_matrix(args.k, args.n)
    square = m.rows == m.cols
    det = abs_determinant(m) if square else None
    uni = square and det == 1
    if args.json:
        return {
            "k": args.k,
            "n": args.n,
            "rows": m.rows,
            "cols": m.cols,
            "square": square,
            "abs_det": det,
            "unimodular": uni,
        }, 0
    size = str(m.rows) if square else f"{m.rows}x{m.cols}"
    return [f"unimodular: {str(uni).lower()}, size {size}"], 0


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="machine-readable output")
    common.add_argument(
        "--max-matrix-cells",
        type=int,
        default=argparse.SUPPRESS,
        metavar="C",
        help=f"refuse oracle matrices with more cells (default {DEFAULT_MAX_CELLS})",
    )
    common.add_argument("-v", "--verbose", action="store_true", default=argparse.SUPPRESS)

    parser = argparse.ArgumentParser(
        prog="fitails",
        description="Tail invariants of finitely presented FI-modules over the integers.",
        epilog=EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
        parents=[common],
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(
            name,
            help=help_text,
            description=help_text,
            parents=[common],
            epilog=EPILOG,
            formatter_class=argparse.RawDescriptionHelpFormatter,
        )
        p.set_defaults(func=func)
        return p

    p = add("tails", cmd_tails, "tail invariants A_0..A_d and the stable range")
    p.add_argument("file")
    p = add("evaluate", cmd_evaluate, "M_n from the tail invariants (n in the stable range)")
    p.add_argument("file")
    p.add_argument("--n", type=int, required=True)
    p = add("xi-matrix", cmd_xi_matrix, "the matrix Xi(ell)_Z with basis labels")
    p.add_argument("file")
    p.add_argument("--ell", type=int, required=True)
    p = add("oracle", cmd_oracle, "compare the predicted M_n with a direct computation")
    p.add_argument("file")
    p.add_argument("--n", type=int, required=True)
    p = add("fj-basis", cmd_fj_basis, "Lie-bracket basis of FJ(source, target) up to a level")
    p.add_argument("--source", type=int, required=True)
    p.add_argument("--target", type=int, required=True)
    p.add_argument("--max-level", type=int, required=True)
    p = add("qring", cmd_qring, "the truncated matrix ring Q_d as lattices in Z S_d")
    p.add_argument("--degree", type=int, required=True)
    p = add("pairing", cmd_pairing, "unimodularity of the injection / Catalan-basis matching matrix")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args.json = getattr(args, "json", False)
    args.max_matrix_cells = getattr(args, "max_matrix_cells", DEFAULT_MAX_CELLS)
    logging.basicConfig(
        level=logging.DEBUG if getattr(args, "verbose", False) else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        out, status = args.func(args)
    except InputError as exc:
        if args.json:
            print(_dump({"error": str(exc)}))
        print(f"fitails: error: {exc}", file=sys.stderr)
        return 2
    if args.json:
        print(_dump(out))
    else:
        print("\n".join(out))
    return status


if __name__ == "__main__":
    sys.exit(main())
