"""Compare the compiled and pure-Python Smith normal form kernels.

    python benchmarks/bench_snf.py [--repeat 3] [--quick]

Matrices whose elimination overflows int64 are retried in Python, so the
compiled column includes the wasted attempt for those cases.
"""
import argparse
import pathlib
import random
import statistics
import time

from fitails import linalg
from fitails.catalan import chi
from fitails.linalg import IntMatrix, smith_normal_form
from fitails.presentation import load_presentation, presentation_matrix_at

FIXTURES = pathlib.Path(__file__).resolve().parent.parent / "tests" / "fixtures"


def random_matrix(rng, rows, cols, bound=9, density=0.5):
    return IntMatrix.from_rows(
        [[rng.randint(-bound, bound) if rng.random() < density else 0 for _ in range(cols)] for _ in range(rows)],
        cols=cols,
    )


def cases(quick):
    rng = random.Random(0)
    yield "pairing (3,7) 210x210", chi(3, 7)
    if not quick:
        yield "pairing (4,7) 840x840", chi(4, 7)
    z = load_presentation(FIXTURES / "second_example.fipres")
    yield "second example, n=6 (30x120)", presentation_matrix_at(z, 6).matrix
    yield "second example, n=7 (42x210)", presentation_matrix_at(z, 7).matrix
    yield "random 60x60", random_matrix(rng, 60, 60)
    yield "random 120x80", random_matrix(rng, 120, 80, density=0.2)


def timeit(m, backend, repeat, transforms):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        smith_normal_form(m, compute_u=transforms, compute_v=transforms, backend=backend)
        times.append(time.perf_counter() - t)
    return statistics.median(times)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--quick", action="store_true", help="skip the largest case")
    ap.add_argument("--no-transforms", action="store_true", help="diagonal only, no U and V")
    args = ap.parse_args(argv)

    backends = linalg.available_backends()
    if "cython" not in backends:
        print("compiled kernel not available; only the Python kernel will be timed")
    print(f"{'case':34s} " + " ".join(f"{b:>10s}" for b in backends) + ("   speedup" if len(backends) == 2 else ""))
    for name, m in cases(args.quick):
        row = [timeit(m, b, args.repeat, not args.no_transforms) for b in backends]
        line = f"{name:34s} " + " ".join(f"{t:9.3f}s" for t in row)
        if len(row) == 2:
            line += f"   {row[1] / row[0]:7.1f}x"
        print(line, flush=True)


if __name__ == "__main__":
    main()
