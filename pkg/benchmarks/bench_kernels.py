"""Time the compiled kernels against the pure-Python reference.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Each case feeds identical arguments to both backends, checks the outputs
agree, and reports the best wall time of ``--repeat`` runs.
"""

from __future__ import annotations

import argparse
import sys
import timeit

from monokit import _pykernels, reps
from monokit.rootsystem import build_root_system

try:
    from monokit import _ckernels
except ImportError:
    _ckernels = None


def freudenthal_case(name, lam):
    rs = build_root_system(name)
    depth = reps.dominant_weights_below(rs, lam)
    order = sorted(depth, key=lambda mu: (depth[mu], mu))
    roots, forms, norms, _ = reps._root_tables(rs)
    return "freudenthal", f"{name} {lam}", (lam, order, roots, forms, norms, rs.int_form, rs.simple_roots)


def klimyk_case(name, lam, mu):
    rs = build_root_system(name)
    weights, mults = reps._weight_list(rs, mu)
    return "klimyk", f"{name} {lam} x {mu}", (lam, weights, mults, rs.simple_roots)


def convolve_case(name, lam, mu):
    rs = build_root_system(name)
    top = tuple(x + y for x, y in zip(lam, mu))
    targets = list(reps.dominant_weights_below(rs, top))
    lw, lm = reps._weight_list(rs, lam)
    return "convolve_dominant", f"{name} {lam} x {mu}", (targets, lw, lm, reps._full_character(rs, mu))


CASES = [
    lambda: freudenthal_case("F4", (1, 1, 1, 1)),
    lambda: freudenthal_case("E6", (1, 1, 0, 0, 0, 1)),
    lambda: freudenthal_case("B4", (2, 1, 1, 2)),
    lambda: klimyk_case("E6", (1, 0, 0, 0, 0, 1), (0, 1, 0, 0, 0, 1)),
    lambda: klimyk_case("F4", (1, 0, 0, 1), (0, 0, 1, 1)),
    lambda: convolve_case("A3", (2, 1, 1), (1, 1, 2)),
    lambda: convolve_case("G2", (3, 2), (2, 3)),
]


def best(fn, args, repeat):
    return min(timeit.repeat(lambda: fn(*args), number=1, repeat=repeat))


def normalise(x):
    # freudenthal returns an array from the extension, a list from Python
    return x if isinstance(x, dict) else list(x)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    if _ckernels is None:
        print("compiled extension not built; nothing to compare", file=sys.stderr)
        return 1
    print(f"{'kernel':<18} {'case':<44} {'python ms':>10} {'compiled ms':>12} {'speedup':>8}")
    for make in CASES:
        kernel, label, kargs = make()
        py_fn, c_fn = getattr(_pykernels, kernel), getattr(_ckernels, kernel)
        if normalise(py_fn(*kargs)) != normalise(c_fn(*kargs)):
            print(f"{kernel}: backends disagree on {label}", file=sys.stderr)
            return 1
        tp, tc = best(py_fn, kargs, args.repeat), best(c_fn, kargs, args.repeat)
        print(f"{kernel:<18} {label:<44} {tp * 1e3:>10.2f} {tc * 1e3:>12.2f} {tp / tc:>7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
