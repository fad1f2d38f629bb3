"""Compare the compiled kernels against the pure-Python twins.

Runs the dimension and game-value recursions on a small battery of classes
with both backends and prints a timing table plus agreement checks.  Usage:

    python3 benchmarks/bench_kernels.py [--repeats N]
"""

from __future__ import annotations

import argparse
import random
import time

from littlelab import _kernels_py
from littlelab.classes import hd_prime, singletons, thresholds

try:
    from littlelab import _kernels_cy
except ImportError:  # pragma: no cover - compiled twin absent
    _kernels_cy = None


def battery() -> list[tuple[str, tuple[int, ...], int]]:
    cases = [
        ("thresholds(4)", thresholds(4).sorted_rows, 16),
        ("hd_prime(3)", hd_prime(3).sorted_rows, 10),
        ("singletons(12)", singletons(12).sorted_rows, 12),
    ]
    rng = random.Random(7)
    for i in range(3):
        domain = 9 + i
        rows = tuple(sorted(rng.sample(range(1 << domain), 40)))
        cases.append((f"random[{i}] d={domain} r=40", rows, domain))
    return cases


def timed(fn, rows, domain, repeats):
    best = float("inf")
    value = None
    for _ in range(repeats):
        start = time.perf_counter()
        value = fn(rows, domain)
        best = min(best, time.perf_counter() - start)
    return value, best


def main() -> int:
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()

    backends = [("pure", _kernels_py)]
    if _kernels_cy is not None:
        backends.append(("cython", _kernels_cy))
    else:
        print("compiled backend unavailable; benchmarking pure only")

    header = f"{'case':<24}{'kernel':<14}" + "".join(
        f"{name + ' (s)':>14}" for name, _ in backends)
    print(header)
    print("-" * len(header))
    for case, rows, domain in battery():
        for kernel_name in ("ldim_masks", "game_value_masks"):
            values, cells = [], []
            for _, impl in backends:
                value, best = timed(getattr(impl, kernel_name), rows, domain,
                                    args.repeats)
                values.append(value)
                cells.append(f"{best:>14.6f}")
            if len(set(values)) != 1:
                print(f"MISMATCH on {case}/{kernel_name}: {values}")
                return 1
            print(f"{case:<24}{kernel_name:<14}" + "".join(cells)
                  + f"   value={values[0]}")
    if len(backends) == 2:
        print("\nbackends agree on every case")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
