"""Compare the compiled DTW kernel against the pure-Python fallback.

Run:  python benchmarks/bench_dtw.py
"""

from __future__ import annotations

import random
import timeit

from storymix.arc import _dtw_py

try:
    from storymix.arc import _dtw_cy
except ImportError:
    _dtw_cy = None


def make_pair(n: int, rng: random.Random) -> tuple[list[float], list[float]]:
    return (
        [rng.uniform(-1.0, 1.0) for _ in range(n)],
        [rng.uniform(-1.0, 1.0) for _ in range(n)],
    )


def bench(kernel, pairs, repeat: int = 3) -> float:
    def run():
        for a, b in pairs:
            kernel.last_row(a, b)

    return min(timeit.repeat(run, number=1, repeat=repeat))


def main() -> None:
    rng = random.Random(2024)
    print(f"{'length':>8} {'pairs':>6} {'pure (s)':>10} {'compiled (s)':>13} {'speedup':>8}")
    for n, n_pairs in [(8, 2000), (32, 1000), (128, 200), (512, 20), (2048, 2)]:
        pairs = [make_pair(n, rng) for _ in range(n_pairs)]
        t_py = bench(_dtw_py, pairs)
        if _dtw_cy is None:
            print(f"{n:>8} {n_pairs:>6} {t_py:>10.4f} {'(not built)':>13} {'-':>8}")
            continue
        t_cy = bench(_dtw_cy, pairs)
        for a, b in pairs[:5]:
            assert _dtw_py.last_row(a, b) == _dtw_cy.last_row(a, b)
        print(f"{n:>8} {n_pairs:>6} {t_py:>10.4f} {t_cy:>13.4f} {t_py / t_cy:>7.1f}x")


if __name__ == "__main__":
    main()
