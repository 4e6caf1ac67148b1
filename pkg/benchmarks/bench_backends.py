"""Benchmark the compiled kernels against the pure-Python fallback.

Runs each hot kernel on representative workloads with both backends and
prints the timing ratio.  Usage: python3 benchmarks/bench_backends.py
"""

from __future__ import annotations

import time

from itoflow import _kernels_py as pure

try:
    from itoflow import _speedups as fast
except ImportError:  # pragma: no cover - exercised only on pure installs
    fast = None


def _time(fn, repeat=5):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def _workloads():
    u = (((1,), (2,), (1, 3), (2,), (1,))) * 1
    v = ((2,), (3, 3), (1,), (2,))
    f6 = (2, 1, 3, 2, 1, 3)
    g4 = (1, 2, 1, 2)
    blocks6 = ((1,), (2, 2), (3,), (1, 2), (2,), (3, 3))
    return [
        ("surjections(8, 4)", lambda m: m.surjections(8, 4)),
        ("surjections(9, 5, max_fiber=2)", lambda m: m.surjections(9, 5, 2)),
        ("qsh_words(5 blocks, 4 blocks)", lambda m: m.qsh_words(u, v)),
        ("diamond_words(len 6, len 4)", lambda m: m.diamond_words(f6, g4)),
        (
            "apply_to_blocks x 20000",
            lambda m: [m.apply_to_blocks(f6, blocks6) for _ in range(20000)],
        ),
        (
            "descent_set x 50000",
            lambda m: [m.descent_set(f6) for _ in range(50000)],
        ),
        (
            "pack_word x 50000",
            lambda m: [m.pack_word((5, 2, 9, 2, 5, 1)) for _ in range(50000)],
        ),
    ]


def main() -> int:
    if fast is None:
        print("compiled backend not available; nothing to compare")
        return 1
    print(f"{'workload':40s} {'pure (s)':>10s} {'compiled (s)':>12s} {'speedup':>8s}")
    for name, job in _workloads():
        tp = _time(lambda: job(pure))
        tf = _time(lambda: job(fast))
        print(f"{name:40s} {tp:10.5f} {tf:12.5f} {tp / tf:7.2f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
