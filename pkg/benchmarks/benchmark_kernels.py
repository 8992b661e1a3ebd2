"""Compare the compiled and pure-Python kernels on representative work.

Usage: python3 benchmarks/benchmark_kernels.py [repeats]

Times one reference ascent (30 s burn from 12 km at 500 m/s), the
matching warhead descent, and a cylinder heat-sink march on each backend
and prints the per-task speedup of the compiled extension.
"""
import math
import sys
import time

import numpy as np

from dlsrr._kernels import load_backend
from dlsrr.vehicle import europrojectile_drag_table, rocket_drag_table


def best_of(repeats, fn):
    best = math.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def make_tasks(kernel):
    rocket = rocket_drag_table()
    warhead = europrojectile_drag_table()
    area_rocket = math.pi / 4.0 * 0.09
    area_warhead = math.pi / 4.0 * 0.075 ** 2

    def ascent():
        return kernel.integrate_ascent(
            12000.0, 500.0, math.radians(54.0), 300.0, 0.5, 30.0, 2100.0,
            area_rocket, rocket.machs, rocket.cds, 0.1, 1200.0,
        )

    def descent():
        return kernel.integrate_descent(
            0.0, 93000.0, 1239.0, 0.0, 16.474, area_warhead,
            warhead.machs, warhead.cds, 0.1, 1200.0,
        )

    _, rows, _, _ = ascent()
    rows = np.asarray(rows)
    n = 301  # thrusting rows plus the burnout row at dt = 0.1
    rho = np.ascontiguousarray(rows[:n, 7])
    ta = np.ascontiguousarray(rows[:n, 8])
    v = np.ascontiguousarray(np.hypot(rows[:n, 3], rows[:n, 4]))

    def march():
        return kernel.heat_sink_history(
            rho, ta, v, 0.1, 0.88, 1.0, 0.9, 0.75, 1005.0, 13.5, 912.5, 293.15,
        )

    return {"ascent": ascent, "descent": descent, "heat-sink march": march}


def main(argv):
    repeats = int(argv[1]) if len(argv) > 1 else 5
    backends = {}
    for name in ("ref", "fast"):
        try:
            backends[name] = load_backend(name)
        except ImportError as exc:
            print(f"{name}: unavailable ({exc})")
    timings = {}
    for name, kernel in backends.items():
        tasks = make_tasks(kernel)
        timings[name] = {
            label: best_of(repeats, fn) for label, fn in tasks.items()
        }
    width = max(len(label) for label in next(iter(timings.values())))
    print(f"best of {repeats} runs, seconds per call")
    for label in next(iter(timings.values())):
        line = f"{label:<{width}}"
        for name in timings:
            line += f"  {name} {timings[name][label] * 1000.0:9.3f} ms"
        if "ref" in timings and "fast" in timings:
            speedup = timings["ref"][label] / timings["fast"][label]
            line += f"  speedup {speedup:6.1f}x"
        print(line)
    return 0


if __name__ == "__main__":
    raise SystemExit(main(sys.argv))
