"""Time the compiled and pure-Python kernels on the same workloads.

    python benchmarks/bench_backends.py [--repeat 3]
"""
import argparse
import time
from fractions import Fraction

from quadchroma import _backend
from quadchroma.geometry import CHI_SLOPE, parse_rule
from quadchroma.lattice import GridBox, count_box, count_grid, count_lattice_points_triangle
from quadchroma.montecarlo import RngSpec, estimate_graph_crossings, sweep_intervals

WORKLOADS = {
    "box 6x6": lambda k: count_box(GridBox(6, 6), kernels=k, threads=1),
    "grid m=4": lambda k: count_grid(4, kernels=k, threads=1),
    "mc sweep 1e5 x2 rules": lambda k: sweep_intervals(
        [CHI_SLOPE, parse_rule("blue=(-1,1)")], 100_000, RngSpec(1), kernels=k, threads=1),
    "graph 10 pts x50": lambda k: estimate_graph_crossings(10, 50, RngSpec(1), kernels=k, threads=1),
    "triangle": lambda k: count_lattice_points_triangle(
        (Fraction(1, 3), 0), (Fraction(301, 3), Fraction(7, 2)), (40, 99), kernels=k),
}


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = _backend.available_backends()
    if "cython" not in backends:
        print("compiled extension not built; only the python backend is available")
    names = sorted(backends)
    print(f"{'workload':<24}" + "".join(f"{n:>12}" for n in names) + ("     speedup" if len(names) == 2 else ""))
    for label, work in WORKLOADS.items():
        timings, outputs = [], []
        for name in names:
            t, out = best_of(lambda: work(backends[name]), args.repeat)
            timings.append(t)
            outputs.append(out)
        if any(o != outputs[0] for o in outputs):
            raise SystemExit(f"{label}: backends disagree")
        row = f"{label:<24}" + "".join(f"{t:>11.4f}s" for t in timings)
        if len(names) == 2:
            row += f"{timings[1] / timings[0]:>11.1f}x"
        print(row)


if __name__ == "__main__":
    main()
