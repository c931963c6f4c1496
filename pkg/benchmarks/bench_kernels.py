"""Time the numba kernels against their numpy twins and check they agree.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--json out.json]
"""
import argparse
import json
import sys
import time

import numpy as np

from lumpspace import _kernels
from lumpspace._backend import HAS_NUMBA
from lumpspace.lie import PCoords
from lumpspace.maps import tangent_field
from lumpspace.quadrature import build_grid


def _time(fn, args, repeat):
    fn(*args)  # warm-up (and JIT compile)
    best = np.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, out


def cases():
    grid = build_grid(256, 256)
    f = tangent_field(2.0, PCoords.phat(3) + PCoords.pmu(3, 1 + 1j), grid)
    yield "fs_inner_density", (f.w, f.v, f.v, 4.0)

    rng = np.random.default_rng(0)
    yield "pairwise_sum", (rng.standard_normal(1 << 20),)

    d = 3
    u = 0.25 * np.arange(-260, 261, dtype=float)
    v = (0.2 / d) * np.arange(-1200, 1201, dtype=float)
    yield "cylinder_radial", (u, d, v, 0.2 / d)

    la = np.linspace(-200.0, 200.0, 2001)
    uu = 0.25 * np.arange(-500, 501, dtype=float)
    yield "dilation_inner", (la, uu, 0.25)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--json", metavar="PATH")
    args = ap.parse_args(argv)
    if not HAS_NUMBA:
        print("numba unavailable (or LUMPSPACE_NUMBA=0); nothing to compare", file=sys.stderr)
        return 1

    rows = []
    print(f"{'kernel':<18}{'numpy [ms]':>12}{'numba [ms]':>12}{'speedup':>9}{'max rel diff':>14}")
    for name, a in cases():
        t_np, r_np = _time(getattr(_kernels, f"{name}_numpy"), a, args.repeat)
        t_nb, r_nb = _time(getattr(_kernels, f"{name}_numba"), a, args.repeat)
        r_np, r_nb = np.atleast_1d(r_np), np.atleast_1d(r_nb)
        diff = float(np.max(np.abs(r_np - r_nb) / np.maximum(np.abs(r_np), 1e-300)))
        rows.append({"kernel": name, "numpy_ms": 1e3 * t_np, "numba_ms": 1e3 * t_nb,
                     "speedup": t_np / t_nb, "max_rel_diff": diff})
        print(f"{name:<18}{1e3 * t_np:12.3f}{1e3 * t_nb:12.3f}{t_np / t_nb:9.1f}{diff:14.2e}")
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump(rows, fh, indent=2)
    return 0


if __name__ == "__main__":
    sys.exit(main())
