"""Compare the compiled kernels with the numpy fallback.

    python benchmarks/bench_kernels.py [--repeat 5]
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from ksrgroups import _kernels_py
from ksrgroups.root_datum import LatticeSpec, build_root_datum, build_root_system
from ksrgroups.weyl import weyl_table

try:
    from ksrgroups import _kernels
except ImportError:
    _kernels = None


def _best(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def cases():
    """(name, kernel name, args) triples covering the three hot loops."""
    out = []
    for t, d in (("D4", 12), ("F4", 8), ("B4", 10), ("A4", 10)):
        datum = build_root_datum(build_root_system(t), LatticeSpec("weight"))
        gens = np.array(datum.simple_reflections_x, dtype=np.int64)
        out.append((f"orbit_labels {t} d={d}", "orbit_labels", (gens, d)))
    for t in ("F4", "E6"):
        rs = build_root_system(t)
        mats = weyl_table(rs).mats.astype(np.int64)
        k = np.arange(1, rs.rank + 1, dtype=np.int64)
        out.append((f"stabilizer_mask {t}", "stabilizer_mask", (mats, k, 6)))
        roots = np.array(rs.positive_roots[: rs.rank + 2], dtype=np.int64).T.copy()
        out.append((f"positive_mask {t}", "positive_mask", (mats, roots)))
    return out


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    if _kernels is None:
        print("compiled extension not built; only the fallback is available")
    print(f"{'case':<28} {'numpy [ms]':>11} {'cython [ms]':>12} {'speedup':>8}  agree")
    for name, kernel, fargs in cases():
        py = getattr(_kernels_py, kernel)
        t_py = _best(lambda: py(*fargs), args.repeat)
        if _kernels is None:
            print(f"{name:<28} {t_py * 1e3:11.2f} {'-':>12} {'-':>8}  -")
            continue
        cy = getattr(_kernels, kernel)
        t_cy = _best(lambda: cy(*fargs), args.repeat)
        agree = np.array_equal(py(*fargs), cy(*fargs))
        print(f"{name:<28} {t_py * 1e3:11.2f} {t_cy * 1e3:12.2f} {t_py / t_cy:8.1f}  {agree}")


if __name__ == "__main__":
    main()
