"""Compare the native and pure-python kernel lanes: speed and agreement.

Usage: python benchmarks/bench_backends.py [--batch 20000] [--n 6] [--h 0.015625]
The lanes are required to agree bit for bit; the script exits nonzero if
they do not (or if the native lane is unavailable).
"""

import argparse
import sys
import time

import numpy as np

from puccikit import _kernels_py
from puccikit.fd import Disk, Grid2D, Stencil
from puccikit.fd.solve import rhs_array, time_step
from puccikit.radial import ModelParams


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--batch", type=int, default=20000)
    ap.add_argument("--n", type=int, default=6)
    ap.add_argument("--h", type=float, default=1.0 / 64.0)
    ap.add_argument("--sweeps", type=int, default=200)
    args = ap.parse_args()

    try:
        from puccikit import _native
    except ImportError:
        print("native extension not built; nothing to compare", file=sys.stderr)
        return 1

    rng = np.random.default_rng(0)
    mats = rng.standard_normal((args.batch, args.n, args.n))
    mats = (mats + mats.transpose(0, 2, 1)) / 2.0

    t0 = time.perf_counter()
    ev_n, q_n = _native.jacobi_eigh_batch(mats)
    t_native = time.perf_counter() - t0
    t0 = time.perf_counter()
    ev_p, q_p = _kernels_py.jacobi_eigh_batch(mats)
    t_python = time.perf_counter() - t0
    eig_match = np.array_equal(ev_n, ev_p) and np.array_equal(q_n, q_p)
    print(
        f"jacobi ({args.batch} x {args.n}x{args.n}): "
        f"native {t_native:.3f}s  python {t_python:.3f}s  "
        f"speedup {t_python / t_native:.1f}x  bitwise-equal {eig_match}"
    )

    params = ModelParams(lam=1.0, Lam=1.0, p=2, delta=1.0, b=1.0)
    stencil = Stencil(2)
    grid = Grid2D(Disk(1.0), args.h, stencil, boundary_fn=lambda x, y: x)
    tab = grid.build_tables()
    f_int = rhs_array(grid, -1.0)
    tau = time_step(params, grid.h, stencil.width)
    u0 = grid.values.copy()

    def run(mod):
        u = u0.copy()
        t0 = time.perf_counter()
        for _ in range(args.sweeps):
            u, res, s = mod.fd_sweep(
                u, f_int, tab, params.lam, params.Lam, params.b, params.c, tau
            )
        return u, res, s, time.perf_counter() - t0

    un, rn, sn, t_native = run(_native)
    up, rp, sp, t_python = run(_kernels_py)
    fd_match = np.array_equal(un, up) and rn == rp and np.array_equal(sn, sp)
    print(
        f"fd sweep ({args.sweeps} sweeps, {tab['center'].size} nodes, "
        f"{len(stencil.arms)} arms): native {t_native:.3f}s  "
        f"python {t_python:.3f}s  speedup {t_python / t_native:.1f}x  "
        f"bitwise-equal {fd_match}"
    )

    if not (eig_match and fd_match):
        print("LANE MISMATCH", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
