"""Compare the compiled kernels with the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--n 100000] [--pairs 2000]
"""
import argparse
import time

import numpy as np

from punct_metrics import _kernels_py, sphere_metrics
from punct_metrics.sampling import sample_config_points, sample_estar

try:
    from punct_metrics import _kernels as _kernels_cy
except ImportError:
    _kernels_cy = None


def best_of(fn, repeat=3):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def bench_backend(mod, a, b, config, pts):
    out = {}
    out["D_batch"] = best_of(lambda: mod.D_batch(a, b))
    out["hyp_dstar_batch"] = best_of(lambda: mod.hyp_dstar_batch(a, b))
    scalar = list(zip(a[:10_000].tolist(), b[:10_000].tolist()))
    out["D scalar x1e4"] = best_of(lambda: [mod.D(x, y) for x, y in scalar])
    saved = sphere_metrics.kernels
    sphere_metrics.kernels = mod
    try:
        out[f"d_X x{len(pts)}"] = best_of(lambda: [sphere_metrics.dist_dX(config, x, y) for x, y in pts], 1)
    finally:
        sphere_metrics.kernels = saved
    return out


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n", type=int, default=100_000, help="batch size for vectorised kernels")
    parser.add_argument("--pairs", type=int, default=2000, help="d_X evaluations")
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)

    rng = np.random.default_rng(args.seed)
    a, b = sample_estar(rng, args.n), sample_estar(rng, args.n)
    config = sphere_metrics.normalize([0, 1, complex(-1.0, 1.5), sphere_metrics.INF])[0]
    pts = sample_config_points(rng, config, 2 * args.pairs).reshape(args.pairs, 2).tolist()

    results = {"python": bench_backend(_kernels_py, a, b, config, pts)}
    if _kernels_cy is not None:
        results["cython"] = bench_backend(_kernels_cy, a, b, config, pts)
    else:
        print("compiled extension not available; timing the fallback only")

    print(f"{'kernel':<18}" + "".join(f"{k:>12}" for k in results) + ("   speed-up" if len(results) > 1 else ""))
    for name in results["python"]:
        row = f"{name:<18}" + "".join(f"{results[k][name]:>11.4f}s" for k in results)
        if "cython" in results:
            row += f"   {results['python'][name] / results['cython'][name]:>7.1f}x"
        print(row)


if __name__ == "__main__":
    main()
