"""Backend selection for the hot kernels.

The compiled extension is used when it imports; otherwise, or when
``PUNCT_METRICS_PURE_PYTHON`` is set to a non-empty value other than
``0``, the pure-Python module is used. Both expose the same functions.

The batch kernels always come from the numpy implementation: its
vectorised transcendentals beat the compiled element loop (see
``benchmarks/bench_kernels.py``). The compiled module wins on scalar calls
and inside the boundary minimisers.
"""
import os

from . import _kernels_py

if os.environ.get("PUNCT_METRICS_PURE_PYTHON", "") not in ("", "0"):
    from . import _kernels_py as _impl
else:
    try:
        from . import _kernels as _impl
    except ImportError:  # extension not built
        from . import _kernels_py as _impl

BACKEND = _impl.BACKEND

D = _impl.D
D_prime = _impl.D_prime
hyp_dstar = _impl.hyp_dstar
D_batch = _kernels_py.D_batch
D_prime_batch = _kernels_py.D_prime_batch
hyp_dstar_batch = _kernels_py.hyp_dstar_batch
chart_dist = _impl.chart_dist
min_one_circle = _impl.min_one_circle
min_two_circles = _impl.min_two_circles
