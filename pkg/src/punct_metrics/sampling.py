"""Seeded point samplers for property checks."""
import math

import numpy as np

from .sphere_metrics import PunctureConfiguration

TAU_RANGE = (1.0, 6.0)


def sample_estar(rng: np.random.Generator, size: int, tau_range=TAU_RANGE) -> np.ndarray:
    """Points of ``0 < |z| <= 1/e``, uniform in ``(tau, theta)``."""
    tau = rng.uniform(*tau_range, size)
    theta = rng.uniform(0.0, 2.0 * math.pi, size)
    return np.exp(-tau + 1j * theta)


def sample_config_points(rng: np.random.Generator, config: PunctureConfiguration, size: int) -> np.ndarray:
    """Points of X, split evenly between each ``E*_j`` and the core."""
    n = config.n
    region = rng.integers(0, n + 1, size)
    z = sample_estar(rng, size)
    out = np.empty(size, dtype=complex)
    for j in range(n - 1):
        sel = region == j
        out[sel] = config.punctures[j] + config.rho_tilde[j] * z[sel]
    sel = region == n - 1
    out[sel] = config.rho_tilde[n - 1] / z[sel]
    core = np.flatnonzero(region == n)
    out[core] = _sample_core(rng, config, core.size)
    return out


def _sample_core(rng, config, size):
    R = config.rho[-1]
    pts = []
    while len(pts) < size:
        w = complex(*rng.uniform(-R, R, 2))
        if abs(w) >= R:
            continue
        if any(abs(w - config.punctures[j]) <= config.rho[j] for j in range(config.n - 1)):
            continue
        pts.append(w)
    return np.array(pts, dtype=complex)


def sample_disk(rng: np.random.Generator, size: int, rho: float, depth: float = 4.0) -> np.ndarray:
    """Points with ``rho e^{-depth} <= |w| <= rho``, log-uniform in modulus."""
    r = rho * np.exp(-rng.uniform(0.0, depth, size))
    theta = rng.uniform(0.0, 2.0 * math.pi, size)
    return r * np.exp(1j * theta)
