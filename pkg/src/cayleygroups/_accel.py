"""Hot numeric kernels: numba-jitted with a pure-numpy fallback.

The gradient flow of a trace height function is integrated with classical
RK4 over thousands of small matrix steps; that loop dominates the runtime
of the flow experiments, so it is compiled with numba when available.

Set CAYLEYGROUPS_NUMBA=0 to force the numpy path (the benchmark in
benchmarks/bench_rk4.py compares both lanes).
"""

from __future__ import annotations

import os

import numpy as np


def _flag_enabled() -> bool:
    return os.environ.get("CAYLEYGROUPS_NUMBA", "1").strip().lower() not in (
        "0",
        "false",
        "off",
    )


def rk4_height_flow_numpy(
    x: np.ndarray, xstar: np.ndarray, a0: np.ndarray, dt: float, n_steps: int
) -> np.ndarray:
    """Integrate a' = (1/2)(X* - a X a) from a0 over n_steps of size dt.

    Arguments are complex images; returns the trajectory including the
    initial point, shape (n_steps + 1, n, n).  No re-orthonormalization is
    performed, so drift off the group is visible to the caller.
    """
    n = a0.shape[0]
    out = np.empty((n_steps + 1, n, n), dtype=np.complex128)
    a = a0.copy()
    out[0] = a
    for step in range(n_steps):
        k1 = 0.5 * (xstar - a @ x @ a)
        a2 = a + (0.5 * dt) * k1
        k2 = 0.5 * (xstar - a2 @ x @ a2)
        a3 = a + (0.5 * dt) * k2
        k3 = 0.5 * (xstar - a3 @ x @ a3)
        a4 = a + dt * k3
        k4 = 0.5 * (xstar - a4 @ x @ a4)
        a = a + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        out[step + 1] = a
    return out


NUMBA_ACTIVE = False
rk4_height_flow = rk4_height_flow_numpy

if _flag_enabled():
    try:
        from numba import njit

        rk4_height_flow_numba = njit(cache=True)(rk4_height_flow_numpy)
        rk4_height_flow = rk4_height_flow_numba
        NUMBA_ACTIVE = True
    except ImportError:
        pass
