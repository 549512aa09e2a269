"""One-sided Jacobi rotation sweeps.

Two interchangeable implementations of the same kernel:

* ``_sweeps_loops`` is written as explicit scalar loops so numba can compile it.
* ``_sweeps_numpy`` rotates whole columns with numpy vector operations.

Both orthogonalize the columns of ``g`` in place (accumulating the rotations
into ``v``) and return ``(sweeps, residual, converged)`` where ``residual`` is
the largest normalized off-diagonal Gram entry ``|g_p . g_q| / (|g_p| |g_q|)``
seen during the final sweep.
"""
from __future__ import annotations

import math

import numpy as np

from ._accel import NUMBA_ENABLED, njit


def _sweeps_loops(g, v, tol, floor, max_sweeps):
    m, n = g.shape
    residual = 0.0
    sweeps = 0
    while sweeps < max_sweeps:
        sweeps += 1
        residual = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                alpha = 0.0
                beta = 0.0
                gamma = 0.0
                for k in range(m):
                    gp = g[k, p]
                    gq = g[k, q]
                    alpha += gp * gp
                    beta += gq * gq
                    gamma += gp * gq
                if alpha <= floor or beta <= floor:
                    continue
                ratio = abs(gamma) / math.sqrt(alpha * beta)
                if ratio > residual:
                    residual = ratio
                if ratio <= tol:
                    continue
                zeta = (beta - alpha) / (2.0 * gamma)
                t = 1.0 / (abs(zeta) + math.hypot(1.0, zeta))
                if zeta < 0.0:
                    t = -t
                c = 1.0 / math.hypot(1.0, t)
                s = c * t
                for k in range(m):
                    gp = g[k, p]
                    gq = g[k, q]
                    g[k, p] = c * gp - s * gq
                    g[k, q] = s * gp + c * gq
                for k in range(n):
                    vp = v[k, p]
                    vq = v[k, q]
                    v[k, p] = c * vp - s * vq
                    v[k, q] = s * vp + c * vq
        if residual <= tol:
            return sweeps, residual, True
    return sweeps, residual, False


def _sweeps_numpy(g, v, tol, floor, max_sweeps):
    n = g.shape[1]
    residual = 0.0
    sweeps = 0
    while sweeps < max_sweeps:
        sweeps += 1
        residual = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                gp = g[:, p]
                gq = g[:, q]
                alpha = float(gp @ gp)
                beta = float(gq @ gq)
                if alpha <= floor or beta <= floor:
                    continue
                gamma = float(gp @ gq)
                ratio = abs(gamma) / math.sqrt(alpha * beta)
                residual = max(residual, ratio)
                if ratio <= tol:
                    continue
                zeta = (beta - alpha) / (2.0 * gamma)
                t = math.copysign(1.0 / (abs(zeta) + math.hypot(1.0, zeta)), zeta)
                c = 1.0 / math.hypot(1.0, t)
                s = c * t
                rot = np.array([[c, s], [-s, c]])
                g[:, [p, q]] = g[:, [p, q]] @ rot
                v[:, [p, q]] = v[:, [p, q]] @ rot
        if residual <= tol:
            return sweeps, residual, True
    return sweeps, residual, False


_sweeps_numba = njit(_sweeps_loops) if NUMBA_ENABLED else None


def jacobi_sweeps(g: np.ndarray, v: np.ndarray, tol: float, floor: float, max_sweeps: int):
    """Dispatch to the compiled kernel when available, else the numpy one.

    Columns whose squared norm is at or below ``floor`` are treated as zero and
    never rotated; without this, rounding noise in a numerically null column
    keeps the normalized residual from settling on rank-deficient input.
    """
    if _sweeps_numba is not None:
        return _sweeps_numba(g, v, float(tol), float(floor), int(max_sweeps))
    return _sweeps_numpy(g, v, float(tol), float(floor), int(max_sweeps))
