"""Dense real linear algebra: products, Frobenius norm, one-sided Jacobi SVD.

Matrices are plain read-only ``float64`` numpy arrays. ``as_matrix`` is the
single entry point that validates shape and finiteness; every public function
here routes its inputs through it.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from ._kernels import jacobi_sweeps
from .errors import ConvergenceError, ParameterError, ShapeError

TAU_JACOBI = 1e-12
TAU_ORTH = 1e-9
TAU_RECON = 1e-9
TAU_SIGN = 1e-9
TAU_ORACLE = 1e-6
MAX_SWEEPS = 64

_EPS = np.finfo(np.float64).eps


def as_matrix(data) -> np.ndarray:
    """Validate ``data`` as a finite 2-D matrix and return a read-only float copy."""
    arr = np.array(data, dtype=np.float64)
    if arr.ndim != 2:
        raise ShapeError(f"expected a 2-D matrix, got {arr.ndim}-D input")
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ShapeError(f"matrix must be at least 1x1, got {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("matrix entries must be finite")
    arr.flags.writeable = False
    return arr


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr = np.ascontiguousarray(arr, dtype=np.float64)
    arr.flags.writeable = False
    return arr


def matmul(a, b) -> np.ndarray:
    a = as_matrix(a)
    b = as_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise ShapeError(f"cannot multiply {a.shape} by {b.shape}")
    return _frozen(a @ b)


def frobenius_norm(a) -> float:
    a = as_matrix(a)
    # scaled to stay clear of overflow for very large entries
    scale = float(np.max(np.abs(a)))
    if scale == 0.0:
        return 0.0
    return scale * float(np.sqrt(np.sum((a / scale) ** 2)))


@dataclass(frozen=True, eq=False)
class SvdResult:
    """Singular triplets of an m x n matrix, sorted by descending singular value.

    ``u`` is m x k and ``v`` is n x k with k = min(m, n); column i of each pairs
    with ``sigma[i]``.
    """

    u: np.ndarray
    sigma: np.ndarray
    v: np.ndarray
    rank_hint: int
    sweeps: int = 0
    residual: float = 0.0

    def __len__(self) -> int:
        return self.sigma.shape[0]

    @property
    def shape(self) -> tuple[int, int]:
        return self.u.shape[0], self.v.shape[0]

    @property
    def u_columns(self) -> list[np.ndarray]:
        return [self.u[:, i] for i in range(len(self))]

    @property
    def v_columns(self) -> list[np.ndarray]:
        return [self.v[:, i] for i in range(len(self))]

    def triplet(self, i: int) -> tuple[float, np.ndarray, np.ndarray]:
        return float(self.sigma[i]), self.u[:, i], self.v[:, i]

    def triplets(self) -> Iterator[tuple[float, np.ndarray, np.ndarray]]:
        for i in range(len(self)):
            yield self.triplet(i)

    def reconstruct(self) -> np.ndarray:
        return truncated_sum(self, len(self))


def _complete_basis(cols: np.ndarray, keep: np.ndarray) -> np.ndarray:
    """Replace the columns not flagged in ``keep`` by unit vectors orthogonal to the rest.

    Candidates are the standard basis vectors tried in index order, which makes
    the completion deterministic.
    """
    m, k = cols.shape
    out = cols.copy()
    basis = [out[:, i] for i in range(k) if keep[i]]
    candidates = iter(range(m))
    for i in range(k):
        if keep[i]:
            continue
        for j in candidates:
            w = np.zeros(m)
            w[j] = 1.0
            for _ in range(2):
                for b in basis:
                    w -= (b @ w) * b
            nrm = np.linalg.norm(w)
            if nrm > 0.5:
                w /= nrm
                break
        else:  # pragma: no cover - m >= k guarantees a candidate
            raise RuntimeError("basis completion ran out of candidates")
        out[:, i] = w
        basis.append(w)
    return out


def svd(a, *, tol: float = TAU_JACOBI, max_sweeps: int = MAX_SWEEPS) -> SvdResult:
    """Singular value decomposition by cyclic one-sided Jacobi rotations.

    The columns of A are rotated pairwise until every normalized off-diagonal
    Gram entry is at most ``tol``. The column norms are then the singular
    values, the normalized columns the left vectors, and the accumulated
    rotations the right vectors. Output is sorted (stable) by descending
    singular value and sign-normalized.

    Raises ConvergenceError when ``max_sweeps`` sweeps do not suffice.
    """
    a = as_matrix(a)
    m, n = a.shape
    if m < n:
        t = svd(a.T, tol=tol, max_sweeps=max_sweeps)
        return sign_normalize(
            SvdResult(u=t.v, sigma=t.sigma, v=t.u, rank_hint=t.rank_hint,
                      sweeps=t.sweeps, residual=t.residual)
        )

    # Work on A / 2^e with the largest entry in [0.5, 1): exact, and keeps the
    # squared column norms inside the kernel away from underflow and overflow.
    peak = float(np.max(np.abs(a))) if a.size else 0.0
    scale = math.ldexp(1.0, math.frexp(peak)[1]) if peak > 0.0 else 1.0
    g = np.array(a, dtype=np.float64, order="C") / scale
    v = np.eye(n)
    norm_a = frobenius_norm(g)
    floor = (max(m, n) * _EPS * norm_a) ** 2
    sweeps, residual, converged = jacobi_sweeps(g, v, tol, floor, max_sweeps)
    if not converged:
        raise ConvergenceError("one-sided Jacobi did not converge", residual, sweeps)

    sigma = np.sqrt(np.einsum("ij,ij->j", g, g))
    order = np.argsort(-sigma, kind="stable")
    sigma = sigma[order]
    g = g[:, order]
    v = v[:, order]

    # A column the kernel left unrotated (at or below the floor) is not
    # orthogonal to the others, so it must count as null here too.
    cutoff = max(max(m, n) * _EPS * (sigma[0] if sigma.size else 0.0), math.sqrt(floor))
    keep = sigma > cutoff if sigma[0] > 0.0 else np.zeros(n, dtype=bool)
    u = np.zeros((m, n))
    u[:, keep] = g[:, keep] / sigma[keep]
    if not np.all(keep):
        u = _complete_basis(u, keep)

    return sign_normalize(
        SvdResult(u=_frozen(u), sigma=_frozen(sigma * scale), v=_frozen(v),
                  rank_hint=int(np.count_nonzero(keep)), sweeps=int(sweeps),
                  residual=float(residual))
    )


def sign_normalize(s: SvdResult) -> SvdResult:
    """Flip each pair (u_i, v_i) so the largest-magnitude entry of u_i is positive.

    Ties on magnitude go to the lowest index (``argmax`` semantics).
    """
    k = len(s)
    signs = np.ones(k)
    for i in range(k):
        col = s.u[:, i]
        if col[int(np.argmax(np.abs(col)))] < 0.0:
            signs[i] = -1.0
    if np.all(signs > 0):
        return s
    return SvdResult(u=_frozen(s.u * signs), sigma=s.sigma, v=_frozen(s.v * signs),
                     rank_hint=s.rank_hint, sweeps=s.sweeps, residual=s.residual)


def rank_one(sigma: float, u: Sequence[float], v: Sequence[float]) -> np.ndarray:
    """The outer product ``sigma * u v^T``."""
    if sigma < 0:
        raise ParameterError("sigma must be nonnegative")
    u = np.asarray(u, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    if u.ndim != 1 or v.ndim != 1:
        raise ShapeError("u and v must be vectors")
    return _frozen(float(sigma) * np.outer(u, v))


def truncated_sum(s: SvdResult, k: int) -> np.ndarray:
    """Sum of the first ``k`` rank-one terms ``sigma_i u_i v_i^T``."""
    if not 1 <= k <= len(s):
        raise ParameterError(f"k must be in [1, {len(s)}], got {k}")
    return _frozen((s.u[:, :k] * s.sigma[:k]) @ s.v[:, :k].T)
