"""Polar factors of the performance matrix and the symmetric "draw" tournaments they describe."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ParameterError, ShapeError
from .linalg import SvdResult

OFFENSE_MIRRORED = "offense-mirrored"
DEFENSE_MIRRORED = "defense-mirrored"


@dataclass(frozen=True, eq=False)
class PolarFactors:
    """A = P W = W Q with P = U D U^T, Q = V D V^T and orthogonal W = U V^T."""

    p: np.ndarray
    q: np.ndarray
    w: np.ndarray
    rank_deficient: bool = False


def _sym(x: np.ndarray) -> np.ndarray:
    out = 0.5 * (x + x.T)
    out.flags.writeable = False
    return out


def polar_factors(s: SvdResult) -> PolarFactors:
    m, n = s.shape
    if m != n:
        raise ShapeError(f"polar factors need a square matrix, got {m}x{n}")
    u, v, d = s.u, s.v, s.sigma
    p = _sym((u * d) @ u.T)
    q = _sym((v * d) @ v.T)
    w = u @ v.T
    w.flags.writeable = False
    return PolarFactors(p=p, q=q, w=w, rank_deficient=s.rank_hint < n)


@dataclass(frozen=True, eq=False)
class DrawTable:
    """Predicted draw scores of the hypothetical symmetric tournament."""

    mode: str
    scores: np.ndarray

    def score(self, i: int, j: int) -> tuple[float, float]:
        x = float(self.scores[i, j])
        return x, x

    def fixtures(self):
        """Yield ``(i, j, goals)`` for every pairing i < j."""
        n = self.scores.shape[0]
        for i in range(n):
            for j in range(i + 1, n):
                yield i, j, float(self.scores[i, j])


def hypothetical_scores(f: PolarFactors, mode: str) -> DrawTable:
    """P when defense mirrors offense (``v_i = u_i``), Q when offense mirrors defense."""
    if mode == OFFENSE_MIRRORED:
        return DrawTable(mode, f.p)
    if mode == DEFENSE_MIRRORED:
        return DrawTable(mode, f.q)
    raise ParameterError(f"unknown mode {mode!r}")
