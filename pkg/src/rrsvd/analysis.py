"""Ratings, predictions and second-order corrections derived from the SVD of A."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DegenerateInputError, ParameterError
from .linalg import TAU_SIGN, SvdResult, as_matrix, rank_one, truncated_sum
from .tournament import PerformanceMatrix


def rank_with_ties(values: Sequence[float], *, descending: bool,
                   tol: float = TAU_SIGN) -> tuple[tuple[int, ...], tuple[tuple[int, ...], ...]]:
    """Order indices by ``values``; entries within ``tol`` of each other tie.

    Returns ``(order, tie_groups)``. Tied indices are listed by ascending index
    and every group of two or more tied indices appears in ``tie_groups``.
    """
    vals = np.asarray(values, dtype=np.float64)
    key = -vals if descending else vals
    order = sorted(range(len(vals)), key=lambda i: (key[i], i))
    blocks: list[list[int]] = []
    for i in order:
        if blocks and abs(vals[i] - vals[blocks[-1][0]]) <= tol:
            blocks[-1].append(i)
        else:
            blocks.append([i])
    ranked: list[int] = []
    ties = []
    for block in blocks:
        block.sort()
        ranked.extend(block)
        if len(block) > 1:
            ties.append(tuple(block))
    return tuple(ranked), tuple(ties)


@dataclass(frozen=True, eq=False)
class OffenseDefenseScores:
    offense: np.ndarray
    defense: np.ndarray
    offense_ranking: tuple[int, ...]
    defense_ranking: tuple[int, ...]
    offense_ties: tuple[tuple[int, ...], ...] = ()
    defense_ties: tuple[tuple[int, ...], ...] = ()


def offense_defense_scores(s: SvdResult) -> OffenseDefenseScores:
    """u_1 as offense (high is good), v_1 as defense (low is good)."""
    offense = np.array(s.u[:, 0])
    defense = np.array(s.v[:, 0])
    off_rank, off_ties = rank_with_ties(offense, descending=True)
    def_rank, def_ties = rank_with_ties(defense, descending=False)
    return OffenseDefenseScores(offense, defense, off_rank, def_rank, off_ties, def_ties)


@dataclass(frozen=True)
class ExplainedFraction:
    value: float
    k: int = 1


def explained_fraction(s: SvdResult, k: int = 1) -> ExplainedFraction:
    """Share of ||A||_F^2 carried by the leading ``k`` singular values."""
    if not 1 <= k <= len(s):
        raise ParameterError(f"k must be in [1, {len(s)}], got {k}")
    sq = np.asarray(s.sigma) ** 2
    total = float(np.sum(sq))
    if total == 0.0:
        raise DegenerateInputError("all singular values are zero")
    if k == len(s):
        return ExplainedFraction(1.0, k)
    return ExplainedFraction(min(1.0, float(np.sum(sq[:k])) / total), k)


def predicted_matrix(s: SvdResult, k: int = 1) -> np.ndarray:
    return truncated_sum(s, k)


@dataclass(frozen=True)
class SignGroups:
    positive: tuple[int, ...]
    negative: tuple[int, ...]
    neutral: tuple[int, ...] = ()

    def flipped(self) -> "SignGroups":
        return SignGroups(self.negative, self.positive, self.neutral)


def sign_groups(vec: Sequence[float], tol: float = TAU_SIGN) -> SignGroups:
    """Split indices by sign, each side ordered by descending magnitude."""
    vec = np.asarray(vec, dtype=np.float64)
    pos = sorted((i for i in range(len(vec)) if vec[i] >= tol), key=lambda i: (-vec[i], i))
    neg = sorted((i for i in range(len(vec)) if vec[i] <= -tol), key=lambda i: (vec[i], i))
    neutral = [i for i in range(len(vec)) if abs(vec[i]) < tol]
    return SignGroups(tuple(pos), tuple(neg), tuple(neutral))


@dataclass(frozen=True)
class BoredomReport:
    """Teams whose predicted correction shrinks (boring) or grows (exciting) their own diagonal."""

    boring: tuple[tuple[int, float], ...]
    exciting: tuple[tuple[int, float], ...]


@dataclass(frozen=True, eq=False)
class CorrectionAnalysis:
    residual: np.ndarray
    predicted_correction: np.ndarray
    offense_correction: np.ndarray
    defense_correction: np.ndarray
    offense_groups: SignGroups
    defense_groups: SignGroups
    boredom: BoredomReport


def boredom_ranking(c: CorrectionAnalysis | np.ndarray, tol: float = TAU_SIGN) -> BoredomReport:
    """Rank teams by the diagonal of the predicted correction A_2.

    Negative diagonals are "boring", largest magnitude first; positive ones are
    "exciting", largest first. Entries within ``tol`` of zero are left out.
    """
    a2 = c.predicted_correction if isinstance(c, CorrectionAnalysis) else np.asarray(c)
    diag = np.diag(a2)
    boring = sorted(((i, float(d)) for i, d in enumerate(diag) if d <= -tol),
                    key=lambda p: (p[1], p[0]))
    exciting = sorted(((i, float(d)) for i, d in enumerate(diag) if d >= tol),
                      key=lambda p: (-p[1], p[0]))
    return BoredomReport(tuple(boring), tuple(exciting))


def correction_analysis(a: PerformanceMatrix | np.ndarray, s: SvdResult) -> CorrectionAnalysis:
    """Residual A - A_1 and its best rank-one model A_2 = sigma_2 u_2 v_2^T."""
    mat = a.matrix if isinstance(a, PerformanceMatrix) else as_matrix(a)
    if len(s) < 2 or s.rank_hint < 2:
        raise DegenerateInputError("rank below 2: no second-order structure")
    a1 = truncated_sum(s, 1)
    residual = mat - a1
    sigma2, u2, v2 = s.triplet(1)
    a2 = rank_one(sigma2, u2, v2)
    residual.flags.writeable = False
    return CorrectionAnalysis(
        residual=residual,
        predicted_correction=a2,
        offense_correction=np.array(u2),
        defense_correction=np.array(v2),
        offense_groups=sign_groups(u2),
        defense_groups=sign_groups(v2),
        boredom=boredom_ranking(a2),
    )


# --- comparison with raw goal counts ---------------------------------------

IDENTICAL = "identical"
UP_TO_TIES = "identical-up-to-ties"
DIFFERENT = "different"


@dataclass(frozen=True)
class DimensionComparison:
    verdict: str
    svd_order: tuple[int, ...]
    goal_classes: tuple[tuple[int, ...], ...]
    differing_positions: tuple[int, ...]


@dataclass(frozen=True)
class RankingComparison:
    offense: DimensionComparison
    defense: DimensionComparison


def _goal_classes(counts, descending: bool) -> tuple[tuple[int, ...], ...]:
    counts = np.asarray(counts)
    levels = sorted(set(counts.tolist()), reverse=descending)
    return tuple(tuple(int(i) for i in np.flatnonzero(counts == lv)) for lv in levels)


def _compare(svd_order: Sequence[int], classes) -> DimensionComparison:
    slot = []
    for cls in classes:
        slot.extend([set(cls)] * len(cls))
    differing = tuple(pos for pos, team in enumerate(svd_order) if team not in slot[pos])
    if differing:
        verdict = DIFFERENT
    elif any(len(c) > 1 for c in classes):
        verdict = UP_TO_TIES
    else:
        verdict = IDENTICAL
    return DimensionComparison(verdict, tuple(svd_order), tuple(classes), differing)


def compare_rankings(scores: OffenseDefenseScores, goals_scored, goals_allowed) -> RankingComparison:
    """Check the SVD rankings against rankings by goals scored / allowed.

    A position differs when the SVD puts a team there that the goal count
    would not allow, even after permuting teams with equal counts.
    """
    return RankingComparison(
        offense=_compare(scores.offense_ranking, _goal_classes(goals_scored, descending=True)),
        defense=_compare(scores.defense_ranking, _goal_classes(goals_allowed, descending=False)),
    )
