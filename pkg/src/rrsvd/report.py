"""Full analysis pipeline and its text / JSON renderings."""
from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .analysis import (
    CorrectionAnalysis,
    ExplainedFraction,
    OffenseDefenseScores,
    RankingComparison,
    compare_rankings,
    correction_analysis,
    explained_fraction,
    offense_defense_scores,
    predicted_matrix,
)
from .errors import ParameterError
from .linalg import SvdResult, svd
from .polar import (
    DEFENSE_MIRRORED,
    OFFENSE_MIRRORED,
    DrawTable,
    PolarFactors,
    hypothetical_scores,
    polar_factors,
)
from .standings import StandingsTable, compute_standings
from .tournament import (
    PerformanceMatrix,
    Tournament,
    build_performance_matrix,
    goals_allowed_vector,
    goals_scored_vector,
)

SECTIONS = ("matrix", "svd", "scores", "corrections", "polar", "standings", "all")

# JSON keys emitted per --section choice; "tournament" is always present.
_SECTION_KEYS = {
    "matrix": ("matrix",),
    "svd": ("svd", "explained"),
    "scores": ("scores", "predicted"),
    "corrections": ("correction",),
    "polar": ("polar",),
    "standings": ("standings",),
}


@dataclass(frozen=True, eq=False)
class AnalysisReport:
    tournament: Tournament
    performance: PerformanceMatrix
    svd: SvdResult
    scores: OffenseDefenseScores | None
    comparison: RankingComparison | None
    goals_scored: np.ndarray
    goals_allowed: np.ndarray
    explained: tuple[ExplainedFraction, ...] | None
    rank_k: int
    predicted: np.ndarray
    correction: CorrectionAnalysis | None
    polar: PolarFactors
    draws: tuple[DrawTable, DrawTable]
    standings: StandingsTable
    degenerate: tuple[str, ...] = field(default=())

    @property
    def names(self) -> list[str]:
        return self.tournament.names


def analyze(t: Tournament, *, rank: int = 1, seed: int | None = None,
            use_diagonal_override: bool = True) -> AnalysisReport:
    perf = build_performance_matrix(t, use_override=use_diagonal_override)
    s = svd(perf.matrix)
    if not 1 <= rank <= len(s):
        raise ParameterError(f"--rank must be in [1, {len(s)}], got {rank}")
    degenerate: list[str] = []

    scored, allowed = goals_scored_vector(t), goals_allowed_vector(t)
    if s.rank_hint == 0:
        scores = comparison = explained = None
        degenerate += ["scores", "explained"]
    else:
        scores = offense_defense_scores(s)
        comparison = compare_rankings(scores, scored, allowed)
        explained = tuple(explained_fraction(s, k) for k in range(1, len(s) + 1))

    if s.rank_hint < 2:
        correction = None
        degenerate.append("correction")
    else:
        correction = correction_analysis(perf, s)

    factors = polar_factors(s)
    if factors.rank_deficient:
        degenerate.append("polar")

    return AnalysisReport(
        tournament=t,
        performance=perf,
        svd=s,
        scores=scores,
        comparison=comparison,
        goals_scored=scored,
        goals_allowed=allowed,
        explained=explained,
        rank_k=rank,
        predicted=predicted_matrix(s, rank),
        correction=correction,
        polar=factors,
        draws=(hypothetical_scores(factors, OFFENSE_MIRRORED),
               hypothetical_scores(factors, DEFENSE_MIRRORED)),
        standings=compute_standings(t, seed=seed),
        degenerate=tuple(degenerate),
    )


# --- JSON ---------------------------------------------------------------------


def _floats(x) -> list:
    return np.asarray(x, dtype=np.float64).tolist()


def _labeled(names, mat) -> dict:
    return {"labels": list(names), "rows": _floats(mat)}


def _groups(names, g) -> dict:
    return {
        "positive": [names[i] for i in g.positive],
        "negative": [names[i] for i in g.negative],
        "neutral": [names[i] for i in g.neutral],
    }


def to_dict(r: AnalysisReport, section: str = "all") -> dict:
    names = r.names
    t = r.tournament
    out: dict = {
        "tournament": {
            "teams": names,
            "matches": [
                {"home": names[m.home], "away": names[m.away],
                 "home_goals": m.home_goals, "away_goals": m.away_goals}
                for m in t.matches
            ],
            "fair_play": list(t.fair_play) if t.fair_play is not None else None,
            "seed": t.coin_seed,
            "diagonal_source": r.performance.diagonal_source,
        },
        "matrix": _labeled(names, r.performance.matrix),
        "svd": {
            "sigma": _floats(r.svd.sigma),
            "u": _floats(r.svd.u.T),
            "v": _floats(r.svd.v.T),
            "rank": r.svd.rank_hint,
        },
    }

    if r.scores is None:
        out["scores"] = {"degenerate": True}
    else:
        sc, cmp_ = r.scores, r.comparison
        out["scores"] = {
            "degenerate": False,
            "offense": dict(zip(names, _floats(sc.offense))),
            "defense": dict(zip(names, _floats(sc.defense))),
            "offense_ranking": [names[i] for i in sc.offense_ranking],
            "defense_ranking": [names[i] for i in sc.defense_ranking],
            "offense_ties": [[names[i] for i in g] for g in sc.offense_ties],
            "defense_ties": [[names[i] for i in g] for g in sc.defense_ties],
            "goals_scored": dict(zip(names, r.goals_scored.tolist())),
            "goals_allowed": dict(zip(names, r.goals_allowed.tolist())),
            "goal_count_comparison": {
                dim: {
                    "verdict": c.verdict,
                    "differing_positions": list(c.differing_positions),
                }
                for dim, c in (("offense", cmp_.offense), ("defense", cmp_.defense))
            },
        }

    if r.explained is None:
        out["explained"] = {"degenerate": True, "fractions": []}
    else:
        out["explained"] = {
            "degenerate": False,
            "fractions": [{"k": e.k, "value": e.value} for e in r.explained],
        }

    out["predicted"] = {"k": r.rank_k, **_labeled(names, r.predicted)}

    c = r.correction
    if c is None:
        out["correction"] = {"degenerate": True}
    else:
        out["correction"] = {
            "degenerate": False,
            "residual": _labeled(names, c.residual),
            "predicted_correction": _labeled(names, c.predicted_correction),
            "offense_correction": dict(zip(names, _floats(c.offense_correction))),
            "defense_correction": dict(zip(names, _floats(c.defense_correction))),
            "offense_groups": _groups(names, c.offense_groups),
            "defense_groups": _groups(names, c.defense_groups),
            "boredom": {
                "boring": [[names[i], v] for i, v in c.boredom.boring],
                "exciting": [[names[i], v] for i, v in c.boredom.exciting],
            },
        }

    out["polar"] = {
        "rank_deficient": r.polar.rank_deficient,
        "p": _labeled(names, r.polar.p),
        "q": _labeled(names, r.polar.q),
        "w": _labeled(names, r.polar.w),
        **{
            table.mode: [
                {"home": names[i], "away": names[j], "score": [x, x]}
                for i, j, x in table.fixtures()
            ]
            for table in r.draws
        },
    }

    st = r.standings
    out["standings"] = {
        "rows": [
            {"team": row.name, "points": row.points, "wins": row.wins, "draws": row.draws,
             "losses": row.losses, "goals_for": row.goals_for,
             "goals_against": row.goals_against, "goal_difference": row.goal_difference,
             "tiebreak_level_used": row.tiebreak_level_used}
            for row in st.rows
        ],
        "advancing": [names[i] for i in st.advancing],
        "audit": [
            {"upper": names[a.upper], "lower": names[a.lower], "level": a.level, "note": a.note}
            for a in st.audit
        ],
    }

    if section != "all":
        keep = ("tournament",) + _SECTION_KEYS[section]
        out = {k: v for k, v in out.items() if k in keep}
    return out


def to_json(r: AnalysisReport, section: str = "all") -> str:
    return json.dumps(to_dict(r, section), indent=2, allow_nan=False) + "\n"


# --- text -----------------------------------------------------------------------


def _fmt(x: float) -> str:
    s = f"{x:.4f}"
    return "0.0000" if s == "-0.0000" else s


def _matrix_block(title: str, names, mat) -> list[str]:
    width = max(9, max(len(n) for n in names) + 1)
    col = max(10, max(len(n) for n in names)) + 1
    lines = [title, " " * width + "".join(f"{n:>{col}}" for n in names)]
    for name, row in zip(names, np.asarray(mat)):
        lines.append(f"{name:<{width}}" + "".join(f"{_fmt(v):>{col}}" for v in row))
    return lines


def _vector_line(label: str, vec) -> str:
    return f"{label} = (" + ", ".join(_fmt(v) for v in vec) + ")"


def to_text(r: AnalysisReport, section: str = "all") -> str:
    names = r.names
    want = (lambda s: True) if section == "all" else (lambda s: s == section)
    out: list[str] = [f"Teams: {', '.join(names)}"]
    if r.degenerate:
        out.append("DEGENERATE: " + ", ".join(r.degenerate))
    out.append("")

    if want("matrix"):
        note = " (diagonal overridden)" if r.performance.diagonal_source == "override" else ""
        out += _matrix_block(f"Performance matrix A{note}", names, r.performance.matrix) + [""]

    if want("svd"):
        out.append("Singular values: (" + ", ".join(_fmt(x) for x in r.svd.sigma) + ")")
        for i in range(len(r.svd)):
            out.append(_vector_line(f"u{i + 1}", r.svd.u[:, i]))
            out.append(_vector_line(f"v{i + 1}", r.svd.v[:, i]))
        if r.explained is None:
            out.append("Explained fraction: degenerate (all singular values are zero)")
        else:
            out.append("Explained fraction: " + ", ".join(
                f"k={e.k}: {_fmt(e.value)}" for e in r.explained))
        out.append("")

    if want("scores"):
        if r.scores is None:
            out.append("Offense/defense scores: degenerate (zero matrix)")
        else:
            sc = r.scores
            out.append("Offense (higher is better):")
            for i in sc.offense_ranking:
                out.append(f"  {names[i]:<16}{_fmt(sc.offense[i])}   goals {r.goals_scored[i]}")
            out.append("Defense (lower is better):")
            for i in sc.defense_ranking:
                out.append(f"  {names[i]:<16}{_fmt(sc.defense[i])}   allowed {r.goals_allowed[i]}")
            for label, ties in (("offense", sc.offense_ties), ("defense", sc.defense_ties)):
                for grp in ties:
                    out.append(f"  tied ({label}): " + ", ".join(names[i] for i in grp))
            out.append(f"Versus goal counts: offense {r.comparison.offense.verdict}, "
                       f"defense {r.comparison.defense.verdict}")
        out.append("")
        out += _matrix_block(f"Predicted matrix (rank {r.rank_k})", names, r.predicted) + [""]

    if want("corrections"):
        c = r.correction
        if c is None:
            out += ["Correction analysis: degenerate (rank below 2)", ""]
        else:
            out += _matrix_block("Correction matrix A - A1", names, c.residual)
            out += _matrix_block("Predicted correction A2", names, c.predicted_correction)
            for label, g in (("offense", c.offense_groups), ("defense", c.defense_groups)):
                out.append(f"{label.capitalize()} correction groups: positive "
                           f"{{{', '.join(names[i] for i in g.positive)}}}; negative "
                           f"{{{', '.join(names[i] for i in g.negative)}}}")
            out.append("Boring: " + (", ".join(f"{names[i]} ({_fmt(v)})" for i, v in c.boredom.boring)
                                      or "none"))
            out.append("Exciting: " + (", ".join(f"{names[i]} ({_fmt(v)})" for i, v in c.boredom.exciting)
                                        or "none"))
            out.append("")

    if want("polar"):
        if r.polar.rank_deficient:
            out.append("Polar factors: rank deficient, P and Q are only semidefinite")
        out += _matrix_block("P = U D U^T (defense mirrors offense)", names, r.polar.p)
        out += _matrix_block("Q = V D V^T (offense mirrors defense)", names, r.polar.q)
        for table in r.draws:
            out.append(f"Draws, {table.mode}:")
            for i, j, x in table.fixtures():
                out.append(f"  {names[i]} {_fmt(x)}:{_fmt(x)} {names[j]}")
        out.append("")

    if want("standings"):
        st = r.standings
        out.append(f"{'Team':<16}{'Pts':>4}{'W':>3}{'D':>3}{'L':>3}{'GF':>4}{'GA':>4}{'GD':>5}  Decided by")
        for row in st.rows:
            out.append(f"{row.name:<16}{row.points:>4}{row.wins:>3}{row.draws:>3}{row.losses:>3}"
                       f"{row.goals_for:>4}{row.goals_against:>4}{row.goal_difference:>5}"
                       f"  {row.tiebreak_level_used}")
        out.append("Advancing: " + ", ".join(names[i] for i in st.advancing))
        for a in st.audit:
            note = f" [{a.note}]" if a.note else ""
            out.append(f"  {names[a.upper]} > {names[a.lower]}: {a.level}{note}")
        out.append("")

    return "\n".join(out).rstrip() + "\n"
