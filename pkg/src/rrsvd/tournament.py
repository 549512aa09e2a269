"""Round-robin tournament model, the ``.rrt`` text format, and the performance matrix."""
from __future__ import annotations

import shlex
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

import numpy as np

from .errors import DegenerateInputError, ParseError, TournamentError
from .linalg import as_matrix


@dataclass(frozen=True)
class Team:
    id: int
    name: str


@dataclass(frozen=True)
class MatchResult:
    home: int
    away: int
    home_goals: int
    away_goals: int

    def goals_for(self, team: int) -> int:
        return self.home_goals if team == self.home else self.away_goals

    def goals_against(self, team: int) -> int:
        return self.away_goals if team == self.home else self.home_goals


@dataclass(frozen=True)
class Tournament:
    """A complete single round robin.

    ``diagonal`` optionally pins the diagonal of the performance matrix to
    given values instead of deriving it from the row/column means; it exists
    so published tables whose diagonal deviates from the rule can be
    reproduced exactly.
    """

    teams: tuple[Team, ...]
    matches: tuple[MatchResult, ...]
    fair_play: tuple[int, ...] | None = None
    coin_seed: int | None = None
    diagonal: tuple[float, ...] | None = None
    _pairs: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "teams", tuple(self.teams))
        object.__setattr__(self, "matches", tuple(self.matches))
        n = len(self.teams)
        if n < 2:
            raise TournamentError("a tournament needs at least two teams")
        if [t.id for t in self.teams] != list(range(n)):
            raise TournamentError("team ids must be 0..n-1 in order")
        names = [t.name for t in self.teams]
        if any(not name for name in names):
            raise TournamentError("team names must be non-empty")
        if len(set(names)) != n:
            raise TournamentError("team names must be unique")
        pairs: dict[tuple[int, int], MatchResult] = {}
        for m in self.matches:
            if not (0 <= m.home < n and 0 <= m.away < n):
                raise TournamentError(f"match references unknown team id: {m}")
            if m.home == m.away:
                raise TournamentError(f"team {names[m.home]!r} cannot play itself")
            if m.home_goals < 0 or m.away_goals < 0:
                raise TournamentError("goal counts must be nonnegative")
            key = (min(m.home, m.away), max(m.home, m.away))
            if key in pairs:
                raise TournamentError(
                    f"duplicate pairing {names[key[0]]} - {names[key[1]]}")
            pairs[key] = m
        if len(pairs) != n * (n - 1) // 2:
            raise TournamentError("incomplete round robin")
        if self.fair_play is not None:
            object.__setattr__(self, "fair_play", tuple(int(x) for x in self.fair_play))
            if len(self.fair_play) != n:
                raise TournamentError("fair_play needs one value per team")
        if self.coin_seed is not None and self.coin_seed < 0:
            raise TournamentError("coin_seed must be unsigned")
        if self.diagonal is not None:
            object.__setattr__(self, "diagonal", tuple(float(x) for x in self.diagonal))
            if len(self.diagonal) != n or not all(np.isfinite(self.diagonal)):
                raise TournamentError("diagonal needs one finite value per team")
        object.__setattr__(self, "_pairs", pairs)

    @property
    def n(self) -> int:
        return len(self.teams)

    @property
    def names(self) -> list[str]:
        return [t.name for t in self.teams]

    def team_id(self, name: str) -> int:
        for t in self.teams:
            if t.name == name:
                return t.id
        raise KeyError(name)

    def match_between(self, i: int, j: int) -> MatchResult:
        return self._pairs[(min(i, j), max(i, j))]

    def goals(self, i: int, j: int) -> int:
        """Goals scored by team ``i`` against team ``j``."""
        return self.match_between(i, j).goals_for(i)

    @classmethod
    def from_results(cls, names: Sequence[str], results: Sequence[tuple[str, int, int, str]],
                     **kwargs) -> "Tournament":
        """Build from ``(home, home_goals, away_goals, away)`` tuples keyed by name."""
        teams = tuple(Team(i, name) for i, name in enumerate(names))
        index = {name: i for i, name in enumerate(names)}
        matches = tuple(MatchResult(index[h], index[a], int(hg), int(ag))
                        for h, hg, ag, a in results)
        return cls(teams, matches, **kwargs)


# --- text format ----------------------------------------------------------


def _split_list(payload: str, lineno: int) -> list[str]:
    lex = shlex.shlex(payload, posix=True)
    lex.whitespace = ","
    lex.whitespace_split = True
    lex.commenters = ""
    try:
        return [item.strip() for item in lex]
    except ValueError as exc:
        raise ParseError(f"malformed list: {exc}", lineno) from None


def _parse_score(token: str, lineno: int) -> tuple[int, int]:
    home, sep, away = token.partition(":")
    if not sep or not home.isdigit() or not away.isdigit():
        raise ParseError(f"malformed score {token!r}", lineno)
    return int(home), int(away)


def _quote(name: str) -> str:
    if any(ch.isspace() for ch in name) or any(ch in name for ch in "\",:#'"):
        return '"' + name.replace("\\", "\\\\").replace('"', '\\"') + '"'
    return name


def parse_tournament(text: str) -> Tournament:
    """Parse the line-oriented tournament format.

    ::

        # comment
        teams: Argentina, Poland, Mexico, "Saudi Arabia"
        fairplay: 3, 5, 7, 14        (optional, lower is better)
        seed: 17                     (optional coin-toss seed)
        diagonal: 7/6, 2/3, 5/6, 4/3 (optional diagonal override)
        Argentina 2:0 Poland
        ...
    """
    names: list[str] | None = None
    fair_play = seed = diagonal = None
    results: list[tuple[int, int, int, int, int]] = []
    seen: dict[tuple[int, int], int] = {}

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if names is None:
            key, sep, payload = line.partition(":")
            if not sep or key.strip().lower() != "teams":
                raise ParseError("first entry must be 'teams: ...'", lineno)
            names = _split_list(payload, lineno)
            if len(names) < 2:
                raise ParseError("need at least two teams", lineno)
            if any(not nm for nm in names):
                raise ParseError("empty team name", lineno)
            if len(set(names)) != len(names):
                raise ParseError("duplicate team name", lineno)
            continue

        head = line.split(":", 1)[0].strip().lower()
        if head in ("fairplay", "seed", "diagonal") and ":" in line:
            payload = line.split(":", 1)[1]
            if head == "fairplay":
                if fair_play is not None:
                    raise ParseError("fairplay given twice", lineno)
                items = _split_list(payload, lineno)
                try:
                    fair_play = tuple(int(x) for x in items)
                except ValueError:
                    raise ParseError("fairplay values must be integers", lineno) from None
                if len(fair_play) != len(names):
                    raise ParseError("fairplay needs one value per team", lineno)
            elif head == "seed":
                if seed is not None:
                    raise ParseError("seed given twice", lineno)
                token = payload.strip()
                if not token.isdigit():
                    raise ParseError("seed must be an unsigned integer", lineno)
                seed = int(token)
            else:
                if diagonal is not None:
                    raise ParseError("diagonal given twice", lineno)
                items = _split_list(payload, lineno)
                try:
                    diagonal = tuple(float(Fraction(x)) for x in items)
                except (ValueError, ZeroDivisionError):
                    raise ParseError("diagonal values must be numbers or fractions", lineno) from None
                if len(diagonal) != len(names):
                    raise ParseError("diagonal needs one value per team", lineno)
            continue

        try:
            tokens = shlex.split(line, comments=False, posix=True)
        except ValueError as exc:
            raise ParseError(f"malformed match line: {exc}", lineno) from None
        if len(tokens) != 3:
            raise ParseError("match line must be '<home> <h>:<a> <away>'", lineno)
        home_name, score, away_name = tokens
        hg, ag = _parse_score(score, lineno)
        for nm in (home_name, away_name):
            if nm not in names:
                raise ParseError(f"unknown team {nm!r}", lineno)
        home, away = names.index(home_name), names.index(away_name)
        if home == away:
            raise ParseError(f"team {home_name!r} cannot play itself", lineno)
        key = (min(home, away), max(home, away))
        if key in seen:
            raise ParseError(
                f"duplicate pairing {home_name} - {away_name} (first on line {seen[key]})", lineno)
        seen[key] = lineno
        results.append((home, away, hg, ag, lineno))

    if names is None:
        raise ParseError("no 'teams:' line found")
    n = len(names)
    if len(seen) != n * (n - 1) // 2:
        missing = [f"{names[i]} - {names[j]}" for i, j in combinations(range(n), 2)
                   if (i, j) not in seen]
        raise ParseError("incomplete round robin; missing " + ", ".join(missing))

    return Tournament(
        teams=tuple(Team(i, nm) for i, nm in enumerate(names)),
        matches=tuple(MatchResult(h, a, hg, ag) for h, a, hg, ag, _ in results),
        fair_play=fair_play,
        coin_seed=seed,
        diagonal=diagonal,
    )


def serialize_tournament(t: Tournament) -> str:
    names = t.names
    lines = ["teams: " + ", ".join(_quote(nm) for nm in names)]
    if t.fair_play is not None:
        lines.append("fairplay: " + ", ".join(str(x) for x in t.fair_play))
    if t.coin_seed is not None:
        lines.append(f"seed: {t.coin_seed}")
    if t.diagonal is not None:
        lines.append("diagonal: " + ", ".join(repr(x) for x in t.diagonal))
    for m in t.matches:
        lines.append(f"{_quote(names[m.home])} {m.home_goals}:{m.away_goals} {_quote(names[m.away])}")
    return "\n".join(lines) + "\n"


def load_tournament(path) -> Tournament:
    with open(path, encoding="utf-8") as fh:
        return parse_tournament(fh.read())


# --- statistics and the performance matrix ---------------------------------


def goals_scored_vector(t: Tournament) -> np.ndarray:
    out = np.zeros(t.n, dtype=np.int64)
    for m in t.matches:
        out[m.home] += m.home_goals
        out[m.away] += m.away_goals
    return out


def goals_allowed_vector(t: Tournament) -> np.ndarray:
    out = np.zeros(t.n, dtype=np.int64)
    for m in t.matches:
        out[m.home] += m.away_goals
        out[m.away] += m.home_goals
    return out


def normalized(v) -> np.ndarray:
    """``v / ||v||_2``."""
    v = np.asarray(v, dtype=np.float64)
    nrm = float(np.linalg.norm(v))
    if nrm == 0.0:
        raise DegenerateInputError("cannot normalize the zero vector")
    return v / nrm


@dataclass(frozen=True, eq=False)
class PerformanceMatrix:
    """Goals matrix A: A[i, j] is what team i scored against team j."""

    matrix: np.ndarray
    teams: tuple[Team, ...]
    diagonal_source: str = "rule"

    @property
    def names(self) -> list[str]:
        return [t.name for t in self.teams]


def rule_diagonal(t: Tournament) -> np.ndarray:
    """Mean of the 2(n-1) off-diagonal entries in row i and column i."""
    scored = goals_scored_vector(t)
    allowed = goals_allowed_vector(t)
    return (scored + allowed) / (2.0 * (t.n - 1))


def build_performance_matrix(t: Tournament, *, use_override: bool = True) -> PerformanceMatrix:
    """Offense/defense matrix of ``t``.

    The diagonal comes from ``t.diagonal`` when present and ``use_override`` is
    true; otherwise it is the mean of row i and column i off the diagonal.
    """
    a = np.zeros((t.n, t.n))
    for m in t.matches:
        a[m.home, m.away] = m.home_goals
        a[m.away, m.home] = m.away_goals
    if use_override and t.diagonal is not None:
        np.fill_diagonal(a, t.diagonal)
        source = "override"
    else:
        np.fill_diagonal(a, rule_diagonal(t))
        source = "rule"
    return PerformanceMatrix(matrix=as_matrix(a), teams=t.teams, diagonal_source=source)
