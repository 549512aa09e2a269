"""Official group standings: 3/1/0 points and the tie-break cascade.

Cascade, in order: points, goal difference, goals scored, head-to-head
(points, goal difference, goals scored among the still-tied teams, re-applied
to any sub-tie), fair play (lower is better), seeded coin toss.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

from .tournament import Tournament

LEVELS = ("points", "goal_difference", "goals_for", "head_to_head", "fair_play", "coin_toss")
_DEPTH = {name: i for i, name in enumerate(LEVELS)}

_MASK64 = (1 << 64) - 1


def splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def _fnv1a64(text: str) -> int:
    h = 0xCBF29CE484222325
    for byte in text.encode("utf-8"):
        h = ((h ^ byte) * 0x100000001B3) & _MASK64
    return h


def coin_toss_order(names: Sequence[str], seed: int, round_counter: int) -> list[str]:
    """Deterministic shuffle of ``names`` keyed by seed, the name set and the round."""
    ordered = sorted(names)
    h = splitmix64(seed & _MASK64)
    for nm in ordered:
        h = splitmix64(h ^ _fnv1a64(nm))
    h = splitmix64(h ^ round_counter)
    for i in range(len(ordered) - 1, 0, -1):
        h = splitmix64(h)
        j = h % (i + 1)
        ordered[i], ordered[j] = ordered[j], ordered[i]
    return ordered


@dataclass(frozen=True)
class Record:
    points: int = 0
    wins: int = 0
    draws: int = 0
    losses: int = 0
    goals_for: int = 0
    goals_against: int = 0

    @property
    def goal_difference(self) -> int:
        return self.goals_for - self.goals_against

    def key(self) -> tuple[int, int, int]:
        return self.points, self.goal_difference, self.goals_for


def records(t: Tournament, teams: Sequence[int] | None = None) -> dict[int, Record]:
    """Per-team records, counting only matches between members of ``teams``."""
    members = set(range(t.n) if teams is None else teams)
    acc = {i: [0, 0, 0, 0, 0, 0] for i in members}
    for m in t.matches:
        if m.home not in members or m.away not in members:
            continue
        for me, gf, ga in ((m.home, m.home_goals, m.away_goals), (m.away, m.away_goals, m.home_goals)):
            row = acc[me]
            row[4] += gf
            row[5] += ga
            if gf > ga:
                row[0] += 3
                row[1] += 1
            elif gf == ga:
                row[0] += 1
                row[2] += 1
            else:
                row[3] += 1
    return {i: Record(*row) for i, row in acc.items()}


@dataclass(frozen=True)
class StandingsRow:
    team: int
    name: str
    points: int
    wins: int
    draws: int
    losses: int
    goals_for: int
    goals_against: int
    goal_difference: int
    tiebreak_level_used: str


@dataclass(frozen=True)
class PairAudit:
    upper: int
    lower: int
    level: str
    note: str = ""


@dataclass(frozen=True)
class StandingsTable:
    rows: tuple[StandingsRow, ...]
    advancing: tuple[int, ...]
    audit: tuple[PairAudit, ...]

    @property
    def order(self) -> tuple[int, ...]:
        return tuple(r.team for r in self.rows)


class _Cascade:
    def __init__(self, t: Tournament, seed: int):
        self.t = t
        self.seed = seed
        self.overall = records(t)
        self.coin_rounds = 0

    # Each resolver returns (ordered teams, [(level, note)] between neighbours).

    def _split(self, group, key: Callable[[int], tuple], level_for: Callable[[int], str],
               fallback):
        ranked = sorted(group, key=lambda i: (tuple(-x for x in key(i)), i))
        blocks: list[list[int]] = []
        for team in ranked:
            if blocks and key(blocks[-1][0]) == key(team):
                blocks[-1].append(team)
            else:
                blocks.append([team])
        order: list[int] = []
        links: list[tuple[str, str]] = []
        for b, block in enumerate(blocks):
            if b:
                ka, kb = key(blocks[b - 1][0]), key(block[0])
                first = next(i for i, (x, y) in enumerate(zip(ka, kb)) if x != y)
                links.append((level_for(first), ""))
            if len(block) == 1:
                order.append(block[0])
            else:
                sub_order, sub_links = fallback(block)
                order.extend(sub_order)
                links.extend(sub_links)
        return order, links

    def overall_order(self):
        return self._split(range(self.t.n), lambda i: self.overall[i].key(),
                           lambda idx: LEVELS[idx], self.head_to_head)

    def head_to_head(self, block):
        mini = records(self.t, block)
        if len({mini[i].key() for i in block}) == 1:
            return self.fair_play(block)
        return self._split(block, lambda i: mini[i].key(), lambda idx: "head_to_head",
                           self.head_to_head)

    def fair_play(self, block):
        fp = self.t.fair_play
        if fp is None:
            order, links = self.coin_toss(block)
            note = "no fair play data; decided by coin toss"
            return order, [(lvl, note) for lvl, _ in links]
        return self._split(block, lambda i: (-fp[i],), lambda idx: "fair_play", self.coin_toss)

    def coin_toss(self, block):
        self.coin_rounds += 1
        names = [self.t.teams[i].name for i in block]
        drawn = coin_toss_order(names, self.seed, self.coin_rounds)
        order = [self.t.team_id(nm) for nm in drawn]
        note = f"seed={self.seed} round={self.coin_rounds}"
        return order, [("coin_toss", note)] * (len(order) - 1)


def compute_standings(t: Tournament, seed: int | None = None, advance: int = 2) -> StandingsTable:
    """Rank the teams of ``t``. ``seed`` overrides ``t.coin_seed`` (default 0)."""
    if seed is None:
        seed = t.coin_seed if t.coin_seed is not None else 0
    cascade = _Cascade(t, seed)
    order, links = cascade.overall_order()

    audit = tuple(PairAudit(order[k], order[k + 1], lvl, note)
                  for k, (lvl, note) in enumerate(links))
    deepest = {i: "points" for i in order}
    for a in audit:
        for team in (a.upper, a.lower):
            if _DEPTH[a.level] > _DEPTH[deepest[team]]:
                deepest[team] = a.level

    rows = []
    for i in order:
        r = cascade.overall[i]
        rows.append(StandingsRow(
            team=i, name=t.teams[i].name, points=r.points, wins=r.wins, draws=r.draws,
            losses=r.losses, goals_for=r.goals_for, goals_against=r.goals_against,
            goal_difference=r.goal_difference, tiebreak_level_used=deepest[i],
        ))
    return StandingsTable(rows=tuple(rows), advancing=tuple(order[:advance]), audit=audit)
