"""The eight FIFA World Cup 2022 group stages, bundled as ``.rrt`` files."""
from __future__ import annotations

from importlib import resources

from .errors import ParameterError
from .tournament import Tournament, parse_tournament

GROUP_LETTERS = tuple("ABCDEFGH")


def group_source(letter: str) -> str:
    key = letter.strip().upper()
    if key not in GROUP_LETTERS:
        raise ParameterError(f"unknown group {letter!r}; expected one of A..H")
    return resources.files("rrsvd").joinpath("data").joinpath(f"group_{key.lower()}.rrt").read_text("utf-8")


def embedded_group(letter: str) -> Tournament:
    """Group ``letter`` with teams in the published order."""
    return parse_tournament(group_source(letter))
