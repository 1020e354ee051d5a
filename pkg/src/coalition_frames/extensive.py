"""Two-step turn-based games: a moves, then b moves without seeing a's choice.

Terminal states are bit indices, as elsewhere in the package.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .bits import union_all
from .checkers import ConditionReport
from .errors import NotSID
from .synth_actual import LocalGame


@dataclass(frozen=True)
class TwoStepGame:
    stage1_actions: tuple
    stage2_actions: tuple
    terminal: Mapping  # (stage-1 action, stage-2 action) -> state index

    def __post_init__(self):
        object.__setattr__(self, "stage1_actions", tuple(self.stage1_actions))
        object.__setattr__(self, "stage2_actions", tuple(self.stage2_actions))
        if not self.stage1_actions or not self.stage2_actions:
            raise ValueError("both stages need at least one action")
        missing = [
            (x, y)
            for x in self.stage1_actions
            for y in self.stage2_actions
            if (x, y) not in self.terminal
        ]
        if missing:
            raise ValueError(f"terminal map is not total, missing {missing[0]}")


def unfold(component: LocalGame) -> TwoStepGame:
    """Split a serial, independent, deterministic component into two stages."""
    if not component.a_actions or not component.b_actions:
        raise NotSID("serial", "a player has no available action")
    if not component.is_independent():
        raise NotSID("independent", "some action pair is unavailable")
    if not component.is_deterministic():
        raise NotSID("deterministic", "some grand outcome is not a singleton")
    terminal = {k: v.bit_length() - 1 for k, v in component.grand.items()}
    return TwoStepGame(component.a_actions, component.b_actions, terminal)


def fold(game: TwoStepGame, state: str = "s") -> LocalGame:
    grand = {
        (x, y): 1 << game.terminal[(x, y)]
        for x in game.stage1_actions
        for y in game.stage2_actions
    }
    out_a = {x: union_all(grand[(x, y)] for y in game.stage2_actions) for x in game.stage1_actions}
    out_b = {y: union_all(grand[(x, y)] for x in game.stage1_actions) for y in game.stage2_actions}
    return LocalGame(state, game.stage1_actions, game.stage2_actions, out_a, out_b, grand)


def basic_powers(game: TwoStepGame, agent: str) -> frozenset:
    """Basic powers of ``agent`` ("a" moves first, "b" second).

    b cannot tell the stage-2 nodes apart, so its uniform strategies are its
    single actions; each strategy's reachable terminals form one power.
    """
    if agent == "a":
        return frozenset(
            union_all(1 << game.terminal[(x, y)] for y in game.stage2_actions)
            for x in game.stage1_actions
        )
    if agent == "b":
        return frozenset(
            union_all(1 << game.terminal[(x, y)] for x in game.stage1_actions)
            for y in game.stage2_actions
        )
    raise ValueError(f"unknown agent {agent!r}")


def check_bbe_conditions(xa: Iterable[int], yb: Iterable[int]) -> list[ConditionReport]:
    xa, yb = frozenset(xa), frozenset(yb)
    nonempty = [(side,) for side, f in (("a", xa), ("b", yb)) if not f]
    consistency = [(x, y) for x in sorted(xa) for y in sorted(yb) if not x & y]
    exhaust = [] if union_all(xa) == union_all(yb) else [(union_all(xa), union_all(yb))]
    return [
        ConditionReport("non_emptiness", tuple(nonempty)),
        ConditionReport("consistency", tuple(consistency)),
        ConditionReport("exhaustiveness", tuple(exhaust)),
    ]
