"""Two-agent synthesis of game frames from AC-representative actual neighborhood frames.

Each state is handled by a local construction with three groups of names per
individual power; the local games are then merged into one canonical frame
whose action alphabets are kept apart by a state prefix.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, NamedTuple, Optional, Sequence

from .bits import is_singleton, is_subset, sorted_sets, union_all
from .checkers import ACTUAL_CONDITIONS, ConditionReport, local_ac_representative
from .core import ActualNF, CanonicalGcgf, ClassFlags
from .errors import NotRepresentative, NotTwoAgents

GROUPS = (1, 2, 3)

# (side named first, its group, partner group), in the order the pairings are made
_STEP2_ORDER = (("a", 1, 2), ("b", 1, 2), ("a", 2, 3), ("b", 2, 3), ("a", 3, 1), ("b", 3, 1))


class NameTag(NamedTuple):
    group: int
    power: int
    witness: int


@dataclass(frozen=True)
class LocalGame:
    """Per-state slice of a two-agent frame.

    ``grand`` maps ``(a_action, b_action)`` to a nonempty state set; absent
    pairs are unavailable.  ``tags`` records the name each action was built
    from (empty for games not produced by synthesis).
    """

    state: str
    a_actions: tuple
    b_actions: tuple
    out_a: Mapping
    out_b: Mapping
    grand: Mapping
    tags: Mapping = field(default_factory=dict, compare=False)

    def is_empty(self) -> bool:
        return not self.grand

    def families(self) -> tuple[frozenset, frozenset, frozenset, frozenset]:
        """(∅, a, b, grand) actual-power families induced by the grand table alone."""
        ua: dict = {}
        ub: dict = {}
        for (a, b), z in self.grand.items():
            ua[a] = ua.get(a, 0) | z
            ub[b] = ub.get(b, 0) | z
        grand = frozenset(self.grand.values())
        succ = union_all(grand)
        return (
            frozenset([succ]) if succ else frozenset(),
            frozenset(ua.values()),
            frozenset(ub.values()),
            grand,
        )

    def class_flags(self) -> ClassFlags:
        """Flags of the frame made of this component alone (other states aside)."""
        acts_a = {a for a, _ in self.grand}
        acts_b = {b for _, b in self.grand}
        independent = len(self.grand) == len(acts_a) * len(acts_b)
        return ClassFlags(bool(self.grand), independent, self.is_deterministic())

    def local_violations(self) -> list[tuple]:
        """GCI/ODA breaches of the component: the listed individual outcomes
        must equal the unions over listed grand pairs, and be nonempty."""
        ua = {a: 0 for a in self.a_actions}
        ub = {b: 0 for b in self.b_actions}
        bad = []
        for (a, b), z in self.grand.items():
            if not z:
                bad.append(("empty_grand", a, b))
            if a not in ua or b not in ub:
                bad.append(("unknown_action", a, b))
                continue
            ua[a] |= z
            ub[b] |= z
        for a in self.a_actions:
            if not self.out_a.get(a) or ua[a] != self.out_a[a]:
                bad.append(("gci_a", a, self.out_a.get(a, 0), ua[a]))
        for b in self.b_actions:
            if not self.out_b.get(b) or ub[b] != self.out_b[b]:
                bad.append(("gci_b", b, self.out_b.get(b, 0), ub[b]))
        return bad

    def is_serial(self) -> bool:
        return bool(self.grand)

    def is_independent(self) -> bool:
        return all((a, b) in self.grand for a in self.a_actions for b in self.b_actions)

    def is_deterministic(self) -> bool:
        return all(is_singleton(z) for z in self.grand.values())


def empty_local_game(state: str = "s") -> LocalGame:
    return LocalGame(state, (), (), {}, {}, {})


def _render(mask: int, names: Optional[Sequence[str]]) -> str:
    idx = [i for i in range(mask.bit_length()) if (mask >> i) & 1]
    return "{" + ";".join(names[i] if names else str(i) for i in idx) + "}"


def local_reports(f_empty, f_a, f_b, f_grand) -> list[ConditionReport]:
    fams = {0: frozenset(f_empty), 1: frozenset(f_a), 2: frozenset(f_b), 3: frozenset(f_grand)}
    return [
        ConditionReport(nm, tuple(ws))
        for nm, ws in zip(ACTUAL_CONDITIONS, local_ac_representative(fams))
    ]


def synthesize_local_actual(
    f_empty: Iterable[int],
    f_a: Iterable[int],
    f_b: Iterable[int],
    f_grand: Iterable[int],
    state: str = "s",
    state_names: Optional[Sequence[str]] = None,
) -> LocalGame:
    """Build a local game realising the four actual-power families at one state.

    Raises :class:`NotRepresentative` if the families violate a local
    representativeness condition.
    """
    f_empty, f_a, f_b, f_grand = (frozenset(f) for f in (f_empty, f_a, f_b, f_grand))
    reports = local_reports(f_empty, f_a, f_b, f_grand)
    if not all(r.holds for r in reports):
        raise NotRepresentative(reports)
    if not f_empty:
        return empty_local_game(state)

    grand_sorted = sorted_sets(f_grand)
    powers = {"a": sorted_sets(f_a), "b": sorted_sets(f_b)}
    delta = {
        side: {x: [z for z in grand_sorted if is_subset(z, x)] for x in fam}
        for side, fam in powers.items()
    }

    # step 1: three groups of names per (power, witness)
    ids: dict[tuple, str] = {}
    tags: dict[str, NameTag] = {}
    label = {m: _render(m, state_names) for m in f_a | f_b | f_grand}
    for side in ("a", "b"):
        for g in GROUPS:
            for x in powers[side]:
                for z in delta[side][x]:
                    ident = f"{state}/{side}/{g}-{label[x]}-{label[z]}"
                    ids[(side, g, x, z)] = ident
                    tags[ident] = NameTag(g, x, z)

    grand: dict[tuple, int] = {}

    def declare(a_id: str, b_id: str, z: int) -> None:
        key = (a_id, b_id)
        if key in grand:
            raise AssertionError(f"pair {key} declared twice")
        grand[key] = z

    # the partner power for a grand witness z2 is the first power of the other side containing it
    cover = {
        side: {z2: next((y for y in powers[side] if is_subset(z2, y)), None) for z2 in grand_sorted}
        for side in ("a", "b")
    }

    # step 2: every name of the named side gets partners covering its Δ
    for side, g, g2 in _STEP2_ORDER:
        other = "b" if side == "a" else "a"
        for x in powers[side]:
            for z in delta[side][x]:
                own = ids[(side, g, x, z)]
                for z2 in delta[side][x]:
                    partner = ids[(other, g2, cover[other][z2], z2)]
                    if side == "a":
                        declare(own, partner, z2)
                    else:
                        declare(partner, own, z2)

    # step 3: pair whatever is still unpaired and shares a grand power
    choice: dict[tuple, Optional[int]] = {}
    a_ids = sorted(i for k, i in ids.items() if k[0] == "a")
    b_ids = sorted(i for k, i in ids.items() if k[0] == "b")
    for a_id in a_ids:
        x = tags[a_id].power
        for b_id in b_ids:
            if (a_id, b_id) in grand:
                continue
            y = tags[b_id].power
            key = (x, y)
            if key not in choice:
                xy = x & y
                cands = [z for z in grand_sorted if is_subset(z, xy)]
                choice[key] = cands[0] if cands else None
            z = choice[key]
            if z is not None:
                grand[(a_id, b_id)] = z

    return LocalGame(
        state,
        tuple(a_ids),
        tuple(b_ids),
        {i: tags[i].power for i in a_ids},
        {i: tags[i].power for i in b_ids},
        dict(sorted(grand.items())),
        tags,
    )


def assemble(states: Sequence[str], agents: Sequence[str], games: Sequence[LocalGame]) -> CanonicalGcgf:
    """Merge per-state local games into one canonical frame."""
    return CanonicalGcgf(tuple(states), tuple(agents), tuple(g.grand for g in games))


def synthesize_actual(nf: ActualNF) -> CanonicalGcgf:
    """A two-agent frame whose actual effectivity is exactly ``nf``."""
    if nf.n_agents != 2:
        raise NotTwoAgents(f"synthesis needs exactly two agents, got {nf.n_agents}")
    from .checkers import check_ac_representative

    reports = check_ac_representative(nf)
    if not all(r.holds for r in reports):
        raise NotRepresentative(reports)
    games = [
        synthesize_local_actual(
            nf.at(0, s), nf.at(1, s), nf.at(2, s), nf.at(3, s), nf.states[s], nf.states
        )
        for s in range(nf.n_states)
    ]
    return assemble(nf.states, nf.agents, games)
