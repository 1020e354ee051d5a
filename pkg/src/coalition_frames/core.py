"""Finite frames: state spaces, coalitions, joint actions, game and neighborhood frames.

Encodings used throughout the package:

* a state set is an ``int`` bitmask over the frame's state order;
* a coalition is an ``int`` bitmask over the frame's agent order (``0`` is the
  empty coalition, ``(1 << n) - 1`` the grand coalition);
* a joint action of a coalition ``C`` is a tuple of length ``n`` holding the
  chosen action identifier at every member position and ``None`` elsewhere.
  Grand-coalition joint actions therefore contain no ``None``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, NamedTuple, Sequence, Union

from .bits import bits_of, is_antichain, minimal_sets, render, union_all
from .errors import CoalitionNotSubset, NotAGcgf, OverlappingCoalitions

JointAction = tuple  # tuple[Optional[str], ...] of length n
StateSet = int
Coalition = int


# ---------------------------------------------------------------------------
# joint actions


def domain_of(sigma: JointAction) -> Coalition:
    """The coalition a joint action is defined on."""
    m = 0
    for i, a in enumerate(sigma):
        if a is not None:
            m |= 1 << i
    return m


def restrict(sigma: JointAction, coalition: Coalition) -> JointAction:
    """Restrict ``sigma`` to the sub-coalition ``coalition``."""
    if coalition & ~domain_of(sigma):
        raise CoalitionNotSubset(
            f"coalition {bits_of(coalition)} is not contained in {bits_of(domain_of(sigma))}"
        )
    return tuple(a if (coalition >> i) & 1 else None for i, a in enumerate(sigma))


def join(sigma_c: JointAction, sigma_d: JointAction) -> JointAction:
    """Union of two joint actions of disjoint coalitions."""
    if len(sigma_c) != len(sigma_d):
        raise ValueError("joint actions over different agent sets")
    if domain_of(sigma_c) & domain_of(sigma_d):
        raise OverlappingCoalitions(
            f"coalitions {bits_of(domain_of(sigma_c))} and {bits_of(domain_of(sigma_d))} overlap"
        )
    return tuple(a if a is not None else b for a, b in zip(sigma_c, sigma_d))


def empty_action(n_agents: int) -> JointAction:
    return (None,) * n_agents


# ---------------------------------------------------------------------------
# class flags


class ClassFlags(NamedTuple):
    """Seriality / independence / determinism, one of the eight strings of ES."""

    serial: bool
    independent: bool
    deterministic: bool

    @property
    def label(self) -> str:
        s = ("S" if self.serial else "") + ("I" if self.independent else "") + (
            "D" if self.deterministic else ""
        )
        return s or "ε"

    @classmethod
    def from_label(cls, label: str) -> "ClassFlags":
        label = label.strip().upper()
        if label in ("", "Ε", "EPS", "EPSILON", "E"):
            return cls(False, False, False)
        if set(label) - set("SID") or len(set(label)) != len(label):
            raise ValueError(f"not a class label: {label!r}")
        return cls("S" in label, "I" in label, "D" in label)

    def covers(self, other: "ClassFlags") -> bool:
        """True iff every flag set in ``other`` is also set here."""
        return all(mine or not theirs for mine, theirs in zip(self, other))

    @classmethod
    def all(cls) -> list["ClassFlags"]:
        return [cls(*bits) for bits in itertools.product((False, True), repeat=3)]


# ---------------------------------------------------------------------------
# shared frame plumbing


def _check_names(names: Sequence[str], what: str) -> tuple[str, ...]:
    names = tuple(names)
    if not names:
        raise ValueError(f"{what} must be nonempty")
    if len(set(names)) != len(names):
        raise ValueError(f"{what} names must be distinct")
    for nm in names:
        if not isinstance(nm, str) or not nm or "," in nm:
            raise ValueError(f"invalid {what} name {nm!r}")
    return names


class _Space:
    """Mixin giving name/index conversions to frames with ``states``/``agents``."""

    states: tuple[str, ...]
    agents: tuple[str, ...]

    @property
    def n_states(self) -> int:
        return len(self.states)

    @property
    def n_agents(self) -> int:
        return len(self.agents)

    @property
    def grand(self) -> Coalition:
        return (1 << len(self.agents)) - 1

    @property
    def universe(self) -> StateSet:
        return (1 << len(self.states)) - 1

    def coalitions(self) -> range:
        return range(1 << len(self.agents))

    def state_index(self, state: Union[str, int]) -> int:
        if isinstance(state, int):
            if not 0 <= state < len(self.states):
                raise KeyError(state)
            return state
        return self.states.index(state)

    def state_set(self, names: Iterable[str]) -> StateSet:
        m = 0
        for nm in names:
            m |= 1 << self.states.index(nm)
        return m

    def coalition(self, names: Union[str, Iterable[str]]) -> Coalition:
        if isinstance(names, str):
            names = [nm for nm in names.split(",") if nm]
        m = 0
        for nm in names:
            m |= 1 << self.agents.index(nm)
        return m

    def coalition_name(self, c: Coalition) -> str:
        return ",".join(self.agents[i] for i in bits_of(c))

    def set_names(self, mask: StateSet) -> list[str]:
        return render(mask, self.states)

    def family_names(self, family: Iterable[StateSet]) -> list[list[str]]:
        from .bits import sorted_sets

        return [self.set_names(m) for m in sorted_sets(family)]


# ---------------------------------------------------------------------------
# raw action frames and validation


@dataclass(frozen=True)
class RawActionFrame(_Space):
    """An action frame with explicitly listed availability and outcomes.

    ``av`` maps ``(coalition, state_index)`` to the set of available joint
    actions; ``out`` maps ``(coalition, state_index, joint_action)`` to an
    outcome set.  Unlisted entries are empty.
    """

    states: tuple[str, ...]
    agents: tuple[str, ...]
    actions: frozenset
    av: Mapping = field(default_factory=dict)
    out: Mapping = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "states", _check_names(self.states, "state"))
        object.__setattr__(self, "agents", _check_names(self.agents, "agent"))
        object.__setattr__(self, "actions", frozenset(self.actions))
        n = len(self.agents)
        for (c, s), sigmas in self.av.items():
            for sigma in sigmas:
                self._check_action(sigma, c, n)
        for (c, s, sigma), outcome in self.out.items():
            self._check_action(sigma, c, n)
            if outcome & ~self.universe:
                raise ValueError(f"outcome {outcome} outside the state space")

    def _check_action(self, sigma, c, n):
        if len(sigma) != n or domain_of(sigma) != c:
            raise ValueError(f"joint action {sigma} does not match coalition {bits_of(c)}")
        for a in sigma:
            if a is not None and a not in self.actions:
                raise ValueError(f"unknown action identifier {a!r}")

    def available(self, c: Coalition, s: int) -> frozenset:
        return frozenset(self.av.get((c, s), ()))

    def outcome(self, c: Coalition, s: int, sigma: JointAction) -> StateSet:
        return self.out.get((c, s, sigma), 0)


class GciViolation(NamedTuple):
    coalition: Coalition
    state: int
    action: JointAction
    listed: StateSet
    induced: StateSet


class OdaViolation(NamedTuple):
    coalition: Coalition
    state: int
    listed: frozenset
    induced: frozenset


@dataclass(frozen=True)
class ValidationReport:
    gci: tuple = ()
    oda: tuple = ()

    @property
    def is_empty(self) -> bool:
        return not self.gci and not self.oda

    def __len__(self) -> int:
        return len(self.gci) + len(self.oda)

    def summary(self) -> str:
        return f"{len(self.gci)} GCI violation(s), {len(self.oda)} ODA violation(s)"

    def records(self, frame: _Space) -> list[dict]:
        recs = []
        for v in self.gci:
            recs.append(
                {
                    "condition": "GCI",
                    "coalition": frame.coalition_name(v.coalition),
                    "state": frame.states[v.state],
                    "action": format_action(v.action),
                    "listed": frame.set_names(v.listed),
                    "induced": frame.set_names(v.induced),
                }
            )
        for v in self.oda:
            recs.append(
                {
                    "condition": "ODA",
                    "coalition": frame.coalition_name(v.coalition),
                    "state": frame.states[v.state],
                    "listed": sorted(format_action(a) for a in v.listed),
                    "induced": sorted(format_action(a) for a in v.induced),
                }
            )
        return recs


def format_action(sigma: JointAction) -> str:
    """Comma-joined member actions in agent order (``""`` for the empty action)."""
    return ",".join(a for a in sigma if a is not None)


def validate_gcgf(frame: RawActionFrame) -> ValidationReport:
    """List every GCI and ODA violation of ``frame``."""
    grand = frame.grand
    gci: list[GciViolation] = []
    oda: list[OdaViolation] = []
    for s in range(frame.n_states):
        grand_entries = {
            sigma: o
            for (c, st, sigma), o in frame.out.items()
            if c == grand and st == s and o
        }
        for c in frame.coalitions():
            induced: dict = {}
            for sigma, o in grand_entries.items():
                key = restrict(sigma, c)
                induced[key] = induced.get(key, 0) | o
            listed = {
                sigma: o for (cc, st, sigma), o in frame.out.items() if cc == c and st == s
            }
            # unlisted and unreachable joint actions have both sides empty
            for sigma in sorted(set(induced) | set(listed), key=_action_key):
                lo, io = listed.get(sigma, 0), induced.get(sigma, 0)
                if lo != io:
                    gci.append(GciViolation(c, s, sigma, lo, io))
            listed_av = frame.available(c, s)
            induced_av = frozenset(sigma for sigma, o in listed.items() if o)
            if listed_av != induced_av:
                oda.append(OdaViolation(c, s, listed_av, induced_av))
    return ValidationReport(tuple(gci), tuple(oda))


def _action_key(sigma: JointAction):
    return tuple("" if a is None else a for a in sigma)


# ---------------------------------------------------------------------------
# canonical general concurrent game frames


@dataclass(frozen=True)
class CanonicalGcgf(_Space):
    """A GCGF stored by its grand-coalition outcome function only.

    ``grand_out[s]`` is a sorted tuple of ``(grand_joint_action, outcome)``
    pairs; every stored outcome is nonempty.  Absent joint actions are
    unavailable with outcome ∅.
    """

    states: tuple[str, ...]
    agents: tuple[str, ...]
    grand_out: tuple

    def __post_init__(self):
        object.__setattr__(self, "states", _check_names(self.states, "state"))
        object.__setattr__(self, "agents", _check_names(self.agents, "agent"))
        if len(self.grand_out) != len(self.states):
            raise ValueError("grand_out must have one entry per state")
        n = len(self.agents)
        univ = self.universe
        norm = []
        for entries in self.grand_out:
            items = dict(entries.items() if isinstance(entries, Mapping) else entries)
            for sigma, o in items.items():
                if len(sigma) != n or any(a is None for a in sigma):
                    raise ValueError(f"{sigma} is not a grand-coalition joint action")
                if not o:
                    raise ValueError(f"stored outcome of {sigma} is empty")
                if o & ~univ:
                    raise ValueError(f"outcome of {sigma} lies outside the state space")
            norm.append(tuple(sorted(items.items(), key=lambda kv: kv[0])))
        object.__setattr__(self, "grand_out", tuple(norm))

    @classmethod
    def build(
        cls,
        states: Sequence[str],
        agents: Sequence[str],
        grand_out: Mapping,
    ) -> "CanonicalGcgf":
        """Build from ``{state: {action_tuple: iterable_of_state_names}}``."""
        states = tuple(states)
        per_state = []
        for s in states:
            entries = {}
            for sigma, outcome in dict(grand_out.get(s, {})).items():
                if isinstance(sigma, str):
                    sigma = tuple(sigma.split(","))
                mask = outcome if isinstance(outcome, int) else _mask(states, outcome)
                if mask:
                    entries[tuple(sigma)] = mask
            per_state.append(entries)
        return cls(states, tuple(agents), tuple(per_state))

    @cached_property
    def _tables(self) -> tuple:
        return tuple(dict(entries) for entries in self.grand_out)

    def outcomes_at(self, s: Union[int, str]) -> dict:
        return self._tables[self.state_index(s)]

    @property
    def actions(self) -> frozenset:
        return frozenset(a for entries in self.grand_out for sigma, _ in entries for a in sigma)


def _mask(states: Sequence[str], names: Iterable[str]) -> int:
    m = 0
    for nm in names:
        m |= 1 << states.index(nm)
    return m


def expand(gcgf: CanonicalGcgf, c: Coalition, s: Union[int, str]) -> tuple[frozenset, dict]:
    """Available joint actions of ``c`` at ``s`` and their outcomes.

    Each outcome is the union of the grand outcomes extending the joint action.
    """
    outcomes: dict = {}
    for sigma, o in gcgf.outcomes_at(s).items():
        key = restrict(sigma, c)
        outcomes[key] = outcomes.get(key, 0) | o
    return frozenset(outcomes), outcomes


def derive_canonical(frame: RawActionFrame) -> CanonicalGcgf:
    report = validate_gcgf(frame)
    if not report.is_empty:
        raise NotAGcgf(report)
    grand = frame.grand
    per_state = [dict() for _ in frame.states]
    for (c, s, sigma), o in frame.out.items():
        if c == grand and o:
            per_state[s][sigma] = o
    return CanonicalGcgf(frame.states, frame.agents, tuple(per_state))


def to_raw(gcgf: CanonicalGcgf) -> RawActionFrame:
    """Full raw expansion: every coalition's availability and outcomes."""
    av, out = {}, {}
    for s in range(gcgf.n_states):
        for c in gcgf.coalitions():
            available, outcomes = expand(gcgf, c, s)
            if available:
                av[(c, s)] = available
            for sigma, o in outcomes.items():
                out[(c, s, sigma)] = o
    return RawActionFrame(gcgf.states, gcgf.agents, gcgf.actions or frozenset(), av, out)


# ---------------------------------------------------------------------------
# neighborhood frames


@dataclass(frozen=True)
class UpsetFamily:
    """An upward-closed family of state sets, stored by its antichain of minimals."""

    minimals: frozenset

    def __post_init__(self):
        object.__setattr__(self, "minimals", frozenset(self.minimals))
        if not is_antichain(self.minimals):
            raise ValueError("minimals must form an antichain; use UpsetFamily.of() to reduce")

    @classmethod
    def of(cls, family: Iterable[StateSet]) -> "UpsetFamily":
        """Upset generated by an arbitrary family (reduced to its minimals)."""
        return cls(minimal_sets(family))

    def __contains__(self, x: StateSet) -> bool:
        return any(m & ~x == 0 for m in self.minimals)

    def __bool__(self) -> bool:
        return bool(self.minimals)

    def __iter__(self):
        return iter(self.minimals)

    def __len__(self) -> int:
        return len(self.minimals)

    def members_within(self, bound: StateSet) -> frozenset:
        """Every member of the upset that is a subset of ``bound``."""
        from .bits import submasks

        return frozenset(x for x in submasks(bound) if x in self)


EMPTY_UPSET = UpsetFamily(frozenset())


def _normalize_nbhd(frame, nbhd, convert):
    n_c = 1 << len(frame.agents)
    if len(nbhd) != n_c:
        raise ValueError(f"neighborhood table needs one row per coalition ({n_c})")
    rows = []
    for row in nbhd:
        row = tuple(convert(f) for f in row)
        if len(row) != len(frame.states):
            raise ValueError("neighborhood row needs one family per state")
        for fam in row:
            for m in fam:
                if m & ~frame.universe:
                    raise ValueError("family member outside the state space")
        rows.append(row)
    return tuple(rows)


@dataclass(frozen=True)
class ActualNF(_Space):
    """Actual neighborhood frame; ``nbhd[c][s]`` is a frozenset of state sets."""

    states: tuple[str, ...]
    agents: tuple[str, ...]
    nbhd: tuple

    def __post_init__(self):
        object.__setattr__(self, "states", _check_names(self.states, "state"))
        object.__setattr__(self, "agents", _check_names(self.agents, "agent"))
        object.__setattr__(self, "nbhd", _normalize_nbhd(self, self.nbhd, frozenset))

    def at(self, c: Coalition, s: int) -> frozenset:
        return self.nbhd[c][s]

    def local(self, s: int) -> dict:
        return {c: self.nbhd[c][s] for c in self.coalitions()}

    @classmethod
    def build(cls, states, agents, families: Mapping) -> "ActualNF":
        """Build from ``{coalition_string: {state: [[state names]]}}``; missing entries are ∅."""
        states, agents = tuple(states), tuple(agents)
        proto = cls.__new__(cls)
        object.__setattr__(proto, "states", states)
        object.__setattr__(proto, "agents", agents)
        rows = [[frozenset() for _ in states] for _ in range(1 << len(agents))]
        for cname, per_state in families.items():
            c = proto.coalition(cname)
            for sname, fam in per_state.items():
                rows[c][states.index(sname)] = frozenset(_mask(states, x) for x in fam)
        return cls(states, agents, tuple(tuple(r) for r in rows))


@dataclass(frozen=True)
class AlphaNF(_Space):
    """Alpha neighborhood frame; ``nbhd[c][s]`` is an :class:`UpsetFamily`."""

    states: tuple[str, ...]
    agents: tuple[str, ...]
    nbhd: tuple

    def __post_init__(self):
        object.__setattr__(self, "states", _check_names(self.states, "state"))
        object.__setattr__(self, "agents", _check_names(self.agents, "agent"))
        object.__setattr__(self, "nbhd", _normalize_nbhd(self, self.nbhd, _as_upset))

    def at(self, c: Coalition, s: int) -> UpsetFamily:
        return self.nbhd[c][s]

    def local(self, s: int) -> dict:
        return {c: self.nbhd[c][s] for c in self.coalitions()}

    @classmethod
    def build(cls, states, agents, minimals: Mapping) -> "AlphaNF":
        """Build from ``{coalition_string: {state: [[state names]]}}`` listing minimals."""
        states, agents = tuple(states), tuple(agents)
        proto = cls.__new__(cls)
        object.__setattr__(proto, "states", states)
        object.__setattr__(proto, "agents", agents)
        rows = [[EMPTY_UPSET for _ in states] for _ in range(1 << len(agents))]
        for cname, per_state in minimals.items():
            c = proto.coalition(cname)
            for sname, fam in per_state.items():
                rows[c][states.index(sname)] = UpsetFamily(_mask(states, x) for x in fam)
        return cls(states, agents, tuple(tuple(r) for r in rows))


def _as_upset(f) -> UpsetFamily:
    if isinstance(f, UpsetFamily):
        return f
    return UpsetFamily(frozenset(f))


def successors(gcgf: CanonicalGcgf, s: Union[int, str]) -> StateSet:
    """Union of all grand outcomes at ``s``."""
    return union_all(gcgf.outcomes_at(s).values())

