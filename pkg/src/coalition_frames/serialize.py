"""JSON encoding of frames.

Every document carries ``agents`` and ``states`` plus exactly one payload:

* ``grand_out``: ``{state: {"act1,act2": [states]}}`` (canonical game frame)
* ``actual_nbhd``: ``{coalition: {state: [[states], ...]}}``
* ``alpha_minimals``: ``{coalition: {state: [[states], ...]}}``
* ``actions`` + ``av`` + ``out``: a raw action frame, listed per coalition

Coalitions are comma-joined agent names (``""`` for the empty one); joint
actions are comma-joined action identifiers in agent order.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Union

import jsonschema

from .bits import sorted_sets
from .core import ActualNF, AlphaNF, CanonicalGcgf, RawActionFrame, format_action
from .errors import KindMismatch, ParseError

Frame = Union[CanonicalGcgf, ActualNF, AlphaNF, RawActionFrame]

_names = {"type": "array", "items": {"type": "string", "minLength": 1}, "minItems": 1}
_set = {"type": "array", "items": {"type": "string"}}
_family_table = {
    "type": "object",
    "additionalProperties": {
        "type": "object",
        "additionalProperties": {"type": "array", "items": _set},
    },
}

SCHEMA = {
    "type": "object",
    "required": ["agents", "states"],
    "properties": {
        "agents": _names,
        "states": _names,
        "grand_out": {
            "type": "object",
            "additionalProperties": {"type": "object", "additionalProperties": _set},
        },
        "actual_nbhd": _family_table,
        "alpha_minimals": _family_table,
        "actions": {"type": "array", "items": {"type": "string", "minLength": 1}},
        "av": {
            "type": "object",
            "additionalProperties": {
                "type": "object",
                "additionalProperties": {"type": "array", "items": {"type": "string"}},
            },
        },
        "out": {
            "type": "object",
            "additionalProperties": {
                "type": "object",
                "additionalProperties": {"type": "object", "additionalProperties": _set},
            },
        },
    },
    "oneOf": [
        {"required": ["grand_out"]},
        {"required": ["actual_nbhd"]},
        {"required": ["alpha_minimals"]},
        {"required": ["actions", "av", "out"]},
    ],
    "additionalProperties": False,
}

KINDS = {"grand_out": "gcgf", "actual_nbhd": "actual", "alpha_minimals": "alpha", "out": "raw"}


def kind_of(doc: dict) -> str:
    for key, kind in KINDS.items():
        if key in doc:
            return kind
    raise ParseError("document has no frame payload")


def _state_mask(states: tuple, names: list, where: str) -> int:
    m = 0
    for nm in names:
        if nm not in states:
            raise ParseError(f"{where}: unknown state {nm!r}")
        m |= 1 << states.index(nm)
    return m


def _coalition(agents: tuple, cname: str, where: str) -> int:
    members = [nm for nm in cname.split(",") if nm] if cname else []
    m = 0
    for nm in members:
        if nm not in agents:
            raise ParseError(f"{where}: unknown agent {nm!r}")
        m |= 1 << agents.index(nm)
    if bin(m).count("1") != len(members):
        raise ParseError(f"{where}: repeated agent in coalition {cname!r}")
    return m


def _joint_action(agents: tuple, c: int, text: str, where: str) -> tuple:
    parts = text.split(",") if text else []
    members = [i for i in range(len(agents)) if (c >> i) & 1]
    if len(parts) != len(members) or any(not p for p in parts):
        raise ParseError(f"{where}: joint action {text!r} does not fit the coalition")
    sigma = [None] * len(agents)
    for i, p in zip(members, parts):
        sigma[i] = p
    return tuple(sigma)


def from_document(doc) -> Frame:
    """Decode a parsed JSON document; raises :class:`ParseError` on any defect."""
    try:
        jsonschema.validate(doc, SCHEMA)
    except jsonschema.ValidationError as exc:
        raise ParseError(f"schema violation: {exc.message}") from None
    states, agents = tuple(doc["states"]), tuple(doc["agents"])
    try:
        return _decode(doc, states, agents)
    except ParseError:
        raise
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def _decode(doc, states, agents) -> Frame:
    kind = kind_of(doc)

    def state_idx(nm, where):
        if nm not in states:
            raise ParseError(f"{where}: unknown state {nm!r}")
        return states.index(nm)

    if kind == "gcgf":
        per_state = [dict() for _ in states]
        grand = (1 << len(agents)) - 1
        for sname, entries in doc["grand_out"].items():
            s = state_idx(sname, "grand_out")
            for text, outcome in entries.items():
                sigma = _joint_action(agents, grand, text, f"grand_out[{sname}]")
                mask = _state_mask(states, outcome, f"grand_out[{sname}][{text}]")
                if mask:
                    per_state[s][sigma] = mask
        return CanonicalGcgf(states, agents, tuple(per_state))

    if kind in ("actual", "alpha"):
        key = "actual_nbhd" if kind == "actual" else "alpha_minimals"
        rows = [[frozenset() for _ in states] for _ in range(1 << len(agents))]
        for cname, per_state in doc[key].items():
            c = _coalition(agents, cname, key)
            for sname, fam in per_state.items():
                s = state_idx(sname, f"{key}[{cname}]")
                rows[c][s] = frozenset(_state_mask(states, x, f"{key}[{cname}][{sname}]") for x in fam)
        cls = ActualNF if kind == "actual" else AlphaNF
        # AlphaNF rejects families that are not antichains
        return cls(states, agents, tuple(tuple(r) for r in rows))

    av, out = {}, {}
    for cname, per_state in doc["av"].items():
        c = _coalition(agents, cname, "av")
        for sname, acts in per_state.items():
            s = state_idx(sname, f"av[{cname}]")
            av[(c, s)] = frozenset(_joint_action(agents, c, a, f"av[{cname}][{sname}]") for a in acts)
    for cname, per_state in doc["out"].items():
        c = _coalition(agents, cname, "out")
        for sname, entries in per_state.items():
            s = state_idx(sname, f"out[{cname}]")
            for text, outcome in entries.items():
                sigma = _joint_action(agents, c, text, f"out[{cname}][{sname}]")
                out[(c, s, sigma)] = _state_mask(states, outcome, f"out[{cname}][{sname}][{text}]")
    return RawActionFrame(states, agents, frozenset(doc["actions"]), av, out)


def to_document(frame: Frame) -> dict:
    """Encode a frame with a stable key order (states and sets in space order)."""
    doc: dict = {"agents": list(frame.agents), "states": list(frame.states)}
    if isinstance(frame, CanonicalGcgf):
        doc["grand_out"] = {
            frame.states[s]: {
                format_action(sigma): frame.set_names(o) for sigma, o in frame.grand_out[s]
            }
            for s in range(frame.n_states)
            if frame.grand_out[s]
        }
    elif isinstance(frame, (ActualNF, AlphaNF)):
        key = "actual_nbhd" if isinstance(frame, ActualNF) else "alpha_minimals"
        doc[key] = {
            frame.coalition_name(c): {
                frame.states[s]: [frame.set_names(x) for x in sorted_sets(frame.at(c, s))]
                for s in range(frame.n_states)
            }
            for c in frame.coalitions()
        }
    elif isinstance(frame, RawActionFrame):
        doc["actions"] = sorted(frame.actions)
        doc["av"] = {}
        doc["out"] = {}
        for (c, s), sigmas in sorted(frame.av.items()):
            doc["av"].setdefault(frame.coalition_name(c), {})[frame.states[s]] = sorted(
                format_action(a) for a in sigmas
            )
        for (c, s, sigma), o in sorted(frame.out.items(), key=lambda kv: (kv[0][0], kv[0][1], format_action(kv[0][2]))):
            doc["out"].setdefault(frame.coalition_name(c), {}).setdefault(frame.states[s], {})[
                format_action(sigma)
            ] = frame.set_names(o)
    else:
        raise TypeError(f"cannot encode {type(frame).__name__}")
    return doc


def dumps(frame: Frame) -> str:
    return json.dumps(to_document(frame), indent=2, ensure_ascii=False) + "\n"


def loads(text: str) -> Frame:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    return from_document(doc)


def load(path: Union[str, Path], expect: str = None) -> Frame:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None
    frame = loads(text)
    if expect is not None and frame_kind(frame) != expect:
        raise KindMismatch(f"expected a {expect} frame, found {frame_kind(frame)}")
    return frame


def dump(frame: Frame, path: Union[str, Path]) -> None:
    Path(path).write_text(dumps(frame), encoding="utf-8")


def frame_kind(frame: Frame) -> str:
    if isinstance(frame, CanonicalGcgf):
        return "gcgf"
    if isinstance(frame, ActualNF):
        return "actual"
    if isinstance(frame, AlphaNF):
        return "alpha"
    return "raw"
