"""Worked example frames shipped with the package."""

from __future__ import annotations

from .core import ActualNF, CanonicalGcgf

REST, PUSH = "rest", "push"


def heavy_door() -> CanonicalGcgf:
    """The door at w1 opens only if both agents push; once open (w2) it stays open."""
    pairs = [(x, y) for x in (REST, PUSH) for y in (REST, PUSH)]
    w1 = {p: ["w2"] if p == (PUSH, PUSH) else ["w1"] for p in pairs}
    w2 = {p: ["w2"] for p in pairs}
    return CanonicalGcgf.build(("w1", "w2"), ("a", "b"), {"w1": w1, "w2": w2})


def jammed_door() -> CanonicalGcgf:
    """The door at w1 never opens."""
    pairs = [(x, y) for x in (REST, PUSH) for y in (REST, PUSH)]
    return CanonicalGcgf.build(
        ("w1", "w2"),
        ("a", "b"),
        {"w1": {p: ["w1"] for p in pairs}, "w2": {p: ["w2"] for p in pairs}},
    )


def appendix_a() -> ActualNF:
    """Representative and STIT-independent, yet not AC-independent."""
    states = ("s", "t1", "t2", "t3")
    split = [["t1", "t2"], ["t2", "t3"]]
    fams: dict = {
        "": {"s": [["t1", "t2", "t3"]]},
        "a": {"s": split},
        "b": {"s": split},
        "a,b": {"s": split},
    }
    for c in fams.values():
        for t in states[1:]:
            c[t] = [list(states)]
    return ActualNF.build(states, ("a", "b"), fams)


def appendix_c() -> ActualNF:
    """Single-state input with W = {u, v}: every coalition has W, the grand one U and V."""
    states = ("s", "u", "v")
    w = [["u", "v"]]
    fams: dict = {"": {"s": w}, "a": {"s": w}, "b": {"s": w}, "a,b": {"s": [["u"], ["v"]]}}
    for c in fams.values():
        c["u"] = [["u"]]
        c["v"] = [["v"]]
    return ActualNF.build(states, ("a", "b"), fams)


DEMOS = ("heavy-door", "jammed-door", "appendix-a", "appendix-c")
