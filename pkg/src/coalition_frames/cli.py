"""Command-line interface.

Every command prints line-delimited JSON records.  Exit status: 0 when the
command's verdict holds, 1 on a semantic failure (violation, mismatch,
non-representative input), 2 on unusable input.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Callable, Iterable, Optional

from . import demos
from .checkers import (
    ac_class_reports,
    alpha_class_reports,
    all_hold,
    check_ac_representative,
    check_alpha_representative,
    check_derived_facts,
    check_gcgf_class,
    check_stit_independent,
    check_truly_playable,
    gcgf_class_witnesses,
    render_report,
)
from .core import (
    ActualNF,
    CanonicalGcgf,
    ClassFlags,
    RawActionFrame,
    derive_canonical,
    to_raw,
    validate_gcgf,
)
from .effectivity import actual_effectivity, alpha_effectivity, induce_actual, induce_alpha
from .errors import FrameError, InvalidParams, KindMismatch, NotRepresentative, NotTwoAgents, ParseError
from .exhaust import exhaust
from .genenum import gen_random_actual_nf, gen_random_alpha_nf, gen_random_gcgf
from .serialize import dump, dumps, frame_kind, load, to_document
from .synth_actual import synthesize_actual, synthesize_local_actual
from .synth_alpha import synthesize_alpha

OK, FAIL, BAD_INPUT = 0, 1, 2


class Emitter:
    def __init__(self, stream=None):
        self.stream = stream or sys.stdout

    def __call__(self, record: dict) -> None:
        self.stream.write(json.dumps(record, ensure_ascii=False) + "\n")


def _flags_record(flags: ClassFlags) -> dict:
    return {
        "serial": flags.serial,
        "independent": flags.independent,
        "deterministic": flags.deterministic,
        "label": flags.label,
    }


def _reports(emit, frame, group: str, reports) -> bool:
    for r in reports:
        emit({"record": "condition", "group": group, **render_report(frame, r)})
    return all_hold(reports)


# ---------------------------------------------------------------------------
# validate


def cmd_validate(args, emit) -> int:
    frame = load(args.path)
    kind = frame_kind(frame)
    if kind in ("actual", "alpha"):
        raise KindMismatch(f"validate expects a game frame, found {kind}")
    raw = frame if isinstance(frame, RawActionFrame) else to_raw(frame)
    report = validate_gcgf(raw)
    for rec in report.records(raw):
        emit({"record": "violation", **rec})
    emit({"record": "validation", "kind": kind, "gcgf": report.is_empty, "violations": len(report)})
    return OK if report.is_empty else FAIL


# ---------------------------------------------------------------------------
# check


def cmd_check(args, emit) -> int:
    frame = load(args.path)
    kind = frame_kind(frame)
    if kind == "raw" and args.kind == "gcgf":
        frame, kind = derive_canonical(frame), "gcgf"
    if kind != args.kind:
        raise KindMismatch(f"--kind {args.kind} but the file holds a {kind} frame")
    if isinstance(frame, CanonicalGcgf):
        serial, indep, det = gcgf_class_witnesses(frame)
        flags = ClassFlags(not serial, not indep, not det)
        emit({"record": "class", "kind": "gcgf", **_flags_record(flags)})
        return OK
    if isinstance(frame, ActualNF):
        rep = _reports(emit, frame, "representative", check_ac_representative(frame))
        _reports(emit, frame, "class", ac_class_reports(frame))
        _reports(emit, frame, "stit", [check_stit_independent(frame)])
        if rep:
            _reports(emit, frame, "derived_facts", check_derived_facts(frame))
        flags = ClassFlags(*(r.holds for r in ac_class_reports(frame)))
        stit = check_stit_independent(frame).holds
        emit(
            {
                "record": "summary",
                "kind": "actual",
                "representative": rep,
                "stit_independent": stit,
                "ac_serial": flags.serial,
                "ac_independent": flags.independent,
                "ac_deterministic": flags.deterministic,
                "label": flags.label,
            }
        )
        return OK if rep else FAIL
    rep = _reports(emit, frame, "representative", check_alpha_representative(frame))
    _reports(emit, frame, "class", alpha_class_reports(frame))
    playable = _reports(emit, frame, "truly_playable", check_truly_playable(frame))
    if rep:
        _reports(emit, frame, "derived_facts", check_derived_facts(frame))
    flags = ClassFlags(*(r.holds for r in alpha_class_reports(frame)))
    emit(
        {
            "record": "summary",
            "kind": "alpha",
            "representative": rep,
            "truly_playable": playable,
            "alpha_serial": flags.serial,
            "alpha_independent": flags.independent,
            "alpha_deterministic": flags.deterministic,
            "label": flags.label,
        }
    )
    return OK if rep else FAIL


# ---------------------------------------------------------------------------
# synthesize / roundtrip


def _force(arg: Optional[str]) -> Optional[bool]:
    return None if arg is None else arg == "d"


def _synthesize(args):
    nf = load(args.path, expect=args.power)
    if isinstance(nf, ActualNF):
        if args.force_branch is not None:
            raise InvalidParams("--force-branch only applies to --power alpha")
        return nf, synthesize_actual(nf)
    return nf, synthesize_alpha(nf, _force(args.force_branch))


def _summarize(emit, g: CanonicalGcgf) -> ClassFlags:
    for s in range(g.n_states):
        table = g.outcomes_at(s)
        emit(
            {
                "record": "state",
                "state": g.states[s],
                "a_actions": len({sigma[0] for sigma in table}),
                "b_actions": len({sigma[1] for sigma in table}),
                "grand_pairs": len(table),
            }
        )
    flags = check_gcgf_class(g)
    emit({"record": "class", "kind": "gcgf", **_flags_record(flags)})
    return flags


def _not_representative(emit, nf, exc: NotRepresentative) -> int:
    for r in exc.reports:
        emit({"record": "condition", "group": "representative", **render_report(nf, r)})
    emit({"record": "error", "error": "NotRepresentative", "message": str(exc)})
    return FAIL


def cmd_synthesize(args, emit) -> int:
    try:
        nf, g = _synthesize(args)
    except NotRepresentative as exc:
        return _not_representative(emit, load(args.path), exc)
    _summarize(emit, g)
    if args.out:
        dump(g, args.out)
        emit({"record": "written", "path": args.out})
    return OK


def cmd_roundtrip(args, emit) -> int:
    if args.frame:
        nf = load(args.path, expect=args.power)
        g = load(args.frame, expect="gcgf")
    else:
        try:
            nf, g = _synthesize(args)
        except NotRepresentative as exc:
            return _not_representative(emit, load(args.path), exc)
    back = induce_actual(g) if args.power == "actual" else induce_alpha(g)
    mismatches = []
    if back.states != nf.states or back.agents != nf.agents:
        mismatches.append({"state": None, "coalition": None})
    else:
        for c in nf.coalitions():
            for s in range(nf.n_states):
                if back.at(c, s) != nf.at(c, s):
                    mismatches.append(
                        {
                            "coalition": nf.coalition_name(c),
                            "state": nf.states[s],
                            "expected": nf.family_names(nf.at(c, s)),
                            "induced": back.family_names(back.at(c, s)),
                        }
                    )
    for m in mismatches:
        emit({"record": "mismatch", **m})
    emit({"record": "roundtrip", "power": args.power, "equal": not mismatches})
    return OK if not mismatches else FAIL


# ---------------------------------------------------------------------------
# exhaust / generate


def cmd_exhaust(args, emit) -> int:
    if args.n not in (1, 2, 3):
        raise InvalidParams("--n must be 1, 2 or 3")
    summary = exhaust(args.power, args.n)
    emit({"record": "exhaust", **summary.record()})
    return OK if summary.ok else FAIL


def cmd_generate(args, emit) -> int:
    flags = ClassFlags.from_label(args.flags)
    if args.kind == "gcgf":
        frame = gen_random_gcgf(args.states, args.size, flags, args.seed)
    elif args.kind == "actual":
        frame = gen_random_actual_nf(args.states, args.size, flags, args.seed)
    else:
        frame = gen_random_alpha_nf(args.states, args.size, flags, args.seed)
    if args.out:
        dump(frame, args.out)
        emit({"record": "written", "path": args.out, "kind": args.kind})
    else:
        emit.stream.write(dumps(frame))
    return OK


# ---------------------------------------------------------------------------
# demos


def _fam(frame, fam: Iterable[int]) -> list:
    return frame.family_names(fam)


def _compare(emit, item: str, expected, computed) -> bool:
    match = expected == computed
    emit({"record": "check", "item": item, "expected": expected, "computed": computed, "match": match})
    return match


def _door_checks(emit, g: CanonicalGcgf, expected_actual: list) -> bool:
    ok = True
    w1 = g.state_index("w1")
    for agent in g.agents:
        c = g.coalition(agent)
        ok &= _compare(emit, f"actual powers of {agent} at w1", expected_actual,
                       _fam(g, actual_effectivity(g, c, w1)))
        ok &= _compare(emit, f"alpha minimals of {agent} at w1", [["w1"]],
                       _fam(g, alpha_effectivity(g, c, w1).minimals))
    ok &= _compare(emit, "game frame validates", True, validate_gcgf(to_raw(g)).is_empty)
    return ok


def demo_heavy_door(emit) -> bool:
    g = demos.heavy_door()
    ok = _door_checks(emit, g, [["w1"], ["w1", "w2"]])
    ok &= _compare(emit, "class flags", "SID", check_gcgf_class(g).label)
    return ok


def demo_jammed_door(emit) -> bool:
    g = demos.jammed_door()
    ok = _door_checks(emit, g, [["w1"]])
    h = demos.heavy_door()
    same = all(
        alpha_effectivity(g, c, 0) == alpha_effectivity(h, c, 0) for c in (1, 2)
    )
    ok &= _compare(emit, "alpha minimals equal the heavy door's", True, same)
    return ok


def demo_appendix_a(emit) -> bool:
    nf = demos.appendix_a()
    ok = True
    for r in check_ac_representative(nf):
        ok &= _compare(emit, r.name, True, r.holds)
    ok &= _compare(emit, "stit_independent", True, check_stit_independent(nf).holds)
    indep = ac_class_reports(nf)[1]
    ok &= _compare(emit, "ac_independent", False, indep.holds)
    s = nf.state_index("s")
    x, y = nf.state_set(["t1", "t2"]), nf.state_set(["t2", "t3"])
    ok &= _compare(
        emit, "independence witness (X, Y)", True, any(w[0] == s and w[3:] == (x, y) for w in indep.witnesses)
    )
    g = synthesize_actual(nf)
    ok &= _compare(emit, "synthesized frame re-induces the input", True, induce_actual(g) == nf)
    ok &= _compare(emit, "synthesized frame independent", False, check_gcgf_class(g).independent)
    return ok


def demo_appendix_c(emit) -> bool:
    nf = demos.appendix_c()
    s = nf.state_index("s")
    game = synthesize_local_actual(nf.at(0, s), nf.at(1, s), nf.at(2, s), nf.at(3, s), "s", nf.states)
    ok = _compare(emit, "a actions", 6, len(game.a_actions))
    ok &= _compare(emit, "b actions", 6, len(game.b_actions))
    ok &= _compare(emit, "grand pairs", 36, len(game.grand))
    same_group = [z for (a, b), z in game.grand.items() if game.tags[a].group == game.tags[b].group]
    ok &= _compare(emit, "same-group pair outcomes", [["u"]] * 12, [nf.set_names(z) for z in same_group])
    labels = ("", "a", "b", "a,b")
    for c, fam in enumerate(game.families()):
        ok &= _compare(emit, f"induced family of {{{labels[c]}}} at s", _fam(nf, nf.at(c, s)), _fam(nf, fam))
    g = synthesize_actual(nf)
    ok &= _compare(emit, "whole-frame round trip", True, induce_actual(g) == nf)
    ok &= _compare(emit, "grand powers at s", [["u"], ["v"]], _fam(nf, induce_actual(g).at(3, s)))
    return ok


DEMO_RUNNERS: dict[str, Callable] = {
    "heavy-door": demo_heavy_door,
    "jammed-door": demo_jammed_door,
    "appendix-a": demo_appendix_a,
    "appendix-c": demo_appendix_c,
}

DEMO_FRAMES: dict[str, Callable] = {
    "heavy-door": demos.heavy_door,
    "jammed-door": demos.jammed_door,
    "appendix-a": demos.appendix_a,
    "appendix-c": demos.appendix_c,
}


def cmd_demo(args, emit) -> int:
    emit({"record": "frame", "name": args.name, "frame": to_document(DEMO_FRAMES[args.name]())})
    ok = DEMO_RUNNERS[args.name](emit)
    emit({"record": "demo", "name": args.name, "match": bool(ok)})
    return OK if ok else FAIL


# ---------------------------------------------------------------------------
# entry point


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="coalition-frames", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("validate", help="check GCI and ODA of a game frame file")
    v.add_argument("path")
    v.set_defaults(func=cmd_validate)

    c = sub.add_parser("check", help="run every checker applicable to a frame file")
    c.add_argument("path")
    c.add_argument("--kind", choices=("gcgf", "actual", "alpha"), required=True)
    c.set_defaults(func=cmd_check)

    for name, func, helptext in (
        ("synthesize", cmd_synthesize, "build a two-agent game frame from a neighborhood frame"),
        ("roundtrip", cmd_roundtrip, "synthesize, re-induce and compare with the input"),
    ):
        s = sub.add_parser(name, help=helptext)
        s.add_argument("path")
        s.add_argument("--power", choices=("actual", "alpha"), required=True)
        s.add_argument("--force-branch", choices=("d", "nond"), default=None)
        if name == "synthesize":
            s.add_argument("--out")
        else:
            s.add_argument("--frame", help="compare against this game frame instead of synthesizing")
        s.set_defaults(func=func)

    e = sub.add_parser("exhaust", help="round-trip every representative local quadruple")
    e.add_argument("--power", choices=("actual", "alpha"), required=True)
    e.add_argument("--n", type=int, required=True)
    e.set_defaults(func=cmd_exhaust)

    g = sub.add_parser("generate", help="write a random frame")
    g.add_argument("--kind", choices=("gcgf", "actual", "alpha"), required=True)
    g.add_argument("--states", type=int, default=3)
    g.add_argument("--size", type=int, default=2, help="actions (gcgf, alpha) or max family size (actual)")
    g.add_argument("--flags", default="", help="class label such as SID, SI or empty")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out")
    g.set_defaults(func=cmd_generate)

    d = sub.add_parser("demo", help="reproduce a worked example")
    d.add_argument("name", choices=demos.DEMOS)
    d.set_defaults(func=cmd_demo)
    return p


def main(argv: Optional[list] = None, stream=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return BAD_INPUT if exc.code else OK
    emit = Emitter(stream)
    try:
        return args.func(args, emit)
    except (ParseError, KindMismatch, InvalidParams) as exc:
        emit({"record": "error", "error": type(exc).__name__, "message": str(exc)})
        return BAD_INPUT
    except (NotRepresentative, NotTwoAgents, FrameError) as exc:
        emit({"record": "error", "error": type(exc).__name__, "message": str(exc)})
        return FAIL


if __name__ == "__main__":
    sys.exit(main())
