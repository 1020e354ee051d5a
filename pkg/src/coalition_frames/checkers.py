"""Decision procedures for every frame property, with violation witnesses.

Each condition is decided per state by a ``local_*`` function operating on a
mapping ``{coalition_mask: family}`` for a single state; the frame-level
checkers loop over states and tag witnesses with the state index.  The local
functions are also what the exhaustive enumerators use.

Witnesses are plain tuples: ``(state, coalition(s)..., set(s)...)`` with
coalitions and sets as bitmasks.  :func:`render_report` turns them into
name-based records for output.

Universally quantified conditions hold vacuously over empty ranges.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Union

from .bits import is_singleton, is_subset, union_all
from .core import (
    ActualNF,
    AlphaNF,
    CanonicalGcgf,
    ClassFlags,
    Coalition,
    UpsetFamily,
    expand,
    join,
)
from .errors import PreconditionNotChecked


@dataclass(frozen=True)
class ConditionReport:
    name: str
    witnesses: tuple = field(default=())

    @property
    def holds(self) -> bool:
        return not self.witnesses

    def __bool__(self) -> bool:
        return self.holds


def all_hold(reports: Iterable[ConditionReport]) -> bool:
    return all(r.holds for r in reports)


def _subcoalition_pairs(coalitions: Iterable[Coalition]):
    cs = list(coalitions)
    for c in cs:
        for d in cs:
            if c & ~d == 0:
                yield c, d


def _disjoint_pairs(coalitions: Iterable[Coalition]):
    cs = list(coalitions)
    for c in cs:
        for d in cs:
            if c & d == 0:
                yield c, d


# ---------------------------------------------------------------------------
# general concurrent game frames


def check_gcgf_class(gcgf: CanonicalGcgf) -> ClassFlags:
    return ClassFlags(*(not w for w in gcgf_class_witnesses(gcgf)))


def gcgf_class_witnesses(gcgf: CanonicalGcgf) -> tuple[list, list, list]:
    serial, indep, det = [], [], []
    for s in range(gcgf.n_states):
        table = gcgf.outcomes_at(s)
        if not table:
            serial.extend((s, c) for c in gcgf.coalitions())
            continue
        # grand availability is always contained in the product of the
        # individual ones; equality is equivalent to independence
        product = 1
        for i in range(gcgf.n_agents):
            product *= len({sigma[i] for sigma in table})
        if product != len(table):
            avail = {c: expand(gcgf, c, s)[0] for c in gcgf.coalitions()}
            for c, d in _disjoint_pairs(avail):
                for sc in sorted(avail[c], key=_akey):
                    for sd in sorted(avail[d], key=_akey):
                        if join(sc, sd) not in avail[c | d]:
                            indep.append((s, c, d, sc, sd))
        for sigma, o in gcgf.outcomes_at(s).items():
            if not is_singleton(o):
                det.append((s, sigma, o))
    return serial, indep, det


def _akey(sigma):
    return tuple("" if a is None else a for a in sigma)


# ---------------------------------------------------------------------------
# actual neighborhood frames: local conditions

ACTUAL_CONDITIONS = (
    "actual_triviality_of_empty_coalition",
    "liveness",
    "actual_power_inclusion",
    "actual_power_decomposition",
)


def local_ac_representative(fams: Mapping[Coalition, frozenset], first_only: bool = False) -> list[list]:
    """Witness lists for the four AC-representativeness conditions at one state.

    ``fams`` may be a partial table (any subset of coalitions); conditions are
    checked over the coalitions present, which lets enumerators prune early.
    """
    out: list[list] = [[], [], [], []]
    empty = fams.get(0)
    if empty is not None and len(empty) > 1:
        out[0].append((0, len(empty)))
        if first_only:
            return out
    for c, fam in fams.items():
        if 0 in fam:
            out[1].append((c,))
            if first_only:
                return out
    for c, d in _subcoalition_pairs(fams):
        fc, fd = fams[c], fams[d]
        for x in fd:
            if not any(x & ~y == 0 for y in fc):
                out[2].append((c, d, x))
                if first_only:
                    return out
        for x in fc:
            if union_all(z for z in fd if z & ~x == 0) != x:
                out[3].append((c, d, x))
                if first_only:
                    return out
    return out


def is_local_ac_representative(fams: Mapping[Coalition, frozenset]) -> bool:
    return not any(local_ac_representative(fams, first_only=True))


def local_ac_class(fams: Mapping[Coalition, frozenset], grand: Coalition) -> tuple[list, list, list]:
    serial = [(c,) for c, fam in fams.items() if not fam]
    indep = []
    for c, d in _disjoint_pairs(fams):
        fcd = fams[c | d]
        for x in fams[c]:
            for y in fams[d]:
                xy = x & y
                if not any(z & ~xy == 0 for z in fcd):
                    indep.append((c, d, x, y))
    det = [(grand, x) for x in fams[grand] if not is_singleton(x)]
    return serial, indep, det


def local_stit_independent(fams: Mapping[Coalition, frozenset]) -> list:
    w = []
    for c, d in _disjoint_pairs(fams):
        for x in fams[c]:
            for y in fams[d]:
                if not x & y:
                    w.append((c, d, x, y))
    return w


# ---------------------------------------------------------------------------
# alpha neighborhood frames: local conditions

ALPHA_CONDITIONS = (
    "alpha_triviality_of_empty_coalition",
    "liveness",
    "groundedness_of_alpha_powers",
    "monotonicity_of_alpha_neighborhoods",
)


def local_alpha_representative(
    fams: Mapping[Coalition, UpsetFamily], first_only: bool = False
) -> list[list]:
    """Witness lists for the four α-representativeness conditions at one state.

    Decided on antichains.  Groundedness reduces to "every minimal lies inside
    the successor set ⋃CoreN_∅": a witness Y ⊆ X can always be shrunk to a
    minimal, and a minimal X only has itself below it.
    """
    out: list[list] = [[], [], [], []]
    empty = fams.get(0)
    if empty is not None and len(empty.minimals) > 1:
        out[0].append((0, len(empty.minimals)))
        if first_only:
            return out
    for c, fam in fams.items():
        if 0 in fam.minimals:
            out[1].append((c,))
            if first_only:
                return out
    if empty is not None:
        succ = union_all(empty.minimals)
        for c, fam in fams.items():
            for x in fam.minimals:
                if x & ~succ:
                    out[2].append((c, x))
                    if first_only:
                        return out
    for c, d in _subcoalition_pairs(fams):
        fd = fams[d]
        for x in fams[c].minimals:
            if x not in fd:
                out[3].append((c, d, x))
                if first_only:
                    return out
    return out


def is_local_alpha_representative(fams: Mapping[Coalition, UpsetFamily]) -> bool:
    return not any(local_alpha_representative(fams, first_only=True))


def local_alpha_class(
    fams: Mapping[Coalition, UpsetFamily], grand: Coalition
) -> tuple[list, list, list]:
    """α-serial / α-independent / α-deterministic witnesses at one state.

    Independence is decided on pairs of minimals: if mX ∩ mY is in the upset
    of C∪D then so is X ∩ Y for every X ⊇ mX, Y ⊇ mY.
    Determinism is vacuous when the empty coalition's neighborhood is empty.
    """
    serial = [(c,) for c, fam in fams.items() if not fam.minimals]
    indep = []
    for c, d in _disjoint_pairs(fams):
        fcd = fams[c | d]
        for x in fams[c].minimals:
            for y in fams[d].minimals:
                if (x & y) not in fcd:
                    indep.append((c, d, x, y))
    det = []
    empty = fams[0]
    if empty.minimals:
        core_ag = fams[grand].minimals
        for x in core_ag:
            if not is_singleton(x):
                det.append(("core_not_singleton", grand, x))
        t = union_all(empty.minimals)
        missing = t & ~union_all(core_ag)
        if missing:
            det.append(("successor_not_covered", grand, missing))
    return serial, indep, det


TRULY_PLAYABLE_CONDITIONS = ("liveness", "safety", "superadditivity", "ag_maximality", "crown")


def local_truly_playable(
    fams: Mapping[Coalition, UpsetFamily], grand: Coalition, universe: int
) -> list[list]:
    """Witness lists for the five truly-playable conditions at one state.

    AG-maximality is checked over every subset of ``universe``.  Crown is
    decided on minimals: every minimal of the grand coalition must contain
    some x with {x} in the grand upset.
    """
    out: list[list] = [[], [], [], [], []]
    for c, fam in fams.items():
        if 0 in fam.minimals:
            out[0].append((c,))
        if universe not in fam:
            out[1].append((c,))
    for c, d in _disjoint_pairs(fams):
        fcd = fams[c | d]
        for x in fams[c].minimals:
            for y in fams[d].minimals:
                if (x & y) not in fcd:
                    out[2].append((c, d, x, y))
    empty, top = fams[0], fams[grand]
    for x in range(universe + 1):
        if (universe & ~x) not in empty and x not in top:
            out[3].append((x,))
    for m in top.minimals:
        if not any((m >> i) & 1 and (1 << i) in top for i in range(m.bit_length())):
            out[4].append((m,))
    return out


# ---------------------------------------------------------------------------
# frame-level checkers


def _per_state(frame, local: Callable[[dict], list], names: tuple) -> list[ConditionReport]:
    collected = [[] for _ in names]
    for s in range(frame.n_states):
        for i, ws in enumerate(local(frame.local(s))):
            collected[i].extend((s,) + tuple(w) for w in ws)
    return [ConditionReport(nm, tuple(ws)) for nm, ws in zip(names, collected)]


def check_ac_representative(nf: ActualNF) -> list[ConditionReport]:
    return _per_state(nf, local_ac_representative, ACTUAL_CONDITIONS)


def check_ac_class(nf: ActualNF) -> ClassFlags:
    reports = _per_state(
        nf, lambda f: local_ac_class(f, nf.grand), ("serial", "independent", "deterministic")
    )
    return ClassFlags(*(r.holds for r in reports))


def ac_class_reports(nf: ActualNF) -> list[ConditionReport]:
    return _per_state(
        nf,
        lambda f: local_ac_class(f, nf.grand),
        ("ac_serial", "ac_independent", "ac_deterministic"),
    )


def check_stit_independent(nf: ActualNF) -> ConditionReport:
    return _per_state(nf, lambda f: [local_stit_independent(f)], ("stit_independent",))[0]


def check_alpha_representative(nf: AlphaNF) -> list[ConditionReport]:
    return _per_state(nf, local_alpha_representative, ALPHA_CONDITIONS)


def alpha_class_reports(nf: AlphaNF) -> list[ConditionReport]:
    return _per_state(
        nf,
        lambda f: local_alpha_class(f, nf.grand),
        ("alpha_serial", "alpha_independent", "alpha_deterministic"),
    )


def check_alpha_class(nf: AlphaNF) -> ClassFlags:
    return ClassFlags(*(r.holds for r in alpha_class_reports(nf)))


def check_truly_playable(nf: AlphaNF) -> list[ConditionReport]:
    return _per_state(
        nf, lambda f: local_truly_playable(f, nf.grand, nf.universe), TRULY_PLAYABLE_CONDITIONS
    )


# ---------------------------------------------------------------------------
# consequences of representativeness


def local_actual_facts(fams: Mapping[Coalition, frozenset]) -> list[list]:
    same_succ, empty_iff, empty_is_union, refine = [], [], [], []
    f0 = fams[0]
    grand = max(fams)
    u0 = union_all(f0)
    for c, fam in fams.items():
        if union_all(fam) != u0:
            same_succ.append((c, union_all(fam), u0))
        if (not fam) != (not f0):
            empty_iff.append((c,))
    if f0 and f0 != frozenset([union_all(fams[grand])]):
        empty_is_union.append((grand,))
    for c, d in _subcoalition_pairs(fams):
        for x in fams[c]:
            if union_all(z for z in fams[d] if is_subset(z, x)) != x:
                refine.append((c, d, x))
    return [same_succ, empty_iff, empty_is_union, refine]


ACTUAL_FACTS = (
    "same_successors",
    "empty_iff_empty_coalition_empty",
    "empty_coalition_power_is_grand_union",
    "union_of_refinements",
)


def local_alpha_facts(fams: Mapping[Coalition, UpsetFamily], deterministic: bool) -> list[list]:
    empty_iff, inclusion, core_within, det_equal = [], [], [], []
    grand = max(fams)
    f0 = fams[0]
    succ = union_all(f0.minimals)
    for c, fam in fams.items():
        if (not fam.minimals) != (not f0.minimals):
            empty_iff.append((c,))
        if not is_subset(union_all(fam.minimals), succ):
            core_within.append((c, union_all(fam.minimals), succ))
    # every member of the D-upset lies below the full space, which belongs to
    # the C-upset exactly when that upset is nonempty
    for c, d in _subcoalition_pairs(fams):
        if fams[d].minimals and not fams[c].minimals:
            inclusion.append((c, d))
    if deterministic and union_all(fams[grand].minimals) != succ:
        det_equal.append((grand,))
    return [empty_iff, inclusion, core_within, det_equal]


ALPHA_FACTS = (
    "empty_iff_empty_coalition_empty",
    "alpha_power_inclusion",
    "core_union_within_successors",
    "deterministic_core_union_equals_successors",
)


def check_derived_facts(nf: Union[ActualNF, AlphaNF]) -> list[ConditionReport]:
    """Evaluate the consequences of representativeness literally.

    Raises :class:`PreconditionNotChecked` when ``nf`` is not representative,
    since the facts carry no guarantee there.
    """
    if isinstance(nf, ActualNF):
        if not all_hold(check_ac_representative(nf)):
            raise PreconditionNotChecked("frame is not AC-representative")
        return _per_state(nf, local_actual_facts, ACTUAL_FACTS)
    if not all_hold(check_alpha_representative(nf)):
        raise PreconditionNotChecked("frame is not α-representative")
    det = check_alpha_class(nf).deterministic
    return _per_state(nf, lambda f: local_alpha_facts(f, det), ALPHA_FACTS)


def core_union(nf: AlphaNF, c: Coalition, s: int) -> int:
    return union_all(nf.at(c, s).minimals)


# ---------------------------------------------------------------------------
# rendering


def render_witness(frame, condition: str, w: tuple) -> dict:
    """Name-based rendering of a frame-level witness tuple."""
    rec: dict = {"state": frame.states[w[0]]}
    rest = list(w[1:])
    if rest and isinstance(rest[0], str):
        rec["clause"] = rest.pop(0)
    coalitions, sets = [], []
    # witness layouts: coalitions first, then sets (ints), then counts
    n_coal = _COALITION_ARITY.get(condition, 0)
    coalitions, sets = rest[:n_coal], rest[n_coal:]
    if coalitions:
        rec["coalitions"] = [frame.coalition_name(c) for c in coalitions]
    if sets:
        rec["sets"] = [
            frame.set_names(x) if isinstance(x, int) else _render_action(x) for x in sets
        ]
    return rec


def _render_action(sigma):
    if isinstance(sigma, tuple):
        return ",".join(a for a in sigma if a is not None)
    return sigma


_COALITION_ARITY = {
    "actual_triviality_of_empty_coalition": 1,
    "alpha_triviality_of_empty_coalition": 1,
    "liveness": 1,
    "actual_power_inclusion": 2,
    "actual_power_decomposition": 2,
    "groundedness_of_alpha_powers": 1,
    "monotonicity_of_alpha_neighborhoods": 2,
    "ac_serial": 1,
    "ac_independent": 2,
    "ac_deterministic": 1,
    "alpha_serial": 1,
    "alpha_independent": 2,
    "alpha_deterministic": 1,
    "stit_independent": 2,
    "safety": 1,
    "superadditivity": 2,
    "ag_maximality": 0,
    "crown": 0,
    "same_successors": 1,
    "empty_iff_empty_coalition_empty": 1,
    "empty_coalition_power_is_grand_union": 1,
    "union_of_refinements": 2,
    "alpha_power_inclusion": 2,
    "core_union_within_successors": 1,
    "deterministic_core_union_equals_successors": 1,
}


def render_report(frame, report: ConditionReport) -> dict:
    return {
        "condition": report.name,
        "holds": report.holds,
        "witnesses": [render_witness(frame, report.name, w) for w in report.witnesses],
    }

