"""Exhaustive round-trip drivers over all local quadruples on n successors.

Actual runs work on the local game directly: effectivity at a state only
depends on that state's grand table, so the local families of the game are
exactly what the assembled frame induces there.  Alpha runs are small enough
to go through whole frames (see :func:`wrap_local_alpha`).
"""

from __future__ import annotations

import hashlib
import os
from collections import Counter
from dataclasses import dataclass, field
from multiprocessing import Pool
from typing import Optional

from .checkers import (
    check_alpha_class,
    check_derived_facts,
    check_gcgf_class,
    check_truly_playable,
    all_hold,
    local_actual_facts,
    local_ac_class,
    local_alpha_class,
    local_alpha_representative,
    local_truly_playable,
)
from .core import ClassFlags
from .effectivity import induce_alpha
from .genenum import (
    actual_candidate_count,
    all_antichains,
    enumerate_local_actual,
    enumerate_local_alpha,
    wrap_local_alpha,
)
from .synth_actual import synthesize_local_actual
from .synth_alpha import synthesize_alpha

THREADS_ENV = "COALITION_FRAMES_THREADS"


@dataclass
class ExhaustSummary:
    power: str
    n: int
    candidates: int = 0
    representative: int = 0
    passed: int = 0
    facts_ok: int = 0
    by_flags: Counter = field(default_factory=Counter)
    failures: list = field(default_factory=list)
    digest: str = ""
    # alpha only: candidates where truly-playable and (representative and SID) disagree
    playable: int = 0
    discrepancies: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return (
            self.passed == self.representative
            and self.facts_ok == self.representative
            and not self.discrepancies
        )

    def record(self) -> dict:
        rec = {
            "power": self.power,
            "n": self.n,
            "candidates": self.candidates,
            "representative": self.representative,
            "passed": self.passed,
            "facts_ok": self.facts_ok,
            "flags": {ClassFlags(*k).label: v for k, v in sorted(self.by_flags.items())},
            "digest": self.digest,
        }
        if self.power == "alpha":
            rec["truly_playable"] = self.playable
            rec["discrepancies"] = len(self.discrepancies)
        rec["ok"] = self.ok
        return rec


def worker_count() -> int:
    raw = os.environ.get(THREADS_ENV)
    try:
        cap = int(raw) if raw else 1
    except ValueError:
        cap = 1
    return max(1, min(cap, os.cpu_count() or 1))


def _actual_one(quad):
    fams = dict(enumerate(quad))
    flags = ClassFlags(*(not w for w in local_ac_class(fams, 3)))
    game = synthesize_local_actual(*quad)
    ok = (
        game.families() == quad
        and not game.local_violations()
        and game.class_flags().covers(flags)
    )
    facts = not any(local_actual_facts(fams))
    blob = repr(tuple(game.grand.items())).encode()
    return tuple(flags), ok, facts, blob


def _chunks(it, size):
    buf = []
    for x in it:
        buf.append(x)
        if len(buf) == size:
            yield buf
            buf = []
    if buf:
        yield buf


def _run_actual_chunk(chunk):
    return [_actual_one(q) for q in chunk]


def exhaust_actual(n: int, workers: Optional[int] = None) -> ExhaustSummary:
    summary = ExhaustSummary("actual", n, candidates=actual_candidate_count(n))
    h = hashlib.sha256()
    workers = workers or worker_count()
    quads = list(enumerate_local_actual(n))
    chunks = list(_chunks(quads, 512))
    if workers > 1:
        with Pool(workers) as pool:
            results = pool.imap(_run_actual_chunk, chunks)
            _collect(summary, quads, (r for batch in results for r in batch), h)
    else:
        _collect(summary, quads, (r for batch in map(_run_actual_chunk, chunks) for r in batch), h)
    summary.digest = h.hexdigest()
    return summary


def _collect(summary, quads, results, h):
    for quad, (flags, ok, facts, blob) in zip(quads, results):
        summary.representative += 1
        summary.by_flags[flags] += 1
        summary.passed += ok
        summary.facts_ok += facts
        if not ok and len(summary.failures) < 20:
            summary.failures.append(quad)
        h.update(blob)
        h.update(b"\n")


def exhaust_alpha(n: int) -> ExhaustSummary:
    """Round trips over every α-representative quadruple, plus the playability
    equivalence over every candidate quadruple."""
    chains = all_antichains(n)
    summary = ExhaustSummary("alpha", n, candidates=len(chains) ** 4)
    universe = (1 << n) - 1
    sid = ClassFlags(True, True, True)
    for fe in chains:
        for fa in chains:
            for fb in chains:
                for fg in chains:
                    fams = {0: fe, 1: fa, 2: fb, 3: fg}
                    rep = not any(local_alpha_representative(fams, first_only=True))
                    cls = ClassFlags(*(not w for w in local_alpha_class(fams, 3)))
                    playable = not any(local_truly_playable(fams, 3, universe))
                    summary.playable += playable
                    if playable != (rep and cls == sid):
                        summary.discrepancies.append((fe, fa, fb, fg))
    h = hashlib.sha256()
    for quad in enumerate_local_alpha(n):
        nf = wrap_local_alpha(quad, n)
        flags = check_alpha_class(nf)
        g = synthesize_alpha(nf)
        ok = induce_alpha(g) == nf and check_gcgf_class(g).covers(flags)
        if flags == sid:
            ok = ok and all_hold(check_truly_playable(nf))
        facts = all_hold(check_derived_facts(nf))
        summary.representative += 1
        summary.by_flags[tuple(flags)] += 1
        summary.passed += ok
        summary.facts_ok += facts
        if not ok and len(summary.failures) < 20:
            summary.failures.append(quad)
        h.update(repr(g.grand_out[0]).encode())
        h.update(b"\n")
    summary.digest = h.hexdigest()
    return summary


def exhaust(power: str, n: int, workers: Optional[int] = None) -> ExhaustSummary:
    if power == "actual":
        return exhaust_actual(n, workers)
    if power == "alpha":
        return exhaust_alpha(n)
    raise ValueError(f"unknown power {power!r}")
