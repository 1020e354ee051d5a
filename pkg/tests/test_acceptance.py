"""Acceptance suite: one test per criterion, each recording a pass/fail line.

The expensive sweeps (criteria 4-6) are cached at module level so that the
criteria building on them (7, 9, 10) reuse the same runs.
"""

import functools
import io
import itertools
import json
import os
import subprocess
import sys
import time
from pathlib import Path

from coalition_frames import demos
from coalition_frames.bits import union_all
from coalition_frames.checkers import (
    ac_class_reports,
    all_hold,
    check_ac_class,
    check_ac_representative,
    check_alpha_class,
    check_alpha_representative,
    check_derived_facts,
    check_gcgf_class,
    check_stit_independent,
)
from coalition_frames.cli import main as cli_main
from coalition_frames.core import AlphaNF, ClassFlags
from coalition_frames.effectivity import induce_actual, induce_alpha
from coalition_frames.exhaust import exhaust_actual, exhaust_alpha
from coalition_frames.extensive import TwoStepGame, basic_powers, check_bbe_conditions, fold, unfold
from coalition_frames.genenum import enumerate_local_actual, gen_random_gcgf, wrap_local_actual
from coalition_frames.serialize import dump
from coalition_frames.synth_actual import synthesize_actual, synthesize_local_actual

RESULTS: dict = {}
TITLES = {
    1: "door examples",
    2: "worked synthesis example",
    3: "representative but not independent",
    4: "actual enoughness, exhaustive",
    5: "alpha enoughness, exhaustive",
    6: "havingness, randomized",
    7: "truly playable equivalence",
    8: "two-step power invariance",
    9: "derived facts",
    10: "deterministic builds",
}
# whole-frame round trips at three successors use every STRIDE-th quadruple
STRIDE = 97
SRC = str(Path(__file__).resolve().parents[1] / "src")


def summary_lines():
    lines = []
    for k in sorted(RESULTS):
        ok, secs, detail = RESULTS[k]
        lines.append(f"criterion {k:2d} [{'PASS' if ok else 'FAIL'}] {TITLES[k]} ({secs:.1f}s) {detail}")
    return lines


class Criterion:
    def __init__(self, number):
        self.number = number
        self.detail = ""

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        secs = time.perf_counter() - self.start
        RESULTS[self.number] = (exc_type is None, secs, self.detail)
        print(summary_lines()[sorted(RESULTS).index(self.number)])
        return False

    @property
    def elapsed(self):
        return time.perf_counter() - self.start


def cli(*argv):
    buf = io.StringIO()
    code = cli_main(list(argv), stream=buf)
    return code, [json.loads(line) for line in buf.getvalue().splitlines()]


# ---------------------------------------------------------------------------
# cached sweeps


@functools.lru_cache(maxsize=None)
def actual_sweep(n):
    return exhaust_actual(n, workers=1)


@functools.lru_cache(maxsize=None)
def alpha_sweep(n):
    return exhaust_alpha(n)


def whole_frame_actual(n, stride):
    bad = []
    count = 0
    for quad in itertools.islice(enumerate_local_actual(n), 0, None, stride):
        nf = wrap_local_actual(quad, n)
        g = synthesize_actual(nf)
        count += 1
        if induce_actual(g) != nf or not check_gcgf_class(g).covers(check_ac_class(nf)):
            bad.append(quad)
    return count, bad


@functools.lru_cache(maxsize=None)
def havingness_sweep():
    failures = []
    facts_failures = []
    for flags in ClassFlags.all():
        for seed in range(1000):
            g = gen_random_gcgf(1 + seed % 4, 1 + (seed // 4) % 3, flags, seed)
            gf = check_gcgf_class(g)
            act, alp = induce_actual(g), induce_alpha(g)
            ok = (
                gf.covers(flags)
                and all_hold(check_ac_representative(act))
                and all_hold(check_alpha_representative(alp))
                and check_ac_class(act).covers(gf)
                and check_alpha_class(alp).covers(gf)
            )
            if not ok:
                failures.append((flags.label, seed))
                continue
            if not (all_hold(check_derived_facts(act)) and all_hold(check_derived_facts(alp))):
                facts_failures.append((flags.label, seed))
    return failures, facts_failures


# ---------------------------------------------------------------------------


def test_criterion_01_door_examples():
    with Criterion(1) as c:
        expected = {"heavy-door": [["w1"], ["w1", "w2"]], "jammed-door": [["w1"]]}
        for name, powers in expected.items():
            code, recs = cli("demo", name)
            assert code == 0
            checks = {r["item"]: r["computed"] for r in recs if r["record"] == "check"}
            for agent in ("a", "b"):
                assert checks[f"actual powers of {agent} at w1"] == powers
                assert checks[f"alpha minimals of {agent} at w1"] == [["w1"]]
        c.detail = "actual {{w1},{w1,w2}} / {{w1}}, alpha minimals {{w1}} in both"
        assert c.elapsed < 1.0


def test_criterion_02_worked_synthesis():
    with Criterion(2) as c:
        u, v = 0b01, 0b10
        quad = (frozenset({u | v}),) * 3 + (frozenset({u, v}),)
        game = synthesize_local_actual(*quad, "s", ("u", "v"))
        assert (len(game.a_actions), len(game.b_actions), len(game.grand)) == (6, 6, 36)
        assert game.families() == quad
        nf = demos.appendix_c()
        assert induce_actual(synthesize_actual(nf)) == nf
        c.detail = "6 a-actions, 6 b-actions, 36 pairs, families reproduced"
        assert c.elapsed < 1.0


def test_criterion_03_independence_counterexample():
    with Criterion(3) as c:
        nf = demos.appendix_a()
        assert all(r.holds for r in check_ac_representative(nf))
        assert check_stit_independent(nf).holds
        indep = ac_class_reports(nf)[1]
        assert not indep.holds
        x, y = nf.state_set(["t1", "t2"]), nf.state_set(["t2", "t3"])
        assert any(w[3:] == (x, y) for w in indep.witnesses)
        c.detail = "witness X={t1,t2}, Y={t2,t3}"
        assert c.elapsed < 1.0


def test_criterion_04_actual_enoughness():
    with Criterion(4) as c:
        details = []
        for n in (1, 2, 3):
            s = actual_sweep(n)
            assert s.passed == s.representative and not s.failures, s.failures[:3]
            details.append(f"n={n}: {s.passed}/{s.representative}")
        labels = {ClassFlags(*k).label for k in actual_sweep(3).by_flags}
        for target in ClassFlags.all():
            covered = sum(v for k, v in actual_sweep(3).by_flags.items() if ClassFlags(*k).covers(target))
            assert covered > 0
        for n, stride in ((1, 1), (2, 1), (3, STRIDE)):
            count, bad = whole_frame_actual(n, stride)
            assert not bad, bad[:3]
            details.append(f"frames n={n}: {count}")
        c.detail = "; ".join(details) + f"; flags seen {sorted(labels)}"
        assert c.elapsed < 600


def test_criterion_05_alpha_enoughness():
    with Criterion(5) as c:
        details = []
        for n in (1, 2, 3):
            s = alpha_sweep(n)
            assert s.passed == s.representative and not s.failures, s.failures[:3]
            details.append(f"n={n}: {s.passed}/{s.representative} of {s.candidates}")
        assert alpha_sweep(3).candidates == 20**4
        c.detail = "; ".join(details)
        assert c.elapsed < 600


def test_criterion_06_havingness():
    with Criterion(6) as c:
        failures, _ = havingness_sweep()
        assert not failures, failures[:5]
        c.detail = "8 x 1000 frames, all representative with inherited flags"
        assert c.elapsed < 300


def test_criterion_07_truly_playable():
    with Criterion(7) as c:
        for n in (1, 2, 3):
            s = alpha_sweep(n)
            assert not s.discrepancies, s.discrepancies[:3]
            sid = s.by_flags[(True, True, True)]
            assert s.playable == sid
        c.detail = f"n=3: {alpha_sweep(3).playable} playable over 160000 candidates, 0 discrepancies"


def test_criterion_08_power_invariance():
    with Criterion(8) as c:
        games = 0
        for na, nb in itertools.product((1, 2, 3), repeat=2):
            a = [f"x{i}" for i in range(na)]
            b = [f"y{i}" for i in range(nb)]
            cells = list(itertools.product(a, b))
            for terms in itertools.product(range(4), repeat=len(cells)):
                comp = fold(TwoStepGame(a, b, dict(zip(cells, terms))))
                game = unfold(comp)
                _, fa, fb, _ = comp.families()
                pa, pb = basic_powers(game, "a"), basic_powers(game, "b")
                assert pa == fa and pb == fb
                assert all_hold(check_bbe_conditions(pa, pb))
                games += 1
        c.detail = f"{games} terminal tables"
        assert c.elapsed < 120


def test_criterion_09_derived_facts():
    with Criterion(9) as c:
        for n in (1, 2, 3):
            s = actual_sweep(n)
            assert s.facts_ok == s.representative
            s = alpha_sweep(n)
            assert s.facts_ok == s.representative
        _, facts_failures = havingness_sweep()
        assert not facts_failures, facts_failures[:5]
        mins = {"": {"s": [["u", "v"]]}, "a": {"s": [["u", "v"]]}, "b": {"s": [["u"]]}, "a,b": {"s": [["u"]]}}
        for fam in mins.values():
            fam["u"], fam["v"] = [["u"]], [["v"]]
        nf = AlphaNF.build(("s", "u", "v"), ("a", "b"), mins)
        assert all_hold(check_alpha_representative(nf)) and all_hold(check_derived_facts(nf))
        core_b = union_all(nf.at(nf.coalition("b"), 0).minimals)
        core_empty = union_all(nf.at(0, 0).minimals)
        assert core_b & ~core_empty == 0 and core_b != core_empty
        c.detail = "all facts hold; core union of {b} is {u}, strictly inside {u,v}"


_REPEAT = """
import json, sys
from coalition_frames.cli import main
from coalition_frames.exhaust import exhaust_actual, exhaust_alpha
main(["synthesize", sys.argv[1], "--power", "actual", "--out", sys.argv[2]])
ns = [int(x) for x in sys.argv[3].split(",")]
print(json.dumps({
    "actual": [exhaust_actual(n, workers=1).digest for n in ns],
    "alpha": [exhaust_alpha(n).digest for n in ns],
}))
"""


def repeat_in_subprocess(hashseed, tmp_path, ns):
    src = tmp_path / "appendix_c.json"
    dump(demos.appendix_c(), str(src))
    out = tmp_path / f"synth_{hashseed}.json"
    env = dict(os.environ, PYTHONHASHSEED=str(hashseed), PYTHONPATH=SRC)
    proc = subprocess.run(
        [sys.executable, "-c", _REPEAT, str(src), str(out), ",".join(map(str, ns))],
        env=env, capture_output=True, text=True, check=True,
    )
    return out.read_bytes(), json.loads(proc.stdout.strip().splitlines()[-1])


def test_criterion_10_deterministic_builds(tmp_path):
    with Criterion(10) as c:
        bytes_a, digests_a = repeat_in_subprocess(0, tmp_path, [1, 2, 3])
        bytes_b, digests_b = repeat_in_subprocess(12345, tmp_path, [1, 2])
        assert bytes_a == bytes_b
        assert digests_a["actual"][:2] == digests_b["actual"]
        assert digests_a["alpha"][:2] == digests_b["alpha"]
        local_actual = [actual_sweep(n).digest for n in (1, 2, 3)]
        local_alpha = [alpha_sweep(n).digest for n in (1, 2, 3)]
        assert digests_a["actual"] == local_actual
        assert digests_a["alpha"] == local_alpha
        c.detail = "synthesized file and sweep digests identical across hash seeds 0, 12345 and this process"
