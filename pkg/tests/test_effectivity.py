import itertools

from hypothesis import given, settings

from coalition_frames import demos
from coalition_frames.bits import minimal_sets
from coalition_frames.core import CanonicalGcgf, UpsetFamily
from coalition_frames.effectivity import (
    actual_effectivity,
    alpha_effectivity,
    core,
    induce_actual,
    induce_alpha,
    upset_membership,
)
from coalition_frames.synth_actual import synthesize_actual
from test_core import gcgfs


def names(frame, fam):
    return frame.family_names(fam)


def test_heavy_door_powers():
    g = demos.heavy_door()
    for agent in ("a", "b"):
        c = g.coalition(agent)
        assert names(g, actual_effectivity(g, c, 0)) == [["w1"], ["w1", "w2"]]
        assert names(g, alpha_effectivity(g, c, 0).minimals) == [["w1"]]


def test_jammed_door_powers():
    g = demos.jammed_door()
    for agent in ("a", "b"):
        c = g.coalition(agent)
        assert names(g, actual_effectivity(g, c, 0)) == [["w1"]]
        assert names(g, alpha_effectivity(g, c, 0).minimals) == [["w1"]]


def test_no_entries_gives_empty_families():
    g = CanonicalGcgf.build(("s",), ("a", "b"), {})
    for c in range(4):
        assert actual_effectivity(g, c, 0) == frozenset()
        assert not alpha_effectivity(g, c, 0)
    assert all(not fam for row in induce_alpha(g).nbhd for fam in row)


def test_induce_actual_heavy_door():
    nf = induce_actual(demos.heavy_door())
    assert names(nf, nf.at(1, 0)) == [["w1"], ["w1", "w2"]]
    assert names(nf, nf.at(3, 0)) == [["w1"], ["w2"]]
    assert names(nf, nf.at(0, 0)) == [["w1", "w2"]]


def test_induce_actual_jammed_door():
    nf = induce_actual(demos.jammed_door())
    for c in (1, 2, 3):
        assert names(nf, nf.at(c, 0)) == [["w1"]]


def test_appendix_c_game_induces_input():
    nf = demos.appendix_c()
    g = synthesize_actual(nf)
    back = induce_actual(g)
    s = 0
    assert names(back, back.at(0, s)) == [["u", "v"]]
    assert names(back, back.at(1, s)) == [["u", "v"]]
    assert names(back, back.at(2, s)) == [["u", "v"]]
    assert names(back, back.at(3, s)) == [["u"], ["v"]]
    assert names(back, induce_alpha(g).at(3, s).minimals) == [["u"], ["v"]]


def test_core_examples():
    u, v = 0b01, 0b10
    assert core({u, u | v}).minimals == {u}
    assert core(set()).minimals == frozenset()
    assert core({u, v, u | v}).minimals == {u, v}


def test_upset_membership_examples():
    assert upset_membership(UpsetFamily({0b01}), 0b11)
    assert not upset_membership(UpsetFamily(set()), 0b11)
    assert upset_membership(UpsetFamily({0}), 0)


def _all_local_tables():
    """Every two-agent table over actions {x, y} with outcomes in a 2-state space."""
    pairs = list(itertools.product(("x", "y"), repeat=2))
    for outcomes in itertools.product(range(4), repeat=4):
        yield {p: o for p, o in zip(pairs, outcomes) if o}


def test_alpha_is_core_of_actual_exhaustive():
    for table in _all_local_tables():
        g = CanonicalGcgf(("s", "t"), ("a", "b"), (table, {}))
        for c in range(4):
            act = actual_effectivity(g, c, 0)
            alp = alpha_effectivity(g, c, 0)
            assert 0 not in act
            assert alp.minimals == minimal_sets(act)
            assert all(upset_membership(alp, x) for x in act)


@settings(max_examples=150, deadline=None)
@given(gcgfs())
def test_alpha_is_core_of_actual(g):
    for s in range(g.n_states):
        for c in g.coalitions():
            act = actual_effectivity(g, c, s)
            alp = alpha_effectivity(g, c, s)
            assert 0 not in act
            assert alp == core(act)
            assert core(alp.members_within(g.universe)) == alp
