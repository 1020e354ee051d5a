import pytest

from coalition_frames import demos
from coalition_frames.bits import is_singleton, is_subset
from coalition_frames.checkers import check_ac_class, check_gcgf_class, local_ac_class
from coalition_frames.core import ActualNF, ClassFlags
from coalition_frames.effectivity import induce_actual
from coalition_frames.errors import NotRepresentative, NotTwoAgents
from coalition_frames.genenum import enumerate_local_actual, wrap_local_actual
from coalition_frames.synth_actual import synthesize_actual, synthesize_local_actual

U, V = 0b01, 0b10
W = U | V


def appendix_c_game():
    return synthesize_local_actual({W}, {W}, {W}, {U, V}, "s", ("u", "v"))


def test_appendix_c_counts_and_families():
    g = appendix_c_game()
    assert len(g.a_actions) == 6 and len(g.b_actions) == 6
    assert len(g.grand) == 36
    assert g.families() == (frozenset({W}), frozenset({W}), frozenset({W}), frozenset({U, V}))
    assert not g.local_violations()


def _name(side, group, witness):
    z = "{u}" if witness == "U" else "{v}"
    return f"s/{side}/{group}-{{u;v}}-{z}"


# a-side sub-steps of the worked example: (a group, a witness, b group, b witness, outcome)
A_SIDE = [
    (1, "U", 2, "U", "U"), (1, "U", 2, "V", "V"), (1, "V", 2, "U", "U"), (1, "V", 2, "V", "V"),
    (2, "U", 3, "U", "U"), (2, "U", 3, "V", "V"), (2, "V", 3, "U", "U"), (2, "V", 3, "V", "V"),
    (3, "U", 1, "U", "U"), (3, "U", 1, "V", "V"), (3, "V", 1, "U", "U"), (3, "V", 1, "V", "V"),
]
# b-side sub-steps pair b group g with a group g+1; the outcome is the a-partner's witness
B_SIDE = [(ga, za, gb, zb, za) for gb, ga in ((1, 2), (2, 3), (3, 1)) for za in "UV" for zb in "UV"]


def _expected(rows):
    masks = {"U": U, "V": V}
    return {(_name("a", ga, za), _name("b", gb, zb)): masks[o] for ga, za, gb, zb, o in rows}


def test_appendix_c_pairing_table():
    g = appendix_c_game()
    expected = _expected(A_SIDE + B_SIDE)
    for grp in (1, 2, 3):
        for za in "UV":
            for zb in "UV":
                expected[(_name("a", grp, za), _name("b", grp, zb))] = U
    assert g.grand == expected


def test_b_side_outcome_by_own_witness_breaks_gci():
    # giving each b-side pair the b-name's own witness leaves b/1-{u;v}-{u} with outcomes only in {u}
    literal = _expected(A_SIDE + [row[:4] + (row[3],) for row in B_SIDE])
    for grp in (1, 2, 3):
        for za in "UV":
            for zb in "UV":
                literal[(_name("a", grp, za), _name("b", grp, zb))] = U
    target = _name("b", 1, "U")
    reached = 0
    for (_, y), z in literal.items():
        if y == target:
            reached |= z
    assert reached == U != appendix_c_game().out_b[target]


def test_trivial_case():
    g = synthesize_local_actual(set(), set(), set(), set())
    assert g.is_empty() and not g.a_actions and not g.b_actions


def test_single_successor():
    g = synthesize_local_actual({U}, {U}, {U}, {U})
    assert len(g.a_actions) == 3 and len(g.b_actions) == 3
    assert set(g.grand.values()) == {U}
    assert len(g.grand) == 9
    assert g.families() == (frozenset({U}),) * 4


def test_local_rejects_non_representative():
    with pytest.raises(NotRepresentative) as exc:
        synthesize_local_actual({W}, {W}, {W}, {U})
    assert "actual_power_decomposition" in str(exc.value)


def test_synthesize_actual_appendix_a():
    nf = demos.appendix_a()
    g = synthesize_actual(nf)
    assert induce_actual(g) == nf
    assert not check_gcgf_class(g).independent


def test_synthesize_actual_heavy_door_round_trip():
    nf = induce_actual(demos.heavy_door())
    g = synthesize_actual(nf)
    assert induce_actual(g) == nf
    assert check_gcgf_class(g).covers(check_ac_class(nf))


def test_synthesize_actual_errors():
    bad = ActualNF.build(("s", "u", "v"), ("a", "b"), {"": {"s": [["u"], ["v"]]}})
    with pytest.raises(NotRepresentative):
        synthesize_actual(bad)
    three = ActualNF.build(("s",), ("a", "b", "c"), {})
    with pytest.raises(NotTwoAgents):
        synthesize_actual(three)


@pytest.mark.parametrize("n", [1, 2])
def test_construction_properties(n):
    for quad in enumerate_local_actual(n):
        fe, fa, fb, fg = quad
        g = synthesize_local_actual(*quad)
        assert g.families() == quad
        assert not g.local_violations()
        for (x, y), z in g.grand.items():
            assert is_subset(z, g.out_a[x] & g.out_b[y])
        if all(is_singleton(z) for z in fg):
            assert g.is_deterministic()
        flags = ClassFlags(*(not w for w in local_ac_class(dict(enumerate(quad)), 3)))
        if flags.independent and fe:
            assert g.is_independent()
        assert g.class_flags().covers(flags)


@pytest.mark.parametrize("n", [1, 2])
def test_whole_frame_round_trip(n):
    for quad in enumerate_local_actual(n):
        nf = wrap_local_actual(quad, n)
        g = synthesize_actual(nf)
        assert induce_actual(g) == nf
        assert check_gcgf_class(g).covers(check_ac_class(nf))
