"""Alpha and actual effectivity of game frames, and the neighborhood frames they induce."""

from __future__ import annotations

from typing import Iterable

from .bits import minimal_sets
from .core import ActualNF, AlphaNF, CanonicalGcgf, Coalition, StateSet, UpsetFamily, expand


def actual_effectivity(gcgf: CanonicalGcgf, c: Coalition, s) -> frozenset:
    """The actual powers of ``c`` at ``s``: outcome sets of its available joint actions."""
    _, outcomes = expand(gcgf, c, s)
    return frozenset(outcomes.values())


def alpha_effectivity(gcgf: CanonicalGcgf, c: Coalition, s) -> UpsetFamily:
    """The alpha powers of ``c`` at ``s``, as the antichain of minimal actual powers."""
    return UpsetFamily(minimal_sets(actual_effectivity(gcgf, c, s)))


def core(family: Iterable[StateSet]) -> UpsetFamily:
    """Nonmonotonic core: the ⊆-minimal members of an explicit family."""
    return UpsetFamily(minimal_sets(family))


def upset_membership(u: UpsetFamily, x: StateSet) -> bool:
    return x in u


def induce_actual(gcgf: CanonicalGcgf) -> ActualNF:
    rows = tuple(
        tuple(actual_effectivity(gcgf, c, s) for s in range(gcgf.n_states))
        for c in gcgf.coalitions()
    )
    return ActualNF(gcgf.states, gcgf.agents, rows)


def induce_alpha(gcgf: CanonicalGcgf) -> AlphaNF:
    rows = tuple(
        tuple(alpha_effectivity(gcgf, c, s) for s in range(gcgf.n_states))
        for c in gcgf.coalitions()
    )
    return AlphaNF(gcgf.states, gcgf.agents, rows)


def alpha_from_actual(nf: ActualNF) -> AlphaNF:
    """Upward closure of every actual neighborhood (minimals of each family)."""
    rows = tuple(tuple(core(fam) for fam in row) for row in nf.nbhd)
    return AlphaNF(nf.states, nf.agents, rows)
