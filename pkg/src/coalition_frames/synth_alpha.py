"""Two-agent synthesis from α-representative alpha neighborhood frames.

Every state is reduced to an actual-power quadruple living below the
successor set T and handed to the local actual construction.
"""

from __future__ import annotations

from typing import Optional

from .checkers import check_alpha_class, check_alpha_representative, local_alpha_class
from .core import AlphaNF, CanonicalGcgf
from .errors import EmptyAtState, NotDeterministic, NotRepresentative, NotTwoAgents
from .synth_actual import assemble, empty_local_game, synthesize_local_actual


def restrict_to_core(
    nf: AlphaNF, s, deterministic_branch: bool
) -> tuple[frozenset, frozenset, frozenset, frozenset]:
    """Actual families (∅, a, b, AG) at ``s``: upset members contained in T.

    With ``deterministic_branch`` the grand family is the core of the grand
    neighborhood instead.
    """
    s = nf.state_index(s)
    empty = nf.at(0, s)
    if not empty.minimals:
        raise EmptyAtState(f"the empty coalition has no powers at {nf.states[s]}")
    if len(empty.minimals) != 1:
        raise NotRepresentative(check_alpha_representative(nf))
    (t,) = empty.minimals
    if deterministic_branch:
        det = local_alpha_class(nf.local(s), nf.grand)[2]
        if det:
            raise NotDeterministic(f"grand core at {nf.states[s]} is not deterministic")
    fams = [nf.at(c, s).members_within(t) for c in range(4)]
    if deterministic_branch:
        fams[3] = frozenset(nf.at(3, s).minimals)
    return tuple(fams)


def synthesize_alpha(nf: AlphaNF, force_branch: Optional[bool] = None) -> CanonicalGcgf:
    """A two-agent frame whose alpha effectivity is exactly ``nf``.

    The deterministic branch is used whenever ``nf`` is α-deterministic;
    ``force_branch`` overrides that choice.
    """
    if nf.n_agents != 2:
        raise NotTwoAgents(f"synthesis needs exactly two agents, got {nf.n_agents}")
    reports = check_alpha_representative(nf)
    if not all(r.holds for r in reports):
        raise NotRepresentative(reports)
    branch = check_alpha_class(nf).deterministic if force_branch is None else force_branch
    games = []
    for s in range(nf.n_states):
        if not nf.at(0, s).minimals:
            games.append(empty_local_game(nf.states[s]))
            continue
        fams = restrict_to_core(nf, s, branch)
        games.append(synthesize_local_actual(*fams, nf.states[s], nf.states))
    return assemble(nf.states, nf.agents, games)
