"""Random generators and exhaustive enumerators of frames.

Enumerators work on a single state with ``n`` successors whose state sets
are bitmasks over ``range(n)``.  Both local condition sets only relate a
coalition to its sub- and super-coalitions, never ``{a}`` to ``{b}``, so the
representative quadruples for fixed (∅, AG) families are the product of the
admissible ``a`` and ``b`` families.  The enumerators exploit that.
"""

from __future__ import annotations

import itertools
import random
from typing import Iterator

from .bits import is_antichain, union_all
from .checkers import local_ac_representative, local_alpha_representative
from .core import ActualNF, AlphaNF, CanonicalGcgf, ClassFlags, UpsetFamily
from .effectivity import induce_alpha
from .errors import GenerationFailed, InvalidParams

AGENTS = ("a", "b")
MAX_RETRIES = 1000


# ---------------------------------------------------------------------------
# random game frames


def gen_random_gcgf(
    n_states: int, n_actions: int, flags: ClassFlags, seed: int, p_action: float = 0.6
) -> CanonicalGcgf:
    """Random two-agent frame repaired to carry at least ``flags``."""
    if n_states < 1 or n_actions < 1:
        raise InvalidParams("n_states and n_actions must be at least 1")
    rng = random.Random(seed)
    states = tuple(f"s{i}" for i in range(n_states))
    actions = [f"x{i}" for i in range(n_actions)]
    univ = (1 << n_states) - 1
    grand_actions = list(itertools.product(actions, repeat=len(AGENTS)))
    per_state = []
    for _ in states:
        entries: dict = {}
        if flags.serial or rng.random() >= 0.2:
            for sigma in grand_actions:
                if rng.random() < p_action:
                    entries[sigma] = rng.randint(1, univ)
        if flags.serial and not entries:
            entries[rng.choice(grand_actions)] = rng.randint(1, univ)
        if flags.independent and entries:
            avail = [sorted({sigma[i] for sigma in entries}) for i in range(len(AGENTS))]
            for sigma in itertools.product(*avail):
                if sigma not in entries:
                    entries[sigma] = 1 << rng.randrange(n_states)
        if flags.deterministic:
            entries = {sigma: o & -o for sigma, o in entries.items()}
        per_state.append(entries)
    return CanonicalGcgf(states, AGENTS, tuple(per_state))


def gen_random_alpha_nf(n_states: int, n_actions: int, flags: ClassFlags, seed: int) -> AlphaNF:
    """Alpha frames are sampled by inducing from random game frames."""
    return induce_alpha(gen_random_gcgf(n_states, n_actions, flags, seed))


# ---------------------------------------------------------------------------
# random actual neighborhood frames


def _random_subfamily_union(rng: random.Random, fam: list[int]) -> int:
    k = rng.randint(1, len(fam))
    return union_all(rng.sample(fam, k))


def _random_state_families(rng, n_states, max_family, flags):
    univ = (1 << n_states) - 1
    pool = [1 << i for i in range(n_states)] if flags.deterministic else list(range(1, univ + 1))
    k = rng.randint(1, min(max_family, len(pool)))
    grand = set(rng.sample(pool, k))
    indiv = []
    for _ in AGENTS:
        glist = sorted(grand)
        fam = {_random_subfamily_union(rng, glist) for _ in range(rng.randint(1, max_family))}
        for z in glist:
            if not any(z & ~x == 0 for x in fam):
                fam.add(z | _random_subfamily_union(rng, glist))
        indiv.append(fam)
    if flags.independent:
        for x in sorted(indiv[0]):
            for y in sorted(indiv[1]):
                xy = x & y
                if any(z & ~xy == 0 for z in grand):
                    continue
                if not xy:
                    return None
                grand.add(xy & -xy)
    empty = {union_all(grand)}
    return empty, indiv[0], indiv[1], grand


def gen_random_actual_nf(
    n_states: int, max_family: int, flags: ClassFlags, seed: int, p_empty: float = 0.15
) -> ActualNF:
    """Random AC-representative two-agent actual frame carrying at least ``flags``.

    Every state uses the whole space as potential successors.
    """
    if n_states < 1 or max_family < 1:
        raise InvalidParams("n_states and max_family must be at least 1")
    rng = random.Random(seed)
    states = tuple(f"s{i}" for i in range(n_states))
    cols = []
    for _ in states:
        if not flags.serial and rng.random() < p_empty:
            cols.append((frozenset(),) * 4)
            continue
        for _attempt in range(MAX_RETRIES):
            fams = _random_state_families(rng, n_states, max_family, flags)
            if fams is None:
                continue
            fams = tuple(frozenset(f) for f in fams)
            if not any(local_ac_representative(dict(enumerate(fams)), first_only=True)):
                break
        else:
            raise GenerationFailed(f"no representative state after {MAX_RETRIES} attempts")
        cols.append(fams)
    rows = tuple(tuple(col[c] for col in cols) for c in range(4))
    return ActualNF(states, AGENTS, rows)


# ---------------------------------------------------------------------------
# exhaustive local enumeration


def _check_n(n: int) -> None:
    if n not in (1, 2, 3):
        raise InvalidParams("n_successors must be 1, 2 or 3")


def all_families(n: int) -> list[frozenset]:
    """Every family of nonempty subsets of an ``n``-set, in a fixed order."""
    sets = list(range(1, 1 << n))
    return [
        frozenset(s for i, s in enumerate(sets) if (bits >> i) & 1)
        for bits in range(1 << len(sets))
    ]


def all_antichains(n: int) -> list[UpsetFamily]:
    """Every antichain of subsets of an ``n``-set (including ∅ and {∅})."""
    sets = list(range(1 << n))
    out = []
    for bits in range(1 << len(sets)):
        fam = [s for i, s in enumerate(sets) if (bits >> i) & 1]
        if is_antichain(fam):
            out.append(UpsetFamily(frozenset(fam)))
    return out


def actual_candidate_count(n: int) -> int:
    f = 1 << ((1 << n) - 1)
    return 2 * f ** 3


def alpha_candidate_count(n: int) -> int:
    return len(all_antichains(n)) ** 4


def enumerate_local_actual(n: int) -> Iterator[tuple[frozenset, frozenset, frozenset, frozenset]]:
    """Every AC-representative (∅, a, b, AG) quadruple over ``n`` successors."""
    _check_n(n)
    fams = all_families(n)
    for fg in fams:
        u = union_all(fg)
        for fe in (frozenset(), frozenset([u])):
            if any(local_ac_representative({0: fe, 3: fg}, first_only=True)):
                continue
            ok = [
                f for f in fams
                if not any(local_ac_representative({0: fe, 1: f, 3: fg}, first_only=True))
            ]
            for fa in ok:
                for fb in ok:
                    yield fe, fa, fb, fg


def enumerate_local_alpha(n: int) -> Iterator[tuple[UpsetFamily, ...]]:
    """Every α-representative (∅, a, b, AG) antichain quadruple over ``n`` successors."""
    _check_n(n)
    chains = all_antichains(n)
    for fe in chains:
        for fg in chains:
            if any(local_alpha_representative({0: fe, 3: fg}, first_only=True)):
                continue
            ok = [
                f for f in chains
                if not any(local_alpha_representative({0: fe, 1: f, 3: fg}, first_only=True))
            ]
            for fa in ok:
                for fb in ok:
                    yield fe, fa, fb, fg


# ---------------------------------------------------------------------------
# embedding a local quadruple into a frame


def wrap_local_actual(quad, n: int) -> ActualNF:
    """Frame with the quadruple at ``s`` over successors t1..tn; each t_i loops to itself."""
    states = ("s",) + tuple(f"t{i + 1}" for i in range(n))
    rows = []
    for c in range(4):
        row = [frozenset(x << 1 for x in quad[c])]
        row += [frozenset([1 << (i + 1)]) for i in range(n)]
        rows.append(tuple(row))
    return ActualNF(states, AGENTS, tuple(rows))


def wrap_local_alpha(quad, n: int) -> AlphaNF:
    states = ("s",) + tuple(f"t{i + 1}" for i in range(n))
    rows = []
    for c in range(4):
        row = [UpsetFamily(frozenset(x << 1 for x in quad[c].minimals))]
        row += [UpsetFamily(frozenset([1 << (i + 1)])) for i in range(n)]
        rows.append(tuple(row))
    return AlphaNF(states, AGENTS, tuple(rows))

