"""Finite game frames, their alpha and actual effectivity, and two-agent synthesis."""

from .checkers import (
    ConditionReport,
    check_ac_class,
    check_ac_representative,
    check_alpha_class,
    check_alpha_representative,
    check_derived_facts,
    check_gcgf_class,
    check_stit_independent,
    check_truly_playable,
)
from .core import (
    ActualNF,
    AlphaNF,
    CanonicalGcgf,
    ClassFlags,
    RawActionFrame,
    UpsetFamily,
    ValidationReport,
    derive_canonical,
    expand,
    join,
    restrict,
    to_raw,
    validate_gcgf,
)
from .effectivity import (
    actual_effectivity,
    alpha_effectivity,
    core,
    induce_actual,
    induce_alpha,
    upset_membership,
)
from .errors import *  # noqa: F401,F403
from .extensive import TwoStepGame, basic_powers, check_bbe_conditions, fold, unfold
from .genenum import (
    enumerate_local_actual,
    enumerate_local_alpha,
    gen_random_actual_nf,
    gen_random_alpha_nf,
    gen_random_gcgf,
)
from .synth_actual import LocalGame, NameTag, synthesize_actual, synthesize_local_actual
from .synth_alpha import restrict_to_core, synthesize_alpha

__version__ = "0.1.0"
