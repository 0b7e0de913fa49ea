"""Chow-motive decompositions of flag varieties G/P and their non-reduced twists G/P~."""

from .errors import InvariantViolation, MotiveError, ParseError, ResourceError, ValidationError
from .motive import (
    TATE,
    Cell,
    FlagBase,
    GradedRanks,
    IsoReport,
    MotiveDecomposition,
    Summand,
    TateBase,
    bb_decomposition,
    bb_decomposition_pseudo,
    bb_twist,
    bb_twist_pseudo,
    bb_twist_pseudo_batch,
    cell_decomposition,
    chow_ranks,
    chow_ranks_pseudo,
    decompose_over_index,
    motive_iso_check,
    n_K_for,
    poincare_polynomial,
    rost_bound,
)
from .parabolic import ParabolicType, PseudoParabolic, reduced_part, tangent_roots, validate_pseudo
from .rootsys import Cocharacter, DynkinType, RootSystem, build_root_system, pairing
from .weyl import (
    CosetSystem,
    WeylElement,
    dominant_conjugate,
    enumerate_weyl,
    min_coset_reps,
    min_double_coset_reps,
    weyl_group,
)

__version__ = "0.1.0"
