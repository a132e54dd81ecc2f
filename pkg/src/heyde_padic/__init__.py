"""Exact harmonic analysis on ``Δ_p / p^n Δ_p`` and a Heyde-type symmetry checker.

Modules
-------
padic
    Finite-precision p-adic integers, numbers and automorphisms ``p^k c``.
quotient
    Finite quotients, the isomorphism onto ``Z(p^∞)``, pairing, annihilators
    and the multiplier induced by an automorphism.
measures
    Exact distributions, Haar mixtures, convolution and characteristic functions.
engine
    Fourier and conditional-law symmetry checks, structure of solutions,
    finite differences, grid enumeration and Monte Carlo.
constructions
    Case classification of ``α`` and the explicit solution families.
kernels
    Compiled inner loops with a numpy fallback.
"""

from .constructions import (
    CaseLabel,
    classify_case,
    construct_case,
    remark1_distribution,
    verify_construction,
)
from .engine import (
    SymmetryReport,
    conditional_symmetry_check,
    difference_chain_check,
    enumerate_grid_solutions,
    finite_difference,
    fourier_symmetry_check,
    lemma1_crosscheck,
    monte_carlo_symmetry,
    normalize_case,
    subgroup_of_ones,
    support_subgroup,
)
from .kernels import BACKEND
from .measures import (
    CharTable,
    FiniteDistribution,
    SubgroupMixture,
    char_fn,
    char_fn_exact,
    convolve,
    haar_on_subgroup,
    is_degenerate,
    is_idempotent_shift,
    point_mass,
    reflect,
    symmetrize,
)
from .padic import Automorphism, PAdicInt, PAdicNumber, decompose, padd, pinv, pmul, unit_multiplier
from .quotient import Multiplier, QuotientElement, Subgroup, annihilator, induced_endomorphism, pairing, tau

__version__ = "0.1.0"
