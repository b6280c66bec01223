"""Exact multiplicity computations for multi-graded extended Rees algebras of monomial ideals."""

from reesmult.hilbert import StabilizationConfig, mixed, multiplicity, sample_length
from reesmult.lattice import (
    MonomialIdeal,
    Ring,
    colength,
    ideal_from_gens,
    make_ring,
    maximal_ideal,
    mu,
    numerical_semigroup,
    polynomial_local,
    power,
    product,
)
from reesmult.rees import (
    LaurentElement,
    ReesInstance,
    check_reduction_equation_bounded,
    e_N_direct,
    e_N_formula,
    minimal_multiplicity_verdict,
    mu_N,
    mu_N_direct,
    rees_dim,
    reduction_number_dim1,
)
from reesmult.theorems import ExploreConfig, explore_random

__version__ = "0.1.0"

__all__ = [
    "ExploreConfig", "LaurentElement", "MonomialIdeal", "ReesInstance", "Ring", "StabilizationConfig",
    "check_reduction_equation_bounded", "colength", "e_N_direct", "e_N_formula", "explore_random",
    "ideal_from_gens", "make_ring", "maximal_ideal", "minimal_multiplicity_verdict", "mixed", "mu",
    "mu_N", "mu_N_direct", "multiplicity", "numerical_semigroup", "polynomial_local", "power", "product",
    "rees_dim", "reduction_number_dim1", "sample_length",
]
