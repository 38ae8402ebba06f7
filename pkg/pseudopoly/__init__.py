#!/usr/bin/env python3
"""
pseudopoly - Pseudo-polynomial functions over finite distributive lattices

Licensed under the Apache License, Version 2.0

A function f: X1 × ... × Xn → Y, given as a finite table with values in a
finite distributive lattice Y, is pseudo-polynomial when it factorizes as
f(x) = p(φ1(x1), ..., φn(xn)) with p a lattice polynomial function and every
φk bounded by its values at two designated elements of Xk.

Key Features:
- Lattices represented as ∪/∩-closed families of subsets of a universe U
- Lattice polynomial functions and Sugeno integrals in canonical DNF
- Exact pseudo-polynomiality test with a witness on failure
- Enumeration of every factorization (φ, p) with per-factorization verification
- Closed-form specialization for chains
- Brute-force oracle and seeded engine/oracle comparison
"""

__version__ = "1.0.0"
__author__ = "Stream-Ware Team"
__license__ = "Apache 2.0"

# Import main classes for easy access
from .errors import PseudoPolyError
from .lattice import Lattice, LatticeElement, Poset, Universe
from .polynomial import PolynomialFn, monotone_families
from .table import Domain, FunctionTable
from .factorization import (
    Factorization,
    PhiBounds,
    PhiVector,
    Verdict,
    check_boundary,
    check_phi_admissible,
    check_pseudo_median_decomposable,
    count_factorizations,
    enumerate_factorizations,
    infer_bounds,
    interpolation_bounds,
    is_pseudo_polynomial,
    median_solve_check,
    p0,
    phi_bounds,
    resolve_bounds,
    verify_factorization,
)
from .chains import chain_characterization, chain_phi_bounds, free_phi_bounds, suff_conditions, wlu_sets
from .oracle import InstanceLimits, brute_force_factorizations, random_instance
from .compare import compare_instance, run_comparison
from .formats import load_factorization, load_instance, load_lattice

__all__ = [
    # Core types
    "Universe",
    "LatticeElement",
    "Lattice",
    "Poset",
    "PolynomialFn",
    "Domain",
    "FunctionTable",
    "PhiVector",
    "PhiBounds",
    "Factorization",
    "Verdict",
    "PseudoPolyError",

    # Factorization
    "check_boundary",
    "infer_bounds",
    "resolve_bounds",
    "phi_bounds",
    "is_pseudo_polynomial",
    "p0",
    "check_phi_admissible",
    "interpolation_bounds",
    "enumerate_factorizations",
    "count_factorizations",
    "verify_factorization",
    "check_pseudo_median_decomposable",
    "median_solve_check",
    "monotone_families",

    # Chains
    "wlu_sets",
    "chain_phi_bounds",
    "suff_conditions",
    "chain_characterization",
    "free_phi_bounds",

    # Oracle
    "InstanceLimits",
    "brute_force_factorizations",
    "random_instance",
    "compare_instance",
    "run_comparison",

    # Input files
    "load_lattice",
    "load_instance",
    "load_factorization",
]

# Package metadata
__pkg_info__ = {
    "name": "pseudopoly",
    "version": __version__,
    "description": "Pseudo-polynomial functions and Sugeno integrals over finite distributive lattices",
    "author": __author__,
    "license": __license__,
    "keywords": ["lattice", "sugeno-integral", "aggregation", "decision-analysis", "factorization"],
}
