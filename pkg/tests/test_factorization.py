#!/usr/bin/env python3
"""
pseudopoly Factorization Engine Tests
=====================================
Golden values on the airline table, plus preconditions, caps and witnesses.
"""

import random
from itertools import product

import pytest

from pseudopoly.errors import (
    AmbiguousBounds,
    ArityMismatch,
    BC1Violated,
    BoundaryViolated,
    CapExceeded,
    NotPseudoPolynomial,
    PhiNotAdmissible,
    PreconditionViolated,
)
from pseudopoly.factorization import (
    BoundaryWitness,
    IntervalWitness,
    MedianWitness,
    PhiVector,
    TupleWitness,
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
    phi_intervals,
    resolve_bounds,
    verify_factorization,
)
from pseudopoly.lattice import Lattice
from pseudopoly.oracle import bc1_maps, brute_force_factorizations, enumerate_all_polynomials, standard_pool
from pseudopoly.polynomial import PolynomialFn
from pseudopoly.table import Domain, FunctionTable

from conftest import AIRLINE_ROWS, all_tables, monotone_table, sublattices

PHI_MINUS = {"X1": {"A1": "B", "A2": "D", "A3": "G", "A4": "V"}, "X2": {"E": "B", "F": "V"}}
PHI_PLUS = {"X1": {"A1": "B", "A2": "D", "A3": "G", "A4": "V"}, "X2": {"E": "N", "F": "V"}}
PHI_TOO_HIGH = {"X1": {"A1": "B", "A2": "D", "A3": "G", "A4": "V"}, "X2": {"E": "V", "F": "V"}}


def names(lattice, row):
    return tuple(lattice.name(v) for v in row)


@pytest.fixture
def phi(airline, airline_lattice):
    def build(mapping):
        return PhiVector.from_mapping(airline.domains, airline_lattice, mapping)
    return build


@pytest.fixture
def meet_poly(airline_lattice):
    """y1 ∧ y2"""
    return PolynomialFn.from_raw_coeffs(airline_lattice, 2, {3: airline_lattice.top})


class TestBoundary:
    """Boundary condition and designated elements"""

    def test_airline_satisfies_boundary(self, airline):
        assert check_boundary(airline)

    def test_swapped_bounds_witness(self, airline_swapped):
        verdict = check_boundary(airline_swapped)
        assert not verdict
        assert isinstance(verdict.witness, BoundaryWitness)
        data = verdict.witness_dict(airline_swapped.codomain)
        assert data["coordinate"] == 1
        assert data["x"] == ["A1", "E"]
        assert data["side"] == "lower"
        assert data["violated"] == "f(A4,E)=N ≤ f(A1,E)=B"

    def test_swapped_bounds_not_pseudo_polynomial(self, airline_swapped):
        assert not is_pseudo_polynomial(airline_swapped)
        with pytest.raises(BoundaryViolated):
            phi_bounds(airline_swapped)

    def test_inference_is_unique(self, airline_from_files, airline_lattice):
        unbounded = FunctionTable.from_rows(
            [Domain("X1", ("A1", "A2", "A3", "A4")), Domain("X2", ("E", "F"))], airline_lattice, AIRLINE_ROWS)
        assert infer_bounds(unbounded) == [(("A1", "A4"), ("E", "F"))]
        assert resolve_bounds(unbounded).bounds == (("A1", "A4"), ("E", "F"))

    def test_declared_bounds_are_kept(self, airline):
        assert resolve_bounds(airline) is airline

    def test_constant_table_is_ambiguous(self, chain3):
        domains = [Domain("X1", ("a", "b")), Domain("X2", ("u", "w"))]
        table = FunctionTable.from_function(domains, chain3, lambda x: chain3.element("1"))
        with pytest.raises(AmbiguousBounds) as info:
            resolve_bounds(table)
        assert set(info.value.context["candidates"]) == {"X1", "X2"}

    def test_no_admissible_pair(self, chain3):
        # f(a,u) > f(b,u) but f(a,w) < f(b,w): no order of X1 bounds works
        domains = [Domain("X1", ("a", "b")), Domain("X2", ("u", "w"), "u", "w")]
        table = FunctionTable.from_rows(domains, chain3, [
            (("a", "u"), "1"), (("a", "w"), "1"),
            (("b", "u"), "0"), (("b", "w"), "2"),
        ])
        with pytest.raises(BoundaryViolated) as info:
            resolve_bounds(table)
        assert info.value.context["domains"] == ["X1"]


class TestPhiBounds:
    """Extremal inner maps on the airline table"""

    def test_first_coordinate_is_pinned(self, airline):
        bounds = phi_bounds(airline)
        lattice = airline.codomain
        assert names(lattice, bounds.lower[0]) == ("B", "D", "G", "V")
        assert names(lattice, bounds.upper[0]) == ("B", "D", "G", "V")

    def test_second_coordinate_interval(self, airline):
        bounds = phi_bounds(airline)
        lattice = airline.codomain
        assert names(lattice, bounds.lower[1]) == ("B", "V")
        assert names(lattice, bounds.upper[1]) == ("N", "V")
        assert bounds.is_ordered()
        assert bounds.is_order_preserving()

    def test_debug_trace(self, airline, caplog):
        with caplog.at_level("DEBUG", logger="PseudoPoly.Factorization"):
            phi_bounds(airline)
        assert "Phi2+(E) = V ∧ N ∧ N ∧ N = N" in caplog.text

    def test_is_pseudo_polynomial(self, airline, airline_from_files):
        assert is_pseudo_polynomial(airline)
        assert is_pseudo_polynomial(airline_from_files)

    def test_intervals(self, airline):
        info = phi_intervals(airline)
        assert info["interval_sizes"]["X2"] == {"E": 2, "F": 1}
        assert set(info["interval_sizes"]["X1"].values()) == {1}
        assert info["phi_candidates"] == {"X1": 1, "X2": 2}
        assert info["phi_upper_bound"] == 2


class TestPolynomialBounds:
    """p0 and the interpolation bounds for a fixed φ"""

    def test_p0(self, airline):
        p = p0(airline)
        assert names(airline.codomain, p.coeffs) == ("B", "N", "B", "V")
        assert p.to_dnf_string() == "(N ∧ y1) ∨ (y1 ∧ y2)"
        assert p.is_sugeno()

    def test_bounds_collapse_at_phi_minus(self, airline, phi):
        p_minus, p_plus = interpolation_bounds(airline, phi(PHI_MINUS))
        assert p_minus == p_plus == p0(airline)

    def test_bounds_at_phi_plus(self, airline, phi, meet_poly):
        p_minus, p_plus = interpolation_bounds(airline, phi(PHI_PLUS))
        assert p_minus == meet_poly
        assert p_plus == p0(airline)

    def test_inadmissible_phi(self, airline, phi):
        with pytest.raises(PhiNotAdmissible):
            interpolation_bounds(airline, phi(PHI_TOO_HIGH))

    def test_admissibility_witness(self, airline, phi):
        verdict = check_phi_admissible(airline, phi(PHI_TOO_HIGH))
        assert isinstance(verdict.witness, IntervalWitness)
        assert verdict.witness_dict(airline.codomain)["violated"] == "phi2(E)=V ≤ Phi2+(E)=N"

    def test_phi_boundary_violation(self, airline, phi):
        bad = {"X1": PHI_MINUS["X1"], "X2": {"E": "V", "F": "N"}}
        with pytest.raises(BC1Violated):
            check_phi_admissible(airline, phi(bad))


class TestEnumeration:
    """Deterministic listing, counts and caps"""

    def test_three_factorizations_in_order(self, airline, meet_poly):
        factorizations = list(enumerate_factorizations(airline))
        lattice = airline.codomain
        assert len(factorizations) == 3
        phis = [fz.phi.to_dict(lattice) for fz in factorizations]
        assert phis == [PHI_MINUS, PHI_PLUS, PHI_PLUS]
        assert [fz.p for fz in factorizations] == [p0(airline), meet_poly, p0(airline)]
        assert all(fz.verified and fz.p.is_sugeno() for fz in factorizations)

    def test_to_dict(self, airline):
        first = next(iter(enumerate_factorizations(airline)))
        data = first.to_dict()
        assert data["dnf"] == "(N ∧ y1) ∨ (y1 ∧ y2)"
        assert data["sugeno"] and data["verified"]
        assert data["phi"] == PHI_MINUS

    def test_counts(self, airline):
        counts = count_factorizations(airline)
        assert counts.to_dict() == {"phi_vectors": 2, "total": 3, "capped": False}

    def test_capped_count(self, airline):
        counts = count_factorizations(airline, max_factorizations=2)
        assert counts.capped
        assert counts.total == 2

    def test_cap_exceeded_after_emitting(self, airline):
        emitted = []
        with pytest.raises(CapExceeded) as info:
            for fz in enumerate_factorizations(airline, max_factorizations=2):
                emitted.append(fz)
        assert len(emitted) == 2
        assert info.value.cap == 2

    def test_cap_equal_to_total_is_fine(self, airline):
        assert len(list(enumerate_factorizations(airline, max_factorizations=3))) == 3

    def test_not_pseudo_polynomial_is_refused_eagerly(self, chain_crossing):
        with pytest.raises(NotPseudoPolynomial):
            enumerate_factorizations(chain_crossing)


class TestVerification:
    """Shortcut verification, the exhaustive fallback and the median form"""

    def test_verify_listed_factorization(self, airline, phi, meet_poly):
        assert verify_factorization(airline, phi(PHI_PLUS), meet_poly, cross_check=True)

    def test_wrong_polynomial(self, airline, phi, meet_poly):
        verdict = verify_factorization(airline, phi(PHI_MINUS), meet_poly)
        assert not verdict
        assert isinstance(verdict.witness, TupleWitness)
        lattice = airline.codomain
        assert verdict.witness.x == ("A4", "E")
        assert lattice.name(verdict.witness.expected) == "N"
        assert lattice.name(verdict.witness.actual) == "B"

    def test_inadmissible_phi_carries_reason(self, airline, phi):
        verdict = verify_factorization(airline, phi(PHI_TOO_HIGH), p0(airline))
        assert not verdict
        data = verdict.witness_dict(airline.codomain)
        assert data["x"] == ["A2", "E"]
        assert (data["expected"], data["actual"]) == ("B", "D")
        assert data["reason"]["kind"] == "phi_interval"

    def test_verify_without_designated_elements(self, airline_lattice, meet_poly):
        unbounded = FunctionTable.from_rows(
            [Domain("X1", ("A1", "A2", "A3", "A4")), Domain("X2", ("E", "F"))], airline_lattice, AIRLINE_ROWS)
        phi = PhiVector.from_mapping(unbounded.domains, airline_lattice, PHI_PLUS)
        assert verify_factorization(unbounded, phi, meet_poly)

    def test_arity_mismatch(self, airline, phi, airline_lattice):
        with pytest.raises(ArityMismatch):
            verify_factorization(airline, phi(PHI_PLUS), PolynomialFn.projection(airline_lattice, 1, 0))

    def test_pseudo_median(self, airline, airline_lattice, phi):
        assert check_pseudo_median_decomposable(airline, phi(PHI_MINUS))
        verdict = check_pseudo_median_decomposable(airline, phi(PHI_TOO_HIGH))
        assert isinstance(verdict.witness, MedianWitness)
        data = verdict.witness_dict(airline.codomain)
        assert data["coordinate"] == 2
        assert data["x"] == ["A2", "E"]
        assert (data["expected"], data["actual"]) == ("B", "D")
        # (A4, E) is a later failing tuple: med(N, V, V) = V
        x, V = ("A4", "E"), airline_lattice.element("V")
        assert airline_lattice.median(airline.lower(x, 1), V, airline.upper(x, 1)) != airline(x)

    def test_median_solve_check(self, airline_lattice):
        B, N, G, V = (airline_lattice.element(n) for n in "BNGV")
        assert median_solve_check(airline_lattice, B, N, V, N)
        assert not median_solve_check(airline_lattice, B, N, V, G)
        with pytest.raises(PreconditionViolated):
            median_solve_check(airline_lattice, V, N, V, N)

    def test_exhaustive_against_median(self, airline_lattice):
        lattices = [airline_lattice] + [lattice for k in (1, 2, 3) for lattice in sublattices(k)]
        for lattice in lattices:
            for u, m, w in product(lattice, repeat=3):
                if not (u <= m and m <= w):
                    continue
                for v in lattice:
                    assert median_solve_check(lattice, u, m, w, v) == (lattice.median(u, v, w) == m)


DESK_LATTICES = [
    pytest.param(lambda: Lattice.chain(1), id="chain2"),
    pytest.param(lambda: Lattice.chain(2), id="chain3"),
    pytest.param(lambda: Lattice.chain(3), id="chain4", marks=pytest.mark.slow),
    pytest.param(lambda: Lattice.boolean(2), id="boolean2", marks=pytest.mark.slow),
]


def bc1_vectors(f):
    """Every φ with φk(0) ≤ φk ≤ φk(1) in each coordinate."""
    for maps in product(*(bc1_maps(f.codomain, d) for d in f.domains)):
        yield PhiVector(f.domains, tuple(maps))


def polynomial_tables(lattice):
    """Each binary polynomial as a lookup table over pairs of element bits."""
    bits = [e.bits for e in lattice]
    return [{(a, b): p.evaluate_bits([a, b]) for a in bits for b in bits}
            for p in enumerate_all_polynomials(lattice, 2)]


class TestDeskScaleProperties:
    """Every 2×2 table over small lattices, every φ satisfying φk(0) ≤ φk ≤ φk(1)"""

    @pytest.mark.parametrize("make_lattice", DESK_LATTICES)
    def test_interval_p0_and_some_polynomial_agree(self, make_lattice):
        lattice = make_lattice()
        tables = polynomial_tables(lattice)
        checked = 0
        for f in all_tables(lattice):
            if not check_boundary(f):
                continue
            base = p0(f)
            for phi in bc1_vectors(f):
                points = [(tuple(phi.image_bits(x)), f(x).bits) for x in f.points()]
                interval = bool(check_phi_admissible(f, phi))
                via_p0 = bool(verify_factorization(f, phi, base))
                some_p = any(all(table[key] == value for key, value in points) for table in tables)
                assert interval == via_p0 == some_p, (f.to_rows(), phi.to_dict(lattice))
                checked += 1
        assert checked > 0

    @pytest.mark.parametrize("make_lattice", DESK_LATTICES)
    def test_median_decomposition_matches_oracle(self, make_lattice):
        lattice = make_lattice()
        for f in all_tables(lattice):
            boundary = bool(check_boundary(f))
            decomposable = False
            for phi in bc1_vectors(f):
                if check_pseudo_median_decomposable(f, phi):
                    # decomposition forces the boundary condition
                    assert boundary, f.to_rows()
                    decomposable = True
            assert decomposable == bool(brute_force_factorizations(f)), f.to_rows()
            assert decomposable == bool(is_pseudo_polynomial(f)), f.to_rows()


class TestOrderPreservation:

    def test_phi_bounds_of_monotone_tables(self):
        pool = list(standard_pool().values())
        for seed in range(1, 61):
            rng = random.Random(seed)
            lattice = rng.choice(pool)
            f = monotone_table(lattice, rng, sizes=(rng.randint(2, 4), rng.randint(2, 3)))
            assert f.is_order_preserving()
            assert phi_bounds(f).is_order_preserving(), seed
