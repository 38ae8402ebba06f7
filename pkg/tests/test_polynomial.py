#!/usr/bin/env python3
"""
pseudopoly Polynomial Tests
===========================
Canonical form, evaluation, order, rendering and coefficient enumeration.
"""

from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pseudopoly.errors import ArityMismatch, ArityTooLarge, BoundsNotOrdered, FormatError
from pseudopoly.lattice import Lattice
from pseudopoly.oracle import standard_pool
from pseudopoly.polynomial import PolynomialFn, key_to_mask, mask_to_key, monotone_families


@pytest.fixture
def el(airline_lattice):
    return {name: airline_lattice.element(name) for name in "BNDGV"}


@pytest.fixture
def p0(airline_lattice, el):
    return PolynomialFn.from_raw_coeffs(airline_lattice, 2, {0: el["B"], 1: el["N"], 3: el["V"]})


class TestCanonicalForm:
    """Eager canonicalization d_I = ⋁_{J ⊆ I} raw_J"""

    def test_coefficients_are_monotone(self, airline_lattice, el):
        p = PolynomialFn.from_raw_coeffs(airline_lattice, 1, {0: el["N"], 1: el["D"]})
        assert p.coeffs == (el["N"], el["G"])

    def test_missing_entries_are_bottom(self, p0, el):
        assert p0.coeffs == (el["B"], el["N"], el["B"], el["V"])

    def test_equal_functions_have_equal_coefficients(self, airline_lattice, el):
        redundant = PolynomialFn.from_raw_coeffs(airline_lattice, 2, {1: el["N"], 2: el["B"], 3: el["D"]})
        direct = PolynomialFn.from_raw_coeffs(airline_lattice, 2, {1: el["N"], 3: el["G"]})
        assert redundant == direct
        assert hash(redundant) == hash(direct)

    def test_arity_limit(self, airline_lattice):
        with pytest.raises(ArityTooLarge):
            PolynomialFn.from_raw_coeffs(airline_lattice, 21, {})


class TestEvaluation:
    """Evaluation, Sugeno test, order and restriction"""

    def test_evaluate(self, p0, el):
        assert p0.evaluate([el["D"], el["V"]]) == el["D"]
        assert p0.evaluate([el["V"], el["B"]]) == el["N"]

    def test_arity_mismatch(self, p0, el):
        with pytest.raises(ArityMismatch):
            p0.evaluate([el["N"]])

    def test_is_sugeno(self, airline_lattice, p0, el):
        assert p0.is_sugeno()
        assert not PolynomialFn.constant(airline_lattice, el["N"], arity=2).is_sugeno()
        assert PolynomialFn.projection(airline_lattice, 2, 0).is_sugeno()

    def test_median(self, airline_lattice, el):
        med = PolynomialFn.median(airline_lattice)
        assert med.is_sugeno()
        assert med.evaluate([el["N"], el["D"], el["V"]]) == el["G"]

    def test_pointwise_order(self, airline_lattice, p0):
        y1 = PolynomialFn.projection(airline_lattice, 2, 0)
        assert p0.leq(y1)
        assert not y1.leq(p0)

    def test_equals_matches_pointwise_comparison(self):
        for lattice, arity in ((Lattice.chain(1), 2), (Lattice.chain(2), 1)):
            polys = [PolynomialFn.from_raw_coeffs(lattice, arity, dict(enumerate(raw)))
                     for raw in product(lattice.elements, repeat=1 << arity)]
            points = list(product(lattice, repeat=arity))
            for p, q in product(polys, repeat=2):
                pointwise = all(p.evaluate(list(y)) == q.evaluate(list(y)) for y in points)
                assert p.equals(q) == pointwise

    def test_order_needs_same_arity(self, airline_lattice, p0):
        with pytest.raises(ArityMismatch):
            p0.leq(PolynomialFn.projection(airline_lattice, 1, 0))

    def test_restrict_gives_median_form(self, p0, el):
        u = p0.restrict(1, [el["D"], el["B"]])
        assert u.arity == 1
        assert u.coeffs == (el["B"], el["D"])

    def test_unary_median_form_requires_order(self, airline_lattice, el):
        with pytest.raises(BoundsNotOrdered):
            PolynomialFn.unary_median_form(airline_lattice, el["V"], el["N"])


class TestRendering:
    """DNF strings and JSON"""

    def test_dnf_drops_absorbed_terms(self, p0):
        assert p0.to_dnf_string() == "(N ∧ y1) ∨ (y1 ∧ y2)"

    def test_dnf_of_projection_and_constants(self, airline_lattice, el):
        assert PolynomialFn.projection(airline_lattice, 2, 0).to_dnf_string() == "y1"
        assert PolynomialFn.constant(airline_lattice, el["N"]).to_dnf_string() == "N"
        assert PolynomialFn.constant(airline_lattice, el["B"], arity=2).to_dnf_string() == "B"

    def test_dnf_custom_variables(self, p0):
        assert p0.to_dnf_string(["x", "z"]) == "(N ∧ x) ∨ (x ∧ z)"

    def test_to_json(self, p0):
        assert p0.to_json() == {"arity": 2, "coeffs": {"": "B", "1": "N", "2": "B", "1,2": "V"}}

    def test_from_json_canonicalizes(self, airline_lattice, p0):
        loaded = PolynomialFn.from_json({"arity": 2, "coeffs": {"1": "N", "1,2": "V"}}, airline_lattice)
        assert loaded == p0

    @pytest.mark.parametrize("key", ["3", "x", "0"])
    def test_bad_keys(self, key):
        with pytest.raises(FormatError):
            key_to_mask(key, 2)

    def test_keys(self):
        assert mask_to_key(0) == ""
        assert mask_to_key(0b101) == "1,3"
        assert key_to_mask("1, 3", 3) == 0b101

    def test_malformed_json(self, airline_lattice):
        with pytest.raises(FormatError):
            PolynomialFn.from_json({"coeffs": {}}, airline_lattice)


class TestMonotoneFamilies:
    """Backtracking enumeration of coefficient families"""

    def test_unary_over_chain(self):
        # pairs d_∅ ≤ d_{1} over 0 < 1 < 2
        assert len(list(monotone_families(Lattice.chain(2), 1))) == 6

    def test_nullary_is_the_carrier(self, airline_lattice):
        assert len(list(monotone_families(airline_lattice, 0))) == 5

    def test_bounds_restrict_the_families(self, airline_lattice, el):
        families = list(monotone_families(airline_lattice, 1, lower=[el["N"], el["N"]], upper=[el["G"], el["V"]]))
        # d_∅ ∈ {N, G}, d_{1} ≥ d_∅
        assert len(families) == 5
        assert all(el["N"] <= p.coeff(0) <= el["G"] for p in families)

    def test_families_are_distinct(self, airline_lattice):
        families = list(monotone_families(airline_lattice, 2))
        assert len(set(families)) == len(families)


SMALL_LATTICES = [Lattice.chain(1), Lattice.boolean(2), Lattice.chain(4), standard_pool()["airline"], Lattice.chain(5)]


@st.composite
def raw_polynomial(draw):
    lattice = draw(st.sampled_from(SMALL_LATTICES))
    arity = draw(st.integers(min_value=0, max_value=2))
    raw = {mask: draw(st.sampled_from(lattice.elements)) for mask in range(1 << arity)
           if draw(st.booleans())}
    return lattice, arity, raw


class TestCanonicalProperty:
    """The canonical form computes the same function as the raw DNF"""

    @given(raw_polynomial())
    @settings(max_examples=500)
    def test_evaluation_matches_raw_dnf(self, case):
        lattice, arity, raw = case
        p = PolynomialFn.from_raw_coeffs(lattice, arity, raw)
        for args in product(lattice, repeat=arity):
            expected = lattice.bottom
            for mask, d in raw.items():
                term = d
                for i in range(arity):
                    if mask >> i & 1:
                        term = lattice.meet(term, args[i])
                expected = lattice.join(expected, term)
            assert p.evaluate(list(args)) == expected

    @given(raw_polynomial())
    @settings(max_examples=500)
    def test_coefficient_is_value_at_indicator(self, case):
        lattice, arity, raw = case
        p = PolynomialFn.from_raw_coeffs(lattice, arity, raw)
        for mask in range(1 << arity):
            indicator = [lattice.top if mask >> i & 1 else lattice.bottom for i in range(arity)]
            assert p.evaluate(indicator) == p.coeff(mask)
