"""
pseudopoly Reports
==================
Builds the JSON report for each CLI command. The report is the single source
of truth: the text output is rendered from it, never computed separately.
"""

import logging
from itertools import islice, product
from typing import Any, Dict, List, Optional, Tuple

from .chains import chain_characterization, chain_phi_bounds, free_phi_bounds, suff_conditions, wlu_sets
from .errors import AmbiguousBounds, BoundaryViolated, CapExceeded, NotAChain
from .factorization import (
    Factorization,
    FactorizationCounts,
    PhiBounds,
    Verdict,
    bound_candidates,
    check_boundary,
    count_factorizations,
    enumerate_factorizations,
    interpolation_coefficients,
    is_pseudo_polynomial,
    p0,
    phi_bounds,
    phi_intervals,
    resolve_bounds,
    verify_factorization,
)
from .lattice import Lattice
from .polynomial import PolynomialFn
from .table import FunctionTable

logger = logging.getLogger('PseudoPoly.Report')

SCHEMA_VERSION = 1
MAX_LISTED_BOUNDS = 100

CHAIN_MODES = ('auto', 'force', 'off')
BOUNDS_MODES = ('auto', 'explicit')


def _bounds_dict(f: FunctionTable, assignment) -> Dict[str, List[str]]:
    return {d.name: [z0, z1] for d, (z0, z1) in zip(f.domains, assignment)}


def _inferred_bounds(f: FunctionTable) -> Tuple[List[Dict[str, List[str]]], int]:
    candidates = bound_candidates(f)
    total = 1
    for pairs in candidates:
        total *= len(pairs)
    listed = [_bounds_dict(f, a) for a in islice(product(*candidates), MAX_LISTED_BOUNDS)]
    return listed, total


def lattice_summary(lattice: Lattice) -> Dict[str, Any]:
    return {
        "universe": list(lattice.universe.atoms),
        "elements": {lattice.name(e): list(lattice.universe.atoms_of(e.bits)) for e in lattice},
        "chain": lattice.is_chain(),
    }


def _chain_active(lattice: Lattice, chain_mode: str) -> bool:
    if chain_mode == 'off':
        return False
    if chain_mode == 'force' and not lattice.is_chain():
        raise NotAChain("--chain-mode force requires a chain lattice")
    return lattice.is_chain()


def _chain_section(f: FunctionTable, bounds: Optional[PhiBounds]) -> Dict[str, Any]:
    lattice = f.codomain
    section: Dict[str, Any] = {"free_bounds": free_phi_bounds(f).to_dict(lattice)}
    if bounds is None:
        return section
    section["wlu"] = {d.name: {a: wlu_sets(f, k, a).to_dict(lattice) for a in d.elements}
                      for k, d in enumerate(f.domains)}
    section["phi_matches_general"] = chain_phi_bounds(f) == bounds
    section["characterization"] = chain_characterization(f).ok
    if bounds.is_ordered():
        section["suff"] = {
            "phi_minus": suff_conditions(f, bounds.phi_minus).to_dict(f),
            "phi_plus": suff_conditions(f, bounds.phi_plus).to_dict(f),
        }
    return section


def build_check_report(f: FunctionTable, chain_mode: str = 'auto',
                       bounds_mode: str = 'auto') -> Tuple[Dict[str, Any], FunctionTable, Verdict]:
    """Boundary verdict, inferred bounds, Φ tables and the pseudo-polynomial verdict.

    Returns the report, the table with resolved designated elements and the verdict.
    """
    lattice = f.codomain
    chain_active = _chain_active(lattice, chain_mode)
    report: Dict[str, Any] = {
        "schema": SCHEMA_VERSION,
        "lattice": lattice_summary(lattice),
        "domains": {d.name: list(d.elements) for d in f.domains},
    }
    listed, total = _inferred_bounds(f)
    report["inferred_bounds"] = listed
    report["inferred_bounds_total"] = total

    if bounds_mode == 'explicit':
        f.require_bounds()
    try:
        f = resolve_bounds(f)
    except BoundaryViolated as e:
        report.update({"bounds": None, "boundary_ok": False, "pseudo_polynomial": False,
                       "witness": {"kind": "no_bounds", **e.context}})
        if chain_active:
            report["chain"] = _chain_section(f, None)
        return report, f, Verdict(False)

    report["bounds"] = _bounds_dict(f, f.bounds)
    boundary = check_boundary(f)
    report["boundary_ok"] = boundary.ok
    if not boundary:
        report.update({"pseudo_polynomial": False, "witness": boundary.witness_dict(lattice)})
        if chain_active:
            report["chain"] = _chain_section(f, None)
        return report, f, boundary

    bounds = phi_bounds(f)
    report.update(bounds.to_dict(lattice))
    verdict = is_pseudo_polynomial(f)
    report["pseudo_polynomial"] = verdict.ok
    report["witness"] = verdict.witness_dict(lattice)
    q = p0(f)
    report["p0"] = {**q.to_json(), "dnf": q.to_dnf_string()}
    if chain_active:
        report["chain"] = _chain_section(f, bounds)
    return report, f, verdict


def _polynomial_entry(p: PolynomialFn) -> Dict[str, Any]:
    return {**p.to_json(), "dnf": p.to_dnf_string()}


def build_factorize_report(f: FunctionTable, chain_mode: str = 'auto', bounds_mode: str = 'auto',
                           max_factorizations: Optional[int] = 10000,
                           count_only: bool = False) -> Tuple[Dict[str, Any], Verdict]:
    """The check report plus p0, every factorization up to the cap, and counts."""
    report, f, verdict = build_check_report(f, chain_mode, bounds_mode)
    report["factorizations"] = []
    if not verdict:
        report["counts"] = {"phi_vectors": 0, "total": 0, "capped": False}
        return report, verdict

    if count_only:
        counts = count_factorizations(f, max_factorizations)
        del report["factorizations"]
    else:
        factorizations: List[Factorization] = []
        capped = False
        try:
            for fac in enumerate_factorizations(f, max_factorizations):
                factorizations.append(fac)
        except CapExceeded:
            capped = True
        phi_count = 1
        for n in phi_intervals(f)["phi_candidates"].values():
            phi_count *= n
        counts = FactorizationCounts(phi_count, len(factorizations), capped)
        report["factorizations"] = [fac.to_dict() for fac in factorizations]
        report["phi_vectors"] = _phi_vector_entries(f, factorizations)
    report["counts"] = counts.to_dict()
    if counts.capped:
        report["intervals"] = phi_intervals(f)
        logger.warning(f"Enumeration capped at {max_factorizations} factorizations")
    return report, verdict


def _phi_vector_entries(f: FunctionTable, factorizations: List[Factorization]) -> List[Dict[str, Any]]:
    """p− and p+ for every distinct φ among the emitted factorizations."""
    lattice = f.codomain
    seen = set()
    entries = []
    for fac in factorizations:
        if fac.phi.maps in seen:
            continue
        seen.add(fac.phi.maps)
        c_minus, c_plus = interpolation_coefficients(f, fac.phi)
        p_minus = PolynomialFn.from_raw_coeffs(lattice, f.arity, dict(enumerate(c_minus)))
        p_plus = PolynomialFn.from_raw_coeffs(lattice, f.arity, dict(enumerate(c_plus)))
        entries.append({
            "phi": fac.phi.to_dict(lattice),
            "p_minus": _polynomial_entry(p_minus),
            "p_plus": _polynomial_entry(p_plus),
        })
    return entries


def build_verify_report(f: FunctionTable, factorization: Factorization,
                        cross_check: bool = False) -> Tuple[Dict[str, Any], Verdict]:
    try:
        f = resolve_bounds(f)
    except (BoundaryViolated, AmbiguousBounds):
        # no unique designated elements: verification falls back to every tuple
        pass
    verdict = verify_factorization(f, factorization.phi, factorization.p, cross_check=cross_check)
    report = {
        "schema": SCHEMA_VERSION,
        "verified": verdict.ok,
        "p": _polynomial_entry(factorization.p),
        "witness": verdict.witness_dict(f.codomain),
    }
    return report, verdict


def build_info_report(lattice: Lattice) -> Dict[str, Any]:
    """Lattice summary with the closure and interior of every element's complement."""
    report = {"schema": SCHEMA_VERSION, **lattice_summary(lattice)}
    report["join_irreducibles"] = [lattice.name(x) for x in lattice.join_irreducibles()]
    report["closure"] = lattice.closure_system.describe()
    report["complements"] = [
        {
            "element": lattice.name(x),
            "complement": lattice.name(lattice.complement(x)),
            "cl": lattice.name(lattice.closure(lattice.complement(x))),
            "int": lattice.name(lattice.interior(lattice.complement(x))),
        }
        for x in lattice
    ]
    return report


# === Text rendering ===

def _render_map(title: str, maps: Dict[str, Dict[str, str]]) -> List[str]:
    lines = [f"{title}:"]
    for name, values in maps.items():
        lines.append(f"   • {name}: " + ", ".join(f"{a}→{v}" for a, v in values.items()))
    return lines


def render_text(report: Dict[str, Any]) -> str:
    """Human-readable rendering of any report produced above."""
    lines: List[str] = []
    if "complements" in report:
        lines.append(f"🔷 Lattice: {len(report['elements'])} elements over U = {{{', '.join(report['universe'])}}}")
        lines.append(f"   • Chain: {'✅ Yes' if report['chain'] else '❌ No'}")
        lines.append(f"   • Join-irreducibles: {', '.join(report['join_irreducibles'])}")
        lines.append(f"   • Closure: {report['closure']['implementation']}")
        for row in report["complements"]:
            lines.append(f"   {row['element']}‾ = {row['complement']}: cl = {row['cl']}, int = {row['int']}")
        return "\n".join(lines) + "\n"

    if "verified" in report:
        lines.append(f"{'✅' if report['verified'] else '❌'} Factorization with p = {report['p']['dnf']} "
                     f"{'verified' if report['verified'] else 'rejected'}")
        if report.get("witness"):
            lines.append(f"   Witness: {report['witness']}")
        return "\n".join(lines) + "\n"

    if report.get("bounds"):
        lines.append("📌 Designated elements: " + ", ".join(
            f"{name}=({z0}, {z1})" for name, (z0, z1) in report["bounds"].items()))
    lines.append(f"{'✅' if report.get('boundary_ok') else '❌'} Boundary condition")
    if "phi_minus" in report:
        lines += _render_map("Φ−", report["phi_minus"])
        lines += _render_map("Φ+", report["phi_plus"])
    lines.append(f"{'✅' if report.get('pseudo_polynomial') else '❌'} Pseudo-polynomial")
    if report.get("witness"):
        lines.append(f"   Witness: {report['witness']}")
    if "p0" in report:
        lines.append(f"p0 = {report['p0']['dnf']}")
    for i, fac in enumerate(report.get("factorizations", []), start=1):
        phi = "; ".join(f"{name}: " + ", ".join(f"{a}→{v}" for a, v in values.items())
                        for name, values in fac["phi"].items())
        lines.append(f"{i}. p = {fac['dnf']}{' (Sugeno)' if fac['sugeno'] else ''} with φ = {phi}")
    if "counts" in report:
        counts = report["counts"]
        lines.append(f"🔢 φ vectors: {counts['phi_vectors']}, factorizations: {counts['total']}"
                     f"{' (capped)' if counts['capped'] else ''}")
    return "\n".join(lines) + "\n"
