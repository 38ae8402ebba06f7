"""
pseudopoly Engine/Oracle Comparison
===================================
Runs the factorization engine and the brute-force oracle on the same table
and checks that they agree, together with the laws every enumerated
factorization must satisfy.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Optional, Sequence

from .errors import PseudoPolyError
from .factorization import (
    enumerate_factorizations,
    interpolation_coefficients,
    is_pseudo_polynomial,
    p0,
)
from .lattice import Lattice
from .oracle import InstanceLimits, brute_force_factorizations, random_instance
from .polynomial import PolynomialFn
from .table import FunctionTable

logger = logging.getLogger('PseudoPoly.Compare')


@dataclass
class ComparisonResult:
    """Outcome of one engine/oracle comparison; ``passed`` iff no check failed."""

    seed: Optional[int] = None
    pseudo_polynomial: bool = False
    oracle_nonempty: bool = False
    engine_count: int = 0
    oracle_count: int = 0
    failures: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> Dict[str, Any]:
        return {
            "seed": self.seed,
            "passed": self.passed,
            "pseudo_polynomial": self.pseudo_polynomial,
            "engine_count": self.engine_count,
            "oracle_count": self.oracle_count,
            "failures": list(self.failures),
        }


def compare_instance(f: FunctionTable, limits: Optional[InstanceLimits] = None,
                     seed: Optional[int] = None) -> ComparisonResult:
    """Verdict agreement, set equality, Sugeno existence and interpolation-bound laws."""
    result = ComparisonResult(seed=seed)
    oracle = brute_force_factorizations(f, limits)
    result.oracle_count = len(oracle)
    result.oracle_nonempty = bool(oracle)

    verdict = is_pseudo_polynomial(f)
    result.pseudo_polynomial = verdict.ok
    if verdict.ok != bool(oracle):
        result.failures.append(f"verdict {verdict.ok} but oracle found {len(oracle)} factorizations")
    if not verdict.ok:
        return result

    factorizations = list(enumerate_factorizations(f))
    result.engine_count = len(factorizations)
    engine = {(fac.phi.maps, fac.p) for fac in factorizations}
    if len(engine) != len(factorizations):
        result.failures.append("enumeration emitted duplicates")
    if engine != oracle:
        result.failures.append(f"engine set ({len(engine)}) differs from oracle set ({len(oracle)})")
    if not all(fac.verified for fac in factorizations):
        result.failures.append("an emitted factorization failed verification")
    if oracle and not any(p.is_sugeno() for _, p in oracle):
        result.failures.append("no Sugeno integral among the factorizations")

    q = p0(f)
    checked = set()
    for fac in factorizations:
        if fac.phi.maps in checked:
            continue
        checked.add(fac.phi.maps)
        c_minus, c_plus = interpolation_coefficients(f, fac.phi)
        for coeffs, label in ((c_minus, "p-"), (c_plus, "p+")):
            canonical = PolynomialFn.from_raw_coeffs(f.codomain, f.arity, dict(enumerate(coeffs)))
            if canonical.coeffs != tuple(coeffs):
                result.failures.append(f"{label} coefficients are not monotone")
        for mask in range(1 << f.arity):
            if not c_minus[mask] <= q.coeff(mask) <= c_plus[mask]:
                result.failures.append(f"p0 outside [p-, p+] at I={mask:b}")
                break
    for fac in factorizations:
        c_minus, c_plus = interpolation_coefficients(f, fac.phi)
        if not all(c_minus[m] <= fac.p.coeff(m) <= c_plus[m] for m in range(1 << f.arity)):
            result.failures.append(f"factorization {fac.p.to_dnf_string()} outside [p-, p+]")
            break
    if result.failures:
        logger.warning(f"Comparison failed (seed={seed}): {'; '.join(result.failures)}")
    return result


def compare_seed(seed: int, limits: InstanceLimits,
                 lattices: Optional[Sequence[Lattice]] = None) -> ComparisonResult:
    f = random_instance(seed, limits, lattices)
    try:
        return compare_instance(f, limits, seed)
    except PseudoPolyError as e:
        return ComparisonResult(seed=seed, failures=[f"{e.code}: {e.message}"])


def run_comparison(seeds: Iterable[int], limits: InstanceLimits,
                   lattices: Optional[Sequence[Lattice]] = None) -> Dict[str, Any]:
    """Compare every seed in order and summarize."""
    results = [compare_seed(seed, limits, lattices) for seed in seeds]
    failed = [r.seed for r in results if not r.passed]
    summary = {
        "schema": 1,
        "limits": limits.to_dict(),
        "instances": len(results),
        "passed": len(results) - len(failed),
        "failed": failed,
        "pseudo_polynomial": sum(1 for r in results if r.pseudo_polynomial),
        "results": [r.to_dict() for r in results],
    }
    logger.info(f"Oracle comparison: {summary['passed']}/{summary['instances']} passed")
    return summary
