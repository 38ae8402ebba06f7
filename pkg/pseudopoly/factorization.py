"""
pseudopoly Factorization Engine
===============================
Decides whether a tabulated f: X1 × ... × Xn → Y is a pseudo-polynomial
function, i.e. f(x) = p(φ1(x1), ..., φn(xn)) for a lattice polynomial p and
inner maps φk satisfying φk(0) ≤ φk(a) ≤ φk(1), and enumerates all such
factorizations.

The pipeline:

1. boundary condition  f(x_k^0) ≤ f(x) ≤ f(x_k^1)
2. extremal inner maps Φk−(a) = ⋁ cl(f(x) ∧ f(x_k^0)‾),  Φk+(a) = ⋀ int(f(x) ∨ f(x_k^1)‾)
3. every usable φk lies pointwise in [Φk−, Φk+]
4. for a fixed φ every usable p lies coefficientwise in [p−, p+]

Checks return a :class:`Verdict` with a witness; exceptions are reserved for
violated preconditions.
"""

import logging
from dataclasses import dataclass, field
from itertools import product
from typing import Any, Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

from .errors import (
    AmbiguousBounds,
    ArityMismatch,
    BC1Violated,
    BoundaryViolated,
    CapExceeded,
    FormatError,
    InconsistentVerdict,
    NotPseudoPolynomial,
    PhiNotAdmissible,
    PolynomialError,
    PreconditionViolated,
    TableError,
)
from .lattice import Lattice, LatticeElement
from .polynomial import PolynomialFn, monotone_families
from .table import BoundPair, Domain, FunctionTable, Point

logger = logging.getLogger('PseudoPoly.Factorization')


def _fmt_point(x: Sequence[str]) -> str:
    return "(" + ",".join(x) + ")"


# === Witnesses ===

class Witness:
    """Base class for the explanation attached to a negative verdict."""

    kind = "witness"

    def to_dict(self, lattice: Lattice) -> Dict[str, Any]:
        raise NotImplementedError


@dataclass(frozen=True)
class BoundaryWitness(Witness):
    """f(x_k^0) ≤ f(x) or f(x) ≤ f(x_k^1) fails at x."""

    kind = "boundary"
    k: int
    x: Point
    side: str
    bound_point: Point
    bound: LatticeElement
    value: LatticeElement

    def to_dict(self, lattice: Lattice) -> Dict[str, Any]:
        if self.side == "lower":
            text = (f"f{_fmt_point(self.bound_point)}={lattice.name(self.bound)} ≤ "
                    f"f{_fmt_point(self.x)}={lattice.name(self.value)}")
        else:
            text = (f"f{_fmt_point(self.x)}={lattice.name(self.value)} ≤ "
                    f"f{_fmt_point(self.bound_point)}={lattice.name(self.bound)}")
        return {"kind": self.kind, "coordinate": self.k + 1, "x": list(self.x),
                "side": self.side, "violated": text}


@dataclass(frozen=True)
class PhiOrderWitness(Witness):
    """A joinand of Φk−(a) not below a meetand of Φk+(a); x and y share x_k = a."""

    kind = "phi_order"
    k: int
    a: str
    x: Point
    y: Point
    joinand: LatticeElement
    meetand: LatticeElement

    def to_dict(self, lattice: Lattice) -> Dict[str, Any]:
        return {
            "kind": self.kind, "coordinate": self.k + 1, "a": self.a,
            "x": list(self.x), "y": list(self.y),
            "violated": (f"cl(f(x) ∧ f(x_k^0)‾)={lattice.name(self.joinand)} ≤ "
                         f"int(f(y) ∨ f(y_k^1)‾)={lattice.name(self.meetand)}"),
        }


@dataclass(frozen=True)
class BC1Witness(Witness):
    """φk(0) ≤ φk(a) or φk(a) ≤ φk(1) fails."""

    kind = "bc1"
    k: int
    a: str
    side: str
    value: LatticeElement
    bound: LatticeElement

    def to_dict(self, lattice: Lattice) -> Dict[str, Any]:
        v, b = lattice.name(self.value), lattice.name(self.bound)
        text = f"phi(0)={b} ≤ phi({self.a})={v}" if self.side == "lower" else f"phi({self.a})={v} ≤ phi(1)={b}"
        return {"kind": self.kind, "coordinate": self.k + 1, "a": self.a, "side": self.side, "violated": text}


@dataclass(frozen=True)
class IntervalWitness(Witness):
    """φk(a) lies outside [Φk−(a), Φk+(a)]."""

    kind = "phi_interval"
    k: int
    a: str
    side: str
    value: LatticeElement
    bound: LatticeElement

    def to_dict(self, lattice: Lattice) -> Dict[str, Any]:
        v, b = lattice.name(self.value), lattice.name(self.bound)
        n = self.k + 1
        if self.side == "lower":
            text = f"Phi{n}-({self.a})={b} ≤ phi{n}({self.a})={v}"
        else:
            text = f"phi{n}({self.a})={v} ≤ Phi{n}+({self.a})={b}"
        return {"kind": self.kind, "coordinate": n, "a": self.a, "side": self.side, "violated": text}


@dataclass(frozen=True)
class TupleWitness(Witness):
    """f(x) ≠ p(φ(x)) at a concrete tuple."""

    kind = "tuple"
    x: Point
    expected: LatticeElement
    actual: LatticeElement
    reason: Optional[Witness] = None

    def to_dict(self, lattice: Lattice) -> Dict[str, Any]:
        data = {"kind": self.kind, "x": list(self.x),
                "expected": lattice.name(self.expected), "actual": lattice.name(self.actual)}
        if self.reason is not None:
            data["reason"] = self.reason.to_dict(lattice)
        return data


@dataclass(frozen=True)
class MedianWitness(Witness):
    """f(x) ≠ med(f(x_k^0), φk(x_k), f(x_k^1))."""

    kind = "median"
    k: int
    x: Point
    expected: LatticeElement
    actual: LatticeElement

    def to_dict(self, lattice: Lattice) -> Dict[str, Any]:
        return {"kind": self.kind, "coordinate": self.k + 1, "x": list(self.x),
                "expected": lattice.name(self.expected), "actual": lattice.name(self.actual)}


@dataclass(frozen=True)
class Verdict:
    """Outcome of a check; truthy iff ``ok``."""

    ok: bool
    witness: Optional[Witness] = None

    def __bool__(self) -> bool:
        return self.ok

    def witness_dict(self, lattice: Lattice) -> Optional[Dict[str, Any]]:
        return self.witness.to_dict(lattice) if self.witness is not None else None


# === Inner maps ===

@dataclass(frozen=True)
class PhiVector:
    """Inner maps φ1..φn, each stored as a tuple aligned with its domain's element order."""

    domains: Tuple[Domain, ...] = field(compare=False, repr=False)
    maps: Tuple[Tuple[LatticeElement, ...], ...]

    def __call__(self, k: int, a: str) -> LatticeElement:
        return self.maps[k][self.domains[k].index(a)]

    def image(self, x: Sequence[str]) -> Tuple[LatticeElement, ...]:
        return tuple(self(k, a) for k, a in enumerate(x))

    def image_bits(self, x: Sequence[str]) -> List[int]:
        return [self(k, a).bits for k, a in enumerate(x)]

    def lower_bits(self) -> List[int]:
        """a_k = φk(0_{Xk})."""
        return [self(k, d.zero).bits for k, d in enumerate(self.domains)]

    def upper_bits(self) -> List[int]:
        """b_k = φk(1_{Xk})."""
        return [self(k, d.one).bits for k, d in enumerate(self.domains)]

    def with_value(self, k: int, a: str, value: LatticeElement) -> 'PhiVector':
        row = list(self.maps[k])
        row[self.domains[k].index(a)] = value
        maps = list(self.maps)
        maps[k] = tuple(row)
        return PhiVector(self.domains, tuple(maps))

    @classmethod
    def from_mapping(cls, domains: Sequence[Domain], lattice: Lattice,
                     mapping: Mapping[str, Mapping[str, str]]) -> 'PhiVector':
        """Build from ``{"X1": {"A1": "B", ...}, ...}`` keyed by domain and element names."""
        if set(mapping) != {d.name for d in domains}:
            raise ArityMismatch("phi must give exactly one map per domain",
                                expected=[d.name for d in domains], got=sorted(mapping))
        maps = []
        for d in domains:
            values = mapping[d.name]
            if set(values) != set(d.elements):
                raise FormatError(f"phi map for {d.name} must cover exactly its elements",
                                  domain=d.name, expected=list(d.elements), got=sorted(values))
            maps.append(tuple(lattice.element(str(values[a])) for a in d.elements))
        return cls(tuple(domains), tuple(maps))

    def to_dict(self, lattice: Lattice) -> Dict[str, Dict[str, str]]:
        return {d.name: {a: lattice.name(v) for a, v in zip(d.elements, row)}
                for d, row in zip(self.domains, self.maps)}


@dataclass(frozen=True)
class PhiBounds:
    """The extremal inner maps Φk− and Φk+ for every coordinate."""

    domains: Tuple[Domain, ...] = field(compare=False, repr=False)
    lower: Tuple[Tuple[LatticeElement, ...], ...]
    upper: Tuple[Tuple[LatticeElement, ...], ...]

    def minus(self, k: int, a: str) -> LatticeElement:
        return self.lower[k][self.domains[k].index(a)]

    def plus(self, k: int, a: str) -> LatticeElement:
        return self.upper[k][self.domains[k].index(a)]

    @property
    def phi_minus(self) -> PhiVector:
        return PhiVector(self.domains, self.lower)

    @property
    def phi_plus(self) -> PhiVector:
        return PhiVector(self.domains, self.upper)

    def is_ordered(self) -> bool:
        """Φk− ≤ Φk+ everywhere."""
        return all(lo <= hi for lrow, urow in zip(self.lower, self.upper) for lo, hi in zip(lrow, urow))

    def is_order_preserving(self) -> bool:
        """Both maps are monotone along the declared chain order of every domain."""
        unordered = [d.name for d in self.domains if not d.ordered]
        if unordered:
            raise TableError(f"Domains without a declared order: {', '.join(unordered)}", domains=unordered)
        for rows in (self.lower, self.upper):
            for row in rows:
                if not all(a <= b for a, b in zip(row, row[1:])):
                    return False
        return True

    def to_dict(self, lattice: Lattice) -> Dict[str, Any]:
        return {
            "phi_minus": self.phi_minus.to_dict(lattice),
            "phi_plus": self.phi_plus.to_dict(lattice),
        }


@dataclass(frozen=True)
class Factorization:
    """f = p ∘ (φ1, ..., φn)."""

    phi: PhiVector
    p: PolynomialFn
    verified: bool = False

    def to_dict(self) -> Dict[str, Any]:
        return {
            "phi": self.phi.to_dict(self.p.lattice),
            "p": self.p.to_json(),
            "dnf": self.p.to_dnf_string(),
            "sugeno": self.p.is_sugeno(),
            "verified": self.verified,
        }

    @classmethod
    def from_json(cls, data: Mapping[str, Any], f: FunctionTable) -> 'Factorization':
        try:
            phi_data, p_data = data["phi"], data["p"]
        except (KeyError, TypeError) as e:
            raise FormatError(f"Factorization JSON needs 'phi' and 'p': {e}") from e
        phi = PhiVector.from_mapping(f.domains, f.codomain, phi_data)
        p = PolynomialFn.from_json(p_data, f.codomain)
        return cls(phi, p)


@dataclass(frozen=True)
class FactorizationCounts:
    phi_vectors: int
    total: int
    capped: bool = False

    def to_dict(self) -> Dict[str, Any]:
        return {"phi_vectors": self.phi_vectors, "total": self.total, "capped": self.capped}


# === Boundary condition and designated elements ===

def check_boundary(f: FunctionTable) -> Verdict:
    """f(x_k^0) ≤ f(x) ≤ f(x_k^1) for every coordinate k and tuple x."""
    bounds = f.require_bounds()
    for k, (zero, one) in enumerate(bounds):
        for x in f.points():
            value = f(x)
            lo = f.lower(x, k)
            if not lo <= value:
                return Verdict(False, BoundaryWitness(k, x, "lower", f.substitute(x, k, zero), lo, value))
            hi = f.upper(x, k)
            if not value <= hi:
                return Verdict(False, BoundaryWitness(k, x, "upper", f.substitute(x, k, one), hi, value))
    return Verdict(True)


def _coordinate_admits(f: FunctionTable, k: int, zero: str, one: str) -> bool:
    for x in f.points():
        value = f(x)
        if not f(f.substitute(x, k, zero)) <= value <= f(f.substitute(x, k, one)):
            return False
    return True


def bound_candidates(f: FunctionTable) -> List[List[BoundPair]]:
    """Per coordinate, every ordered pair (z0, z1), z0 ≠ z1, satisfying the boundary condition."""
    result = []
    for k, d in enumerate(f.domains):
        pairs = [(z0, z1) for z0 in d.elements for z1 in d.elements
                 if z0 != z1 and _coordinate_admits(f, k, z0, z1)]
        result.append(pairs)
    return result


def infer_bounds(f: FunctionTable) -> List[Tuple[BoundPair, ...]]:
    """All complete designated-element assignments; empty means f is not pseudo-polynomial."""
    return list(product(*bound_candidates(f)))


def resolve_bounds(f: FunctionTable) -> FunctionTable:
    """Return f with a complete set of designated elements.

    Declared pairs are kept; missing ones are inferred. Raises
    :class:`BoundaryViolated` when no pair works in some coordinate and
    :class:`AmbiguousBounds` when the choice is not unique.
    """
    if f.bounds is not None:
        return f
    candidates = bound_candidates(f)
    for k, d in enumerate(f.domains):
        if d.has_bounds:
            candidates[k] = [pair for pair in candidates[k] if pair == (d.zero, d.one)]
    empty = [d.name for d, pairs in zip(f.domains, candidates) if not pairs]
    if empty:
        raise BoundaryViolated(f"No designated elements satisfy the boundary condition for {', '.join(empty)}",
                               domains=empty)
    ambiguous = {d.name: [list(p) for p in pairs]
                 for d, pairs in zip(f.domains, candidates) if len(pairs) > 1}
    if ambiguous:
        raise AmbiguousBounds(f"Designated elements are not unique for {', '.join(ambiguous)}; "
                              f"declare them explicitly", candidates=ambiguous)
    chosen = [pairs[0] for pairs in candidates]
    logger.info(f"Inferred designated elements: "
                f"{', '.join(f'{d.name}=({z0},{z1})' for d, (z0, z1) in zip(f.domains, chosen))}")
    return f.with_bounds(chosen)


# === Extremal inner maps ===

def phi_terms(f: FunctionTable, k: int, a: str
              ) -> Tuple[List[Tuple[Point, LatticeElement]], List[Tuple[Point, LatticeElement]]]:
    """Joinands of Φk−(a) and meetands of Φk+(a), one per tuple x with x_k = a."""
    f.require_bounds()
    lattice = f.codomain
    full = lattice.universe.full_mask
    joinands, meetands = [], []
    for x in f.rows_with(k, a):
        value = f(x).bits
        lo = f.lower(x, k).bits
        hi = f.upper(x, k).bits
        joinands.append((x, lattice.closure(LatticeElement(value & ~lo & full, lattice.size))))
        meetands.append((x, lattice.interior(LatticeElement((value | ~hi) & full, lattice.size))))
    return joinands, meetands


def phi_bounds(f: FunctionTable) -> PhiBounds:
    """Φk− and Φk+ for every coordinate; requires the boundary condition."""
    verdict = check_boundary(f)
    if not verdict:
        raise BoundaryViolated("f violates the boundary condition", witness=verdict.witness_dict(f.codomain))
    lattice = f.codomain
    lower, upper = [], []
    for k, d in enumerate(f.domains):
        lrow, urow = [], []
        for a in d.elements:
            joinands, meetands = phi_terms(f, k, a)
            minus = lattice.big_join(t for _, t in joinands)
            plus = lattice.big_meet(t for _, t in meetands)
            if logger.isEnabledFor(logging.DEBUG):
                logger.debug(f"Phi{k + 1}-({a}) = {' ∨ '.join(lattice.name(t) for _, t in joinands)} "
                             f"= {lattice.name(minus)}")
                logger.debug(f"Phi{k + 1}+({a}) = {' ∧ '.join(lattice.name(t) for _, t in meetands)} "
                             f"= {lattice.name(plus)}")
            lrow.append(minus)
            urow.append(plus)
        lower.append(tuple(lrow))
        upper.append(tuple(urow))
    return PhiBounds(f.domains, tuple(lower), tuple(upper))


def is_pseudo_polynomial(f: FunctionTable) -> Verdict:
    """Boundary condition plus Φk− ≤ Φk+; the witness is a failing pair of terms."""
    verdict = check_boundary(f)
    if not verdict:
        return verdict
    lattice = f.codomain
    for k, d in enumerate(f.domains):
        for a in d.elements:
            joinands, meetands = phi_terms(f, k, a)
            minus = lattice.big_join(t for _, t in joinands)
            plus = lattice.big_meet(t for _, t in meetands)
            if minus <= plus:
                continue
            for x, j in joinands:
                for y, m in meetands:
                    if not j <= m:
                        logger.info(f"Not pseudo-polynomial at coordinate {k + 1}, a={a}")
                        return Verdict(False, PhiOrderWitness(k, a, x, y, j, m))
    return Verdict(True)


def p0(f: FunctionTable) -> PolynomialFn:
    """The polynomial with raw coefficients f(𝟏̂_I)."""
    verdict = check_boundary(f)
    if not verdict:
        raise BoundaryViolated("f violates the boundary condition", witness=verdict.witness_dict(f.codomain))
    raw = {mask: f(f.hat_one(mask)) for mask in range(1 << f.arity)}
    return PolynomialFn.from_raw_coeffs(f.codomain, f.arity, raw)


# === Admissible inner maps ===

def require_phi_shape(f: FunctionTable, phi: PhiVector) -> None:
    if len(phi.maps) != f.arity:
        raise ArityMismatch(f"phi has {len(phi.maps)} maps, f has arity {f.arity}",
                            expected=f.arity, got=len(phi.maps))
    for d, row in zip(f.domains, phi.maps):
        if len(row) != len(d.elements):
            raise ArityMismatch(f"phi map for {d.name} has {len(row)} values, expected {len(d.elements)}",
                                domain=d.name)
    f.codomain.require(*(v for row in phi.maps for v in row))


def check_bc1(f: FunctionTable, phi: PhiVector) -> Verdict:
    """φk(0_{Xk}) ≤ φk(a) ≤ φk(1_{Xk}) for every k and a."""
    bounds = f.require_bounds()
    require_phi_shape(f, phi)
    for k, (zero, one) in enumerate(bounds):
        lo, hi = phi(k, zero), phi(k, one)
        for a in f.domains[k].elements:
            value = phi(k, a)
            if not lo <= value:
                return Verdict(False, BC1Witness(k, a, "lower", value, lo))
            if not value <= hi:
                return Verdict(False, BC1Witness(k, a, "upper", value, hi))
    return Verdict(True)


def _interval_verdict(bounds: PhiBounds, phi: PhiVector) -> Verdict:
    for k, d in enumerate(bounds.domains):
        for a in d.elements:
            value = phi(k, a)
            if not bounds.minus(k, a) <= value:
                return Verdict(False, IntervalWitness(k, a, "lower", value, bounds.minus(k, a)))
            if not value <= bounds.plus(k, a):
                return Verdict(False, IntervalWitness(k, a, "upper", value, bounds.plus(k, a)))
    return Verdict(True)


def check_phi_admissible(f: FunctionTable, phi: PhiVector) -> Verdict:
    """Φk− ≤ φk ≤ Φk+ pointwise, equivalently f = p0 ∘ φ."""
    bounds = phi_bounds(f)
    bc1 = check_bc1(f, phi)
    if not bc1:
        raise BC1Violated("phi violates the boundary condition", witness=bc1.witness_dict(f.codomain))
    return _interval_verdict(bounds, phi)


def interpolation_coefficients(f: FunctionTable, phi: PhiVector
                               ) -> Tuple[List[LatticeElement], List[LatticeElement]]:
    """c_I− = cl(f(𝟏̂_I) ∧ ⋀_{i∉I} ā_i) and c_I+ = int(f(𝟏̂_I) ∨ ⋁_{i∈I} b̄_i), by bit mask I."""
    lattice = f.codomain
    full = lattice.universe.full_mask
    a, b = phi.lower_bits(), phi.upper_bits()
    c_minus, c_plus = [], []
    for mask in range(1 << f.arity):
        value = f(f.hat_one(mask)).bits
        outside, inside = full, 0
        for i in range(f.arity):
            if mask >> i & 1:
                inside |= ~b[i] & full
            else:
                outside &= ~a[i]
        c_minus.append(lattice.closure(LatticeElement(value & outside & full, lattice.size)))
        c_plus.append(lattice.interior(LatticeElement(value | inside, lattice.size)))
    return c_minus, c_plus


def interpolation_bounds(f: FunctionTable, phi: PhiVector) -> Tuple[PolynomialFn, PolynomialFn]:
    """Least and greatest p with f = p ∘ φ."""
    verdict = check_phi_admissible(f, phi)
    if not verdict:
        raise PhiNotAdmissible("phi lies outside [Phi-, Phi+]", witness=verdict.witness_dict(f.codomain))
    c_minus, c_plus = interpolation_coefficients(f, phi)
    lattice = f.codomain
    return (PolynomialFn.from_raw_coeffs(lattice, f.arity, dict(enumerate(c_minus))),
            PolynomialFn.from_raw_coeffs(lattice, f.arity, dict(enumerate(c_plus))))


def phi_candidates(f: FunctionTable, bounds: PhiBounds, k: int) -> List[Tuple[LatticeElement, ...]]:
    """Maps φk with values in the per-point intervals that also satisfy φk(0) ≤ φk ≤ φk(1)."""
    lattice = f.codomain
    d = f.domains[k]
    intervals = [lattice.interval(lo, hi) if lo <= hi else []
                 for lo, hi in zip(bounds.lower[k], bounds.upper[k])]
    zi, oi = d.index(d.zero), d.index(d.one)
    return [row for row in product(*intervals)
            if all(row[zi] <= v <= row[oi] for v in row)]


def phi_vectors(f: FunctionTable, bounds: Optional[PhiBounds] = None) -> Iterator[PhiVector]:
    """Every admissible φ, coordinates varying first-slowest."""
    if bounds is None:
        bounds = phi_bounds(f)
    per_coordinate = [phi_candidates(f, bounds, k) for k in range(f.arity)]
    for maps in product(*per_coordinate):
        yield PhiVector(f.domains, tuple(maps))


def phi_intervals(f: FunctionTable) -> Dict[str, Any]:
    """Interval sizes per point, candidate maps per coordinate, and the φ product upper bound."""
    bounds = phi_bounds(f)
    lattice = f.codomain
    sizes: Dict[str, Dict[str, int]] = {}
    candidates: Dict[str, int] = {}
    upper_bound = 1
    for k, d in enumerate(f.domains):
        row = {}
        for a, lo, hi in zip(d.elements, bounds.lower[k], bounds.upper[k]):
            row[a] = len(lattice.interval(lo, hi)) if lo <= hi else 0
            upper_bound *= row[a]
        sizes[d.name] = row
        candidates[d.name] = len(phi_candidates(f, bounds, k))
    return {"interval_sizes": sizes, "phi_candidates": candidates, "phi_upper_bound": upper_bound}


# === Enumeration ===

def _shortcut_witness(f: FunctionTable, phi: PhiVector, p: PolynomialFn) -> Optional[TupleWitness]:
    """p(e_I) = f(𝟏̂_I) for all I, where e_I takes b_i on I and a_i elsewhere."""
    lattice = f.codomain
    a, b = phi.lower_bits(), phi.upper_bits()
    for mask in range(1 << f.arity):
        e = [b[i] if mask >> i & 1 else a[i] for i in range(f.arity)]
        actual = p.evaluate_bits(e)
        x = f.hat_one(mask)
        expected = f(x)
        if actual != expected.bits:
            return TupleWitness(x, expected, lattice._element(actual))
    return None


def _exhaustive_verdict(f: FunctionTable, phi: PhiVector, p: PolynomialFn) -> Verdict:
    lattice = f.codomain
    for x in f.points():
        actual = p.evaluate_bits(phi.image_bits(x))
        expected = f(x)
        if actual != expected.bits:
            return Verdict(False, TupleWitness(x, expected, lattice._element(actual)))
    return Verdict(True)


def _require_pseudo_polynomial(f: FunctionTable) -> PhiBounds:
    verdict = is_pseudo_polynomial(f)
    if not verdict:
        raise NotPseudoPolynomial("f is not a pseudo-polynomial function",
                                  witness=verdict.witness_dict(f.codomain))
    return phi_bounds(f)


def enumerate_factorizations(f: FunctionTable,
                             max_factorizations: Optional[int] = None) -> Iterator[Factorization]:
    """Stream every factorization (φ, p) in deterministic order.

    Preconditions are checked eagerly. When more than ``max_factorizations``
    exist the stream raises :class:`CapExceeded` after emitting exactly that
    many.
    """
    bounds = _require_pseudo_polynomial(f)
    return _factorizations(f, bounds, max_factorizations)


def _factorizations(f: FunctionTable, bounds: PhiBounds, cap: Optional[int]) -> Iterator[Factorization]:
    emitted = 0
    for phi in phi_vectors(f, bounds):
        c_minus, c_plus = interpolation_coefficients(f, phi)
        for p in monotone_families(f.codomain, f.arity, c_minus, c_plus):
            if cap is not None and emitted >= cap:
                logger.warning(f"Factorization cap of {cap} reached")
                raise CapExceeded(f"More than {cap} factorizations", cap=cap)
            emitted += 1
            yield Factorization(phi, p, _shortcut_witness(f, phi, p) is None)
    logger.info(f"Enumerated {emitted} factorizations")


def count_factorizations(f: FunctionTable, max_factorizations: Optional[int] = None) -> FactorizationCounts:
    """Exact counts without building Factorization objects; ``capped`` once the cap is passed."""
    bounds = _require_pseudo_polynomial(f)
    per_coordinate = [phi_candidates(f, bounds, k) for k in range(f.arity)]
    phi_count = 1
    for candidates in per_coordinate:
        phi_count *= len(candidates)
    total = 0
    for maps in product(*per_coordinate):
        phi = PhiVector(f.domains, tuple(maps))
        c_minus, c_plus = interpolation_coefficients(f, phi)
        for _ in monotone_families(f.codomain, f.arity, c_minus, c_plus):
            total += 1
            if max_factorizations is not None and total > max_factorizations:
                logger.warning(f"Factorization count exceeds the cap of {max_factorizations}")
                return FactorizationCounts(phi_count, max_factorizations, True)
    return FactorizationCounts(phi_count, total)


# === Verification ===

def verify_factorization(f: FunctionTable, phi: PhiVector, p: PolynomialFn,
                         cross_check: bool = False) -> Verdict:
    """Is f = p ∘ φ?

    For admissible φ only the 2^n tuples 𝟏̂_I are checked; otherwise every
    tuple is. With ``cross_check`` the short path is confirmed exhaustively
    and disagreement raises :class:`InconsistentVerdict`.
    """
    require_phi_shape(f, phi)
    if p.arity != f.arity:
        raise ArityMismatch(f"p has arity {p.arity}, f has arity {f.arity}", expected=f.arity, got=p.arity)
    if p.lattice != f.codomain:
        raise PolynomialError("p is defined over a different lattice than f")

    admissible: Optional[Verdict] = None
    if f.bounds is not None and check_boundary(f) and check_bc1(f, phi):
        admissible = _interval_verdict(phi_bounds(f), phi)

    if admissible:
        witness = _shortcut_witness(f, phi, p)
        verdict = Verdict(witness is None, witness)
        if cross_check:
            exhaustive = _exhaustive_verdict(f, phi, p)
            if exhaustive.ok != verdict.ok:
                raise InconsistentVerdict("Shortcut and exhaustive verification disagree",
                                          shortcut=verdict.ok, exhaustive=exhaustive.ok)
        return verdict

    verdict = _exhaustive_verdict(f, phi, p)
    if not verdict and admissible is not None:
        w = verdict.witness
        return Verdict(False, TupleWitness(w.x, w.expected, w.actual, admissible.witness))
    return verdict


def check_pseudo_median_decomposable(f: FunctionTable, phi: PhiVector) -> Verdict:
    """f(x) = med(f(x_k^0), φk(x_k), f(x_k^1)) for every k and x.

    The witness is the first failing pair, coordinates ascending and tuples in
    product order within a coordinate.
    """
    f.require_bounds()
    require_phi_shape(f, phi)
    lattice = f.codomain
    for k in range(f.arity):
        for x in f.points():
            lo, hi = f.lower(x, k).bits, f.upper(x, k).bits
            v = phi(k, x[k]).bits
            med = (lo & v) | (v & hi) | (hi & lo)
            expected = f(x)
            if med != expected.bits:
                return Verdict(False, MedianWitness(k, x, expected, lattice._element(med)))
    return Verdict(True)


def median_solve_check(lattice: Lattice, u: LatticeElement, m: LatticeElement,
                       w: LatticeElement, v: LatticeElement) -> bool:
    """For u ≤ m ≤ w: med(u, v, w) = m iff m ∧ ū ≤ v ≤ m ∨ w̄."""
    lattice.require(u, m, w, v)
    if not (u <= m <= w):
        raise PreconditionViolated(f"Expected u ≤ m ≤ w, got {lattice.name(u)}, {lattice.name(m)}, "
                                   f"{lattice.name(w)}")
    full = lattice.universe.full_mask
    low = m.bits & ~u.bits
    high = (m.bits | ~w.bits) & full
    return low & ~v.bits == 0 and v.bits & ~high == 0
