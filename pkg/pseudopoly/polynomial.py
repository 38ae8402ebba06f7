"""
pseudopoly Lattice Polynomial Functions
=======================================
n-ary lattice polynomial functions over a finite distributive lattice Y,
stored in canonical disjunctive normal form

    p(y1, ..., yn) = ⋁_{I ⊆ [n]} (d_I ∧ ⋀_{i ∈ I} y_i),   d_I = p(𝟏_I),

where the coefficient family is monotone under inclusion. Every constructor
canonicalizes eagerly (d_I ← ⋁_{J ⊆ I} raw_J), so equality and the pointwise
order reduce to comparing coefficient arrays indexed by bit mask I.
"""

import logging
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .errors import ArityMismatch, ArityTooLarge, BoundsNotOrdered, FormatError, PolynomialError
from .lattice import Lattice, LatticeElement

logger = logging.getLogger('PseudoPoly.Polynomial')

MAX_ARITY = 20


def _check_arity(arity: int) -> None:
    if arity < 0:
        raise PolynomialError(f"Arity must be non-negative, got {arity}")
    if arity > MAX_ARITY:
        raise ArityTooLarge(f"Arity {arity} exceeds the supported maximum of {MAX_ARITY}",
                            arity=arity, max_arity=MAX_ARITY)


def mask_to_key(mask: int) -> str:
    """Bit mask I -> comma-separated 1-based indices ('' for the empty set)."""
    return ",".join(str(i + 1) for i in range(mask.bit_length()) if mask >> i & 1)


def key_to_mask(key: str, arity: int) -> int:
    mask = 0
    for part in key.split(","):
        part = part.strip()
        if not part:
            continue
        try:
            i = int(part)
        except ValueError:
            raise FormatError(f"Invalid coefficient key: {key!r}", key=key) from None
        if not 1 <= i <= arity:
            raise FormatError(f"Variable index {i} out of range 1..{arity}", key=key)
        mask |= 1 << (i - 1)
    return mask


class PolynomialFn:
    """An n-ary lattice polynomial function in canonical Goodstein form."""

    __slots__ = ('lattice', 'arity', '_bits')

    def __init__(self, lattice: Lattice, arity: int, canonical_bits: Sequence[int]):
        # internal: callers go through the canonicalizing constructors
        self.lattice = lattice
        self.arity = arity
        self._bits: Tuple[int, ...] = tuple(canonical_bits)

    # === Constructors ===

    @classmethod
    def from_raw_coeffs(cls, lattice: Lattice, arity: int,
                        raw: Mapping[int, LatticeElement]) -> 'PolynomialFn':
        """Canonical polynomial from any coefficient family (missing entries are 0)."""
        _check_arity(arity)
        size = 1 << arity
        bits = [0] * size
        for mask, value in raw.items():
            if not 0 <= mask < size:
                raise PolynomialError(f"Coefficient index {mask} out of range for arity {arity}")
            lattice.require(value)
            bits[mask] = value.bits
        # d_I <- join of raw_J over J ⊆ I (subset-sum over each variable)
        for i in range(arity):
            bit = 1 << i
            for mask in range(size):
                if mask & bit:
                    bits[mask] |= bits[mask ^ bit]
        return cls(lattice, arity, bits)

    @classmethod
    def constant(cls, lattice: Lattice, c: LatticeElement, arity: int = 0) -> 'PolynomialFn':
        return cls.from_raw_coeffs(lattice, arity, {0: c})

    @classmethod
    def projection(cls, lattice: Lattice, arity: int, k: int) -> 'PolynomialFn':
        """p(y) = y_k (k is 0-based)."""
        return cls.from_raw_coeffs(lattice, arity, {1 << k: lattice.top})

    @classmethod
    def median(cls, lattice: Lattice) -> 'PolynomialFn':
        """The ternary median: d_I = 1 iff |I| >= 2."""
        raw = {mask: lattice.top for mask in range(8) if bin(mask).count("1") >= 2}
        return cls.from_raw_coeffs(lattice, 3, raw)

    @classmethod
    def unary_median_form(cls, lattice: Lattice, s: LatticeElement, t: LatticeElement) -> 'PolynomialFn':
        """p(y) = s ∨ (t ∧ y) = med(s, y, t), for s ≤ t."""
        lattice.require(s, t)
        if not lattice.leq(s, t):
            raise BoundsNotOrdered(f"{lattice.name(s)} is not below {lattice.name(t)}",
                                   s=lattice.name(s), t=lattice.name(t))
        return cls.from_raw_coeffs(lattice, 1, {0: s, 1: t})

    @classmethod
    def from_json(cls, data: Mapping[str, Any], lattice: Lattice) -> 'PolynomialFn':
        """Load ``{"arity": n, "coeffs": {"": "B", "1": "N", "1,2": "V"}}``."""
        try:
            arity = int(data["arity"])
            coeffs = data["coeffs"]
        except (KeyError, TypeError, ValueError) as e:
            raise FormatError(f"Malformed polynomial JSON: {e}") from e
        _check_arity(arity)
        raw = {key_to_mask(str(key), arity): lattice.element(str(name)) for key, name in coeffs.items()}
        return cls.from_raw_coeffs(lattice, arity, raw)

    # === Access ===

    @property
    def coeffs(self) -> Tuple[LatticeElement, ...]:
        """Canonical coefficients d_I indexed by bit mask I."""
        return tuple(self.lattice._element(b) for b in self._bits)

    def coeff(self, mask: int) -> LatticeElement:
        return self.lattice._element(self._bits[mask])

    def to_json(self) -> Dict[str, Any]:
        return {
            "arity": self.arity,
            "coeffs": {mask_to_key(mask): self.lattice.name(self.coeff(mask))
                       for mask in range(1 << self.arity)},
        }

    # === Evaluation ===

    def evaluate(self, y: Sequence[LatticeElement]) -> LatticeElement:
        if len(y) != self.arity:
            raise ArityMismatch(f"Expected {self.arity} arguments, got {len(y)}",
                                expected=self.arity, got=len(y))
        self.lattice.require(*y)
        return self.lattice._element(self.evaluate_bits([v.bits for v in y]))

    __call__ = evaluate

    def evaluate_bits(self, y: Sequence[int]) -> int:
        """Evaluation on raw bit masks; no membership checks."""
        full = self.lattice.universe.full_mask
        result = 0
        for mask, d in enumerate(self._bits):
            term = d
            m, i = mask, 0
            while m and term:
                if m & 1:
                    term &= y[i]
                m >>= 1
                i += 1
            result |= term
        return result & full

    # === Predicates and order ===

    def _require_compatible(self, other: 'PolynomialFn') -> None:
        if self.arity != other.arity:
            raise ArityMismatch(f"Arity {self.arity} vs {other.arity}",
                                expected=self.arity, got=other.arity)
        if self.lattice != other.lattice:
            raise PolynomialError("Polynomials are defined over different lattices")

    def is_sugeno(self) -> bool:
        """Sugeno integral iff p(0) = 0 and p(1) = 1."""
        return self._bits[0] == 0 and self._bits[-1] == self.lattice.universe.full_mask

    def equals(self, other: 'PolynomialFn') -> bool:
        self._require_compatible(other)
        return self._bits == other._bits

    def leq(self, other: 'PolynomialFn') -> bool:
        """Pointwise order, decided coefficientwise."""
        self._require_compatible(other)
        return all(a & ~b == 0 for a, b in zip(self._bits, other._bits))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PolynomialFn):
            return NotImplemented
        return self.arity == other.arity and self._bits == other._bits and self.lattice == other.lattice

    def __hash__(self) -> int:
        return hash((self.arity, self._bits))

    def restrict(self, k: int, fixed: Sequence[LatticeElement]) -> 'PolynomialFn':
        """Unary polynomial u(y) = p(fixed with y in position k); s = u(0), t = u(1)."""
        if len(fixed) != self.arity:
            raise ArityMismatch(f"Expected {self.arity} fixed values, got {len(fixed)}")
        if not 0 <= k < self.arity:
            raise PolynomialError(f"Coordinate {k} out of range for arity {self.arity}")
        args = [v.bits for v in fixed]
        args[k] = 0
        s = self.evaluate_bits(args)
        args[k] = self.lattice.universe.full_mask
        t = self.evaluate_bits(args)
        return PolynomialFn.unary_median_form(self.lattice, self.lattice._element(s), self.lattice._element(t))

    # === Rendering ===

    def to_dnf_string(self, variables: Optional[Sequence[str]] = None) -> str:
        """Readable DNF keeping only joinands not absorbed by a smaller index set."""
        names = list(variables) if variables else [f"y{i + 1}" for i in range(self.arity)]
        full = self.lattice.universe.full_mask
        terms: List[str] = []
        for mask, d in enumerate(self._bits):
            if d == 0:
                continue
            absorbed = any(
                sub != mask and sub & ~mask == 0 and self._bits[sub] == d
                for sub in range(mask)
            )
            if absorbed:
                continue
            factors = [] if d == full and mask else [self.lattice.name(self.lattice._element(d))]
            factors += [names[i] for i in range(self.arity) if mask >> i & 1]
            term = " ∧ ".join(factors)
            terms.append(f"({term})" if len(factors) > 1 and len(self._bits) > 1 else term)
        if not terms:
            return self.lattice.name(self.lattice.bottom)
        return " ∨ ".join(terms)

    def __repr__(self):
        return f"PolynomialFn({self.to_dnf_string()})"


def monotone_families(lattice: Lattice, arity: int,
                      lower: Optional[Sequence[LatticeElement]] = None,
                      upper: Optional[Sequence[LatticeElement]] = None) -> Iterable[PolynomialFn]:
    """All canonical polynomials with lower[I] ≤ d_I ≤ upper[I], in bitmask order.

    Backtracks over I = 0, 1, ..., 2^n - 1; since every J ⊂ I precedes I, only
    the immediate predecessors I \\ {i} constrain d_I.
    """
    _check_arity(arity)
    size = 1 << arity
    elements = [e.bits for e in lattice.elements]
    lo = [e.bits for e in lower] if lower is not None else [0] * size
    hi = [e.bits for e in upper] if upper is not None else [lattice.universe.full_mask] * size
    chosen = [0] * size

    def backtrack(mask: int):
        if mask == size:
            yield PolynomialFn(lattice, arity, chosen)
            return
        floor = lo[mask]
        for i in range(arity):
            if mask >> i & 1:
                floor |= chosen[mask ^ (1 << i)]
        for y in elements:
            if floor & ~y == 0 and y & ~hi[mask] == 0:
                chosen[mask] = y
                yield from backtrack(mask + 1)

    yield from backtrack(0)
