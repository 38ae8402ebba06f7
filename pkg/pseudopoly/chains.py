"""
pseudopoly Chain Specializations
================================
When Y is a finite chain y_0 ⊂ y_1 ⊂ ... ⊂ y_m the closure and interior have
closed forms, and the extremal inner maps reduce to joins and meets of three
sets of table values per point a of Xk:

    W = {f(x) : x_k = a, f(x_k^0) < f(x) < f(x_k^1)}
    L = {f(x) : x_k = a, f(x_k^0) < f(x) = f(x_k^1)}
    U = {f(x) : x_k = a, f(x_k^0) = f(x) < f(x_k^1)}

    Φk−(a) = ⋁L ∨ ⋁W        Φk+(a) = ⋀U ∧ ⋀W

The bound-free variant (:func:`free_phi_bounds`) ranges over every
reference point of Xk instead of 0_{Xk} and 1_{Xk}, and recovers the
designated elements as argmin/argmax.
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple

from .closure import ClosureFactory, ClosureSystem
from .errors import BoundaryViolated, NotAChain
from .factorization import (
    PhiBounds,
    PhiOrderWitness,
    PhiVector,
    Verdict,
    check_boundary,
    require_phi_shape,
)
from .lattice import Lattice, LatticeElement
from .table import FunctionTable

logger = logging.getLogger('PseudoPoly.Chains')


class ChainContext:
    """A chain lattice together with its level map y_k ↦ k."""

    def __init__(self, lattice: Lattice):
        if not lattice.is_chain():
            raise NotAChain("The lattice is not a chain", elements=[lattice.name(e) for e in lattice])
        self.lattice = lattice
        self.closure_system: ClosureSystem = ClosureFactory.create_chain(
            [e.bits for e in lattice.elements], lattice.size)
        self.m = len(lattice) - 1

    def level(self, x: LatticeElement) -> int:
        # canonical (popcount, bits) order is the chain order
        return self.lattice.index(x)

    def at(self, k: int) -> LatticeElement:
        return self.lattice.elements[k]

    def __repr__(self):
        return f"ChainContext(m={self.m})"


def chain_closure(ctx: ChainContext, s: LatticeElement) -> LatticeElement:
    """Chain member at the highest level of an atom of S ([0] for S = ∅)."""
    return ctx.lattice._element(ctx.closure_system.closure(s.bits))


def chain_interior(ctx: ChainContext, s: LatticeElement) -> LatticeElement:
    """Chain member just below the lowest level of an atom missing from S."""
    return ctx.lattice._element(ctx.closure_system.interior(s.bits))


@dataclass(frozen=True)
class WLUSets:
    """The W, L and U value sets at one point, in chain order."""

    W: Tuple[LatticeElement, ...]
    L: Tuple[LatticeElement, ...]
    U: Tuple[LatticeElement, ...]

    def to_dict(self, lattice: Lattice) -> Dict[str, List[str]]:
        return {name: [lattice.name(v) for v in values]
                for name, values in (("W", self.W), ("L", self.L), ("U", self.U))}


def _require_chain_boundary(f: FunctionTable) -> ChainContext:
    ctx = ChainContext(f.codomain)
    verdict = check_boundary(f)
    if not verdict:
        raise BoundaryViolated("f violates the boundary condition", witness=verdict.witness_dict(f.codomain))
    return ctx


def _wlu(f: FunctionTable, k: int, a: str) -> WLUSets:
    w, low, up = set(), set(), set()
    for x in f.rows_with(k, a):
        lo, v, hi = f.lower(x, k), f(x), f.upper(x, k)
        if lo < v < hi:
            w.add(v)
        elif lo < v and v == hi:
            low.add(v)
        elif lo == v and v < hi:
            up.add(v)

    def ordered(values):
        return tuple(sorted(values, key=LatticeElement.sort_key))

    return WLUSets(ordered(w), ordered(low), ordered(up))


def wlu_sets(f: FunctionTable, k: int, a: str) -> WLUSets:
    _require_chain_boundary(f)
    return _wlu(f, k, a)


def chain_phi_bounds(f: FunctionTable) -> PhiBounds:
    """Φk− = ⋁L ∨ ⋁W and Φk+ = ⋀U ∧ ⋀W at every point."""
    ctx = _require_chain_boundary(f)
    lattice = ctx.lattice
    lower, upper = [], []
    for k, d in enumerate(f.domains):
        lrow, urow = [], []
        for a in d.elements:
            sets = _wlu(f, k, a)
            lrow.append(lattice.big_join(sets.L + sets.W))
            urow.append(lattice.big_meet(sets.U + sets.W))
        lower.append(tuple(lrow))
        upper.append(tuple(urow))
    return PhiBounds(f.domains, tuple(lower), tuple(upper))


@dataclass(frozen=True)
class SuffConditions:
    """Conditions (a) W ⊆ {φk(a)}, (b) ⋁L ≤ φk(a), (c) φk(a) ≤ ⋀U at every point."""

    points: Tuple[Tuple[int, str, bool, bool, bool], ...]

    @property
    def ok(self) -> bool:
        return all(a and b and c for _, _, a, b, c in self.points)

    def __bool__(self) -> bool:
        return self.ok

    def failures(self) -> List[Tuple[int, str, bool, bool, bool]]:
        return [p for p in self.points if not (p[2] and p[3] and p[4])]

    def to_dict(self, f: FunctionTable) -> Dict[str, Any]:
        result: Dict[str, Any] = {d.name: {} for d in f.domains}
        for k, a, ca, cb, cc in self.points:
            result[f.domains[k].name][a] = {"a": ca, "b": cb, "c": cc}
        return {"ok": self.ok, "points": result}


def suff_conditions(f: FunctionTable, phi: PhiVector) -> SuffConditions:
    """Per point truth of (a), (b) and (c); all true iff Φ− ≤ φ ≤ Φ+."""
    ctx = _require_chain_boundary(f)
    require_phi_shape(f, phi)
    lattice = ctx.lattice
    points = []
    for k, d in enumerate(f.domains):
        for a in d.elements:
            sets = _wlu(f, k, a)
            value = phi(k, a)
            cond_a = not sets.W or sets.W == (value,)
            cond_b = lattice.big_join(sets.L) <= value
            cond_c = value <= lattice.big_meet(sets.U)
            points.append((k, a, cond_a, cond_b, cond_c))
    return SuffConditions(tuple(points))


def chain_characterization(f: FunctionTable) -> Verdict:
    """Boundary condition plus: f(x_k^0) < f(x) and f(y) < f(y_k^1) imply f(x) ≤ f(y) when x_k = y_k."""
    ChainContext(f.codomain)
    f.require_bounds()
    verdict = check_boundary(f)
    if not verdict:
        return verdict
    for k, d in enumerate(f.domains):
        for a in d.elements:
            rows = f.rows_with(k, a)
            rising = [x for x in rows if f.lower(x, k) < f(x)]
            falling = [y for y in rows if f(y) < f.upper(y, k)]
            for x in rising:
                for y in falling:
                    if not f(x) <= f(y):
                        return Verdict(False, PhiOrderWitness(k, a, x, y, f(x), f(y)))
    return Verdict(True)


# === Bound-free variant ===

@dataclass(frozen=True)
class FreeBounds:
    """Bound-free Φ maps plus the designated elements they determine on a chain."""

    bounds: PhiBounds
    zeros: Tuple[Optional[str], ...]
    ones: Tuple[Optional[str], ...]
    zero_candidates: Tuple[Tuple[str, ...], ...]
    one_candidates: Tuple[Tuple[str, ...], ...]

    def to_dict(self, lattice: Lattice) -> Dict[str, Any]:
        data = self.bounds.to_dict(lattice)
        data["designated"] = {
            d.name: {"zero": z, "one": o, "zero_candidates": list(zc), "one_candidates": list(oc)}
            for d, z, o, zc, oc in zip(self.bounds.domains, self.zeros, self.ones,
                                       self.zero_candidates, self.one_candidates)
        }
        return data


def _attaining(elements: Sequence[str], values: Sequence[LatticeElement], target: LatticeElement) -> Tuple[str, ...]:
    return tuple(a for a, v in zip(elements, values) if v == target)


def free_phi_bounds(f: FunctionTable) -> FreeBounds:
    """Φk±(a) taken over every reference point ♥ of Xk rather than 0 and 1.

    On a chain the zero of Xk is the first point where Φk− is least and the
    one the first point where Φk+ is greatest; on other lattices the maps are
    still computed but no designated elements are inferred.
    """
    lattice = f.codomain
    full = lattice.universe.full_mask
    lower, upper = [], []
    for k, d in enumerate(f.domains):
        lrow, urow = [], []
        for a in d.elements:
            join, meet = 0, full
            for x in f.rows_with(k, a):
                value = f(x).bits
                for ref in d.elements:
                    other = f(f.substitute(x, k, ref)).bits
                    join |= lattice.closure_system.closure(value & ~other & full)
                    meet &= lattice.closure_system.interior((value | ~other) & full)
            lrow.append(lattice._element(join))
            urow.append(lattice._element(meet))
        lower.append(tuple(lrow))
        upper.append(tuple(urow))
    bounds = PhiBounds(f.domains, tuple(lower), tuple(upper))

    if not lattice.is_chain():
        logger.info("Lattice is not a chain; designated elements left undetermined")
        none = tuple(None for _ in f.domains)
        empty = tuple(() for _ in f.domains)
        return FreeBounds(bounds, none, none, empty, empty)

    zeros, ones, zero_cands, one_cands = [], [], [], []
    for d, lrow, urow in zip(f.domains, bounds.lower, bounds.upper):
        least = min(lrow, key=LatticeElement.sort_key)
        greatest = max(urow, key=LatticeElement.sort_key)
        zc = _attaining(d.elements, lrow, least)
        oc = _attaining(d.elements, urow, greatest)
        zero_cands.append(zc)
        one_cands.append(oc)
        zeros.append(zc[0])
        ones.append(oc[0])
    return FreeBounds(bounds, tuple(zeros), tuple(ones), tuple(zero_cands), tuple(one_cands))
