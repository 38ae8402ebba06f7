"""
pseudopoly Function Tables
==========================
A total map f: X1 × ... × Xn → Y over named finite sets, with optional
designated elements 0_{Xk}, 1_{Xk} per coordinate.
"""

import logging
from dataclasses import dataclass, replace
from itertools import product
from typing import Callable, Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

from .errors import BoundsMissing, DuplicateTuple, MissingTuple, TableError, UnknownName
from .lattice import Lattice, LatticeElement

logger = logging.getLogger('PseudoPoly.Table')

Point = Tuple[str, ...]
BoundPair = Tuple[str, str]


@dataclass(frozen=True)
class Domain:
    """A named finite set Xk with declared element order and optional designated bounds."""

    name: str
    elements: Tuple[str, ...]
    zero: Optional[str] = None
    one: Optional[str] = None
    ordered: bool = False

    def __post_init__(self):
        elements = tuple(str(e) for e in self.elements)
        object.__setattr__(self, 'elements', elements)
        if len(elements) < 2:
            raise TableError(f"Domain {self.name} needs at least two elements", domain=self.name)
        if len(set(elements)) != len(elements):
            raise TableError(f"Domain {self.name} has duplicate elements", domain=self.name)
        for label, value in (("zero", self.zero), ("one", self.one)):
            if value is not None and value not in elements:
                raise UnknownName(f"Designated {label} {value!r} is not an element of {self.name}",
                                  name=value, domain=self.name)
        if self.zero is not None and self.zero == self.one:
            raise TableError(f"Designated elements of {self.name} must be distinct", domain=self.name)

    @property
    def has_bounds(self) -> bool:
        return self.zero is not None and self.one is not None

    def index(self, element: str) -> int:
        try:
            return self.elements.index(element)
        except ValueError:
            raise UnknownName(f"{element!r} is not an element of {self.name}",
                              name=element, domain=self.name) from None

    def with_bounds(self, zero: Optional[str], one: Optional[str]) -> 'Domain':
        return replace(self, zero=zero, one=one)


class FunctionTable:
    """A tabulated function f: ∏ Xk → Y, validated for totality and carrier membership."""

    def __init__(self, domains: Sequence[Domain], codomain: Lattice,
                 values: Mapping[Point, LatticeElement]):
        if not domains:
            raise TableError("A function table needs at least one domain")
        names = [d.name for d in domains]
        if len(set(names)) != len(names):
            raise TableError("Domain names must be distinct", domains=names)
        self.domains: Tuple[Domain, ...] = tuple(domains)
        self.codomain = codomain
        self._values: Dict[Point, LatticeElement] = {}
        for x, y in values.items():
            x = tuple(x)
            self._check_point(x)
            codomain.require(y)
            self._values[x] = y
        for x in self.points():
            if x not in self._values:
                raise MissingTuple(f"No value for tuple ({', '.join(x)})", tuple=list(x))
        self._rows: Dict[Tuple[int, str], List[Point]] = {}

    def _check_point(self, x: Point) -> None:
        if len(x) != len(self.domains):
            raise TableError(f"Tuple {x} has {len(x)} components, expected {len(self.domains)}",
                             tuple=list(x))
        for d, a in zip(self.domains, x):
            d.index(a)

    @classmethod
    def from_rows(cls, domains: Sequence[Domain], codomain: Lattice,
                  rows: Sequence[Tuple[Sequence[str], str]]) -> 'FunctionTable':
        """Build from ``(tuple of element names, value name)`` rows, rejecting duplicates."""
        values: Dict[Point, LatticeElement] = {}
        for x, name in rows:
            x = tuple(str(a) for a in x)
            if x in values:
                raise DuplicateTuple(f"Tuple ({', '.join(x)}) is given more than once", tuple=list(x))
            values[x] = codomain.element(str(name))
        return cls(domains, codomain, values)

    @classmethod
    def from_function(cls, domains: Sequence[Domain], codomain: Lattice,
                      fn: Callable[[Point], LatticeElement]) -> 'FunctionTable':
        points = product(*(d.elements for d in domains))
        return cls(domains, codomain, {x: fn(x) for x in points})

    # === Access ===

    @property
    def arity(self) -> int:
        return len(self.domains)

    def points(self) -> Iterator[Point]:
        """All tuples of the product, first coordinate varying slowest."""
        return product(*(d.elements for d in self.domains))

    def __call__(self, x: Sequence[str]) -> LatticeElement:
        return self._values[tuple(x)]

    def rows_with(self, k: int, a: str) -> List[Point]:
        """Tuples x with x_k = a, in product order."""
        key = (k, a)
        if key not in self._rows:
            self.domains[k].index(a)
            self._rows[key] = [x for x in self.points() if x[k] == a]
        return self._rows[key]

    def is_constant(self) -> bool:
        return len({y.bits for y in self._values.values()}) == 1

    # === Designated elements ===

    @property
    def bounds(self) -> Optional[Tuple[BoundPair, ...]]:
        if all(d.has_bounds for d in self.domains):
            return tuple((d.zero, d.one) for d in self.domains)
        return None

    def require_bounds(self) -> Tuple[BoundPair, ...]:
        bounds = self.bounds
        if bounds is None:
            missing = [d.name for d in self.domains if not d.has_bounds]
            raise BoundsMissing(f"Designated elements missing for {', '.join(missing)}", domains=missing)
        return bounds

    def with_bounds(self, assignment: Sequence[Optional[BoundPair]]) -> 'FunctionTable':
        domains = [d.with_bounds(*pair) if pair is not None else d
                   for d, pair in zip(self.domains, assignment)]
        return FunctionTable(domains, self.codomain, self._values)

    def substitute(self, x: Sequence[str], k: int, a: str) -> Point:
        """x_k^a: the tuple that coincides with x except for the k-th component a."""
        y = list(x)
        y[k] = a
        return tuple(y)

    def lower(self, x: Sequence[str], k: int) -> LatticeElement:
        """f(x_k^0)."""
        return self._values[self.substitute(x, k, self.domains[k].zero)]

    def upper(self, x: Sequence[str], k: int) -> LatticeElement:
        """f(x_k^1)."""
        return self._values[self.substitute(x, k, self.domains[k].one)]

    def hat_one(self, mask: int) -> Point:
        """𝟏̂_I: 1_{Xi} for i ∈ I and 0_{Xi} otherwise."""
        self.require_bounds()
        return tuple(d.one if mask >> i & 1 else d.zero for i, d in enumerate(self.domains))

    def is_order_preserving(self) -> bool:
        """f is monotone in every coordinate w.r.t. the declared chain orders."""
        unordered = [d.name for d in self.domains if not d.ordered]
        if unordered:
            raise TableError(f"Domains without a declared order: {', '.join(unordered)}",
                             domains=unordered)
        for k, d in enumerate(self.domains):
            for x in self.points():
                i = d.index(x[k])
                if i + 1 < len(d.elements):
                    nxt = self._values[self.substitute(x, k, d.elements[i + 1])]
                    if not self._values[x] <= nxt:
                        return False
        return True

    def to_rows(self) -> List[Tuple[Point, str]]:
        return [(x, self.codomain.name(self._values[x])) for x in self.points()]

    def __repr__(self):
        return f"FunctionTable({' × '.join(d.name for d in self.domains)} → Y, |Y|={len(self.codomain)})"
