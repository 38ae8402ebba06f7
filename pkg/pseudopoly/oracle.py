"""
pseudopoly Brute-Force Oracle
=============================
Ground truth for desk-scale instances. The oracle shares only lattice
operations and polynomial evaluation with the engine: it enumerates every
canonical polynomial and every inner-map vector satisfying the boundary
condition and keeps the pairs that reproduce the table.

Random instances come from a seeded ``random.Random``: the lattice is drawn
from the pool, each Xk gets between 2 and ``max_domain`` points (first point
designated 0, last designated 1), and the table is either a composition
p ∘ φ of random p and φ or uniformly random, with equal probability.
"""

import logging
import random
from dataclasses import asdict, dataclass
from itertools import product
from typing import Dict, Iterator, List, Optional, Sequence, Set, Tuple

from .errors import CapExceeded, FormatError, OracleLimitExceeded, PseudoPolyError
from .lattice import Lattice, LatticeElement, Universe
from .polynomial import PolynomialFn, monotone_families
from .table import Domain, FunctionTable

logger = logging.getLogger('PseudoPoly.Oracle')

DEFAULT_MAX_SEARCH = 2_000_000


@dataclass(frozen=True)
class InstanceLimits:
    """Desk-scale bounds the oracle accepts."""

    max_arity: int = 2
    max_domain: int = 3
    max_lattice: int = 6
    max_search: int = DEFAULT_MAX_SEARCH

    def __post_init__(self):
        if self.max_arity < 1 or self.max_domain < 2 or self.max_lattice < 2 or self.max_search < 1:
            raise PseudoPolyError(f"Invalid instance limits: {self}")

    @classmethod
    def parse(cls, text: str, max_search: int = DEFAULT_MAX_SEARCH) -> 'InstanceLimits':
        """Parse ``"n,x,y"`` (max arity, max |Xk|, max |Y|)."""
        try:
            n, x, y = (int(part) for part in text.split(","))
        except ValueError:
            raise FormatError(f"Limits must look like 'n,x,y', got {text!r}", limits=text) from None
        return cls(n, x, y, max_search)

    def check(self, f: FunctionTable) -> None:
        if f.arity > self.max_arity:
            raise OracleLimitExceeded(f"Arity {f.arity} exceeds the oracle limit {self.max_arity}",
                                      arity=f.arity, limit=self.max_arity)
        for d in f.domains:
            if len(d.elements) > self.max_domain:
                raise OracleLimitExceeded(f"|{d.name}|={len(d.elements)} exceeds the oracle limit {self.max_domain}",
                                          domain=d.name, limit=self.max_domain)
        if len(f.codomain) > self.max_lattice:
            raise OracleLimitExceeded(f"|Y|={len(f.codomain)} exceeds the oracle limit {self.max_lattice}",
                                      lattice_size=len(f.codomain), limit=self.max_lattice)

    def to_dict(self) -> Dict[str, int]:
        return asdict(self)


# === Lattice pool ===

def airline_lattice() -> Lattice:
    """B = ∅ ⊂ N, D ⊂ G ⊂ V over U = {n, d, v}; N and D are incomparable."""
    universe = Universe(("n", "d", "v"))
    return Lattice.from_subsets(universe, {
        "B": [], "N": ["n"], "D": ["d"], "G": ["n", "d"], "V": ["n", "d", "v"],
    })


def standard_pool() -> Dict[str, Lattice]:
    """Named lattices random instances draw from, in a fixed order."""
    pool = {f"chain{m + 1}": Lattice.chain(m) for m in range(1, 6)}
    pool["boolean2"] = Lattice.boolean(2)
    pool["airline"] = airline_lattice()
    return pool


# === Exhaustive enumeration ===

def enumerate_all_polynomials(lattice: Lattice, n: int,
                              max_search: Optional[int] = None) -> Iterator[PolynomialFn]:
    """Every canonical n-ary polynomial over ``lattice``, each once, in bitmask order."""
    space = len(lattice) ** (1 << n)
    if max_search is not None and space > max_search:
        raise CapExceeded(f"|Y|^(2^n) = {space} exceeds the search cap {max_search}",
                          cap=max_search, space=space)
    return monotone_families(lattice, n)


def bc1_maps(lattice: Lattice, domain: Domain) -> List[Tuple[LatticeElement, ...]]:
    """All maps Xk → Y with φ(0) ≤ φ(a) ≤ φ(1), in product order."""
    zi, oi = domain.index(domain.zero), domain.index(domain.one)
    return [row for row in product(lattice.elements, repeat=len(domain.elements))
            if all(row[zi] <= v <= row[oi] for v in row)]


def brute_force_factorizations(f: FunctionTable, limits: Optional[InstanceLimits] = None
                               ) -> Set[Tuple[Tuple[Tuple[LatticeElement, ...], ...], PolynomialFn]]:
    """All pairs (φ maps, canonical p) with f = p ∘ φ and every φk satisfying the boundary condition.

    The last coordinate is solved pointwise: for a fixed prefix of maps and a
    fixed p, each point of the last domain independently admits the values
    that reproduce its column of the table.
    """
    limits = limits or InstanceLimits()
    limits.check(f)
    f.require_bounds()
    lattice = f.codomain
    n = f.arity
    elements = lattice.elements
    polys = list(enumerate_all_polynomials(lattice, n, limits.max_search))
    maps = [bc1_maps(lattice, d) for d in f.domains]

    space = len(polys)
    for candidates in maps[:-1]:
        space *= len(candidates)
    if space > limits.max_search:
        raise CapExceeded(f"Search space {space} exceeds the cap {limits.max_search}",
                          cap=limits.max_search, space=space)

    index = {e.bits: i for i, e in enumerate(elements)}
    tables = []
    for p in polys:
        tables.append({args: p.evaluate_bits([elements[i].bits for i in args])
                       for args in product(range(len(elements)), repeat=n)})

    last = f.domains[-1]
    prefix_domains = f.domains[:-1]
    zi, oi = last.index(last.zero), last.index(last.one)
    columns = {a: [x for x in f.points() if x[-1] == a] for a in last.elements}

    found: Set[Tuple[Tuple[Tuple[LatticeElement, ...], ...], PolynomialFn]] = set()
    for prefix in product(*maps[:-1]):
        keys = {a: [(tuple(index[prefix[k][prefix_domains[k].index(x[k])].bits] for k in range(n - 1)),
                     f(x).bits) for x in columns[a]]
                for a in last.elements}
        for p, table in zip(polys, tables):
            options = []
            for a in last.elements:
                admissible = [elements[j] for j in range(len(elements))
                              if all(table[key + (j,)] == value for key, value in keys[a])]
                if not admissible:
                    break
                options.append(admissible)
            else:
                for row in product(*options):
                    if all(row[zi] <= v <= row[oi] for v in row):
                        found.add((tuple(prefix) + (tuple(row),), p))
    logger.debug(f"Brute force: {len(found)} factorizations over {space} candidates")
    return found


# === Random instances ===

def _random_phi_row(rng: random.Random, lattice: Lattice, size: int) -> List[LatticeElement]:
    low = rng.choice(lattice.elements)
    high = rng.choice([y for y in lattice.elements if low <= y])
    middle = lattice.interval(low, high)
    return [low] + [rng.choice(middle) for _ in range(size - 2)] + [high]


def random_instance(seed: int, limits: Optional[InstanceLimits] = None,
                    lattices: Optional[Sequence[Lattice]] = None) -> FunctionTable:
    """Deterministic pseudo-random table for ``seed``."""
    limits = limits or InstanceLimits()
    rng = random.Random(seed)
    pool = [L for L in (lattices if lattices is not None else standard_pool().values())
            if len(L) <= limits.max_lattice]
    if not pool:
        raise OracleLimitExceeded(f"No lattice in the pool has at most {limits.max_lattice} elements",
                                  limit=limits.max_lattice)
    lattice = rng.choice(pool)
    domains = []
    for k in range(limits.max_arity):
        size = rng.randint(2, limits.max_domain)
        elements = tuple(f"x{k + 1}_{i}" for i in range(size))
        domains.append(Domain(f"X{k + 1}", elements, zero=elements[0], one=elements[-1], ordered=True))

    if rng.random() < 0.5:
        raw = {mask: rng.choice(lattice.elements) for mask in range(1 << len(domains))}
        p = PolynomialFn.from_raw_coeffs(lattice, len(domains), raw)
        rows = [_random_phi_row(rng, lattice, len(d.elements)) for d in domains]

        def composed(x):
            args = [rows[k][d.index(a)].bits for k, (d, a) in enumerate(zip(domains, x))]
            return lattice._element(p.evaluate_bits(args))

        return FunctionTable.from_function(domains, lattice, composed)
    return FunctionTable.from_function(domains, lattice, lambda x: rng.choice(lattice.elements))
