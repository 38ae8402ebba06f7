"""
pseudopoly Lattice Core
=======================
Finite distributive lattices represented, via Birkhoff's representation, as
families of subsets of a finite universe U closed under union and
intersection, with 0 = ∅ and 1 = U.

Subsets are stored as characteristic bit vectors over the universe atoms in
their declared order. The same ``LatticeElement`` type houses raw subsets
(e.g. complements) that need not belong to the carrier; membership is always
decided by the ``Lattice``.
"""

import json
import logging
from dataclasses import dataclass
from functools import reduce
from itertools import combinations
from pathlib import Path
from typing import Any, Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Set, Tuple, Union

from .closure import ClosureFactory, ClosureSystem
from .errors import (
    DuplicateAtom,
    ForeignElement,
    FormatError,
    LatticeError,
    MissingBounds,
    NotAPartialOrder,
    NotClosed,
    UnknownName,
)

logger = logging.getLogger('PseudoPoly.Lattice')

MAX_POSET_SIZE = 20


@dataclass(frozen=True)
class Universe:
    """Ordered list of distinct atom names; the order fixes the bit positions."""

    atoms: Tuple[str, ...]

    def __post_init__(self):
        atoms = tuple(str(a) for a in self.atoms)
        object.__setattr__(self, 'atoms', atoms)
        seen: Set[str] = set()
        for atom in atoms:
            if atom in seen:
                raise DuplicateAtom(f"Duplicate atom name: {atom}", atom=atom)
            seen.add(atom)

    @property
    def size(self) -> int:
        return len(self.atoms)

    @property
    def full_mask(self) -> int:
        return (1 << len(self.atoms)) - 1

    def mask(self, atoms: Iterable[str]) -> int:
        bits = 0
        for atom in atoms:
            try:
                bits |= 1 << self.atoms.index(str(atom))
            except ValueError:
                raise UnknownName(f"Unknown atom: {atom}", name=str(atom)) from None
        return bits

    def atoms_of(self, bits: int) -> Tuple[str, ...]:
        return tuple(a for i, a in enumerate(self.atoms) if bits >> i & 1)


@dataclass(frozen=True)
class LatticeElement:
    """A subset of the universe, stored as its characteristic bit vector."""

    bits: int
    size: int

    def __post_init__(self):
        if self.bits < 0 or self.bits >> self.size:
            raise LatticeError(f"Bit vector {self.bits:b} does not fit a universe of size {self.size}")

    @property
    def popcount(self) -> int:
        return bin(self.bits).count("1")

    def sort_key(self) -> Tuple[int, int]:
        return (self.popcount, self.bits)

    def issubset(self, other: 'LatticeElement') -> bool:
        return self.bits & ~other.bits == 0

    def __le__(self, other: 'LatticeElement') -> bool:
        return self.issubset(other)

    def __lt__(self, other: 'LatticeElement') -> bool:
        return self.bits != other.bits and self.issubset(other)

    def __ge__(self, other: 'LatticeElement') -> bool:
        return other.issubset(self)

    def __gt__(self, other: 'LatticeElement') -> bool:
        return self.bits != other.bits and other.issubset(self)


class Poset:
    """A finite partial order given by named elements and ``(a, b)`` pairs meaning a ≤ b.

    Reflexive pairs are implied; transitivity and antisymmetry are checked by
    :meth:`validate`.
    """

    def __init__(self, elems: Sequence[str], pairs: Iterable[Tuple[str, str]] = ()):
        self.elems: Tuple[str, ...] = tuple(str(e) for e in elems)
        if len(set(self.elems)) != len(self.elems):
            raise NotAPartialOrder("Poset elements must be distinct", elems=list(self.elems))
        known = set(self.elems)
        relation: Set[Tuple[str, str]] = {(e, e) for e in self.elems}
        for a, b in pairs:
            a, b = str(a), str(b)
            for name in (a, b):
                if name not in known:
                    raise UnknownName(f"Unknown poset element: {name}", name=name)
            relation.add((a, b))
        self.relation = frozenset(relation)

    def leq(self, a: str, b: str) -> bool:
        return (a, b) in self.relation

    def validate(self) -> 'Poset':
        for a, b in sorted(self.relation):
            if a != b and (b, a) in self.relation:
                raise NotAPartialOrder(
                    f"Antisymmetry violated: {a} <= {b} and {b} <= {a}", witness=[a, b]
                )
        for a, b in sorted(self.relation):
            for c in self.elems:
                if (b, c) in self.relation and (a, c) not in self.relation:
                    raise NotAPartialOrder(
                        f"Transitivity violated: {a} <= {b} <= {c} but not {a} <= {c}",
                        witness=[a, b, c],
                    )
        return self

    def down_mask(self, p: str) -> int:
        """Bit mask (over ``elems`` order) of the principal down-set of ``p``."""
        return sum(1 << i for i, q in enumerate(self.elems) if self.leq(q, p))

    def down_sets(self) -> List[int]:
        """All down-closed subsets as bit masks, by brute force over subsets."""
        if len(self.elems) > MAX_POSET_SIZE:
            raise LatticeError(
                f"Posets with more than {MAX_POSET_SIZE} elements are not supported",
                size=len(self.elems),
            )
        downs = [self.down_mask(p) for p in self.elems]
        result = []
        for mask in range(1 << len(self.elems)):
            if all(downs[i] & ~mask == 0 for i in range(len(self.elems)) if mask >> i & 1):
                result.append(mask)
        return result

    def __repr__(self):
        strict = sorted((a, b) for a, b in self.relation if a != b)
        return f"Poset({list(self.elems)!r}, {strict!r})"


class Lattice:
    """
    A finite distributive lattice Y ⊆ 𝒫(U) with 0 = ∅ and 1 = U.

    The carrier is validated strictly: it must contain ∅ and U and be closed
    under pairwise union and intersection. Elements are kept in canonical
    ``(popcount, bits)`` order, which fixes every iteration order downstream.
    All values are immutable after construction.
    """

    def __init__(self, universe: Universe, elements: Iterable[int],
                 names: Optional[Mapping[int, str]] = None, precompute: Union[bool, str] = "auto"):
        self.universe = universe
        self.size = universe.size
        masks = sorted(set(int(b) for b in elements), key=lambda b: (bin(b).count("1"), b))
        self._names: Dict[int, str] = dict(names or {})
        self._check_family(masks)

        self.elements: Tuple[LatticeElement, ...] = tuple(LatticeElement(b, self.size) for b in masks)
        self._by_bits: Dict[int, LatticeElement] = {e.bits: e for e in self.elements}
        self._index: Dict[int, int] = {e.bits: i for i, e in enumerate(self.elements)}
        self._by_name: Dict[str, LatticeElement] = {}
        for bits, name in self._names.items():
            if name in self._by_name:
                raise LatticeError(f"Duplicate element name: {name}", name=name)
            self._by_name[name] = self._by_bits[bits]
        self.closure_system: ClosureSystem = ClosureFactory.create(masks, self.size, precompute)
        self._is_chain: Optional[bool] = None
        logger.debug(f"Lattice created: |U|={self.size}, |Y|={len(self.elements)}, "
                     f"closure={self.closure_system.name}")

    def _check_family(self, masks: List[int]) -> None:
        full = self.universe.full_mask
        present = set(masks)
        for bits in masks:
            if bits & ~full:
                raise LatticeError(f"Subset {bits:b} is not contained in the universe")
        if 0 not in present or full not in present:
            raise MissingBounds(
                "Carrier must contain the empty set and the whole universe",
                has_bottom=0 in present, has_top=full in present,
            )
        for a, b in combinations(masks, 2):
            if a | b not in present:
                raise NotClosed(self._render(a), self._render(b), "∪")
            if a & b not in present:
                raise NotClosed(self._render(a), self._render(b), "∩")

    # === Constructors ===

    @classmethod
    def from_subsets(cls, universe: Universe, named_sets: Mapping[str, Iterable[str]],
                     precompute: Union[bool, str] = "auto") -> 'Lattice':
        """Build a lattice whose carrier is exactly the given named family."""
        names: Dict[int, str] = {}
        for name, atoms in named_sets.items():
            bits = universe.mask(atoms)
            if bits in names:
                raise LatticeError(
                    f"Elements {names[bits]} and {name} denote the same subset",
                    names=[names[bits], name],
                )
            names[bits] = str(name)
        return cls(universe, names.keys(), names, precompute)

    @classmethod
    def from_join_irreducibles(cls, poset: Poset, precompute: Union[bool, str] = "auto") -> 'Lattice':
        """Build the lattice of all down-sets of ``poset`` (universe = poset elements)."""
        poset.validate()
        universe = Universe(poset.elems)
        downs = poset.down_sets()
        logger.info(f"Built {len(downs)} down-sets from a poset of size {len(poset.elems)}")
        return cls(universe, downs, None, precompute)

    @classmethod
    def close_family(cls, universe: Universe, named_sets: Mapping[str, Iterable[str]],
                     precompute: Union[bool, str] = "auto") -> 'Lattice':
        """Convenience helper: close a family under ∪/∩ and add ∅ and U.

        Unlike :meth:`from_subsets` this never fails on a non-closed family;
        generated members have no name and render as atom sets.
        """
        names = {universe.mask(atoms): str(name) for name, atoms in named_sets.items()}
        family = set(names) | {0, universe.full_mask}
        while True:
            grown = set(family)
            for a, b in combinations(family, 2):
                grown.add(a | b)
                grown.add(a & b)
            if grown == family:
                break
            family = grown
        logger.info(f"Closed family of {len(names)} named sets to {len(family)} elements")
        return cls(universe, family, names, precompute)

    @classmethod
    def chain(cls, m: int, names: Optional[Sequence[str]] = None) -> 'Lattice':
        """The chain [0] ⊂ [1] ⊂ ... ⊂ [m] over U = {1, ..., m}."""
        universe = Universe(tuple(str(i) for i in range(1, m + 1)))
        masks = [(1 << k) - 1 for k in range(m + 1)]
        labels = list(names) if names is not None else [str(k) for k in range(m + 1)]
        return cls(universe, masks, dict(zip(masks, labels)))

    @classmethod
    def boolean(cls, k: int) -> 'Lattice':
        """The full power set 𝒫([k])."""
        universe = Universe(tuple(str(i) for i in range(1, k + 1)))
        return cls(universe, range(1 << k))

    @classmethod
    def from_json(cls, data: Union[Mapping[str, Any], str, Path],
                  base_dir: Optional[Path] = None, precompute: Union[bool, str] = "auto") -> 'Lattice':
        """Load the lattice JSON schema (a mapping, or a path to a JSON file)."""
        if isinstance(data, (str, Path)):
            path = Path(data)
            if not path.is_absolute() and base_dir is not None:
                path = base_dir / path
            try:
                data = json.loads(path.read_text(encoding="utf-8"))
            except (OSError, json.JSONDecodeError) as e:
                raise FormatError(f"Cannot read lattice file {path}: {e}", path=str(path)) from e
        if not isinstance(data, Mapping):
            raise FormatError("Lattice JSON must be an object")
        has_elements = "elements" in data
        has_poset = "join_irreducibles" in data
        if has_elements == has_poset:
            raise FormatError("Exactly one of 'elements' / 'join_irreducibles' must be present")
        if has_elements:
            if "universe" not in data:
                raise FormatError("Lattice JSON with 'elements' requires 'universe'")
            universe = Universe(tuple(data["universe"]))
            return cls.from_subsets(universe, data["elements"], precompute)
        poset_data = data["join_irreducibles"]
        try:
            poset = Poset(poset_data["elems"], [tuple(pair) for pair in poset_data.get("leq", [])])
        except (KeyError, TypeError, ValueError) as e:
            raise FormatError(f"Malformed join_irreducibles: {e}") from e
        return cls.from_join_irreducibles(poset, precompute)

    def to_json(self) -> Dict[str, Any]:
        return {
            "universe": list(self.universe.atoms),
            "elements": {self.name(e): list(self.universe.atoms_of(e.bits)) for e in self.elements},
        }

    # === Membership and names ===

    def __contains__(self, x: object) -> bool:
        return isinstance(x, LatticeElement) and x.size == self.size and x.bits in self._by_bits

    def __iter__(self) -> Iterator[LatticeElement]:
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Lattice):
            return NotImplemented
        return self is other or (self.universe == other.universe and
                                 set(self._by_bits) == set(other._by_bits))

    def __hash__(self) -> int:
        return hash((self.universe, frozenset(self._by_bits)))

    def __repr__(self):
        return f"Lattice(|U|={self.size}, elements=[{', '.join(self.name(e) for e in self.elements)}])"

    def require(self, *xs: LatticeElement) -> None:
        for x in xs:
            if x not in self:
                label = self._render(x.bits) if isinstance(x, LatticeElement) else repr(x)
                raise ForeignElement(f"{label} is not an element of the lattice", element=label)

    def _render(self, bits: int) -> str:
        if bits in self._names:
            return self._names[bits]
        return "{" + ",".join(self.universe.atoms_of(bits)) + "}"

    def name(self, x: LatticeElement) -> str:
        """Display name of a carrier element or raw subset."""
        return self._render(x.bits)

    def element(self, name: str) -> LatticeElement:
        """Resolve a display name, or the ``{a,b}`` atom-set notation, to a carrier element."""
        if name in self._by_name:
            return self._by_name[name]
        text = name.strip()
        if text.startswith("{") and text.endswith("}"):
            atoms = [a.strip() for a in text[1:-1].split(",") if a.strip()]
            x = self.subset(atoms)
            if x.bits in self._by_bits:
                return self._by_bits[x.bits]
        raise UnknownName(f"Unknown lattice element: {name}", name=name)

    def subset(self, atoms: Iterable[str]) -> LatticeElement:
        """Raw subset of U from atom names (not necessarily in the carrier)."""
        return LatticeElement(self.universe.mask(atoms), self.size)

    def index(self, x: LatticeElement) -> int:
        self.require(x)
        return self._index[x.bits]

    def _element(self, bits: int) -> LatticeElement:
        return self._by_bits[bits]

    # === Order and operations ===

    @property
    def bottom(self) -> LatticeElement:
        return self.elements[0]

    @property
    def top(self) -> LatticeElement:
        return self.elements[-1]

    def leq(self, a: LatticeElement, b: LatticeElement) -> bool:
        self.require(a, b)
        return a.bits & ~b.bits == 0

    def meet(self, a: LatticeElement, b: LatticeElement) -> LatticeElement:
        self.require(a, b)
        return self._by_bits[a.bits & b.bits]

    def join(self, a: LatticeElement, b: LatticeElement) -> LatticeElement:
        self.require(a, b)
        return self._by_bits[a.bits | b.bits]

    def big_meet(self, xs: Iterable[LatticeElement]) -> LatticeElement:
        """Meet of any number of elements; the empty meet is 1."""
        return reduce(self.meet, xs, self.top)

    def big_join(self, xs: Iterable[LatticeElement]) -> LatticeElement:
        """Join of any number of elements; the empty join is 0."""
        return reduce(self.join, xs, self.bottom)

    def complement(self, s: LatticeElement) -> LatticeElement:
        """U minus S, as a raw subset (it need not lie in the carrier)."""
        return LatticeElement(self.universe.full_mask & ~s.bits, self.size)

    def closure(self, s: LatticeElement) -> LatticeElement:
        """Least carrier element containing the raw subset S."""
        return self._by_bits[self.closure_system.closure(self._raw(s))]

    def interior(self, s: LatticeElement) -> LatticeElement:
        """Greatest carrier element contained in the raw subset S."""
        return self._by_bits[self.closure_system.interior(self._raw(s))]

    def _raw(self, s: LatticeElement) -> int:
        if s.size != self.size:
            raise LatticeError(f"Subset of size {s.size} does not match universe size {self.size}")
        return s.bits

    def median(self, a: LatticeElement, b: LatticeElement, c: LatticeElement) -> LatticeElement:
        """med(a, b, c) = (a ∧ b) ∨ (b ∧ c) ∨ (c ∧ a)."""
        self.require(a, b, c)
        return self._by_bits[(a.bits & b.bits) | (b.bits & c.bits) | (c.bits & a.bits)]

    def interval(self, lo: LatticeElement, hi: LatticeElement) -> List[LatticeElement]:
        """All carrier elements y with lo ≤ y ≤ hi, in canonical order."""
        self.require(lo, hi)
        return [y for y in self.elements if lo.bits & ~y.bits == 0 and y.bits & ~hi.bits == 0]

    # === Structure ===

    def is_chain(self) -> bool:
        if self._is_chain is None:
            self._is_chain = all(
                a.bits & ~b.bits == 0 for a, b in zip(self.elements, self.elements[1:])
            )
        return self._is_chain

    def join_irreducibles(self) -> List[LatticeElement]:
        """Non-zero elements that are not the join of the elements strictly below them."""
        result = []
        for x in self.elements[1:]:
            below = 0
            for y in self.elements:
                if y.bits != x.bits and y.bits & ~x.bits == 0:
                    below |= y.bits
            if below != x.bits:
                result.append(x)
        return result

    def join_irreducible_poset(self) -> Poset:
        """The poset of join-irreducibles ordered by inclusion (Birkhoff round trip)."""
        irreducibles = self.join_irreducibles()
        names = [self.name(x) for x in irreducibles]
        pairs = [(self.name(a), self.name(b)) for a in irreducibles for b in irreducibles
                 if a.bits != b.bits and a.bits & ~b.bits == 0]
        return Poset(names, pairs)
