"""
Shared fixtures: the airline example and small chain instances, plus generators
for the exhaustive and seeded property sweeps.
"""

import sys
from itertools import product
from pathlib import Path

import pytest

# Add pseudopoly to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from pseudopoly.formats import load_instance, load_lattice  # noqa: E402
from pseudopoly.lattice import Lattice, Poset, Universe  # noqa: E402
from pseudopoly.polynomial import PolynomialFn  # noqa: E402
from pseudopoly.table import Domain, FunctionTable  # noqa: E402

DATA_DIR = Path(__file__).parent.parent / "data" / "airline"

# f(x1, x2) by rows A1..A4 and columns E, F
AIRLINE_ROWS = [
    (("A1", "E"), "B"), (("A1", "F"), "B"),
    (("A2", "E"), "B"), (("A2", "F"), "D"),
    (("A3", "E"), "N"), (("A3", "F"), "G"),
    (("A4", "E"), "N"), (("A4", "F"), "V"),
]


def airline_domains(x1_bounds=("A1", "A4"), x2_bounds=("E", "F")):
    return [
        Domain("X1", ("A1", "A2", "A3", "A4"), *x1_bounds, ordered=True),
        Domain("X2", ("E", "F"), *x2_bounds, ordered=True),
    ]


def chain_table(lattice, rows, x1=("a", "b", "c"), x2=("u", "w")):
    domains = [Domain("X1", x1, x1[0], x1[-1], ordered=True), Domain("X2", x2, x2[0], x2[-1], ordered=True)]
    return FunctionTable.from_rows(domains, lattice, rows)


def grid_domains(sizes):
    """Chain-ordered domains X1, X2, ... with the first element as zero and the last as one."""
    domains = []
    for k, n in enumerate(sizes):
        elements = tuple(f"x{k + 1}_{i}" for i in range(n))
        domains.append(Domain(f"X{k + 1}", elements, elements[0], elements[-1], ordered=True))
    return domains


def all_tables(lattice, sizes=(2, 2)):
    """Every table on the grid, values in canonical order."""
    domains = grid_domains(sizes)
    points = list(product(*(d.elements for d in domains)))
    for values in product(lattice.elements, repeat=len(points)):
        yield FunctionTable(domains, lattice, dict(zip(points, values)))


def random_table(lattice, rng, sizes=(3, 3)):
    return FunctionTable.from_function(grid_domains(sizes), lattice, lambda x: rng.choice(lattice.elements))


def monotone_table(lattice, rng, sizes=(3, 3)):
    """Order-preserving table: each value joins random draws at and below its point."""
    domains = grid_domains(sizes)
    draws = {idx: rng.choice(lattice.elements) for idx in product(*(range(n) for n in sizes))}

    def value(x):
        idx = tuple(d.index(a) for d, a in zip(domains, x))
        return lattice.big_join(v for j, v in draws.items() if all(i <= t for i, t in zip(j, idx)))

    return FunctionTable.from_function(domains, lattice, value)


def composed_table(lattice, rng, sizes=(3, 3)):
    """p ∘ φ for a random polynomial p and random maps with φk(0) ≤ φk ≤ φk(1)."""
    domains = grid_domains(sizes)
    n = len(domains)
    p = PolynomialFn.from_raw_coeffs(lattice, n, {mask: rng.choice(lattice.elements) for mask in range(1 << n)})
    rows = []
    for d in domains:
        low = rng.choice(lattice.elements)
        high = rng.choice([y for y in lattice.elements if low <= y])
        middle = lattice.interval(low, high)
        rows.append([low] + [rng.choice(middle) for _ in d.elements[2:]] + [high])
    return FunctionTable.from_function(
        domains, lattice, lambda x: p.evaluate([rows[k][d.index(a)] for k, (d, a) in enumerate(zip(domains, x))]))


def sublattices(k):
    """Every ∪/∩-closed family of subsets of {1..k} that contains ∅ and U."""
    universe = Universe(tuple(str(i) for i in range(1, k + 1)))
    full = universe.full_mask
    inner = list(range(1, full))
    for choice in range(1 << len(inner)):
        family = {0, full} | {m for i, m in enumerate(inner) if choice >> i & 1}
        if all(a | b in family and a & b in family for a in family for b in family):
            yield Lattice(universe, family)


def natural_posets(n):
    """Every naturally labelled partial order on p0..p(n-1): pi ≤ pj only if i ≤ j."""
    elems = [f"p{i}" for i in range(n)]
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    seen = set()
    for choice in range(1 << len(pairs)):
        relation = {pair for t, pair in enumerate(pairs) if choice >> t & 1}
        grown = True
        while grown:
            closure = relation | {(a, d) for a, b in relation for c, d in relation if b == c}
            grown = closure != relation
            relation = closure
        key = frozenset(relation)
        if key in seen:
            continue
        seen.add(key)
        yield Poset(elems, [(elems[a], elems[b]) for a, b in sorted(relation)])


@pytest.fixture
def data_dir():
    return DATA_DIR


@pytest.fixture
def airline_lattice():
    return load_lattice(DATA_DIR / "lattice.json")


@pytest.fixture
def airline(airline_lattice):
    """The airline table with declared designated elements A1/A4 and E/F."""
    return FunctionTable.from_rows(airline_domains(), airline_lattice, AIRLINE_ROWS)


@pytest.fixture
def airline_from_files():
    return load_instance(DATA_DIR / "domains.json", DATA_DIR / "table.csv")


@pytest.fixture
def airline_swapped(airline_lattice):
    """Airline table with the designated elements of X1 swapped."""
    return FunctionTable.from_rows(airline_domains(x1_bounds=("A4", "A1")), airline_lattice, AIRLINE_ROWS)


@pytest.fixture
def chain3():
    """The 3-element chain 0 < 1 < 2."""
    return Lattice.chain(2)


@pytest.fixture
def chain_meet(chain3):
    """f = φ1(x1) ∧ φ2(x2) with φ1 = (0, 1, 2), φ2 = (1, 2) over the 3-chain."""
    return chain_table(chain3, [
        (("a", "u"), "0"), (("a", "w"), "0"),
        (("b", "u"), "1"), (("b", "w"), "1"),
        (("c", "u"), "1"), (("c", "w"), "2"),
    ])


@pytest.fixture
def chain_crossing(chain3):
    """Satisfies the boundary condition but f(b, w) rises above f(b, u), which falls."""
    return chain_table(chain3, [
        (("a", "u"), "0"), (("a", "w"), "0"),
        (("b", "u"), "1"), (("b", "w"), "2"),
        (("c", "u"), "2"), (("c", "w"), "2"),
    ])


@pytest.fixture
def config_dir(tmp_path):
    return tmp_path / "config"
