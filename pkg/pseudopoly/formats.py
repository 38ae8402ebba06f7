"""
pseudopoly Input Formats
========================
Loaders for the file formats the CLI consumes:

* lattice JSON: ``{"universe": [...], "elements": {"B": [], ...}}`` or
  ``{"join_irreducibles": {"elems": [...], "leq": [[a, b], ...]}}``
* domain JSON: ``{"domains": [{"name": "X1", "elements": [...], "zero": ..,
  "one": .., "ordered": false}], "lattice": <lattice JSON or path>}``
* table CSV: header ``x1,...,xn,f`` and one row per tuple
* factorization JSON: ``{"phi": {"X1": {"A1": "B", ...}}, "p": {"arity": n, "coeffs": {...}}}``

Relative paths inside a JSON file resolve against that file's directory.
"""

import csv
import json
import logging
from pathlib import Path
from typing import Any, List, Mapping, Optional, Tuple, Union

from .errors import FormatError
from .factorization import Factorization
from .lattice import Lattice
from .table import Domain, FunctionTable

logger = logging.getLogger('PseudoPoly.Formats')

PathLike = Union[str, Path]


def read_json(path: PathLike) -> Any:
    path = Path(path)
    try:
        return json.loads(path.read_text(encoding='utf-8'))
    except FileNotFoundError:
        raise FormatError(f"File not found: {path}", path=str(path)) from None
    except (OSError, json.JSONDecodeError) as e:
        raise FormatError(f"Cannot read JSON from {path}: {e}", path=str(path)) from e


def load_lattice(path: PathLike, precompute: Union[bool, str] = "auto") -> Lattice:
    path = Path(path)
    lattice = Lattice.from_json(read_json(path), base_dir=path.parent, precompute=precompute)
    logger.info(f"Loaded lattice with {len(lattice)} elements from {path}")
    return lattice


def _parse_domain(entry: Mapping[str, Any]) -> Domain:
    try:
        return Domain(
            name=str(entry["name"]),
            elements=tuple(entry["elements"]),
            zero=entry.get("zero"),
            one=entry.get("one"),
            ordered=bool(entry.get("ordered", False)),
        )
    except (KeyError, TypeError) as e:
        raise FormatError(f"Malformed domain entry: {e}", entry=str(entry)) from e


def load_domains(path: PathLike, lattice: Optional[Lattice] = None,
                 precompute: Union[bool, str] = "auto") -> Tuple[List[Domain], Lattice]:
    """Domains and the codomain lattice (an explicit ``lattice`` overrides the file's)."""
    path = Path(path)
    data = read_json(path)
    if not isinstance(data, Mapping) or "domains" not in data:
        raise FormatError(f"{path}: domain JSON needs a 'domains' list", path=str(path))
    domains = [_parse_domain(entry) for entry in data["domains"]]
    if lattice is None:
        if "lattice" not in data:
            raise FormatError(f"{path}: no lattice given in the domain file or on the command line",
                              path=str(path))
        lattice = Lattice.from_json(data["lattice"], base_dir=path.parent, precompute=precompute)
    return domains, lattice


def load_table(path: PathLike, domains: List[Domain], lattice: Lattice) -> FunctionTable:
    path = Path(path)
    try:
        with open(path, newline='', encoding='utf-8') as f:
            rows = [row for row in csv.reader(f) if row and any(cell.strip() for cell in row)]
    except FileNotFoundError:
        raise FormatError(f"File not found: {path}", path=str(path)) from None
    except OSError as e:
        raise FormatError(f"Cannot read CSV {path}: {e}", path=str(path)) from e
    if not rows:
        raise FormatError(f"{path}: empty table", path=str(path))
    header, body = rows[0], rows[1:]
    width = len(domains) + 1
    if len(header) != width:
        raise FormatError(f"{path}: header has {len(header)} columns, expected {width}",
                          path=str(path), header=header)
    parsed = []
    for lineno, row in enumerate(body, start=2):
        if len(row) != width:
            raise FormatError(f"{path}:{lineno}: expected {width} columns, got {len(row)}",
                              path=str(path), line=lineno)
        cells = [cell.strip() for cell in row]
        parsed.append((cells[:-1], cells[-1]))
    table = FunctionTable.from_rows(domains, lattice, parsed)
    logger.info(f"Loaded table with {len(parsed)} rows from {path}")
    return table


def load_instance(domains_path: PathLike, table_path: PathLike,
                  lattice_path: Optional[PathLike] = None,
                  precompute: Union[bool, str] = "auto") -> FunctionTable:
    lattice = load_lattice(lattice_path, precompute) if lattice_path else None
    domains, lattice = load_domains(domains_path, lattice, precompute)
    return load_table(table_path, domains, lattice)


def load_factorization(path: PathLike, f: FunctionTable) -> Factorization:
    """Accepts a bare factorization object or a report entry with the same keys."""
    data = read_json(path)
    if not isinstance(data, Mapping):
        raise FormatError(f"{path}: factorization JSON must be an object", path=str(path))
    return Factorization.from_json(data, f)
