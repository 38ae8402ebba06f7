"""
pseudopoly Exceptions
=====================
Single exception hierarchy for the library. Every error carries the names
and values needed to explain it, and can be rendered as a JSON-friendly
dictionary for the CLI diagnostics.
"""

from typing import Any, Dict, Optional


class PseudoPolyError(Exception):
    """Base class for all pseudopoly errors."""

    code = "error"

    def __init__(self, message: str, **context: Any):
        super().__init__(message)
        self.message = message
        self.context = context

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {"error": self.code, "message": self.message}
        data.update(self.context)
        return data


class UnknownName(PseudoPolyError):
    """A name does not resolve against the lattice, universe or a domain."""

    code = "unknown_name"


# === Lattice errors ===

class LatticeError(PseudoPolyError):
    code = "lattice_error"


class DuplicateAtom(LatticeError):
    code = "duplicate_atom"


class NotClosed(LatticeError):
    """A union or intersection of two members is missing from the family."""

    code = "not_closed"

    def __init__(self, a: str, b: str, op: str):
        super().__init__(f"Family is not closed: {a} {op} {b} is missing", a=a, b=b, op=op)


class MissingBounds(LatticeError):
    code = "missing_bounds"


class NotAPartialOrder(LatticeError):
    code = "not_a_partial_order"


class ForeignElement(LatticeError):
    code = "foreign_element"


class BoundsNotOrdered(LatticeError):
    code = "bounds_not_ordered"


class NotAChain(LatticeError):
    code = "not_a_chain"


# === Polynomial errors ===

class PolynomialError(PseudoPolyError):
    code = "polynomial_error"


class ArityMismatch(PolynomialError):
    code = "arity_mismatch"


class ArityTooLarge(PolynomialError):
    code = "arity_too_large"


# === Function table errors ===

class TableError(PseudoPolyError):
    code = "table_error"


class MissingTuple(TableError):
    code = "missing_tuple"


class DuplicateTuple(TableError):
    code = "duplicate_tuple"


class BoundsMissing(TableError):
    code = "bounds_missing"


class AmbiguousBounds(TableError):
    code = "ambiguous_bounds"


# === Factorization errors ===

class FactorizationError(PseudoPolyError):
    code = "factorization_error"


class BoundaryViolated(FactorizationError):
    code = "boundary_violated"


class BC1Violated(FactorizationError):
    code = "bc1_violated"


class PhiNotAdmissible(FactorizationError):
    code = "phi_not_admissible"


class NotPseudoPolynomial(FactorizationError):
    code = "not_pseudo_polynomial"


class PreconditionViolated(FactorizationError):
    code = "precondition_violated"


class InconsistentVerdict(FactorizationError):
    """The 2^n-point shortcut and the exhaustive check disagree."""

    code = "inconsistent_verdict"


# === Enumeration / oracle errors ===

class CapExceeded(PseudoPolyError):
    code = "cap_exceeded"

    def __init__(self, message: str, cap: Optional[int] = None, **context: Any):
        super().__init__(message, cap=cap, **context)
        self.cap = cap


class OracleLimitExceeded(PseudoPolyError):
    code = "oracle_limit_exceeded"


# === Input formats ===

class FormatError(PseudoPolyError):
    code = "format_error"
