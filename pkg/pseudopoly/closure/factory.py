"""
pseudopoly Closure Factory
==========================
Creates the closure system for a carrier based on configuration. A request
that cannot be honoured (table too large, carrier not a chain) falls back to
the scan implementation with a warning.
"""

import logging
from typing import Sequence, Union

from ..errors import LatticeError, NotAChain
from .chain import ChainClosure
from .interfaces import ClosureSystem
from .scan import ScanClosure
from .table import MAX_TABLE_SIZE, TableClosure

logger = logging.getLogger(__name__)

AUTO_TABLE_SIZE = 8

Precompute = Union[bool, str]


class ClosureFactory:
    """Factory class for closure systems with fallback to the scan."""

    @staticmethod
    def create(carrier: Sequence[int], size: int, precompute: Precompute = "auto") -> ClosureSystem:
        """Create a closure system.

        ``precompute`` is ``"auto"`` (table when |U| <= AUTO_TABLE_SIZE),
        ``True`` (table up to |U| <= MAX_TABLE_SIZE) or ``False`` (scan).
        """
        if precompute == "auto":
            use_table = size <= AUTO_TABLE_SIZE
        elif precompute in (True, "true", "table"):
            use_table = True
        elif precompute in (False, "false", "scan"):
            use_table = False
        else:
            raise LatticeError(f"Invalid closure precompute setting: {precompute!r}")

        if use_table:
            if size > MAX_TABLE_SIZE:
                logger.warning(
                    f"Closure table requested for |U|={size} > {MAX_TABLE_SIZE}, falling back to scan"
                )
                return ScanClosure(carrier, size)
            return TableClosure(carrier, size)
        return ScanClosure(carrier, size)

    @staticmethod
    def create_chain(carrier: Sequence[int], size: int, fallback: bool = False) -> ClosureSystem:
        """Create the closed-form chain closure; optionally fall back to the scan."""
        try:
            return ChainClosure(carrier, size)
        except NotAChain:
            if not fallback:
                raise
            logger.warning("Carrier is not a chain, using scan closure instead")
            return ScanClosure(carrier, size)
