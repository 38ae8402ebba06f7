"""
pseudopoly Scan Closure
=======================
Closure and interior computed by a linear scan over the carrier at query
time. Always available; the reference every other implementation must match.
"""

import logging
from typing import Sequence

from .interfaces import ClosureSystem

logger = logging.getLogger(__name__)


class ScanClosure(ClosureSystem):
    """Closure system answering every query by scanning the carrier."""

    def __init__(self, carrier: Sequence[int], size: int):
        super().__init__(name="scan", carrier=carrier, size=size)
        logger.debug(f"Scan closure created over {len(self.carrier)} elements")

    def closure(self, bits: int) -> int:
        # carrier is closed under intersection, so the meet of all
        # supersets is itself the least superset
        result = self.full
        for y in self.carrier:
            if bits & ~y == 0:
                result &= y
        return result

    def interior(self, bits: int) -> int:
        result = 0
        for y in self.carrier:
            if y & ~bits == 0:
                result |= y
        return result
