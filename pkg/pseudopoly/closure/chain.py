"""
pseudopoly Chain Closure
========================
Closed-form closure and interior when the carrier is a chain
∅ = y_0 ⊂ y_1 ⊂ ... ⊂ y_m = U.

Each atom gets the level at which it first appears. Then cl(S) is the chain
member at the highest level of an atom of S, and int(S) is the member just
below the lowest level of an atom missing from S. For the maximal chain
[0] ⊂ [1] ⊂ ... ⊂ [m] this is cl(S) = [max S], int(S) = [min S̄ - 1].
"""

import logging
from typing import List, Sequence

from ..errors import NotAChain
from .interfaces import ClosureSystem

logger = logging.getLogger(__name__)


class ChainClosure(ClosureSystem):
    """Closure system for totally ordered carriers."""

    def __init__(self, carrier: Sequence[int], size: int):
        chain = sorted(carrier, key=lambda y: (bin(y).count("1"), y))
        for lower, upper in zip(chain, chain[1:]):
            if lower & ~upper:
                raise NotAChain(
                    "Carrier is not totally ordered",
                    witness=[bin(lower), bin(upper)],
                )
        super().__init__(name="chain", carrier=chain, size=size)
        self.levels: List[int] = [0] * size
        for atom in range(size):
            bit = 1 << atom
            self.levels[atom] = next(k for k, y in enumerate(chain) if y & bit)
        logger.debug(f"Chain closure created: {len(chain)} levels over {size} atoms")

    def closure_level(self, bits: int) -> int:
        level = 0
        for atom in range(self.size):
            if bits >> atom & 1 and self.levels[atom] > level:
                level = self.levels[atom]
        return level

    def interior_level(self, bits: int) -> int:
        top = len(self.carrier) - 1
        level = top
        for atom in range(self.size):
            if not bits >> atom & 1 and self.levels[atom] - 1 < level:
                level = self.levels[atom] - 1
        return level

    def closure(self, bits: int) -> int:
        return self.carrier[self.closure_level(bits)]

    def interior(self, bits: int) -> int:
        return self.carrier[self.interior_level(bits)]
