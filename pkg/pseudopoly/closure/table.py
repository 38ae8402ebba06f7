"""
pseudopoly Table Closure
========================
Closure and interior precomputed for every subset of the universe.

Both tables are built by doubling over the atoms, using the identities
cl(S1 ∪ S2) = cl(S1) ∨ cl(S2) and int(S1 ∩ S2) = int(S1) ∧ int(S2). Only the
closures of singletons and the interiors of co-singletons need a scan.
"""

import logging
from typing import Sequence

import numpy as np

from ..errors import LatticeError
from .interfaces import ClosureSystem
from .scan import ScanClosure

logger = logging.getLogger(__name__)

MAX_TABLE_SIZE = 16


class TableClosure(ClosureSystem):
    """Closure system backed by two numpy lookup tables of length 2^|U|."""

    def __init__(self, carrier: Sequence[int], size: int):
        if size > MAX_TABLE_SIZE:
            raise LatticeError(
                f"Precomputed closure tables support |U| <= {MAX_TABLE_SIZE}, got {size}",
                universe_size=size,
            )
        super().__init__(name="table", carrier=carrier, size=size)
        self._cl = np.zeros(1, dtype=np.uint32)
        self._int = np.zeros(1, dtype=np.uint32)
        self._build()

    def _build(self) -> None:
        scan = ScanClosure(self.carrier, self.size)
        cl = np.array([scan.closure(0)], dtype=np.uint32)
        interior = np.array([self.full], dtype=np.uint32)
        for i in range(self.size):
            # indices with bit i set form the upper half after doubling
            cl = np.concatenate([cl, cl | np.uint32(scan.closure(1 << i))])
            interior = np.concatenate([interior & np.uint32(scan.interior(self.full & ~(1 << i))), interior])
        self._cl = cl
        self._int = interior
        logger.debug(f"Closure tables built for |U|={self.size} ({len(cl)} entries each)")

    def closure(self, bits: int) -> int:
        return int(self._cl[bits])

    def interior(self, bits: int) -> int:
        return int(self._int[bits])
