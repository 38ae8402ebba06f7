"""
pseudopoly Closure System Interface
===================================
Abstract base class for the closure/interior operators a lattice embedded in
a power set induces. Implementations work on raw bit masks over the universe
so they can be swapped at runtime without touching the lattice code.
"""

from abc import ABC, abstractmethod
from typing import Any, Dict, Sequence
import logging

logger = logging.getLogger(__name__)


class ClosureSystem(ABC):
    """Abstract base class for closure/interior operators on a carrier."""

    def __init__(self, name: str, carrier: Sequence[int], size: int):
        self.name = name
        self.carrier = tuple(carrier)
        self.size = size
        self.full = (1 << size) - 1

    @abstractmethod
    def closure(self, bits: int) -> int:
        """Least carrier member containing ``bits``."""
        pass

    @abstractmethod
    def interior(self, bits: int) -> int:
        """Greatest carrier member contained in ``bits``."""
        pass

    def describe(self) -> Dict[str, Any]:
        return {"implementation": self.name, "universe_size": self.size, "carrier_size": len(self.carrier)}
