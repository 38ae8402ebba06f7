# __init__.py for pseudopoly.closure package

from .interfaces import ClosureSystem
from .scan import ScanClosure
from .table import TableClosure, MAX_TABLE_SIZE
from .chain import ChainClosure
from .factory import ClosureFactory

__all__ = ['ClosureSystem', 'ScanClosure', 'TableClosure', 'ChainClosure', 'ClosureFactory', 'MAX_TABLE_SIZE']
