"""Multi-crossing sliced link diagrams, their grid realizations, and the
polynomial certificates tying the two together."""

from .errors import GridweaveError, Issue, ValidityReport
from .tangle import ElementaryTangle, L, R, RAY

__all__ = [
    "ElementaryTangle",
    "GridweaveError",
    "Issue",
    "L",
    "R",
    "RAY",
    "ValidityReport",
]

__version__ = "0.1.0"
