"""Sparse row reduction over the coefficient field."""
import logging
from typing import Dict, List, Optional

from nicholsbench.core.coeff import Scalar

logger = logging.getLogger(__name__)

SparseVector = Dict[int, Scalar]


def _axpy(target: SparseVector, factor: Scalar, row: SparseVector):
    """target -= factor * row, dropping zeros."""
    for column, value in row.items():
        updated = target.get(column)
        updated = -(factor * value) if updated is None else updated - factor * value
        if updated.is_zero:
            target.pop(column, None)
        else:
            target[column] = updated


class EchelonBasis:
    """Rows in reduced row echelon form, kept reduced as rows are added.

    Each row is stored with its pivot (the least column index in it)
    normalized to 1, and no row has an entry in another row's pivot column.
    """

    def __init__(self):
        self._rows: Dict[int, SparseVector] = {}

    @property
    def rank(self) -> int:
        return len(self._rows)

    @property
    def pivots(self) -> List[int]:
        return sorted(self._rows)

    def row(self, pivot: int) -> SparseVector:
        return dict(self._rows[pivot])

    def reduce(self, vector: SparseVector) -> SparseVector:
        """Remainder of ``vector`` modulo the row space; it has no pivot entries."""
        result = dict(vector)
        for pivot in sorted(column for column in vector if column in self._rows):
            factor = result.get(pivot)
            if factor is not None:
                _axpy(result, factor, self._rows[pivot])
        return result

    def add(self, vector: SparseVector) -> Optional[int]:
        """Add a vector to the span.

        Returns:
            The new pivot column, or None if the vector was dependent
        """
        remainder = self.reduce(vector)
        if not remainder:
            return None
        pivot = min(remainder)
        lead = remainder[pivot]
        normalized = {column: value / lead for column, value in remainder.items()}
        for other_pivot, other in self._rows.items():
            factor = other.get(pivot)
            if factor is not None:
                _axpy(other, factor, normalized)
        self._rows[pivot] = normalized
        return pivot
