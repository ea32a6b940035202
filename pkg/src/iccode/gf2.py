"""GF(2) linear algebra on int bitsets."""

from __future__ import annotations

from typing import Dict, Iterable


class EchelonBasis:
    """Incrementally reduced row basis keyed by leading bit."""

    def __init__(self, rows: Iterable[int] = ()):
        self._pivots: Dict[int, int] = {}
        for r in rows:
            self.add(r)

    def reduce(self, vec: int) -> int:
        while vec:
            top = vec.bit_length() - 1
            row = self._pivots.get(top)
            if row is None:
                return vec
            vec ^= row
        return 0

    def add(self, vec: int) -> bool:
        """Insert ``vec``; returns False if it was already in the span."""
        vec = self.reduce(vec)
        if not vec:
            return False
        self._pivots[vec.bit_length() - 1] = vec
        return True

    def contains(self, vec: int) -> bool:
        return self.reduce(vec) == 0

    @property
    def rank(self) -> int:
        return len(self._pivots)


def gf2_rank(rows: Iterable[int]) -> int:
    return EchelonBasis(rows).rank


def in_span(vec: int, rows: Iterable[int]) -> bool:
    return EchelonBasis(rows).contains(vec)
