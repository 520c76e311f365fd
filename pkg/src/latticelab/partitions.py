"""Colored partition numbers and root multiplicities.

``p_k(m)`` is the coefficient of ``q^m`` in ``prod_{j >= 1} (1 - q^j)^(-k)``.
The multiplicity of a lattice vector of norm ``s`` in an even self-dual
lattice of rank ``d`` is ``p_{d-1}(1 - s/2) - p_{d-1}(-s/2)``.
"""
from __future__ import annotations

import threading
from math import comb
from typing import NamedTuple

from .errors import NotEvenSelfDual
from .lattice import GramLattice, classify, norm

__all__ = [
    "PartitionTable",
    "colored_partitions",
    "root_multiplicity",
    "is_algebra_root",
    "RootStatus",
]


class PartitionTable:
    """Memoised coefficients of ``prod (1 - q^j)^(-k)`` for one ``k``.

    The table is extended by recomputing the truncated product to a larger
    order; readers only ever see a fully built list, and writers are
    serialised by a lock.
    """

    def __init__(self, k: int):
        if k < 1:
            raise ValueError("the number of colours must be at least 1")
        self.k = k
        self._values: list[int] = [1]
        self._lock = threading.Lock()

    def _expand(self, order: int) -> list[int]:
        k = self.k
        series = [0] * (order + 1)
        series[0] = 1
        for j in range(1, order + 1):
            # (1 - q^j)^(-k) = sum_r C(k + r - 1, r) q^(j r)
            factor = [comb(k + r - 1, r) for r in range(order // j + 1)]
            new = [0] * (order + 1)
            for i, c in enumerate(series):
                if not c:
                    continue
                for r, f in enumerate(factor):
                    e = i + j * r
                    if e > order:
                        break
                    new[e] += c * f
            series = new
        return series

    def __getitem__(self, m: int) -> int:
        if m < 0:
            return 0
        values = self._values
        if m < len(values):
            return values[m]
        with self._lock:
            if m >= len(self._values):
                # grow geometrically so repeated queries stay cheap
                order = max(m, 2 * len(self._values))
                self._values = self._expand(order)
            return self._values[m]


_tables: dict[int, PartitionTable] = {}
_tables_lock = threading.Lock()


def _table(k: int) -> PartitionTable:
    with _tables_lock:
        table = _tables.get(k)
        if table is None:
            table = _tables[k] = PartitionTable(k)
        return table


def colored_partitions(k: int, m: int) -> int:
    """Number of partitions of ``m`` into parts carrying one of ``k`` colours; 0 for ``m < 0``."""
    if k < 1:
        raise ValueError("the number of colours must be at least 1")
    return _table(k)[m]


def root_multiplicity(rank_d: int, normsq: int) -> int:
    if rank_d < 2:
        raise ValueError("rank must be at least 2")
    if normsq % 2:
        raise ValueError("norm must be even")
    half = normsq // 2
    return colored_partitions(rank_d - 1, 1 - half) - colored_partitions(rank_d - 1, -half)


class RootStatus(NamedTuple):
    is_root: bool
    multiplicity: int


def is_algebra_root(L: GramLattice, v) -> RootStatus:
    """Whether the non-zero ``v`` carries a positive multiplicity, i.e. has norm at most 2."""
    cls = classify(L)
    if not cls.is_even or cls.abs_det != 1:
        raise NotEvenSelfDual("multiplicities are defined for even self-dual lattices only")
    if not any(v):
        return RootStatus(False, 0)
    mult = root_multiplicity(L.rank, norm(L, v))
    return RootStatus(mult > 0, mult)
