"""Lexicographic tables of multi-indices with bounded total degree.

A space of polyanalytic type ``m`` over ``C^n`` decomposes along the
multi-indices ``k`` in ``N_0^n`` with ``|k| = k_1 + ... + k_n <= m - 1``.
This module enumerates that index set in lexicographic order, exposes the
resulting position bijection, and computes its size

    d(n, m) = C(n + m - 1, n),

which is the vector-space dimension showing up in kernel normalizations and
in the width of matrix symbols.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterator, Sequence


def _validate_nm(n: int, m: int) -> None:
    if not isinstance(n, int) or not isinstance(m, int):
        raise TypeError(f"n and m must be integers, got n={n!r}, m={m!r}")
    if n < 1 or m < 1:
        raise ValueError(f"n and m must be positive, got n={n}, m={m}")


def dimension(n: int, m: int) -> int:
    """Number of multi-indices k in N_0^n with |k| <= m - 1.

    Equals the binomial coefficient C(n + m - 1, n).  Exact for any
    positive n, m (Python integers never wrap around); the library as a
    whole is exercised for n + m <= 40.
    """
    _validate_nm(n, m)
    return math.comb(n + m - 1, n)


def _enumerate(n: int, budget: int) -> Iterator[tuple[int, ...]]:
    # Recursive descent emits the indices in lexicographic order without
    # materializing the full m**n cube.
    if n == 0:
        yield ()
        return
    for head in range(budget + 1):
        for tail in _enumerate(n - 1, budget - head):
            yield (head,) + tail


@dataclass(frozen=True)
class IndexTable:
    """Ordered multi-index set ``{k : |k| <= m - 1}`` for fixed n, m.

    ``indices`` is lexicographically sorted, so positions are stable across
    runs.  ``phi`` maps a 1-based position to its multi-index and
    ``position`` inverts it; both directions are total on the table.
    """

    n: int
    m: int
    indices: tuple[tuple[int, ...], ...]
    _pos: dict[tuple[int, ...], int] = field(repr=False, compare=False, default_factory=dict)

    def __post_init__(self) -> None:
        lookup = {k: j for j, k in enumerate(self.indices, start=1)}
        object.__setattr__(self, "_pos", lookup)

    @property
    def d(self) -> int:
        return len(self.indices)

    def phi(self, j: int) -> tuple[int, ...]:
        """Multi-index at 1-based position j."""
        if not 1 <= j <= self.d:
            raise IndexError(f"position {j} outside 1..{self.d}")
        return self.indices[j - 1]

    def position(self, k: Sequence[int]) -> int:
        """1-based position of multi-index k; raises KeyError if absent."""
        key = tuple(int(c) for c in k)
        try:
            return self._pos[key]
        except KeyError:
            raise KeyError(f"{key} is not in the table (n={self.n}, m={self.m})") from None

    def __len__(self) -> int:
        return len(self.indices)

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        return iter(self.indices)


def build_index_table(n: int, m: int) -> IndexTable:
    """Enumerate all k in N_0^n with |k| <= m - 1 in lexicographic order."""
    _validate_nm(n, m)
    indices = tuple(_enumerate(n, m - 1))
    return IndexTable(n=n, m=m, indices=indices)
