"""Integer partitions indexing the coordinate patterns of critical points."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from math import comb, factorial, prod


@dataclass(frozen=True, order=True)
class Partition:
    """A weakly decreasing tuple of positive parts.

    ``alpha`` lists how often each distinct part value repeats, largest value first:
    ``(4, 3, 3, 3, 2, 1, 1)`` has ``alpha == (1, 3, 1, 2)``.
    """

    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(int(a) for a in self.parts)
        if not parts or any(a < 1 for a in parts):
            raise ValueError(f"partition parts must be positive: {self.parts!r}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"partition parts must be weakly decreasing: {parts!r}")
        object.__setattr__(self, "parts", parts)

    @property
    def n_plus_1(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    @property
    def alpha(self) -> tuple[int, ...]:
        counts = Counter(self.parts)
        return tuple(counts[v] for v in sorted(counts, reverse=True))

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    def __str__(self):
        return "(" + ",".join(map(str, self.parts)) + ")"


def _partitions(m: int, largest: int, max_len: int):
    # decreasing lexicographic order
    if m == 0:
        yield ()
        return
    if max_len == 0:
        return
    for first in range(min(m, largest), 0, -1):
        for rest in _partitions(m - first, first, max_len - 1):
            yield (first,) + rest


def all_partitions(m: int, min_len: int = 1, max_len: int | None = None) -> list[Partition]:
    max_len = m if max_len is None else max_len
    return [Partition(p) for p in _partitions(m, m, max_len) if len(p) >= min_len]


def enumerate_partitions(n_plus_1: int, d: int) -> list[Partition]:
    """Partitions of ``n_plus_1`` with length between 2 and ``min(d, n_plus_1)``.

    Length one is skipped: the all-equal point is never on the Fermat hypersurface.
    """
    if n_plus_1 < 2 or d < 2:
        raise ValueError(f"need n+1 >= 2 and d >= 2, got n+1={n_plus_1}, d={d}")
    return all_partitions(n_plus_1, 2, min(d, n_plus_1))


def coefficient_c(a: Partition) -> int:
    """Ways to split ``n+1`` labelled coordinates into ordered blocks of sizes ``a``."""
    remaining = a.n_plus_1
    out = 1
    for part in a.parts[:-1]:
        out *= comb(remaining, part)
        remaining -= part
    return out


def symmetry_order_o(a: Partition) -> int:
    return prod(factorial(k) for k in a.alpha)
