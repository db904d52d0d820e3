"""Integer partitions, Young-diagram cell statistics and small number theory helpers."""

from fractions import Fraction
from functools import lru_cache
from math import floor


class Partition(tuple):
    """Weakly decreasing tuple of positive integers."""

    def __new__(cls, parts=()):
        parts = tuple(int(p) for p in parts)
        if any(p <= 0 for p in parts) or any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"not a partition: {parts}")
        return super().__new__(cls, parts)

    @property
    def size(self):
        return sum(self)

    def conjugate(self):
        if not self:
            return Partition()
        return Partition(sum(1 for p in self if p >= j) for j in range(1, self[0] + 1))

    def cells(self):
        """Cells ``(i, j)`` of the diagram, 1-based, row by row."""
        return [(i, j) for i, row in enumerate(self, 1) for j in range(1, row + 1)]

    def arm(self, cell):
        i, j = cell
        return self[i - 1] - j

    def leg(self, cell):
        i, j = cell
        # max{l : lambda_l >= j} is the length of column j
        return sum(1 for p in self if p >= j) - i

    def hook(self, cell):
        return self.arm(cell) + self.leg(cell) + 1

    def hook_stats(self):
        return hook_stats(self)

    def __repr__(self):
        return f"Partition({tuple(self)})"


def hook_stats(lam):
    """List of ``(cell, arm, leg, hook)`` for every cell of ``lam``."""
    lam = Partition(lam)
    col = lam.conjugate()
    out = []
    for i, j in lam.cells():
        a = lam[i - 1] - j
        l = col[j - 1] - i
        out.append(((i, j), a, l, a + l + 1))
    return out


@lru_cache(maxsize=None)
def _partitions(n, largest):
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


def partitions(n):
    """All partitions of ``n`` in reverse lexicographic order."""
    if n < 0:
        return []
    return [Partition(p) for p in _partitions(n, n)]


def ordered_partitions(n, k):
    """Partitions of ``n`` into exactly ``k`` weakly decreasing positive parts."""
    if n < 0 or k < 0:
        return []
    return [p for p in partitions(n) if len(p) == k]


def multiplicity(a, i):
    """Number of parts of ``a`` equal to ``i``."""
    return sum(1 for x in a if x == i)


def compositions(n):
    """Ordered sequences of positive integers summing to ``n``."""
    if n == 0:
        return [()]
    out = []
    for first in range(1, n + 1):
        for rest in compositions(n - first):
            out.append((first,) + rest)
    return out


def moebius(j):
    if j <= 0:
        raise ValueError("the Moebius function is defined for positive integers")
    result, d, m = 1, 2, j
    while d * d <= m:
        if m % d == 0:
            m //= d
            if m % d == 0:
                return 0
            result = -result
        d += 1
    if m > 1:
        result = -result
    return result


def frac_part(q):
    """``q - floor(q)`` as an exact rational in ``[0, 1)``."""
    q = Fraction(q)
    return q - floor(q)
