"""Integer partitions as hashable tuples."""

from __future__ import annotations

from collections import Counter
from functools import lru_cache
from math import factorial, prod


class Partition(tuple):
    """Weakly decreasing tuple of positive integers."""

    def __new__(cls, parts=()):
        parts = tuple(sorted((int(p) for p in parts), reverse=True))
        if parts and parts[-1] <= 0:
            raise ValueError(f"partition parts must be positive: {parts}")
        return super().__new__(cls, parts)

    @property
    def size(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def multiplicities(self) -> Counter:
        return Counter(self)

    @property
    def z(self) -> int:
        """Centraliser order prod_i i^{m_i} m_i!."""
        return prod(i**m * factorial(m) for i, m in Counter(self).items())

    def conjugate(self) -> "Partition":
        if not self:
            return self
        return Partition(sum(1 for p in self if p > i) for i in range(self[0]))

    def content_sum(self) -> int:
        return sum(j - i for i, row in enumerate(self) for j in range(row))

    def add_box_options(self):
        """Partitions obtained by adding one box."""
        rows = list(self)
        out = []
        for i in range(len(rows) + 1):
            prev = rows[i - 1] if i > 0 else None
            cur = rows[i] if i < len(rows) else 0
            if prev is None or cur < prev:
                new = rows[:i] + [cur + 1] + rows[i + 1 :]
                out.append(Partition(new))
        return out

    def without(self, *parts) -> "Partition":
        rest = list(self)
        for p in parts:
            rest.remove(p)
        return Partition(rest)

    def with_parts(self, *parts) -> "Partition":
        return Partition(list(self) + list(parts))

    def __repr__(self):
        return f"Partition({tuple(self)})"

    def __str__(self):
        return "(" + ",".join(map(str, self)) + ")"


EMPTY = Partition()


@lru_cache(maxsize=None)
def partitions_of(n: int, max_part: int | None = None) -> tuple[Partition, ...]:
    """All partitions of n in reverse lexicographic order."""
    if max_part is None:
        max_part = n
    if n == 0:
        return (EMPTY,)
    out = []
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions_of(n - first, first):
            out.append(Partition((first,) + tuple(rest)))
    return tuple(out)


def partitions_upto(d: int):
    for n in range(d + 1):
        yield from partitions_of(n)


def parse_partition(text: str) -> Partition:
    text = text.strip().strip("()[]")
    if not text:
        return EMPTY
    return Partition(int(x) for x in text.split(","))
