"""Integer partitions and semistandard Young tableaux.

Partitions are stored without trailing zeros; the bound ``parts <= r`` that
defines Lambda(k, r) is checked by callers (see ``Partition.check_rank``).
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, List, Sequence, Tuple

from .errors import InvalidPartitionError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class Partition:
    """A weakly decreasing sequence of positive integers."""
    parts: Tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        for i, part in enumerate(parts):
            if part < 1:
                raise InvalidPartitionError(
                    f"Partition parts must be positive, got {self.parts}"
                )
            if i > 0 and part > parts[i - 1]:
                raise InvalidPartitionError(
                    f"Partition parts must be weakly decreasing, got {self.parts}"
                )
        object.__setattr__(self, 'parts', parts)

    @classmethod
    def parse(cls, text: str) -> 'Partition':
        """Parse a comma separated partition such as ``"2,1"`` (empty means ())."""
        text = text.strip().strip('()')
        if not text:
            return cls(())
        try:
            parts = tuple(int(p) for p in text.split(','))
        except ValueError:
            raise InvalidPartitionError(f"Cannot parse partition {text!r}")
        return cls(parts)

    @property
    def weight(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __getitem__(self, index: int) -> int:
        """Part at ``index``, with implicit trailing zeros."""
        if index < len(self.parts):
            return self.parts[index]
        return 0

    def __str__(self) -> str:
        return "(" + ",".join(str(p) for p in self.parts) + ")"

    def conjugate(self) -> 'Partition':
        return partition_conjugate(self)

    def check_rank(self, rank: int) -> 'Partition':
        """Ensure the partition lies in Lambda(|lambda|, rank)."""
        if self.parts and self.parts[0] > rank:
            raise InvalidPartitionError(
                f"Invalid partition {self}: part {self.parts[0]} > rank {rank}"
            )
        return self

    def to_list(self) -> List[int]:
        return list(self.parts)


def partition_enumerate(k: int, r: int) -> List[Partition]:
    """All partitions of ``k`` with parts bounded by ``r``, lexicographically decreasing."""
    if k < 0 or r < 1:
        raise InvalidPartitionError(f"Need k >= 0 and r >= 1, got k={k}, r={r}")
    return [Partition(p) for p in _partitions(k, r)]


@lru_cache(maxsize=None)
def _partitions(k: int, max_part: int) -> Tuple[Tuple[int, ...], ...]:
    if k == 0:
        return ((),)
    result = []
    for first in range(min(k, max_part), 0, -1):
        for rest in _partitions(k - first, first):
            result.append((first,) + rest)
    return tuple(result)


@lru_cache(maxsize=None)
def count_partitions(k: int, max_part: int) -> int:
    """p(k, parts <= max_part) via p(k, m) = p(k, m - 1) + p(k - m, m)."""
    if k == 0:
        return 1
    if k < 0 or max_part == 0:
        return 0
    return count_partitions(k, max_part - 1) + count_partitions(k - max_part, max_part)


def partition_conjugate(partition: Partition) -> Partition:
    """Transpose of the Young diagram."""
    if not partition.parts:
        return Partition(())
    return Partition(tuple(
        sum(1 for part in partition.parts if part > column)
        for column in range(partition.parts[0])
    ))


def semistandard_tableaux(shape: Partition, max_entry: int) -> Iterator[List[List[int]]]:
    """Yield semistandard Young tableaux of ``shape`` with entries in 1..max_entry.

    Rows weakly increase, columns strictly increase. Cells are filled in
    reading order with backtracking.
    """
    cells = [(row, col) for row, length in enumerate(shape.parts) for col in range(length)]
    tableau = [[0] * length for length in shape.parts]

    def backtrack(position: int) -> Iterator[List[List[int]]]:
        if position == len(cells):
            yield [list(row) for row in tableau]
            return
        row, col = cells[position]
        low = 1
        if col > 0:
            low = max(low, tableau[row][col - 1])
        if row > 0:
            low = max(low, tableau[row - 1][col] + 1)
        for value in range(low, max_entry + 1):
            tableau[row][col] = value
            yield from backtrack(position + 1)
        tableau[row][col] = 0

    yield from backtrack(0)


def as_partition(value: Sequence[int]) -> Partition:
    """Coerce a tuple, list or Partition into a Partition."""
    if isinstance(value, Partition):
        return value
    return Partition(tuple(value))
