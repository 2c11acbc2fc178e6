"""Unordered partitions of range(nD) into D blocks of size n."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import factorial
from typing import Iterator

from hyperbisect.errors import EnumerationLimitError, PreconditionError

MAX_GROUND_SET = 64
DEFAULT_ENUMERATION_LIMIT = 1_000_000


@dataclass(frozen=True)
class BlockPartition:
    """D disjoint blocks of size n covering 0..nD-1, blocks ordered by their minimum."""

    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        blocks = tuple(tuple(sorted(int(item) for item in block)) for block in self.blocks)
        if not blocks:
            raise ValueError("A partition needs at least one block")
        sizes = {len(block) for block in blocks}
        if len(sizes) != 1 or 0 in sizes:
            raise ValueError(
                f"Blocks must be non-empty and of equal size, got sizes {sorted(sizes)}"
            )
        items = sorted(item for block in blocks for item in block)
        if items != list(range(len(items))):
            raise ValueError("Blocks must be disjoint and cover 0..nD-1")
        object.__setattr__(self, "blocks", tuple(sorted(blocks, key=lambda block: block[0])))

    @property
    def n(self) -> int:
        return len(self.blocks[0])

    @property
    def D(self) -> int:
        return len(self.blocks)

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        return iter(self.blocks)

    def __str__(self) -> str:
        return "|".join(",".join(str(item) for item in block) for block in self.blocks)


def validate_sizes(n: int, D: int) -> None:
    if n < 1 or D < 1:
        raise PreconditionError(f"n and D must be positive, got n={n}, D={D}")


def count_partitions(n: int, D: int) -> int:
    """N(n, D) = (nD)! / (D! (n!)^D), exact."""

    validate_sizes(n, D)
    if n * D > MAX_GROUND_SET:
        raise PreconditionError(f"nD must be at most {MAX_GROUND_SET}, got {n * D}")
    return factorial(n * D) // (factorial(D) * factorial(n) ** D)


def iter_partitions(n: int, D: int) -> Iterator[BlockPartition]:
    """Yield partitions in canonical order.

    The smallest free element always opens the next block.
    """

    validate_sizes(n, D)

    def _extend(remaining: tuple[int, ...]) -> Iterator[list[tuple[int, ...]]]:
        if not remaining:
            yield []
            return
        head, rest = remaining[0], remaining[1:]
        for companions in combinations(rest, n - 1):
            block = (head, *companions)
            left = tuple(item for item in rest if item not in companions)
            for tail in _extend(left):
                yield [block, *tail]

    for blocks in _extend(tuple(range(n * D))):
        yield BlockPartition(tuple(blocks))


def enumerate_partitions(
    n: int, D: int, *, limit: int = DEFAULT_ENUMERATION_LIMIT
) -> list[BlockPartition]:
    total = count_partitions(n, D)
    if total > limit:
        raise EnumerationLimitError(f"N({n},{D}) = {total} exceeds the enumeration limit {limit}")
    return list(iter_partitions(n, D))


def first_partition(n: int, D: int) -> BlockPartition:
    """Consecutive blocks {0..n-1}, {n..2n-1}, ...: the first canonical partition."""

    validate_sizes(n, D)
    return BlockPartition(tuple(tuple(range(j * n, (j + 1) * n)) for j in range(D)))
