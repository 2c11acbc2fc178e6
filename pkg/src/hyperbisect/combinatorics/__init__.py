"""Partition enumeration, counting and parity certificates."""

from hyperbisect.combinatorics.parity import (
    ParityCertificate,
    is_multinomial_odd,
    legendre_valuation,
    max_measures_cohomological,
    odd_multinomial_witness,
    partition_parity,
)
from hyperbisect.combinatorics.partitions import (
    BlockPartition,
    count_partitions,
    enumerate_partitions,
    first_partition,
    iter_partitions,
)

__all__ = [
    "BlockPartition",
    "ParityCertificate",
    "count_partitions",
    "enumerate_partitions",
    "first_partition",
    "is_multinomial_odd",
    "iter_partitions",
    "legendre_valuation",
    "max_measures_cohomological",
    "odd_multinomial_witness",
    "partition_parity",
]
