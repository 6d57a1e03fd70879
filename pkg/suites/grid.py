"""Instance grids: split ample bundles on catalogue varieties."""

import logging
from dataclasses import dataclass
from itertools import combinations_with_replacement, product
from typing import Iterator, List, Sequence, Tuple

from algebra.partitions import Partition, partition_enumerate
from geometry.catalogue import get_variety

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Instance:
    """One (variety, bundle, lambda) triple of a suite."""
    variety: str
    bundle: str
    partition: Partition

    @property
    def key(self) -> Tuple[str, str, Tuple[int, ...]]:
        return self.variety, self.bundle, self.partition.parts

    def label(self) -> str:
        return f"{self.variety} {self.bundle} {self.partition}"


def _summand_spec(degrees: Sequence[int]) -> str:
    return "O(" + ",".join(str(d) for d in degrees) + ")"


def ample_bundle_specs(variety_name: str, max_rank: int, degrees: Sequence[int]) -> List[str]:
    """DSL specs of all split bundles of rank 1..max_rank with every multidegree entry in ``degrees``.

    Summands are taken as multisets, so each bundle appears once; non-positive
    degrees are dropped.
    """
    width = len(get_variety(variety_name).generators)
    positive = sorted({d for d in degrees if d > 0})
    line_bundles = list(product(positive, repeat=width))
    specs = []
    for rank in range(1, max_rank + 1):
        for summands in combinations_with_replacement(line_bundles, rank):
            specs.append("+".join(_summand_spec(s) for s in summands))
    return specs


def instance_grid(varieties: Sequence[str], max_rank: int, degrees: Sequence[int]) -> Iterator[Instance]:
    """Every lambda in Lambda(n - 1, r) for every ample split bundle, in a fixed order."""
    for name in varieties:
        variety = get_variety(name)
        count = 0
        for spec in ample_bundle_specs(name, max_rank, degrees):
            rank = spec.count('O(')
            for partition in partition_enumerate(variety.dimension - 1, rank):
                count += 1
                yield Instance(name, spec, partition)
        logger.debug(f"Grid for {name}: {count} instances")
