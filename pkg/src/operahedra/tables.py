"""Published reference data for the permutahedron diagonals.

Pairs of faces of the permutahedron are written as pairs of ordered
partitions of the edge set, blocks separated by ``|``.  The
``ASSOCIAHEDRON`` flag marks the pairs whose coarsening projection onto
the linear tree preserves dimensions on both sides, i.e. the image of
the diagonal of the associahedron of the same dimension.
"""

from __future__ import annotations

from .trees import Nesting, PlanarTree, partition_to_nesting

# number of complementary pairs in the image, by dimension from 0
PAIR_COUNTS = (1, 2, 8, 50, 432, 4802, 65536)

DIMENSION_1 = (
    ("1|2", "12"),
    ("12", "2|1"),
)

DIMENSION_2 = (
    ("1|2|3", "123"),
    ("123", "3|2|1"),
    ("12|3", "2|13"),
    ("13|2", "3|12"),
    ("2|13", "23|1"),
    ("1|23", "13|2"),
    ("12|3", "23|1"),
    ("1|23", "3|12"),
)

DIMENSION_2_ASSOCIAHEDRON = (
    ("1|2|3", "123"),
    ("123", "3|2|1"),
    ("12|3", "2|13"),
    ("2|13", "23|1"),
    ("12|3", "23|1"),
    ("1|23", "3|12"),
)

# the 50 printed pairs in dimension 3; the flag marks the blue subset
DIMENSION_3 = (
    ("1|2|3|4", "1234", True),
    ("1234", "4|3|2|1", True),
    ("12|3|4", "2|134", True),
    ("134|2", "4|3|12", False),
    ("12|3|4", "23|14", True),
    ("14|23", "4|3|12", False),
    ("2|13|4", "23|14", True),
    ("14|23", "4|13|2", False),
    ("13|2|4", "3|124", False),
    ("124|3", "4|2|13", False),
    ("1|23|4", "3|124", True),
    ("124|3", "4|23|1", False),
    ("1|2|34", "124|3", False),
    ("3|124", "34|2|1", True),
    ("1|3|24", "134|2", False),
    ("2|134", "24|3|1", False),
    ("1|23|4", "134|2", False),
    ("2|134", "4|23|1", True),
    ("2|3|14", "234|1", True),
    ("1|234", "14|3|2", False),
    ("2|13|4", "234|1", True),
    ("1|234", "4|13|2", False),
    ("12|3|4", "234|1", True),
    ("1|234", "4|3|12", True),
    ("1|24|3", "14|23", False),
    ("23|14", "3|24|1", True),
    ("1|2|34", "14|23", False),
    ("23|14", "34|2|1", True),
    ("1|23|4", "13|24", False),
    ("24|13", "4|23|1", False),
    ("14|2|3", "4|123", False),
    ("123|4", "3|2|14", True),
    ("1|24|3", "4|123", False),
    ("123|4", "3|24|1", True),
    ("1|2|34", "4|123", True),
    ("123|4", "34|2|1", True),
    ("3|14|2", "34|12", False),
    ("12|34", "2|14|3", False),
    ("1|3|24", "34|12", True),
    ("12|34", "24|3|1", False),
    ("13|4|2", "34|12", False),
    ("12|34", "2|4|13", True),
    ("1|23|4", "34|12", True),
    ("12|34", "4|23|1", True),
    ("2|14|3", "24|13", False),
    ("13|24", "3|14|2", False),
    ("12|4|3", "24|13", False),
    ("13|24", "3|4|12", False),
    ("1|2|34", "24|13", False),
    ("13|24", "34|2|1", False),
)

# the tp(F) <= bm(G) filter on linear trees, dimensions 0 to 3
ASSOCIAHEDRON_COUNTS = (1, 2, 6, 22)

# the pyramid of the quasi-positive orientation example
PYRAMID_VERTICES = (
    ("0", "0", "1"),
    ("-1", "0", "0"),
    ("0", "3/2", "-1/2"),
    ("0", "-3/2", "-1/2"),
    ("3", "0", "-2"),
)
PYRAMID_OUTWARD_NORMALS = (
    (1, 1, 1),
    (-1, 1, 1),
    (-1, -1, 1),
    (1, -1, 1),
    (-1, 0, -2),  # positively proportional to (-1/2, 0, -1)
)


def parse_partition(text: str):
    "``'13|2'`` -> blocks ({1, 3}, {2}); single digits only, as in the tables."
    return tuple(frozenset(int(c) for c in block) for block in text.split("|"))


def partition_nesting(t: PlanarTree, text: str) -> Nesting:
    return partition_to_nesting(t, parse_partition(text))


def format_partition(blocks) -> str:
    return "|".join("".join(str(e) for e in sorted(block)) for block in blocks)
