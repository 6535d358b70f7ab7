"""Shared fixtures: model handles and the two published golden tables.

The c = 1/2 (Ising) and c = 7/10 (tricritical Ising) tables below are
transcribed from the literature and frozen here; several suites compare
computed output against them cell for cell.  Table rows/columns follow the
source's own sector order, which differs from this package's canonical
(lexicographic Kac label) order for c = 7/10.
"""

from math import gcd

import pytest

from fusioncover import ModelParams, fusion_tensor

# Kac tables: rows m = 1..p-1, columns n = 1..q-1, exact fraction strings.
KNOWN_KAC = {
    (3, 4): [
        ["0", "1/16", "1/2"],
        ["1/2", "1/16", "0"],
    ],
    (4, 5): [
        ["0", "1/10", "3/5", "3/2"],
        ["7/16", "3/80", "3/80", "7/16"],
        ["3/2", "3/5", "1/10", "0"],
    ],
}

# Fusion tables as printed: a sector order and, per row, one entry list per
# cell.  Cell entries are compared as sets (the printed order inside a cell
# is not canonical).
KNOWN_FUSION = {
    (3, 4): {
        "order": ["[0]", "[1/16]", "[1/2]"],
        "cells": [
            [["[0]"], ["[1/16]"], ["[1/2]"]],
            [["[1/16]"], ["[0]", "[1/2]"], ["[1/16]"]],
            [["[1/2]"], ["[1/16]"], ["[0]"]],
        ],
    },
    (4, 5): {
        "order": ["[0]", "[3/5]", "[7/16]", "[3/80]", "[1/10]", "[3/2]"],
        "cells": [
            [["[0]"], ["[3/5]"], ["[7/16]"], ["[3/80]"], ["[1/10]"], ["[3/2]"]],
            [
                ["[3/5]"],
                ["[0]", "[3/5]"],
                ["[3/80]"],
                ["[3/80]", "[7/16]"],
                ["[1/10]", "[3/2]"],
                ["[1/10]"],
            ],
            [
                ["[7/16]"],
                ["[3/80]"],
                ["[0]", "[3/2]"],
                ["[1/10]", "[3/5]"],
                ["[3/80]"],
                ["[7/16]"],
            ],
            [
                ["[3/80]"],
                ["[3/80]", "[7/16]"],
                ["[1/10]", "[3/5]"],
                ["[0]", "[3/5]", "[3/2]", "[1/10]"],
                ["[7/16]", "[3/80]"],
                ["[3/80]"],
            ],
            [
                ["[1/10]"],
                ["[1/10]", "[3/2]"],
                ["[3/80]"],
                ["[7/16]", "[3/80]"],
                ["[0]", "[3/5]"],
                ["[3/5]"],
            ],
            [["[3/2]"], ["[1/10]"], ["[7/16]"], ["[3/80]"], ["[3/5]"], ["[0]"]],
        ],
    },
}

# The Z4 labeling of the Ising sectors and the Z12 labeling of the
# tricritical Ising sectors, by Kac label.
Z4_ISING_LABELS = {(0,): (1, 1), (1,): (1, 2), (2,): (1, 3), (3,): (1, 2)}
Z12_TRICRITICAL_LABELS = {
    (0,): (1, 1),
    (1,): (2, 2),
    (2,): (1, 2),
    (3,): (2, 1),
    (4,): (1, 3),
    (5,): (2, 2),
    (6,): (1, 4),
    (7,): (2, 2),
    (8,): (1, 3),
    (9,): (2, 1),
    (10,): (1, 2),
    (11,): (2, 2),
}


def coprime_models(max_p: int, max_q: int, max_sum: int | None = None):
    """All ModelParams with 2 <= p < q within the bounds, gcd(p, q) = 1."""
    out = []
    for q in range(3, max_q + 1):
        for p in range(2, min(q, max_p + 1)):
            if gcd(p, q) == 1 and (max_sum is None or p + q <= max_sum):
                out.append(ModelParams(p, q))
    return out


@pytest.fixture(scope="session")
def ising():
    return ModelParams(3, 4)


@pytest.fixture(scope="session")
def tricritical():
    return ModelParams(4, 5)


@pytest.fixture(scope="session")
def ising_tensor(ising):
    return fusion_tensor(ising)


@pytest.fixture(scope="session")
def tricritical_tensor(tricritical):
    return fusion_tensor(tricritical)


def assert_matches_known_fusion(tensor, known):
    """Compare a fusion tensor cell-for-cell against a frozen printed table."""
    by_name = {s.name: s.index for s in tensor.sectors}
    order = [by_name[name] for name in known["order"]]
    for a, i in enumerate(order):
        for b, j in enumerate(order):
            got = {s.name for s in tensor.products_of(i, j)}
            expected = set(known["cells"][a][b])
            assert got == expected, (
                f"cell ({known['order'][a]}, {known['order'][b]}): "
                f"got {sorted(got)}, expected {sorted(expected)}"
            )
