import numpy as np
import pytest

from colourcontract import new_graph

# path on four vertices taking two iterations: 0-2-3-1 in one colour
P4_EDGES = [(0, 2), (1, 3), (2, 3)]

# 24-vertex, three-colour instance that contracts in a single iteration
FIG24_EDGES = [
    (0, 1), (0, 6), (1, 2), (2, 3), (2, 12), (3, 4), (3, 15), (4, 16), (4, 18),
    (5, 21), (5, 22), (6, 7), (6, 23), (7, 8), (8, 9), (9, 10), (10, 11), (11, 12),
    (13, 14), (14, 15), (16, 17), (17, 18), (18, 19), (19, 20), (20, 21), (21, 22),
    (22, 23),
]
FIG24_COLOURS = [2, 2, 2, 1, 2, 1, 2, 3, 3, 3, 1, 1, 1, 2, 2, 2, 2, 2, 2, 3, 3, 3, 1, 2]
FIG24_EXPECTED = {
    "fibres": [[0, 1, 2, 6, 23], [3], [4, 16, 17, 18], [5, 22], [7, 8, 9],
               [10, 11, 12], [13, 14, 15], [19, 20, 21]],
    "final_n": 8,
    "final_m": 9,
    "final_colours": [2, 1, 2, 1, 3, 1, 2, 3],
    "final_edges": [(0, 1), (0, 3), (0, 4), (0, 5), (1, 2), (1, 6), (2, 7), (3, 7), (4, 5)],
    "iterations": 1,
}


@pytest.fixture
def p4():
    return new_graph(4, P4_EDGES, [0, 0, 0, 0])


@pytest.fixture
def fig24():
    return new_graph(24, FIG24_EDGES, FIG24_COLOURS)


@pytest.fixture
def triangle_two_colours():
    return new_graph(3, [(0, 1), (0, 2), (1, 2)], [0, 0, 1])
