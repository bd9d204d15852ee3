import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from topomine.graphs import LabeledGraph  # noqa: E402


@pytest.fixture
def triangle():
    return LabeledGraph(3, [(0, 1), (1, 2), (0, 2)], [0, 0, 0])


@pytest.fixture
def subdivided_triangle():
    """Hexagon a-d-b-f-c-e with distinct labels: a,b,c=0,1,2, d,e,f=3,4,5
    subdividing the edges ab, ac, bc of a triangle."""
    return LabeledGraph(6, [(0, 3), (3, 1), (0, 4), (4, 2), (1, 5), (5, 2)],
                        [0, 1, 2, 3, 4, 5])
