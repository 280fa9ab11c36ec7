import numpy as np
import pytest

from qconn import Graph


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, outer + spokes + inner)


def random_graph_mask(n: int, rng: np.random.Generator, p: float = 0.5) -> Graph:
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    draw = rng.random(len(pairs)) < p
    return Graph(n, [e for e, hit in zip(pairs, draw) if hit])


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
