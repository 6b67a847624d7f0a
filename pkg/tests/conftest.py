"""Shared fixtures: presets, seeded generators and small named graphs."""

import numpy as np
import pytest

from connectivity import load_config
from tests.builders import complete_graph, cycle_graph, two_cliques


@pytest.fixture
def desk_cfg():
    return load_config("desk")


@pytest.fixture
def paper_cfg():
    return load_config("paper")


@pytest.fixture
def rng():
    return np.random.default_rng(20240101)


@pytest.fixture
def k4():
    return complete_graph(4)


@pytest.fixture
def c6():
    return cycle_graph(6)


@pytest.fixture
def two_k5():
    return two_cliques(5, 3)
