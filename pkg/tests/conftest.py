import numpy as np
import pytest

from homenhance import GrayImage, NodeSet, TargetLevels


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def ramp_image(levels=256, maxval=255):
    return GrayImage(levels, 1, maxval, np.arange(levels))


def skewed_image():
    i = np.arange(256)
    # round-half-up is safe: 255 * (i/255)**2 never lands on a .5 tie here
    return GrayImage(256, 1, 255, np.floor(255 * (i / 255) ** 2 + 0.5).astype(int))


def random_valid_config(rng, min_gap=1e-3):
    while True:
        nodes = np.sort(rng.uniform(0.0, 1.0, 4))
        targets = np.sort(rng.uniform(0.0, 1.0, 4))
        if np.diff(nodes).min() >= min_gap and np.diff(targets).min() >= min_gap:
            return NodeSet(*map(float, nodes)), TargetLevels(*map(float, targets))


def transfer_grid(t, n=1024):
    x = np.linspace(t.nodes.x1, t.nodes.x2, n)
    x[0], x[-1] = t.nodes.x1, t.nodes.x2
    return x


@pytest.fixture
def ramp():
    return ramp_image()


@pytest.fixture
def skewed():
    return skewed_image()


@pytest.fixture
def constant():
    return GrayImage(4, 4, 255, np.full(16, 77))


@pytest.fixture
def cycle_image():
    return GrayImage(4, 1, 255, [0, 64, 191, 255])


@pytest.fixture
def rng():
    return np.random.default_rng(20020523)
