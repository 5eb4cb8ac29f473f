import pathlib
import sys

import numpy as np
import pytest

from efgpath import fixtures
from efgpath.generate import GenSpec, generate
from efgpath.profiles import BehaviorProfile

DATA = pathlib.Path(__file__).parent / "data"


@pytest.fixture
def notation():
    return fixtures.notation_game()


@pytest.fixture
def ex1():
    return fixtures.example1_game()


@pytest.fixture
def ex3():
    return fixtures.example3_game()


def all_fixture_games():
    return [fixtures.notation_game(), fixtures.example1_game(), fixtures.example3_game()]


def random_games(count=10, family="A", n=3, branching=(2, 2, 2), layers=1, start=0):
    return [generate(GenSpec(family, n, branching, layers=layers, seed=s))
            for s in range(start, start + count)]


def random_profile(game, rng, zero_frac=0.0):
    """Random behavior profile; ``zero_frac`` of the coordinates are zeroed (one survives per infoset)."""
    flat = rng.uniform(0.05, 1.0, size=game.num_action_slots)
    if zero_frac:
        flat[rng.random(flat.size) < zero_frac] = 0.0
    for iid in game.infosets:
        s = game.action_slice(iid)
        v = flat[s]
        if v.sum() == 0:
            v[rng.integers(v.size)] = 1.0
        flat[s] = v / v.sum()
    return BehaviorProfile(game, flat)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.report_lines():
        terminalreporter.write_line(line)
