from pathlib import Path

import pytest

from noop.parser import parse_signatures
from noop.signatures import closure_of, validate_environment

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def load_env(name):
    return validate_environment(parse_signatures((FIXTURES / name).read_text(encoding="utf-8")))


@pytest.fixture(scope="session")
def pair_env():
    return load_env("appendixA.noop")


@pytest.fixture(scope="session")
def diamond_env():
    return load_env("diamond.noop")


@pytest.fixture(scope="session")
def clos(pair_env):
    """Closures of the Object/Boolean/Pair environment by class name."""
    return {n: closure_of(pair_env, n) for n in pair_env.names}


@pytest.fixture(scope="session")
def dclos(diamond_env):
    return {n: closure_of(diamond_env, n) for n in diamond_env.names}
