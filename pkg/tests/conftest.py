import json
import os

import pytest

from chowcert.polytope import build_polytope

FIXTURE_DIR = os.path.join(
    os.path.dirname(os.path.dirname(os.path.abspath(__file__))),
    "src", "chowcert", "fixtures")
if not os.path.isdir(FIXTURE_DIR):  # installed layout
    import chowcert

    FIXTURE_DIR = os.path.join(os.path.dirname(chowcert.__file__), "fixtures")


def fixture_path(name):
    return os.path.join(FIXTURE_DIR, name)


def load_fixture(name):
    with open(fixture_path(name + ".json")) as fp:
        data = json.load(fp)
    return build_polytope(data["vertices"], name=data.get("name", ""))


@pytest.fixture(scope="session")
def simplex2():
    return load_fixture("delta_2")


@pytest.fixture(scope="session")
def cross2():
    return load_fixture("d_2")


@pytest.fixture(scope="session")
def x2():
    return load_fixture("x2")


@pytest.fixture(scope="session")
def ex35():
    return load_fixture("ex35")


@pytest.fixture(scope="session")
def octahedron():
    return load_fixture("octahedron")


@pytest.fixture(scope="session")
def kite():
    return load_fixture("kite")


@pytest.fixture(scope="session")
def unit_square():
    return load_fixture("unit_square")
