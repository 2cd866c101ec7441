from pathlib import Path

import pytest

from susplink.pipeline import run_pipeline
from susplink.resolve import parse_resolution

DATA = Path(__file__).resolve().parent.parent / "data"


def read_input(name: str) -> str:
    return (DATA / name).read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def ex1_graph():
    return parse_resolution(read_input("ex1.txt"))


@pytest.fixture(scope="session")
def ex2_graph():
    return parse_resolution(read_input("ex2.txt"))


@pytest.fixture(scope="session")
def ex3_graph():
    return parse_resolution(read_input("ex3.txt"))


@pytest.fixture(scope="session")
def cusp_graph():
    return parse_resolution(read_input("cusp.txt"))


@pytest.fixture(scope="session")
def ex1_result(ex1_graph):
    return run_pipeline(ex1_graph, 3, reduce=True)


@pytest.fixture(scope="session")
def ex2_result(ex2_graph):
    return run_pipeline(ex2_graph, 2, reduce=True)


@pytest.fixture(scope="session")
def ex3_result(ex3_graph):
    return run_pipeline(ex3_graph, 5, reduce=True)


@pytest.fixture(scope="session")
def cusp_result(cusp_graph):
    return run_pipeline(cusp_graph, 5, reduce=True)


import os

from hypothesis import settings

settings.register_profile("thorough", max_examples=1000)
if os.environ.get("HYPOTHESIS_PROFILE"):
    settings.load_profile(os.environ["HYPOTHESIS_PROFILE"])
