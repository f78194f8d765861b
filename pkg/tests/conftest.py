import numpy as np
import pytest

from ddic.capacity import trace_F
from ddic.fixtures import DadicParams, make_dadic, make_erasure_example, make_example3

P1_S3 = (0.7, 0.2, 0.1)
P2_S3 = (0.5, 0.3, 0.2)


@pytest.fixture(scope="session")
def binary_dadic():
    return make_dadic(DadicParams(2, (0.9, 0.1), (0.8, 0.2)))


@pytest.fixture(scope="session")
def dadic_s3():
    return make_dadic(DadicParams(3, P1_S3, P2_S3))


@pytest.fixture(scope="session")
def erasure_ex():
    return make_erasure_example(0.1, 0.3)


@pytest.fixture(scope="session")
def example3():
    return make_example3(0.5, 0.3, 0.2, 0.25, 0.15, 0.10)


@pytest.fixture(scope="session")
def example_channels(binary_dadic, dadic_s3, erasure_ex, example3):
    return {"ex1_s2": binary_dadic, "ex1_s3": dadic_s3, "ex2": erasure_ex, "ex3": example3}


@pytest.fixture(scope="session")
def binary_trace(binary_dadic):
    return trace_F(binary_dadic, 0)


@pytest.fixture(scope="session")
def s3_trace(dadic_s3):
    return trace_F(dadic_s3, 0)


@pytest.fixture
def rng():
    return np.random.default_rng(0x5EED)


def random_channel(rng, n_out, n_in):
    t = rng.random((n_out, n_in)) ** 3
    return t / t.sum(axis=0)


def pytest_terminal_summary(terminalreporter):
    reports = []
    for key in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(key, []):
            nodeid = getattr(rep, "nodeid", "")
            if "test_acceptance.py::test_criterion_" in nodeid and rep.when == "call":
                reports.append((nodeid.split("::")[-1], rep.outcome))
    if not reports:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in sorted(reports):
        num = name.split("_")[2]
        label = " ".join(name.split("_")[3:])
        terminalreporter.write_line(f"criterion {int(num):2d} {'PASS' if outcome == 'passed' else 'FAIL'}  {label}")
