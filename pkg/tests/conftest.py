import pytest
from hypothesis import HealthCheck, settings

from qcq import capnet

settings.register_profile(
    "qcq", deadline=None, suppress_health_check=[HealthCheck.too_slow], derandomize=True
)
settings.load_profile("qcq")

# Reference G-G-G readings with self capacitances in the order that reproduces the
# stated A, B and E_Cq (C_0q, C_0c, C_qc, C_qq).
REF_GGG_BELOW = (78.6, 56.6, 6.0, 0.128)
REF_GGG_ABOVE = (78.3, 57.1, 6.0, 0.448)
# The same reading with the first two columns in the order they are labelled.
REF_GGG_BELOW_AS_LABELLED = (56.6, 78.6, 6.0, 0.128)
# Reference G-F-G network: C_0q, C_01, C_02, C_12, C_1q, C_2q
REF_GFG = (71.9, 266.3, 840.1, 11.8, 10.4, 0.04)

ACCEPTANCE_RESULTS: list[str] = []


@pytest.fixture
def ref_ggg_below():
    return capnet.ggg_network(*REF_GGG_BELOW)


@pytest.fixture
def ref_ggg_above():
    return capnet.ggg_network(*REF_GGG_ABOVE)


@pytest.fixture
def ref_gfg():
    return capnet.gfg_network(*REF_GFG)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_RESULTS:
            terminalreporter.write_line(line)
