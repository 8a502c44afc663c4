import csv
import io

import pytest

from mmwicd import (
    SweepGeometry,
    default_architectures,
    default_scenarios,
    derive_frame,
)

# The five sub-carrier bandwidths the bundled power table was measured at.
TABULATED_B_SC = (15e3, 250e3, 500e3, 1e6, 10e6)


@pytest.fixture(scope="session")
def geom():
    return SweepGeometry()


@pytest.fixture(scope="session")
def frame15():
    return derive_frame(15e3)


@pytest.fixture(scope="session")
def archs():
    return default_architectures()


@pytest.fixture(scope="session")
def scens():
    return default_scenarios()


def read_csv(path):
    """Rows of a tool-emitted CSV as dicts, skipping the comment header."""
    with open(path, encoding="utf-8") as fh:
        body = [line for line in fh if not line.startswith("#")]
    return list(csv.DictReader(io.StringIO("".join(body))))


def rel_err(value, reference):
    return abs(value - reference) / abs(reference)
