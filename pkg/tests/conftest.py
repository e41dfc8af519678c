import math
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

import lcflow

BETA = 2.0
DELTA1 = 0.9


def bump_data():
    """The reference benchmark: beta = 2, delta1 = 0.9,
    psi0 = pi/2 + 0.3 e^{-r^2}, u0 = r e^{-r^2}."""
    params = lcflow.ModelParams(beta=BETA, delta1=DELTA1)
    return lcflow.InitialData(
        params=params,
        u0=lcflow.RadialProfile.swirl_gaussian(1.0, 1.0),
        psi0=lcflow.RadialProfile.gaussian_bump(math.pi / 2, 0.3, 1.0),
        far_field_psi=math.pi / 2)


@pytest.fixture(scope="session")
def bump_solution():
    return lcflow.ExactSolution(bump_data())


@pytest.fixture(scope="session")
def benchmark_params():
    return lcflow.ModelParams(beta=BETA, delta1=DELTA1)
