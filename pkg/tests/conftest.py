import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))  # naive / randfix helpers

from homaudit.fixtures import genus2_pair, torus_triad
from homaudit.morse import filtration_from_morse, sublevel_filtration
from homaudit.sequences import MayerVietorisSystem, PairSystem


@pytest.fixture(scope="session")
def torus():
    return torus_triad()


@pytest.fixture(scope="session")
def torus_system(torus):
    filt = filtration_from_morse(torus.complex, torus.function, torus.thresholds)
    return MayerVietorisSystem(torus.complex, torus.A, torus.B, filt, 2)


@pytest.fixture(scope="session")
def torus_system_f3(torus):
    filt = filtration_from_morse(torus.complex, torus.function, torus.thresholds)
    return MayerVietorisSystem(torus.complex, torus.A, torus.B, filt, 3)


@pytest.fixture(scope="session")
def genus2():
    return genus2_pair()


@pytest.fixture(scope="session")
def genus2_system(genus2):
    filt = sublevel_filtration(genus2.complex, genus2.function, genus2.thresholds)
    return PairSystem(genus2.complex, genus2.A, filt, 2)


@pytest.fixture(scope="session")
def data_dir():
    root = Path(__file__).resolve().parent.parent / "data"
    if not root.exists():
        pytest.skip("shipped data directory missing")
    return root
