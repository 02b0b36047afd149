import pytest

from volquandle import load_holonomy, parse_pd
from volquandle.fixtures import (
    FIG8_HOLONOMY,
    FIG8_HOLONOMY_REVERSED,
    FIG8_PD,
    FIG8_PD_R2,
    FIG8_VOLUME,
)

VOLUME = FIG8_VOLUME


@pytest.fixture(scope="session")
def fig8():
    return parse_pd(FIG8_PD)


@pytest.fixture(scope="session")
def fig8_r2():
    return parse_pd(FIG8_PD_R2)


@pytest.fixture(scope="session")
def rep(fig8):
    return load_holonomy(FIG8_HOLONOMY, fig8)


@pytest.fixture(scope="session")
def rep_reversed(fig8):
    return load_holonomy(FIG8_HOLONOMY_REVERSED, fig8)
