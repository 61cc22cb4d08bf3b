import dataclasses
from pathlib import Path

import pytest

from tailoredbeams import config, fgsynth, signal

ROOT = Path(__file__).resolve().parents[1]
HIBEF_CFG = ROOT / "configs" / "hibef.cfg"


@pytest.fixture(scope="session")
def hibef_run():
    return config.load(HIBEF_CFG)


@pytest.fixture(scope="session")
def hibef_scenario(hibef_run):
    return hibef_run.scenario()


@pytest.fixture(scope="session")
def fg0_scenario(hibef_run):
    """Same collision with a plain FG_0 probe; cheap to integrate."""
    probe = fgsynth.synthesize(dataclasses.replace(hibef_run.recipe, N=0, Nprime=None))
    return hibef_run.scenario().with_probe(probe)


@pytest.fixture(scope="session")
def coarse_cfg():
    return signal.SignalConfig(n_theta=26)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
