import pytest

from gaugequench.cli import RunConfig, simulate
from gaugequench.model import ModelSpec, SpinValue
from gaugequench.propagator import PropagatorConfig


def run_scenario(model: ModelSpec, t_max: float):
    cfg = RunConfig(
        model=model,
        propagator=PropagatorConfig(),
        t_max=t_max,
        output_prefix="unused",
    )
    return simulate(cfg)


@pytest.fixture(scope="session")
def s32_run():
    """Massless extreme-vacuum quench, S=3/2, L=10, to t=30."""
    return run_scenario(ModelSpec(spin=SpinValue(3), length=10), 30.0)


@pytest.fixture(scope="session")
def s1_run():
    """Massless extreme-vacuum quench, S=1, L=12."""
    return run_scenario(ModelSpec(spin=SpinValue(2), length=12), 20.0)


@pytest.fixture(scope="session")
def s12_run():
    """Massless extreme-vacuum quench, S=1/2, L=16."""
    return run_scenario(ModelSpec(spin=SpinValue(1), length=16), 12.0)


@pytest.fixture(scope="session")
def tsm_run():
    """Truncated-model variant of the S=3/2 quench."""
    return run_scenario(ModelSpec(spin=SpinValue(3), length=10, kind="tsm"), 30.0)


@pytest.fixture(scope="session")
def massive_run():
    """Negative control: same quench but with mass 0.1."""
    return run_scenario(ModelSpec(spin=SpinValue(3), length=10, mu=0.1), 30.0)


@pytest.fixture(scope="session")
def intermediate_run():
    """Negative control: massless quench from the intermediate vacuum m_z=1/2."""
    return run_scenario(
        ModelSpec(spin=SpinValue(3), length=10, twice_initial_mz=1), 30.0
    )
