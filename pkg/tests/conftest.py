import numpy as np
import pytest

from spinent import SpinCluster, build_chain, build_circle


@pytest.fixture
def perp_pair():
    """Two spins with the bond perpendicular to the field (the CLI 'pair' preset)."""
    return build_chain(2)


@pytest.fixture
def axial_pair():
    """Two spins with the bond along the field/quantization axis."""
    return SpinCluster(positions=np.array([[0.0, 0.0, 0.0], [0.0, 0.0, 1.0]]))


@pytest.fixture
def chain6():
    return build_chain(6)


@pytest.fixture
def circle6():
    return build_circle(6)
