"""Shared fixtures: the series builds are expensive, so they are session-scoped."""
import pytest

from kramers import (
    KernelSuite,
    SpectralGrid,
    build_series_fwd,
    build_series_inv,
    default_density_quad,
)


@pytest.fixture(scope="session")
def kern():
    return KernelSuite()


@pytest.fixture(scope="session")
def grid():
    return SpectralGrid.geometric()


@pytest.fixture(scope="session")
def forward3(kern, grid):
    """(series, densities) for the order-3 forward build at default settings."""
    return build_series_fwd(3, kern, grid)


@pytest.fixture(scope="session")
def inverse3(kern, grid):
    return build_series_inv(3, kern, grid)


@pytest.fixture(scope="session")
def forward3_dbl(grid):
    """Same build with doubled quadrature nodes and doubled grid density."""
    kern_dbl = KernelSuite(KernelSuite().spec.doubled())
    quad_dbl = default_density_quad(grid.k_max).doubled()
    return build_series_fwd(3, kern_dbl, grid.doubled(), quad_dbl)


@pytest.fixture(scope="session")
def inverse3_dbl(grid):
    kern_dbl = KernelSuite(KernelSuite().spec.doubled())
    quad_dbl = default_density_quad(grid.k_max).doubled()
    return build_series_inv(3, kern_dbl, grid.doubled(), quad_dbl)
