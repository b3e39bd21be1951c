"""Shared helpers: random conservative systems and backend access."""

from __future__ import annotations

import numpy as np
import pytest

from mpdec import ProductionDestructionSystem
from mpdec.backend import available_backends, get_kernels


def make_constant_system(rng: np.random.Generator, dim: int,
                         scale: float = 2.0) -> ProductionDestructionSystem:
    """Fully conservative system with state-independent rates."""
    table = rng.uniform(0.05, scale, size=(dim, dim))
    table[np.diag_indices(dim)] = 0.0

    def rates(c):
        return table, table.T.copy()

    return ProductionDestructionSystem(dimension=dim, rates=rates,
                                       name=f"const{dim}")


def make_linear_system(rng: np.random.Generator, dim: int,
                       scale: float = 2.0) -> ProductionDestructionSystem:
    """Fully conservative system with rates proportional to the donor state."""
    table = rng.uniform(0.05, scale, size=(dim, dim))
    table[np.diag_indices(dim)] = 0.0

    def rates(c):
        p = table * c[None, :]
        return p, p.T.copy()

    return ProductionDestructionSystem(dimension=dim, rates=rates,
                                       name=f"lin{dim}")


def random_system(rng: np.random.Generator, dim: int) -> ProductionDestructionSystem:
    maker = make_constant_system if rng.integers(2) == 0 else make_linear_system
    return maker(rng, dim)


def random_positive_state(rng: np.random.Generator, dim: int,
                          low: float = 0.05, high: float = 10.0) -> np.ndarray:
    return rng.uniform(low, high, size=dim)


@pytest.fixture(params=available_backends())
def kernels(request):
    """Run a test once per available kernel backend."""
    return get_kernels(request.param)
