"""Shared builders and fuzz helpers for the test suite."""

import numpy as np
import pytest

from qubit_fisher import (
    PureFamily,
    PureKind,
    QubitModel,
    WeightFamily,
    WeightKind,
)


def xz_pure() -> QubitModel:
    return QubitModel(PureFamily(PureKind.XZ_CIRCLE))


def xz_mixed(w: float = 0.75) -> QubitModel:
    return QubitModel(PureFamily(PureKind.XZ_CIRCLE), WeightFamily(WeightKind.CONST, (w,)))


def sinusoidal_model(a: float = 0.6, b: float = 0.2) -> QubitModel:
    return QubitModel(PureFamily(PureKind.XZ_CIRCLE), WeightFamily(WeightKind.SINUSOIDAL, (a, b)))


def random_pure_family(rng: np.random.Generator) -> PureFamily:
    pick = rng.integers(3)
    if pick == 0:
        return PureFamily(PureKind.XZ_CIRCLE)
    if pick == 1:
        # keep the circle away from the poles so the family stays non-stationary
        return PureFamily(PureKind.LONGITUDE, rng.uniform(0.4, np.pi - 0.4))
    return PureFamily(PureKind.COLATITUDE, rng.uniform(-np.pi, np.pi))


def random_weight(rng: np.random.Generator) -> WeightFamily:
    """Weight family valid (and away from 1/2) for theta in [-1.5, 1.5]."""
    side = 1.0 if rng.random() < 0.5 else -1.0
    base = 0.5 + side * rng.uniform(0.08, 0.42)
    pick = rng.integers(3)
    if pick == 0:
        return WeightFamily(WeightKind.CONST, (base,))
    slope = rng.uniform(-0.03, 0.03)
    if pick == 1:
        return WeightFamily(WeightKind.AFFINE, (base, slope))
    return WeightFamily(WeightKind.SINUSOIDAL, (base, rng.uniform(-0.05, 0.05)))


def random_model(rng: np.random.Generator, mixed: bool | None = None) -> QubitModel:
    if mixed is None:
        mixed = bool(rng.random() < 0.5)
    fam = random_pure_family(rng)
    return QubitModel(fam, random_weight(rng)) if mixed else QubitModel(fam)


def random_theta(rng: np.random.Generator) -> float:
    return float(rng.uniform(0.1, 1.4))


def fd_matrix_derivative(fn, theta: float, h: float = 1e-5) -> np.ndarray:
    """Central-difference oracle for matrix-valued functions of theta."""
    return (fn(theta + h) - fn(theta - h)) / (2.0 * h)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240913)
