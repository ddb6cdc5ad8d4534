"""One-parameter qubit state families and their parameter derivatives.

Three pure families are supported, each tracing a circle on the Bloch
sphere as the parameter theta varies:

* ``XZ_CIRCLE``   -- ket (cos(theta/2), sin(theta/2)); the Bloch vector
  runs around the great circle in the x-z plane at unit speed.
* ``LONGITUDE``   -- colatitude eta is fixed, theta is the longitude; the
  Bloch vector runs around the circle of constant colatitude (a great
  circle only for eta = pi/2, the equator).
* ``COLATITUDE``  -- longitude phi is fixed, theta is the colatitude; the
  Bloch vector runs along the meridian through the poles.

A mixed family blends the pure state rho1 with its orthogonal complement
rho2 = 1 - rho1 through a smooth weight w(theta) in (0, 1) \\ {1/2},

    rho(theta) = w(theta) rho1(theta) + (1 - w(theta)) rho2(theta),

which scales the Bloch trajectory onto the sphere of radius |2w - 1|.
Weights come from a closed set of families (constant, affine, sinusoidal),
each carrying its analytic derivative.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import (
    BlochOutOfBall,
    DimensionMismatch,
    NotDensityMatrix,
    StationaryModel,
    WeightOutOfRange,
)
from .linalg import EYE2, as_matrix, eig_hermitian, pauli_vector, require_hermitian, PAULI

__all__ = [
    "FD_STEP",
    "DerivMethod",
    "PureKind",
    "WeightKind",
    "PureFamily",
    "WeightFamily",
    "QubitModel",
    "bloch_of",
    "drho",
    "psi1",
    "psi2",
    "pure_bloch",
    "pure_bloch_dot",
    "pure_density",
    "pure_deriv",
    "rho",
    "state_of",
    "validate_density",
    "weight_at",
]

#: central-difference step for numeric parameter derivatives
FD_STEP = 1e-5

#: |w - 1/2| at or below this is rejected as the degenerate maximum-entropy case
HALF_WEIGHT_TOL = 1e-12

#: pure-part information at or below this means the family is stationary
STATIONARY_TOL = 1e-12

_TRACE_ATOL = 1e-12
_EIG_FLOOR = -1e-10


class PureKind(enum.Enum):
    XZ_CIRCLE = "xz_circle"
    LONGITUDE = "longitude"
    COLATITUDE = "colatitude"


class WeightKind(enum.Enum):
    CONST = "const"
    AFFINE = "affine"
    SINUSOIDAL = "sin"


class DerivMethod(enum.Enum):
    ANALYTIC = "analytic"
    CENTRAL_FD = "central_fd"


_COEFF_COUNT = {WeightKind.CONST: 1, WeightKind.AFFINE: 2, WeightKind.SINUSOIDAL: 2}


@dataclass(frozen=True)
class PureFamily:
    """A named pure-state family; ``fixed_angle`` is eta for LONGITUDE and
    phi for COLATITUDE (unused for XZ_CIRCLE)."""

    kind: PureKind
    fixed_angle: float = 0.0


@dataclass(frozen=True)
class WeightFamily:
    """Mixture weight w(theta) with an analytic derivative.

    CONST:      w = c            coefficients (c,)
    AFFINE:     w = a + b*theta  coefficients (a, b)
    SINUSOIDAL: w = a + b*sin(theta)
    """

    kind: WeightKind
    coefficients: tuple[float, ...]

    def __post_init__(self):
        coeffs = tuple(float(c) for c in self.coefficients)
        object.__setattr__(self, "coefficients", coeffs)
        want = _COEFF_COUNT[self.kind]
        if len(coeffs) != want:
            raise ValueError(f"{self.kind.value} weight takes {want} coefficient(s), got {len(coeffs)}")

    def value(self, theta: float) -> float:
        c = self.coefficients
        if self.kind is WeightKind.CONST:
            return c[0]
        if self.kind is WeightKind.AFFINE:
            return c[0] + c[1] * theta
        return c[0] + c[1] * np.sin(theta)

    def derivative(self, theta: float) -> float:
        c = self.coefficients
        if self.kind is WeightKind.CONST:
            return 0.0
        if self.kind is WeightKind.AFFINE:
            return c[1]
        return c[1] * np.cos(theta)


@dataclass(frozen=True)
class QubitModel:
    """A one-parameter qubit family: a pure part plus an optional weight.

    ``weight is None`` means the model is the pure family itself.
    """

    pure: PureFamily
    weight: WeightFamily | None = None

    @property
    def is_mixed(self) -> bool:
        return self.weight is not None


def weight_at(model: QubitModel, theta: float) -> tuple[float, float]:
    """Evaluate (w, dw/dtheta), enforcing w in (0, 1) and w != 1/2."""
    if model.weight is None:
        raise ValueError("pure model has no mixture weight")
    w = float(model.weight.value(theta))
    wdot = float(model.weight.derivative(theta))
    if not 0.0 < w < 1.0:
        raise WeightOutOfRange(f"w({theta:g}) = {w:g} outside (0, 1)")
    if abs(w - 0.5) <= HALF_WEIGHT_TOL:
        raise WeightOutOfRange(f"w({theta:g}) = 1/2 is the degenerate maximum-entropy case")
    return w, wdot


def psi1(model: QubitModel, theta: float) -> np.ndarray:
    """Unit ket of the pure part at theta."""
    kind = model.pure.kind
    if kind is PureKind.XZ_CIRCLE:
        return np.array([np.cos(theta / 2), np.sin(theta / 2)], dtype=complex)
    if kind is PureKind.LONGITUDE:
        eta = model.pure.fixed_angle
        return np.array(
            [np.cos(eta / 2) * np.exp(-1j * theta / 2), np.sin(eta / 2) * np.exp(1j * theta / 2)]
        )
    phi = model.pure.fixed_angle
    return np.array(
        [np.cos(theta / 2) * np.exp(-1j * phi / 2), np.sin(theta / 2) * np.exp(1j * phi / 2)]
    )


def pure_bloch(model: QubitModel, theta: float) -> np.ndarray:
    """Bloch vector u(theta) of the pure part."""
    kind = model.pure.kind
    if kind is PureKind.XZ_CIRCLE:
        return np.array([np.sin(theta), 0.0, np.cos(theta)])
    if kind is PureKind.LONGITUDE:
        eta = model.pure.fixed_angle
        return np.array([np.sin(eta) * np.cos(theta), np.sin(eta) * np.sin(theta), np.cos(eta)])
    phi = model.pure.fixed_angle
    return np.array([np.sin(theta) * np.cos(phi), np.sin(theta) * np.sin(phi), np.cos(theta)])


def pure_bloch_dot(model: QubitModel, theta: float) -> np.ndarray:
    """Analytic derivative du/dtheta of the pure-part Bloch vector."""
    kind = model.pure.kind
    if kind is PureKind.XZ_CIRCLE:
        return np.array([np.cos(theta), 0.0, -np.sin(theta)])
    if kind is PureKind.LONGITUDE:
        eta = model.pure.fixed_angle
        return np.array([-np.sin(eta) * np.sin(theta), np.sin(eta) * np.cos(theta), 0.0])
    phi = model.pure.fixed_angle
    return np.array([np.cos(theta) * np.cos(phi), np.cos(theta) * np.sin(phi), -np.sin(theta)])


def pure_density(model: QubitModel, theta: float) -> np.ndarray:
    """Density matrix rho1 = |psi1><psi1| of the pure part."""
    ket = psi1(model, theta)
    return np.outer(ket, ket.conj())


def pure_deriv(model: QubitModel, theta: float) -> np.ndarray:
    """Elementwise derivative of rho1, i.e. (du/dtheta . sigma) / 2."""
    return pauli_vector(pure_bloch_dot(model, theta)) / 2.0


def psi2(model: QubitModel, theta: float) -> np.ndarray:
    """The unit ket orthogonal to psi1 obtained by normalizing the image of
    psi1 under the pure-part quantum score (twice the derivative).

    This is the defining construction, applied verbatim: the returned
    vector is 2*D1|psi1> divided by its norm, with no extra phase or sign
    adjustment.  It is deterministic, and every downstream check is
    invariant under a global phase applied consistently.
    """
    udot = pure_bloch_dot(model, theta)
    info = float(udot @ udot)
    if info <= STATIONARY_TOL:
        raise StationaryModel(f"pure-part information {info:.3e} at theta = {theta:g}")
    v = pauli_vector(udot) @ psi1(model, theta)
    return v / np.linalg.norm(v)


def rho(model: QubitModel, theta: float) -> np.ndarray:
    """Density matrix of the model at theta."""
    r1 = pure_density(model, theta)
    if model.weight is None:
        return r1
    w, _ = weight_at(model, theta)
    return w * r1 + (1.0 - w) * (EYE2 - r1)


def drho(model: QubitModel, theta: float, method: DerivMethod = DerivMethod.ANALYTIC) -> np.ndarray:
    """Elementwise derivative d(rho)/d(theta).

    ANALYTIC uses the closed forms of the families; CENTRAL_FD uses central
    differences with step FD_STEP and requires the model to be valid at the
    two perturbed points.
    """
    if method is DerivMethod.CENTRAL_FD:
        h = FD_STEP
        return (rho(model, theta + h) - rho(model, theta - h)) / (2.0 * h)
    d1 = pure_deriv(model, theta)
    if model.weight is None:
        return d1
    w, wdot = weight_at(model, theta)
    # d/dtheta [w rho1 + (1-w)(1-rho1)] = wdot (2 rho1 - 1) + (2w - 1) D1
    return wdot * pauli_vector(pure_bloch(model, theta)) + (2.0 * w - 1.0) * d1


def validate_density(mat, *, what: str = "rho") -> np.ndarray:
    """Check Hermiticity, unit trace and nonnegativity; return the matrix."""
    m = require_hermitian(as_matrix(mat), what=what)
    tr = complex(np.trace(m))
    if abs(tr - 1.0) > _TRACE_ATOL:
        raise NotDensityMatrix(f"{what} has trace {tr:.6g}, expected 1")
    vals = eig_hermitian(m).eigenvalues
    if vals.min() < _EIG_FLOOR:
        raise NotDensityMatrix(f"{what} has eigenvalue {vals.min():.3e} below {_EIG_FLOOR:g}")
    return m


def bloch_of(mat) -> np.ndarray:
    """Bloch vector of a qubit density matrix: r_k = tr(rho sigma_k)."""
    m = validate_density(mat)
    if m.shape != (2, 2):
        raise DimensionMismatch("Bloch representation needs a 2x2 density matrix")
    r = np.array([np.trace(m @ s).real for s in PAULI])
    if np.linalg.norm(r) > 1.0 + 1e-12:
        raise NotDensityMatrix(f"Bloch norm {np.linalg.norm(r):.12f} exceeds 1")
    return r


def state_of(r) -> np.ndarray:
    """Density matrix (1 + r . sigma) / 2 of a Bloch vector inside the ball."""
    r = np.asarray(r, dtype=float)
    if r.shape != (3,):
        raise DimensionMismatch(f"expected a 3-vector, got shape {r.shape}")
    if np.linalg.norm(r) > 1.0 + 1e-12:
        raise BlochOutOfBall(f"norm {np.linalg.norm(r):.12f} exceeds 1")
    return (EYE2 + pauli_vector(r)) / 2.0
