"""Symmetric logarithmic derivatives and quantum (Helstrom) information.

The symmetric logarithmic derivative L of a family rho(theta) solves

    d(rho)/d(theta) = (rho L + L rho) / 2,

and the quantum information is I = tr(rho L^2).  Three solvers are
provided: a generic Lyapunov solver working in the eigenbasis of rho (the
oracle, valid for any supported dimension), the rank-one closed form
L = 2 D for pure states, and the two-component mixture closed form

    L = (wdot / w) rho1 + (2w - 1) L1 - (wdot / (1 - w)) rho2

with information  I = wdot^2 / (w (1 - w)) + (2w - 1)^2 I1.

Every result carries the Frobenius residual of the defining equation so
callers can audit solvability instead of assuming it.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NotPure, StationaryModel, UnsupportedOnKernel
from .linalg import EYE2, as_matrix, eig_hermitian, require_hermitian
from .models import (
    QubitModel,
    STATIONARY_TOL,
    drho,
    pure_density,
    pure_deriv,
    rho,
    validate_density,
    weight_at,
)

__all__ = [
    "SldMethod",
    "SldResult",
    "pure_information",
    "qfi_bloch_pure",
    "qfi_mixed_closed",
    "quantum_information",
    "sld_closed",
    "sld_lyapunov",
    "sld_mixed_closed",
    "sld_pure",
]

#: eigenvalue sums at or below this belong to the kernel sector of rho
KERNEL_SUM_TOL = 1e-12
#: kernel-kernel derivative mass above this means the defining equation has no solution
KERNEL_BLOCK_TOL = 1e-8

_TRACELESS_ATOL = 1e-10
_PURE_RANK_TOL = 1e-10


class SldMethod(enum.Enum):
    LYAPUNOV = "lyapunov"
    PURE_CLOSED = "pure_closed"
    MIXED_CLOSED = "mixed_closed"


@dataclass(frozen=True)
class SldResult:
    """A quantum score with its information and solver diagnostics.

    ``residual`` is the Frobenius norm of rho L + L rho - 2 D.
    """

    L: np.ndarray
    qfi: float
    residual: float
    method: SldMethod


def _residual(rho_mat: np.ndarray, L: np.ndarray, d: np.ndarray) -> float:
    return float(np.linalg.norm(rho_mat @ L + L @ rho_mat - 2.0 * d))


def _require_traceless(d: np.ndarray, *, what: str = "derivative") -> np.ndarray:
    tr = abs(complex(np.trace(d)))
    if tr > _TRACELESS_ATOL * max(1.0, np.linalg.norm(d)):
        raise ValueError(f"{what} has trace {tr:.3e}, expected traceless")
    return d


def sld_lyapunov(rho_mat, d) -> SldResult:
    """Solve the defining equation in the eigenbasis of rho.

    With rho = V diag(lam) V^dagger and Dt = V^dagger D V, the score is
    L_ab = 2 Dt_ab / (lam_a + lam_b) wherever the eigenvalue sum is above
    KERNEL_SUM_TOL; entries on the kernel-kernel sector are set to zero
    (pseudo-inverse convention; the information is invariant to them).
    Raises UnsupportedOnKernel when D itself has mass on that sector.
    """
    rho_mat = validate_density(rho_mat)
    d = _require_traceless(require_hermitian(as_matrix(d), what="derivative"))
    if d.shape != rho_mat.shape:
        raise DimensionMismatch(f"rho is {rho_mat.shape}, derivative is {d.shape}")

    dec = eig_hermitian(rho_mat)
    lam, vecs = dec.eigenvalues, dec.eigenvectors
    dt = vecs.conj().T @ d @ vecs
    sums = lam[:, None] + lam[None, :]
    kernel = sums <= KERNEL_SUM_TOL
    blocked = np.linalg.norm(dt[kernel])
    if blocked > KERNEL_BLOCK_TOL:
        raise UnsupportedOnKernel(
            f"derivative has norm {blocked:.3e} on the kernel-kernel sector of rho"
        )
    lt = np.zeros_like(dt)
    lt[~kernel] = 2.0 * dt[~kernel] / sums[~kernel]
    L = vecs @ lt @ vecs.conj().T
    L = (L + L.conj().T) / 2.0
    qfi = float(np.trace(rho_mat @ L @ L).real)
    return SldResult(L=L, qfi=qfi, residual=_residual(rho_mat, L, d), method=SldMethod.LYAPUNOV)


def sld_pure(rho_mat, d) -> SldResult:
    """Closed form for rank-one states: L = 2 D, I = 2 tr(D^2)."""
    rho_mat = validate_density(rho_mat)
    vals = eig_hermitian(rho_mat).eigenvalues
    if abs(vals[-1] - 1.0) > _PURE_RANK_TOL or np.any(np.abs(vals[:-1]) > _PURE_RANK_TOL):
        raise NotPure(f"state is not rank one (eigenvalues {vals})")
    d = _require_traceless(require_hermitian(as_matrix(d), what="derivative"))
    if d.shape != rho_mat.shape:
        raise DimensionMismatch(f"rho is {rho_mat.shape}, derivative is {d.shape}")
    L = 2.0 * d
    qfi = float(2.0 * np.trace(d @ d).real)
    return SldResult(L=L, qfi=qfi, residual=_residual(rho_mat, L, d), method=SldMethod.PURE_CLOSED)


def pure_information(model: QubitModel, theta: float) -> float:
    """Information of the pure part, computed as 2 tr(D1^2)."""
    d1 = pure_deriv(model, theta)
    return float(2.0 * np.trace(d1 @ d1).real)


def sld_mixed_closed(model: QubitModel, theta: float) -> SldResult:
    """Mixture closed form for the score of a two-component model.

    Requires a non-stationary pure part; the residual is evaluated against
    the full model's rho and derivative.
    """
    if not model.is_mixed:
        raise ValueError("mixed closed form requires a mixed model")
    w, wdot = weight_at(model, theta)
    if pure_information(model, theta) <= STATIONARY_TOL:
        raise StationaryModel(f"pure part is stationary at theta = {theta:g}")
    r1 = pure_density(model, theta)
    r2 = EYE2 - r1
    L1 = 2.0 * pure_deriv(model, theta)
    L = (wdot / w) * r1 + (2.0 * w - 1.0) * L1 - (wdot / (1.0 - w)) * r2
    qfi = qfi_mixed_closed(model, theta)
    res = _residual(rho(model, theta), L, drho(model, theta))
    return SldResult(L=L, qfi=qfi, residual=res, method=SldMethod.MIXED_CLOSED)


def qfi_mixed_closed(model: QubitModel, theta: float) -> float:
    """Mixture information: wdot^2 / (w (1-w)) + (2w - 1)^2 I1."""
    if not model.is_mixed:
        raise ValueError("mixed closed form requires a mixed model")
    w, wdot = weight_at(model, theta)
    i1 = pure_information(model, theta)
    if i1 <= STATIONARY_TOL:
        raise StationaryModel(f"pure part is stationary at theta = {theta:g}")
    return wdot * wdot / (w * (1.0 - w)) + (2.0 * w - 1.0) ** 2 * i1


def qfi_bloch_pure(u_dot) -> float:
    """Pure-state information from the Bloch velocity: ||du/dtheta||^2."""
    u_dot = np.asarray(u_dot, dtype=float)
    if u_dot.shape != (3,):
        raise DimensionMismatch(f"expected a 3-vector, got shape {u_dot.shape}")
    if not np.all(np.isfinite(u_dot)):
        raise ValueError("Bloch velocity must be finite")
    return float(u_dot @ u_dot)


def sld_closed(model: QubitModel, theta: float) -> SldResult:
    """Dispatch to the closed form matching the model (pure or mixed)."""
    if model.is_mixed:
        return sld_mixed_closed(model, theta)
    return sld_pure(rho(model, theta), drho(model, theta))


def quantum_information(model: QubitModel, theta: float) -> float:
    """Quantum information of the model at theta via the closed forms."""
    if model.is_mixed:
        return qfi_mixed_closed(model, theta)
    return pure_information(model, theta)
