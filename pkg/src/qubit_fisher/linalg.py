"""Dense complex Hermitian matrix kernel.

Every other module builds on these few operations.  Public model APIs work
on 2x2 operators only; the kernel itself accepts matrices up to dimension 8
so the generic solvers can be cross-checked on synthetic higher-dimensional
inputs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NotHermitian, NotPsd

__all__ = [
    "MAX_DIM",
    "HERMITIAN_RTOL",
    "PSD_EIG_FLOOR",
    "SIGMA_X",
    "SIGMA_Y",
    "SIGMA_Z",
    "EYE2",
    "PAULI",
    "HermitianEig",
    "adjoint",
    "as_matrix",
    "eig_hermitian",
    "frob_norm",
    "herm_part",
    "is_hermitian",
    "mul",
    "pauli_vector",
    "require_hermitian",
    "sqrt_psd",
    "trace",
]

MAX_DIM = 8

#: relative Frobenius tolerance accepted as "Hermitian"
HERMITIAN_RTOL = 1e-12
#: eigenvalues below this are rejected; values in [floor, 0) are clamped to 0
PSD_EIG_FLOOR = -1e-10


def _readonly(entries) -> np.ndarray:
    out = np.asarray(entries, dtype=complex)
    out.setflags(write=False)
    return out


SIGMA_X = _readonly([[0.0, 1.0], [1.0, 0.0]])
SIGMA_Y = _readonly([[0.0, -1.0j], [1.0j, 0.0]])
SIGMA_Z = _readonly([[1.0, 0.0], [0.0, -1.0]])
EYE2 = _readonly(np.eye(2))
PAULI = (SIGMA_X, SIGMA_Y, SIGMA_Z)


def as_matrix(entries) -> np.ndarray:
    """Coerce input to a square complex matrix of supported dimension."""
    mat = np.asarray(entries, dtype=complex)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {mat.shape}")
    n = mat.shape[0]
    if not 1 <= n <= MAX_DIM:
        raise DimensionMismatch(f"dimension {n} outside supported range 1..{MAX_DIM}")
    if not (np.all(np.isfinite(mat.real)) and np.all(np.isfinite(mat.imag))):
        raise ValueError("matrix entries must be finite")
    return mat


def pauli_vector(v) -> np.ndarray:
    """Expand a real 3-vector against the Pauli basis: v . sigma."""
    v = np.asarray(v, dtype=float)
    if v.shape != (3,):
        raise DimensionMismatch(f"expected a 3-vector, got shape {v.shape}")
    return v[0] * SIGMA_X + v[1] * SIGMA_Y + v[2] * SIGMA_Z


def frob_norm(a) -> float:
    """Frobenius norm."""
    return float(np.linalg.norm(as_matrix(a)))


def adjoint(a) -> np.ndarray:
    """Conjugate transpose."""
    return as_matrix(a).conj().T


def trace(a) -> complex:
    """Matrix trace as a complex scalar."""
    return complex(np.trace(as_matrix(a)))


def mul(a, b) -> np.ndarray:
    """Matrix product of two equally sized square matrices."""
    a = as_matrix(a)
    b = as_matrix(b)
    if a.shape != b.shape:
        raise DimensionMismatch(f"cannot multiply shapes {a.shape} and {b.shape}")
    return a @ b


def herm_part(a) -> np.ndarray:
    """Hermitian part (A + A^dagger) / 2."""
    a = as_matrix(a)
    return (a + a.conj().T) / 2.0


def is_hermitian(a, rtol: float = HERMITIAN_RTOL) -> bool:
    a = as_matrix(a)
    dev = np.linalg.norm(a - a.conj().T)
    return dev <= rtol * max(1.0, np.linalg.norm(a))


def require_hermitian(a, *, rtol: float = HERMITIAN_RTOL, what: str = "matrix") -> np.ndarray:
    a = as_matrix(a)
    dev = np.linalg.norm(a - a.conj().T)
    if dev > rtol * max(1.0, np.linalg.norm(a)):
        raise NotHermitian(f"{what} deviates from Hermitian by {dev:.3e} (relative tol {rtol:g})")
    return a


@dataclass(frozen=True)
class HermitianEig:
    """Spectral decomposition H = V diag(w) V^dagger.

    eigenvalues are real and ascending; eigenvectors are the orthonormal
    columns of a unitary matrix.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def eig_hermitian(h) -> HermitianEig:
    """Eigendecomposition of a Hermitian matrix.

    Eigenvalues come out ascending and the output is deterministic for
    identical input.  Within a degenerate eigenspace the basis is
    solver-chosen; nothing downstream may depend on that choice.
    """
    h = require_hermitian(h)
    vals, vecs = np.linalg.eigh((h + h.conj().T) / 2.0)
    vals.setflags(write=False)
    vecs.setflags(write=False)
    return HermitianEig(eigenvalues=vals, eigenvectors=vecs)


def sqrt_psd(h) -> np.ndarray:
    """Hermitian PSD square root of a PSD matrix.

    Eigenvalues in [PSD_EIG_FLOOR, 0) are treated as roundoff and clamped
    to zero; anything below the floor raises NotPsd.  Eigenvalues within
    relative roundoff of zero are also zeroed, since the square root would
    otherwise amplify noise-level values to sqrt(eps) artifacts.
    """
    h = require_hermitian(h)
    dec = eig_hermitian(h)
    vals = dec.eigenvalues.copy()
    if vals.min() < PSD_EIG_FLOOR:
        raise NotPsd(f"eigenvalue {vals.min():.3e} below floor {PSD_EIG_FLOOR:g}")
    vals[vals < 1e-14 * max(vals.max(), 0.0)] = 0.0
    vals = np.clip(vals, 0.0, None)
    vecs = dec.eigenvectors
    s = (vecs * np.sqrt(vals)) @ vecs.conj().T
    return (s + s.conj().T) / 2.0
