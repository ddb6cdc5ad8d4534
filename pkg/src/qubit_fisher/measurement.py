"""POVMs, classical Fisher information, and information-attaining measurements.

The classical Fisher information of a measurement {m_x} on a family
rho(theta) is

    i(theta, M) = sum_{p_x > 0} tr(D m_x)^2 / p_x,      p_x = tr(rho m_x),

and never exceeds the quantum information I(theta).  Equality holds exactly
for measurements whose elements (on outcomes of positive probability) are
proportional to rank-one projectors |gamma><gamma| whose overlaps with the
model's orthobasis (psi1, psi2) are real-proportional at specific admissible
ratios.  For mixed models the admissible ratios come from the two roots of
a quadratic in the square root of the per-outcome factor

    k_x = tr(rho L m_x L) / p_x;

for pure models every real overlap ratio is admissible (the classic
rank-one-projector result), with the ratio magnitude tied to k_x by
|ratio|^2 = I1 / k_x.

``attain_check`` audits a measurement outcome by outcome and grounds its
verdict in the numeric gap I - i; ``optimal_measurement`` builds the
two-outcome projective measurement that attains the bound.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import (
    DegenerateDenominator,
    GridTooSmall,
    InvalidPovm,
    NotUnitAxis,
    SingularNormalizer,
    StationaryModel,
    ZeroProbability,
)
from .linalg import EYE2, as_matrix, eig_hermitian, pauli_vector, sqrt_psd
from .models import QubitModel, bloch_of, drho, psi1, psi2, rho, validate_density, weight_at
from .sld import pure_information, qfi_mixed_closed, quantum_information, sld_mixed_closed

__all__ = [
    "SUPPORT_EPS",
    "AttainReport",
    "InfoCheck",
    "KRoots",
    "OutcomeCheck",
    "OverlapFlag",
    "Povm",
    "UniformVerdict",
    "Verdict",
    "attain_check",
    "equality_residual",
    "fisher_info",
    "info_inequality",
    "k_factor",
    "k_roots",
    "optimal_measurement",
    "probs",
    "projective_from_axis",
    "r_of_k",
    "r_prime_of_k",
    "random_povm",
    "uniform_attainability",
]

#: outcomes with probability at or below this are outside the support
SUPPORT_EPS = 1e-12

_POVM_HERM_RTOL = 1e-12
_POVM_EIG_FLOOR = -1e-10
_POVM_SUM_ATOL = 1e-10
_PROB_BAND = 1e-12

_RANK_ONE_RTOL = 1e-8
_REALITY_RTOL = 1e-8
_R_MATCH_TOL = 1e-6
_GAP_RTOL = 1e-9
_INFINITE_RTOL = 1e-12
_UNDEFINED_ATOL = 1e-14
_DENOM_TOL = 1e-12

_PLANE_RTOL = 1e-8
_RADIUS_ATOL = 1e-8


class Povm:
    """A finite collection of labeled nonnegative Hermitian 2x2 elements
    summing to the identity.

    Accepts either bare matrices or (label, matrix) pairs; missing labels
    are filled in as m0, m1, ...  Elements are validated and stored
    read-only at construction.
    """

    __slots__ = ("elements",)

    def __init__(self, elements):
        normalized = []
        for i, item in enumerate(elements):
            if isinstance(item, (tuple, list)) and len(item) == 2 and isinstance(item[0], (str, type(None))):
                label, mat = item
            else:
                label, mat = None, item
            label = f"m{i}" if label in (None, "") else str(label)
            mat = as_matrix(mat)
            if mat.shape != (2, 2):
                raise InvalidPovm(f"element {label!r} has shape {mat.shape}, expected (2, 2)")
            dev = np.linalg.norm(mat - mat.conj().T)
            if dev > _POVM_HERM_RTOL * max(1.0, np.linalg.norm(mat)):
                raise InvalidPovm(f"element {label!r} deviates from Hermitian by {dev:.3e}")
            low = eig_hermitian((mat + mat.conj().T) / 2).eigenvalues.min()
            if low < _POVM_EIG_FLOOR:
                raise InvalidPovm(f"element {label!r} has eigenvalue {low:.3e}")
            mat = mat.copy()
            mat.setflags(write=False)
            normalized.append((label, mat))
        if not normalized:
            raise InvalidPovm("a POVM needs at least one element")
        labels = [lab for lab, _ in normalized]
        if len(set(labels)) != len(labels):
            raise InvalidPovm(f"duplicate labels: {sorted(labels)}")
        total = sum(mat for _, mat in normalized)
        dev = np.linalg.norm(total - EYE2)
        if dev > _POVM_SUM_ATOL:
            raise InvalidPovm(f"elements sum to identity only within {dev:.3e}")
        self.elements = tuple(normalized)

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(lab for lab, _ in self.elements)

    @property
    def matrices(self) -> tuple[np.ndarray, ...]:
        return tuple(mat for _, mat in self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __repr__(self) -> str:
        return f"Povm(labels={self.labels})"


def probs(rho_mat, povm: Povm) -> np.ndarray:
    """Outcome probabilities tr(rho m_x), clamped to [0, 1]."""
    rho_mat = validate_density(rho_mat)
    out = np.empty(len(povm))
    for i, (label, mat) in enumerate(povm):
        p = complex(np.trace(rho_mat @ mat)).real
        if p < -_PROB_BAND or p > 1.0 + _PROB_BAND:
            raise InvalidPovm(f"outcome {label!r} has probability {p:.6g}")
        out[i] = min(max(p, 0.0), 1.0)
    if abs(out.sum() - 1.0) > _POVM_SUM_ATOL:
        raise InvalidPovm(f"probabilities sum to {out.sum():.12g}")
    return out


def projective_from_axis(axis) -> Povm:
    """Two-outcome projective measurement (1 +/- a . sigma) / 2 along a unit axis."""
    a = np.asarray(axis, dtype=float)
    if a.shape != (3,):
        raise NotUnitAxis(f"expected a 3-vector, got shape {a.shape}")
    norm = np.linalg.norm(a)
    if abs(norm - 1.0) > 1e-10:
        raise NotUnitAxis(f"axis norm {norm:.12f} is not 1")
    sig = pauli_vector(a)
    return Povm([("plus", (EYE2 + sig) / 2.0), ("minus", (EYE2 - sig) / 2.0)])


def random_povm(k: int, seed: int) -> Povm:
    """Random k-outcome POVM, deterministic per seed.

    Draws k complex 2x2 matrices A_x with standard-normal real and
    imaginary parts, forms S = sum A_x A_x^dagger and returns the elements
    S^{-1/2} A_x A_x^dagger S^{-1/2}.  Redraws internally up to 8 times if
    S is singular, then raises SingularNormalizer.
    """
    if k < 2:
        raise ValueError(f"need at least 2 outcomes, got {k}")
    rng = np.random.default_rng(seed)
    for _ in range(8):
        blocks = [
            (lambda a: a @ a.conj().T)(rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2)))
            for _ in range(k)
        ]
        total = sum(blocks)
        dec = eig_hermitian((total + total.conj().T) / 2)
        if dec.eigenvalues.min() <= 1e-12:
            continue
        inv_sqrt = (dec.eigenvectors / np.sqrt(dec.eigenvalues)) @ dec.eigenvectors.conj().T
        mats = [(inv_sqrt @ b @ inv_sqrt) for b in blocks]
        return Povm([(f"m{i}", (m + m.conj().T) / 2) for i, m in enumerate(mats)])
    raise SingularNormalizer(f"normalizer stayed singular after 8 draws (k={k}, seed={seed})")


def fisher_info(d, rho_mat, povm: Povm) -> float:
    """Classical Fisher information of a measurement.

    Outcomes with probability at or below SUPPORT_EPS are excluded from
    the sum.  tr(D m) must be real (both factors Hermitian); a violation
    means corrupted inputs.
    """
    d = as_matrix(d)
    p = probs(rho_mat, povm)
    total = 0.0
    for pi, (label, mat) in zip(p, povm):
        if pi <= SUPPORT_EPS:
            continue
        t = complex(np.trace(d @ mat))
        if abs(t.imag) > 1e-10 * max(1.0, abs(t)):
            raise InvalidPovm(f"tr(D m) for outcome {label!r} is not real: {t}")
        total += t.real * t.real / pi
    return total


class InfoCheck(NamedTuple):
    fisher: float
    qfi: float
    holds: bool


def info_inequality(model: QubitModel, theta: float, povm: Povm) -> InfoCheck:
    """Evaluate i(theta, M) and I(theta) and whether i <= I (with slack)."""
    fisher = fisher_info(drho(model, theta), rho(model, theta), povm)
    qfi = quantum_information(model, theta)
    return InfoCheck(fisher, qfi, fisher <= qfi + _GAP_RTOL * max(1.0, qfi))


def k_factor(rho_mat, L, m, p: float) -> float:
    """Per-outcome factor tr(rho L m L) / p.

    Real and nonnegative for valid inputs (it is a Gram trace).
    """
    if p <= SUPPORT_EPS:
        raise ZeroProbability(f"outcome probability {p:.3e} is not positive")
    rho_mat, L, m = as_matrix(rho_mat), as_matrix(L), as_matrix(m)
    t = complex(np.trace(rho_mat @ L @ m @ L)) / p
    if abs(t.imag) > 1e-10 * max(1.0, abs(t)):
        raise ValueError(f"k factor has imaginary part {t.imag:.3e}; inputs are corrupted")
    return t.real


class KRoots(NamedTuple):
    k_sqrt_plus: float
    k_sqrt_minus: float


def k_roots(w: float, w_dot: float, i1: float, qfi: float | None = None) -> KRoots:
    """Both real roots of  s^2 + c s - I = 0  in s = k^(1/2), where
    c = w_dot (2w - 1) / (w (1 - w)).

    When ``qfi`` is omitted it is derived from (w, w_dot, i1) via the
    mixture information formula.  The discriminant c^2 + 4 I is never
    negative; one root is nonnegative and the other nonpositive, and their
    product is -I.
    """
    if qfi is None:
        qfi = w_dot * w_dot / (w * (1.0 - w)) + (2.0 * w - 1.0) ** 2 * i1
    c = w_dot * (2.0 * w - 1.0) / (w * (1.0 - w))
    disc = np.sqrt(max(c * c + 4.0 * qfi, 0.0))
    return KRoots((-c + disc) / 2.0, (-c - disc) / 2.0)


def r_of_k(k_sqrt: float, w: float, w_dot: float, i1: float) -> float:
    """Admissible overlap ratio (2w - 1) sqrt(I1) / (k_sqrt - w_dot / w)."""
    denom = k_sqrt - w_dot / w
    if abs(denom) <= _DENOM_TOL:
        raise DegenerateDenominator(f"k_sqrt - w_dot/w = {denom:.3e}")
    return (2.0 * w - 1.0) * np.sqrt(i1) / denom


def r_prime_of_k(k_sqrt: float, w: float, w_dot: float, i1: float) -> float:
    """Consistency twin (k_sqrt + w_dot / (1 - w)) / ((2w - 1) sqrt(I2));
    the two pure components carry equal information, so I2 = I1.

    Equals r_of_k at either root of k_roots.
    """
    denom = (2.0 * w - 1.0) * np.sqrt(i1)
    if abs(denom) <= _DENOM_TOL:
        raise DegenerateDenominator(f"(2w - 1) sqrt(I1) = {denom:.3e}")
    return (k_sqrt + w_dot / (1.0 - w)) / denom


class OverlapFlag(enum.Enum):
    FINITE = "finite"
    INFINITE = "infinite"
    UNDEFINED = "undefined"


class Verdict(enum.Enum):
    ATTAINS = "attains"
    FAILS_RANK = "fails_rank"
    FAILS_REALITY = "fails_reality"
    FAILS_R_VALUE = "fails_r_value"
    FAILS_NUMERIC = "fails_numeric"


@dataclass(frozen=True)
class OutcomeCheck:
    """Per-outcome audit record."""

    label: str
    probability: float
    rank_one: bool
    second_eigenvalue: float
    gamma: np.ndarray | None
    overlap_flag: OverlapFlag
    overlap_ratio: complex | None
    r_expected: tuple[float, float] | None
    reality_ok: bool
    ratio_matches: bool


@dataclass(frozen=True)
class AttainReport:
    """Outcome-by-outcome attainability audit plus the numeric gap."""

    outcomes: tuple[OutcomeCheck, ...]
    skipped: tuple[str, ...]
    fisher: float
    qfi: float
    gap: float
    verdict: Verdict


def _canonical_phase(vec: np.ndarray) -> np.ndarray:
    """Rotate a ket's global phase so its leading significant entry is real
    positive.  Purely for deterministic output; every check on the vector
    is phase-invariant."""
    mags = np.abs(vec)
    idx = int(np.argmax(mags > 1e-12 * mags.max()))
    phase = vec[idx] / mags[idx]
    return vec / phase


def attain_check(model: QubitModel, theta: float, povm: Povm) -> AttainReport:
    """Audit whether a measurement attains the quantum information.

    Outcomes with probability at or below SUPPORT_EPS are skipped.  Each
    remaining outcome is tested for (a) rank one (second eigenvalue no
    larger than 1e-8 of the element norm), (b) a real overlap ratio
    <gamma|psi1> / <gamma|psi2>, and (c) that the ratio equals one of the
    admissible values: for mixed models the two ratios derived from the
    k-quadratic roots; for pure models +/- sqrt(I1 / k_x) from the
    outcome's own factor k_x (a ratio of zero overlap with psi2 is
    admissible there exactly when k_x vanishes).  The verdict is ATTAINS
    only if every test passes and the numeric gap I - i closes to
    1e-9 * max(1, I).
    """
    rho_mat = rho(model, theta)
    d = drho(model, theta)
    fisher = fisher_info(d, rho_mat, povm)
    qfi = quantum_information(model, theta)
    gap = qfi - fisher

    ket1 = psi1(model, theta)
    ket2 = psi2(model, theta)
    i1 = pure_information(model, theta)

    if model.is_mixed:
        w, wdot = weight_at(model, theta)
        roots = k_roots(w, wdot, i1, qfi)
        mixed_pair = (r_of_k(roots.k_sqrt_plus, w, wdot, i1), r_of_k(roots.k_sqrt_minus, w, wdot, i1))
        L = sld_mixed_closed(model, theta).L
    else:
        mixed_pair = None
        L = 2.0 * d

    p = probs(rho_mat, povm)
    outcomes = []
    skipped = []
    for pi, (label, mat) in zip(p, povm):
        if pi <= SUPPORT_EPS:
            skipped.append(label)
            continue

        dec = eig_hermitian(mat)
        second = float(abs(dec.eigenvalues[0]))
        rank_one = second <= _RANK_ONE_RTOL * np.linalg.norm(mat)
        gamma = _canonical_phase(dec.eigenvectors[:, -1])
        o1 = complex(np.vdot(gamma, ket1))
        o2 = complex(np.vdot(gamma, ket2))

        if abs(o1) <= _UNDEFINED_ATOL and abs(o2) <= _UNDEFINED_ATOL:
            flag, ratio = OverlapFlag.UNDEFINED, None
        elif abs(o2) <= _INFINITE_RTOL * abs(o1):
            flag, ratio = OverlapFlag.INFINITE, None
        else:
            flag, ratio = OverlapFlag.FINITE, o1 / o2

        if flag is OverlapFlag.FINITE:
            reality_ok = abs(ratio.imag) <= _REALITY_RTOL * (1.0 + abs(ratio))
        else:
            # a vanishing psi2 overlap is trivially real-proportional
            reality_ok = flag is OverlapFlag.INFINITE

        if model.is_mixed:
            r_pair = mixed_pair
            if flag is OverlapFlag.FINITE:
                matches = any(abs(ratio - r) <= _R_MATCH_TOL * max(1.0, abs(r)) for r in r_pair)
            else:
                matches = False
        else:
            kx = k_factor(rho_mat, L, mat, pi)
            if kx <= 1e-12 * max(1.0, i1):
                # gamma is aligned with psi1; the equality condition holds with k = 0
                r_pair = None
                matches = flag is OverlapFlag.INFINITE
            else:
                root = np.sqrt(i1 / kx)
                r_pair = (root, -root)
                if flag is OverlapFlag.FINITE:
                    matches = any(abs(ratio - r) <= _R_MATCH_TOL * max(1.0, abs(r)) for r in r_pair)
                else:
                    matches = False

        outcomes.append(
            OutcomeCheck(
                label=label,
                probability=float(pi),
                rank_one=bool(rank_one),
                second_eigenvalue=second,
                gamma=gamma,
                overlap_flag=flag,
                overlap_ratio=ratio,
                r_expected=r_pair,
                reality_ok=bool(reality_ok),
                ratio_matches=bool(matches),
            )
        )

    if any(not oc.rank_one for oc in outcomes):
        verdict = Verdict.FAILS_RANK
    elif any(not oc.reality_ok for oc in outcomes):
        verdict = Verdict.FAILS_REALITY
    elif any(not oc.ratio_matches for oc in outcomes):
        verdict = Verdict.FAILS_R_VALUE
    elif gap <= _GAP_RTOL * max(1.0, qfi):
        verdict = Verdict.ATTAINS
    else:
        verdict = Verdict.FAILS_NUMERIC

    return AttainReport(
        outcomes=tuple(outcomes),
        skipped=tuple(skipped),
        fisher=fisher,
        qfi=qfi,
        gap=gap,
        verdict=verdict,
    )


def optimal_measurement(model: QubitModel, theta: float) -> Povm:
    """Two-outcome projective measurement attaining the quantum information.

    Outcome "plus" projects onto (r psi1 + psi2) / sqrt(1 + r^2) with r the
    admissible ratio of the nonnegative k-root (r = 1 for pure models);
    outcome "minus" is its orthocomplement, whose overlap ratio lands on
    the other root automatically (the two roots multiply to -1).
    """
    qfi = quantum_information(model, theta)
    if qfi <= 1e-12:
        raise StationaryModel(f"no information at theta = {theta:g}")
    ket1 = psi1(model, theta)
    ket2 = psi2(model, theta)
    if model.is_mixed:
        w, wdot = weight_at(model, theta)
        i1 = pure_information(model, theta)
        roots = k_roots(w, wdot, i1, qfi)
        r_plus = r_of_k(roots.k_sqrt_plus, w, wdot, i1)
    else:
        r_plus = 1.0
    gamma = (r_plus * ket1 + ket2) / np.sqrt(1.0 + r_plus * r_plus)
    proj = np.outer(gamma, gamma.conj())
    proj = (proj + proj.conj().T) / 2.0
    return Povm([("plus", proj), ("minus", EYE2 - proj)])


def equality_residual(k: float, m, rho_mat, L) -> float:
    """Frobenius residual of the per-outcome equality condition

        k^(1/2) m^(1/2) rho^(1/2) = m^(1/2) L rho^(1/2).

    The square root of k is sign-ambiguous (the admissible values are the
    two roots of a quadratic, one of either sign), so the better of the
    two branches is reported.
    """
    if k < 0.0:
        if k < -1e-12:
            raise ValueError(f"k = {k:.3e} must be nonnegative")
        k = 0.0
    ms = sqrt_psd(m)
    rs = sqrt_psd(rho_mat)
    lhs = np.sqrt(k) * ms @ rs
    rhs = ms @ as_matrix(L) @ rs
    return float(min(np.linalg.norm(lhs - rhs), np.linalg.norm(lhs + rhs)))


class UniformVerdict(NamedTuple):
    uniform: bool
    plane_normal: np.ndarray | None


def uniform_attainability(model: QubitModel, theta_grid) -> UniformVerdict:
    """Geometric test for a measurement that attains at every theta.

    True exactly when the Bloch trajectory over the grid is a great circle
    of its sphere: the radius is constant and the (unit-normalized) Bloch
    vectors lie in a plane through the origin.  ``plane_normal`` is the
    unit normal of that plane when uniform.
    """
    thetas = np.asarray(theta_grid, dtype=float)
    if np.unique(thetas).size < 8:
        raise GridTooSmall(f"need at least 8 distinct grid points, got {np.unique(thetas).size}")
    vectors = np.array([bloch_of(rho(model, t)) for t in thetas])
    norms = np.linalg.norm(vectors, axis=1)
    if norms.max() - norms.min() > _RADIUS_ATOL:
        return UniformVerdict(False, None)
    units = vectors / norms[:, None]
    svals = np.linalg.svd(units, compute_uv=False)
    if svals[-1] > _PLANE_RTOL * svals[0]:
        return UniformVerdict(False, None)
    _, _, vh = np.linalg.svd(units)
    normal = vh[-1]
    # deterministic sign: dominant component positive; + 0.0 clears signed zeros
    lead = normal[np.argmax(np.abs(normal))]
    if lead < 0:
        normal = -normal
    return UniformVerdict(True, normal + 0.0)
