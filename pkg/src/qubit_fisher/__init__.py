"""Fisher information toolkit for one-parameter qubit models.

Computes symmetric logarithmic derivatives and quantum (Helstrom)
information, evaluates the classical Fisher information of POVM
measurements, audits and constructs information-attaining measurements,
and verifies both Cramer-Rao bounds by Monte Carlo simulation.
"""

from .errors import (
    BlochOutOfBall,
    ConfigError,
    DegenerateDenominator,
    DimensionMismatch,
    FlatLikelihood,
    GridTooSmall,
    InvalidPovm,
    NotDensityMatrix,
    NotHermitian,
    NotPsd,
    NotPure,
    NotUnitAxis,
    QubitFisherError,
    SingularNormalizer,
    StationaryModel,
    UnsupportedOnKernel,
    WeightOutOfRange,
    ZeroProbability,
)
from .linalg import (
    EYE2,
    PAULI,
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    HermitianEig,
    adjoint,
    eig_hermitian,
    frob_norm,
    mul,
    sqrt_psd,
    trace,
)
from .models import (
    DerivMethod,
    PureFamily,
    PureKind,
    QubitModel,
    WeightFamily,
    WeightKind,
    bloch_of,
    drho,
    psi1,
    psi2,
    rho,
    state_of,
)
from .sld import (
    SldMethod,
    SldResult,
    pure_information,
    qfi_bloch_pure,
    qfi_mixed_closed,
    quantum_information,
    sld_closed,
    sld_lyapunov,
    sld_mixed_closed,
    sld_pure,
)
from .measurement import (
    AttainReport,
    InfoCheck,
    KRoots,
    OutcomeCheck,
    OverlapFlag,
    Povm,
    UniformVerdict,
    Verdict,
    attain_check,
    equality_residual,
    fisher_info,
    info_inequality,
    k_factor,
    k_roots,
    optimal_measurement,
    probs,
    projective_from_axis,
    r_of_k,
    r_prime_of_k,
    random_povm,
    uniform_attainability,
)
from .estimation import Experiment, EstimationSummary, mle, run_replicated, sample

__version__ = "0.1.0"
