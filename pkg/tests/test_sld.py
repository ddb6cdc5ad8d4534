import numpy as np
import pytest

from qubit_fisher import (
    NotPure,
    SIGMA_X,
    EYE2,
    SldMethod,
    UnsupportedOnKernel,
    drho,
    qfi_bloch_pure,
    qfi_mixed_closed,
    rho,
    sld_lyapunov,
    sld_mixed_closed,
    sld_pure,
)
from qubit_fisher.models import pure_bloch_dot
from qubit_fisher.sld import pure_information

from conftest import random_model, random_theta, sinusoidal_model, xz_mixed, xz_pure


def test_lyapunov_maximally_mixed():
    res = sld_lyapunov(EYE2 / 2, SIGMA_X / 2)
    np.testing.assert_allclose(res.L, SIGMA_X, atol=1e-14)
    assert res.qfi == pytest.approx(1.0, abs=1e-14)
    assert res.method is SldMethod.LYAPUNOV


def test_lyapunov_pure_state_kernel_convention():
    res = sld_lyapunov(np.diag([1.0, 0.0]), SIGMA_X / 2)
    np.testing.assert_allclose(res.L, SIGMA_X, atol=1e-12)
    assert res.qfi == pytest.approx(1.0, abs=1e-12)
    assert res.residual <= 1e-12


def test_lyapunov_mixed_const():
    res = sld_lyapunov(rho(xz_mixed(), 0.0), drho(xz_mixed(), 0.0))
    np.testing.assert_allclose(res.L, SIGMA_X / 2, atol=1e-12)
    assert res.qfi == pytest.approx(0.25, abs=1e-12)


def test_lyapunov_kernel_obstruction():
    r = np.diag([1.0, 0.0, 0.0]).astype(complex)
    d = np.diag([0.0, 0.1, -0.1]).astype(complex)
    with pytest.raises(UnsupportedOnKernel):
        sld_lyapunov(r, d)


def test_lyapunov_higher_dim_synthetic():
    # exercises the generic solver away from the qubit case
    rng = np.random.default_rng(5)
    for n in (3, 4, 8):
        a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        r = a @ a.conj().T
        r /= np.trace(r).real
        h = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        h = (h + h.conj().T) / 2
        d = (r @ h + h @ r) / 2  # manufactured so the score is exactly h up to centering
        d -= np.trace(d).real / n * np.eye(n)
        res = sld_lyapunov(r, d)
        assert res.residual <= 1e-10 * max(1.0, np.linalg.norm(d))


def test_pure_closed_form():
    res = sld_pure(np.diag([1.0, 0.0]), SIGMA_X / 2)
    np.testing.assert_allclose(res.L, SIGMA_X, atol=1e-14)
    assert res.qfi == pytest.approx(1.0, abs=1e-14)
    assert res.method is SldMethod.PURE_CLOSED


def test_pure_zero_derivative():
    res = sld_pure(np.diag([1.0, 0.0]), np.zeros((2, 2)))
    assert res.qfi == 0.0
    assert np.all(res.L == 0)


def test_pure_rejects_mixed_state():
    with pytest.raises(NotPure):
        sld_pure(np.diag([0.75, 0.25]), SIGMA_X / 2)


def test_pure_agrees_with_lyapunov_across_grid():
    model = xz_pure()
    for theta in np.linspace(0.0, np.pi, 24):
        r, d = rho(model, theta), drho(model, theta)
        a = sld_pure(r, d)
        b = sld_lyapunov(r, d)
        assert abs(a.qfi - b.qfi) <= 1e-10


def test_mixed_closed_const_example():
    res = sld_mixed_closed(xz_mixed(), 0.0)
    np.testing.assert_allclose(res.L, SIGMA_X / 2, atol=1e-12)
    assert res.qfi == pytest.approx(0.25, abs=1e-14)
    assert res.residual <= 1e-12


def test_mixed_closed_sinusoidal_example():
    # w = 0.6, wdot = 0.2 at theta = 0: L = (1/3) rho1 + 0.2 sigma_x - 0.5 rho2
    model = sinusoidal_model()
    res = sld_mixed_closed(model, 0.0)
    r1 = np.diag([1.0, 0.0])
    r2 = np.diag([0.0, 1.0])
    expect = (0.2 / 0.6) * r1 + 0.2 * SIGMA_X - (0.2 / 0.4) * r2
    np.testing.assert_allclose(res.L, expect, atol=1e-12)
    assert res.residual <= 1e-12


def test_mixed_information_formula_value():
    # wdot^2/(w(1-w)) + (2w-1)^2 I1 at w=0.6, wdot=0.2, I1=1
    expect = 0.2**2 / (0.6 * 0.4) + (2 * 0.6 - 1.0) ** 2 * 1.0
    got = qfi_mixed_closed(sinusoidal_model(), 0.0)
    assert got == pytest.approx(expect, abs=1e-14)
    oracle = sld_lyapunov(rho(sinusoidal_model(), 0.0), drho(sinusoidal_model(), 0.0)).qfi
    assert got == pytest.approx(oracle, abs=1e-10)


def test_mixed_closed_matches_lyapunov_fuzz(rng):
    for _ in range(40):
        model = random_model(rng, mixed=True)
        theta = random_theta(rng)
        closed = sld_mixed_closed(model, theta)
        oracle = sld_lyapunov(rho(model, theta), drho(model, theta))
        assert abs(closed.qfi - oracle.qfi) <= 1e-10
        assert closed.residual <= 1e-10 * max(1.0, np.linalg.norm(drho(model, theta)))
        trace_form = np.trace(rho(model, theta) @ closed.L @ closed.L).real
        assert closed.qfi == pytest.approx(trace_form, abs=1e-10)


def test_const_weight_scaling_law(rng):
    # with a constant weight the information is (2w-1)^2 times the pure part's
    from qubit_fisher import PureFamily, PureKind, QubitModel, WeightFamily, WeightKind

    for w in (0.55, 0.75, 0.9):
        model = QubitModel(PureFamily(PureKind.XZ_CIRCLE), WeightFamily(WeightKind.CONST, (w,)))
        for theta in np.linspace(0.0, 2.0, 12):
            i1 = pure_information(model, theta)
            assert abs(qfi_mixed_closed(model, theta) - (2 * w - 1) ** 2 * i1) <= 1e-10
            assert qfi_mixed_closed(model, theta) < i1


def test_score_is_centered(rng):
    # tr(rho L) = 0 follows from the traceless derivative
    for _ in range(30):
        model = random_model(rng)
        theta = random_theta(rng)
        r, d = rho(model, theta), drho(model, theta)
        res = sld_lyapunov(r, d)
        assert abs(np.trace(r @ res.L)) <= 1e-10


def test_pure_state_score_properties(rng):
    for _ in range(25):
        model = random_model(rng, mixed=False)
        theta = random_theta(rng)
        r, d = rho(model, theta), drho(model, theta)
        res = sld_pure(r, d)
        np.testing.assert_allclose(res.L, 2 * d, atol=1e-14)
        assert np.linalg.norm(r @ d @ r) <= 1e-10
        assert abs(res.qfi - 2 * np.trace(d @ d).real) <= 1e-10


def test_opposite_component_has_same_information(rng):
    # the complementary pure component moves oppositely but carries equal
    # information, and its score is the negated one
    from qubit_fisher import QubitModel, psi1, psi2

    for _ in range(15):
        model = random_model(rng, mixed=True)
        theta = random_theta(rng)
        k1, k2 = psi1(model, theta), psi2(model, theta)
        r1 = np.outer(k1, k1.conj())
        r2 = np.outer(k2, k2.conj())
        d1 = drho(QubitModel(model.pure), theta)
        res1 = sld_lyapunov(r1, d1)
        res2 = sld_lyapunov(r2, -d1)
        assert np.linalg.norm(res2.L + res1.L) <= 1e-10
        assert abs(res2.qfi - res1.qfi) <= 1e-10


def test_kernel_entries_do_not_affect_information(rng):
    for _ in range(15):
        model = random_model(rng, mixed=False)
        theta = random_theta(rng)
        r, d = rho(model, theta), drho(model, theta)
        res = sld_lyapunov(r, d)
        vals, vecs = np.linalg.eigh(r)
        kernel_vec = vecs[:, np.argmin(vals)]
        bump = 0.37 * np.outer(kernel_vec, kernel_vec.conj())
        qfi_bumped = np.trace(r @ (res.L + bump) @ (res.L + bump)).real
        assert abs(qfi_bumped - res.qfi) <= 1e-12


def test_bloch_velocity_information():
    assert qfi_bloch_pure([0.0, 0.0, 0.0]) == 0.0
    assert qfi_bloch_pure([1.0, 0.0, 0.0]) == 1.0
    model = xz_pure()
    for theta in np.linspace(0.0, 2 * np.pi, 9):
        u_dot = pure_bloch_dot(model, theta)
        assert qfi_bloch_pure(u_dot) == pytest.approx(1.0, abs=1e-12)
        r, d = rho(model, theta), drho(model, theta)
        assert qfi_bloch_pure(u_dot) == pytest.approx(sld_pure(r, d).qfi, abs=1e-8)
