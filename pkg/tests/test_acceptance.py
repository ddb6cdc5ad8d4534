"""Acceptance suite: one test per criterion, each printing a verdict line.

Run with ``pytest -s tests/test_acceptance.py`` to see the per-criterion
lines; the whole suite is desk scale.
"""

import time

import numpy as np
import pytest

from qubit_fisher import (
    Experiment,
    Povm,
    PureFamily,
    PureKind,
    QubitModel,
    Verdict,
    WeightFamily,
    WeightKind,
    attain_check,
    drho,
    equality_residual,
    fisher_info,
    info_inequality,
    k_factor,
    optimal_measurement,
    probs,
    projective_from_axis,
    qfi_mixed_closed,
    random_povm,
    rho,
    run_replicated,
    sample,
    sld_closed,
    sld_lyapunov,
    sld_mixed_closed,
    sld_pure,
    uniform_attainability,
)
from qubit_fisher.cli import main
from qubit_fisher.models import pure_bloch
from qubit_fisher.sld import pure_information

from conftest import random_model, random_theta, sinusoidal_model, xz_mixed, xz_pure


def plane_axis(alpha):
    return np.array([np.sin(alpha), 0.0, np.cos(alpha)])


def test_criterion_1_sld_defining_equation():
    rng = np.random.default_rng(101)
    checked = 0
    for _ in range(500):
        model = random_model(rng)
        theta = random_theta(rng)
        r, d = rho(model, theta), drho(model, theta)
        bound = 1e-10 * max(1.0, np.linalg.norm(d))
        oracle = sld_lyapunov(r, d)
        assert oracle.residual <= bound
        if model.is_mixed:
            closed = sld_mixed_closed(model, theta)
        else:
            closed = sld_pure(r, d)
        assert closed.residual <= bound
        assert abs(closed.qfi - oracle.qfi) <= 1e-10
        checked += 1
    print(f"[PASS] criterion 1: defining-equation residual and closed-vs-oracle "
          f"agreement on {checked} fuzzed models")


def test_criterion_2_mixture_information_value():
    model = sinusoidal_model(0.6, 0.2)
    # independent substitution into the information formula:
    # wdot^2 / (w (1 - w)) + (2w - 1)^2 I1  at  w = 0.6, wdot = 0.2, I1 = 1
    i1 = pure_information(model, 0.0)
    assert i1 == pytest.approx(1.0, abs=1e-12)
    formula = 0.2**2 / (0.6 * 0.4) + (2 * 0.6 - 1.0) ** 2 * i1
    got = qfi_mixed_closed(model, 0.0)
    assert abs(got - formula) <= 1e-12
    oracle = sld_lyapunov(rho(model, 0.0), drho(model, 0.0)).qfi
    assert abs(got - oracle) <= 1e-10
    print(f"[PASS] criterion 2: mixture information {got:.12f} matches the formula "
          f"within 1e-12 and the Lyapunov oracle within 1e-10")


def test_criterion_3_constant_weight_scaling():
    worst = 0.0
    for w in (0.55, 0.75, 0.9):
        model = QubitModel(PureFamily(PureKind.XZ_CIRCLE), WeightFamily(WeightKind.CONST, (w,)))
        for theta in np.linspace(-1.5, 1.5, 32):
            i1 = pure_information(model, theta)
            dev = abs(qfi_mixed_closed(model, theta) - (2 * w - 1) ** 2 * i1)
            worst = max(worst, dev)
            assert dev <= 1e-10
    print(f"[PASS] criterion 3: constant-weight scaling law, worst deviation {worst:.3e}")


def test_criterion_4_information_inequality_fuzz():
    rng = np.random.default_rng(404)
    violations = 0
    for i in range(1000):
        model = random_model(rng)
        theta = random_theta(rng)
        povm = random_povm(int(rng.integers(2, 6)), 40_000 + i)
        check = info_inequality(model, theta, povm)
        if not check.holds:
            violations += 1
    assert violations == 0
    print("[PASS] criterion 4: information inequality held for 1000 random POVMs")


def test_criterion_5_attaining_construction():
    rng = np.random.default_rng(505)
    worst_gap = 0.0
    worst_res = 0.0
    for _ in range(100):
        model = random_model(rng, mixed=True)
        theta = random_theta(rng)
        povm = optimal_measurement(model, theta)
        report = attain_check(model, theta, povm)
        assert report.verdict is Verdict.ATTAINS
        assert report.gap <= 1e-9 * max(1.0, report.qfi)
        worst_gap = max(worst_gap, abs(report.gap))
        r = rho(model, theta)
        L = sld_mixed_closed(model, theta).L
        for pi, (_, m) in zip(probs(r, povm), povm):
            k = k_factor(r, L, m, pi)
            res = equality_residual(k, m, r, L)
            worst_res = max(worst_res, res)
            assert res <= 1e-8
    print(f"[PASS] criterion 5: constructed measurement attains on 100 fuzzed mixed "
          f"models (worst gap {worst_gap:.3e}, worst equality residual {worst_res:.3e})")


def test_criterion_6_mixed_versus_pure_contrast():
    model = xz_mixed(0.75)
    d, r = drho(model, 0.0), rho(model, 0.0)
    qfi = qfi_mixed_closed(model, 0.0)

    def bernoulli(delta):
        # independent closed form from the two-outcome success probability
        s = (2 * 0.75 - 1.0) ** 2
        return s * np.sin(delta) ** 2 / (1.0 - s * np.cos(delta) ** 2)

    x = fisher_info(d, r, projective_from_axis([1.0, 0.0, 0.0]))
    assert abs(x - 0.25) <= 1e-10 and abs(qfi - 0.25) <= 1e-10
    assert abs(x - bernoulli(np.pi / 2)) <= 1e-10

    tilted = fisher_info(d, r, projective_from_axis(plane_axis(np.pi / 4)))
    assert abs(tilted - 1.0 / 7.0) <= 1e-10
    assert abs(tilted - bernoulli(np.pi / 4)) <= 1e-10

    y = fisher_info(d, r, projective_from_axis([0.0, 1.0, 0.0]))
    assert abs(y) <= 1e-12
    print(f"[PASS] criterion 6: contrast values {x:.6f}, {tilted:.6f}, {y:.1e} "
          f"against two independent computations")


def test_criterion_7_pure_state_recovery():
    model = xz_pure()
    thetas = np.arange(16) * np.pi / 16
    axes = (np.arange(16) + 0.5) * np.pi / 16  # interleaved: never +/-u
    for theta in thetas:
        d, r = drho(model, theta), rho(model, theta)
        qfi = sld_pure(r, d).qfi
        for alpha in axes:
            fisher = fisher_info(d, r, projective_from_axis(plane_axis(alpha)))
            assert abs(fisher - 1.0) <= 1e-9
            assert abs(qfi - 1.0) <= 1e-9
    print("[PASS] criterion 7: 16 x 16 pure-state plane measurements all reach "
          "fisher = qfi = 1")


def test_criterion_8_uniform_attainability():
    grid = np.linspace(0.0, 2 * np.pi, 16, endpoint=False)
    xz = xz_pure()
    equator = QubitModel(PureFamily(PureKind.LONGITUDE, np.pi / 2))
    small = QubitModel(PureFamily(PureKind.LONGITUDE, np.pi / 3))

    assert uniform_attainability(xz, grid).uniform
    assert uniform_attainability(equator, grid).uniform
    assert not uniform_attainability(small, grid).uniform

    from qubit_fisher import bloch_of

    for model in (xz, equator):
        povm = optimal_measurement(model, grid[len(grid) // 2])
        axis = bloch_of(povm.matrices[0])
        for theta in grid:
            if abs(abs(axis @ pure_bloch(model, theta)) - 1.0) <= 1e-8:
                continue
            report = attain_check(model, theta, povm)
            assert abs(report.fisher - report.qfi) <= 1e-8 * max(1.0, report.qfi)
    print("[PASS] criterion 8: great circles uniform (plus equator), small circle not; "
          "one fixed axis attains across the grid")


def test_criterion_9_monte_carlo_bounds():
    start = time.monotonic()
    model = xz_mixed(0.75)
    theta0 = 0.3
    n = 100_000
    reps = 400

    attaining = optimal_measurement(model, theta0)
    exp_a = Experiment(model, theta0, attaining, n, seed=900)
    summary_a = run_replicated(exp_a, reps)
    qcr = 1.0 / (n * 0.25)
    assert summary_a.qcr_bound == pytest.approx(qcr, rel=1e-12)
    assert 0.85 * qcr <= summary_a.theta_hat_var <= 1.25 * qcr

    tilted = projective_from_axis(plane_axis(theta0 + np.pi / 4))
    exp_b = Experiment(model, theta0, tilted, n, seed=901)
    summary_b = run_replicated(exp_b, reps)
    cr_b = 1.0 / (n * (1.0 / 7.0))
    assert summary_b.cr_bound == pytest.approx(cr_b, rel=1e-9)
    assert 0.85 * cr_b <= summary_b.theta_hat_var <= 1.25 * cr_b
    assert summary_b.theta_hat_var >= summary_b.qcr_bound * 0.85

    # separation by at least two Monte Carlo standard errors of the variances
    se = np.sqrt(2.0 / (reps - 1)) * np.array([summary_a.theta_hat_var, summary_b.theta_hat_var])
    assert summary_b.theta_hat_var - summary_a.theta_hat_var >= 2.0 * np.hypot(*se)

    elapsed = time.monotonic() - start
    assert elapsed <= 30.0
    print(f"[PASS] criterion 9: variances {summary_a.theta_hat_var:.3e} (attaining) vs "
          f"{summary_b.theta_hat_var:.3e} (tilted) inside their bands in {elapsed:.1f}s")


def test_criterion_10_determinism(tmp_path, capsys):
    povm_a = random_povm(4, seed=77)
    povm_b = random_povm(4, seed=77)
    assert all(np.array_equal(a, b) for a, b in zip(povm_a.matrices, povm_b.matrices))

    exp = Experiment(xz_mixed(), 0.3, projective_from_axis([1.0, 0.0, 0.0]), 5000, seed=13)
    assert sample(exp) == sample(exp)
    assert run_replicated(exp, 100) == run_replicated(exp, 100)

    outputs = []
    for name in ("a.csv", "b.csv"):
        path = tmp_path / name
        code = main([
            "sweep", "--pure", "xz", "--w", "const:0.75",
            "--theta-range", "0.1:1.2:12", "--axis", "1,0,0", "--out", str(path),
        ])
        assert code == 0
        outputs.append(path.read_bytes())
    capsys.readouterr()
    assert outputs[0] == outputs[1]

    sims = []
    for name in ("a.json", "b.json"):
        path = tmp_path / name
        code = main([
            "simulate", "--pure", "xz", "--w", "const:0.75", "--theta", "0.3",
            "--axis", "1,0,0", "--n", "1000", "--replications", "100",
            "--seed", "5", "--out", str(path),
        ])
        assert code == 0
        sims.append(path.read_bytes())
    capsys.readouterr()
    assert sims[0] == sims[1]
    print("[PASS] criterion 10: seeded operations and CLI outputs byte-identical")
