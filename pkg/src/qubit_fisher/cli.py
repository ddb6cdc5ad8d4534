"""Command-line front end.

Subcommands
-----------
qfi       quantum information at one theta (closed form and/or Lyapunov)
fisher    classical Fisher information of a measurement at one theta
attain    attainability audit of a measurement (JSON report)
optimize  write the information-attaining measurement to a file
sweep     CSV of theta,qfi,fisher,ratio,attains over a theta range
simulate  Monte Carlo estimator-variance check (JSON summary)
uniform   geometric test for a single measurement attaining at every theta

Models are given either as a JSON file (``--model``) or inline:
``--pure xz`` for the x-z great circle, ``--eta VAL --param phi`` for the
longitude family at fixed colatitude, ``--phi VAL --param eta`` for the
colatitude family at fixed longitude; add ``--w const:V | affine:A,B |
sin:A,B`` to mix.  Measurements come from a file (``--povm``) or a Bloch
axis (``--axis X,Y,Z``, normalized).  Angles are radians everywhere.

Exit status: 0 on success, 2 on configuration/validation problems, 3 on
numerical failures from the library.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import ConfigError, QubitFisherError
from .fileio import load_model, load_povm, save_povm
from .measurement import (
    AttainReport,
    Povm,
    attain_check,
    fisher_info,
    optimal_measurement,
    projective_from_axis,
    uniform_attainability,
)
from .models import (
    DerivMethod,
    PureFamily,
    PureKind,
    QubitModel,
    WeightFamily,
    WeightKind,
    drho,
    rho,
)
from .sld import sld_closed, sld_lyapunov, quantum_information
from .estimation import Experiment, run_replicated

__all__ = ["RunConfig", "main", "run", "entry"]

_COMMANDS = ("qfi", "fisher", "attain", "optimize", "sweep", "simulate", "uniform")


@dataclass
class RunConfig:
    command: str
    model: QubitModel
    theta: float | None = None
    thetas: np.ndarray | None = None
    povm: Povm | None = None
    method: str = "both"
    out: Path | None = None
    seed: int = 0
    n_samples: int = 100_000
    replications: int = 400


def _fmt(x: float) -> str:
    return f"{float(x):.17g}"


def _parse_axis(text: str) -> np.ndarray:
    parts = text.split(",")
    if len(parts) != 3:
        raise ConfigError(f"axis: expected X,Y,Z, got {text!r}")
    try:
        axis = np.array([float(p) for p in parts])
    except ValueError:
        raise ConfigError(f"axis: bad number in {text!r}") from None
    norm = np.linalg.norm(axis)
    if norm <= 1e-12:
        raise ConfigError("axis: zero vector")
    return axis / norm


def _parse_range(text: str) -> np.ndarray:
    parts = text.split(":")
    if len(parts) != 3:
        raise ConfigError(f"theta_range: expected START:STOP:COUNT, got {text!r}")
    try:
        start, stop = float(parts[0]), float(parts[1])
        count = int(parts[2])
    except ValueError:
        raise ConfigError(f"theta_range: bad value in {text!r}") from None
    if count < 2:
        raise ConfigError(f"theta_range: count must be at least 2, got {count}")
    return np.linspace(start, stop, count)


def _parse_weight(text: str) -> WeightFamily:
    kind_token, _, coeff_text = text.partition(":")
    try:
        kind = WeightKind(kind_token)
    except ValueError:
        raise ConfigError(f"weight.kind: unknown kind {kind_token!r}") from None
    if not coeff_text:
        raise ConfigError("weight.coefficients: missing (use e.g. const:0.75)")
    try:
        coeffs = tuple(float(c) for c in coeff_text.split(","))
    except ValueError:
        raise ConfigError(f"weight.coefficients: bad number in {coeff_text!r}") from None
    try:
        return WeightFamily(kind, coeffs)
    except ValueError as err:
        raise ConfigError(f"weight.coefficients: {err}") from None


def _resolve_model(ns) -> QubitModel:
    inline = [ns.pure, ns.eta, ns.phi, ns.param]
    if ns.model is not None:
        if any(v is not None for v in inline) or ns.weight is not None:
            raise ConfigError("model: give either --model or inline model flags, not both")
        return load_model(ns.model)

    if ns.pure is not None:
        if ns.param is not None or ns.eta is not None or ns.phi is not None:
            raise ConfigError("model: --pure xz does not take --param/--eta/--phi")
        family = PureFamily(PureKind.XZ_CIRCLE)
    elif ns.param == "phi":
        if ns.eta is None:
            raise ConfigError("model: --param phi needs --eta (fixed colatitude)")
        family = PureFamily(PureKind.LONGITUDE, ns.eta)
    elif ns.param == "eta":
        if ns.phi is None:
            raise ConfigError("model: --param eta needs --phi (fixed longitude)")
        family = PureFamily(PureKind.COLATITUDE, ns.phi)
    else:
        raise ConfigError("model: specify --model FILE, --pure xz, or --param phi|eta")

    weight = _parse_weight(ns.weight) if ns.weight is not None else None
    return QubitModel(family, weight)


def _resolve_povm(ns) -> Povm | None:
    if ns.povm is not None and ns.axis is not None:
        raise ConfigError("povm: give either --povm or --axis, not both")
    if ns.povm is not None:
        return load_povm(ns.povm)
    if ns.axis is not None:
        return projective_from_axis(_parse_axis(ns.axis))
    return None


def _build_config(ns) -> RunConfig:
    cfg = RunConfig(command=ns.command, model=_resolve_model(ns))

    if ns.theta is not None and ns.theta_range is not None:
        raise ConfigError("theta: give exactly one of --theta and --theta-range")
    needs_range = ns.command in ("sweep", "uniform")
    if needs_range:
        if ns.theta_range is None:
            raise ConfigError(f"theta_range: {ns.command} needs --theta-range")
        cfg.thetas = _parse_range(ns.theta_range)
        if ns.command == "uniform" and np.unique(cfg.thetas).size < 8:
            raise ConfigError("theta_range: uniform needs at least 8 distinct points")
    else:
        if ns.theta is None:
            raise ConfigError(f"theta: {ns.command} needs --theta")
        cfg.theta = ns.theta

    cfg.povm = _resolve_povm(ns)
    if ns.command in ("fisher", "attain", "sweep", "simulate") and cfg.povm is None:
        raise ConfigError(f"povm: {ns.command} needs --povm or --axis")

    cfg.method = getattr(ns, "method", "both")
    cfg.out = Path(ns.out) if ns.out is not None else None
    if ns.command == "optimize" and cfg.out is None:
        raise ConfigError("out: optimize needs --out to write the measurement")

    seed = getattr(ns, "seed", 0)
    if seed < 0:
        raise ConfigError(f"seed: must be nonnegative, got {seed}")
    cfg.seed = seed
    n = getattr(ns, "n", cfg.n_samples)
    if n < 1:
        raise ConfigError(f"n: must be positive, got {n}")
    cfg.n_samples = n
    reps = getattr(ns, "replications", cfg.replications)
    if reps < 100:
        raise ConfigError(f"replications: must be at least 100, got {reps}")
    cfg.replications = reps
    return cfg


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _report_dict(theta: float, report: AttainReport) -> dict:
    outcomes = []
    for oc in report.outcomes:
        outcomes.append(
            {
                "label": oc.label,
                "probability": oc.probability,
                "rank_one": oc.rank_one,
                "second_eigenvalue": oc.second_eigenvalue,
                "gamma": [[z.real, z.imag] for z in oc.gamma] if oc.gamma is not None else None,
                "overlap_flag": oc.overlap_flag.value,
                "overlap_ratio": (
                    [oc.overlap_ratio.real, oc.overlap_ratio.imag]
                    if oc.overlap_ratio is not None
                    else None
                ),
                "r_expected": list(oc.r_expected) if oc.r_expected is not None else None,
                "reality_ok": oc.reality_ok,
                "ratio_matches": oc.ratio_matches,
            }
        )
    return {
        "theta": theta,
        "fisher": report.fisher,
        "qfi": report.qfi,
        "gap": report.gap,
        "verdict": report.verdict.value,
        "skipped": list(report.skipped),
        "outcomes": outcomes,
    }


def _cmd_qfi(cfg: RunConfig) -> None:
    lines = [f"theta = {_fmt(cfg.theta)}"]
    if cfg.method in ("closed", "both"):
        res = sld_closed(cfg.model, cfg.theta)
        lines.append(f"qfi[closed] = {_fmt(res.qfi)}  residual = {_fmt(res.residual)}")
    if cfg.method in ("lyapunov", "both"):
        res = sld_lyapunov(rho(cfg.model, cfg.theta), drho(cfg.model, cfg.theta))
        lines.append(f"qfi[lyapunov] = {_fmt(res.qfi)}  residual = {_fmt(res.residual)}")
    _emit("\n".join(lines) + "\n", cfg.out)


def _cmd_fisher(cfg: RunConfig) -> None:
    fisher = fisher_info(drho(cfg.model, cfg.theta), rho(cfg.model, cfg.theta), cfg.povm)
    qfi = quantum_information(cfg.model, cfg.theta)
    lines = [
        f"theta = {_fmt(cfg.theta)}",
        f"fisher = {_fmt(fisher)}",
        f"qfi = {_fmt(qfi)}",
        f"ratio = {_fmt(fisher / qfi)}",
    ]
    _emit("\n".join(lines) + "\n", cfg.out)


def _cmd_attain(cfg: RunConfig) -> None:
    report = attain_check(cfg.model, cfg.theta, cfg.povm)
    _emit(json.dumps(_report_dict(cfg.theta, report), indent=2) + "\n", cfg.out)


def _cmd_optimize(cfg: RunConfig) -> None:
    povm = optimal_measurement(cfg.model, cfg.theta)
    save_povm(povm, cfg.out, header=f"attaining measurement at theta = {_fmt(cfg.theta)}")
    report = attain_check(cfg.model, cfg.theta, povm)
    sys.stdout.write(
        f"wrote {cfg.out}\nverdict = {report.verdict.value}  gap = {_fmt(report.gap)}\n"
    )


def _cmd_sweep(cfg: RunConfig) -> None:
    rows = ["theta,qfi,fisher,ratio,attains"]
    for theta in cfg.thetas:
        qfi = quantum_information(cfg.model, theta)
        fisher = fisher_info(drho(cfg.model, theta), rho(cfg.model, theta), cfg.povm)
        report = attain_check(cfg.model, theta, cfg.povm)
        attains = "true" if report.verdict.value == "attains" else "false"
        rows.append(
            f"{_fmt(theta)},{_fmt(qfi)},{_fmt(fisher)},{_fmt(fisher / qfi)},{attains}"
        )
    _emit("\n".join(rows) + "\n", cfg.out)


def _cmd_simulate(cfg: RunConfig) -> None:
    exp = Experiment(
        model=cfg.model,
        theta_true=cfg.theta,
        povm=cfg.povm,
        n_samples=cfg.n_samples,
        seed=cfg.seed,
    )
    summary = run_replicated(exp, cfg.replications)
    payload = {
        "theta_true": cfg.theta,
        "n_samples": cfg.n_samples,
        "replications": summary.replications,
        "seed": cfg.seed,
        "theta_hat_mean": summary.theta_hat_mean,
        "theta_hat_var": summary.theta_hat_var,
        "cr_bound": summary.cr_bound,
        "qcr_bound": summary.qcr_bound,
    }
    _emit(json.dumps(payload, indent=2) + "\n", cfg.out)


def _cmd_uniform(cfg: RunConfig) -> None:
    verdict = uniform_attainability(cfg.model, cfg.thetas)
    lines = [f"uniform = {'true' if verdict.uniform else 'false'}"]
    if verdict.plane_normal is not None:
        x, y, z = verdict.plane_normal
        lines.append(f"plane_normal = ({_fmt(x)}, {_fmt(y)}, {_fmt(z)})")
    _emit("\n".join(lines) + "\n", cfg.out)


_HANDLERS = {
    "qfi": _cmd_qfi,
    "fisher": _cmd_fisher,
    "attain": _cmd_attain,
    "optimize": _cmd_optimize,
    "sweep": _cmd_sweep,
    "simulate": _cmd_simulate,
    "uniform": _cmd_uniform,
}


def run(cfg: RunConfig) -> int:
    """Execute a validated configuration; returns the exit status."""
    try:
        _HANDLERS[cfg.command](cfg)
    except ConfigError as err:
        sys.stderr.write(f"error: {err}\n")
        return 2
    except QubitFisherError as err:
        sys.stderr.write(f"error ({type(err).__name__}): {err}\n")
        return 3
    return 0


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qubit-fisher",
        description="Fisher information tools for one-parameter qubit models.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in _COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--model", type=Path, help="model JSON file")
        p.add_argument("--pure", choices=["xz"], help="inline pure x-z circle model")
        p.add_argument("--eta", type=float, help="fixed colatitude (with --param phi)")
        p.add_argument("--phi", type=float, help="fixed longitude (with --param eta)")
        p.add_argument("--param", choices=["phi", "eta"], help="which angle is the parameter")
        p.add_argument("--w", dest="weight", help="weight: const:V | affine:A,B | sin:A,B")
        p.add_argument("--theta", type=float, help="parameter value (radians)")
        p.add_argument("--theta-range", dest="theta_range", help="START:STOP:COUNT")
        p.add_argument("--povm", type=Path, help="measurement file")
        p.add_argument("--axis", help="projective measurement axis X,Y,Z")
        p.add_argument("--out", type=Path, help="output file")
        p.add_argument("--seed", type=int, default=0)
        if name == "qfi":
            p.add_argument("--method", choices=["closed", "lyapunov", "both"], default="both")
        if name == "simulate":
            p.add_argument("--n", type=int, default=100_000, help="samples per replication")
            p.add_argument("--replications", type=int, default=400)
    return parser


def main(argv=None) -> int:
    ns = _parser().parse_args(argv)
    try:
        cfg = _build_config(ns)
    except ConfigError as err:
        sys.stderr.write(f"error: {err}\n")
        return 2
    except QubitFisherError as err:
        # invalid file contents surface during loading; still a validation problem
        sys.stderr.write(f"error: {err}\n")
        return 2
    return run(cfg)


def entry() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entry()
