"""Text file formats for models and measurements.

Model files are JSON::

    {
      "pure": {"kind": "xz_circle" | "longitude" | "colatitude",
               "fixed_angle": 0.0},
      "weight": "pure" | {"kind": "const" | "affine" | "sin",
                          "coefficients": [..]}
    }

Measurement files are line-oriented text: a ``dim 2`` header, then one
block per element starting with ``element <label>`` followed by ``dim``
rows of row-major entries written as ``(re, im)`` pairs.  Floats are
written with 17 significant digits, so a written file re-parses to
bit-identical matrices.  Lines starting with ``#`` are comments.
"""

from __future__ import annotations

import json
import re
from pathlib import Path

import numpy as np

from .errors import ConfigError, InvalidPovm
from .measurement import Povm
from .models import PureFamily, PureKind, QubitModel, WeightFamily, WeightKind

__all__ = [
    "load_model",
    "load_povm",
    "model_from_dict",
    "model_to_dict",
    "parse_povm",
    "format_povm",
    "save_model",
    "save_povm",
]

_ENTRY = re.compile(r"\(\s*([^\s,()]+)\s*,\s*([^\s,()]+)\s*\)")


def _fmt(x: float) -> str:
    return f"{float(x):.17g}"


def model_from_dict(data) -> QubitModel:
    if not isinstance(data, dict):
        raise ConfigError("model: expected a JSON object")
    for key in data:
        if key not in ("pure", "weight"):
            raise ConfigError(f"{key}: unknown model field")

    pure = data.get("pure")
    if not isinstance(pure, dict):
        raise ConfigError("pure: expected an object with kind and fixed_angle")
    for key in pure:
        if key not in ("kind", "fixed_angle"):
            raise ConfigError(f"pure.{key}: unknown field")
    try:
        kind = PureKind(pure.get("kind"))
    except ValueError:
        raise ConfigError(f"pure.kind: unknown kind {pure.get('kind')!r}") from None
    angle = pure.get("fixed_angle", 0.0)
    if not isinstance(angle, (int, float)) or isinstance(angle, bool):
        raise ConfigError(f"pure.fixed_angle: expected a number, got {angle!r}")
    family = PureFamily(kind, float(angle))

    weight = data.get("weight", "pure")
    if weight == "pure":
        return QubitModel(family)
    if not isinstance(weight, dict):
        raise ConfigError('weight: expected "pure" or an object with kind and coefficients')
    for key in weight:
        if key not in ("kind", "coefficients"):
            raise ConfigError(f"weight.{key}: unknown field")
    try:
        wkind = WeightKind(weight.get("kind"))
    except ValueError:
        raise ConfigError(f"weight.kind: unknown kind {weight.get('kind')!r}") from None
    coeffs = weight.get("coefficients")
    if not isinstance(coeffs, (list, tuple)) or not all(
        isinstance(c, (int, float)) and not isinstance(c, bool) for c in coeffs
    ):
        raise ConfigError(f"weight.coefficients: expected a list of numbers, got {coeffs!r}")
    try:
        wfam = WeightFamily(wkind, tuple(float(c) for c in coeffs))
    except ValueError as err:
        raise ConfigError(f"weight.coefficients: {err}") from None
    return QubitModel(family, wfam)


def model_to_dict(model: QubitModel) -> dict:
    out = {"pure": {"kind": model.pure.kind.value, "fixed_angle": model.pure.fixed_angle}}
    if model.weight is None:
        out["weight"] = "pure"
    else:
        out["weight"] = {
            "kind": model.weight.kind.value,
            "coefficients": list(model.weight.coefficients),
        }
    return out


def load_model(path) -> QubitModel:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as err:
        raise ConfigError(f"model: cannot read {path}: {err}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as err:
        raise ConfigError(f"model: {path} is not valid JSON: {err}") from None
    return model_from_dict(data)


def save_model(model: QubitModel, path) -> None:
    Path(path).write_text(json.dumps(model_to_dict(model), indent=2) + "\n", encoding="utf-8")


def format_povm(povm: Povm, header: str | None = None) -> str:
    lines = []
    if header:
        lines.append(f"# {header}")
    dim = povm.matrices[0].shape[0]
    lines.append(f"dim {dim}")
    for label, mat in povm:
        lines.append(f"element {label}")
        for row in mat:
            lines.append(" ".join(f"({_fmt(z.real)}, {_fmt(z.imag)})" for z in row))
    return "\n".join(lines) + "\n"


def parse_povm(text: str) -> Povm:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ConfigError("povm: empty file")
    head = lines[0].split()
    if len(head) != 2 or head[0] != "dim":
        raise ConfigError(f"povm.dim: expected 'dim <n>' first, got {lines[0]!r}")
    try:
        dim = int(head[1])
    except ValueError:
        raise ConfigError(f"povm.dim: not an integer: {head[1]!r}") from None
    if dim != 2:
        raise ConfigError(f"povm.dim: only dimension 2 is supported, got {dim}")

    elements = []
    i = 1
    while i < len(lines):
        parts = lines[i].split(maxsplit=1)
        if parts[0] != "element":
            raise ConfigError(f"povm.element: expected 'element [label]', got {lines[i]!r}")
        label = parts[1].strip() if len(parts) > 1 else None
        i += 1
        rows = []
        for r in range(dim):
            if i >= len(lines):
                raise ConfigError(f"povm.element: element {label or len(elements)} is truncated")
            found = _ENTRY.findall(lines[i])
            if len(found) != dim:
                raise ConfigError(
                    f"povm.element: row {r} has {len(found)} entries, expected {dim}"
                )
            try:
                rows.append([complex(float(re_), float(im)) for re_, im in found])
            except ValueError:
                raise ConfigError(f"povm.element: bad number in row {lines[i]!r}") from None
            i += 1
        elements.append((label, np.array(rows)))
    try:
        return Povm(elements)
    except InvalidPovm as err:
        raise ConfigError(f"povm: {err}") from None


def load_povm(path) -> Povm:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as err:
        raise ConfigError(f"povm: cannot read {path}: {err}") from None
    return parse_povm(text)


def save_povm(povm: Povm, path, header: str | None = None) -> None:
    Path(path).write_text(format_povm(povm, header), encoding="utf-8", newline="\n")
