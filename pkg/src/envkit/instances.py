"""Problem-instance documents: JSON parsing, validation, and normalization.

An instance document carries an envelope kind with its parameters, the
constituent functions/sets, a start point, and a solver block.  Dimensions
are inferred from ``x0`` and checked against every block.  The instance
size is capped by the ``ENVKIT_MAX_N`` environment variable (default 500).
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass

import numpy as np

from .envelopes import (
    ADMMSpec,
    DRSpec,
    EnvelopeSpec,
    FBSpec,
    GAPSpec,
    MoreauSpec,
    build,
)
from .errors import DimensionMismatchError, InstanceFormatError, ParameterError
from .linalg import QuadraticFn, SymOperator, affine_projector
from .operators import (
    IndicatorAffine,
    IndicatorBox,
    IndicatorHalfspace,
    L1,
    ProxFn,
    Quadratic,
    Zero,
)
from .solvers import SolverConfig

__all__ = ["Instance", "parse_instance", "load_instance", "normalize_instance", "max_dimension"]

METHODS = ("averaged", "scaled_gradient", "gradient_descent")


def max_dimension() -> int:
    raw = os.environ.get("ENVKIT_MAX_N", "500")
    try:
        cap = int(raw)
    except ValueError as exc:
        raise InstanceFormatError(f"ENVKIT_MAX_N must be an integer, got {raw!r}") from exc
    if cap < 1:
        raise InstanceFormatError(f"ENVKIT_MAX_N must be >= 1, got {cap}")
    return cap


@dataclass(frozen=True)
class Instance:
    """A parsed problem instance ready to build and solve."""

    kind: str
    spec: EnvelopeSpec
    x0: np.ndarray
    method: str
    config: SolverConfig


def _req(doc: dict, key: str, context: str):
    if key not in doc:
        raise InstanceFormatError(f"missing field {key!r} in {context}")
    return doc[key]


def _matrix(raw, n_rows: int | None, n_cols: int, context: str) -> np.ndarray:
    """Accept a nested row-major list or a flat row-major list."""
    arr = np.asarray(raw, dtype=float)
    if arr.ndim == 1:
        if n_rows is None:
            if arr.size != n_cols * n_cols:
                raise DimensionMismatchError(
                    f"{context}: flat matrix has {arr.size} entries, "
                    f"expected {n_cols * n_cols}"
                )
            n_rows = n_cols
        if arr.size != n_rows * n_cols:
            raise DimensionMismatchError(
                f"{context}: flat matrix has {arr.size} entries, expected {n_rows * n_cols}"
            )
        arr = arr.reshape(n_rows, n_cols)
    if arr.ndim != 2 or arr.shape[1] != n_cols or (n_rows is not None and arr.shape[0] != n_rows):
        raise DimensionMismatchError(
            f"{context}: matrix shape {arr.shape} inconsistent with dimension {n_cols}"
        )
    return arr


def _vector(raw, n: int, context: str) -> np.ndarray:
    arr = np.asarray(raw, dtype=float)
    if arr.ndim == 0:
        arr = arr.reshape(1)
    if arr.ndim != 1 or arr.size != n:
        raise DimensionMismatchError(
            f"{context}: vector of length {arr.size if arr.ndim == 1 else '?'} "
            f"inconsistent with dimension {n}"
        )
    return arr


def _quadratic_block(doc, n: int, context: str) -> QuadraticFn:
    if not isinstance(doc, dict):
        raise InstanceFormatError(f"{context} must be an object with H and h")
    h_mat = _matrix(_req(doc, "H", context), n, n, context)
    h_vec = _vector(doc.get("h", np.zeros(n)), n, context)
    return QuadraticFn(H=SymOperator(h_mat), h=h_vec)


def _prox_block(doc, n: int, context: str) -> ProxFn:
    if not isinstance(doc, dict):
        raise InstanceFormatError(f"{context} must be an object with a variant tag")
    variant = _req(doc, "variant", context)
    if variant == "quadratic":
        return Quadratic(_quadratic_block(doc, n, context))
    if variant == "l1":
        return L1(weight=float(doc.get("weight", 1.0)))
    if variant == "box":
        lo = doc.get("lo", -np.inf)
        hi = doc.get("hi", np.inf)
        lo = _vector(lo, n, context) if np.ndim(lo) else float(lo)
        hi = _vector(hi, n, context) if np.ndim(hi) else float(hi)
        return IndicatorBox(lo, hi)
    if variant == "halfspace":
        return IndicatorHalfspace(
            a=_vector(_req(doc, "a", context), n, context),
            beta=float(_req(doc, "beta", context)),
        )
    if variant == "affine":
        return IndicatorAffine(_affine_block(doc, n, context))
    if variant == "zero":
        return Zero()
    raise InstanceFormatError(f"{context}: unknown variant {variant!r}")


def _affine_block(doc, n: int, context: str):
    b = np.asarray(_req(doc, "b", context), dtype=float).reshape(-1)
    a = _matrix(_req(doc, "A", context), b.size, n, context)
    return affine_projector(a, b)


def parse_instance(doc: dict) -> Instance:
    """Validate a JSON document and construct the typed instance.

    Raises `InstanceFormatError` for structural problems,
    `DimensionMismatchError` for inconsistent shapes, and
    `ParameterError` for out-of-range parameters.
    """
    if not isinstance(doc, dict):
        raise InstanceFormatError("instance document must be a JSON object")
    kind = _req(doc, "kind", "instance")
    x0 = np.asarray(_req(doc, "x0", "instance"), dtype=float).reshape(-1)
    n = x0.size
    if n < 1:
        raise InstanceFormatError("x0 must have at least one entry")
    cap = max_dimension()
    if n > cap:
        raise ParameterError(f"instance dimension {n} exceeds ENVKIT_MAX_N={cap}")
    if not np.all(np.isfinite(x0)):
        raise InstanceFormatError("x0 contains non-finite entries")

    spec: EnvelopeSpec
    if kind == "moreau":
        spec = MoreauSpec(
            f=_prox_block(_req(doc, "g", "instance"), n, "g"),
            gamma=float(_req(doc, "gamma", "instance")),
            dim=n,
        )
    elif kind in ("fb", "dr"):
        f = _quadratic_block(_req(doc, "f", "instance"), n, "f")
        g = _prox_block(_req(doc, "g", "instance"), n, "g")
        gamma = float(_req(doc, "gamma", "instance"))
        spec = FBSpec(f=f, g=g, gamma=gamma) if kind == "fb" else DRSpec(f=f, g=g, gamma=gamma)
    elif kind == "admm":
        spec = ADMMSpec(
            f=_quadratic_block(_req(doc, "f", "instance"), n, "f"),
            g=_prox_block(_req(doc, "g", "instance"), n, "g"),
            rho=float(_req(doc, "rho", "instance")),
        )
    elif kind == "gap":
        spec = GAPSpec(
            C=_prox_block(_req(doc, "C", "instance"), n, "C"),
            D=_affine_block(_req(doc, "D", "instance"), n, "D"),
            alpha1=float(_req(doc, "alpha1", "instance")),
            alpha2=float(_req(doc, "alpha2", "instance")),
        )
    else:
        raise InstanceFormatError(f"unknown kind {kind!r}")

    solver = doc.get("solver", {})
    if not isinstance(solver, dict):
        raise InstanceFormatError("solver block must be an object")
    method = solver.get("method", "averaged")
    if method not in METHODS:
        raise InstanceFormatError(
            f"unknown solver method {method!r}; valid: {', '.join(METHODS)}"
        )
    step = solver.get("step")
    config = SolverConfig(
        alpha=float(solver.get("alpha", 0.5)),
        step=None if step is None else float(step),
        max_iter=int(solver.get("max_iter", 1000)),
        tol=float(solver.get("tol", 1e-8)),
        seed=int(solver.get("seed", 0)),
    )
    build(spec)  # validate parameter ranges before any computation runs
    return Instance(kind=kind, spec=spec, x0=x0, method=method, config=config)


def load_instance(path: str) -> Instance:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise InstanceFormatError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InstanceFormatError(f"malformed JSON in {path}: {exc}") from exc
    return parse_instance(doc)


def _prox_doc(g: ProxFn, n: int) -> dict:
    if isinstance(g, Quadratic):
        return {"variant": "quadratic", "H": g.fn.H.mat.tolist(), "h": g.fn.h.tolist()}
    if isinstance(g, L1):
        return {"variant": "l1", "weight": g.weight}
    if isinstance(g, IndicatorBox):
        lo = np.broadcast_to(np.asarray(g.lo, dtype=float), (n,))
        hi = np.broadcast_to(np.asarray(g.hi, dtype=float), (n,))
        return {"variant": "box", "lo": lo.tolist(), "hi": hi.tolist()}
    if isinstance(g, IndicatorHalfspace):
        return {"variant": "halfspace", "a": g.a.tolist(), "beta": g.beta}
    if isinstance(g, IndicatorAffine):
        return {"variant": "affine", "A": g.set_.A.tolist(), "b": g.set_.b.tolist()}
    if isinstance(g, Zero):
        return {"variant": "zero"}
    raise InstanceFormatError(f"cannot serialize prox variant {type(g).__name__}")


def normalize_instance(inst: Instance) -> dict:
    """Canonical JSON-ready form; re-parsing it reproduces the instance."""
    n = inst.x0.size
    doc: dict = {"kind": inst.kind, "x0": inst.x0.tolist()}
    spec = inst.spec
    if isinstance(spec, MoreauSpec):
        doc["gamma"] = spec.gamma
        doc["g"] = _prox_doc(spec.f, n)
    elif isinstance(spec, (FBSpec, DRSpec)):
        doc["gamma"] = spec.gamma
        doc["f"] = {"H": spec.f.H.mat.tolist(), "h": spec.f.h.tolist()}
        doc["g"] = _prox_doc(spec.g, n)
    elif isinstance(spec, ADMMSpec):
        doc["rho"] = spec.rho
        doc["f"] = {"H": spec.f.H.mat.tolist(), "h": spec.f.h.tolist()}
        doc["g"] = _prox_doc(spec.g, n)
    elif isinstance(spec, GAPSpec):
        doc["alpha1"] = spec.alpha1
        doc["alpha2"] = spec.alpha2
        doc["C"] = _prox_doc(spec.C, n)
        doc["D"] = {"A": spec.D.A.tolist(), "b": spec.D.b.tolist()}
    else:
        raise InstanceFormatError(f"cannot serialize spec {type(spec).__name__}")
    doc["solver"] = {
        "method": inst.method,
        "alpha": inst.config.alpha,
        "max_iter": inst.config.max_iter,
        "tol": inst.config.tol,
        "seed": inst.config.seed,
    }
    if inst.config.step is not None:
        doc["solver"]["step"] = inst.config.step
    return doc
