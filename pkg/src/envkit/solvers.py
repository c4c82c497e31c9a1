"""Fixed-point and gradient algorithms on envelopes, with iteration traces.

Two operator-style methods (the averaged iteration and its scaled-gradient
twin, which produce identical iterate sequences when ``P`` is invertible)
plus plain gradient descent on the envelope.  Operator methods stop on the
fixed-point residual ``||x - S2 S1 x||``; descent stops on the gradient
norm.  Non-convergence within the iteration budget is a status, not an
error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .envelopes import Envelope, EnvelopeSpec, build
from .errors import ParameterError, SingularOperatorError
from .linalg import as_vector

__all__ = [
    "SolverConfig",
    "Trace",
    "averaged_iteration",
    "scaled_gradient_iteration",
    "gradient_descent",
    "solution_extract",
]

ARMIJO_C = 1e-4
ARMIJO_SHRINK = 0.5
MAX_BACKTRACKS = 60


@dataclass(frozen=True)
class SolverConfig:
    """Iteration parameters shared by all solvers.

    ``alpha`` is the averaging weight of the operator methods (strictly
    inside (0, 1): the composed map may be merely nonexpansive).  ``step``
    optionally overrides gradient descent's default ``1/beta_u`` step.
    """

    alpha: float = 0.5
    step: float | None = None
    max_iter: int = 1000
    tol: float = 1e-8
    seed: int = 0
    record_iterates: bool = False

    def __post_init__(self) -> None:
        if not 0.0 < self.alpha < 1.0:
            raise ParameterError(f"alpha must lie in (0, 1), got {self.alpha}")
        if not (self.tol > 0.0 and math.isfinite(self.tol)):
            raise ParameterError(f"tol must be positive, got {self.tol}")
        if self.max_iter < 1:
            raise ParameterError(f"max_iter must be >= 1, got {self.max_iter}")
        if self.step is not None and not (self.step > 0.0 and math.isfinite(self.step)):
            raise ParameterError(f"step must be positive, got {self.step}")


@dataclass
class Trace:
    """Per-iteration record of envelope value, gradient norm, and residual.

    Iterates themselves are stored only when the config asks for them.
    """

    k: list[int] = field(default_factory=list)
    value: list[float] = field(default_factory=list)
    grad_norm: list[float] = field(default_factory=list)
    fp_residual: list[float] = field(default_factory=list)
    iterates: list[np.ndarray] | None = None
    status: str = "max_iter"

    def append(self, k: int, value: float, grad_norm: float, fp_residual: float) -> None:
        self.k.append(k)
        self.value.append(value)
        self.grad_norm.append(grad_norm)
        self.fp_residual.append(fp_residual)

    def rows(self):
        """Iterate ``(k, value, grad_norm, fp_residual)`` tuples."""
        return zip(self.k, self.value, self.grad_norm, self.fp_residual)

    def __len__(self) -> int:
        return len(self.k)


def _operator_iteration(
    env: Envelope, x0, cfg: SolverConfig, scaled: bool
) -> tuple[np.ndarray, Trace]:
    x = as_vector(x0, env.dim)
    if scaled and env.P.sigma_min() <= 1e-8:
        raise SingularOperatorError(
            "the scaled-gradient iteration needs an invertible P "
            f"(sigma_min = {env.P.sigma_min():.3e})"
        )
    trace = Trace(iterates=[] if cfg.record_iterates else None)
    for k in range(cfg.max_iter + 1):
        tx = env.s2s1(x)
        diff = x - tx
        residual = float(np.linalg.norm(diff))
        grad = env.scale * env.P.apply(diff)
        trace.append(k, env.value(x), float(np.linalg.norm(grad)), residual)
        if trace.iterates is not None:
            trace.iterates.append(x.copy())
        if residual <= cfg.tol:
            trace.status = "converged"
            break
        if k == cfg.max_iter:
            trace.status = "max_iter"
            break
        if scaled:
            x = x - cfg.alpha * (env.P.solve(grad) / env.scale)
        else:
            x = (1.0 - cfg.alpha) * x + cfg.alpha * tx
    return x, trace


def averaged_iteration(env: Envelope, x0, cfg: SolverConfig) -> tuple[np.ndarray, Trace]:
    """Iterate ``x <- (1-alpha)*x + alpha*S2 S1 x`` until the residual meets tol."""
    return _operator_iteration(env, x0, cfg, scaled=False)


def scaled_gradient_iteration(env: Envelope, x0, cfg: SolverConfig) -> tuple[np.ndarray, Trace]:
    """Iterate ``x <- x - alpha*(scale*P)^-1 grad F(x)``.

    Algebraically identical to `averaged_iteration` whenever ``P`` is
    invertible; the iterate sequences agree to roundoff.
    """
    return _operator_iteration(env, x0, cfg, scaled=True)


def gradient_descent(env: Envelope, x0, cfg: SolverConfig) -> tuple[np.ndarray, Trace]:
    """Gradient descent on the envelope, stopping on ``||grad F|| <= tol``.

    The step is ``cfg.step`` if given, else ``1/beta_u`` when the upper
    curvature bound is positive, else Armijo backtracking from step 1.
    Intended for envelopes whose lower curvature operator is positive
    semidefinite, but runs regardless.
    """
    x = as_vector(x0, env.dim)
    bp = env.bounds
    fixed_step = cfg.step
    if fixed_step is None and bp.beta_u > 0.0:
        fixed_step = 1.0 / bp.beta_u
    trace = Trace(iterates=[] if cfg.record_iterates else None)
    for k in range(cfg.max_iter + 1):
        tx = env.s2s1(x)
        grad = env.scale * env.P.apply(x - tx)
        grad_norm = float(np.linalg.norm(grad))
        fval = env.value(x)
        trace.append(k, fval, grad_norm, float(np.linalg.norm(x - tx)))
        if trace.iterates is not None:
            trace.iterates.append(x.copy())
        if grad_norm <= cfg.tol:
            trace.status = "converged"
            break
        if k == cfg.max_iter:
            trace.status = "max_iter"
            break
        if fixed_step is not None:
            x = x - fixed_step * grad
        else:
            t = 1.0
            target = fval - ARMIJO_C * t * grad_norm**2
            for _ in range(MAX_BACKTRACKS):
                if env.value(x - t * grad) <= target:
                    break
                t *= ARMIJO_SHRINK
                target = fval - ARMIJO_C * t * grad_norm**2
            x = x - t * grad
    return x, trace


def solution_extract(env: Envelope | EnvelopeSpec, x) -> np.ndarray:
    """Map an approximately stationary envelope point to a problem solution.

    Reflection-based constructions return the prox of their first function
    at the fixed point; the double-reflection projection method returns the
    affine projection; all other kinds return the point itself.
    """
    if not isinstance(env, Envelope):
        env = build(env)
    return env.extract_solution(x)
