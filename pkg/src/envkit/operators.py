"""Proximable functions and the operator constructions built from them.

The catalog contains six families with exact closed-form proximal maps:
quadratics, affine / box / halfspace indicators, weighted l1 norms, and
the zero function.  On top of the prox the module provides the scaled
conjugate value, relaxed proximal maps and reflections, gradient-step
maps for quadratics, and averagedness-parameter bookkeeping.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ParameterError
from .linalg import AffineMap, AffineSet, QuadraticFn, SymOperator, as_vector, sym_eig

__all__ = [
    "ProxFn",
    "Quadratic",
    "IndicatorAffine",
    "IndicatorBox",
    "IndicatorHalfspace",
    "L1",
    "Zero",
    "prox",
    "reg_conjugate_value",
    "RelaxedProx",
    "relaxed_prox_apply",
    "relaxed_prox_potential",
    "gradient_step_map",
    "reflected_prox_map_quadratic",
    "AveragedParams",
    "classify_gradient_operator",
]


def _check_gamma(gamma: float) -> float:
    if not (gamma > 0.0 and math.isfinite(gamma)):
        raise ParameterError(f"gamma must be positive and finite, got {gamma}")
    return float(gamma)


def _indicator_tol(x: np.ndarray) -> float:
    return 1e-9 * (1.0 + float(np.abs(x).max(initial=0.0)))


class ProxFn:
    """A proper closed convex function with an exact Euclidean prox.

    Subclasses implement ``value`` and ``prox``.  ``conjugate`` is only
    available where the conjugate is itself a catalog member.
    """

    #: Fixed ambient dimension, or None when the function applies in any.
    dim: int | None = None

    def value(self, x: np.ndarray) -> float:
        raise NotImplementedError

    def prox(self, gamma: float, z: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def conjugate(self) -> "ProxFn":
        raise ParameterError(f"{type(self).__name__} has no catalog conjugate")

    @property
    def is_indicator(self) -> bool:
        return False


@dataclass(frozen=True)
class Quadratic(ProxFn):
    """g(x) = 0.5*<Hx,x> + <h,x> + c with positive semidefinite H."""

    fn: QuadraticFn

    @property
    def dim(self) -> int:
        return self.fn.dim

    def value(self, x: np.ndarray) -> float:
        return self.fn.value(x)

    def prox(self, gamma: float, z: np.ndarray) -> np.ndarray:
        gamma = _check_gamma(gamma)
        return self.fn.H.shifted_inverse_apply(gamma, z - gamma * self.fn.h)

    def conjugate(self) -> "Quadratic":
        from .linalg import quadratic_conjugate

        return Quadratic(quadratic_conjugate(self.fn))


@dataclass(frozen=True)
class IndicatorAffine(ProxFn):
    """Indicator of an affine subspace; prox is the projection, for any gamma."""

    set_: AffineSet

    @property
    def dim(self) -> int:
        return self.set_.dim

    @property
    def is_indicator(self) -> bool:
        return True

    def value(self, x: np.ndarray) -> float:
        return 0.0 if self.set_.residual(x) <= _indicator_tol(x) else math.inf

    def prox(self, gamma: float, z: np.ndarray) -> np.ndarray:
        _check_gamma(gamma)
        return self.set_.project(z)


@dataclass(frozen=True)
class IndicatorBox(ProxFn):
    """Indicator of the box ``lo <= x <= hi`` (entries may be infinite).

    Scalar bounds apply in any dimension; array bounds fix the dimension.
    """

    lo: object
    hi: object

    def __post_init__(self) -> None:
        lo = np.asarray(self.lo, dtype=float)
        hi = np.asarray(self.hi, dtype=float)
        if lo.shape != hi.shape:
            raise ParameterError("box bounds must have matching shapes")
        if np.any(np.isnan(lo)) or np.any(np.isnan(hi)):
            raise ParameterError("box bounds must not be NaN")
        if np.any(lo > hi):
            raise ParameterError("box requires lo <= hi in every coordinate")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def dim(self) -> int | None:
        return None if np.ndim(self.lo) == 0 else int(np.size(self.lo))

    @property
    def is_indicator(self) -> bool:
        return True

    def value(self, x: np.ndarray) -> float:
        tol = _indicator_tol(x)
        ok = np.all(x >= self.lo - tol) and np.all(x <= self.hi + tol)
        return 0.0 if ok else math.inf

    def prox(self, gamma: float, z: np.ndarray) -> np.ndarray:
        _check_gamma(gamma)
        return np.clip(z, self.lo, self.hi)


@dataclass(frozen=True)
class IndicatorHalfspace(ProxFn):
    """Indicator of the halfspace ``<a, x> <= beta`` with a != 0."""

    a: np.ndarray
    beta: float

    def __post_init__(self) -> None:
        a = as_vector(self.a)
        if float(np.abs(a).max()) == 0.0:
            raise ParameterError("halfspace normal must be nonzero")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "beta", float(self.beta))

    @property
    def dim(self) -> int:
        return self.a.size

    @property
    def is_indicator(self) -> bool:
        return True

    def value(self, x: np.ndarray) -> float:
        slack = float(self.a @ x) - self.beta
        return 0.0 if slack <= _indicator_tol(x) * (1.0 + float(np.abs(self.a).max())) else math.inf

    def prox(self, gamma: float, z: np.ndarray) -> np.ndarray:
        _check_gamma(gamma)
        excess = float(self.a @ z) - self.beta
        if excess <= 0.0:
            return np.array(z, dtype=float)
        return z - (excess / float(self.a @ self.a)) * self.a


@dataclass(frozen=True)
class L1(ProxFn):
    """Weighted l1 norm ``g(x) = w * sum|x_i|`` with w >= 0."""

    weight: float = 1.0

    def __post_init__(self) -> None:
        if not (self.weight >= 0.0 and math.isfinite(self.weight)):
            raise ParameterError(f"l1 weight must be nonnegative, got {self.weight}")
        object.__setattr__(self, "weight", float(self.weight))

    def value(self, x: np.ndarray) -> float:
        return self.weight * float(np.abs(x).sum())

    def prox(self, gamma: float, z: np.ndarray) -> np.ndarray:
        gamma = _check_gamma(gamma)
        t = gamma * self.weight
        return np.sign(z) * np.maximum(np.abs(z) - t, 0.0)

    def conjugate(self) -> IndicatorBox:
        return IndicatorBox(-self.weight, self.weight)


@dataclass(frozen=True)
class Zero(ProxFn):
    """The zero function; prox is the identity."""

    def value(self, x: np.ndarray) -> float:
        return 0.0

    def prox(self, gamma: float, z: np.ndarray) -> np.ndarray:
        _check_gamma(gamma)
        return np.array(z, dtype=float)

    def conjugate(self) -> IndicatorBox:
        return IndicatorBox(0.0, 0.0)


def prox(g: ProxFn, gamma: float, z: np.ndarray) -> np.ndarray:
    """Proximal point ``argmin_x { g(x) + (1/(2 gamma)) ||x - z||^2 }``."""
    return g.prox(gamma, as_vector(z))


def reg_conjugate_value(g: ProxFn, gamma: float, y: np.ndarray) -> float:
    """Conjugate of ``gamma*g + 0.5||.||^2`` evaluated at ``y``.

    The supremum defining the conjugate is attained at the prox point
    ``u = prox_{gamma g}(y)``, which makes the value exact for every
    catalog member:  ``<y, u> - gamma*g(u) - 0.5||u||^2``.
    """
    gamma = _check_gamma(gamma)
    y = as_vector(y)
    u = g.prox(gamma, y)
    gu = g.value(u)
    if not math.isfinite(gu):
        # Prox points are feasible by construction; an infinite value can
        # only come from roundoff at an indicator boundary.
        gu = 0.0
    return float(y @ u) - gamma * gu - 0.5 * float(u @ u)


@dataclass(frozen=True)
class RelaxedProx:
    """Relaxed proximal map ``x -> relaxation*prox(x) + (1-relaxation)*x``.

    At relaxation 2 this is the reflection.  The map is the gradient of
    `potential`, a convex combination of the regularized conjugate with
    the squared norm.
    """

    base: ProxFn
    gamma: float
    relaxation: float

    def __post_init__(self) -> None:
        _check_gamma(self.gamma)
        if not 0.0 < self.relaxation <= 2.0:
            raise ParameterError(
                f"relaxation must lie in (0, 2], got {self.relaxation}"
            )

    def apply(self, x: np.ndarray) -> np.ndarray:
        a = self.relaxation
        return a * self.base.prox(self.gamma, x) + (1.0 - a) * x

    def potential(self, x: np.ndarray) -> float:
        a = self.relaxation
        return a * reg_conjugate_value(self.base, self.gamma, x) + 0.5 * (1.0 - a) * float(x @ x)


def relaxed_prox_apply(rp: RelaxedProx, x: np.ndarray) -> np.ndarray:
    return rp.apply(as_vector(x))


def relaxed_prox_potential(rp: RelaxedProx, x: np.ndarray) -> float:
    return rp.potential(as_vector(x))


def gradient_step_map(f: QuadraticFn, gamma: float) -> AffineMap:
    """Gradient-step operator ``x -> x - gamma*grad f(x)`` as an affine map.

    Returns ``P = I - gamma*H`` and ``q = -gamma*h``.
    """
    gamma = _check_gamma(gamma)
    w, v = sym_eig(f.H)
    p = SymOperator.from_spectrum(1.0 - gamma * w, v)
    return AffineMap(P=p, q=-gamma * f.h)


def reflected_prox_map_quadratic(f: QuadraticFn, gamma: float) -> AffineMap:
    """Reflected prox ``2 prox_{gamma f} - id`` of a quadratic, as an affine map.

    Returns ``P = 2 (I + gamma H)^-1 - I`` (eigenvalues
    ``(1 - gamma*lam)/(1 + gamma*lam)``) and ``q = -2 gamma (I + gamma H)^-1 h``.
    """
    gamma = _check_gamma(gamma)
    w, v = sym_eig(f.H)
    p = SymOperator.from_spectrum((1.0 - gamma * w) / (1.0 + gamma * w), v)
    q = -2.0 * gamma * f.H.shifted_inverse_apply(gamma, f.h)
    return AffineMap(P=p, q=q)


@dataclass(frozen=True)
class AveragedParams:
    """Averagedness parameters (alpha, beta) of a gradient operator.

    ``alpha`` controls the convex combination with the identity, ``beta``
    the same for the negated operator; both live in (0, 1] and for
    gradient operators must satisfy ``alpha + beta >= 1``.  The derived
    quantities ``delta_alpha = 2 alpha - 1`` and ``delta_beta = 2 beta - 1``
    drive the quadratic envelope bounds.
    """

    alpha: float
    beta: float

    def __post_init__(self) -> None:
        if not (0.0 < self.alpha <= 1.0 and 0.0 < self.beta <= 1.0):
            raise ParameterError(
                f"alpha and beta must lie in (0, 1], got ({self.alpha}, {self.beta})"
            )
        if self.alpha + self.beta < 1.0 - 1e-15:
            raise ParameterError(
                f"gradient operators require alpha + beta >= 1, got "
                f"({self.alpha}, {self.beta})"
            )

    @property
    def delta_alpha(self) -> float:
        return 2.0 * self.alpha - 1.0

    @property
    def delta_beta(self) -> float:
        return 2.0 * self.beta - 1.0


def classify_gradient_operator(kind: str, delta: float) -> AveragedParams:
    """Averagedness parameters of a gradient operator from its regularity.

    ``kind="lipschitz"``: a delta-Lipschitz gradient with delta in [0, 1]
    is ((delta+1)/2)-averaged and ((delta+1)/2)-negatively averaged.
    ``kind="cocoercive"``: a (1/delta)-cocoercive gradient with delta in
    [0, 1] is (1/2)-averaged and ((delta+1)/2)-negatively averaged.
    """
    if not 0.0 <= delta <= 1.0:
        raise ParameterError(f"delta must lie in [0, 1], got {delta}")
    half = 0.5 * (delta + 1.0)
    if kind == "lipschitz":
        return AveragedParams(alpha=half, beta=half)
    if kind == "cocoercive":
        return AveragedParams(alpha=0.5, beta=half)
    raise ParameterError(f"unknown gradient operator kind {kind!r}")
