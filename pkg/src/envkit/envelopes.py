"""Smooth envelope functions for compositions ``S2 S1`` of gradient operators.

An envelope here is ``F(x) = scale * (0.5*<Px, x> - f2(Px + q))`` where
``S1 x = Px + q`` is an affine nonexpansive gradient map and ``f2`` is the
potential of the second operator ``S2 = grad f2``.  Its gradient is
``scale * P (x - S2 S1 x)``, so stationary points of ``F`` track the fixed
points of ``S2 S1``.

`build` assembles the envelope for five named constructions on top of the
bare general form:

* proximal smoothing of a single function (``moreau``),
* proximal-gradient composition for a smooth quadratic plus a proximable
  term (``fb``),
* composed reflections of two functions (``dr``),
* the same reflection composition applied to the dual pair, with the
  dual objects eliminated through prox calculus (``admm``),
* relaxed alternating projections onto a convex set and an affine
  subspace (``gap``).

Each construction also carries quadratic lower/upper curvature operators
``M = scale*(P - delta_beta*P^2)`` and ``L = scale*(P + delta_alpha*P^2)``
that bracket the envelope's Bregman differences.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Union

import numpy as np

from .errors import ParameterError
from .linalg import (
    AffineMap,
    AffineSet,
    QuadraticFn,
    SymOperator,
    as_vector,
    poly_of_operator,
    sym_eig,
)
from .operators import AveragedParams, ProxFn, RelaxedProx

__all__ = [
    "Potential",
    "MoreauSpec",
    "FBSpec",
    "DRSpec",
    "ADMMSpec",
    "GAPSpec",
    "GeneralSpec",
    "EnvelopeSpec",
    "BoundPair",
    "Envelope",
    "build",
    "gap_bound_eigenvalues",
    "general_envelope_value_nonaffine",
]


@dataclass(frozen=True)
class Potential:
    """A differentiable function given by value and gradient evaluators."""

    value: Callable[[np.ndarray], float]
    gradient: Callable[[np.ndarray], np.ndarray]

    @classmethod
    def from_relaxed_prox(cls, rp: RelaxedProx) -> "Potential":
        return cls(value=rp.potential, gradient=rp.apply)

    @classmethod
    def from_gradient_step(cls, f: QuadraticFn, gamma: float) -> "Potential":
        """Potential of the gradient-step map ``x - gamma*grad f(x)``."""
        return cls(
            value=lambda x: 0.5 * float(x @ x) - gamma * f.value(x),
            gradient=lambda x: x - gamma * f.gradient(x),
        )

    @classmethod
    def dual_reflection(cls, g: ProxFn, rho: float) -> "Potential":
        """Reflection potential of the conjugate of ``g`` composed with negation.

        Both evaluators are expressed through the primal prox:
        the potential satisfies ``p(y) = -rho^2 * p_ref(-y/rho)`` and its
        gradient ``rho * R_ref(-y/rho)`` where ``p_ref``/``R_ref`` are the
        reflection potential/map of ``g`` at parameter ``1/rho``.  This is
        exact for every catalog member.
        """
        ref = RelaxedProx(base=g, gamma=1.0 / rho, relaxation=2.0)
        return cls(
            value=lambda y: -(rho * rho) * ref.potential(-y / rho),
            gradient=lambda y: rho * ref.apply(-y / rho),
        )


@dataclass(frozen=True)
class MoreauSpec:
    """Proximal smoothing of ``f`` with parameter ``gamma``."""

    f: ProxFn
    gamma: float
    dim: int | None = None


@dataclass(frozen=True)
class FBSpec:
    """Proximal-gradient composition for ``f`` quadratic and proximable ``g``."""

    f: QuadraticFn
    g: ProxFn
    gamma: float


@dataclass(frozen=True)
class DRSpec:
    """Composed reflections of quadratic ``f`` and proximable ``g``."""

    f: QuadraticFn
    g: ProxFn
    gamma: float


@dataclass(frozen=True)
class ADMMSpec:
    """Reflection composition on the dual pair of ``(f, g)``.

    Requires a positive definite quadratic part so the dual first
    function is again quadratic.
    """

    f: QuadraticFn
    g: ProxFn
    rho: float


@dataclass(frozen=True)
class GAPSpec:
    """Relaxed alternating projections onto convex ``C`` and affine ``D``."""

    C: ProxFn
    D: AffineSet
    alpha1: float
    alpha2: float


@dataclass(frozen=True)
class GeneralSpec:
    """Bare envelope from an affine ``S1`` and an explicit ``f2`` potential."""

    s1: AffineMap
    f2: Potential
    params: AveragedParams
    scale: float = 1.0


EnvelopeSpec = Union[MoreauSpec, FBSpec, DRSpec, ADMMSpec, GAPSpec, GeneralSpec]


@dataclass(frozen=True)
class BoundPair:
    """Quadratic curvature operators and their extreme eigenvalues.

    ``0.5*<M d, d> <= F(x) - F(y) - <grad F(y), d> <= 0.5*<L d, d>`` for
    ``d = x - y``; ``beta_l = lambda_min(M)`` and ``beta_u = lambda_max(L)``
    give the scalar (identity-norm) version of the same bracket.
    """

    M: SymOperator
    L: SymOperator
    beta_l: float
    beta_u: float


class Envelope:
    """A built envelope: affine ``S1``, potential ``f2``, scale, and parameters."""

    def __init__(
        self,
        s1: AffineMap,
        f2: Potential,
        params: AveragedParams,
        scale: float,
        kind: str = "general",
        spec: EnvelopeSpec | None = None,
        extract: Callable[[np.ndarray], np.ndarray] | None = None,
    ) -> None:
        if not (scale > 0.0 and math.isfinite(scale)):
            raise ParameterError(f"scale must be positive and finite, got {scale}")
        if s1.P.norm2() > 1.0 + 1e-10:
            raise ParameterError(
                f"S1 must be nonexpansive: ||P||_2 = {s1.P.norm2():.12g} > 1"
            )
        self.s1 = s1
        self.f2 = f2
        self.params = params
        self.scale = float(scale)
        self.kind = kind
        self.spec = spec
        self._extract = extract if extract is not None else lambda x: np.array(x, dtype=float)

    @property
    def dim(self) -> int:
        return self.s1.dim

    @property
    def P(self) -> SymOperator:
        return self.s1.P

    def s2s1(self, x: np.ndarray) -> np.ndarray:
        """The composed map ``S2(S1 x)`` whose fixed points are sought."""
        return self.f2.gradient(self.s1(x))

    def value(self, x: np.ndarray) -> float:
        x = as_vector(x, self.dim)
        return self.scale * (0.5 * self.P.quad(x) - self.f2.value(self.s1(x)))

    def gradient(self, x: np.ndarray) -> np.ndarray:
        x = as_vector(x, self.dim)
        return self.scale * self.P.apply(x - self.s2s1(x))

    def fixed_point_residual(self, x: np.ndarray) -> float:
        x = as_vector(x, self.dim)
        return float(np.linalg.norm(x - self.s2s1(x)))

    @cached_property
    def bounds(self) -> BoundPair:
        """Curvature operators ``M``/``L`` with their extreme eigenvalues."""
        da = self.params.delta_alpha
        db = self.params.delta_beta
        m = poly_of_operator(self.P, 0.0, self.scale, -self.scale * db)
        l_op = poly_of_operator(self.P, 0.0, self.scale, self.scale * da)
        return BoundPair(M=m, L=l_op, beta_l=m.lambda_min(), beta_u=l_op.lambda_max())

    def extract_solution(self, x: np.ndarray) -> np.ndarray:
        """Map an (approximate) fixed point to the underlying problem's solution."""
        return self._extract(as_vector(x, self.dim))

    def __repr__(self) -> str:  # pragma: no cover
        return f"Envelope(kind={self.kind!r}, dim={self.dim}, scale={self.scale:g})"


def _check_range_gamma(gamma: float, f: QuadraticFn, label: str) -> None:
    if not (gamma > 0.0 and math.isfinite(gamma)):
        raise ParameterError(f"{label} requires gamma > 0, got {gamma}")
    if f.curvature_min() < -1e-10:
        raise ParameterError(
            f"{label} requires a convex quadratic part "
            f"(lambda_min(H) = {f.curvature_min():.3e})"
        )
    lam_max = f.curvature_max()
    if lam_max > 0.0 and gamma >= 1.0 / lam_max:
        raise ParameterError(
            f"{label} requires gamma strictly inside (0, 1/lambda_max(H)) = "
            f"(0, {1.0 / lam_max:.12g}) so the curvature bounds apply; got {gamma}"
        )


def _resolve_dim(*candidates: int | None) -> int:
    dims = {d for d in candidates if d is not None}
    if not dims:
        raise ParameterError(
            "cannot infer the ambient dimension; provide it explicitly"
        )
    if len(dims) > 1:
        raise ParameterError(f"inconsistent dimensions {sorted(dims)}")
    return dims.pop()


def build(spec: EnvelopeSpec) -> Envelope:
    """Construct the envelope described by ``spec``.

    Parameter ranges are validated here: proximal-gradient and reflection
    compositions need ``gamma`` strictly below ``1/lambda_max(H)``, the dual
    construction needs a positive definite quadratic part, and relaxed
    projections use relaxations in (0, 2].
    """
    from .operators import gradient_step_map, reflected_prox_map_quadratic

    if isinstance(spec, MoreauSpec):
        n = _resolve_dim(spec.f.dim, spec.dim)
        rp = RelaxedProx(base=spec.f, gamma=spec.gamma, relaxation=1.0)
        return Envelope(
            s1=AffineMap(P=SymOperator.identity(n), q=np.zeros(n)),
            f2=Potential.from_relaxed_prox(rp),
            params=AveragedParams(alpha=0.5, beta=1.0),
            scale=1.0 / spec.gamma,
            kind="moreau",
            spec=spec,
        )

    if isinstance(spec, FBSpec):
        _check_range_gamma(spec.gamma, spec.f, "proximal-gradient composition")
        _resolve_dim(spec.f.dim, spec.g.dim)
        rp = RelaxedProx(base=spec.g, gamma=spec.gamma, relaxation=1.0)
        return Envelope(
            s1=gradient_step_map(spec.f, spec.gamma),
            f2=Potential.from_relaxed_prox(rp),
            params=AveragedParams(alpha=0.5, beta=1.0),
            scale=1.0 / spec.gamma,
            kind="fb",
            spec=spec,
        )

    if isinstance(spec, DRSpec):
        _check_range_gamma(spec.gamma, spec.f, "reflection composition")
        _resolve_dim(spec.f.dim, spec.g.dim)
        rp = RelaxedProx(base=spec.g, gamma=spec.gamma, relaxation=2.0)
        f, gamma = spec.f, spec.gamma
        return Envelope(
            s1=reflected_prox_map_quadratic(f, gamma),
            f2=Potential.from_relaxed_prox(rp),
            params=AveragedParams(alpha=1.0, beta=1.0),
            scale=0.5 / gamma,
            kind="dr",
            spec=spec,
            extract=lambda z: f.H.shifted_inverse_apply(gamma, z - gamma * f.h),
        )

    if isinstance(spec, ADMMSpec):
        rho, f = spec.rho, spec.f
        if not (rho > 0.0 and math.isfinite(rho)):
            raise ParameterError(f"dual composition requires rho > 0, got {rho}")
        if f.curvature_min() <= 1e-12:
            raise ParameterError(
                "dual composition requires a positive definite quadratic part "
                f"(lambda_min(H) = {f.curvature_min():.3e})"
            )
        _resolve_dim(f.dim, spec.g.dim)
        gamma = 1.0 / rho
        # The dual first reflection is the negated primal one scaled by rho:
        # R(v) = -rho * R_primal(v / rho), so P flips sign and q picks up rho.
        primal = reflected_prox_map_quadratic(f, gamma)
        w, v = sym_eig(primal.P)
        s1 = AffineMap(P=SymOperator.from_spectrum(-w, v), q=-rho * primal.q)

        def extract(vv: np.ndarray) -> np.ndarray:
            # Moreau decomposition: prox of the dual function at v.
            return vv - rho * f.H.shifted_inverse_apply(gamma, vv / rho - gamma * f.h)

        return Envelope(
            s1=s1,
            f2=Potential.dual_reflection(spec.g, rho),
            params=AveragedParams(alpha=1.0, beta=1.0),
            scale=0.5 / rho,
            kind="admm",
            spec=spec,
            extract=extract,
        )

    if isinstance(spec, GAPSpec):
        a1, a2 = spec.alpha1, spec.alpha2
        if not (0.0 < a1 <= 2.0 and 0.0 < a2 <= 2.0):
            raise ParameterError(
                f"relaxations must lie in (0, 2], got ({a1}, {a2})"
            )
        if not spec.C.is_indicator:
            raise ParameterError("the non-affine set must be given as an indicator")
        _resolve_dim(spec.D.dim, spec.C.dim)
        wn, vn = sym_eig(spec.D.N)
        p = SymOperator.from_spectrum((1.0 - a1) + a1 * wn, vn)
        rp = RelaxedProx(base=spec.C, gamma=1.0, relaxation=a2)
        d_set = spec.D
        both_reflect = a1 == 2.0 and a2 == 2.0
        return Envelope(
            s1=AffineMap(P=p, q=a1 * spec.D.d),
            f2=Potential.from_relaxed_prox(rp),
            params=AveragedParams(alpha=0.5 * a2, beta=1.0),
            scale=1.0,
            kind="gap",
            spec=spec,
            extract=(lambda x: d_set.project(x)) if both_reflect else None,
        )

    if isinstance(spec, GeneralSpec):
        return Envelope(
            s1=spec.s1,
            f2=spec.f2,
            params=spec.params,
            scale=spec.scale,
            kind="general",
            spec=spec,
        )

    raise ParameterError(f"unknown envelope spec {type(spec).__name__}")


def gap_bound_eigenvalues(alpha1: float, alpha2: float) -> tuple[float, float, float, float]:
    """Closed-form eigenvalues of the projection-envelope curvature operators.

    The projector ``N`` onto the affine set's direction space has
    eigenvalues 0 and 1 only, so ``M`` and ``L`` each have two distinct
    eigenvalues.  Returns
    ``(lam_M | lam_N=0, lam_M | lam_N=1, lam_L | lam_N=0, lam_L | lam_N=1)``:

    * ``lam_M = alpha1*(1 - alpha1)`` where ``lam_N = 0`` and 0 where
      ``lam_N = 1``;
    * ``lam_L = (1 - alpha1)*(1 + (alpha2 - 1)*(1 - alpha1))`` where
      ``lam_N = 0`` and ``alpha2`` where ``lam_N = 1``.
    """
    if not (0.0 < alpha1 <= 2.0 and 0.0 < alpha2 <= 2.0):
        raise ParameterError(
            f"relaxations must lie in (0, 2], got ({alpha1}, {alpha2})"
        )
    lam_m_null0 = alpha1 * (1.0 - alpha1)
    lam_m_null1 = 0.0
    lam_l_null0 = (1.0 - alpha1) * (1.0 + (alpha2 - 1.0) * (1.0 - alpha1))
    lam_l_null1 = alpha2
    return lam_m_null0, lam_m_null1, lam_l_null0, lam_l_null1


def general_envelope_value_nonaffine(
    f1_value: Callable[[np.ndarray], float],
    f1_gradient: Callable[[np.ndarray], np.ndarray],
    f1_hessian: Callable[[np.ndarray], SymOperator],
    f2: Potential,
    x: np.ndarray,
) -> tuple[float, np.ndarray]:
    """Pointwise envelope value and gradient for a non-quadratic ``f1``.

    ``F(x) = <grad f1(x), x> - f1(x) - f2(grad f1(x))`` with gradient
    ``hess f1(x) (x - S2 S1 x)``.  Evaluation only; the quadratic bound
    machinery does not apply here.  For quadratic ``f1`` this reduces
    exactly to the affine construction.
    """
    x = as_vector(x)
    s1x = f1_gradient(x)
    val = float(s1x @ x) - f1_value(x) - f2.value(s1x)
    grad = f1_hessian(x).apply(x - f2.gradient(s1x))
    return val, grad
