"""Seeded random instance generators for checks, tests, and demos.

All generators take a ``numpy.random.Generator`` so that every consumer is
deterministic given its seed.  Dimensions stay small (n <= 8 by default) to
keep brute-force oracles cheap.
"""

from __future__ import annotations

import numpy as np

from .envelopes import (
    ADMMSpec,
    DRSpec,
    Envelope,
    FBSpec,
    GAPSpec,
    GeneralSpec,
    MoreauSpec,
    Potential,
    build,
)
from .linalg import AffineMap, AffineSet, QuadraticFn, SymOperator, affine_projector
from .operators import (
    AveragedParams,
    IndicatorAffine,
    IndicatorBox,
    IndicatorHalfspace,
    L1,
    ProxFn,
    Quadratic,
    RelaxedProx,
    Zero,
    classify_gradient_operator,
)

__all__ = [
    "random_orthonormal",
    "sym_with_spectrum",
    "random_quadratic",
    "random_affine_set",
    "random_prox_fn",
    "random_envelope",
    "ENVELOPE_KINDS",
    "CONJUGATE_CAPABLE",
]

ENVELOPE_KINDS = ("general", "moreau", "fb", "dr", "admm", "gap")

#: Prox variants whose conjugate is itself a catalog member.
CONJUGATE_CAPABLE = ("l1", "quadratic", "zero")


def random_orthonormal(rng: np.random.Generator, n: int) -> np.ndarray:
    q, r = np.linalg.qr(rng.standard_normal((n, n)))
    return q * np.sign(np.diag(r))


def sym_with_spectrum(rng: np.random.Generator, eigs) -> SymOperator:
    eigs = np.asarray(eigs, dtype=float)
    return SymOperator.from_spectrum(eigs, random_orthonormal(rng, eigs.size))


def random_quadratic(
    rng: np.random.Generator, n: int, lam_lo: float, lam_hi: float, with_offset: bool = True
) -> QuadraticFn:
    eigs = rng.uniform(lam_lo, lam_hi, size=n)
    h = rng.standard_normal(n) if with_offset else np.zeros(n)
    return QuadraticFn(H=sym_with_spectrum(rng, eigs), h=h)


def random_affine_set(rng: np.random.Generator, n: int, m: int | None = None) -> AffineSet:
    if m is None:
        m = int(rng.integers(1, n))
    a = rng.standard_normal((m, n))
    b = rng.standard_normal(m)
    return affine_projector(a, b)


def random_prox_fn(
    rng: np.random.Generator, n: int, variants: tuple[str, ...] | None = None
) -> ProxFn:
    """Draw one catalog member of ambient dimension ``n``."""
    variants = variants or ("quadratic", "affine", "box", "halfspace", "l1", "zero")
    variant = variants[int(rng.integers(len(variants)))]
    if variant == "quadratic":
        return Quadratic(random_quadratic(rng, n, 0.05, 2.0))
    if variant == "affine":
        if n == 1:
            return IndicatorAffine(affine_projector(np.ones((1, 1)), rng.standard_normal(1)))
        return random_indicator_affine(rng, n)
    if variant == "box":
        center = rng.standard_normal(n)
        half = rng.uniform(0.1, 1.5, size=n)
        return IndicatorBox(center - half, center + half)
    if variant == "halfspace":
        a = rng.standard_normal(n)
        a[int(rng.integers(n))] += 2.0  # keep the normal away from zero
        return IndicatorHalfspace(a=a, beta=float(rng.standard_normal()))
    if variant == "l1":
        return L1(weight=float(rng.uniform(0.1, 2.0)))
    if variant == "zero":
        return Zero()
    raise ValueError(f"unknown variant {variant!r}")


def random_indicator_affine(rng: np.random.Generator, n: int) -> IndicatorAffine:
    return IndicatorAffine(random_affine_set(rng, n))


def random_feasible_gap_sets(
    rng: np.random.Generator, n: int
) -> tuple[ProxFn, AffineSet]:
    """An affine set and a box/halfspace sharing at least one interior point."""
    d_set = random_affine_set(rng, n)
    anchor = d_set.d + d_set.N.apply(rng.standard_normal(n))
    if rng.integers(2) == 0:
        half = rng.uniform(0.2, 1.5, size=n)
        c: ProxFn = IndicatorBox(anchor - half, anchor + half)
    else:
        a = rng.standard_normal(n)
        a[int(rng.integers(n))] += 2.0
        beta = float(a @ anchor) + float(rng.uniform(0.2, 1.0))
        c = IndicatorHalfspace(a=a, beta=beta)
    return c, d_set


def _random_general_spec(
    rng: np.random.Generator, n: int, p_lo: float = -1.0, p_hi: float = 1.0
) -> GeneralSpec:
    p_eigs = rng.uniform(p_lo, p_hi, size=n)
    s1 = AffineMap(P=sym_with_spectrum(rng, p_eigs), q=rng.standard_normal(n))
    if rng.integers(2) == 0:
        relax = float(rng.uniform(0.2, 2.0))
        rp = RelaxedProx(base=random_prox_fn(rng, n), gamma=float(rng.uniform(0.4, 2.0)),
                         relaxation=relax)
        f2 = Potential.from_relaxed_prox(rp)
        # A relaxed prox is (relax/2)-averaged and nonexpansive.
        params = AveragedParams(alpha=0.5 * relax, beta=1.0)
    else:
        fq = random_quadratic(rng, n, 0.0, 2.0)
        lam_max = max(fq.curvature_max(), 1e-6)
        gamma = float(rng.uniform(0.1, 2.0)) / lam_max
        f2 = Potential.from_gradient_step(fq, gamma)
        step_eigs = 1.0 - gamma * fq.H.eigenvalues
        if step_eigs.min() >= 0.0:
            params = classify_gradient_operator("cocoercive", float(step_eigs.max()))
        else:
            params = classify_gradient_operator("lipschitz", float(np.abs(step_eigs).max()))
    return GeneralSpec(s1=s1, f2=f2, params=params, scale=1.0)


def random_envelope(
    rng: np.random.Generator, kind: str, n: int | None = None
) -> tuple[Envelope, dict]:
    """Build a random envelope of the given kind with valid parameters.

    Returns the envelope together with a small descriptor dict for reports.
    """
    if n is None:
        n = int(rng.integers(2, 9))
    if kind == "general":
        env = build(_random_general_spec(rng, n))
        return env, {"kind": kind, "n": n}
    if kind == "general_psd":
        env = build(_random_general_spec(rng, n, p_lo=0.0, p_hi=1.0))
        return env, {"kind": kind, "n": n}
    if kind == "moreau":
        gamma = float(rng.uniform(0.4, 2.5))
        env = build(MoreauSpec(f=random_prox_fn(rng, n), gamma=gamma, dim=n))
        return env, {"kind": kind, "n": n, "gamma": gamma}
    if kind == "fb":
        f = random_quadratic(rng, n, 0.0, 2.0)
        gamma = float(rng.uniform(0.15, 0.9)) / max(f.curvature_max(), 0.5)
        env = build(FBSpec(f=f, g=random_prox_fn(rng, n), gamma=gamma))
        return env, {"kind": kind, "n": n, "gamma": gamma}
    if kind == "dr":
        f = random_quadratic(rng, n, 0.0, 2.0)
        gamma = float(rng.uniform(0.15, 0.9)) / max(f.curvature_max(), 0.5)
        env = build(DRSpec(f=f, g=random_prox_fn(rng, n), gamma=gamma))
        return env, {"kind": kind, "n": n, "gamma": gamma}
    if kind == "admm":
        f = random_quadratic(rng, n, 0.3, 2.0)
        rho = float(f.curvature_max()) * float(rng.uniform(1.1, 3.0))
        env = build(ADMMSpec(f=f, g=random_prox_fn(rng, n), rho=rho))
        return env, {"kind": kind, "n": n, "rho": rho}
    if kind == "gap":
        if n < 2:
            n = 2
        c, d_set = random_feasible_gap_sets(rng, n)
        a1 = float(rng.uniform(0.2, 2.0))
        a2 = float(rng.uniform(0.2, 2.0))
        env = build(GAPSpec(C=c, D=d_set, alpha1=a1, alpha2=a2))
        return env, {"kind": kind, "n": n, "alpha1": a1, "alpha2": a2}
    raise ValueError(f"unknown envelope kind {kind!r}")
