"""Numerical certification of the envelope theory on randomized instances.

Each check draws seeded random instances, evaluates a family of
inequalities against independent oracles (brute force over spectra,
closed-form scalar chains, finite differences), and reports the worst
slack-adjusted excess:

    worst_violation = max over assertions of (observed violation - allowance)

so a check passes exactly when ``worst_violation <= 0``.  Per-assertion
allowances and raw worst violations are recorded in the report descriptor.
Checks are deterministic given ``(seed, trials)`` and independent of each
other, so they may run concurrently; reports serialize to one JSON object
per line.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .envelopes import (
    ADMMSpec,
    DRSpec,
    GAPSpec,
    build,
    gap_bound_eigenvalues,
)
from .errors import ParameterError
from .linalg import (
    QuadraticFn,
    largest_mapped_eigenvalue,
    poly_of_operator,
    smallest_mapped_eigenvalue,
)
from .operators import (
    L1,
    Quadratic,
    RelaxedProx,
    Zero,
    classify_gradient_operator,
    prox,
)
from .sampling import (
    ENVELOPE_KINDS,
    random_envelope,
    random_feasible_gap_sets,
    random_prox_fn,
    random_quadratic,
    sym_with_spectrum,
)
from .solvers import SolverConfig, averaged_iteration, gradient_descent

__all__ = [
    "CheckReport",
    "fd_gradient",
    "check_theorem_bounds",
    "check_corollaries",
    "check_appendix_lemmas",
    "check_dr_admm_duality",
    "check_gap_propositions",
    "check_prop_relation",
    "CHECK_NAMES",
    "select_check_names",
    "run_checks",
]


@dataclass(frozen=True)
class CheckReport:
    """Outcome of one randomized check."""

    name: str
    seed: int
    trials: int
    descriptor: dict
    worst_violation: float
    slack: float
    passed: bool

    def to_json(self) -> str:
        doc = {
            "name": self.name,
            "seed": self.seed,
            "trials": self.trials,
            "descriptor": self.descriptor,
            "worst_violation": self.worst_violation,
            "slack": self.slack,
            "pass": self.passed,
        }
        return json.dumps(doc, sort_keys=True)


class _Assertions:
    """Accumulates per-assertion worst violations with their allowances."""

    def __init__(self) -> None:
        self._worst: dict[str, float] = {}
        self._allow: dict[str, float] = {}

    def record(self, key: str, violation: float, allowance: float) -> None:
        violation = float(violation)
        if key in self._worst:
            self._worst[key] = max(self._worst[key], violation)
        else:
            self._worst[key] = violation
            self._allow[key] = float(allowance)

    def report(self, name: str, seed: int, trials: int, descriptor: dict) -> CheckReport:
        excess = {k: self._worst[k] - self._allow[k] for k in self._worst}
        worst = max(excess.values()) if excess else 0.0
        descriptor = dict(descriptor)
        descriptor["assertions"] = {
            k: {"worst": self._worst[k], "allowance": self._allow[k]}
            for k in sorted(self._worst)
        }
        return CheckReport(
            name=name,
            seed=seed,
            trials=trials,
            descriptor=descriptor,
            worst_violation=worst,
            slack=0.0,
            passed=worst <= 0.0,
        )


def fd_gradient(fn, x: np.ndarray, h: float | None = None) -> np.ndarray:
    """Central-difference gradient with step ``1e-5 * (1 + ||x||)``."""
    x = np.asarray(x, dtype=float)
    if h is None:
        h = 1e-5 * (1.0 + float(np.linalg.norm(x)))
    g = np.zeros_like(x)
    for i in range(x.size):
        e = np.zeros_like(x)
        e[i] = h
        g[i] = (fn(x + e) - fn(x - e)) / (2.0 * h)
    return g


def _bregman(env, x, y) -> float:
    return env.value(x) - env.value(y) - float(env.gradient(y) @ (x - y))


# ---------------------------------------------------------------------------
# individual checks


def check_theorem_bounds(seed: int = 0, trials: int = 60) -> CheckReport:
    """Quadratic envelope bounds and the composition monotonicity inequality.

    For random envelopes of every kind and random pairs, the Bregman
    difference of the envelope must lie between the quadratic forms of the
    curvature operators ``M`` and ``L``, and the composed gradient must
    satisfy the two-sided monotonicity bound in the ``P^2`` seminorm.
    """
    rng = np.random.default_rng(seed)
    acc = _Assertions()
    for t in range(trials):
        kind = ENVELOPE_KINDS[t % len(ENVELOPE_KINDS)]
        env, _ = random_envelope(rng, kind)
        bp = env.bounds
        da = env.params.delta_alpha
        db = env.params.delta_beta
        for _ in range(8):
            x = 1.5 * rng.standard_normal(env.dim)
            y = 1.5 * rng.standard_normal(env.dim)
            d = x - y
            breg = _bregman(env, x, y)
            acc.record("theorem_lower", 0.5 * bp.M.quad(d) - breg, 1e-9)
            acc.record("theorem_upper", breg - 0.5 * bp.L.quad(d), 1e-9)
            inner = float(env.P.apply(env.s2s1(x) - env.s2s1(y)) @ d)
            pd2 = float(np.sum(env.P.apply(d) ** 2))
            acc.record("composition_upper", inner - db * pd2, 1e-9)
            acc.record("composition_lower", -da * pd2 - inner, 1e-9)
    return acc.report("theorem_bounds", seed, trials, {"kinds": list(ENVELOPE_KINDS)})


def check_corollaries(seed: int = 0, trials: int = 60) -> CheckReport:
    """Scalar corollaries of the quadratic bounds.

    Positive semidefiniteness of ``P - delta_beta*P^2`` for psd ``P``, the
    closed-form expressions for the extreme curvature eigenvalues, strict
    positivity under the strong-convexity hypotheses, and convexity of
    envelopes built on psd ``P``.
    """
    rng = np.random.default_rng(seed)
    acc = _Assertions()
    for t in range(trials):
        n = int(rng.integers(1, 9))

        # psd claim: P psd and nonexpansive makes P - delta_beta*P^2 psd.
        p = sym_with_spectrum(rng, rng.uniform(0.0, 1.0, size=n))
        db = float(rng.uniform(-0.999, 1.0))
        m_op = poly_of_operator(p, 0.0, 1.0, -db)
        acc.record("psd_lower_operator", -m_op.lambda_min(), 1e-10)

        # closed-form extreme eigenvalues for delta in [-0.5, 1].
        p2 = sym_with_spectrum(rng, rng.uniform(-1.0, 1.0, size=n))
        db2 = float(rng.uniform(-0.5, 1.0))
        da2 = float(rng.uniform(-0.5, 1.0))
        w = p2.eigenvalues
        m, lam = float(w[0]), float(w[-1])
        beta_l = min(m * (1.0 - db2 * m), lam * (1.0 - db2 * lam))
        beta_u = lam * (1.0 + da2 * lam)
        lo_direct = poly_of_operator(p2, 0.0, 1.0, -db2).lambda_min()
        hi_direct = poly_of_operator(p2, 0.0, 1.0, da2).lambda_max()
        acc.record("beta_l_formula", abs(beta_l - lo_direct), 1e-10)
        acc.record("beta_u_formula", abs(beta_u - hi_direct), 1e-10)

        # strong convexity: contractive definite P keeps the lower operator definite.
        p3 = sym_with_spectrum(rng, rng.uniform(0.05, 0.95, size=n))
        db3 = float(rng.uniform(-0.999, 1.0))
        acc.record(
            "strong_convexity_definite",
            -poly_of_operator(p3, 0.0, 1.0, -db3).lambda_min(),
            0.0,
        )

        # convexity of an actual envelope built on psd P.
        if t % 3 == 0:
            env, _ = random_envelope(rng, "general_psd", n=max(n, 2))
            acc.record("envelope_convexity", -env.bounds.M.lambda_min(), 1e-10)
    return acc.report("corollaries", seed, trials, {})


def _bregman_quadratic(fn: QuadraticFn, x: np.ndarray, y: np.ndarray) -> float:
    return fn.value(x) - fn.value(y) - float(fn.gradient(y) @ (x - y))


def check_appendix_lemmas(seed: int = 0, trials: int = 60) -> CheckReport:
    """Supporting lemmas: bound equivalences, scaled Lipschitz continuity,
    prox monotonicity, and the mapped-eigenvalue case analyses.

    (a) the function-value and gradient forms of a two-sided quadratic
    bound hold or fail together, on quadratic and smooth non-quadratic
    test functions with engineered margins; (b) the smoothness constant in
    a ``L``-scaled norm equals the extreme eigenvalue of the scaled
    Hessian, and the scaled Lipschitz inequality is tight in the extremal
    direction; (c) relaxed proximal maps satisfy the two-sided averaged
    monotonicity inequality; (d) the closed-form case analyses for
    ``lambda_min(P - delta*P^2)`` and ``lambda_max(P + delta*P^2)`` agree
    with brute force over the spectrum in all three delta regimes.
    """
    rng = np.random.default_rng(seed)
    acc = _Assertions()
    for t in range(trials):
        n = int(rng.integers(1, 7))

        # (a) equivalence of value-form and gradient-form bounds.
        q = sym_with_spectrum(rng, rng.uniform(-2.0, 2.0, size=n))
        f = QuadraticFn(H=q, h=rng.standard_normal(n))
        margin = float(rng.uniform(0.1, 1.0))
        should_hold = t % 2 == 0
        m_mat = -q.mat + margin * np.eye(n)
        l_mat = q.mat + (margin if should_hold else -margin) * np.eye(n)
        dirs = [rng.standard_normal(n) for _ in range(12)]
        qm = np.linalg.eigh(-m_mat - q.mat)[1][:, -1]
        ql = np.linalg.eigh(q.mat - l_mat)[1][:, -1]
        dirs += [qm, ql]
        tol = 1e-9
        value_ok = True
        grad_ok = True
        for d in dirs:
            y = rng.standard_normal(n)
            x = y + d
            breg = _bregman_quadratic(f, x, y)
            lo = -0.5 * float(d @ (m_mat @ d))
            hi = 0.5 * float(d @ (l_mat @ d))
            value_ok &= lo - tol <= breg <= hi + tol
            mono = float((f.gradient(x) - f.gradient(y)) @ d)
            grad_ok &= -float(d @ (m_mat @ d)) - tol <= mono <= float(d @ (l_mat @ d)) + tol
        acc.record("bound_equivalence_quadratic", float(value_ok != grad_ok), 0.0)
        acc.record("bound_equivalence_expected", float(value_ok != should_hold), 0.0)

        # (a') same equivalence on a smooth non-quadratic function
        # f(x) = c * sum sqrt(1 + x_i^2), curvature in (0, c].
        c = float(rng.uniform(0.5, 2.0))
        nq_value = lambda z: c * float(np.sum(np.sqrt(1.0 + z * z)))  # noqa: E731
        nq_grad = lambda z: c * z / np.sqrt(1.0 + z * z)  # noqa: E731
        factor = 1.0 if t % 2 == 0 else 0.3
        pts = [0.1 * rng.standard_normal(n) for _ in range(6)]
        pts.append(np.zeros(n))
        v_ok = True
        g_ok = True
        for y in pts:
            x = y + 0.2 * rng.standard_normal(n)
            d = x - y
            breg = nq_value(x) - nq_value(y) - float(nq_grad(y) @ d)
            hi = 0.5 * factor * c * float(d @ d)
            v_ok &= 0.0 - tol <= breg <= hi + tol
            mono = float((nq_grad(x) - nq_grad(y)) @ d)
            g_ok &= -tol <= mono <= factor * c * float(d @ d) + tol
        acc.record("bound_equivalence_smooth", float(v_ok != g_ok), 0.0)

        # (b) Lipschitz constant in a scaled norm from the scaled Hessian.
        l_eigs = rng.uniform(0.3, 2.5, size=n)
        l_op = sym_with_spectrum(rng, l_eigs)
        lw, lv = l_op.eigenvalues, l_op.eigenvectors
        l_isqrt = (lv / np.sqrt(lw)) @ lv.T
        scaled = l_isqrt @ q.mat @ l_isqrt
        sw, sv = np.linalg.eigh(0.5 * (scaled + scaled.T))
        beta = float(np.abs(sw).max())
        for _ in range(6):
            d = rng.standard_normal(n)
            lhs = math.sqrt(float(q.apply(d) @ l_op.solve(q.apply(d))))
            rhs = beta * math.sqrt(float(d @ l_op.apply(d)))
            acc.record("scaled_lipschitz", lhs - rhs, 1e-9)
            breg = abs(_bregman_quadratic(f, d, np.zeros(n)))
            acc.record("scaled_smoothness", breg - 0.5 * beta * float(d @ l_op.apply(d)), 1e-9)
        j = int(np.argmax(np.abs(sw)))
        dstar = l_isqrt @ sv[:, j]
        lhs = math.sqrt(float(q.apply(dstar) @ l_op.solve(q.apply(dstar))))
        rhs = beta * math.sqrt(float(dstar @ l_op.apply(dstar)))
        acc.record("scaled_lipschitz_tight", abs(lhs - rhs), 1e-9)

        # (c) two-sided monotonicity of relaxed proximal maps.
        g = random_prox_fn(rng, n)
        relax = float(rng.uniform(0.2, 2.0))
        rp = RelaxedProx(base=g, gamma=float(rng.uniform(0.3, 2.0)), relaxation=relax)
        for _ in range(6):
            x = 2.0 * rng.standard_normal(n)
            y = 2.0 * rng.standard_normal(n)
            d = x - y
            mono = float((rp.apply(x) - rp.apply(y)) @ d)
            dd = float(d @ d)
            acc.record("relaxed_prox_mono_upper", mono - dd, 1e-9)
            acc.record("relaxed_prox_mono_lower", -(relax - 1.0) * dd - mono, 1e-9)

        # (d) mapped-eigenvalue case analyses against brute force.
        size = int(rng.integers(1, 9))
        eigs = rng.uniform(-1.0, 1.0, size=size)
        delta = (
            float(rng.uniform(0.0, 1.0)),
            float(rng.uniform(-0.5, 0.0)),
            float(rng.uniform(-1.0, -0.5)),
        )[t % 3]
        brute_min = float(np.min(eigs - delta * eigs**2))
        brute_max = float(np.max(eigs + delta * eigs**2))
        acc.record(
            "mapped_min_eigenvalue",
            abs(smallest_mapped_eigenvalue(eigs, delta) - brute_min),
            1e-12,
        )
        acc.record(
            "mapped_max_eigenvalue",
            abs(largest_mapped_eigenvalue(eigs, delta) - brute_max),
            1e-12,
        )
    return acc.report("appendix_lemmas", seed, trials, {})


def check_dr_admm_duality(seed: int = 0, trials: int = 40) -> CheckReport:
    """Primal/dual reflection calculus and the envelope sign identity.

    The three reflection/potential identities relating a function and its
    conjugate are checked with the conjugate side evaluated through an
    independent route; the primal and dual iterate sequences must differ
    by the scaling factor only; and the dual envelope must equal the
    negated primal envelope at matched points.
    """
    rng = np.random.default_rng(seed)
    acc = _Assertions()
    conj_variants = (
        lambda n: L1(weight=float(rng.uniform(0.2, 2.0))),
        lambda n: Quadratic(random_quadratic(rng, n, 0.2, 2.0)),
        lambda n: Zero(),
    )
    for t in range(trials):
        n = int(rng.integers(1, 7))
        f = random_quadratic(rng, n, 0.3, 1.5)
        rho = float(f.curvature_max()) * float(rng.uniform(1.1, 3.0))
        gamma = 1.0 / rho
        g = conj_variants[t % 3](n)
        gc = g.conjugate()

        ref = RelaxedProx(base=g, gamma=gamma, relaxation=2.0)
        for _ in range(5):
            x = 3.0 * rng.standard_normal(n)
            lhs1 = 2.0 * gc.prox(rho, x) - x
            rhs1 = -rho * ref.apply(x / rho)
            acc.record("reflection_conjugate", float(np.abs(lhs1 - rhs1).max()), 1e-9)

            lhs2 = -2.0 * gc.prox(rho, -x) - x
            rhs2 = rho * ref.apply(-x / rho)
            acc.record("reflection_conjugate_neg", float(np.abs(lhs2 - rhs2).max()), 1e-9)

            u = -gc.prox(rho, -x)
            gval = gc.value(-u)
            if not math.isfinite(gval):
                gval = 0.0
            rstar = float(x @ u) - rho * gval - 0.5 * float(u @ u)
            lhs3 = 2.0 * rstar - 0.5 * float(x @ x)
            rhs3 = -(rho**2) * ref.potential(-x / rho)
            acc.record("potential_conjugate_neg", abs(lhs3 - rhs3), 1e-9)

        dr_env = build(DRSpec(f=f, g=g, gamma=gamma))
        admm_env = build(ADMMSpec(f=f, g=g, rho=rho))
        z0 = 2.0 * rng.standard_normal(n)
        cfg = SolverConfig(alpha=0.4, max_iter=50, tol=1e-300)
        z, _ = averaged_iteration(dr_env, z0, cfg)
        v, _ = averaged_iteration(admm_env, rho * z0, cfg)
        acc.record("sequence_scaling", float(np.abs(z - v / rho).max()), 1e-9)

        for _ in range(5):
            v_pt = 3.0 * rng.standard_normal(n)
            fd = dr_env.value(v_pt / rho)
            fa = admm_env.value(v_pt)
            acc.record("envelope_sign", abs(fa + fd) / (1.0 + abs(fd)), 1e-9)
    return acc.report("dr_admm_duality", seed, trials, {})


def check_gap_propositions(seed: int = 0, trials: int = 40) -> CheckReport:
    """Relaxed-projection envelope: curvature operators, eigenvalues,
    restricted convexity/concavity, and feasibility of descent output.

    The explicit forms ``M = a1(1-a1)(I-N)`` and
    ``L = (1-a1)(1+(a2-1)(1-a1)) I + a1(1+(a2-1)(2-a1)) N`` must match the
    generic curvature construction; their eigenvalue formulas must match
    eigendecompositions; directional second differences must show
    convexity (and a2-smoothness) along the eigenspace where ``N`` acts as
    the identity, and concavity along its complement for over-relaxed
    first steps; and for under-relaxed first steps gradient descent must
    reach near-fixed points whose extracted solutions are feasible.
    """
    rng = np.random.default_rng(seed)
    acc = _Assertions()
    descent_budget = max(4, min(trials // 3, 16))
    descents = 0
    for t in range(trials):
        n = int(rng.integers(2, 7))
        c, d_set = random_feasible_gap_sets(rng, n)
        under = t % 2 == 0
        a1 = float(rng.uniform(0.2, 0.8)) if under else float(rng.uniform(1.0, 2.0))
        a2 = float(rng.uniform(0.2, 2.0))
        env = build(GAPSpec(C=c, D=d_set, alpha1=a1, alpha2=a2))
        bp = env.bounds

        wn, vn = d_set.N.eigenvalues, d_set.N.eigenvectors
        n_mat = d_set.N.mat
        ident = np.eye(n)
        m_explicit = a1 * (1.0 - a1) * (ident - n_mat)
        l_explicit = (1.0 - a1) * (1.0 + (a2 - 1.0) * (1.0 - a1)) * ident + a1 * (
            1.0 + (a2 - 1.0) * (2.0 - a1)
        ) * n_mat
        acc.record("M_matrix_form", float(np.abs(bp.M.mat - m_explicit).max()), 1e-10)
        acc.record("L_matrix_form", float(np.abs(bp.L.mat - l_explicit).max()), 1e-10)

        lam_m0, lam_m1, lam_l0, lam_l1 = gap_bound_eigenvalues(a1, a2)
        m_eigs = np.linalg.eigvalsh(m_explicit)
        l_eigs = np.linalg.eigvalsh(l_explicit)
        target_m = np.sort(np.where(wn > 0.5, lam_m1, lam_m0))
        target_l = np.sort(np.where(wn > 0.5, lam_l1, lam_l0))
        acc.record("M_eigenvalues", float(np.abs(np.sort(m_eigs) - target_m).max()), 1e-10)
        acc.record("L_eigenvalues", float(np.abs(np.sort(l_eigs) - target_l).max()), 1e-10)

        for _ in range(5):
            x = 1.5 * rng.standard_normal(n)
            y = 1.5 * rng.standard_normal(n)
            d = x - y
            breg = _bregman(env, x, y)
            acc.record("gap_theorem_lower", 0.5 * bp.M.quad(d) - breg, 1e-9)
            acc.record("gap_theorem_upper", breg - 0.5 * bp.L.quad(d), 1e-9)

        # Directional curvature on the two eigenspaces of N.  The theorem
        # bounds make second differences exact brackets for any step h.
        fixed_dirs = vn[:, wn > 0.5], vn[:, wn <= 0.5]
        h = 0.5
        for _ in range(5):
            x = 1.5 * rng.standard_normal(n)
            span1, span0 = fixed_dirs
            u = span1 @ rng.standard_normal(span1.shape[1])
            u /= np.linalg.norm(u)
            d2 = (env.value(x + h * u) - 2.0 * env.value(x) + env.value(x - h * u)) / h**2
            acc.record("identity_eigenspace_convexity", -d2, 1e-10)
            acc.record("identity_eigenspace_smoothness", d2 - a2, 1e-9)
            if span0.shape[1] > 0:
                w = span0 @ rng.standard_normal(span0.shape[1])
                w /= np.linalg.norm(w)
                d2c = (env.value(x + h * w) - 2.0 * env.value(x) + env.value(x - h * w)) / h**2
                if not under:
                    acc.record("complement_eigenspace_concavity", d2c, 1e-10)

        if under:
            acc.record("underrelaxed_convexity", -bp.M.lambda_min(), 1e-10)
            if descents < descent_budget:
                descents += 1
                sigma_min = env.P.sigma_min()
                cfg = SolverConfig(
                    alpha=0.5, max_iter=40000, tol=0.9e-8 * sigma_min * env.scale
                )
                x0 = 3.0 * rng.standard_normal(n)
                x_end, trace = gradient_descent(env, x0, cfg)
                acc.record(
                    "descent_residual", env.fixed_point_residual(x_end), 1e-8
                )
                sol = env.extract_solution(x_end)
                feas_c = float(np.linalg.norm(sol - prox(c, 1.0, sol)))
                feas_d = float(np.linalg.norm(sol - d_set.project(sol)))
                acc.record("descent_feasibility", max(feas_c, feas_d), 1e-6)
    return acc.report(
        "gap_propositions", seed, trials, {"descent_runs": descents}
    )


def check_prop_relation(seed: int = 0, trials: int = 60) -> CheckReport:
    """Averagedness classification of Lipschitz and cocoercive gradients.

    Linear gradient operators with spectrum in ``[-delta, delta]`` (or
    ``[0, delta]`` for the cocoercive case) must satisfy the two-sided
    monotonicity inequalities with the classified (alpha, beta).
    """
    rng = np.random.default_rng(seed)
    acc = _Assertions()
    for t in range(trials):
        n = int(rng.integers(1, 9))
        delta = float(rng.uniform(0.0, 1.0)) if t % 4 else float(t % 8 >= 4)
        cocoercive = t % 2 == 0
        lo = 0.0 if cocoercive else -delta
        h_op = sym_with_spectrum(rng, rng.uniform(lo, delta, size=n))
        params = classify_gradient_operator(
            "cocoercive" if cocoercive else "lipschitz", delta
        )
        for _ in range(8):
            d = rng.standard_normal(n)
            mono = float(h_op.apply(d) @ d)
            dd = float(d @ d)
            acc.record("averaged_lower", -params.delta_alpha * dd - mono, 1e-9)
            acc.record("averaged_upper", mono - dd, 1e-9)
            acc.record("neg_averaged_lower", -dd - mono, 1e-9)
            acc.record("neg_averaged_upper", mono - params.delta_beta * dd, 1e-9)
    return acc.report("prop_relation", seed, trials, {})


# ---------------------------------------------------------------------------
# registry

_CHECKS = {
    "theorem_bounds": check_theorem_bounds,
    "corollaries": check_corollaries,
    "appendix_lemmas": check_appendix_lemmas,
    "dr_admm_duality": check_dr_admm_duality,
    "gap_propositions": check_gap_propositions,
    "prop_relation": check_prop_relation,
}

CHECK_NAMES = tuple(_CHECKS)


def select_check_names(only: str | None) -> tuple[str, ...]:
    """Resolve a substring filter to check names; unknown filters raise."""
    if only is None:
        return CHECK_NAMES
    names = tuple(name for name in CHECK_NAMES if only in name)
    if not names:
        raise ParameterError(
            f"no check matches {only!r}; valid names: {', '.join(CHECK_NAMES)}"
        )
    return names


def run_checks(seed: int, trials: int, only: str | None = None) -> list[CheckReport]:
    """Run all (or filtered) checks; deterministic given (seed, trials)."""
    if trials < 1:
        raise ParameterError(f"trials must be >= 1, got {trials}")
    return [_CHECKS[name](seed=seed, trials=trials) for name in select_check_names(only)]
