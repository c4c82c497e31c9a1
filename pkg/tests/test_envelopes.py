import numpy as np
import pytest

from envkit.envelopes import (
    ADMMSpec,
    DRSpec,
    FBSpec,
    GAPSpec,
    GeneralSpec,
    MoreauSpec,
    Potential,
    build,
    gap_bound_eigenvalues,
    general_envelope_value_nonaffine,
)
from envkit.errors import ParameterError
from envkit.linalg import (
    AffineMap,
    QuadraticFn,
    SymOperator,
    affine_projector,
    quadratic_conjugate,
)
from envkit.operators import (
    AveragedParams,
    IndicatorAffine,
    IndicatorHalfspace,
    L1,
    Quadratic,
    RelaxedProx,
    reflected_prox_map_quadratic,
)
from envkit.sampling import ENVELOPE_KINDS, random_envelope
from envkit.verify import fd_gradient


def scalar_quadratic(curv=1.0, lin=0.0):
    return QuadraticFn(H=SymOperator([[curv]]), h=np.array([lin]))


def point_indicator_1d():
    return IndicatorAffine(affine_projector([[1.0]], [0.0]))


def fb_scalar_env():
    return build(FBSpec(f=scalar_quadratic(), g=Quadratic(scalar_quadratic()), gamma=0.5))


# ---------------------------------------------------------------------------
# build


def test_build_moreau_identity_linear_part():
    env = build(MoreauSpec(f=L1(1.0), gamma=1.0, dim=2))
    assert np.array_equal(env.P.mat, np.eye(2))
    assert np.array_equal(env.s1.q, np.zeros(2))
    assert env.scale == 1.0
    assert (env.params.alpha, env.params.beta) == (0.5, 1.0)


def test_build_fb_scalar_composition():
    env = fb_scalar_env()
    assert env.P.mat[0, 0] == pytest.approx(0.5, abs=0)
    assert env.s1.q[0] == 0.0
    assert env.s2s1(np.array([1.0]))[0] == pytest.approx(1.0 / 3.0, abs=1e-15)
    assert env.scale == pytest.approx(2.0)


def test_build_gap_linear_part():
    d = affine_projector([[1.0, 0.0]], [0.0])
    env = build(GAPSpec(C=IndicatorHalfspace(np.array([0.0, -1.0]), -1.0), D=d,
                        alpha1=0.5, alpha2=1.5))
    assert np.allclose(env.P.mat, np.diag([0.5, 1.0]), atol=1e-14)
    assert np.allclose(env.s1.q, 0.0)
    assert env.params.alpha == pytest.approx(0.75)


def test_build_admm_matches_direct_dual_construction():
    # the lemma-identity route must agree with reflecting the explicit conjugate
    rng = np.random.default_rng(8)
    a = rng.standard_normal((3, 3))
    f = QuadraticFn(H=SymOperator(a @ a.T + 0.4 * np.eye(3)), h=rng.standard_normal(3))
    rho = 2.0 * f.curvature_max()
    env = build(ADMMSpec(f=f, g=L1(0.7), rho=rho))
    direct = reflected_prox_map_quadratic(quadratic_conjugate(f), rho)
    assert np.abs(env.P.mat - direct.P.mat).max() <= 1e-10
    assert np.abs(env.s1.q - direct.q).max() <= 1e-10


def test_build_rejects_gamma_at_curvature_boundary():
    f = scalar_quadratic(curv=2.0)
    with pytest.raises(ParameterError):
        build(FBSpec(f=f, g=L1(1.0), gamma=0.5))
    with pytest.raises(ParameterError):
        build(DRSpec(f=f, g=L1(1.0), gamma=0.5))
    build(FBSpec(f=f, g=L1(1.0), gamma=0.49))  # strictly inside is fine


def test_build_rejects_admm_with_singular_quadratic():
    f = QuadraticFn(H=SymOperator(np.diag([1.0, 0.0])), h=np.zeros(2))
    with pytest.raises(ParameterError):
        build(ADMMSpec(f=f, g=L1(1.0), rho=1.0))


def test_build_rejects_bad_gap_relaxations():
    d = affine_projector([[1.0, 0.0]], [0.0])
    c = IndicatorHalfspace(np.array([0.0, 1.0]), 0.0)
    with pytest.raises(ParameterError):
        build(GAPSpec(C=c, D=d, alpha1=2.5, alpha2=1.0))
    with pytest.raises(ParameterError):
        build(GAPSpec(C=L1(1.0), D=d, alpha1=0.5, alpha2=1.0))  # not an indicator


def test_build_rejects_expansive_general():
    s1 = AffineMap(P=SymOperator([[1.5]]), q=np.zeros(1))
    rp = RelaxedProx(L1(1.0), 1.0, 1.0)
    with pytest.raises(ParameterError):
        build(GeneralSpec(s1=s1, f2=Potential.from_relaxed_prox(rp),
                          params=AveragedParams(0.5, 1.0)))


# ---------------------------------------------------------------------------
# value / gradient / residual


def test_moreau_value_grid_oracle():
    env = build(MoreauSpec(f=L1(1.0), gamma=1.0, dim=1))
    zs = np.linspace(-6, 6, 240001)
    oracle = np.min(np.abs(zs) + 0.5 * (zs - 2.0) ** 2)
    assert env.value(np.array([2.0])) == pytest.approx(oracle, abs=1e-8)
    assert env.value(np.array([2.0])) == pytest.approx(1.5, abs=1e-15)
    assert env.value(np.array([0.0])) == pytest.approx(0.0, abs=1e-15)


def test_moreau_gradient_soft_threshold():
    env = build(MoreauSpec(f=L1(1.0), gamma=1.0, dim=1))
    assert env.gradient(np.array([2.0]))[0] == pytest.approx(1.0, abs=1e-15)
    assert env.fixed_point_residual(np.array([0.0])) == 0.0
    assert env.gradient(np.array([0.0]))[0] == 0.0


def test_dr_scalar_chain():
    f = scalar_quadratic()
    env = build(DRSpec(f=f, g=point_indicator_1d(), gamma=0.5))
    # closed-form chain: F(z) = 2 z^2 / 9, grad = 4 z / 9
    for z in (-2.0, 0.5, 3.0):
        assert env.value(np.array([z])) == pytest.approx(2 * z * z / 9, abs=1e-13)
        assert env.gradient(np.array([z]))[0] == pytest.approx(4 * z / 9, abs=1e-13)
    assert env.value(np.array([3.0])) == pytest.approx(2.0, abs=1e-12)


def test_fb_scalar_gradient_and_residual():
    env = fb_scalar_env()
    assert env.gradient(np.array([1.0]))[0] == pytest.approx(2.0 / 3.0, abs=1e-15)
    assert env.fixed_point_residual(np.array([0.0])) == 0.0
    assert env.fixed_point_residual(np.array([1.0])) == pytest.approx(2.0 / 3.0, abs=1e-15)


def test_gradient_zero_at_fixed_point_every_kind():
    rng = np.random.default_rng(9)
    for kind in ENVELOPE_KINDS:
        env, _ = random_envelope(rng, kind)
        # drive to a fixed point, then the gradient must vanish there
        x = rng.standard_normal(env.dim)
        for _ in range(4000):
            x = 0.5 * x + 0.5 * env.s2s1(x)
        if env.fixed_point_residual(x) < 1e-9:
            assert np.linalg.norm(env.gradient(x)) <= env.scale * env.P.norm2() * 1e-9 + 1e-12


def test_gradient_matches_finite_differences_every_kind():
    rng = np.random.default_rng(10)
    for kind in ENVELOPE_KINDS:
        for _ in range(3):
            env, _ = random_envelope(rng, kind)
            for _ in range(8):
                x = 1.5 * rng.standard_normal(env.dim)
                g = env.gradient(x)
                fd = fd_gradient(env.value, x)
                assert np.linalg.norm(fd - g) <= 1e-5 * (1.0 + np.linalg.norm(g)), kind


# ---------------------------------------------------------------------------
# bounds


def test_bounds_moreau_recovers_lipschitz_constant():
    env = build(MoreauSpec(f=L1(1.0), gamma=0.5, dim=3))
    bp = env.bounds
    assert np.abs(bp.M.mat).max() <= 1e-12
    assert np.allclose(bp.L.mat, 2.0 * np.eye(3), atol=1e-12)
    assert bp.beta_l == pytest.approx(0.0, abs=1e-12)
    assert bp.beta_u == pytest.approx(2.0, abs=1e-12)


def test_bounds_fb_scalar():
    bp = fb_scalar_env().bounds
    assert bp.M.mat[0, 0] == pytest.approx(0.5, abs=1e-14)
    assert bp.L.mat[0, 0] == pytest.approx(1.0, abs=1e-14)


def test_bounds_gap_explicit_matrices():
    d = affine_projector([[1.0, 0.0]], [0.0])
    env = build(GAPSpec(C=IndicatorHalfspace(np.array([0.0, -1.0]), -1.0), D=d,
                        alpha1=0.5, alpha2=1.5))
    bp = env.bounds
    assert np.allclose(bp.M.mat, np.diag([0.25, 0.0]), atol=1e-12)
    assert np.allclose(bp.L.mat, np.diag([0.625, 1.5]), atol=1e-12)


def test_gap_bound_eigenvalues_examples():
    assert gap_bound_eigenvalues(0.5, 1.5) == pytest.approx((0.25, 0.0, 0.625, 1.5), abs=1e-15)
    lam_m0, lam_m1, _, _ = gap_bound_eigenvalues(1.0, 0.7)
    assert lam_m0 == 0.0 and lam_m1 == 0.0
    lam_m0, lam_m1, lam_l0, lam_l1 = gap_bound_eigenvalues(2.0, 2.0)
    assert lam_l0 == pytest.approx(0.0, abs=1e-15)
    assert lam_l1 == pytest.approx(2.0, abs=1e-15)
    with pytest.raises(ParameterError):
        gap_bound_eigenvalues(0.0, 1.0)


def test_theorem_bounds_random_pairs_every_kind():
    rng = np.random.default_rng(11)
    for kind in ENVELOPE_KINDS:
        for _ in range(3):
            env, _ = random_envelope(rng, kind)
            bp = env.bounds
            for _ in range(40):
                x = 1.5 * rng.standard_normal(env.dim)
                y = 1.5 * rng.standard_normal(env.dim)
                d = x - y
                breg = env.value(x) - env.value(y) - env.gradient(y) @ d
                assert breg >= 0.5 * bp.M.quad(d) - 1e-9, kind
                assert breg <= 0.5 * bp.L.quad(d) + 1e-9, kind


def test_unscaled_gradient_is_two_lipschitz():
    rng = np.random.default_rng(12)
    for _ in range(6):
        env, _ = random_envelope(rng, "general")
        assert env.scale == 1.0
        for _ in range(60):
            x = 2.0 * rng.standard_normal(env.dim)
            y = 2.0 * rng.standard_normal(env.dim)
            lhs = np.linalg.norm(env.gradient(x) - env.gradient(y))
            assert lhs <= 2.0 * np.linalg.norm(x - y) + 1e-9


def test_envelope_convex_when_p_psd():
    rng = np.random.default_rng(13)
    for _ in range(10):
        env, _ = random_envelope(rng, "general_psd")
        assert env.bounds.M.lambda_min() >= -1e-10


def test_admm_dr_sign_identity_random():
    rng = np.random.default_rng(14)
    for _ in range(10):
        n = int(rng.integers(1, 5))
        a = rng.standard_normal((n, n))
        f = QuadraticFn(H=SymOperator(a @ a.T + 0.3 * np.eye(n)), h=rng.standard_normal(n))
        rho = float(f.curvature_max()) * float(rng.uniform(1.2, 3.0))
        g = L1(float(rng.uniform(0.2, 1.5)))
        dr = build(DRSpec(f=f, g=g, gamma=1.0 / rho))
        admm = build(ADMMSpec(f=f, g=g, rho=rho))
        for _ in range(10):
            v = 3.0 * rng.standard_normal(n)
            fd = dr.value(v / rho)
            fa = admm.value(v)
            assert abs(fa + fd) <= 1e-9 * (1.0 + abs(fd))


def test_gap_subspace_curvature():
    # On the eigenspace where N acts as the identity the envelope is convex
    # and alpha2-smooth; on the complement it is concave for alpha1 in [1,2].
    rng = np.random.default_rng(15)
    d = affine_projector(rng.standard_normal((2, 4)), rng.standard_normal(2))
    anchor = d.d + d.N.apply(rng.standard_normal(4))
    c = IndicatorHalfspace(a=np.array([1.0, 0.5, -0.25, 0.0]),
                           beta=float(np.array([1.0, 0.5, -0.25, 0.0]) @ anchor) + 0.5)
    wn, vn = d.N.eigenvalues, d.N.eigenvectors
    span1 = vn[:, wn > 0.5]
    span0 = vn[:, wn <= 0.5]
    h = 0.5
    for a1, a2 in [(1.0, 0.8), (1.5, 1.2), (2.0, 2.0)]:
        env = build(GAPSpec(C=c, D=d, alpha1=a1, alpha2=a2))
        for _ in range(20):
            x = 2.0 * rng.standard_normal(4)
            u = span1 @ rng.standard_normal(span1.shape[1])
            u /= np.linalg.norm(u)
            d2 = (env.value(x + h * u) - 2 * env.value(x) + env.value(x - h * u)) / h**2
            assert d2 >= -1e-10
            assert d2 <= a2 + 1e-9
            w = span0 @ rng.standard_normal(span0.shape[1])
            w /= np.linalg.norm(w)
            d2c = (env.value(x + h * w) - 2 * env.value(x) + env.value(x - h * w)) / h**2
            assert d2c <= 1e-10


def test_fb_dr_quadratic_g_hessian_containment():
    # with quadratic g the envelope is an explicit quadratic; its Hessian
    # eigenvalues must sit inside [lambda_min(M), lambda_max(L)]
    rng = np.random.default_rng(16)
    for make in (FBSpec, DRSpec):
        for _ in range(5):
            n = int(rng.integers(1, 5))
            a = rng.standard_normal((n, n))
            b = rng.standard_normal((n, n))
            f = QuadraticFn(H=SymOperator(a @ a.T), h=rng.standard_normal(n))
            g = Quadratic(QuadraticFn(H=SymOperator(b @ b.T), h=rng.standard_normal(n)))
            gamma = 0.8 / max(f.curvature_max(), 1.0)
            env = build(make(f=f, g=g, gamma=gamma))
            # Hessian column-by-column via exact differences of the affine gradient
            basis = np.eye(n)
            hess = np.column_stack(
                [env.gradient(basis[:, i]) - env.gradient(np.zeros(n)) for i in range(n)]
            )
            eigs = np.linalg.eigvalsh(0.5 * (hess + hess.T))
            bp = env.bounds
            assert eigs.min() >= bp.M.lambda_min() - 1e-9
            assert eigs.max() <= bp.L.lambda_max() + 1e-9


def test_stationarity_matches_fixed_points_when_p_invertible():
    rng = np.random.default_rng(17)
    for kind in ("moreau", "fb", "dr", "admm"):
        env, _ = random_envelope(rng, kind)
        sig = env.P.sigma_min()
        assert sig > 1e-8
        for _ in range(20):
            x = rng.standard_normal(env.dim)
            g = np.linalg.norm(env.gradient(x))
            r = env.fixed_point_residual(x)
            assert r <= g / (env.scale * sig) + 1e-12
            assert g <= env.scale * env.P.norm2() * r + 1e-12


# ---------------------------------------------------------------------------
# the non-affine evaluator


def test_nonaffine_reduces_to_affine_for_quadratics():
    rng = np.random.default_rng(18)
    env, _ = random_envelope(rng, "fb")
    f1_val = lambda x: 0.5 * env.P.quad(x) + env.s1.q @ x  # noqa: E731
    f1_grad = env.s1
    f1_hess = lambda x: env.P  # noqa: E731
    for _ in range(10):
        x = rng.standard_normal(env.dim)
        val, grad = general_envelope_value_nonaffine(f1_val, f1_grad, f1_hess, env.f2, x)
        assert env.scale * val == pytest.approx(env.value(x), abs=1e-12)
        assert np.allclose(env.scale * grad, env.gradient(x), atol=1e-12)


def test_nonaffine_quartic_closed_form():
    # f1 = x^4/4, f2 = x^2/2:  F = 3x^4/4 - x^6/2, grad = 3x^3 - 3x^5
    f2 = Potential(value=lambda y: 0.5 * float(y @ y), gradient=lambda y: y)
    f1_val = lambda x: 0.25 * float(x[0] ** 4)  # noqa: E731
    f1_grad = lambda x: np.array([x[0] ** 3])  # noqa: E731
    f1_hess = lambda x: SymOperator([[3.0 * x[0] ** 2]])  # noqa: E731
    for t in (-1.2, -0.3, 0.0, 0.4, 0.9):
        x = np.array([t])
        val, grad = general_envelope_value_nonaffine(f1_val, f1_grad, f1_hess, f2, x)
        assert val == pytest.approx(0.75 * t**4 - 0.5 * t**6, abs=1e-12)
        assert grad[0] == pytest.approx(3 * t**3 - 3 * t**5, abs=1e-12)
        fd = fd_gradient(
            lambda z: general_envelope_value_nonaffine(f1_val, f1_grad, f1_hess, f2, z)[0], x
        )
        assert abs(fd[0] - grad[0]) <= 1e-5 * (1.0 + abs(grad[0]))
