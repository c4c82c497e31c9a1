import numpy as np
import pytest

from envkit.errors import (
    EigendecompositionError,
    ParameterError,
    RankDeficientError,
    SingularOperatorError,
)
from envkit.linalg import (
    AffineMap,
    QuadraticFn,
    SymOperator,
    affine_projector,
    as_vector,
    largest_mapped_eigenvalue,
    poly_of_operator,
    quadratic_conjugate,
    smallest_mapped_eigenvalue,
    sym_eig,
)


def test_as_vector_rejects_nonfinite():
    with pytest.raises(ParameterError):
        as_vector([1.0, np.nan])
    with pytest.raises(ParameterError):
        as_vector([np.inf])
    with pytest.raises(ParameterError):
        as_vector([1.0, 2.0], n=3)


def test_sym_operator_rejects_asymmetric_and_nonfinite():
    with pytest.raises(ParameterError):
        SymOperator([[0.0, 1.0], [0.0, 0.0]])
    with pytest.raises(ParameterError):
        SymOperator([[np.nan]])
    # tiny asymmetry is symmetrized away, result exactly symmetric
    m = np.array([[1.0, 2.0 + 1e-12], [2.0, 3.0]])
    op = SymOperator(m)
    assert np.array_equal(op.mat, op.mat.T)


def test_sym_eig_diagonal():
    w, v = sym_eig(SymOperator(np.diag([2.0, 1.0])))
    assert np.allclose(w, [1.0, 2.0], atol=0)
    # eigenvectors are the axes, up to sign and order
    assert np.allclose(np.abs(v), [[0.0, 1.0], [1.0, 0.0]], atol=1e-14)


def test_sym_eig_exchange_matrix():
    w, _ = sym_eig(SymOperator([[0.0, 1.0], [1.0, 0.0]]))
    assert np.allclose(w, [-1.0, 1.0], atol=1e-15)


def test_sym_eig_reconstruction_random():
    rng = np.random.default_rng(42)
    a = rng.standard_normal((5, 5))
    op = SymOperator(a + a.T)
    w, v = sym_eig(op)
    tol = 1e-10 * (1.0 + np.abs(w).max())
    assert np.abs((v * w) @ v.T - op.mat).max() <= tol
    assert np.abs(v.T @ v - np.eye(5)).max() <= 1e-10
    assert np.all(np.diff(w) >= 0)


def test_spectrum_cache_is_reused():
    op = SymOperator(np.diag([3.0, 1.0, 2.0]))
    assert op.eigenvalues is op.eigenvalues


def test_poly_of_operator_identity_collapses():
    out = poly_of_operator(SymOperator.identity(3), 0.0, 1.0, -1.0)
    assert np.abs(out.mat).max() <= 1e-15


def test_poly_of_operator_diagonal_example():
    p = SymOperator(np.diag([-0.8, 0.2, 1.0]))
    out = poly_of_operator(p, 0.0, 1.0, 0.7)
    # elementwise lam + 0.7*lam^2
    assert np.allclose(sorted(np.diag(out.mat)), sorted([-0.352, 0.228, 1.7]), atol=1e-12)


def test_poly_of_operator_projector_idempotence():
    d = affine_projector([[1.0, 0.0, 2.0]], [0.5])
    out = poly_of_operator(d.N, 0.0, 1.0, -1.0)
    assert np.abs(out.mat).max() <= 1e-12


def test_poly_of_operator_commutes_with_eigendecomposition():
    rng = np.random.default_rng(7)
    for _ in range(100):
        n = int(rng.integers(1, 9))
        a = rng.standard_normal((n, n))
        p = SymOperator(a + a.T)
        c0, c1, c2 = rng.uniform(-1, 1, size=3)
        out = poly_of_operator(p, c0, c1, c2)
        w = p.eigenvalues
        expected = np.sort(c0 + c1 * w + c2 * w * w)
        assert np.abs(out.eigenvalues - expected).max() <= 1e-10 * (1 + np.abs(expected).max())


def test_affine_projector_coordinate_hyperplane():
    d = affine_projector([[1.0, 0.0]], [0.0])
    assert np.allclose(d.N.mat, np.diag([0.0, 1.0]), atol=1e-14)
    assert np.allclose(d.d, [0.0, 0.0], atol=1e-14)


def test_affine_projector_coordinate_shift():
    d = affine_projector([[1.0, 0.0]], [3.0])
    assert np.allclose(d.d, [3.0, 0.0], atol=1e-14)
    assert np.allclose(d.project(np.array([5.0, 7.0])), [3.0, 7.0], atol=1e-14)


def test_affine_projector_random_kkt():
    rng = np.random.default_rng(3)
    a = rng.standard_normal((2, 4))
    b = rng.standard_normal(2)
    d = affine_projector(a, b)
    for _ in range(20):
        x = rng.standard_normal(4)
        px = d.project(x)
        assert np.abs(a @ px - b).max() <= 1e-10
        # projection optimality: the step is orthogonal to the feasible directions
        y = d.d + d.N.apply(rng.standard_normal(4))
        assert abs((x - px) @ (y - px)) <= 1e-9


def test_affine_projector_invariants():
    rng = np.random.default_rng(11)
    d = affine_projector(rng.standard_normal((3, 6)), rng.standard_normal(3))
    n = d.N.mat
    assert np.abs(n - n.T).max() == 0.0
    assert np.abs(n @ n - n).max() <= 1e-12
    assert d.N.norm2() <= 1.0 + 1e-12
    assert np.all((np.abs(d.N.eigenvalues) <= 1e-12) | (np.abs(d.N.eigenvalues - 1) <= 1e-12))
    # firm nonexpansiveness of x -> Nx + d
    for _ in range(50):
        x, y = rng.standard_normal(6), rng.standard_normal(6)
        px, py = d.project(x), d.project(y)
        lhs = float((px - py) @ (px - py))
        assert lhs <= float((px - py) @ (x - y)) + 1e-10


def test_affine_projector_rejects_rank_deficient():
    with pytest.raises(RankDeficientError):
        affine_projector([[1.0, 2.0], [2.0, 4.0]], [0.0, 0.0])
    with pytest.raises(RankDeficientError):
        affine_projector(np.ones((3, 2)), np.zeros(3))


def test_quadratic_conjugate_identity_and_scaling():
    f = QuadraticFn(H=SymOperator.identity(2), h=np.zeros(2))
    fc = quadratic_conjugate(f)
    mu = np.array([1.5, -2.0])
    assert fc.value(mu) == pytest.approx(0.5 * mu @ mu, abs=1e-14)

    f2 = QuadraticFn(H=SymOperator(2.0 * np.eye(2)), h=np.zeros(2))
    fc2 = quadratic_conjugate(f2)
    assert fc2.value(mu) == pytest.approx(0.25 * mu @ mu, abs=1e-14)


def test_quadratic_conjugate_grid_supremum_oracle():
    f = QuadraticFn(H=SymOperator(np.diag([1.0, 4.0])), h=np.array([1.0, 0.0]))
    fc = quadratic_conjugate(f)
    mu = np.array([0.7, -1.3])
    # brute-force sup over a fine grid around the analytic maximizer
    xs = np.linspace(-4, 4, 2001)
    best = -np.inf
    for x1 in xs:
        vals = mu[0] * x1 + mu[1] * xs - (0.5 * (x1**2 + 4 * xs**2) + x1)
        best = max(best, vals.max())
    assert fc.value(mu) == pytest.approx(best, abs=1e-5)
    # closed form 0.5*(mu1-1)^2 + mu2^2/8
    assert fc.value(mu) == pytest.approx(0.5 * (mu[0] - 1) ** 2 + mu[1] ** 2 / 8, abs=1e-12)


def test_quadratic_conjugate_is_involutive_with_offsets():
    rng = np.random.default_rng(5)
    a = rng.standard_normal((3, 3))
    f = QuadraticFn(H=SymOperator(a @ a.T + 0.5 * np.eye(3)), h=rng.standard_normal(3), c=0.7)
    fcc = quadratic_conjugate(quadratic_conjugate(f))
    x = rng.standard_normal(3)
    assert fcc.value(x) == pytest.approx(f.value(x), abs=1e-10)


def test_quadratic_conjugate_rejects_singular():
    f = QuadraticFn(H=SymOperator(np.diag([1.0, 0.0])), h=np.zeros(2))
    with pytest.raises(SingularOperatorError):
        quadratic_conjugate(f)


@pytest.mark.parametrize(
    "eigs,delta,expected",
    [
        ((-0.8, 0.2, 1.0), -0.7, -0.352),  # vertex regime, closest to 1/(2*delta)
        ((-0.8, 0.2, 1.0), 0.0, -0.8),
        ((0.2, 0.8), 1.0, 0.16),
    ],
)
def test_smallest_mapped_eigenvalue_cases(eigs, delta, expected):
    assert smallest_mapped_eigenvalue(np.array(eigs), delta) == pytest.approx(expected, abs=1e-14)


def test_mapped_eigenvalue_brute_force():
    rng = np.random.default_rng(19)
    for t in range(200):
        size = int(rng.integers(1, 9))
        eigs = rng.uniform(-1.0, 1.0, size=size)
        delta = [rng.uniform(0, 1), rng.uniform(-0.5, 0), rng.uniform(-1, -0.5)][t % 3]
        assert smallest_mapped_eigenvalue(eigs, delta) == pytest.approx(
            np.min(eigs - delta * eigs**2), abs=1e-12
        )
        assert largest_mapped_eigenvalue(eigs, delta) == pytest.approx(
            np.max(eigs + delta * eigs**2), abs=1e-12
        )


def test_mapped_eigenvalue_rejects_bad_delta():
    with pytest.raises(ParameterError):
        smallest_mapped_eigenvalue([0.5], 1.5)
    with pytest.raises(ParameterError):
        largest_mapped_eigenvalue([0.5], -1.5)


def test_affine_map_and_quadratic_fn():
    m = AffineMap(P=SymOperator(np.diag([2.0, 3.0])), q=np.array([1.0, -1.0]))
    assert np.allclose(m(np.array([1.0, 1.0])), [3.0, 2.0])
    f = QuadraticFn(H=SymOperator(np.diag([2.0, 0.0])), h=np.array([0.0, 1.0]), c=2.0)
    x = np.array([3.0, 4.0])
    assert f.value(x) == pytest.approx(9.0 + 4.0 + 2.0)
    assert np.allclose(f.gradient(x), [6.0, 1.0])


def test_solve_and_shifted_inverse():
    rng = np.random.default_rng(23)
    a = rng.standard_normal((4, 4))
    op = SymOperator(a @ a.T + np.eye(4))
    b = rng.standard_normal(4)
    assert np.allclose(op.apply(op.solve(b)), b, atol=1e-10)
    assert np.allclose(
        op.shifted_inverse_apply(0.5, b), np.linalg.solve(np.eye(4) + 0.5 * op.mat, b), atol=1e-10
    )
    singular = SymOperator(np.diag([1.0, 0.0]))
    with pytest.raises(SingularOperatorError):
        singular.solve(np.ones(2))
