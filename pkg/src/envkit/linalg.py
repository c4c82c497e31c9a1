"""Dense symmetric operators, quadratic functions, and affine-subspace projectors.

Everything in this module is immutable after construction and safe to share
between threads.  Matrices are stored densely; the intended problem scale is
n up to a few hundred.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    EigendecompositionError,
    ParameterError,
    RankDeficientError,
    SingularOperatorError,
)

__all__ = [
    "as_vector",
    "SymOperator",
    "sym_eig",
    "poly_of_operator",
    "smallest_mapped_eigenvalue",
    "largest_mapped_eigenvalue",
    "QuadraticFn",
    "AffineMap",
    "AffineSet",
    "affine_projector",
    "quadratic_conjugate",
]

#: Relative threshold below which singular values count as zero.
RANK_TOL = 1e-12


def spectral_tol(lam_max_abs: float) -> float:
    """Tolerance used wherever a spectral identity is asserted."""
    return 1e-10 * (1.0 + lam_max_abs)


def as_vector(x, n: int | None = None) -> np.ndarray:
    """Validate and return ``x`` as a finite 1-D float array.

    Rejects NaN/Inf entries and, when ``n`` is given, wrong lengths.
    """
    v = np.asarray(x, dtype=float)
    if v.ndim == 0:
        v = v.reshape(1)
    if v.ndim != 1 or v.size < 1:
        raise ParameterError(f"expected a 1-D vector, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise ParameterError("vector contains non-finite entries")
    if n is not None and v.size != n:
        raise ParameterError(f"expected length {n}, got {v.size}")
    return v


class SymOperator:
    """Dense symmetric linear operator with a cached spectral decomposition.

    The matrix is symmetrized exactly at construction; inputs whose
    asymmetry exceeds a small tolerance are rejected as caller errors.
    The eigendecomposition is computed on first use under a once-only
    guard and reused afterwards.
    """

    __slots__ = ("_mat", "_lock", "_eigvals", "_eigvecs")

    def __init__(self, mat) -> None:
        m = np.array(mat, dtype=float)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
            raise ParameterError(f"expected a square matrix, got shape {m.shape}")
        if not np.all(np.isfinite(m)):
            raise ParameterError("matrix contains non-finite entries")
        scale = 1.0 + float(np.abs(m).max())
        asym = float(np.abs(m - m.T).max())
        if asym > 1e-8 * scale:
            raise ParameterError(f"matrix is not symmetric (max asymmetry {asym:.3e})")
        m = 0.5 * (m + m.T)
        m.setflags(write=False)
        self._mat = m
        self._lock = threading.Lock()
        self._eigvals: np.ndarray | None = None
        self._eigvecs: np.ndarray | None = None

    @classmethod
    def identity(cls, n: int) -> "SymOperator":
        op = cls(np.eye(n))
        op._eigvals = np.ones(n)
        op._eigvecs = np.eye(n)
        return op

    @classmethod
    def from_spectrum(cls, eigvals, eigvecs) -> "SymOperator":
        """Build ``V diag(w) V^T`` with the spectrum cache pre-seeded.

        ``eigvals`` need not be sorted; they are reordered ascending together
        with the corresponding columns of ``eigvecs``.
        """
        w = np.asarray(eigvals, dtype=float)
        v = np.asarray(eigvecs, dtype=float)
        order = np.argsort(w, kind="stable")
        w = w[order]
        v = v[:, order]
        op = cls(v @ np.diag(w) @ v.T)
        op._eigvals = w
        op._eigvecs = v
        return op

    @property
    def mat(self) -> np.ndarray:
        return self._mat

    @property
    def dim(self) -> int:
        return self._mat.shape[0]

    def _spectrum(self) -> tuple[np.ndarray, np.ndarray]:
        if self._eigvals is None:
            with self._lock:
                if self._eigvals is None:
                    try:
                        w, v = np.linalg.eigh(self._mat)
                    except np.linalg.LinAlgError as exc:
                        raise EigendecompositionError(
                            f"symmetric eigensolver failed to converge on a "
                            f"{self.dim}x{self.dim} operator: {exc}"
                        ) from exc
                    tol = spectral_tol(float(np.abs(w).max(initial=0.0)))
                    recon = (v * w) @ v.T
                    err = float(np.abs(recon - self._mat).max())
                    if err > tol:
                        raise EigendecompositionError(
                            f"spectral reconstruction error {err:.3e} exceeds {tol:.3e}"
                        )
                    self._eigvecs = v
                    self._eigvals = w
        return self._eigvals, self._eigvecs

    @property
    def eigenvalues(self) -> np.ndarray:
        """Eigenvalues in ascending order."""
        return self._spectrum()[0]

    @property
    def eigenvectors(self) -> np.ndarray:
        """Orthonormal eigenvectors, one per column, matching `eigenvalues`."""
        return self._spectrum()[1]

    def lambda_min(self) -> float:
        return float(self.eigenvalues[0])

    def lambda_max(self) -> float:
        return float(self.eigenvalues[-1])

    def norm2(self) -> float:
        """Spectral norm max|lambda|."""
        w = self.eigenvalues
        return float(max(abs(w[0]), abs(w[-1])))

    def sigma_min(self) -> float:
        """Smallest singular value min|lambda|."""
        return float(np.abs(self.eigenvalues).min())

    def apply(self, x: np.ndarray) -> np.ndarray:
        return self._mat @ x

    def __matmul__(self, x: np.ndarray) -> np.ndarray:
        return self._mat @ x

    def quad(self, x: np.ndarray) -> float:
        """Quadratic form <Px, x>."""
        return float(x @ (self._mat @ x))

    def solve(self, b: np.ndarray) -> np.ndarray:
        """Solve ``P x = b`` through the spectral decomposition."""
        w, v = self._spectrum()
        if float(np.abs(w).min()) <= RANK_TOL * (1.0 + float(np.abs(w).max())):
            raise SingularOperatorError("operator is numerically singular")
        return v @ ((v.T @ b) / w)

    def shifted_inverse_apply(self, shift: float, x: np.ndarray) -> np.ndarray:
        """Compute ``(I + shift*P)^-1 x`` through the spectrum."""
        w, v = self._spectrum()
        denom = 1.0 + shift * w
        if float(np.abs(denom).min()) <= RANK_TOL * (1.0 + float(np.abs(denom).max())):
            raise SingularOperatorError("shifted operator is numerically singular")
        return v @ ((v.T @ x) / denom)

    def __repr__(self) -> str:  # pragma: no cover
        return f"SymOperator(dim={self.dim})"


def sym_eig(p: SymOperator) -> tuple[np.ndarray, np.ndarray]:
    """Spectral decomposition ``(eigenvalues ascending, orthonormal eigenvectors)``.

    Raises `EigendecompositionError` when the underlying iterative solver
    does not converge or the reconstruction check fails.
    """
    return p.eigenvalues, p.eigenvectors


def poly_of_operator(p: SymOperator, c0: float, c1: float, c2: float) -> SymOperator:
    """Return ``c0*I + c1*P + c2*P^2``.

    The result shares the eigenvectors of ``P``; its eigenvalues are the
    scalar polynomial applied to the eigenvalues of ``P``.
    """
    w, v = sym_eig(p)
    return SymOperator.from_spectrum(c0 + c1 * w + c2 * w * w, v)


def smallest_mapped_eigenvalue(eigs, delta: float) -> float:
    """Smallest eigenvalue of ``P - delta*P^2`` from the spectrum of ``P``.

    Case analysis for a nonexpansive symmetric ``P`` (spectrum inside
    [-1, 1]) and ``delta`` in [-1, 1]:

    * delta in [0, 1]: the map ``t -> t - delta*t^2`` is concave, so the
      minimum sits at a spectrum endpoint.
    * delta in [-0.5, 0): the map is convex and increasing on [-1, 1], so
      the minimum sits at the smallest eigenvalue.
    * delta in [-1, -0.5): the map is convex with vertex 1/(2*delta) inside
      [-1, 0]; the minimum sits at the eigenvalue closest to the vertex.
    """
    w = np.asarray(eigs, dtype=float)
    if not -1.0 <= delta <= 1.0:
        raise ParameterError(f"delta must lie in [-1, 1], got {delta}")
    psi = lambda t: t - delta * t * t  # noqa: E731
    m, big = float(w.min()), float(w.max())
    if delta >= 0.0:
        return min(psi(m), psi(big))
    if delta >= -0.5:
        return psi(m)
    j = int(np.argmin(np.abs(1.0 / (2.0 * delta) - w)))
    return psi(float(w[j]))


def largest_mapped_eigenvalue(eigs, delta: float) -> float:
    """Largest eigenvalue of ``P + delta*P^2`` from the spectrum of ``P``.

    Mirror image of `smallest_mapped_eigenvalue`: for delta in [-0.5, 1]
    the maximum sits at the largest eigenvalue; for delta in [-1, -0.5)
    it sits at the eigenvalue closest to the vertex -1/(2*delta).
    """
    w = np.asarray(eigs, dtype=float)
    if not -1.0 <= delta <= 1.0:
        raise ParameterError(f"delta must lie in [-1, 1], got {delta}")
    phi = lambda t: t + delta * t * t  # noqa: E731
    if delta >= -0.5:
        return phi(float(w.max()))
    j = int(np.argmin(np.abs(1.0 / (2.0 * delta) + w)))
    return phi(float(w[j]))


@dataclass(frozen=True)
class QuadraticFn:
    """Quadratic function ``f(x) = 0.5*<Hx, x> + <h, x> + c``."""

    H: SymOperator
    h: np.ndarray
    c: float = 0.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "h", as_vector(self.h, self.H.dim))

    @property
    def dim(self) -> int:
        return self.H.dim

    def value(self, x: np.ndarray) -> float:
        return 0.5 * self.H.quad(x) + float(self.h @ x) + self.c

    def gradient(self, x: np.ndarray) -> np.ndarray:
        return self.H.apply(x) + self.h

    def curvature_min(self) -> float:
        return self.H.lambda_min()

    def curvature_max(self) -> float:
        return self.H.lambda_max()


@dataclass(frozen=True)
class AffineMap:
    """Affine map ``x -> P x + q`` with symmetric ``P``."""

    P: SymOperator
    q: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "q", as_vector(self.q, self.P.dim))

    @property
    def dim(self) -> int:
        return self.P.dim

    def __call__(self, x: np.ndarray) -> np.ndarray:
        return self.P.apply(x) + self.q


@dataclass(frozen=True)
class AffineSet:
    """The affine subspace ``{x | A x = b}`` with its Euclidean projector.

    The projector decomposes as ``proj(x) = N x + d`` where ``N`` projects
    onto the nullspace of ``A``.
    """

    A: np.ndarray
    b: np.ndarray
    N: SymOperator = field(repr=False)
    d: np.ndarray = field(repr=False)

    @property
    def dim(self) -> int:
        return self.A.shape[1]

    def project(self, x: np.ndarray) -> np.ndarray:
        return self.N.apply(x) + self.d

    def contains(self, x: np.ndarray, tol: float) -> bool:
        return float(np.abs(self.A @ x - self.b).max()) <= tol

    def residual(self, x: np.ndarray) -> float:
        """Constraint violation ``max|Ax - b|``."""
        return float(np.abs(self.A @ x - self.b).max())


def affine_projector(A, b) -> AffineSet:
    """Build the projector onto ``{x | A x = b}`` for a full-row-rank ``A``.

    ``N = I - A^T (A A^T)^-1 A`` and ``d = A^T (A A^T)^-1 b``, assembled
    through an SVD.  Rows that are numerically dependent (singular values
    below ``1e-12 * sigma_max``) are rejected; pre-reduce the rows of ``A``
    in that case.
    """
    a = np.atleast_2d(np.asarray(A, dtype=float))
    if not np.all(np.isfinite(a)):
        raise ParameterError("constraint matrix contains non-finite entries")
    m, n = a.shape
    bv = as_vector(b, m)
    if m > n:
        raise RankDeficientError(
            f"{m} rows cannot be independent in dimension {n}; pre-reduce the rows of A"
        )
    u, s, vt = np.linalg.svd(a, full_matrices=True)
    if s.size == 0 or s[-1] <= RANK_TOL * s[0]:
        raise RankDeficientError(
            "constraint matrix is rank deficient; pre-reduce the rows of A"
        )
    # Columns of V: first m span range(A^T) (lambda_N = 0), the rest span
    # the nullspace of A (lambda_N = 1).
    v = vt.T
    eigs = np.concatenate([np.zeros(m), np.ones(n - m)])
    nproj = SymOperator.from_spectrum(eigs, v)
    d = v[:, :m] @ ((u.T @ bv) / s)
    return AffineSet(A=a, b=bv, N=nproj, d=d)


def quadratic_conjugate(f: QuadraticFn) -> QuadraticFn:
    """Convex conjugate of a quadratic with positive definite ``H``.

    ``f*(mu) = 0.5*<H^-1 mu, mu> - <H^-1 h, mu> + 0.5*<H^-1 h, h> - c``.
    The constant offset is tracked so that conjugacy is exact, not just
    up to an additive constant.
    """
    w, v = sym_eig(f.H)
    if w[0] <= 1e-12:
        raise SingularOperatorError(
            f"conjugate requires a positive definite quadratic part "
            f"(lambda_min = {w[0]:.3e})"
        )
    hinv = SymOperator.from_spectrum(1.0 / w, v)
    hinv_h = hinv.apply(f.h)
    return QuadraticFn(H=hinv, h=-hinv_h, c=0.5 * float(f.h @ hinv_h) - f.c)
