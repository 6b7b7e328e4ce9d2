"""Dense matrix primitives: induced p-norms, projectors, eigen machinery,
and the validated row-stochastic matrix type.

Matrices are plain float64 numpy arrays; `as_matrix` / `as_vector` are the
validation gates every public operation goes through.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .errors import PreconditionError

INF = math.inf

#: the only exponents with exact induced-norm computation
PNORMS = (1, 2, INF)

ROW_TOLERANCE = 1e-10
DIAGONALIZABLE_COND = 1e8


def as_pnorm(p):
    """Normalize a p-norm selector to 1, 2 or math.inf; reject everything else."""
    if isinstance(p, str):
        p = p.strip().lower()
        if p in ("inf", "infinity", "oo"):
            return INF
        try:
            p = float(p)
        except ValueError:
            raise PreconditionError(f"unsupported p-norm {p!r}; use 1, 2 or inf")
    if p == 1:
        return 1
    if p == 2:
        return 2
    if p == INF or p == np.inf:
        return INF
    raise PreconditionError(f"unsupported p-norm {p!r}; only p in {{1, 2, inf}} is exact")


def conjugate_pnorm(p):
    """Holder conjugate: 1 <-> inf, 2 <-> 2."""
    p = as_pnorm(p)
    if p == 1:
        return INF
    if p == INF:
        return 1
    return 2


def as_matrix(a, name="matrix"):
    """Coerce to a finite 2-D float array."""
    m = np.asarray(a, dtype=float)
    if m.ndim != 2:
        raise PreconditionError(f"{name} must be 2-D, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise PreconditionError(f"{name} contains non-finite entries")
    return m


def as_vector(x, name="vector"):
    """Coerce to a finite 1-D float array."""
    v = np.asarray(x, dtype=float).reshape(-1)
    if v.size == 0:
        raise PreconditionError(f"{name} is empty")
    if not np.all(np.isfinite(v)):
        raise PreconditionError(f"{name} contains non-finite entries")
    return v


def as_distribution(x, tol=1e-9, name="distribution"):
    """Validate membership in the probability simplex and renormalize exactly."""
    v = as_vector(x, name)
    if np.min(v) < -tol:
        raise PreconditionError(f"{name} has negative entries beyond tolerance")
    v = np.clip(v, 0.0, None)
    s = v.sum()
    if abs(s - 1.0) > tol:
        raise PreconditionError(f"{name} sums to {s}, not 1 within {tol}")
    return v / s


def induced_pnorm(A, p):
    """Exact induced p-norm: max column sum (p=1), spectral norm via SVD (p=2),
    max row sum (p=inf)."""
    A = as_matrix(A)
    p = as_pnorm(p)
    if A.size == 0:
        return 0.0
    if p == 1:
        return float(np.max(np.sum(np.abs(A), axis=0)))
    if p == INF:
        return float(np.max(np.sum(np.abs(A), axis=1)))
    return float(np.linalg.norm(A, 2))


def orthogonal_projector(v):
    """P_v = I - v v^T / ||v||^2, the orthogonal projector onto the hyperplane v-perp."""
    v = as_vector(v)
    n2 = float(v @ v)
    if n2 <= 0.0:
        raise PreconditionError("projector anchor must be nonzero")
    return np.eye(len(v)) - np.outer(v, v) / n2


def agreement_projector(n):
    """Pi_n = I - 11^T/n, deviation from the coordinate average."""
    if n < 1:
        raise PreconditionError("dimension must be positive")
    return np.eye(n) - np.full((n, n), 1.0 / n)


def oblique_projector(w, tol=1e-8):
    """Q_w = I - 1 w^T with w^T 1 = 1; idempotent, kernel <1>, image w-perp."""
    w = as_vector(w)
    s = float(w.sum())
    if abs(s - 1.0) > tol:
        raise PreconditionError(f"oblique anchor must satisfy w^T 1 = 1, got {s}")
    n = len(w)
    return np.eye(n) - np.outer(np.ones(n), w)


def incidence_complete(n):
    """Oriented incidence matrix C_n of the complete graph on n nodes.

    Shape n x n(n-1), one column per ordered pair (i, j) in lexicographic
    order, +1 at the head i and -1 at the tail j.  Satisfies
    C_n C_n^T = 2n I - 2 * ones exactly in integer arithmetic.
    """
    if n < 2:
        raise PreconditionError("complete graph incidence needs n >= 2")
    cols = []
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            c = np.zeros(n, dtype=np.int64)
            c[i] = 1
            c[j] = -1
            cols.append(c)
    return np.column_stack(cols)


def _boolean_primitive(mask, n):
    """Primitivity of a nonnegative pattern by boolean powering.

    A pattern with some all-positive power has one at or before the Wielandt
    bound (n-1)^2 + 1; positivity is monotone once every row is nonempty, so
    a single power >= the bound decides.
    """
    if np.all(mask):
        return True
    if not mask.any(axis=1).all() or not mask.any(axis=0).all():
        return False
    bound = (n - 1) ** 2 + 1
    power = mask.copy()
    steps = 1
    while steps < bound:
        power = (power.astype(np.int64) @ power.astype(np.int64)) > 0
        steps *= 2
        if np.all(power):
            return True
    return bool(np.all(power))


class StochasticMatrix:
    """Validated row-stochastic square matrix with cached structural flags.

    Entries below -row_tolerance or rows off unit sum beyond row_tolerance
    fail construction; smaller deviations are clamped/renormalized so that
    downstream certificates never see silently corrected garbage.
    """

    row_tolerance = ROW_TOLERANCE

    def __init__(self, matrix):
        m = as_matrix(matrix, "stochastic matrix")
        if m.shape[0] != m.shape[1]:
            raise PreconditionError(f"stochastic matrix must be square, got {m.shape}")
        if np.min(m) < -self.row_tolerance:
            raise PreconditionError("negative entries beyond row tolerance")
        m = np.clip(m, 0.0, None)
        sums = m.sum(axis=1)
        if np.max(np.abs(sums - 1.0)) > self.row_tolerance:
            raise PreconditionError("row sums deviate from 1 beyond tolerance")
        self.matrix = m / sums[:, None]
        self.n = m.shape[0]
        col = self.matrix.sum(axis=0)
        self.doubly_stochastic = bool(np.max(np.abs(col - 1.0)) <= self.row_tolerance)
        self.positive_diagonal = bool(np.min(np.diag(self.matrix)) > 0.0)
        self.primitive = _boolean_primitive(self.matrix > 0.0, self.n)

    def __repr__(self):
        return (f"StochasticMatrix(n={self.n}, primitive={self.primitive}, "
                f"doubly_stochastic={self.doubly_stochastic}, "
                f"positive_diagonal={self.positive_diagonal})")


def dominant_pair(A):
    """Right/left dominant eigen-pair (1_n, pi) of a primitive stochastic matrix.

    pi is found by power iteration on A^T (with a direct linear solve as
    fallback for slowly mixing chains) and certified by the residual
    ||A^T pi - pi||_1 <= 1e-12.
    """
    if not isinstance(A, StochasticMatrix):
        A = StochasticMatrix(A)
    if not A.primitive:
        raise PreconditionError("stationary distribution is unique only for primitive matrices")
    M = A.matrix.T
    n = A.n
    pi = np.full(n, 1.0 / n)
    for _ in range(100_000):
        nxt = M @ pi
        nxt /= nxt.sum()
        if np.linalg.norm(M @ nxt - nxt, 1) <= 1e-12:
            pi = nxt
            break
        pi = nxt
    else:
        # direct solve of (A^T - I) pi = 0 with the simplex normalization
        sys = np.vstack([M - np.eye(n), np.ones((1, n))])
        rhs = np.zeros(n + 1)
        rhs[-1] = 1.0
        pi = np.linalg.lstsq(sys, rhs, rcond=None)[0]
        pi = np.clip(pi, 0.0, None)
        pi /= pi.sum()
        for _ in range(200):
            if np.linalg.norm(M @ pi - pi, 1) <= 1e-12:
                break
            pi = M @ pi
            pi /= pi.sum()
    residual = np.linalg.norm(M @ pi - pi, 1)
    if residual > 1e-12:
        raise PreconditionError(f"stationary residual {residual:.3e} above 1e-12")
    return np.ones(n), as_distribution(pi, tol=1e-9)


@dataclass
class EigenDecomposition:
    """Eigenvalues sorted by descending modulus plus a usable real or complex factor.

    When the eigenvector matrix is well conditioned (below the 1e8 threshold)
    `basis` holds it and `diagonalizable` is set; otherwise the real Schur
    factors are the stable surrogate.
    """

    values: np.ndarray
    diagonalizable: bool
    basis: np.ndarray | None
    schur_t: np.ndarray
    schur_z: np.ndarray
    basis_condition: float = field(default=math.inf)


def eigendecompose(A, cond_threshold=DIAGONALIZABLE_COND):
    A = as_matrix(A)
    if A.shape[0] != A.shape[1]:
        raise PreconditionError("eigendecomposition needs a square matrix")
    values, vectors = np.linalg.eig(A)
    order = np.argsort(-np.abs(values), kind="stable")
    values = values[order]
    vectors = vectors[:, order]
    try:
        cond = float(np.linalg.cond(vectors))
    except np.linalg.LinAlgError:
        cond = math.inf
    diagonalizable = bool(np.isfinite(cond) and cond < cond_threshold)
    schur_t, schur_z = scipy.linalg.schur(A, output="real")
    return EigenDecomposition(
        values=values,
        diagonalizable=diagonalizable,
        basis=vectors if diagonalizable else None,
        schur_t=schur_t,
        schur_z=schur_z,
        basis_condition=cond,
    )


def pseudo_inverse(R):
    """Moore-Penrose inverse via SVD with the default singular-value cutoff."""
    return np.linalg.pinv(as_matrix(R))
