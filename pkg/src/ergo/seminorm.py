"""Weighted vector seminorms ||R x||_p, their induced matrix seminorms, the
deflated induced norm Psi_q, and the generalized-eigenvalue route for l2.

Every induced seminorm here is the literal constrained maximum

    |||A|||_{p,R} = max { ||R A x||_p : ||R x||_p <= 1, x perp ker R }

computed exactly.  For weights with a one-dimensional kernel the feasible set
reduces to a plain p-ball inside a hyperplane, which is a tau-shaped problem
solved by the exact engine in `ergodicity`; the l2 case is a symmetric pencil.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg
import scipy.optimize

from .errors import CrossCheckError, PreconditionError
from .linalg import (INF, as_matrix, as_pnorm, as_vector, agreement_projector,
                     incidence_complete, induced_pnorm, oblique_projector,
                     orthogonal_projector)
from .ergodicity import tau

FACTOR_COND_LIMIT = 1e12
KERNEL_INVARIANCE_TOL = 1e-8
ORACLE_DIMENSION_CAP = 5


class SeminormWeight:
    """Weight matrix R with a known one-dimensional kernel.

    Construct through the factory classmethods; `matrix` is the materialized
    R and `kernel` spans ker R.
    """

    def __init__(self, kind, matrix, kernel, s_factor=None, anchor=None):
        self.kind = kind
        self.matrix = matrix
        self.kernel = kernel
        self.s_factor = s_factor
        self.anchor = anchor

    @classmethod
    def orthogonal(cls, v):
        v = as_vector(v, "anchor")
        return cls("orthogonal", orthogonal_projector(v), v, anchor=v)

    @classmethod
    def oblique(cls, w, tol=1e-8):
        w = as_vector(w, "anchor")
        return cls("oblique", oblique_projector(w, tol), np.ones(len(w)), anchor=w)

    @classmethod
    def agreement(cls, n):
        return cls("agreement", agreement_projector(n), np.ones(n), anchor=np.ones(n))

    @classmethod
    def incidence(cls, n):
        return cls("incidence", incidence_complete(n).T.astype(float), np.ones(n))

    @classmethod
    def factored(cls, S, v):
        S = as_matrix(S, "factor")
        v = as_vector(v, "anchor")
        if S.shape[0] != S.shape[1] or S.shape[0] != len(v):
            raise PreconditionError("factor must be square and match the anchor length")
        cond = np.linalg.cond(S)
        if not np.isfinite(cond) or cond >= FACTOR_COND_LIMIT:
            raise PreconditionError(f"factor condition number {cond:.3e} exceeds 1e12")
        R = S @ orthogonal_projector(v)
        return cls("factored", R, v, s_factor=S, anchor=v)

    @property
    def n(self):
        return self.matrix.shape[1]

    def __repr__(self):
        return f"SeminormWeight(kind={self.kind!r}, n={self.n})"


def vector_seminorm(x, weight, p):
    """||R x||_p."""
    x = as_vector(x)
    p = as_pnorm(p)
    if len(x) != weight.n:
        raise PreconditionError(f"vector length {len(x)} does not match weight on R^{weight.n}")
    y = weight.matrix @ x
    if p == 1:
        return float(np.sum(np.abs(y)))
    if p == INF:
        return float(np.max(np.abs(y))) if y.size else 0.0
    return float(np.linalg.norm(y))


def kernel_invariance_residual(A, weight):
    """Relative residual of ker R under A, via the Rayleigh eigenvalue estimate."""
    k = weight.kernel
    Ak = A @ k
    lam = float(k @ Ak) / float(k @ k)
    return float(np.linalg.norm(Ak - lam * k) / np.linalg.norm(k))


def _pencil_l2(R, A, kernel):
    """l2 induced seminorm as the top generalized eigenvalue of
    ((RA)^T RA, R^T R) restricted to the orthogonal complement of the kernel."""
    n = A.shape[0]
    U = scipy.linalg.null_space(kernel.reshape(1, n))
    RA = R @ A
    G1 = U.T @ RA.T @ RA @ U
    G2 = U.T @ R.T @ R @ U
    vals = scipy.linalg.eigh(G1, G2, eigvals_only=True)
    return float(np.sqrt(max(vals[-1], 0.0)))


def _is_row_stochastic(A, tol=1e-10):
    return bool(np.min(A) >= -tol and np.max(np.abs(A.sum(axis=1) - 1.0)) <= tol)


def induced_seminorm(A, weight, p, invariance_tol=KERNEL_INVARIANCE_TOL):
    """Exact R-weighted induced matrix seminorm |||A|||_{p,R}.

    The kernel of the weight must be (numerically) A-invariant for the
    closed-form reductions; otherwise the brute-force evaluator takes over
    up to n <= 5 and larger inputs are refused.
    """
    A = as_matrix(A)
    p = as_pnorm(p)
    n = weight.n
    if A.shape != (n, n):
        raise PreconditionError(f"matrix shape {A.shape} does not match weight on R^{n}")

    if kernel_invariance_residual(A, weight) > invariance_tol:
        if n <= ORACLE_DIMENSION_CAP:
            from .oracle import oracle_weighted_seminorm
            return oracle_weighted_seminorm(A, weight, p).value
        raise PreconditionError(
            "weight kernel is not A-invariant; no closed form and the "
            f"brute-force evaluator is capped at n <= {ORACLE_DIMENSION_CAP}")

    if weight.kind in ("orthogonal", "agreement"):
        v = weight.kernel if weight.kind == "agreement" else weight.anchor
        P = orthogonal_projector(v)
        return tau(v, (P @ A).T, p).value

    if weight.kind == "oblique":
        w = weight.anchor
        Q = weight.matrix
        # Q_w maps the kernel complement bijectively onto w-perp, so the
        # feasible set is the p-ball inside that hyperplane
        return tau(w, (Q @ A).T, p).value

    if weight.kind == "factored":
        S, v = weight.s_factor, weight.anchor
        if p == 2:
            return _pencil_l2(weight.matrix, A, v)
        u = scipy.linalg.solve(S.T, v)
        B = S @ orthogonal_projector(v) @ A @ scipy.linalg.inv(S)
        return tau(u, B.T, p).value

    if weight.kind == "incidence":
        if p == 2:
            # ||C^T x||_2 = sqrt(2n) ||Pi x||_2 makes the two weights identical
            one = np.ones(n)
            P = agreement_projector(n)
            return tau(one, (P @ A).T, 2).value
        if p == INF and _is_row_stochastic(A):
            from .ergodicity import dobrushin
            return dobrushin(A).value
        if n <= ORACLE_DIMENSION_CAP:
            from .oracle import oracle_weighted_seminorm
            return oracle_weighted_seminorm(A, weight, p).value
        raise PreconditionError(
            f"incidence weight with p={p} has no closed form here and the "
            f"brute-force evaluator is capped at n <= {ORACLE_DIMENSION_CAP}")

    raise PreconditionError(f"unknown weight kind {weight.kind!r}")


@dataclass
class DeflationResult:
    """Minimum induced q-norm over rank-one deflations A - v c^T."""

    value: float
    c_star: np.ndarray
    q: object


def _deflation_value(v, A, c, q):
    return induced_pnorm(A - np.outer(v, c), q)


def _deflate_l2(v, A):
    c = A.T @ v / float(v @ v)
    return float(np.linalg.norm(A - np.outer(v, c), 2)), c


def _deflate_l1(v, A):
    # max-column-sum objective separates per column; each column is a
    # one-dimensional weighted-median problem with kinks at A_ik / v_i
    mask = np.abs(v) > 0.0
    vk = v[mask]
    c = np.zeros(A.shape[1])
    worst = 0.0
    for k in range(A.shape[1]):
        b = A[:, k]
        mus = b[mask] / vk
        vals = np.array([np.sum(np.abs(b - mu * v)) for mu in mus])
        best = int(np.argmin(vals))
        c[k] = mus[best]
        worst = max(worst, float(vals[best]))
    return worst, c


def _deflate_linf(v, A):
    # LP: minimize t subject to sum_j |A_ij - v_i c_j| <= t for every row i
    m, n = A.shape
    nv = n + m * n + 1
    obj = np.zeros(nv)
    obj[-1] = 1.0
    rows, rhs = [], []
    for i in range(m):
        for j in range(n):
            r = np.zeros(nv)
            r[j] = -v[i]
            r[n + i * n + j] = -1.0
            rows.append(r)
            rhs.append(-A[i, j])
            r = np.zeros(nv)
            r[j] = v[i]
            r[n + i * n + j] = -1.0
            rows.append(r)
            rhs.append(A[i, j])
    for i in range(m):
        r = np.zeros(nv)
        r[n + i * n:n + (i + 1) * n] = 1.0
        r[-1] = -1.0
        rows.append(r)
        rhs.append(0.0)
    bounds = [(None, None)] * n + [(0, None)] * (m * n) + [(0, None)]
    res = scipy.optimize.linprog(obj, A_ub=np.array(rows), b_ub=np.array(rhs),
                                 bounds=bounds, method="highs-ds")
    if res.status != 0:
        raise CrossCheckError(f"deflation LP failed: {res.message}")
    return float(res.fun), res.x[:n]


def deflated_norm(v, A, q):
    """Psi_q(v, A) = min_c ||A - v c^T||_q, exactly, with a minimizing c.

    For q = 2 the orthogonal-projection vector A^T v / ||v||^2 is the unique
    minimizer.  For q in {1, inf} the minimum is generally strictly below the
    value at that vector; it is found by weighted medians (q=1) or an LP
    (q=inf).  Ties are broken toward the projection vector when it is also
    optimal, which keeps degenerate cases canonical.
    """
    v = as_vector(v, "anchor")
    A = as_matrix(A)
    if A.shape[0] != len(v):
        raise PreconditionError(f"anchor length {len(v)} does not match {A.shape[0]} rows")
    if not np.any(v):
        raise PreconditionError("anchor must be nonzero")
    q = as_pnorm(q)
    if q == 2:
        value, c = _deflate_l2(v, A)
        return DeflationResult(value, c, 2)
    if q == 1:
        value, c = _deflate_l1(v, A)
    else:
        value, c = _deflate_linf(v, A)
    c_proj = A.T @ v / float(v @ v)
    if _deflation_value(v, A, c_proj, q) <= value + 1e-12:
        c = c_proj
        value = min(value, _deflation_value(v, A, c_proj, q))
    return DeflationResult(float(value), c, q)


def lmi_l2(A, P, feasibility_slack=1e-9, infeasibility_step=1e-6):
    """Smallest b with A^T P A <= b P, for symmetric PSD P with ker P = <v>,
    v an eigenvector of A for its dominant real eigenvalue.

    Solved as the top eigenvalue of the pencil (U^T A^T P A U, U^T P U) on an
    orthonormal basis U of v-perp; the result is certified feasible at
    b + 1e-9 and infeasible at b - 1e-6.
    """
    A = as_matrix(A)
    P = as_matrix(P, "weight P")
    n = A.shape[0]
    if A.shape != (n, n) or P.shape != (n, n):
        raise PreconditionError("A and P must be square of the same size")
    if np.max(np.abs(P - P.T)) > 1e-10:
        raise PreconditionError("P must be symmetric")
    evals, evecs = np.linalg.eigh(P)
    scale = max(evals[-1], 1.0)
    kernel_mask = evals <= 1e-10 * scale
    if int(kernel_mask.sum()) != 1:
        raise PreconditionError(
            f"P kernel must be one-dimensional, found {int(kernel_mask.sum())} null directions")
    if evals[0] < -1e-10 * scale:
        raise PreconditionError("P must be positive semidefinite")
    v = evecs[:, 0]
    lam = float(v @ A @ v) / float(v @ v)
    if np.linalg.norm(A @ v - lam * v) > KERNEL_INVARIANCE_TOL * max(1.0, np.linalg.norm(A)):
        raise PreconditionError("ker P must be spanned by an eigenvector of A")
    U = evecs[:, 1:]
    G1 = U.T @ A.T @ P @ A @ U
    G2 = U.T @ P @ U
    vals = scipy.linalg.eigh(G1, G2, eigvals_only=True)
    b = float(max(vals[-1], 0.0))

    gap = scipy.linalg.eigh(U.T @ ((b + feasibility_slack) * P - A.T @ P @ A) @ U,
                            eigvals_only=True)[0]
    if gap < -feasibility_slack * max(1.0, b) * 10:
        raise CrossCheckError(f"pencil value {b} is not feasible at slack {feasibility_slack}")
    lower = scipy.linalg.eigh(U.T @ ((b - infeasibility_step) * P - A.T @ P @ A) @ U,
                              eigvals_only=True)[0]
    if b > infeasibility_step and lower > 0:
        raise CrossCheckError(f"pencil value {b} is not minimal: {b - infeasibility_step} feasible")
    return b
