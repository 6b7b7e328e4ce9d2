"""Ergodicity coefficients tau_p(v, A) = max { ||A^T x||_p : ||x||_p <= 1, x perp v }.

Exact closed forms for p in {1, 2, inf}:

  p = 1    the feasible polytope (cross-polytope cut by the hyperplane) has
           vertices supported on two coordinates, giving
           tau_1 = max_{i<j} ||v_j A_i - v_i A_j||_1 / (|v_i| + |v_j|)
           over rows A_i of A.
  p = inf  column-wise LP: tau_inf = max_k min_mu ||A_{.k} - mu v||_1, the
           minimum over the finitely many kink multipliers mu = A_ik / v_i.
  p = 2    restriction to a subspace is exact in the Euclidean norm:
           tau_2 = ||P_v A||_2, the largest singular value.

The widely quoted projector formula ||P_v A||_q (q conjugate to p) is only an
upper bound for p != 2; the `verify` suites measure its gap against these
exact values.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import CrossCheckError, PreconditionError
from .linalg import (INF, StochasticMatrix, as_matrix, as_pnorm, as_vector,
                     dominant_pair, orthogonal_projector)

DOBRUSHIN_CROSS_TOL = 1e-12


@dataclass
class ErgodicityResult:
    """A coefficient value plus the route that produced it and the anchor used."""

    value: float
    p: object
    route: str
    anchor: np.ndarray


def _tau_l1(v, A):
    m = len(v)
    absv = np.abs(v)
    rownorm1 = np.sum(np.abs(A), axis=1)
    best = 0.0
    for i in range(m):
        for j in range(i + 1, m):
            den = absv[i] + absv[j]
            if den == 0.0:
                # both coordinates unconstrained: the slice contains +-e_i, +-e_j
                best = max(best, rownorm1[i], rownorm1[j])
                continue
            val = np.sum(np.abs(v[j] * A[i] - v[i] * A[j])) / den
            if val > best:
                best = val
    return float(best)


def _tau_linf(v, A):
    mask = np.abs(v) > 0.0
    if not mask.any():
        raise PreconditionError("anchor must be nonzero")
    vk = v[mask]
    best = 0.0
    for k in range(A.shape[1]):
        b = A[:, k]
        mus = b[mask] / vk
        # convex piecewise-linear in mu; the minimum sits at a kink
        val = min(float(np.sum(np.abs(b - mu * v))) for mu in mus)
        if val > best:
            best = val
    return float(best)


def _tau_l2(v, A):
    P = orthogonal_projector(v)
    return float(np.linalg.norm(P @ A, 2))


def tau(v, A, p):
    """Exact ergodicity coefficient tau_p(v, A) for p in {1, 2, inf}.

    A may be rectangular (m x n) with v of length m.
    """
    v = as_vector(v, "anchor")
    A = as_matrix(A)
    if A.shape[0] != len(v):
        raise PreconditionError(f"anchor length {len(v)} does not match {A.shape[0]} rows")
    if not np.any(v):
        raise PreconditionError("anchor must be nonzero")
    p = as_pnorm(p)
    if p == 1:
        return ErgodicityResult(_tau_l1(v, A), 1, "pairwise-form", v)
    if p == INF:
        return ErgodicityResult(_tau_linf(v, A), INF, "column-form", v)
    return ErgodicityResult(_tau_l2(v, A), 2, "projector-form", v)


def dobrushin(A):
    """tau_1 of a row-stochastic matrix through both classical formulas.

    Computes half the maximum pairwise l1 row distance and the complementary
    overlap form 1 - min_{i,j} sum_k min(A_ik, A_jk); disagreement beyond
    1e-12 signals corrupted input rather than a value to average.
    """
    if not isinstance(A, StochasticMatrix):
        A = StochasticMatrix(A)
    M = A.matrix
    n = A.n
    halfsum = 0.0
    minsum = 1.0
    for i in range(n):
        for j in range(i + 1, n):
            halfsum = max(halfsum, 0.5 * float(np.sum(np.abs(M[i] - M[j]))))
            minsum = min(minsum, float(np.sum(np.minimum(M[i], M[j]))))
    value_half = halfsum
    value_min = 1.0 - minsum if n > 1 else 0.0
    if abs(value_half - value_min) > DOBRUSHIN_CROSS_TOL:
        raise CrossCheckError(
            f"dobrushin formulas disagree: {value_half!r} vs {value_min!r}")
    return ErgodicityResult(value_half, 1, "dobrushin-halfsum", np.ones(n))


def tau_oblique(A, p):
    """tau_p(w, A^T) for a primitive stochastic matrix, w its stationary distribution.

    This is the coefficient governing the distribution dynamics
    pi(k+1) = A^T pi(k); computed exactly by the tau engine on (w, A^T).
    """
    if not isinstance(A, StochasticMatrix):
        A = StochasticMatrix(A)
    if not A.primitive:
        raise PreconditionError("oblique coefficient needs a primitive matrix")
    _, w = dominant_pair(A)
    result = tau(w, A.matrix.T, p)
    return ErgodicityResult(result.value, result.p, "oblique-form", w)
