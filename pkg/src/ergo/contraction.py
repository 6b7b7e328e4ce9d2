"""Semicontraction certificates for averaging systems x(k+1) = A(k) x(k)
and Markov distribution dynamics pi(k+1) = A^T pi(k).

A certificate's rate is the exact induced seminorm of the step operator in
the declared weight, so the trajectory bound

    seminorm(x(k)) <= rate^k * seminorm(x(0))

is a theorem about the reported numbers, not an estimate.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import PreconditionError
from .linalg import StochasticMatrix, as_vector, dominant_pair, orthogonal_projector
from .ergodicity import tau
from .seminorm import SeminormWeight, induced_seminorm, vector_seminorm

BOUND_SLACK = 1e-10


@dataclass
class Certificate:
    rate: float
    p: object
    weight: SeminormWeight
    per_step: list
    contracting: bool
    theorem_route: str


def as_sequence(matrices):
    """Validate a nonempty uniform-dimension list of stochastic matrices."""
    if not matrices:
        raise PreconditionError("matrix sequence is empty")
    seq = [m if isinstance(m, StochasticMatrix) else StochasticMatrix(m) for m in matrices]
    n = seq[0].n
    if any(m.n != n for m in seq):
        raise PreconditionError("sequence mixes matrix dimensions")
    return seq


def certify_averaging(matrices, p):
    """Contraction certificate in the agreement-weighted l_p seminorm.

    per_step[k] is the exact seminorm of A(k) restricted to the disagreement
    subspace; the max is a sup over the finite family.
    """
    seq = as_sequence(matrices)
    n = seq[0].n
    weight = SeminormWeight.agreement(n)
    per_step = [induced_seminorm(m.matrix, weight, p) for m in seq]
    rate = max(per_step)
    return Certificate(
        rate=float(rate),
        p=p,
        weight=weight,
        per_step=[float(s) for s in per_step],
        contracting=bool(rate < 1.0),
        theorem_route="agreement-seminorm submultiplicativity",
    )


def simulate_and_check(matrices, x0, p):
    """Iterate the averaging system and verify the certificate bound on the way."""
    seq = as_sequence(matrices)
    x = as_vector(x0, "initial state")
    if len(x) != seq[0].n:
        raise PreconditionError(f"initial state length {len(x)} does not match n={seq[0].n}")
    cert = certify_averaging(seq, p)
    s0 = vector_seminorm(x, cert.weight, p)
    seminorms = [s0]
    ok = True
    for k, m in enumerate(seq, start=1):
        x = m.matrix @ x
        s = vector_seminorm(x, cert.weight, p)
        seminorms.append(s)
        if s > cert.rate ** k * s0 + BOUND_SLACK:
            ok = False
    return {
        "trajectory_seminorms": [float(s) for s in seminorms],
        "bound_satisfied": ok,
        "certificate": cert,
    }


def certify_markov(A, p):
    """Contraction certificate for pi(k+1) = A^T pi(k) in the P_w-weighted
    l_p seminorm, w the stationary distribution.

    The rate is the exact seminorm of A^T on the subspace orthogonal to w,
    computed as tau_p(w, A P_w)."""
    if not isinstance(A, StochasticMatrix):
        A = StochasticMatrix(A)
    if not A.primitive:
        raise PreconditionError("markov certificate needs a primitive matrix")
    _, w = dominant_pair(A)
    weight = SeminormWeight.orthogonal(w)
    P = orthogonal_projector(w)
    rate = tau(w, A.matrix @ P, p).value
    return Certificate(
        rate=float(rate),
        p=p,
        weight=weight,
        per_step=[float(rate)],
        contracting=bool(rate < 1.0),
        theorem_route="stationary-projector seminorm of the distribution update",
    )


def simulate_markov_and_check(A, pi0, p):
    """Iterate the distribution dynamics and verify the Markov certificate bound."""
    if not isinstance(A, StochasticMatrix):
        A = StochasticMatrix(A)
    cert = certify_markov(A, p)
    pi = as_vector(pi0, "initial distribution")
    if len(pi) != A.n:
        raise PreconditionError(f"initial distribution length {len(pi)} does not match n={A.n}")
    s0 = vector_seminorm(pi, cert.weight, p)
    seminorms = [s0]
    ok = True
    for k in range(1, 2 * A.n + 10):
        pi = A.matrix.T @ pi
        s = vector_seminorm(pi, cert.weight, p)
        seminorms.append(s)
        if s > cert.rate ** k * s0 + BOUND_SLACK:
            ok = False
    return {
        "trajectory_seminorms": [float(s) for s in seminorms],
        "bound_satisfied": ok,
        "certificate": cert,
    }
