import numpy as np
import pytest

from ergo import (INF, CrossCheckError, PreconditionError, StochasticMatrix,
                  dobrushin, dominant_pair, induced_pnorm, oracle_tau, tau,
                  tau_oblique)

rng = np.random.default_rng(7)

A22 = np.array([[0.5, 0.5], [0.25, 0.75]])


def random_stochastic(n):
    M = rng.uniform(0.0, 1.0, (n, n)) + 0.05
    return StochasticMatrix(M / M.sum(axis=1, keepdims=True))


def test_tau_frozen_examples():
    consensus = 0.5 * np.ones((2, 2))
    for p in (1, 2, INF):
        assert tau(np.ones(2), consensus, p).value < 1e-14
    assert abs(tau(np.ones(2), A22, 1).value - 0.25) < 1e-14
    assert abs(tau(np.array([1.0, 0.0]), np.eye(2), INF).value - 1.0) < 1e-14


def test_tau_rejects_bad_input():
    with pytest.raises(PreconditionError):
        tau(np.zeros(2), A22, 1)
    with pytest.raises(PreconditionError):
        tau(np.ones(3), A22, 1)
    with pytest.raises(PreconditionError):
        tau(np.ones(2), A22, 3)


def test_tau_matches_oracle_random_anchor():
    for _ in range(200):
        n = int(rng.integers(2, 7))
        A = rng.uniform(-1.0, 1.0, (n, n))
        v = rng.standard_normal(n)
        assert abs(tau(v, A, 1).value - oracle_tau(v, A, 1).value) < 1e-9
        assert abs(tau(v, A, INF).value - oracle_tau(v, A, INF).value) < 1e-9
        assert abs(tau(v, A, 2).value - oracle_tau(v, A, 2).value) < 1e-7


def test_tau_rectangular():
    for _ in range(20):
        m, n = int(rng.integers(2, 6)), int(rng.integers(2, 6))
        A = rng.uniform(-1.0, 1.0, (m, n))
        v = rng.standard_normal(m)
        for p in (1, INF):
            assert abs(tau(v, A, p).value - oracle_tau(v, A, p).value) < 1e-9


def test_tau_scale_covariance():
    for _ in range(30):
        n = int(rng.integers(2, 6))
        A = rng.uniform(-1.0, 1.0, (n, n))
        v = rng.standard_normal(n)
        alpha = float(rng.uniform(-3.0, 3.0))
        for p in (1, 2, INF):
            assert abs(tau(v, alpha * A, p).value - abs(alpha) * tau(v, A, p).value) < 1e-12


def test_tau_deflation_inequality():
    for _ in range(25):
        n = int(rng.integers(2, 6))
        A = rng.uniform(-1.0, 1.0, (n, n))
        v = rng.standard_normal(n)
        for p in (1, 2, INF):
            t = tau(v, A, p).value
            for _ in range(4):
                c = rng.standard_normal(n)
                assert t <= induced_pnorm((A - np.outer(v, c)).T, p) + 1e-12


def test_dobrushin_frozen():
    assert abs(dobrushin(StochasticMatrix(np.eye(3))).value - 1.0) < 1e-14
    n = 4
    assert dobrushin(StochasticMatrix(np.full((n, n), 1.0 / n))).value < 1e-14
    assert abs(dobrushin(A22).value - 0.25) < 1e-14


def test_dobrushin_matches_tau1():
    for _ in range(40):
        S = random_stochastic(int(rng.integers(2, 7)))
        assert abs(dobrushin(S).value - tau(np.ones(S.n), S.matrix, 1).value) < 1e-10


def test_tau1_subunit_for_stochastic():
    for _ in range(30):
        S = random_stochastic(int(rng.integers(2, 7)))
        assert tau(np.ones(S.n), S.matrix, 1).value <= 1.0 + 1e-12


def test_tau_submultiplicative_over_products():
    for _ in range(30):
        n = int(rng.integers(2, 6))
        A, B = random_stochastic(n), random_stochastic(n)
        one = np.ones(n)
        for p in (1, 2, INF):
            prod = tau(one, A.matrix @ B.matrix, p).value
            assert prod <= tau(one, A.matrix, p).value * tau(one, B.matrix, p).value + 1e-10


def test_tau_oblique_frozen():
    pi = np.array([0.3, 0.7])
    rank_one = StochasticMatrix(np.outer(np.ones(2), pi))
    for p in (1, 2, INF):
        assert tau_oblique(rank_one, p).value < 1e-12
    sym = StochasticMatrix([[0.75, 0.25], [0.25, 0.75]])
    assert abs(tau_oblique(sym, INF).value - 0.5) < 1e-12
    assert abs(tau_oblique(sym, 2).value - 0.5) < 1e-12
    with pytest.raises(PreconditionError):
        tau_oblique(StochasticMatrix(np.eye(2)), 1)


def test_tau_oblique_matches_oracle():
    for _ in range(25):
        S = random_stochastic(int(rng.integers(2, 6)))
        _, w = dominant_pair(S)
        for p in (1, INF):
            assert abs(tau_oblique(S, p).value - oracle_tau(w, S.matrix.T, p).value) < 1e-9


def test_dobrushin_cross_formula_guard():
    # the two formulas agree for genuine stochastic input; corrupting the
    # cached matrix after validation trips the cross-check
    S = random_stochastic(3)
    S.matrix = S.matrix + rng.uniform(0.2, 0.4, (3, 3))
    with pytest.raises(CrossCheckError):
        dobrushin(S)
