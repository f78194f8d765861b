import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ddic.fixtures import DadicParams, bsc, erasure, make_dadic
from ddic.prob import (Ddic, DimensionError, StochasticityError, apply_channel, as_channel,
                       as_prob, compose, cond_entropy_of_column, entropy)

from conftest import random_channel


def test_entropy_values():
    assert entropy([0.5, 0.5]) == 1.0
    assert entropy([1.0, 0.0, 0.0]) == 0.0
    direct = -(0.1 * math.log2(0.1) + 0.9 * math.log2(0.9))
    assert entropy([0.1, 0.9]) == pytest.approx(direct, abs=1e-15)
    assert entropy([0.1, 0.9]) == pytest.approx(0.468996, abs=1e-6)


def test_apply_channel():
    p = np.array([0.2, 0.3, 0.5])
    np.testing.assert_array_equal(apply_channel(np.eye(3), p), p)
    np.testing.assert_allclose(apply_channel(bsc(0.1), [1.0, 0.0]), [0.9, 0.1])
    np.testing.assert_allclose(apply_channel(bsc(0.1), [0.5, 0.5]), [0.5, 0.5], atol=1e-15)
    with pytest.raises(DimensionError):
        apply_channel(bsc(0.1), [1.0, 0.0, 0.0])


def test_compose():
    t = random_channel(np.random.default_rng(1), 3, 4)
    np.testing.assert_allclose(compose(np.eye(3), t), t)
    np.testing.assert_allclose(compose(bsc(0.2), bsc(0.1)), bsc(0.1 * 0.8 + 0.2 * 0.9), atol=1e-15)
    np.testing.assert_allclose(compose(bsc(0.2), bsc(0.1)), bsc(0.26), atol=1e-15)
    with pytest.raises(DimensionError):
        compose(np.eye(2), np.eye(3))


def test_compose_erasure_reproduces_y2_marginal():
    front = make_dadic(DadicParams(2, (0.9, 0.1), (1.0, 0.0)))
    t0 = front.t_family[0]
    # p(y2 | x1, x2=0) written out by hand: Y1 = X1 + V1, then erasure
    expected = np.array([[0.9 * 0.7, 0.1 * 0.7],
                         [0.3, 0.3],
                         [0.1 * 0.7, 0.9 * 0.7]])
    np.testing.assert_allclose(compose(erasure(0.3), t0), expected, atol=1e-15)


def test_cond_entropy_of_column():
    assert cond_entropy_of_column(np.eye(3), 1) == 0.0
    d = make_dadic(DadicParams(3, (0.7, 0.2, 0.1), (0.5, 0.3, 0.2)))
    direct = -sum(v * math.log2(v) for v in (0.7, 0.2, 0.1))
    for j in range(3):
        assert cond_entropy_of_column(d.t_family[0], j) == pytest.approx(direct, abs=1e-14)
    assert direct == pytest.approx(1.15678, abs=1e-5)
    assert cond_entropy_of_column(np.full((4, 4), 0.25), 2) == 2.0
    with pytest.raises(IndexError):
        cond_entropy_of_column(np.eye(3), 3)


def test_validation():
    with pytest.raises(StochasticityError):
        as_prob([0.5, 0.6])
    with pytest.raises(StochasticityError):
        as_prob([1.1, -0.1])
    with pytest.raises(StochasticityError):
        as_channel([[0.5, 0.5], [0.4, 0.5]])
    # tiny negatives are clipped, small drift renormalised
    p = as_prob([1.0 + 1e-10, -1e-13])
    assert p[1] == 0.0 and abs(p.sum() - 1.0) < 1e-15
    # values already summing to 1 within 1e-12 are kept bit for bit
    q = as_prob([0.7, 0.2, 0.1])
    assert q.tolist() == [0.7, 0.2, 0.1]
    assert not q.flags.writeable


def test_ddic_shapes():
    with pytest.raises(DimensionError):
        Ddic(np.stack([np.eye(2)]), np.eye(3))
    d = Ddic(np.stack([np.eye(2), bsc(0.1)]), erasure(0.2))
    assert (d.x1_size, d.x2_size, d.y1_size, d.y2_size) == (2, 2, 2, 3)
    np.testing.assert_allclose(d.y2_family[1], erasure(0.2) @ bsc(0.1))
    np.testing.assert_array_equal(d.column(1, 1), bsc(0.1)[:, 1])


def test_apply_channel_preserves_simplex(rng):
    for _ in range(1000):
        n_out, n_in = rng.integers(1, 7, size=2)
        t = random_channel(rng, n_out, n_in)
        p = rng.dirichlet(np.ones(n_in))
        out = apply_channel(t, p)
        assert abs(out.sum() - 1.0) <= 1e-9 and np.all(out >= 0)


def test_compose_associative(rng):
    for _ in range(200):
        a, b, c, d = rng.integers(1, 6, size=4)
        t1, t2, t3 = random_channel(rng, b, a), random_channel(rng, c, b), random_channel(rng, d, c)
        lhs = compose(t3, compose(t2, t1))
        rhs = compose(compose(t3, t2), t1)
        assert np.max(np.abs(lhs - rhs)) <= 1e-12
        assert np.max(np.abs(lhs.sum(axis=0) - 1)) <= 1e-9


simplex_points = st.lists(st.floats(0.0, 1.0), min_size=2, max_size=8).filter(
    lambda v: sum(v) > 1e-3).map(lambda v: np.array(v) / sum(v))


@given(simplex_points, st.randoms(use_true_random=False))
def test_entropy_permutation_invariant(p, r):
    perm = list(range(len(p)))
    r.shuffle(perm)
    assert entropy(p[perm]) == entropy(p)
    assert -1e-15 <= entropy(p) <= math.log2(len(p)) + 1e-12


@settings(max_examples=300)
@given(st.integers(2, 6), st.floats(0.0, 1.0), st.integers(0, 2 ** 32 - 1))
def test_entropy_concave(n, lam, seed):
    g = np.random.default_rng(seed)
    p, q = g.dirichlet(np.ones(n)), g.dirichlet(np.ones(n))
    mix = entropy(lam * p + (1 - lam) * q)
    assert mix >= lam * entropy(p) + (1 - lam) * entropy(q) - 1e-12
