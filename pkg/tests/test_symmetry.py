import itertools
import math

import numpy as np
import pytest

from ddic.fixtures import circulant, erasure, make_example3
from ddic.prob import entropy
from ddic.symmetry import (GroupSizeError, PermGroup, cycle_notation, group_average, identity,
                           input_symmetry_group, is_transitive, lagrange_ok, perm_compose,
                           perm_inverse, perm_matrix, uniform_maximizes_output_entropy,
                           verify_group)

# cyclic shift matrices of the s = 3 additive channel
G0 = np.eye(3)
G1 = np.array([[0, 0, 1], [1, 0, 0], [0, 1, 0]], dtype=float)
G2 = np.array([[0, 1, 0], [0, 0, 1], [1, 0, 0]], dtype=float)
Z_CHANNEL = np.array([[1.0, 0.5], [0.0, 0.5]])


def as_matrices(g):
    return sorted(m.tolist() for m in g.matrices())


def test_perm_matrix_convention():
    perm = (1, 2, 0)
    g = perm_matrix(perm)
    np.testing.assert_array_equal(g, G1)
    t = np.arange(9.0).reshape(3, 3)
    # column i of T G is column perm[i] of T
    np.testing.assert_array_equal(t @ g, t[:, list(perm)])
    a, b = (1, 0, 2), (0, 2, 1)
    np.testing.assert_array_equal(perm_matrix(perm_compose(a, b)), perm_matrix(a) @ perm_matrix(b))
    assert perm_compose(perm, perm_inverse(perm)) == identity(3)


def test_cyclic_group_of_circulant():
    g = input_symmetry_group(circulant([0.5, 0.3, 0.2]))
    assert len(g) == 3
    assert as_matrices(g) == sorted(m.tolist() for m in (G0, G1, G2))
    assert is_transitive(g)


def test_identity_matrix_has_full_group():
    g = input_symmetry_group(np.eye(3))
    assert len(g) == 6
    assert set(g.members) == set(itertools.permutations(range(3)))


def test_erasure_group():
    g = input_symmetry_group(erasure(0.3))
    assert as_matrices(g) == sorted([np.eye(2).tolist(), [[0.0, 1.0], [1.0, 0.0]]])
    assert is_transitive(g)


def test_example3_group_is_s3():
    d = make_example3(0.5, 0.3, 0.2, 0.25, 0.15, 0.10)
    g = input_symmetry_group(d.t_prime)
    assert len(g) == 6 and is_transitive(g)


def test_duplicate_rows_need_matching():
    # rows 0 and 1 are equal; naive sorting still works here but the matching
    # must also pair the duplicates one-to-one
    t = np.array([[0.25, 0.25, 0.25],
                  [0.25, 0.25, 0.25],
                  [0.5, 0.5, 0.5]])
    g = input_symmetry_group(t)
    assert len(g) == 6


def test_degenerate_noise_enlarges_group():
    g = input_symmetry_group(circulant([1 / 3, 1 / 3, 1 / 3]))
    assert len(g) == 6


def test_z_channel_trivial_group():
    g = input_symmetry_group(Z_CHANNEL)
    assert g.members == (identity(2),)
    assert not is_transitive(g)


def test_is_transitive_cases():
    assert not is_transitive(PermGroup([identity(2)], 2))
    assert is_transitive(PermGroup(itertools.permutations(range(4)), 4))
    assert is_transitive(PermGroup([(0, 1, 2), (1, 2, 0), (2, 0, 1)], 3))


def test_verify_group():
    assert verify_group([identity(3)])
    assert not verify_group([identity(3), (1, 2, 0)])
    assert verify_group([(0, 1, 2), (1, 2, 0), (2, 0, 1)])
    assert not verify_group([(1, 0, 2)])
    with pytest.raises(ValueError):
        verify_group([(0, 1), (0, 1, 2)])
    # G1 G2 = G0
    np.testing.assert_array_equal(G1 @ G2, G0)


def test_size_guard():
    with pytest.raises(GroupSizeError):
        input_symmetry_group(np.eye(9))


def test_uniform_maximizes_for_symmetric():
    assert uniform_maximizes_output_entropy(circulant([0.5, 0.3, 0.2]), 1000)
    assert uniform_maximizes_output_entropy(erasure(0.3), 1000)
    d = make_example3(0.5, 0.3, 0.2, 0.25, 0.15, 0.10)
    assert uniform_maximizes_output_entropy(d.t_prime, 1000)


def test_z_channel_falsified():
    check = uniform_maximizes_output_entropy(Z_CHANNEL, 1000)
    assert not check
    # independent 1-D sweep of H(T p) along the input simplex
    ts = np.linspace(0, 1, 100001)
    hs = [entropy(Z_CHANNEL @ np.array([1 - t, t])) for t in ts]
    best = ts[int(np.argmax(hs))]
    assert abs(best - 0.5) > 0.4
    # all mass on the input whose column is (0.5, 0.5)
    np.testing.assert_allclose(check.witness, [1 - best, best], atol=1e-3)
    assert check.witness_entropy > check.max_entropy_uniform + 0.1
    assert check.witness_entropy == pytest.approx(max(hs), abs=1e-9)


def test_cycle_notation():
    assert cycle_notation((0, 1, 2)) == "()"
    assert cycle_notation((1, 2, 0)) == "(0 1 2)"
    assert cycle_notation((1, 0, 3, 2)) == "(0 1)(2 3)"


def _random_symmetric_channels(rng, count):
    out = []
    for _ in range(count):
        n = int(rng.integers(2, 6))
        out.append(circulant(rng.dirichlet(np.ones(n))))
        k = int(rng.integers(1, 4))
        out.append(np.vstack([circulant(rng.dirichlet(np.ones(n))) for _ in range(k)]) / k)
    out.append(erasure(float(rng.random())))
    return out


def test_member_witness_row_permutation(rng):
    for t in _random_symmetric_channels(rng, 20) + [np.eye(4), Z_CHANNEL]:
        g = input_symmetry_group(t)
        for m in g:
            pi = perm_matrix(g.row_perms[m])
            assert np.max(np.abs(t @ perm_matrix(m) - pi @ t)) <= 1e-9
        assert verify_group(g.members)
        assert lagrange_ok(g)
        assert math.factorial(g.degree) % len(g) == 0


def test_deterministic_order(rng):
    for t in _random_symmetric_channels(rng, 5):
        assert input_symmetry_group(t).members == input_symmetry_group(t.copy()).members


def test_group_average_is_uniform_when_transitive(rng):
    for t in _random_symmetric_channels(rng, 10):
        g = input_symmetry_group(t)
        assert is_transitive(g)
        for _ in range(20):
            p = rng.dirichlet(np.ones(g.degree))
            np.testing.assert_allclose(group_average(g, p), np.full(g.degree, 1 / g.degree),
                                       atol=1e-12)
