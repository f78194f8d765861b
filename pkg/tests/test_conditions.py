import json

import numpy as np
import pytest

from ddic.conditions import (check_all, check_condition1, check_condition2, check_condition3,
                             check_condition4, check_condition5, coverage_test_points, lp_member)
from ddic.fixtures import COUNTEREXAMPLES, DadicParams, make_counterexample, make_dadic
from ddic.geometry import Polytope
from ddic.prob import Ddic, entropy
from ddic.symmetry import perm_matrix

CYCLIC = [(0, 1, 2), (1, 2, 0), (2, 0, 1)]


def test_example_channels_pass(example_channels):
    for name, d in example_channels.items():
        rep = check_all(d)
        assert rep.all_passed, (name, rep.failed())
        assert rep.failed() == []
        assert rep.x2_tilde is not None
        assert rep.coverage.reconstruction_error(d) <= 1e-8


@pytest.mark.parametrize("kind,failed", [
    ("non_symmetric_tprime", [1]),
    ("broken_cond3", [2, 3, 4]),
    ("broken_cond4", [4]),
    ("broken_cond5", [5]),
])
def test_counterexamples(kind, failed):
    rep = check_all(make_counterexample(kind))
    assert rep.failed() == failed
    assert not rep.all_passed
    assert set(COUNTEREXAMPLES) >= {kind}


def test_condition1_skips_dependent_checks():
    rep = check_all(make_counterexample("non_symmetric_tprime"))
    assert rep.cond2.passed is None and rep.cond5.passed is None
    assert rep.cond3.passed and rep.cond4.passed


def test_condition2_relations(dadic_s3):
    ok, g = check_condition1(dadic_s3)
    ok2, rel = check_condition2(dadic_s3, g)
    assert ok and ok2
    for (a, b), m in rel.items():
        np.testing.assert_allclose(dadic_s3.t_family[a], perm_matrix(m) @ dadic_s3.t_family[b],
                                   atol=1e-12)


def test_condition2_column_shuffle_fails(dadic_s3):
    # a column shuffle of T0 that is no row permutation
    fam = np.array(dadic_s3.t_family)
    fam[1] = fam[0][:, [1, 0, 2]]
    d = Ddic(fam, dadic_s3.t_prime)
    _, g = check_condition1(d)
    ok, info = check_condition2(d, g)
    assert not ok
    assert 1 in info["missing_pair"]


def test_condition3(dadic_s3, example3):
    ok, eta = check_condition3(dadic_s3)
    assert ok and eta == pytest.approx(1.15678, abs=1e-5)
    ok, eta = check_condition3(example3)
    assert ok and eta == pytest.approx(entropy([0.5, 0.3, 0.2]), abs=1e-12)
    ok, eta = check_condition3(make_counterexample("broken_cond3"))
    assert not ok and eta is None


def test_condition4(example_channels):
    for d in example_channels.values():
        assert check_condition4(d)
    assert not check_condition4(make_counterexample("broken_cond4"))


def test_condition5_witness_is_real():
    d = make_counterexample("broken_cond5")
    ok, g = check_condition1(d)
    cov = check_condition5(d, g)
    assert ok and not cov.passed and cov.x2_tilde is None
    np.testing.assert_allclose(cov.uncovered, [0.4, 0.45, 0.15], atol=1e-12)
    # every G-image of every candidate base misses the witness, checked by LP
    for xt in range(d.x2_size):
        for m in g:
            inside, _ = lp_member(cov.uncovered, d.t_family[xt].T @ perm_matrix(m).T)
            assert not inside
    # and the witness does lie in the hull of all columns
    cols = d.t_family.transpose(0, 2, 1).reshape(-1, 3)
    assert lp_member(cov.uncovered, cols)[0]


def test_condition5_witness_independent_of_resolution():
    d = make_counterexample("broken_cond5")
    _, g = check_condition1(d)
    wits = [check_condition5(d, g, resolution=r).uncovered for r in (5, 20, 80)]
    for w in wits[1:]:
        np.testing.assert_array_equal(w, wits[0])


def test_condition5_member_restriction(example3):
    _, g = check_condition1(example3)
    cov = check_condition5(example3, g, members=CYCLIC)
    assert cov.passed and cov.x2_tilde == 0
    assert sorted(cov.used_members()) == sorted(CYCLIC)
    assert cov.reconstruction_error(example3) <= 1e-8
    # the identity alone cannot cover the hull of all columns
    assert not check_condition5(example3, g, members=[(0, 1, 2)]).passed


def test_condition5_resolution_guard(dadic_s3):
    _, g = check_condition1(dadic_s3)
    with pytest.raises(ValueError):
        check_condition5(dadic_s3, g, resolution=1)


def test_coverage_points_lie_in_hull(example3):
    pts, res, dim = coverage_test_points(example3, 10)
    assert res == 10 and dim == 2
    cols = example3.t_family.transpose(0, 2, 1).reshape(-1, 3)
    for p in pts[::7]:
        assert lp_member(p, cols)[0]


def test_report_serialises(example3):
    rep = check_all(example3)
    out = json.loads(json.dumps(rep.to_dict()))
    assert out["all_passed"] is True and out["failed"] == []


def _random_cond12_channel(rng):
    s = int(rng.integers(2, 5))
    return make_dadic(DadicParams(s, tuple(rng.dirichlet(np.ones(s))), tuple(rng.dirichlet(np.ones(s)))))


def test_condition2_implies_equal_output_entropy(rng):
    for _ in range(30):
        d = _random_cond12_channel(rng)
        ok1, g = check_condition1(d)
        ok2, _ = check_condition2(d, g)
        assert ok1 and ok2
        p = rng.dirichlet(np.ones(d.x1_size))
        h1 = [entropy(d.t_family[x2] @ p) for x2 in range(d.x2_size)]
        h2 = [entropy(d.y2_family[x2] @ p) for x2 in range(d.x2_size)]
        assert max(h1) - min(h1) <= 1e-12
        assert max(h2) - min(h2) <= 1e-12


def test_condition4_uniform_inputs_give_uniform_output(rng, example_channels):
    chans = list(example_channels.values()) + [_random_cond12_channel(rng) for _ in range(10)]
    for d in chans:
        assert check_condition4(d)
        y1 = d.joint_channel() @ np.full(d.x1_size * d.x2_size, 1 / (d.x1_size * d.x2_size))
        np.testing.assert_allclose(y1, 1 / d.y1_size, atol=1e-12)


def test_polytope_locate_agrees_with_lp(rng):
    for dim in (2, 3, 4):
        verts = rng.dirichlet(np.ones(dim + 1), size=dim + 3)
        poly = Polytope(verts)
        pts = rng.dirichlet(np.ones(dim + 1), size=200)
        inside, w = poly.locate(pts)
        for p, ins, wi in zip(pts, inside, w):
            lp_in, _ = lp_member(p, verts)
            assert ins == lp_in
            if ins:
                np.testing.assert_allclose(wi @ verts, p, atol=1e-9)
                assert abs(wi.sum() - 1) <= 1e-12 and wi.min() >= 0
