"""Checks of the five structural conditions under which the capacity region
has the single-letter form computed in :mod:`ddic.capacity`.

1. the degrading channel T' is input symmetric (transitive symmetry group G);
2. any two family members differ by a row permutation from G;
3. every column of every family member has the same entropy eta;
4. for every (x1, y1), sum_x2 p(y1|x1,x2) = |X2| / |Y1|;
5. some x2 has G-images of conv{p(.|x1,x2)} covering the hull of all columns.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .feasibility import convex_weights
from .geometry import Polytope
from .prob import Ddic, entropies
from .symmetry import (PermGroup, cycle_notation, input_symmetry_group, is_transitive,
                       perm_matrix)

TOL = 1e-9
WEIGHT_TOL = 1e-8


@dataclass
class CheckResult:
    """Outcome of one condition; ``passed is None`` marks a skipped check."""

    passed: bool | None
    witness: dict = field(default_factory=dict)

    def to_dict(self):
        return {"passed": self.passed, "witness": _jsonable(self.witness)}


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating,)):
        return float(obj)
    return obj


def check_condition1(d: Ddic):
    g = input_symmetry_group(d.t_prime)
    return is_transitive(g), g


def check_condition2(d: Ddic, g: PermGroup, tol: float = TOL):
    """For each ordered pair ``(x2', x2'')`` find ``G`` with ``T[x2'] = G T[x2'']``."""
    mats = {m: perm_matrix(m) for m in g}
    found = {}
    for a, b in itertools.product(range(d.x2_size), repeat=2):
        for m in g:
            if np.max(np.abs(d.t_family[a] - mats[m] @ d.t_family[b])) <= tol:
                found[(a, b)] = m
                break
        else:
            return False, {"missing_pair": (a, b), "relations": found}
    return True, found


def check_condition3(d: Ddic, tol: float = TOL):
    """All column entropies equal; returns ``(passed, eta)`` with ``eta = None`` on failure."""
    h = entropies(d.t_family.transpose(0, 2, 1))  # [x2, x1]
    if np.max(h) - np.min(h) <= tol:
        return True, float(h.mean())
    return False, None


def column_entropies(d: Ddic) -> np.ndarray:
    return entropies(d.t_family.transpose(0, 2, 1))


def check_condition4(d: Ddic, tol: float = TOL) -> bool:
    sums = d.t_family.sum(axis=0)
    return bool(np.max(np.abs(sums - d.x2_size / d.y1_size)) <= tol)


def default_resolution(dim: int) -> int:
    if dim <= 2:
        return 200
    if dim == 3:
        return 40
    return 12


@dataclass
class Coverage:
    """Result of the condition-5 sweep for one group and family."""

    passed: bool
    x2_tilde: int | None
    resolution: int
    affine_dim: int
    points: np.ndarray
    assignment: np.ndarray  # index into ``members`` per test point, -1 if uncovered
    weights: np.ndarray     # convex weights over the x1 columns of T[x2_tilde]
    members: tuple
    uncovered: np.ndarray | None = None
    tried: dict = field(default_factory=dict)

    def used_members(self) -> list:
        return [self.members[i] for i in sorted(set(self.assignment.tolist())) if i >= 0]

    def reconstruction_error(self, d: Ddic) -> float:
        base = d.t_family[self.x2_tilde]
        mats = np.stack([perm_matrix(m) for m in self.members])
        rebuilt = np.einsum("nij,jk,nk->ni", mats[self.assignment], base, self.weights)
        return float(np.max(np.abs(rebuilt - self.points)))

    def summary(self) -> dict:
        out = {"resolution": self.resolution, "affine_dim": self.affine_dim,
               "test_points": int(len(self.points)), "x2_tilde": self.x2_tilde,
               "tried": self.tried}
        if self.passed:
            used = self.used_members()
            out["members_used"] = [cycle_notation(m) for m in used]
            out["points_per_member"] = {
                cycle_notation(self.members[i]): int(np.sum(self.assignment == i))
                for i in sorted(set(self.assignment.tolist()))}
        elif self.uncovered is not None:
            out["uncovered_point"] = self.uncovered.tolist()
        return out


def coverage_test_points(d: Ddic, resolution: int | None = None):
    """Deterministic test set over the hull of every column p(.|x1, x2).

    Hull vertices, all pairwise and triple-wise midpoints of those, then a
    barycentric grid over a triangulation of the hull.
    """
    cols = d.t_family.transpose(0, 2, 1).reshape(-1, d.y1_size)
    hull = Polytope(cols)
    if resolution is None:
        resolution = default_resolution(hull.dim)
    if resolution < 2:
        raise ValueError("coverage resolution must be at least 2")
    verts = hull.vertices[hull.hull_vertices()]
    parts = [verts]
    if len(verts) >= 2:
        pairs = np.array(list(itertools.combinations(range(len(verts)), 2)))
        parts.append(verts[pairs].mean(axis=1))
    if len(verts) >= 3:
        triples = np.array(list(itertools.combinations(range(len(verts)), 3)))
        parts.append(verts[triples].mean(axis=1))
    parts.append(hull.grid(resolution))
    return np.concatenate(parts), resolution, hull.dim


def lp_member(point, vertices, tol: float = WEIGHT_TOL):
    """Exact membership of ``point`` in ``conv(vertices)`` by linear programming."""
    w, r = convex_weights(point, vertices)
    return r <= tol, w


def _cover(points, base_cols, members):
    """Assign each point to the first member whose image polytope contains it."""
    n = len(points)
    assignment = np.full(n, -1)
    weights = np.zeros((n, base_cols.shape[0]))
    for i, m in enumerate(members):
        todo = np.flatnonzero(assignment < 0)
        if not todo.size:
            break
        poly = Polytope(base_cols @ perm_matrix(m).T)
        inside, w = poly.locate(points[todo])
        hit = todo[inside]
        assignment[hit] = i
        weights[hit] = w[inside]
    return assignment, weights


def check_condition5(d: Ddic, g: PermGroup, resolution: int | None = None,
                     members=None) -> Coverage:
    """Search for an ``x2_tilde`` whose G-images cover the hull of all columns.

    Coverage is tested on the finite set from :func:`coverage_test_points`,
    so a pass holds at the recorded resolution. Points left uncovered by the
    triangulation sweep are re-examined with the membership LP; the first
    point that the LP also rejects is returned as the failure witness.
    ``members`` restricts the search to a subset of the group.
    """
    members = tuple(g.members if members is None else map(tuple, members))
    points, resolution, dim = coverage_test_points(d, resolution)
    tried = {}
    first_fail = None
    for xt in range(d.x2_size):
        base = d.t_family[xt].T  # rows = columns p(.|x1, xt)
        assignment, weights = _cover(points, base, members)
        uncovered = None
        for idx in np.flatnonzero(assignment < 0):
            for i, m in enumerate(members):
                ok, w = lp_member(points[idx], base @ perm_matrix(m).T)
                if ok:
                    assignment[idx] = i
                    weights[idx] = w
                    break
            else:
                uncovered = points[idx]
                break
        tried[xt] = uncovered is None
        cov = Coverage(uncovered is None, xt if uncovered is None else None, resolution, dim,
                       points, assignment, weights, members, uncovered, tried)
        if cov.passed:
            return cov
        if first_fail is None:
            first_fail = cov
    first_fail.tried = tried
    return first_fail


@dataclass
class ConditionReport:
    cond1: CheckResult
    cond2: CheckResult
    cond3: CheckResult
    cond4: CheckResult
    cond5: CheckResult
    eta: float | None = None
    x2_tilde: int | None = None
    group: PermGroup | None = None
    coverage: Coverage | None = field(default=None, repr=False)

    @property
    def results(self):
        return [self.cond1, self.cond2, self.cond3, self.cond4, self.cond5]

    @property
    def all_passed(self) -> bool:
        return all(r.passed is True for r in self.results)

    def failed(self) -> list[int]:
        return [i + 1 for i, r in enumerate(self.results) if r.passed is False]

    def to_dict(self) -> dict:
        return {
            "all_passed": self.all_passed,
            "failed": self.failed(),
            "conditions": {f"cond{i + 1}": r.to_dict() for i, r in enumerate(self.results)},
            "eta_bits": self.eta,
            "x2_tilde": self.x2_tilde,
            "group": None if self.group is None else [cycle_notation(m) for m in self.group],
        }


def check_all(d: Ddic, resolution: int | None = None) -> ConditionReport:
    ok1, g = check_condition1(d)
    group_desc = {"order": len(g), "members": [cycle_notation(m) for m in g],
                  "transitive": ok1}
    cond1 = CheckResult(ok1, group_desc)
    if ok1:
        ok2, rel = check_condition2(d, g)
        if ok2:
            cond2 = CheckResult(True, {f"{a}<-{b}": cycle_notation(m) for (a, b), m in rel.items()})
        else:
            cond2 = CheckResult(False, {"missing_pair": list(rel["missing_pair"])})
    else:
        cond2 = CheckResult(None, {"skipped": "condition 1 failed"})

    ok3, eta = check_condition3(d)
    h = column_entropies(d)
    cond3 = CheckResult(ok3, {"eta": eta} if ok3 else
                        {"min_entropy": float(h.min()), "max_entropy": float(h.max()),
                         "argmin_x2_x1": list(np.unravel_index(np.argmin(h), h.shape))})

    ok4 = check_condition4(d)
    sums = d.t_family.sum(axis=0)
    cond4 = CheckResult(ok4, {"target": d.x2_size / d.y1_size,
                              "max_deviation": float(np.max(np.abs(sums - d.x2_size / d.y1_size)))})

    coverage = None
    if ok1:
        coverage = check_condition5(d, g, resolution)
        cond5 = CheckResult(coverage.passed, coverage.summary())
    else:
        cond5 = CheckResult(None, {"skipped": "condition 1 failed"})

    return ConditionReport(cond1, cond2, cond3, cond4, cond5,
                           eta=eta if ok3 else None,
                           x2_tilde=coverage.x2_tilde if coverage is not None and coverage.passed else None,
                           group=g if ok1 else None,
                           coverage=coverage)
