"""Input symmetry groups of stochastic matrices.

A permutation is stored as a tuple ``perm`` with ``perm[i]`` the image of
index ``i``; its matrix ``G`` has ``G[perm[i], i] = 1`` so that ``G @ e_i =
e_perm[i]``. Column ``i`` of ``T @ G`` is column ``perm[i]`` of ``T``.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linear_sum_assignment

from .prob import DimensionError, entropies, entropy, uniform

MATCH_TOL = 1e-9
MAX_DEGREE = 8

Perm = tuple


class GroupSizeError(ValueError):
    pass


def identity(n: int) -> Perm:
    return tuple(range(n))


def perm_matrix(perm: Perm) -> np.ndarray:
    n = len(perm)
    g = np.zeros((n, n))
    g[list(perm), list(range(n))] = 1.0
    return g


def perm_compose(a: Perm, b: Perm) -> Perm:
    """``a`` after ``b``; matches the matrix product ``A @ B``."""
    return tuple(a[b[i]] for i in range(len(b)))


def perm_inverse(a: Perm) -> Perm:
    inv = [0] * len(a)
    for i, ai in enumerate(a):
        inv[ai] = i
    return tuple(inv)


def cycle_notation(perm: Perm) -> str:
    seen = set()
    cycles = []
    for start in range(len(perm)):
        if start in seen or perm[start] == start:
            continue
        cyc = [start]
        seen.add(start)
        j = perm[start]
        while j != start:
            cyc.append(j)
            seen.add(j)
            j = perm[j]
        cycles.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(cycles) or "()"


@dataclass(frozen=True)
class PermGroup:
    members: tuple
    degree: int
    row_perms: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(sorted(set(map(tuple, self.members)))))
        if any(len(m) != self.degree for m in self.members):
            raise DimensionError("group members of mixed degree")

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, perm):
        return tuple(perm) in self.members

    def matrices(self) -> list[np.ndarray]:
        return [perm_matrix(m) for m in self.members]


def match_rows(a: np.ndarray, b: np.ndarray, tol: float = MATCH_TOL):
    """Find a row permutation ``pi`` with ``a[i] == b[pi[i]]`` within ``tol``.

    Duplicate rows are handled by solving a bipartite matching rather than
    sorting. Returns ``None`` when no such permutation exists.
    """
    if a.shape != b.shape:
        return None
    close = np.max(np.abs(a[:, None, :] - b[None, :, :]), axis=2) <= tol
    rows, cols = linear_sum_assignment(~close)
    if not np.all(close[rows, cols]):
        return None
    pi = np.empty(len(rows), dtype=int)
    pi[rows] = cols
    return pi


def input_symmetry_group(t, tol: float = MATCH_TOL) -> PermGroup:
    """All column permutations of ``t`` that can be undone by a row permutation.

    Exhaustive over the ``n!`` candidates, so ``n`` is capped at 8. The
    matched row permutation of each member is kept in ``row_perms``.
    """
    t = np.asarray(t, dtype=float)
    n = t.shape[1]
    if n > MAX_DEGREE:
        raise GroupSizeError(f"exhaustive search limited to {MAX_DEGREE} inputs, got {n}")
    members = []
    row_perms = {}
    for perm in itertools.permutations(range(n)):
        tg = t[:, list(perm)]
        # T G = Pi T  <=>  row r of T G is row pi^-1(r) of T
        pi = match_rows(tg, t, tol)
        if pi is not None:
            members.append(perm)
            pi_map = np.empty_like(pi)
            pi_map[pi] = np.arange(len(pi))
            row_perms[perm] = tuple(int(v) for v in pi_map)
    return PermGroup(members, n, row_perms)


def orbit(g: PermGroup, start: int = 0) -> set:
    seen = {start}
    frontier = [start]
    while frontier:
        i = frontier.pop()
        for m in g:
            j = m[i]
            if j not in seen:
                seen.add(j)
                frontier.append(j)
    return seen


def is_transitive(g: PermGroup) -> bool:
    return len(orbit(g, 0)) == g.degree


def verify_group(members) -> bool:
    """True iff ``members`` contains the identity and is closed under products and inverses."""
    members = [tuple(m) for m in members]
    if not members:
        raise ValueError("empty member list")
    n = len(members[0])
    if any(len(m) != n for m in members):
        raise DimensionError("members of mixed degree")
    s = set(members)
    if identity(n) not in s:
        return False
    for a in s:
        if perm_inverse(a) not in s:
            return False
        for b in s:
            if perm_compose(a, b) not in s:
                return False
    return True


def group_average(g: PermGroup, p) -> np.ndarray:
    """``|G|^-1 sum_G G p``; the uniform vector whenever ``g`` is transitive."""
    p = np.asarray(p, dtype=float)
    q = np.zeros_like(p)
    for m in g:
        q[list(m)] += p
    return q / len(g)


@dataclass(frozen=True)
class UniformMaxCheck:
    holds: bool
    max_entropy_uniform: float
    witness: np.ndarray | None = None
    witness_entropy: float | None = None

    def __bool__(self):
        return self.holds


def uniform_maximizes_output_entropy(t, trials: int = 1000, seed: int = 0x5EED,
                                     tol: float = 1e-9) -> UniformMaxCheck:
    """Falsification test of ``max_p H(T p) = H(T u)``.

    Checks every simplex vertex and ``trials`` Dirichlet(1) samples. On
    failure the input with the largest output entropy is returned as witness.
    """
    t = np.asarray(t, dtype=float)
    n = t.shape[1]
    h_u = entropy(t @ uniform(n))
    rng = np.random.default_rng(seed)
    candidates = np.vstack([np.eye(n), rng.dirichlet(np.ones(n), size=trials)])
    hs = entropies(candidates @ t.T)
    best = int(np.argmax(hs))
    if hs[best] <= h_u + tol:
        return UniformMaxCheck(True, h_u)
    return UniformMaxCheck(False, h_u, candidates[best], float(hs[best]))


def lagrange_ok(g: PermGroup) -> bool:
    return math.factorial(g.degree) % len(g) == 0
