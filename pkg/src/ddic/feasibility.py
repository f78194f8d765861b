"""Minimum max-residual solutions of small dense linear systems over convex sets.

Both the degradedness test and polytope membership reduce to: find ``x >= 0``
with ``E x = f`` exactly (the simplex-type constraints) and ``A x ~ b``. We
minimise the Chebyshev residual ``max |A x - b|`` as a linear program.
"""
from __future__ import annotations

import numpy as np
from scipy.optimize import linprog


def min_residual(A, b, E, f):
    """Solve ``min_x max|A x - b|`` subject to ``E x = f``, ``x >= 0``.

    Returns ``(x, residual)`` with the residual recomputed from the returned
    ``x`` after clipping round-off negatives, or ``(None, inf)`` when the
    hard constraints alone are infeasible.
    """
    A = np.atleast_2d(np.asarray(A, dtype=float))
    b = np.asarray(b, dtype=float).ravel()
    E = np.atleast_2d(np.asarray(E, dtype=float))
    f = np.asarray(f, dtype=float).ravel()
    m, n = A.shape
    # variables (x, t): minimise t with -t <= A x - b <= t
    cost = np.zeros(n + 1)
    cost[-1] = 1.0
    ones = np.ones((m, 1))
    a_ub = np.vstack([np.hstack([A, -ones]), np.hstack([-A, -ones])])
    b_ub = np.concatenate([b, -b])
    a_eq = np.hstack([E, np.zeros((E.shape[0], 1))])
    res = linprog(cost, A_ub=a_ub, b_ub=b_ub, A_eq=a_eq, b_eq=f,
                  bounds=[(0, None)] * (n + 1), method="highs")
    if res.status != 0:
        return None, float("inf")
    x = np.maximum(res.x[:n], 0.0)
    return x, float(np.max(np.abs(A @ x - b))) if m else 0.0


def convex_weights(point, vertices):
    """Convex weights ``w`` minimising ``max|V w - point|``; ``vertices`` are rows.

    Returns ``(w, residual)``.
    """
    V = np.asarray(vertices, dtype=float)
    k = V.shape[0]
    w, r = min_residual(V.T, point, np.ones((1, k)), [1.0])
    w = w / w.sum()
    return w, float(np.max(np.abs(V.T @ w - np.asarray(point, dtype=float))))
