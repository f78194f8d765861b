"""Projected-gradient descent on the probability simplex with a ramped quadratic penalty."""
from __future__ import annotations

import numpy as np

FLOOR = 1e-12
MU_RAMP = (1e2, 1e3, 1e4, 1e5, 1e6)
_LN2 = np.log(2.0)


def project_simplex(v) -> np.ndarray:
    """Euclidean projection onto the probability simplex (sort-based)."""
    v = np.asarray(v, dtype=float)
    u = np.sort(v)[::-1]
    css = np.cumsum(u) - 1.0
    k = np.arange(1, v.size + 1)
    rho = np.nonzero(u - css / k > 0)[0][-1]
    return np.maximum(v - css[rho] / (rho + 1), 0.0)


def floor_simplex(x, floor: float = FLOOR) -> np.ndarray:
    x = np.maximum(x, floor)
    return x / x.sum()


def entropy_and_grad(M, x):
    """``H(M x)`` in bits and its gradient with respect to ``x``."""
    y = M @ x
    logy = np.log2(np.maximum(y, 1e-300))
    h = -float(np.dot(np.where(y > 0, y, 0.0), logy))
    return h, -(M.T @ (logy + 1.0 / _LN2))


def penalized_descent(objective, constraint, target, x0, mus=MU_RAMP, iters: int = 150,
                      tol: float = 1e-13):
    """Minimise ``objective(x) + mu (constraint(x) - target)^2`` over the simplex.

    ``objective`` and ``constraint`` return ``(value, gradient)``. ``mu`` is
    ramped through ``mus``; each stage runs projected gradient steps with
    Armijo backtracking, iterates floored at 1e-12 and renormalised.
    """
    x = floor_simplex(np.asarray(x0, dtype=float))

    def total(x, mu):
        f, gf = objective(x)
        c, gc = constraint(x)
        gap = c - target
        return f + mu * gap * gap, gf + 2.0 * mu * gap * gc

    for mu in mus:
        val, grad = total(x, mu)
        step = 1.0 / (1.0 + mu)
        for _ in range(iters):
            while step >= 1e-18:
                cand = floor_simplex(project_simplex(x - step * grad))
                cval, cgrad = total(cand, mu)
                decrease = float(np.dot(grad, x - cand))
                if cval <= val - 1e-4 * decrease:
                    break
                step *= 0.5
            else:
                break
            moved = np.max(np.abs(cand - x))
            x, val, grad = cand, cval, cgrad
            step *= 2.0
            if moved < tol:
                break
    return x
