"""Stochastic degradedness: find p'(y2|y1) with p(y2|x1,x2) = sum_y1 p(y1|x1,x2) p'(y2|y1)."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .feasibility import min_residual
from .prob import Ddic, DdicError, DimensionError, as_channel

ACCEPT_TOL = 1e-7
REJECT_TOL = 1e-5


class InfeasibleError(DdicError):
    pass


@dataclass(frozen=True)
class DegradednessResult:
    feasible: bool
    t_prime: np.ndarray | None
    residual: float
    status: str  # "feasible", "ambiguous" or "infeasible"

    def __bool__(self):
        return self.feasible


def _family(fam) -> np.ndarray:
    fam = np.asarray(fam, dtype=float)
    if fam.ndim == 2:
        fam = fam[None]
    if fam.ndim != 3:
        raise DimensionError(f"family must be [x2][y][x1], got shape {fam.shape}")
    return np.stack([as_channel(m) for m in fam])


def residual_of(t_prime, fam1, fam2) -> float:
    """Max-abs violation of ``t_prime @ fam1[x2] == fam2[x2]`` over the family."""
    pred = np.einsum("ab,xbc->xac", np.asarray(t_prime, dtype=float), _family(fam1))
    return float(np.max(np.abs(pred - _family(fam2))))


def find_degrading_channel(fam1, fam2) -> DegradednessResult:
    """Look for a channel ``T'`` mapping every member of ``fam1`` onto ``fam2``.

    ``fam1[x2]`` is ``|Y1| x |X1|`` and ``fam2[x2]`` is ``|Y2| x |X1|``. The
    Chebyshev residual is minimised over column-stochastic ``T'`` exactly by
    linear programming; ``feasible`` means residual <= 1e-7, residuals above
    1e-5 are ``infeasible`` and anything between is reported as ``ambiguous``.
    """
    f1 = _family(fam1)
    f2 = _family(fam2)
    if f1.shape[0] != f2.shape[0] or f1.shape[2] != f2.shape[2]:
        raise DimensionError(f"families {f1.shape} and {f2.shape} disagree on x1/x2 alphabets")
    nx2, ny1, nx1 = f1.shape
    ny2 = f2.shape[1]

    # unknown T'[y2, y1] at position y2 * ny1 + y1
    rows = []
    rhs = []
    for x2 in range(nx2):
        for x1 in range(nx1):
            for y2 in range(ny2):
                row = np.zeros(ny2 * ny1)
                row[y2 * ny1:(y2 + 1) * ny1] = f1[x2, :, x1]
                rows.append(row)
                rhs.append(f2[x2, y2, x1])
    colsum = np.zeros((ny1, ny2 * ny1))
    for y1 in range(ny1):
        colsum[y1, y1::ny1] = 1.0

    x, _ = min_residual(np.array(rows), np.array(rhs), colsum, np.ones(ny1))
    if x is None:
        return DegradednessResult(False, None, float("inf"), "infeasible")
    tp = x.reshape(ny2, ny1)
    tp = tp / tp.sum(axis=0, keepdims=True)
    resid = residual_of(tp, f1, f2)
    if resid <= ACCEPT_TOL:
        return DegradednessResult(True, tp, resid, "feasible")
    status = "ambiguous" if resid <= REJECT_TOL else "infeasible"
    return DegradednessResult(False, tp, resid, status)


def physically_degrade(fam1, fam2) -> Ddic:
    """Build the physically degraded channel sharing the marginals ``fam1`` and ``fam2``."""
    res = find_degrading_channel(fam1, fam2)
    if not res.feasible:
        raise InfeasibleError(
            f"second family is not a degraded version of the first ({res.status}, "
            f"residual {res.residual:.3g})")
    return Ddic(_family(fam1), res.t_prime)
