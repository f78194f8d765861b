"""Probability vectors, column-stochastic matrices and entropies.

All logarithms are base 2. Matrices are column-stochastic: ``T[y, x]`` is
the probability of output ``y`` given input ``x``, so ``T @ p`` maps an input
distribution to an output distribution.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

STOCH_TOL = 1e-9
NEG_TOL = 1e-12
# column sums within this band are kept verbatim so files round-trip exactly
RENORM_TOL = 1e-12


class DdicError(ValueError):
    """Base class for invalid channel data."""


class DimensionError(DdicError):
    pass


class StochasticityError(DdicError):
    pass


def _clean(a: np.ndarray, axis: int) -> np.ndarray:
    if not np.all(np.isfinite(a)):
        raise StochasticityError("non-finite probability")
    if np.any(a < -NEG_TOL):
        raise StochasticityError(f"negative probability {a.min():.3g}")
    a = np.where(a < 0, 0.0, a)
    sums = a.sum(axis=axis, keepdims=True)
    if np.any(np.abs(sums - 1.0) > STOCH_TOL):
        worst = float(np.max(np.abs(sums - 1.0)))
        raise StochasticityError(f"probabilities do not sum to 1 (off by {worst:.3g})")
    if np.any(np.abs(sums - 1.0) > RENORM_TOL):
        a = a / sums
    return a


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


def as_prob(p) -> np.ndarray:
    """Validate ``p`` as a point of the probability simplex and return a read-only copy."""
    p = np.asarray(p, dtype=float)
    if p.ndim != 1 or p.size == 0:
        raise DimensionError(f"probability vector must be 1-D and nonempty, got shape {p.shape}")
    return _frozen(_clean(p, axis=0))


def as_channel(t) -> np.ndarray:
    """Validate ``t`` as a column-stochastic matrix and return a read-only copy."""
    t = np.asarray(t, dtype=float)
    if t.ndim != 2 or 0 in t.shape:
        raise DimensionError(f"channel matrix must be 2-D and nonempty, got shape {t.shape}")
    return _frozen(_clean(t, axis=0))


def uniform(n: int) -> np.ndarray:
    return np.full(n, 1.0 / n)


def entropy(p) -> float:
    """Shannon entropy in bits, with 0 log 0 = 0.

    Terms are summed in sorted order, so the value is exactly invariant under
    permutations of ``p``.
    """
    p = np.asarray(p, dtype=float)
    nz = np.sort(p[p > 0])
    return float(max(-np.sum(nz * np.log2(nz)), 0.0))


def entropies(ps: np.ndarray, axis: int = -1) -> np.ndarray:
    """Row-wise (or axis-wise) entropies of a batch of distributions."""
    ps = np.asarray(ps, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.where(ps > 0, ps * np.log2(np.where(ps > 0, ps, 1.0)), 0.0)
    return np.maximum(-terms.sum(axis=axis), 0.0)


def h2(x: float) -> float:
    """Binary entropy function."""
    return entropy([x, 1.0 - x])


def apply_channel(t, p) -> np.ndarray:
    t = np.asarray(t, dtype=float)
    p = np.asarray(p, dtype=float)
    if t.ndim != 2 or p.shape != (t.shape[1],):
        raise DimensionError(f"cannot apply {t.shape} channel to vector of shape {p.shape}")
    return t @ p


def compose(outer, inner) -> np.ndarray:
    """Channel ``inner`` followed by ``outer``: the matrix product ``outer @ inner``."""
    outer = np.asarray(outer, dtype=float)
    inner = np.asarray(inner, dtype=float)
    if outer.ndim != 2 or inner.ndim != 2 or outer.shape[1] != inner.shape[0]:
        raise DimensionError(f"cannot compose {outer.shape} after {inner.shape}")
    return outer @ inner


def cond_entropy_of_column(t, j: int) -> float:
    t = np.asarray(t, dtype=float)
    if not 0 <= j < t.shape[1]:
        raise IndexError(f"column {j} out of range for {t.shape[1]} inputs")
    return entropy(t[:, j])


@dataclass(frozen=True, eq=False)
class Ddic:
    """A degraded interference channel in physically degraded form.

    ``t_family[x2]`` is the ``|Y1| x |X1|`` matrix of p(y1 | x1, x2) and
    ``t_prime`` is the ``|Y2| x |Y1|`` degrading channel p'(y2 | y1).
    """

    t_family: np.ndarray
    t_prime: np.ndarray

    def __post_init__(self):
        fam = np.asarray(self.t_family, dtype=float)
        if fam.ndim != 3 or 0 in fam.shape:
            raise DimensionError(f"family must be a nonempty 3-D array [x2][y1][x1], got {fam.shape}")
        fam = np.stack([as_channel(m) for m in fam])
        tp = as_channel(self.t_prime)
        if tp.shape[1] != fam.shape[1]:
            raise DimensionError(
                f"degrading channel takes {tp.shape[1]} inputs but |Y1| = {fam.shape[1]}")
        object.__setattr__(self, "t_family", _frozen(fam))
        object.__setattr__(self, "t_prime", tp)

    @property
    def x1_size(self) -> int:
        return self.t_family.shape[2]

    @property
    def x2_size(self) -> int:
        return self.t_family.shape[0]

    @property
    def y1_size(self) -> int:
        return self.t_family.shape[1]

    @property
    def y2_size(self) -> int:
        return self.t_prime.shape[0]

    @property
    def y2_family(self) -> np.ndarray:
        """p(y2 | x1, x2) for every x2, i.e. ``t_prime @ t_family[x2]``."""
        return np.einsum("ab,xbc->xac", self.t_prime, self.t_family)

    def joint_channel(self) -> np.ndarray:
        """p(y1 | x1, x2) as a ``|Y1| x (|X1| |X2|)`` matrix, input index ``x1 * |X2| + x2``."""
        return self.t_family.transpose(1, 2, 0).reshape(self.y1_size, -1)

    def column(self, x1: int, x2: int) -> np.ndarray:
        return self.t_family[x2][:, x1]

    def __eq__(self, other):
        if not isinstance(other, Ddic):
            return NotImplemented
        return (self.t_family.shape == other.t_family.shape
                and self.t_prime.shape == other.t_prime.shape
                and np.array_equal(self.t_family, other.t_family)
                and np.array_equal(self.t_prime, other.t_prime))

    __hash__ = None
