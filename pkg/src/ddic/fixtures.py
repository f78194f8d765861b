"""Example channels: additive (DADIC), erasure-degraded and the 4-input/6-output example,
plus counterexamples that break one condition each."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .prob import Ddic, DdicError, as_prob

COUNTEREXAMPLES = ("non_symmetric_tprime", "broken_cond3", "broken_cond4", "broken_cond5")


@dataclass(frozen=True)
class DadicParams:
    s: int
    p1: tuple
    p2: tuple

    def __post_init__(self):
        if self.s < 2:
            raise DdicError("alphabet size s must be at least 2")
        for name in ("p1", "p2"):
            p = as_prob(getattr(self, name))
            if p.size != self.s:
                raise DdicError(f"{name} has {p.size} entries, expected s = {self.s}")
            object.__setattr__(self, name, tuple(float(v) for v in p))


def circulant(p) -> np.ndarray:
    """``C[i, j] = p[(i - j) mod s]``."""
    p = np.asarray(p, dtype=float)
    s = p.size
    idx = (np.arange(s)[:, None] - np.arange(s)[None, :]) % s
    return p[idx]


def make_dadic(params: DadicParams) -> Ddic:
    """Y1 = X1 + X2 + V1 and Y2 = Y1 + V2, all modulo s."""
    s = params.s
    p1 = np.asarray(params.p1)
    y1 = np.arange(s)[None, :, None]
    x1 = np.arange(s)[None, None, :]
    x2 = np.arange(s)[:, None, None]
    fam = p1[(y1 - x1 - x2) % s]
    return Ddic(fam, circulant(params.p2))


def erasure(alpha: float) -> np.ndarray:
    return np.array([[1.0 - alpha, 0.0],
                     [alpha, alpha],
                     [0.0, 1.0 - alpha]])


def bsc(q: float) -> np.ndarray:
    return np.array([[1.0 - q, q], [q, 1.0 - q]])


def make_erasure_example(p: float, alpha: float) -> Ddic:
    """Binary additive front end with V1 ~ Bernoulli(p), then an erasure channel."""
    if not (0.0 <= p <= 1.0 and 0.0 <= alpha <= 1.0):
        raise DdicError("p and alpha must lie in [0, 1]")
    front = make_dadic(DadicParams(2, (1.0 - p, p), (1.0, 0.0)))
    return Ddic(front.t_family, erasure(alpha))


def make_example3(a: float, b: float, c: float, d: float, e: float, f: float) -> Ddic:
    """|X1| = 4, |X2| = |Y1| = 3, |Y2| = 6; needs a+b+c = 1 and d+e+f = 1/2."""
    vals = np.array([a, b, c, d, e, f], dtype=float)
    if np.any(vals < 0):
        raise DdicError("parameters must be nonnegative")
    if abs(a + b + c - 1.0) > 1e-9 or abs(d + e + f - 0.5) > 1e-9:
        raise DdicError("need a + b + c = 1 and d + e + f = 1/2")
    t_prime = np.array([[d, e, f],
                        [e, f, d],
                        [d, f, e],
                        [f, e, d],
                        [e, d, f],
                        [f, d, e]])
    t0 = np.array([[a, b, c, c],
                   [b, c, a, b],
                   [c, a, b, a]])
    t1 = np.array([[c, a, b, a],
                   [a, b, c, c],
                   [b, c, a, b]])
    t2 = np.array([[b, c, a, b],
                   [c, a, b, a],
                   [a, b, c, c]])
    return Ddic(np.stack([t0, t1, t2]), t_prime)


def make_counterexample(kind: str) -> Ddic:
    """A valid channel that violates the named condition."""
    if kind == "non_symmetric_tprime":
        front = make_dadic(DadicParams(2, (0.9, 0.1), (1.0, 0.0)))
        z = np.array([[1.0, 0.5], [0.0, 0.5]])
        return Ddic(front.t_family, z)
    base = make_dadic(DadicParams(3, (0.7, 0.2, 0.1), (0.5, 0.3, 0.2)))
    if kind == "broken_cond3":
        fam = np.array(base.t_family)
        fam[0][:, 0] = (1.0, 0.0, 0.0)
        return Ddic(fam, base.t_prime)
    if kind == "broken_cond4":
        fam = np.repeat(base.t_family[:1], base.x2_size, axis=0)
        return Ddic(fam, base.t_prime)
    if kind == "broken_cond5":
        # two inputs whose columns are an even and an odd arrangement of the
        # same noise; the cyclic group images fill only three segments of the
        # hexagon spanned by all columns
        a, b, c = 0.7, 0.2, 0.1
        t0 = np.array([[a, a],
                       [b, c],
                       [c, b]])
        g1 = np.roll(np.eye(3), 1, axis=0)
        fam = np.stack([t0, g1 @ t0, g1 @ g1 @ t0])
        return Ddic(fam, base.t_prime)
    raise DdicError(f"unknown counterexample {kind!r}; choose from {', '.join(COUNTEREXAMPLES)}")
