"""Random-coding simulation of the successive-decoding / treat-as-noise scheme.

Receiver 1 decodes message 2 with the X1-averaged likelihood, then message 1
given the decoded X2 codeword. Receiver 2 decodes message 2 treating X1 as
noise. All decoders are maximum likelihood with ties going to the lowest index.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .prob import Ddic, DdicError, as_prob, uniform

MAX_CODEBOOK = 4096
CHUNK = 1000


class GuardError(DdicError):
    pass


@dataclass(frozen=True)
class SimConfig:
    n: int
    r1: float
    r2: float
    trials: int
    seed: int
    px1: tuple
    px2: tuple | None = None

    def __post_init__(self):
        if self.n < 1 or self.trials < 1:
            raise DdicError("blocklength and trial count must be positive")
        if self.r1 < 0 or self.r2 < 0:
            raise DdicError("rates must be nonnegative")
        object.__setattr__(self, "px1", tuple(as_prob(self.px1)))
        if self.px2 is not None:
            object.__setattr__(self, "px2", tuple(as_prob(self.px2)))

    @property
    def sizes(self):
        return codebook_size(self.n, self.r1), codebook_size(self.n, self.r2)


def codebook_size(n: int, rate: float) -> int:
    # rounding guards against 2**(n*R) landing a hair above an integer
    return max(1, math.ceil(round(2.0 ** (n * rate), 9)))


@dataclass(frozen=True)
class SimResult:
    n: int
    r1: float
    r2: float
    m1: int
    m2: int
    trials: int
    err1: float
    err2: float

    @property
    def ci95(self):
        return tuple(1.96 * math.sqrt(e * (1 - e) / self.trials) for e in (self.err1, self.err2))


def _sample(cdf, idx, u):
    """Draw one outcome per entry from ``cdf[..., idx, :]`` using uniforms ``u``."""
    c = cdf[idx]
    return np.minimum((u[..., None] > c).sum(axis=-1), cdf.shape[-1] - 1)


def _log(x):
    with np.errstate(divide="ignore"):
        return np.log(x)


def _chunk(d: Ddic, cfg: SimConfig, px1, px2, rng, trials):
    n = cfg.n
    m1, m2 = cfg.sizes
    cb1 = rng.choice(d.x1_size, size=(trials, m1, n), p=px1)
    cb2 = rng.choice(d.x2_size, size=(trials, m2, n), p=px2)
    w1 = rng.integers(m1, size=trials)
    w2 = rng.integers(m2, size=trials)
    rows = np.arange(trials)
    x1 = cb1[rows, w1]
    x2 = cb2[rows, w2]

    # p(y1 | x1, x2) as [x1, x2, y1] cumulative tables
    p_y1 = d.t_family.transpose(2, 0, 1)
    y1 = _sample(np.cumsum(p_y1, axis=-1), (x1, x2), rng.random((trials, n)))
    y2 = _sample(np.cumsum(d.t_prime.T, axis=-1), y1, rng.random((trials, n)))

    # receiver 1, stage 1: log sum_x1 px1(x1) p(y1 | x1, x2)
    marg1 = _log(np.einsum("a,xya->yx", px1, d.t_family))            # [y1, x2]
    ll2 = marg1[y1[:, None, :], cb2].sum(axis=-1)                      # [trial, m2]
    w2_hat = np.argmax(ll2, axis=1)
    x2_hat = cb2[rows, w2_hat]
    # stage 2: log p(y1 | x1(w1), x2_hat)
    logp = _log(p_y1)                                                   # [x1, x2, y1]
    ll1 = logp[cb1, x2_hat[:, None, :], y1[:, None, :]].sum(axis=-1)
    w1_hat = np.argmax(ll1, axis=1)

    # receiver 2: log sum_x1 px1(x1) p(y2 | x1, x2)
    marg2 = _log(np.einsum("a,xya->yx", px1, d.y2_family))            # [y2, x2]
    ll2b = marg2[y2[:, None, :], cb2].sum(axis=-1)
    w2_hat_b = np.argmax(ll2b, axis=1)

    return int(np.sum(w1_hat != w1)), int(np.sum(w2_hat_b != w2))


def simulate_point(d: Ddic, cfg: SimConfig) -> SimResult:
    """Empirical block error rates of both receivers at one rate pair.

    Each trial draws fresh i.i.d. codebooks of sizes ``ceil(2^(n R))``.
    Trials are processed in chunks of 1000, chunk ``j`` seeded from
    ``(seed, j)``, so the result depends only on the configuration.
    """
    m1, m2 = cfg.sizes
    if max(m1, m2) > MAX_CODEBOOK:
        raise GuardError(f"codebook sizes {m1}, {m2} exceed {MAX_CODEBOOK}")
    px1 = np.asarray(cfg.px1)
    if px1.size != d.x1_size:
        raise DdicError(f"px1 has {px1.size} entries, |X1| = {d.x1_size}")
    px2 = uniform(d.x2_size) if cfg.px2 is None else np.asarray(cfg.px2)
    e1 = e2 = 0
    for j, start in enumerate(range(0, cfg.trials, CHUNK)):
        rng = np.random.default_rng([cfg.seed, j])
        a, b = _chunk(d, cfg, px1, px2, rng, min(CHUNK, cfg.trials - start))
        e1 += a
        e2 += b
    return SimResult(cfg.n, cfg.r1, cfg.r2, m1, m2, cfg.trials, e1 / cfg.trials, e2 / cfg.trials)


def scheme_input(d: Ddic, c: float, trace=None, x2_tilde: int = 0) -> np.ndarray:
    """Codebook-1 distribution for the boundary point at ``c``: the F(c) minimiser."""
    from .capacity import minimize_f_at, trace_F

    if trace is None:
        trace = trace_F(d, x2_tilde)
    p = minimize_f_at(d, trace.x2_tilde, c, trace.minimizer_near(c))
    p = np.where(p < 1e-9, 0.0, p)
    return p / p.sum()
