"""Capacity region of a degraded interference channel satisfying conditions 1-5.

The boundary is ``{(c - eta, tau - envF(c)) : eta <= c <= log|Y1|}`` where

* ``eta`` is the common entropy H(Y1 | X1=x1, X2=x2),
* ``tau = max_p H(T' p)``, attained at the uniform input,
* ``F(c) = min H(T' T_x p)`` over input distributions ``p`` with ``H(T_x p) = c``,
* ``envF`` is the lower convex envelope of ``F``.

``outer_bound_T`` estimates from below the degraded-broadcast bound
``T(c) = max I(U; Y2)`` subject to ``H(Y1 | U) = c``; the region is tight when
``T(c) <= tau - envF(c)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .conditions import ConditionReport, check_all
from .geometry import lower_hull, simplex_grid
from .optim import entropy_and_grad, floor_simplex, penalized_descent
from .prob import Ddic, DdicError, entropies, entropy, uniform
from .symmetry import uniform_maximizes_output_entropy

DEFAULT_SEED = 0x5EED
DEFAULT_BINS = 200
REFINE_TOL = 1e-4
OUTER_TOL = 1e-3


class ConditionError(DdicError):
    """The channel is outside the class for which the region formula holds."""


class SymmetryViolation(ConditionError):
    pass


class ConstraintError(DdicError):
    pass


def default_simplex_res(n: int) -> int:
    return {1: 1, 2: 400, 3: 80, 4: 24}.get(n, max(4, int(round(2000 ** (1.0 / (n - 1))))))


def eta(d: Ddic, tol: float = 1e-9) -> float:
    """Common conditional entropy of Y1 given (X1, X2)."""
    h = entropies(d.t_family.transpose(0, 2, 1))
    if np.max(h) - np.min(h) > tol:
        raise ConditionError("column entropies differ; eta is undefined")
    return float(h.mean())


def tau(t_prime, trials: int = 1000, seed: int = DEFAULT_SEED) -> float:
    """Maximum output entropy of an input-symmetric degrading channel."""
    t_prime = np.asarray(t_prime, dtype=float)
    check = uniform_maximizes_output_entropy(t_prime, trials, seed)
    if not check:
        raise SymmetryViolation(
            f"uniform input is not entropy-maximising: H={check.witness_entropy:.6f} at "
            f"{np.round(check.witness, 6).tolist()} exceeds {check.max_entropy_uniform:.6f}")
    return check.max_entropy_uniform


# --------------------------------------------------------------------------
# F(c)


def _f_problem(d: Ddic, x2_tilde: int):
    t = d.t_family[x2_tilde]
    t2 = d.t_prime @ t
    return t, t2


def minimize_f_at(d: Ddic, x2_tilde: int, c: float, p0, mus=None, iters: int = 150):
    """Locally minimise H(Y2 | X2=x2_tilde) with H(Y1 | X2=x2_tilde) pulled to ``c``."""
    t, t2 = _f_problem(d, x2_tilde)
    kw = {} if mus is None else {"mus": mus}
    return penalized_descent(lambda p: entropy_and_grad(t2, p),
                             lambda p: entropy_and_grad(t, p), c, p0, iters=iters, **kw)


@dataclass
class FTrace:
    c: np.ndarray
    f: np.ndarray
    argmin: np.ndarray
    eta: float
    c_min: float
    c_max: float
    x2_tilde: int
    simplex_res: int
    bins: int
    cloud_c: np.ndarray = field(repr=False)
    cloud_f: np.ndarray = field(repr=False)
    empty_bins: list = field(default_factory=list)
    refined: int = 0

    @property
    def points(self) -> np.ndarray:
        return np.column_stack([self.c, self.f])

    def __call__(self, c):
        """Piecewise-linear interpolation of the traced F."""
        return np.interp(c, self.c, self.f)

    def minimizer_near(self, c: float) -> np.ndarray:
        return self.argmin[int(np.argmin(np.abs(self.c - c)))]

    def grid_spec(self) -> dict:
        return {"x2_tilde": self.x2_tilde, "simplex_res": self.simplex_res, "bins": self.bins}


def trace_F(d: Ddic, x2_tilde: int = 0, simplex_res: int | None = None,
            bins: int = DEFAULT_BINS, refine: bool = True) -> FTrace:
    """Trace F(c) on a simplex grid.

    Every grid input ``p`` yields a pair ``(H(T p), H(T' T p))``. The pairs are
    binned in ``c`` over ``[eta, log|Y1|]`` and each bin keeps its lowest
    ``f``; that minimiser is then pushed to the bin centre by penalised descent
    and the result kept only when it lands within 1e-4 of the centre and
    lowers ``f``. Bins with no samples are filled by descent from the nearest
    occupied bin; those still unreached are listed in ``empty_bins``.
    """
    n = d.x1_size
    if simplex_res is None:
        simplex_res = default_simplex_res(n)
    if simplex_res < 2 or bins < 2:
        raise ValueError("simplex_res and bins must both be at least 2")
    t, t2 = _f_problem(d, x2_tilde)
    # the uniform input is off most grids but often attains log|Y1|
    ps = np.vstack([simplex_grid(n, simplex_res), np.full((1, n), 1.0 / n)])
    cs = entropies(ps @ t.T)
    fs = entropies(ps @ t2.T)

    eta_ = float(np.min(entropies(t.T)))
    c_hi = math.log2(d.y1_size)
    width = (c_hi - eta_) / bins
    which = np.clip(((cs - eta_) / width).astype(int), 0, bins - 1) if width > 0 else np.zeros(len(cs), int)

    order = np.lexsort((fs, which))
    first = np.ones(len(order), dtype=bool)
    first[1:] = which[order][1:] != which[order][:-1]
    best = order[first]

    pts_c, pts_f, pts_p = [], [], []
    extra_c, extra_f = [], []
    refined = 0
    for i in best:
        b = which[i]
        centre = eta_ + (b + 0.5) * width
        ci, fi, pi = cs[i], fs[i], ps[i]
        if refine and abs(ci - centre) > REFINE_TOL:
            q = minimize_f_at(d, x2_tilde, centre, pi)
            cq, fq = entropy(t @ q), entropy(t2 @ q)
            if abs(cq - centre) <= REFINE_TOL and fq < fi:
                ci, fi, pi = cq, fq, q
                refined += 1
                extra_c.append(cq)
                extra_f.append(fq)
        pts_c.append(ci)
        pts_f.append(fi)
        pts_p.append(pi)

    # empty bins are seeded from the minimiser of the nearest occupied bin
    occupied = which[best]
    empty = []
    for b in sorted(set(range(bins)) - set(occupied.tolist())):
        centre = eta_ + (b + 0.5) * width
        src = best[int(np.argmin(np.abs(occupied - b)))]
        q = minimize_f_at(d, x2_tilde, centre, ps[src]) if refine else None
        if q is not None and abs(entropy(t @ q) - centre) <= REFINE_TOL:
            cq, fq = entropy(t @ q), entropy(t2 @ q)
            pts_c.append(cq); pts_f.append(fq); pts_p.append(q)
            extra_c.append(cq); extra_f.append(fq)
            refined += 1
        else:
            empty.append(b)

    # both ends of the attainable range are always represented
    lo = np.flatnonzero(cs <= eta_ + 1e-12)
    j = lo[np.argmin(fs[lo])]
    pts_c.append(cs[j]); pts_f.append(fs[j]); pts_p.append(ps[j])
    hi = np.flatnonzero(cs >= cs.max() - 1e-12)
    j = hi[np.argmin(fs[hi])]
    pts_c.append(cs[j]); pts_f.append(fs[j]); pts_p.append(ps[j])

    pc, pf, pp = np.array(pts_c), np.array(pts_f), np.array(pts_p)
    order = np.lexsort((pf, pc))
    pc, pf, pp = pc[order], pf[order], pp[order]
    keep = np.ones(len(pc), dtype=bool)
    keep[1:] = np.diff(pc) > 0
    pc, pf, pp = pc[keep], pf[keep], pp[keep]

    return FTrace(pc, pf, pp, eta_, float(pc[0]), float(pc[-1]), x2_tilde, simplex_res, bins,
                  cloud_c=np.concatenate([cs, extra_c]), cloud_f=np.concatenate([fs, extra_f]),
                  empty_bins=empty, refined=refined)


# --------------------------------------------------------------------------
# envelope and region


@dataclass
class Envelope:
    vertices: np.ndarray  # (k, 2), increasing c

    def __call__(self, c):
        return np.interp(c, self.vertices[:, 0], self.vertices[:, 1])

    @property
    def slopes(self) -> np.ndarray:
        v = self.vertices
        return np.diff(v[:, 1]) / np.diff(v[:, 0])

    @property
    def domain(self):
        return float(self.vertices[0, 0]), float(self.vertices[-1, 0])


def lower_convex_envelope(trace) -> Envelope:
    """Lower convex envelope of a traced F, or of an ``(N, 2)`` point array.

    For a trace the hull is taken over every grid sample as well as the trace
    points, so bin quantisation does not put kinks into the envelope.
    """
    if isinstance(trace, FTrace):
        xs = np.concatenate([trace.cloud_c, trace.c])
        ys = np.concatenate([trace.cloud_f, trace.f])
    else:
        pts = np.asarray(trace, dtype=float)
        xs, ys = pts[:, 0], pts[:, 1]
    if len(xs) < 2:
        raise ValueError("need at least two points for an envelope")
    hull = lower_hull(xs, ys)
    if len(hull) < 2:
        raise ValueError("need at least two distinct abscissae for an envelope")
    return Envelope(hull)


@dataclass
class RegionBoundary:
    c: np.ndarray
    R1: np.ndarray
    R2: np.ndarray
    F: np.ndarray
    envF: np.ndarray
    eta: float
    tau: float
    grid: dict

    @property
    def points(self) -> np.ndarray:
        return np.column_stack([self.R1, self.R2])


def require_conditions(d: Ddic, report: ConditionReport | None = None) -> ConditionReport:
    if report is None:
        report = check_all(d)
    if not report.all_passed:
        raise ConditionError(f"conditions {report.failed()} fail or were skipped")
    return report


def capacity_region(d: Ddic, simplex_res: int | None = None, bins: int = DEFAULT_BINS,
                    grid_points: int = 101, seed: int = DEFAULT_SEED,
                    report: ConditionReport | None = None, trace: FTrace | None = None,
                    ) -> RegionBoundary:
    """Boundary of ``{R1 <= c - eta, R2 <= tau - envF(c)}``, sorted by R1.

    Evaluated at the envelope vertices and on a uniform grid of ``c``. R2 is
    made nonincreasing by a running maximum from the right, which is the
    boundary of the union over ``c`` of the rectangles, and clipped at 0.
    """
    report = require_conditions(d, report)
    if trace is None:
        trace = trace_F(d, report.x2_tilde, simplex_res, bins)
    env = lower_convex_envelope(trace)
    tau_ = tau(d.t_prime, seed=seed)
    eta_ = report.eta
    cs = np.union1d(env.vertices[:, 0], np.linspace(trace.c_min, trace.c_max, grid_points))
    env_vals = env(cs)
    r2 = tau_ - env_vals
    r2 = np.maximum.accumulate(r2[::-1])[::-1]
    r2 = np.maximum(r2, 0.0)
    r1 = np.maximum(cs - eta_, 0.0)
    grid = dict(trace.grid_spec(), grid_points=grid_points, seed=seed)
    return RegionBoundary(cs, r1, r2, trace(cs), env_vals, eta_, tau_, grid)


# --------------------------------------------------------------------------
# outer bound T(c)


@dataclass
class OuterBoundProblem:
    """A feasible point of the T(c) program: p(u) and p(x1, x2 | u).

    ``px1x2_given_u[u]`` is indexed ``x1 * |X2| + x2``.
    """

    u_size: int
    pu: np.ndarray
    px1x2_given_u: np.ndarray
    mutual_info: float
    h_y1_given_u: float
    source: str = ""


def _outer_terms(d: Ddic, k: int):
    a = d.joint_channel()          # |Y1| x m
    b = d.t_prime @ a              # |Y2| x m
    m = a.shape[1]
    eye = np.eye(k)
    s_u = np.kron(eye, np.ones((1, m)))   # q -> p(u)
    a_u = np.kron(eye, a)                 # q -> p(u, y1)
    b_u = np.kron(eye, b)                 # q -> p(u, y2)
    b_all = np.tile(b, (1, k))            # q -> p(y2)

    def cond_y1(q):
        h1, g1 = entropy_and_grad(a_u, q)
        h0, g0 = entropy_and_grad(s_u, q)
        return h1 - h0, g1 - g0

    def neg_info(q):
        hy, gy = entropy_and_grad(b_all, q)
        h0, g0 = entropy_and_grad(s_u, q)
        hj, gj = entropy_and_grad(b_u, q)
        return -(hy + h0 - hj), -(gy + g0 - gj)

    return cond_y1, neg_info


def _unpack(q, k, m):
    joint = q.reshape(k, m)
    pu = joint.sum(axis=1)
    cond = joint / np.maximum(pu[:, None], 1e-300)
    return pu, cond


def outer_bound_solve(d: Ddic, c: float, restarts: int = 8, seed: int = DEFAULT_SEED,
                      trace: FTrace | None = None, x2_tilde: int = 0,
                      tol: float = OUTER_TOL, iters: int = 150) -> OuterBoundProblem:
    """Best feasible point found for the T(c) program; see :func:`outer_bound_T`."""
    eta_ = eta(d)
    c_hi = math.log2(d.y1_size)
    if not eta_ - 1e-9 <= c <= c_hi + 1e-9:
        raise ValueError(f"c={c} outside [{eta_:.6f}, {c_hi:.6f}]")
    k = min(d.y1_size, d.y2_size, d.x1_size * d.x2_size)
    m = d.x1_size * d.x2_size
    cond_y1, neg_info = _outer_terms(d, k)

    starts = []
    if k >= d.x2_size:
        if trace is None:
            trace = trace_F(d, x2_tilde)
        p_star = minimize_f_at(d, x2_tilde, c, trace.minimizer_near(c))
        # U = X2 uniform, X1 ~ p_star independent of X2
        joint = np.zeros((k, d.x1_size, d.x2_size))
        for u in range(d.x2_size):
            joint[u, :, u] = p_star / d.x2_size
        starts.append(("witness", joint.ravel()))
    rng = np.random.default_rng(seed)
    for r in range(restarts):
        starts.append((f"restart{r}", rng.dirichlet(np.ones(k * m))))

    best = None
    for name, q0 in starts:
        q = penalized_descent(neg_info, cond_y1, c, floor_simplex(q0), iters=iters)
        hc = cond_y1(q)[0]
        info = -neg_info(q)[0]
        if abs(hc - c) <= tol and (best is None or info > best.mutual_info):
            pu, cond = _unpack(q, k, m)
            best = OuterBoundProblem(k, pu, cond, float(info), float(hc), name)
    if best is None:
        raise ConstraintError(f"no run met H(Y1|U) = {c} within {tol}")
    return best


def outer_bound_T(d: Ddic, c: float, restarts: int = 8, seed: int = DEFAULT_SEED,
                  trace: FTrace | None = None, x2_tilde: int = 0) -> float:
    """Lower estimate of ``T(c) = max I(U; Y2)`` subject to ``H(Y1 | U) = c``.

    Penalised projected-gradient ascent over the joint law of ``(U, X1, X2)``
    with ``|U| = min(|Y1|, |Y2|, |X1||X2|)``, started from ``restarts`` random
    points and from the inner-bound witness (U = X2 uniform, X1 drawn from
    the F(c) minimiser). Runs ending more than 1e-3 from the constraint are
    discarded.
    """
    return outer_bound_solve(d, c, restarts, seed, trace, x2_tilde).mutual_info


# --------------------------------------------------------------------------
# independent analytic oracle for the binary additive channel


def _h2(x: float) -> float:
    if x <= 0.0 or x >= 1.0:
        return 0.0
    return -x * math.log2(x) - (1 - x) * math.log2(1 - x)


def _star(a: float, b: float) -> float:
    return a * (1 - b) + (1 - a) * b


def h2_inverse(c: float, tol: float = 1e-12) -> float:
    """The root of ``h2(r) = c`` in ``[0, 1/2]`` by bisection."""
    if not -1e-12 <= c <= 1 + 1e-12:
        raise ValueError("binary entropy lies in [0, 1]")
    lo, hi = 0.0, 0.5
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if _h2(mid) < c:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def binary_F_oracle(p: float, q: float, c: float) -> float:
    """F(c) for the binary additive channel with crossovers ``p`` then ``q``.

    Y1 is BSC(r) of X2 with ``r = b * p`` swept over ``[p, 1/2]`` by the X1
    bias ``b``; then ``F(c) = h2(h2^-1(c) * q)`` with ``*`` binary convolution.
    """
    p, q = min(p, 1 - p), min(q, 1 - q)
    if not _h2(p) - 1e-12 <= c <= 1 + 1e-12:
        raise ValueError(f"c={c} outside [h2(p)={_h2(p):.6f}, 1]")
    return _h2(_star(h2_inverse(min(c, 1.0)), q))
