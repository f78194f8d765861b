"""Small-dimensional polytope helpers: simplex grids, affine coordinates,
point-in-polytope with barycentric weights, and the lower convex hull."""
from __future__ import annotations

import itertools
from functools import lru_cache

import numpy as np
from scipy.spatial import ConvexHull, Delaunay

AFFINE_TOL = 1e-10
MEMBER_TOL = 1e-9


@lru_cache(maxsize=32)
def _compositions(n: int, res: int) -> np.ndarray:
    # stars and bars: bar positions among res + n - 1 slots
    out = np.empty((_count(n, res), n), dtype=np.int64)
    for k, bars in enumerate(itertools.combinations(range(res + n - 1), n - 1)):
        prev = -1
        for i, b in enumerate(bars):
            out[k, i] = b - prev - 1
            prev = b
        out[k, n - 1] = res + n - 2 - prev
    out.setflags(write=False)
    return out


def _count(n: int, res: int) -> int:
    from math import comb
    return comb(res + n - 1, n - 1)


def simplex_grid(n: int, res: int) -> np.ndarray:
    """All points of the n-simplex with coordinates in multiples of ``1/res``.

    Rows are in lexicographic order of the bar positions, so the order is
    deterministic and starts at the vertex ``(0, ..., 0, 1)``.
    """
    if n < 1 or res < 1:
        raise ValueError("need n >= 1 and res >= 1")
    if n == 1:
        return np.ones((1, 1))
    return _compositions(n, res) / res


def affine_frame(points: np.ndarray, tol: float = AFFINE_TOL):
    """Return ``(origin, basis)`` with orthonormal ``basis`` rows spanning the affine hull."""
    points = np.asarray(points, dtype=float)
    origin = points.mean(axis=0)
    centered = points - origin
    if len(points) < 2:
        return origin, np.zeros((0, points.shape[1]))
    _, sv, vt = np.linalg.svd(centered, full_matrices=False)
    rank = int(np.sum(sv > tol * max(1.0, sv[0] if sv.size else 0.0)))
    return origin, vt[:rank]


class Polytope:
    """Convex hull of a finite vertex list, with vectorised membership.

    Membership is decided in the polytope's own affine coordinates; points
    off the affine hull by more than ``tol`` are outside. Inside points get
    convex weights over the original vertex list that reconstruct them.
    """

    def __init__(self, vertices, tol: float = MEMBER_TOL):
        self.vertices = np.asarray(vertices, dtype=float)
        self.tol = tol
        self.origin, self.basis = affine_frame(self.vertices)
        self.dim = self.basis.shape[0]
        coords = (self.vertices - self.origin) @ self.basis.T
        if self.dim >= 2:
            _, keep = np.unique(np.round(coords, 12), axis=0, return_index=True)
            self._keep = np.sort(keep)
            self._tri = Delaunay(coords[self._keep])
        elif self.dim == 1:
            self._lo = int(np.argmin(coords[:, 0]))
            self._hi = int(np.argmax(coords[:, 0]))
            self._span = (coords[self._lo, 0], coords[self._hi, 0])

    def locate(self, points):
        """Return ``(inside, weights)`` for an ``(N, m)`` batch of points."""
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        n_pts = len(pts)
        k = len(self.vertices)
        weights = np.zeros((n_pts, k))
        z = (pts - self.origin) @ self.basis.T
        off = pts - self.origin - z @ self.basis
        inside = np.max(np.abs(off), axis=1) <= self.tol
        if self.dim == 0:
            weights[:, 0] = 1.0
        elif self.dim == 1:
            lo, hi = self._span
            t = (z[:, 0] - lo) / (hi - lo)
            inside &= (t >= -self.tol) & (t <= 1 + self.tol)
            t = np.clip(t, 0.0, 1.0)
            weights[:, self._lo] = 1.0 - t
            weights[:, self._hi] += t
        else:
            simplex = self._tri.find_simplex(z, tol=self.tol)
            inside &= simplex >= 0
            idx = np.flatnonzero(inside)
            if idx.size:
                s = simplex[idx]
                trans = self._tri.transform[s]
                bary = np.einsum("nij,nj->ni", trans[:, :self.dim, :],
                                 z[idx] - trans[:, self.dim, :])
                bary = np.hstack([bary, 1.0 - bary.sum(axis=1, keepdims=True)])
                bary = np.maximum(bary, 0.0)
                bary /= bary.sum(axis=1, keepdims=True)
                verts = self._keep[self._tri.simplices[s]]
                np.add.at(weights, (np.repeat(idx, self.dim + 1), verts.ravel()), bary.ravel())
        weights[~inside] = 0.0
        return inside, weights

    def hull_vertices(self) -> np.ndarray:
        """Indices of the extreme points among ``vertices``."""
        if self.dim == 0:
            return np.array([0])
        if self.dim == 1:
            return np.array(sorted({self._lo, self._hi}))
        coords = (self.vertices[self._keep] - self.origin) @ self.basis.T
        return self._keep[np.sort(ConvexHull(coords).vertices)]

    def grid(self, res: int) -> np.ndarray:
        """Barycentric grid of resolution ``res`` over every cell of a triangulation."""
        if self.dim == 0:
            return self.vertices[:1].copy()
        if self.dim == 1:
            t = np.linspace(0.0, 1.0, res + 1)[:, None]
            return (1 - t) * self.vertices[self._lo] + t * self.vertices[self._hi]
        bary = simplex_grid(self.dim + 1, res)
        cells = self._keep[self._tri.simplices]
        return np.concatenate([bary @ self.vertices[c] for c in cells])


def lower_hull(xs, ys) -> np.ndarray:
    """Lower convex hull of a planar point set by Andrew's monotone chain.

    Points sharing an abscissa are reduced to their lowest ordinate first,
    so the result is the graph of a convex function. Returns the hull
    vertices as an ``(k, 2)`` array ordered by increasing ``x``.
    """
    pts = np.column_stack([np.asarray(xs, dtype=float), np.asarray(ys, dtype=float)])
    pts = pts[np.lexsort((pts[:, 1], pts[:, 0]))]
    first = np.ones(len(pts), dtype=bool)
    first[1:] = pts[1:, 0] != pts[:-1, 0]
    pts = pts[first]
    hull = []
    for p in pts:
        while len(hull) >= 2:
            (ox, oy), (ax, ay) = hull[-2], hull[-1]
            if (ax - ox) * (p[1] - oy) - (ay - oy) * (p[0] - ox) <= 0:
                hull.pop()
            else:
                break
        hull.append((p[0], p[1]))
    return np.array(hull)
