"""Windows, regions and straight-segment arrangements.

All incidence and snapping decisions use ``window.eps``, a tolerance of
``REL_EPS`` times the window diameter.  Points are plain float arrays; the
dataclasses below store coordinates as tuples so that they hash and compare.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import ArrangementError, NonGenericRegionError, WindowError

REL_EPS = 1e-9


def as_point(x) -> np.ndarray:
    p = np.asarray(x, dtype=float).reshape(-1)
    if p.size < 2:
        raise ValueError(f"points need at least 2 coordinates, got {p.size}")
    if not np.all(np.isfinite(p)):
        raise ValueError(f"non-finite coordinates {x!r}")
    return p


def _tup(x) -> tuple[float, ...]:
    return tuple(float(c) for c in as_point(x))


# --------------------------------------------------------------------------
# closed shapes (balls and boxes); windows wrap one of them as an open set


@dataclass(frozen=True)
class Ball:
    center: tuple[float, ...]
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", _tup(self.center))
        object.__setattr__(self, "radius", float(self.radius))
        if not self.radius > 0:
            raise ValueError("ball radius must be positive")

    @property
    def dim(self) -> int:
        return len(self.center)

    @property
    def diameter(self) -> float:
        return 2.0 * self.radius

    def depth(self, x) -> float:
        """Signed distance to the sphere, positive inside."""
        return self.radius - float(np.linalg.norm(as_point(x) - self.center))

    def contains(self, x, tol: float = 0.0) -> bool:
        return self.depth(x) >= -tol

    def clip_interval(self, p, q) -> tuple[float, float] | None:
        p, q = as_point(p), as_point(q)
        d = q - p
        w = p - np.asarray(self.center)
        a = d @ d
        b = 2.0 * (d @ w)
        c = w @ w - self.radius**2
        disc = b * b - 4 * a * c
        if disc < 0:
            return None
        sq = np.sqrt(disc)
        t0 = (-b - sq) / (2 * a)
        t1 = (-b + sq) / (2 * a)
        t0, t1 = max(t0, 0.0), min(t1, 1.0)
        if t1 <= t0:
            return None
        return t0, t1

    def project_to_boundary(self, x) -> np.ndarray:
        c = np.asarray(self.center)
        v = as_point(x) - c
        nv = np.linalg.norm(v)
        if nv == 0:
            raise WindowError("cannot project the ball center to its boundary")
        return c + self.radius * v / nv


@dataclass(frozen=True)
class Box:
    lo: tuple[float, ...]
    hi: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "lo", _tup(self.lo))
        object.__setattr__(self, "hi", _tup(self.hi))
        if len(self.lo) != len(self.hi):
            raise ValueError("box corners differ in dimension")
        if not all(a < b for a, b in zip(self.lo, self.hi)):
            raise ValueError("box needs lo < hi componentwise")

    @property
    def dim(self) -> int:
        return len(self.lo)

    @property
    def diameter(self) -> float:
        return float(np.linalg.norm(np.subtract(self.hi, self.lo)))

    def depth(self, x) -> float:
        x = as_point(x)
        return float(min(np.min(x - self.lo), np.min(np.asarray(self.hi) - x)))

    def contains(self, x, tol: float = 0.0) -> bool:
        return self.depth(x) >= -tol

    def clip_interval(self, p, q) -> tuple[float, float] | None:
        # Liang-Barsky
        p, q = as_point(p), as_point(q)
        d = q - p
        t0, t1 = 0.0, 1.0
        for k in range(len(p)):
            for num, den in ((p[k] - self.lo[k], -d[k]), (self.hi[k] - p[k], d[k])):
                if den == 0:
                    if num < 0:
                        return None
                    continue
                t = num / den
                if den < 0:
                    t0 = max(t0, t)
                else:
                    t1 = min(t1, t)
        if t1 <= t0:
            return None
        return t0, t1

    def project_to_boundary(self, x) -> np.ndarray:
        x = np.clip(as_point(x), self.lo, self.hi)
        gaps = np.concatenate([x - self.lo, np.asarray(self.hi) - x])
        k = int(np.argmin(gaps))
        n = len(x)
        x[k % n] = self.lo[k] if k < n else self.hi[k - n]
        return x

    def corners(self) -> np.ndarray:
        n = self.dim
        idx = np.array(np.meshgrid(*[[0, 1]] * n, indexing="ij")).reshape(n, -1).T
        return np.where(idx == 0, self.lo, self.hi)


Shape = Union[Ball, Box]


@dataclass(frozen=True)
class Window:
    """Bounded open set; membership is strict."""

    shape: Shape

    @classmethod
    def ball(cls, center, radius) -> "Window":
        return cls(Ball(center, radius))

    @classmethod
    def box(cls, lo, hi) -> "Window":
        return cls(Box(lo, hi))

    @property
    def kind(self) -> str:
        return "ball" if isinstance(self.shape, Ball) else "box"

    @property
    def dim(self) -> int:
        return self.shape.dim

    @property
    def diameter(self) -> float:
        return self.shape.diameter

    @property
    def eps(self) -> float:
        return REL_EPS * self.diameter

    def depth(self, x) -> float:
        return self.shape.depth(x)

    def contains(self, x) -> bool:
        return self.depth(x) > 0

    def on_boundary(self, x) -> bool:
        return abs(self.depth(x)) <= self.eps

    def contains_shape(self, K: Shape) -> bool:
        """Whether the closed set ``K`` lies in the window (up to eps)."""
        if K.dim != self.dim:
            return False
        if isinstance(K, Ball):
            return self.depth(K.center) >= K.radius - self.eps
        return all(self.depth(c) >= -self.eps for c in K.corners())

    def require_shape(self, K: Shape) -> None:
        if not self.contains_shape(K):
            raise WindowError(f"{K} escapes the window")


# --------------------------------------------------------------------------
# regions: finitely many open half-spaces, combined by "all" or "any"


@dataclass(frozen=True)
class HalfSpace:
    """The open half-space ``{x : normal . x > offset}``; normal is unit."""

    normal: tuple[float, ...]
    offset: float

    def __post_init__(self):
        n = as_point(self.normal)
        norm = np.linalg.norm(n)
        if norm == 0:
            raise ValueError("half-space normal must be nonzero")
        if abs(norm - 1.0) <= 1e-15:
            # already unit: keep the bits so that files round-trip exactly
            norm = 1.0
        object.__setattr__(self, "normal", tuple(float(c) for c in n / norm))
        object.__setattr__(self, "offset", float(self.offset) / float(norm))

    def signed(self, x) -> float:
        return float(np.dot(self.normal, as_point(x))) - self.offset


@dataclass(frozen=True)
class Region:
    """A set E built from open half-spaces.

    ``mode="all"`` intersects them and ``mode="any"`` unites them; the
    ``complement`` flag flips membership.  No half-spaces with ``mode="all"``
    is the whole space.
    """

    halfspaces: tuple[HalfSpace, ...] = ()
    mode: str = "all"
    complement: bool = False

    def __post_init__(self):
        object.__setattr__(self, "halfspaces", tuple(self.halfspaces))
        if self.mode not in ("all", "any"):
            raise ValueError(f"unknown region mode {self.mode!r}")

    @classmethod
    def halfspace(cls, normal, offset) -> "Region":
        return cls((HalfSpace(normal, offset),))

    @classmethod
    def whole(cls) -> "Region":
        return cls(())

    def contains(self, x) -> bool:
        hits = (h.signed(x) > 0 for h in self.halfspaces)
        inside = all(hits) if self.mode == "all" else any(hits)
        return inside != self.complement

    def complemented(self) -> "Region":
        return Region(self.halfspaces, self.mode, not self.complement)

    def check_generic(self, points: Iterable, tol: float) -> None:
        for x in points:
            for h in self.halfspaces:
                if abs(h.signed(x)) <= tol:
                    where = ", ".join(f"{c:.12g}" for c in as_point(x))
                    normal = ", ".join(f"{c:.12g}" for c in h.normal)
                    raise NonGenericRegionError(
                        f"region not in generic position: point ({where}) lies within {tol:g} "
                        f"of the hyperplane normal=({normal}), offset={h.offset:.12g}")

    def crossings(self, p, q) -> list[float]:
        p, q = as_point(p), as_point(q)
        out = []
        for h in self.halfspaces:
            n = np.asarray(h.normal)
            den = n @ (q - p)
            if den != 0:
                t = (h.offset - n @ p) / den
                if 0 < t < 1:
                    out.append(float(t))
        return sorted(out)

    def intervals(self, p, q) -> list[tuple[float, float]]:
        """Parameter intervals of the segment p->q lying inside the region."""
        p, q = as_point(p), as_point(q)
        ts = [0.0, *self.crossings(p, q), 1.0]
        out: list[tuple[float, float]] = []
        for a, b in zip(ts[:-1], ts[1:]):
            if b <= a:
                continue
            if self.contains(p + 0.5 * (a + b) * (q - p)):
                if out and out[-1][1] == a:
                    out[-1] = (out[-1][0], b)
                else:
                    out.append((a, b))
        return out


def clip_length(edge: tuple, shape: Region | Shape) -> float:
    """Length of ``edge ∩ shape`` for an edge given as a pair of points."""
    p, q = as_point(edge[0]), as_point(edge[1])
    length = float(np.linalg.norm(q - p))
    if isinstance(shape, Region):
        return sum(b - a for a, b in shape.intervals(p, q)) * length
    iv = shape.clip_interval(p, q)
    return 0.0 if iv is None else (iv[1] - iv[0]) * length


# --------------------------------------------------------------------------
# arrangements


@dataclass(frozen=True)
class Exit:
    """An edge endpoint on the window boundary; never a vertex."""

    coords: tuple[float, ...]


Endpoint = Union[int, Exit]


def point_segment_distance(p, q, x) -> tuple[float, float]:
    """Distance from x to the segment p->q and the parameter of the foot point."""
    d = q - p
    s = float(np.clip((x - p) @ d / (d @ d), 0.0, 1.0))
    return float(np.linalg.norm(p + s * d - x)), s


def segment_distance(p1, q1, p2, q2) -> tuple[float, float, float]:
    """Closest approach of two segments: (distance, s, t) with s, t in [0, 1]."""
    d1, d2, r = q1 - p1, q2 - p2, p1 - p2
    a, e, f = d1 @ d1, d2 @ d2, d2 @ r
    c, b = d1 @ r, d1 @ d2
    den = a * e - b * b
    s = float(np.clip((b * f - c * e) / den, 0, 1)) if den > 1e-15 * a * e else 0.0
    t = (b * s + f) / e
    if t < 0:
        t, s = 0.0, float(np.clip(-c / a, 0, 1))
    elif t > 1:
        t, s = 1.0, float(np.clip((b - c) / a, 0, 1))
    gap = (p1 + s * d1) - (p2 + t * d2)
    return float(np.linalg.norm(gap)), s, float(t)


@dataclass(frozen=True, eq=False)
class Arrangement:
    """Straight edges in a window meeting only at registered vertices.

    ``edges[i]`` is a pair of endpoints, each a vertex index or an ``Exit``.
    """

    window: Window
    vertices: tuple[tuple[float, ...], ...]
    edges: tuple[tuple[Endpoint, Endpoint], ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(_tup(v) for v in self.vertices))
        edges = []
        for a, b in self.edges:
            edges.append(tuple(ep if isinstance(ep, Exit) else int(ep) for ep in (a, b)))
        object.__setattr__(self, "edges", tuple(edges))
        for ep in (ep for e in self.edges for ep in e):
            if not isinstance(ep, Exit) and not 0 <= ep < len(self.vertices):
                raise ArrangementError(f"edge endpoint refers to unknown vertex {ep}")

    @classmethod
    def empty(cls, window: Window) -> "Arrangement":
        return cls(window, (), ())

    @property
    def dim(self) -> int:
        return self.window.dim

    @property
    def eps(self) -> float:
        return self.window.eps

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    def coords(self, ep: Endpoint) -> np.ndarray:
        if isinstance(ep, Exit):
            return np.asarray(ep.coords)
        return self.vertex_array[ep]

    @cached_property
    def vertex_array(self) -> np.ndarray:
        arr = np.asarray(self.vertices, dtype=float).reshape(-1, self.dim)
        arr.setflags(write=False)
        return arr

    @cached_property
    def segments(self) -> np.ndarray:
        """Array of shape (n_edges, 2, dim)."""
        arr = np.array([[self.coords(a), self.coords(b)] for a, b in self.edges],
                       dtype=float).reshape(-1, 2, self.dim)
        arr.setflags(write=False)
        return arr

    @cached_property
    def lengths(self) -> np.ndarray:
        return np.linalg.norm(self.segments[:, 1] - self.segments[:, 0], axis=1)

    def segment(self, i: int) -> tuple[np.ndarray, np.ndarray]:
        return self.segments[i, 0], self.segments[i, 1]

    @cached_property
    def incidence(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """(vertex ids, edge ids, outward unit tangents) for every edge end at a vertex.

        The outward tangent at v points from the rest of the edge towards v.
        """
        vs, es, us = [], [], []
        for i, (a, b) in enumerate(self.edges):
            p, q = self.segment(i)
            u = (q - p) / np.linalg.norm(q - p)
            if not isinstance(a, Exit):
                vs.append(a), es.append(i), us.append(-u)
            if not isinstance(b, Exit):
                vs.append(b), es.append(i), us.append(u)
        return (np.asarray(vs, dtype=int), np.asarray(es, dtype=int),
                np.asarray(us, dtype=float).reshape(-1, self.dim))

    def vertex_sums(self, weights) -> np.ndarray:
        """Sum of weight(e) * outward tangent over edge ends, per vertex."""
        vs, es, us = self.incidence
        w = np.asarray(weights, dtype=float)
        out = np.zeros((self.n_vertices, self.dim))
        np.add.at(out, vs, w[es, None] * us)
        return out

    def edges_at(self, v: int) -> list[int]:
        vs, es, _ = self.incidence
        return sorted(set(es[vs == v].tolist()))

    def locate(self, x, tol: float | None = None) -> tuple[str, int] | None:
        """Classify a point as ("vertex", id), ("edge", id) or None."""
        tol = self.eps if tol is None else tol
        x = as_point(x)
        if self.n_vertices:
            dv = np.linalg.norm(self.vertex_array - x, axis=1)
            k = int(np.argmin(dv))
            if dv[k] <= tol:
                return ("vertex", k)
        for i in range(self.n_edges):
            p, q = self.segment(i)
            d, _ = point_segment_distance(p, q, x)
            if d <= tol:
                return ("edge", i)
        return None

    def connected_components(self, edge_ids: Sequence[int]) -> list[list[int]]:
        """Group the given edges by connectivity through shared vertices."""
        parent = {e: e for e in edge_ids}

        def find(e):
            while parent[e] != e:
                parent[e] = parent[parent[e]]
                e = parent[e]
            return e

        by_vertex: dict[int, int] = {}
        for e in edge_ids:
            for ep in self.edges[e]:
                if isinstance(ep, Exit):
                    continue
                if ep in by_vertex:
                    parent[find(e)] = find(by_vertex[ep])
                else:
                    by_vertex[ep] = e
        groups: dict[int, list[int]] = {}
        for e in edge_ids:
            groups.setdefault(find(e), []).append(e)
        return sorted(groups.values())

    def defects(self) -> list[str]:
        """Human-readable violations of the arrangement invariants."""
        eps = self.eps
        out = []
        w = self.window
        for k, v in enumerate(self.vertex_array):
            if w.depth(v) <= eps:
                out.append(f"vertex {k} is not strictly inside the window")
        if self.n_vertices > 1:
            diff = self.vertex_array[:, None, :] - self.vertex_array[None, :, :]
            dist = np.linalg.norm(diff, axis=2)
            for i, j in zip(*np.nonzero(np.triu(dist <= eps, 1))):
                out.append(f"vertices {i} and {j} coincide")
        for i, (a, b) in enumerate(self.edges):
            for ep in (a, b):
                if isinstance(ep, Exit) and not w.on_boundary(ep.coords):
                    out.append(f"edge {i} has an exit point off the window boundary")
            if self.lengths[i] <= eps:
                out.append(f"edge {i} is shorter than the tolerance")
            p, q = self.segment(i)
            if w.depth(0.5 * (p + q)) <= eps:
                out.append(f"edge {i} does not lie inside the window")
            for k, v in enumerate(self.vertex_array):
                if k in (a, b):
                    continue
                d, _ = point_segment_distance(p, q, v)
                if d <= eps:
                    out.append(f"vertex {k} lies in the interior of edge {i}")
        for i in range(self.n_edges):
            for j in range(i + 1, self.n_edges):
                out.extend(self._pair_defects(i, j))
        return out

    def _pair_defects(self, i: int, j: int) -> list[str]:
        eps = self.eps
        ei, ej = self.edges[i], self.edges[j]
        shared = [v for v in ei if not isinstance(v, Exit) and v in ej]
        if set(ei) == set(ej):
            return [f"edges {i} and {j} are duplicates"]
        p1, q1 = self.segment(i)
        p2, q2 = self.segment(j)
        if shared:
            v = self.vertex_array[shared[0]]
            oi = p1 if ei[1] == shared[0] else q1
            oj = p2 if ej[1] == shared[0] else q2
            ui = (oi - v) / np.linalg.norm(oi - v)
            uj = (oj - v) / np.linalg.norm(oj - v)
            if ui @ uj > 1 - 1e-12:
                return [f"edges {i} and {j} overlap"]
            return []
        d, s, t = segment_distance(p1, q1, p2, q2)
        if d <= eps:
            return [f"edges {i} and {j} meet away from a registered vertex"]
        return []

    def is_equivalent(self, other: "Arrangement", tol: float | None = None) -> bool:
        """Equality up to relabeling of vertices and edges."""
        tol = self.eps if tol is None else tol
        if self.window != other.window or self.n_edges != other.n_edges:
            return False
        if self.n_vertices != other.n_vertices:
            return False
        unused = set(range(other.n_edges))
        for i in range(self.n_edges):
            p, q = self.segment(i)
            for j in sorted(unused):
                r, s = other.segment(j)
                same = (np.linalg.norm(p - r) <= tol and np.linalg.norm(q - s) <= tol) or (
                    np.linalg.norm(p - s) <= tol and np.linalg.norm(q - r) <= tol)
                if same:
                    unused.remove(j)
                    break
            else:
                return False
        return True

    def subarrangement(self, edge_ids: Sequence[int]) -> "Arrangement":
        """Keep only the listed edges, dropping unused vertices."""
        keep = sorted(edge_ids)
        remap: dict[int, int] = {}
        verts = []
        edges = []
        for e in keep:
            ends = []
            for ep in self.edges[e]:
                if isinstance(ep, Exit):
                    ends.append(ep)
                    continue
                if ep not in remap:
                    remap[ep] = len(verts)
                    verts.append(self.vertices[ep])
                ends.append(remap[ep])
            edges.append(tuple(ends))
        return Arrangement(self.window, tuple(verts), tuple(edges))


# --------------------------------------------------------------------------
# normalization of raw segment soup


@dataclass
class _Registry:
    """Points merged within eps; boundary points are flagged as exits."""

    window: Window
    eps: float
    points: list = field(default_factory=list)
    exit_flags: list = field(default_factory=list)

    def add(self, x: np.ndarray) -> int:
        if self.points:
            arr = np.asarray(self.points)
            d = np.linalg.norm(arr - x, axis=1)
            close = np.nonzero(d <= self.eps)[0]
            if len(close) > 1:
                spread = np.linalg.norm(arr[close][:, None] - arr[close][None], axis=2).max()
                if spread > self.eps:
                    raise ArrangementError(
                        f"ambiguous snap: point {tuple(x)} is within tolerance of "
                        f"{len(close)} distinct points")
            if len(close):
                return int(close[0])
        depth = self.window.depth(x)
        is_exit = depth <= self.eps
        if is_exit:
            x = self.window.shape.project_to_boundary(x)
        self.points.append(np.array(x, dtype=float))
        self.exit_flags.append(is_exit)
        return len(self.points) - 1


def _contacts(p1, q1, p2, q2, eps) -> tuple[list[float], list[float]]:
    """Split parameters induced on two segments by each other."""
    d1, d2 = q1 - p1, q2 - p2
    l1, l2 = np.linalg.norm(d1), np.linalg.norm(d2)
    s_out: list[float] = []
    t_out: list[float] = []
    # endpoints of one segment lying on the other (T-junctions, collinear overlaps)
    for x in (p2, q2):
        d, s = point_segment_distance(p1, q1, x)
        if d <= eps:
            s_out.append(s)
    for x in (p1, q1):
        d, t = point_segment_distance(p2, q2, x)
        if d <= eps:
            t_out.append(t)
    # proper crossing
    u1, u2 = d1 / l1, d2 / l2
    sin2 = 1.0 - float(u1 @ u2) ** 2
    if sin2 > 1e-18:
        d, s, t = segment_distance(p1, q1, p2, q2)
        if d <= eps:
            s_out.append(s)
            t_out.append(t)
    return s_out, t_out


def _clean_params(ts: list[float], length: float, eps: float) -> list[float]:
    ts = sorted(min(max(t, 0.0), 1.0) for t in ts)
    out = [0.0]
    for t in ts:
        if (t - out[-1]) * length > eps:
            out.append(t)
    if (1.0 - out[-1]) * length <= eps:
        out[-1] = 1.0
    else:
        out.append(1.0)
    return out


def normalize_segments(segments: Sequence, window: Window
                       ) -> tuple[Arrangement, list[list[int]]]:
    """Build an arrangement and report which edges each input segment became."""
    eps = window.eps
    raw = []
    for k, (p, q) in enumerate(segments):
        p, q = as_point(p), as_point(q)
        if len(p) != window.dim or len(q) != window.dim:
            raise ArrangementError(f"segment {k} has the wrong dimension")
        for x in (p, q):
            if window.depth(x) < -eps:
                raise ArrangementError(f"segment {k}: endpoint {tuple(x)} far outside window")
        if np.linalg.norm(q - p) <= eps:
            raise ArrangementError(f"segment {k} is degenerate (length <= {eps:g})")
        if window.depth(0.5 * (p + q)) <= eps:
            raise ArrangementError(f"segment {k} lies on the window boundary")
        raw.append((p, q))

    splits: list[list[float]] = [[] for _ in raw]
    for i in range(len(raw)):
        for j in range(i + 1, len(raw)):
            s, t = _contacts(*raw[i], *raw[j], eps)
            splits[i].extend(s)
            splits[j].extend(t)

    reg = _Registry(window, eps)
    # endpoints first so that snapping prefers input coordinates
    end_ids = [(reg.add(p), reg.add(q)) for p, q in raw]
    pieces: list[list[tuple[int, int]]] = []
    for k, (p, q) in enumerate(raw):
        ts = _clean_params(splits[k], float(np.linalg.norm(q - p)), eps)
        ids = [end_ids[k][0]]
        ids += [reg.add(p + t * (q - p)) for t in ts[1:-1]]
        ids.append(end_ids[k][1])
        pieces.append([(a, b) for a, b in zip(ids[:-1], ids[1:]) if a != b])

    edge_of: dict[tuple[int, int], int] = {}
    edge_pts: list[tuple[int, int]] = []
    provenance: list[list[int]] = []
    for plist in pieces:
        mine = []
        for a, b in plist:
            if reg.exit_flags[a] and reg.exit_flags[b]:
                mid = 0.5 * (reg.points[a] + reg.points[b])
                if window.depth(mid) <= eps:
                    continue
            key = (min(a, b), max(a, b))
            if key not in edge_of:
                edge_of[key] = len(edge_pts)
                edge_pts.append((a, b))
            if edge_of[key] not in mine:
                mine.append(edge_of[key])
        provenance.append(mine)

    vid: dict[int, int] = {}
    verts = []
    edges = []
    for a, b in edge_pts:
        ends = []
        for r in (a, b):
            if reg.exit_flags[r]:
                ends.append(Exit(tuple(float(c) for c in reg.points[r])))
            else:
                if r not in vid:
                    vid[r] = len(verts)
                    verts.append(reg.points[r])
                ends.append(vid[r])
        edges.append(tuple(ends))
    arr = Arrangement(window, tuple(map(tuple, verts)), tuple(edges))
    for i, L in enumerate(arr.lengths):
        if L <= eps:
            raise ArrangementError(f"normalization produced a degenerate edge {i}")
    return arr, provenance


def build_arrangement(segments: Sequence, window: Window) -> Arrangement:
    """Normalize raw segments into an arrangement (crossings and overlaps split)."""
    return normalize_segments(segments, window)[0]


def common_refinement(A: Arrangement, B: Arrangement
                      ) -> tuple[Arrangement, list[list[int]], list[list[int]]]:
    """Refine two arrangements jointly; return maps from A- and B-edges to refined edges."""
    if A.window != B.window:
        raise WindowError("arrangements live in different windows")
    segs = [A.segment(i) for i in range(A.n_edges)] + [B.segment(i) for i in range(B.n_edges)]
    R, prov = normalize_segments(segs, A.window)
    return R, prov[:A.n_edges], prov[A.n_edges:]
