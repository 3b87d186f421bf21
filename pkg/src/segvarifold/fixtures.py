"""Built-in networks used by the demo command, tests and scripts."""

from __future__ import annotations

import math

import numpy as np

from .geometry import Region, Window
from .varifold import INTEGERS, AppropriateClass, PolyhedralVarifold

COS_THETA = 0.25


def six_ray_directions() -> list[np.ndarray]:
    """Unit directions of the rays R1..R6 with cos(theta) = 1/4."""
    c, s = COS_THETA, math.sqrt(1 - COS_THETA**2)
    return [np.array(d) for d in ((1.0, 0.0), (c, s), (-c, s), (-1.0, 0.0), (-c, -s), (c, -s))]


def _ray_end(center, direction, radius: float) -> np.ndarray:
    # exit point of the ray center + t*direction from the ball B(0, radius)
    c, d = np.asarray(center, float), np.asarray(direction, float)
    b = c @ d
    t = -b + math.sqrt(b * b - (c @ c - radius**2))
    return c + t * d


def star(center, directions, mults, radius: float = 10.0,
         density_class: AppropriateClass = INTEGERS) -> PolyhedralVarifold:
    """Rays from ``center`` to the boundary of the ball window B(0, radius)."""
    W = Window.ball(np.zeros(len(center)), radius)
    segs = [(np.asarray(center, float), _ray_end(center, d, radius)) for d in directions]
    return PolyhedralVarifold.from_segments(segs, list(mults), W, density_class)


def six_rays(mults=(2, 2, 2, 2, 2, 2), radius: float = 10.0) -> PolyhedralVarifold:
    return star((0.0, 0.0), six_ray_directions(), mults, radius)


def y_junction(radius: float = 5.0) -> PolyhedralVarifold:
    dirs = [(math.cos(a), math.sin(a)) for a in (0.0, 2 * math.pi / 3, 4 * math.pi / 3)]
    return star((0.0, 0.0), dirs, (1, 1, 1), radius)


def crossing_segment(mult: int = 2, radius: float = 3.0) -> PolyhedralVarifold:
    """A diameter of the window, exiting at both ends."""
    W = Window.ball((0.0, 0.0), radius)
    return PolyhedralVarifold.from_segments([((-radius, 0.0), (radius, 0.0))], [mult], W)


def unit_segment(mult: int = 1, radius: float = 2.0) -> PolyhedralVarifold:
    W = Window.ball((0.0, 0.0), radius)
    return PolyhedralVarifold.from_segments([((-1.0, 0.0), (1.0, 0.0))], [mult], W)


def two_disjoint_segments() -> PolyhedralVarifold:
    W = Window.ball((0.0, 0.0), 5.0)
    return PolyhedralVarifold.from_segments(
        [((-3.0, 1.0), (-1.0, 1.0)), ((1.0, -1.0), (3.0, -1.0))], [1, 1], W)


def tent(radius: float = 4.0) -> PolyhedralVarifold:
    """Base line y = 0 across the window plus the tent (-1,0) -> (0,1) -> (1,0)."""
    W = Window.ball((0.0, 0.0), radius)
    segs = [((-radius, 0.0), (radius, 0.0)), ((-1.0, 0.0), (0.0, 1.0)), ((0.0, 1.0), (1.0, 0.0))]
    return PolyhedralVarifold.from_segments(segs, [1, 1, 1], W)


def tent_legs(V: PolyhedralVarifold) -> list[int]:
    """Edge ids of the two tent legs (the edges off the base line)."""
    return [i for i in range(V.n_edges) if np.ptp(V.arrangement.segments[i][:, 1]) > 0]


def tent_region(delta: float = 0.05) -> Region:
    return Region.halfspace((0.0, 1.0), delta)


def two_chords(radius: float = 5.0) -> PolyhedralVarifold:
    """Two parallel unit-multiplicity chords; stationary and disconnected."""
    W = Window.ball((0.0, 0.0), radius)
    h = 2.0
    x = math.sqrt(radius**2 - h**2)
    return PolyhedralVarifold.from_segments(
        [((-x, h), (x, h)), ((-x, -h), (x, -h))], [1, 1], W)


def cross(radius: float = 4.0, mult: int = 1) -> PolyhedralVarifold:
    """Two diameters crossing at the origin at an oblique angle."""
    W = Window.ball((0.0, 0.0), radius)
    a = 0.7
    return PolyhedralVarifold.from_segments(
        [((-radius, 0.0), (radius, 0.0)),
         ((-radius * math.cos(a), -radius * math.sin(a)), (radius * math.cos(a), radius * math.sin(a)))],
        [mult, mult], W)


def random_star(rng: np.random.Generator, max_mult: int = 3, max_edges: int = 6,
                radius: float = 10.0, min_angle: float = 0.05) -> PolyhedralVarifold:
    """A balanced star: integer multiplicities whose weighted directions sum to zero.

    The weighted directions are the sides of a closed polygon with side lengths
    equal to the multiplicities.
    """
    center = rng.uniform(-3.0, 3.0, size=2)
    while True:
        k = int(rng.integers(2, max_edges + 1))
        mults = rng.integers(1, max_mult + 1, size=k)
        if k == 2:
            mults[1] = mults[0]
            a = rng.uniform(0, 2 * math.pi)
            dirs = [np.array([math.cos(a), math.sin(a)])]
            dirs.append(-dirs[0])
            return star(center, dirs, mults, radius)
        if 2 * mults.max() > mults.sum():
            continue
        for _ in range(50):
            angles = rng.uniform(0, 2 * math.pi, size=k - 2)
            sides = [m * np.array([math.cos(t), math.sin(t)]) for m, t in zip(mults, angles)]
            rest = -np.sum(sides, axis=0) if sides else np.zeros(2)
            a, b, L = float(mults[-2]), float(mults[-1]), float(np.linalg.norm(rest))
            if L == 0 or not abs(a - b) < L < a + b:
                continue
            phi = math.acos((a * a + L * L - b * b) / (2 * a * L))
            sign = 1 if rng.random() < 0.5 else -1
            base = math.atan2(rest[1], rest[0]) + sign * phi
            x = a * np.array([math.cos(base), math.sin(base)])
            sides += [x, rest - x]
            dirs = [s / np.linalg.norm(s) for s in sides]
            gaps = [math.acos(np.clip(u @ w, -1, 1)) for i, u in enumerate(dirs) for w in dirs[i + 1:]]
            if min(gaps) < min_angle:
                continue
            return star(center, dirs, mults, radius)


def random_cluster_network(rng: np.random.Generator, radius: float = 10.0,
                           max_mult: int = 3) -> tuple[PolyhedralVarifold, Region]:
    """Two finite clusters of spokes separated by a random line; returns the region of one side."""
    W = Window.ball((0.0, 0.0), radius)
    a = rng.uniform(0, 2 * math.pi)
    normal = np.array([math.cos(a), math.sin(a)])
    tangent = np.array([-normal[1], normal[0]])
    offset = rng.uniform(-1.0, 1.0)
    segs, mults = [], []
    for side in (1, -1):
        c = (offset + side * rng.uniform(2.5, 3.5)) * normal + rng.uniform(-2, 2) * tangent
        for _ in range(int(rng.integers(1, 4))):
            t = rng.uniform(0, 2 * math.pi)
            length = rng.uniform(0.5, 1.5)
            segs.append((c, c + length * np.array([math.cos(t), math.sin(t)])))
            mults.append(int(rng.integers(1, max_mult + 1)))
    V = PolyhedralVarifold.from_segments(segs, mults, W)
    if rng.random() < 0.5:
        E = Region.halfspace(normal, offset)
    else:
        # a wedge around the positive side, bounded by a second, far half-plane
        E = Region((Region.halfspace(normal, offset).halfspaces[0],
                    Region.halfspace(-normal, -(offset + 8.0)).halfspaces[0]))
    return V, E


def random_halfplane(rng: np.random.Generator, reach: float = 4.0) -> Region:
    a = rng.uniform(0, 2 * math.pi)
    return Region.halfspace((math.cos(a), math.sin(a)), rng.uniform(-reach, reach))
