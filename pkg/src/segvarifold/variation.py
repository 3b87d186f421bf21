"""First variation of segment networks as atomic vector measures.

For a network of straight edges the first variation is concentrated on
vertices: the atom at v is the multiplicity-weighted sum of unit tangents
pointing from each incident edge towards v.  Exit points on the window
boundary never carry atoms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import NotAnAtomError
from .geometry import Region, as_point
from .varifold import EPS_NUM, PolyhedralVarifold, _endpoint_coords, density, restrict, weight_ball_mass

ALPHA_1 = 2.0  # Lebesgue measure of the unit ball in R^1


def _canonical(points: np.ndarray, values: np.ndarray, tol: float):
    """Merge atoms closer than tol, then sort by coordinates."""
    merged_p: list[np.ndarray] = []
    merged_v: list[np.ndarray] = []
    for p, v in zip(points, values):
        for k, q in enumerate(merged_p):
            if np.linalg.norm(p - q) <= tol:
                merged_v[k] = merged_v[k] + v
                break
        else:
            merged_p.append(np.array(p, dtype=float))
            merged_v.append(np.array(v, dtype=float))
    order = sorted(range(len(merged_p)), key=lambda k: tuple(merged_p[k]))
    dim = points.shape[1] if points.ndim == 2 else 0
    P = np.array([merged_p[k] for k in order], dtype=float).reshape(len(order), dim)
    vshape = (len(order),) + values.shape[1:]
    Vv = np.array([merged_v[k] for k in order], dtype=float).reshape(vshape)
    return P, Vv


@dataclass(frozen=True, eq=False)
class VectorAtomMeasure:
    """Finitely many atoms (location, nonzero vector).

    Atoms whose vector has norm <= EPS_NUM are dropped on construction and
    locations closer than ``tol`` are merged.
    """

    points: np.ndarray
    vectors: np.ndarray
    tol: float = 1e-9

    def __post_init__(self):
        P = np.asarray(self.points, dtype=float)
        Vv = np.asarray(self.vectors, dtype=float)
        if P.size == 0:
            dim = Vv.shape[-1] if Vv.ndim == 2 else (P.shape[-1] if P.ndim == 2 else 2)
            P, Vv = np.zeros((0, dim)), np.zeros((0, dim))
        else:
            dim = P.shape[-1]
        P, Vv = _canonical(P.reshape(len(P), dim), Vv.reshape(len(Vv), dim), self.tol)
        keep = np.linalg.norm(Vv, axis=1) > EPS_NUM
        P, Vv = P[keep], Vv[keep]
        P.setflags(write=False)
        Vv.setflags(write=False)
        object.__setattr__(self, "points", P)
        object.__setattr__(self, "vectors", Vv)

    @classmethod
    def empty(cls, dim: int, tol: float = 1e-9) -> "VectorAtomMeasure":
        return cls(np.zeros((0, dim)), np.zeros((0, dim)), tol)

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    def __len__(self) -> int:
        return len(self.points)

    def is_empty(self) -> bool:
        return len(self) == 0

    def __iter__(self):
        return iter(zip(self.points, self.vectors))

    def __add__(self, other: "VectorAtomMeasure") -> "VectorAtomMeasure":
        return VectorAtomMeasure(np.vstack([self.points, other.points]),
                                 np.vstack([self.vectors, other.vectors]),
                                 max(self.tol, other.tol))

    def __neg__(self) -> "VectorAtomMeasure":
        return VectorAtomMeasure(self.points, -self.vectors, self.tol)

    def __sub__(self, other: "VectorAtomMeasure") -> "VectorAtomMeasure":
        return self + (-other)

    def __mul__(self, k: float) -> "VectorAtomMeasure":
        return VectorAtomMeasure(self.points, float(k) * self.vectors, self.tol)

    __rmul__ = __mul__

    def vector_at(self, x) -> np.ndarray:
        x = as_point(x)
        for p, v in self:
            if np.linalg.norm(p - x) <= self.tol:
                return v.copy()
        return np.zeros(self.dim)

    def allclose(self, other: "VectorAtomMeasure", atol: float = EPS_NUM) -> bool:
        """Atomwise agreement: every vector differs by at most atol."""
        diff = self - other
        return bool(np.all(np.linalg.norm(diff.vectors, axis=1) <= atol)) if len(diff) else True


@dataclass(frozen=True, eq=False)
class ScalarAtomMeasure:
    points: np.ndarray
    masses: np.ndarray
    tol: float = 1e-9

    def __post_init__(self):
        P = np.asarray(self.points, dtype=float)
        m = np.asarray(self.masses, dtype=float).reshape(-1)
        dim = P.shape[-1] if P.ndim == 2 and P.shape[-1] else 2
        P, m = _canonical(P.reshape(len(m), dim) if len(m) else np.zeros((0, dim)), m, self.tol)
        keep = np.abs(m) > EPS_NUM
        P, m = P[keep], m[keep]
        P.setflags(write=False)
        m.setflags(write=False)
        object.__setattr__(self, "points", P)
        object.__setattr__(self, "masses", m)

    def __len__(self) -> int:
        return len(self.masses)

    def is_empty(self) -> bool:
        return len(self) == 0

    def total(self) -> float:
        return math.fsum(self.masses)

    def mass_in_ball(self, a, t: float) -> float:
        a = as_point(a)
        d = np.linalg.norm(self.points - a, axis=1) if len(self) else np.zeros(0)
        return math.fsum(self.masses[d <= t + self.tol])

    def restrict(self, E: Region) -> "ScalarAtomMeasure":
        E.check_generic(self.points, self.tol)
        keep = np.array([E.contains(p) for p in self.points], dtype=bool)
        return ScalarAtomMeasure(self.points[keep], self.masses[keep], self.tol)

    def allclose(self, other: "ScalarAtomMeasure", atol: float = EPS_NUM) -> bool:
        if len(self) != len(other):
            return False
        return bool(np.all(np.linalg.norm(self.points - other.points, axis=1) <= self.tol)
                    and np.all(np.abs(self.masses - other.masses) <= atol))


def first_variation(V: PolyhedralVarifold) -> VectorAtomMeasure:
    arr = V.arrangement
    vecs = arr.vertex_sums(V.weights)
    return VectorAtomMeasure(arr.vertex_array, vecs, V.eps)


def total_variation_measure(T: VectorAtomMeasure) -> ScalarAtomMeasure:
    return ScalarAtomMeasure(T.points, np.linalg.norm(T.vectors, axis=1), T.tol)


def restrict_measure(T: VectorAtomMeasure, E: Region) -> VectorAtomMeasure:
    E.check_generic(T.points, T.tol)
    keep = np.array([E.contains(p) for p in T.points], dtype=bool)
    return VectorAtomMeasure(T.points[keep], T.vectors[keep], T.tol)


def eta(V: PolyhedralVarifold, v) -> np.ndarray:
    """Unit direction of the first variation at the atom v."""
    vec = first_variation(V).vector_at(v)
    n = np.linalg.norm(vec)
    if n <= EPS_NUM:
        where = ", ".join(f"{c:.12g}" for c in as_point(v))
        raise NotAnAtomError(f"({where}) is not in the support of the total variation")
    return vec / n


def mean_curvature(V: PolyhedralVarifold) -> Callable[[np.ndarray], np.ndarray]:
    # straight edges: the first variation is purely atomic and the weight is atomless
    dim = V.window.dim
    return lambda x: np.zeros(dim)


def ac_singular_split(V: PolyhedralVarifold) -> tuple[ScalarAtomMeasure, ScalarAtomMeasure]:
    """Split the total variation into parts absolutely continuous and singular w.r.t. the weight."""
    tv = total_variation_measure(first_variation(V))
    dim = V.window.dim
    return ScalarAtomMeasure(np.zeros((0, dim)), np.zeros(0), tv.tol), tv


def v_boundary(V: PolyhedralVarifold, E: Region) -> VectorAtomMeasure:
    """(dV) restricted to E minus d(V restricted to E)."""
    E.check_generic(_endpoint_coords(V.arrangement), V.eps)
    return restrict_measure(first_variation(V), E) - first_variation(restrict(V, E))


@dataclass(frozen=True)
class AprioriResult:
    hypotheses_hold: bool
    lower_bound: float
    actual: float
    margin: float
    density_at_center: float
    variation_ok: bool


def apriori_check(V: PolyhedralVarifold, a, r: float, c: float, d: float,
                  n_samples: int = 32) -> AprioriResult:
    """Test the lower weight bound 2 (d - c r) r on B(a, r).

    The variation hypothesis ``|dV| B(a, t) <= 2 c t`` is checked at every atom
    radius below r and at ``n_samples`` uniform radii; the left side only
    jumps at atom radii, so this is exhaustive.
    """
    if not (c > 0 and d > 0 and r > 0):
        raise ValueError("c, d and r must be positive")
    a = as_point(a)
    actual = weight_ball_mass(V, a, r)
    theta = float(density(V, a))
    tv = total_variation_measure(first_variation(V))
    radii = np.linalg.norm(tv.points - a, axis=1) if len(tv) else np.zeros(0)
    variation_ok = not np.any(radii <= tv.tol)
    if variation_ok:
        ts = [float(t) for t in radii if t < r]
        ts += [r * k / (n_samples + 1) for k in range(1, n_samples + 1)]
        variation_ok = all(tv.mass_in_ball(a, t) <= ALPHA_1 * c * t + EPS_NUM for t in ts)
    holds = theta >= d - EPS_NUM and variation_ok
    lower = ALPHA_1 * (d - c * r) * r
    return AprioriResult(holds, lower, actual, actual - lower, theta, variation_ok)
