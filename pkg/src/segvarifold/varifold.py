"""Multiplicity-weighted segment networks and their weight measures."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Sequence

import numpy as np

from .errors import ClassError, InvalidSubMultiplicity, WindowError
from .geometry import (
    Arrangement,
    Ball,
    Exit,
    Region,
    Shape,
    Window,
    as_point,
    clip_length,
    common_refinement,
    normalize_segments,
)

EPS_NUM = 1e-9


def as_multiplicity(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (bool, np.bool_)):
        raise TypeError("booleans are not multiplicities")
    if isinstance(x, (int, np.integer, Rational)):
        return Fraction(int(x)) if isinstance(x, (int, np.integer)) else Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    x = float(x)
    if not math.isfinite(x):
        raise ValueError("multiplicity must be finite")
    return Fraction(repr(x))


# --------------------------------------------------------------------------
# density classes


@dataclass(frozen=True)
class AppropriateClass:
    """A density set C in [1, inf) closed under addition.

    ``integers`` is the positive integers.  ``grid`` is the union of closed
    ``pieces`` (``hi=None`` means unbounded) intersected with ``(1/denom) Z``.
    Sum-closure is checked for all elements up to ``closure_bound``.
    """

    kind: str = "integers"
    denom: int = 1
    pieces: tuple = ((Fraction(1), None),)
    closure_bound: int = 12

    def __post_init__(self):
        if self.kind not in ("integers", "grid"):
            raise ClassError(f"unknown class kind {self.kind!r}")
        if self.kind == "integers" and (self.denom != 1 or self.pieces != ((Fraction(1), None),)):
            raise ClassError("the integer class takes no denominator or pieces")
        if int(self.denom) != self.denom or self.denom < 1:
            raise ClassError("grid denominator must be a positive integer")
        pieces = []
        for piece in self.pieces:
            if not isinstance(piece, (tuple, list)):
                piece = (piece, piece)
            lo, hi = piece
            lo = as_multiplicity(lo)
            hi = None if hi is None else as_multiplicity(hi)
            if lo < 1:
                raise ClassError(f"class piece starts below 1: {lo}")
            if hi is not None and hi < lo:
                raise ClassError(f"empty class piece [{lo}, {hi}]")
            pieces.append((lo, hi))
        if not pieces:
            raise ClassError("class has no pieces")
        object.__setattr__(self, "denom", int(self.denom))
        object.__setattr__(self, "pieces", tuple(pieces))
        elems = [k for k in range(1, self.closure_bound * self.denom + 1) if self.has_ticks(k)]
        if not elems:
            raise ClassError("class has no elements below the closure bound")
        top = self.closure_bound * self.denom
        for i, a in enumerate(elems):
            for b in elems[i:]:
                if a + b <= top and not self.has_ticks(a + b):
                    raise ClassError(
                        f"class not closed under addition: {Fraction(a, self.denom)} + "
                        f"{Fraction(b, self.denom)} is missing")

    @classmethod
    def integers(cls) -> "AppropriateClass":
        return cls()

    @classmethod
    def grid(cls, denom: int, pieces=((1, None),), closure_bound: int = 12) -> "AppropriateClass":
        return cls("grid", denom, tuple(pieces), closure_bound)

    def has_ticks(self, k: int) -> bool:
        """Whether k / denom belongs to C."""
        if k < 1:
            return False
        x = Fraction(k, self.denom)
        return any(lo <= x and (hi is None or x <= hi) for lo, hi in self.pieces)

    def ticks(self, value) -> int | None:
        """value * denom if it is an integer, else None."""
        t = as_multiplicity(value) * self.denom
        return t.numerator if t.denominator == 1 else None

    def contains(self, value) -> bool:
        t = self.ticks(value)
        return t is not None and self.has_ticks(t)

    def snap(self, value: float, tol: float = 1e-9) -> Fraction:
        """Round a float onto the class grid when it is within tol of it."""
        x = float(value)
        k = round(x * self.denom)
        if abs(x * self.denom - k) <= tol:
            return Fraction(k, self.denom)
        return as_multiplicity(value)


INTEGERS = AppropriateClass.integers()


# --------------------------------------------------------------------------
# varifolds


@dataclass(frozen=True, eq=False)
class PolyhedralVarifold:
    """A 1-varifold: an arrangement with a multiplicity on every edge.

    The weight measure is ``sum_e mult(e) * H^1 restricted to edge e``.
    """

    arrangement: Arrangement
    mult: tuple
    density_class: AppropriateClass = INTEGERS

    def __post_init__(self):
        mult = tuple(as_multiplicity(m) for m in self.mult)
        if len(mult) != self.arrangement.n_edges:
            raise ValueError(f"{len(mult)} multiplicities for {self.arrangement.n_edges} edges")
        object.__setattr__(self, "mult", mult)

    @classmethod
    def from_segments(cls, segments: Sequence, mults: Sequence, window: Window,
                      density_class: AppropriateClass = INTEGERS) -> "PolyhedralVarifold":
        """Sum of the segment varifolds; overlapping inputs add their multiplicities."""
        if len(mults) != len(segments):
            raise ValueError("one multiplicity per segment required")
        arr, prov = normalize_segments(segments, window)
        out = [Fraction(0)] * arr.n_edges
        for src, targets in enumerate(prov):
            for e in targets:
                out[e] += as_multiplicity(mults[src])
        return cls(arr, tuple(out), density_class)

    @classmethod
    def zero(cls, window: Window, density_class: AppropriateClass = INTEGERS) -> "PolyhedralVarifold":
        return cls(Arrangement.empty(window), (), density_class)

    @property
    def window(self) -> Window:
        return self.arrangement.window

    @property
    def eps(self) -> float:
        return self.arrangement.eps

    @property
    def n_edges(self) -> int:
        return self.arrangement.n_edges

    @property
    def weights(self) -> np.ndarray:
        return np.array([float(m) for m in self.mult], dtype=float)

    @property
    def ticks(self) -> tuple[int, ...]:
        """Multiplicities in units of 1/denom of the class."""
        out = []
        for i, m in enumerate(self.mult):
            t = self.density_class.ticks(m)
            if t is None:
                raise ClassError(f"edge {i}: multiplicity {m} is off the class grid")
            out.append(t)
        return tuple(out)

    def is_zero(self) -> bool:
        return all(m == 0 for m in self.mult)

    def total_mass(self) -> float:
        return math.fsum(float(m) * L for m, L in zip(self.mult, self.arrangement.lengths))


@dataclass(frozen=True)
class SubMultiplicity:
    """Edgewise multiplicities on the edges of a fixed parent varifold."""

    values: tuple

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(as_multiplicity(v) for v in self.values))

    @classmethod
    def of(cls, values) -> "SubMultiplicity":
        return cls(tuple(values))

    @classmethod
    def full(cls, V: PolyhedralVarifold) -> "SubMultiplicity":
        return cls(V.mult)

    @classmethod
    def from_ticks(cls, ticks: Sequence[int], denom: int) -> "SubMultiplicity":
        return cls(tuple(Fraction(t, denom) for t in ticks))

    def __len__(self):
        return len(self.values)

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.values)

    def support(self) -> list[int]:
        return [i for i, v in enumerate(self.values) if v != 0]


@dataclass(frozen=True)
class Diagnostic:
    code: str
    message: str
    edge: int | None = None


def validate(V: PolyhedralVarifold) -> list[Diagnostic]:
    """All invariant violations of V; empty when V is valid.  Never raises."""
    out = [Diagnostic("arrangement", msg) for msg in V.arrangement.defects()]
    C = V.density_class
    for i, m in enumerate(V.mult):
        if not C.contains(m):
            out.append(Diagnostic("class", f"edge {i}: multiplicity {m} not in class", i))
    return out


def check_submultiplicity(V: PolyhedralVarifold, m: SubMultiplicity) -> None:
    """Raise InvalidSubMultiplicity unless 0 <= m <= mult with m and mult - m in C or 0."""
    if len(m) != V.n_edges:
        raise InvalidSubMultiplicity(f"{len(m)} values for {V.n_edges} edges")
    C = V.density_class
    for i, (a, b) in enumerate(zip(m.values, V.mult)):
        if a < 0 or a > b:
            raise InvalidSubMultiplicity(f"edge {i}: {a} outside [0, {b}]")
        if a != 0 and not C.contains(a):
            raise InvalidSubMultiplicity(f"edge {i}: {a} not in class")
        if a != b and not C.contains(b - a):
            raise InvalidSubMultiplicity(f"edge {i}: remainder {b - a} not in class")


def _require_compatible(V: PolyhedralVarifold, W: PolyhedralVarifold) -> None:
    if V.window != W.window:
        raise WindowError("varifolds live in different windows")
    if V.density_class != W.density_class:
        raise ClassError("varifolds belong to different density classes")


def add(V: PolyhedralVarifold, W: PolyhedralVarifold) -> PolyhedralVarifold:
    _require_compatible(V, W)
    R, mv, mw = common_refinement(V.arrangement, W.arrangement)
    out = [Fraction(0)] * R.n_edges
    for src, maps in ((V, mv), (W, mw)):
        for i, targets in enumerate(maps):
            for e in targets:
                out[e] += src.mult[i]
    return PolyhedralVarifold(R, tuple(out), V.density_class)


def scalar_multiple(V: PolyhedralVarifold, k: int) -> PolyhedralVarifold:
    if int(k) != k or k < 1:
        raise ValueError("scalar must be a positive integer")
    return PolyhedralVarifold(V.arrangement, tuple(int(k) * m for m in V.mult), V.density_class)


def sub_varifold(V: PolyhedralVarifold, m: SubMultiplicity) -> PolyhedralVarifold:
    """The varifold W <= V carried by the edges where m > 0."""
    check_submultiplicity(V, m)
    keep = m.support()
    return PolyhedralVarifold(V.arrangement.subarrangement(keep),
                              tuple(m.values[i] for i in keep), V.density_class)


def remainder(V: PolyhedralVarifold, m: SubMultiplicity) -> SubMultiplicity:
    return SubMultiplicity(tuple(a - b for a, b in zip(V.mult, m.values)))


def same_varifold(V: PolyhedralVarifold, W: PolyhedralVarifold) -> bool:
    """Exact edgewise equality of multiplicities after common refinement."""
    if V.window != W.window:
        return False
    R, mv, mw = common_refinement(V.arrangement, W.arrangement)
    a = [Fraction(0)] * R.n_edges
    b = [Fraction(0)] * R.n_edges
    for acc, src, maps in ((a, V, mv), (b, W, mw)):
        for i, targets in enumerate(maps):
            for e in targets:
                acc[e] += src.mult[i]
    return a == b


def weight_ball_mass(V: PolyhedralVarifold, a, r: float) -> float:
    """The weight of the closed ball B(a, r)."""
    ball = Ball(a, r)
    V.window.require_shape(ball)
    arr = V.arrangement
    return math.fsum(float(m) * clip_length(arr.segment(i), ball) for i, m in enumerate(V.mult))


def weight_of(V: PolyhedralVarifold, shape: Region | Shape, mult=None) -> float:
    mult = V.mult if mult is None else mult
    arr = V.arrangement
    return math.fsum(float(m) * clip_length(arr.segment(i), shape)
                     for i, m in enumerate(mult) if m != 0)


def density(V: PolyhedralVarifold, x) -> Fraction:
    """1-dimensional density of the weight at x (half-line convention at vertices)."""
    x = as_point(x)
    if not V.window.contains(x):
        raise WindowError(f"point {tuple(x)} is not in the window")
    arr = V.arrangement
    where = arr.locate(x)
    if where is None:
        return Fraction(0)
    kind, idx = where
    if kind == "edge":
        return V.mult[idx]
    vs, es, _ = arr.incidence
    return sum((V.mult[e] for e in es[vs == idx]), Fraction(0)) / 2


def _endpoint_coords(arr: Arrangement) -> list[np.ndarray]:
    pts = list(arr.vertex_array)
    pts += [np.asarray(ep.coords) for e in arr.edges for ep in e if isinstance(ep, Exit)]
    return pts


def _region_pieces(V: PolyhedralVarifold, E: Region, inside: bool):
    arr = V.arrangement
    segs, mults = [], []
    for i, m in enumerate(V.mult):
        p, q = arr.segment(i)
        ivs = E.intervals(p, q)
        if not inside:
            cuts = [0.0, *[t for iv in ivs for t in iv], 1.0]
            ivs = [(a, b) for a, b in zip(cuts[0::2], cuts[1::2]) if b > a]
        for t0, t1 in ivs:
            segs.append((p + t0 * (q - p), p + t1 * (q - p)))
            mults.append(m)
    return segs, mults


def restrict(V: PolyhedralVarifold, E: Region) -> PolyhedralVarifold:
    """V restricted to E x G(n, 1); cut points on the boundary of E become vertices."""
    E.check_generic(_endpoint_coords(V.arrangement), V.eps)
    segs, mults = _region_pieces(V, E, inside=True)
    if not segs:
        return PolyhedralVarifold.zero(V.window, V.density_class)
    return PolyhedralVarifold.from_segments(segs, mults, V.window, V.density_class)


def split_by_region(V: PolyhedralVarifold, E: Region
                    ) -> tuple[PolyhedralVarifold, SubMultiplicity]:
    """Refine V along the boundary of E; return it with the sub-multiplicity of V restricted to E."""
    E.check_generic(_endpoint_coords(V.arrangement), V.eps)
    si, mi = _region_pieces(V, E, inside=True)
    so, mo = _region_pieces(V, E, inside=False)
    arr, prov = normalize_segments(si + so, V.window)
    full = [Fraction(0)] * arr.n_edges
    sub = [Fraction(0)] * arr.n_edges
    for k, (targets, m) in enumerate(zip(prov, mi + mo)):
        for e in targets:
            full[e] += m
            if k < len(si):
                sub[e] += m
    return PolyhedralVarifold(arr, tuple(full), V.density_class), SubMultiplicity(tuple(sub))


def strong_distance(V: PolyhedralVarifold, W: PolyhedralVarifold, K: Shape) -> float:
    """Total variation of V - W on K x G(n, 1) for a closed ball or box K."""
    if V.window != W.window:
        raise WindowError("varifolds live in different windows")
    V.window.require_shape(K)
    R, mv, mw = common_refinement(V.arrangement, W.arrangement)
    diff = [Fraction(0)] * R.n_edges
    for sign, src, maps in ((1, V, mv), (-1, W, mw)):
        for i, targets in enumerate(maps):
            for e in targets:
                diff[e] += sign * src.mult[i]
    return math.fsum(abs(float(d)) * clip_length(R.segment(e), K)
                     for e, d in enumerate(diff) if d != 0)
