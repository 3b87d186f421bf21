"""Splits, indecomposability and decompositions of segment networks.

Every sub-varifold is a vector of multiplicities on the parent's edges, held
internally in integer ticks of ``1 / denom`` of the density class.  W splits
V exactly when, at every vertex, the first-variation vectors of W and of
V - W are nonnegative multiples of that of V (no cancellation).

Searches visit edges from last to first with values in increasing order, so
the first split found is the smallest in colexicographic order (compare the
last edge first).
"""

from __future__ import annotations

import os
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

import numpy as np

from .errors import InvalidSubMultiplicity, SearchCapExceeded, VarifoldError
from .geometry import Region
from .varifold import (
    EPS_NUM,
    PolyhedralVarifold,
    SubMultiplicity,
    check_submultiplicity,
    weight_of,
)

DEFAULT_CAP = 10**7
DEFAULT_MAX_MASS = 24

Ticks = tuple[int, ...]


def default_cap() -> int:
    return int(os.environ.get("VARIFOLD_CAP", DEFAULT_CAP))


def collinear_nonneg(w: np.ndarray, v: np.ndarray, tol: float = EPS_NUM) -> bool:
    """Whether w and v - w are both nonnegative multiples of v."""
    nv = np.linalg.norm(v)
    if nv <= tol:
        return bool(np.linalg.norm(w) <= tol)
    u = v / nv
    along = float(w @ u)
    perp = w - along * u
    return bool(np.linalg.norm(perp) <= tol and along >= -tol and along <= nv + tol)


class _Balance:
    """Vertex balance data of one parent varifold, shared by all searches."""

    def __init__(self, V: PolyhedralVarifold):
        self.V = V
        self.arr = V.arrangement
        self.cls = V.density_class
        self.denom = self.cls.denom
        self.parent: Ticks = V.ticks
        vs, es, us = self.arr.incidence
        self.ends: list[list[tuple[int, np.ndarray]]] = [[] for _ in range(self.arr.n_vertices)]
        for v, e, u in zip(vs, es, us):
            self.ends[v].append((int(e), u / self.denom))
        self.vertices_of: list[list[int]] = [[] for _ in range(self.arr.n_edges)]
        for v, e in zip(vs, es):
            self.vertices_of[int(e)].append(int(v))
        self._indecomposable: dict[Ticks, bool] = {}

    def vec(self, ticks: Sequence[int], v: int) -> np.ndarray:
        out = np.zeros(self.arr.dim)
        for e, u in self.ends[v]:
            if ticks[e]:
                out += ticks[e] * u
        return out

    def vecs(self, ticks: Sequence[int]) -> np.ndarray:
        return np.array([self.vec(ticks, v) for v in range(self.arr.n_vertices)]).reshape(-1, self.arr.dim)

    def splits(self, target: Sequence[int], m: Sequence[int]) -> bool:
        return all(collinear_nonneg(self.vec(m, v), self.vec(target, v))
                   for v in range(self.arr.n_vertices))

    def allowed(self, k: int) -> list[int]:
        has = self.cls.has_ticks
        return [j for j in range(k + 1) if (j == 0 or has(j)) and (j == k or has(k - j))]

    def search(self, target: Ticks, cap: int, rng: np.random.Generator | None = None
               ) -> Iterator[Ticks]:
        """Yield every proper nonzero m <= target that splits target."""
        active = [e for e in range(len(target)) if target[e] > 0]
        active.reverse()
        values = {e: self.allowed(target[e]) for e in active}
        if rng is not None:
            active = [active[i] for i in rng.permutation(len(active))]
            values = {e: [vals[i] for i in rng.permutation(len(vals))] for e, vals in values.items()}
        pos_of = {e: i for i, e in enumerate(active)}
        checks: list[list[int]] = [[] for _ in active]
        tvec: dict[int, np.ndarray] = {}
        for v in range(self.arr.n_vertices):
            mine = [pos_of[e] for e, _ in self.ends[v] if e in pos_of]
            if mine:
                checks[max(mine)].append(v)
                tvec[v] = self.vec(target, v)
        assign = [0] * len(target)
        nodes = 0

        def ok(v: int) -> bool:
            return collinear_nonneg(self.vec(assign, v), tvec[v])

        def dfs(pos: int) -> Iterator[Ticks]:
            nonlocal nodes
            if pos == len(active):
                t = tuple(assign)
                if any(t) and t != target:
                    yield t
                return
            e = active[pos]
            for k in values[e]:
                nodes += 1
                if nodes > cap:
                    raise SearchCapExceeded(cap, "split search")
                assign[e] = k
                if all(ok(v) for v in checks[pos]):
                    yield from dfs(pos + 1)
            assign[e] = 0

        yield from dfs(0)

    def first_split(self, target: Ticks, cap: int, rng=None) -> Ticks | None:
        return next(self.search(target, cap, rng), None)

    def indecomposable(self, target: Ticks, cap: int) -> bool:
        if target not in self._indecomposable:
            self._indecomposable[target] = self.first_split(target, cap) is None
        return self._indecomposable[target]

    def to_sub(self, t: Ticks) -> SubMultiplicity:
        return SubMultiplicity.from_ticks(t, self.denom)

    def from_sub(self, m: SubMultiplicity) -> Ticks:
        out = []
        for i, x in enumerate(m.values):
            t = self.cls.ticks(x)
            if t is None:
                raise InvalidSubMultiplicity(f"edge {i}: {x} is off the class grid")
            out.append(t)
        return tuple(out)


_BALANCE_CACHE: dict[int, _Balance] = {}


def _balance(V: PolyhedralVarifold) -> _Balance:
    bal = _BALANCE_CACHE.get(id(V))
    if bal is None or bal.V is not V:
        if len(_BALANCE_CACHE) > 256:
            _BALANCE_CACHE.clear()
        bal = _BALANCE_CACHE[id(V)] = _Balance(V)
    return bal


# --------------------------------------------------------------------------
# single splits


def split_identity(V: PolyhedralVarifold, m: SubMultiplicity) -> bool:
    """Whether |dV| = |dW| + |d(V - W)| for the sub-multiplicity m, trivial cases included."""
    check_submultiplicity(V, m)
    bal = _balance(V)
    return bal.splits(bal.parent, bal.from_sub(m))


def check_split(V: PolyhedralVarifold, m: SubMultiplicity) -> bool:
    check_submultiplicity(V, m)
    if m.is_zero():
        raise InvalidSubMultiplicity("W = 0")
    if tuple(m.values) == tuple(V.mult):
        raise InvalidSubMultiplicity("V - W = 0")
    return split_identity(V, m)


def find_split(V: PolyhedralVarifold, cap: int | None = None,
               rng: np.random.Generator | None = None) -> SubMultiplicity | None:
    """A proper split of V, or None when V is indecomposable.

    Deterministic (colexicographically smallest) unless ``rng`` is given.
    Raises SearchCapExceeded rather than guessing.
    """
    if V.is_zero():
        raise VarifoldError("the zero varifold has no splits")
    bal = _balance(V)
    t = bal.first_split(bal.parent, default_cap() if cap is None else cap, rng)
    return None if t is None else bal.to_sub(t)


def is_indecomposable(V: PolyhedralVarifold, cap: int | None = None) -> bool:
    return find_split(V, cap) is None


def is_component(V: PolyhedralVarifold, m: SubMultiplicity, cap: int | None = None) -> bool:
    cap = default_cap() if cap is None else cap
    check_submultiplicity(V, m)
    if m.is_zero():
        return False
    bal = _balance(V)
    t = bal.from_sub(m)
    return bal.splits(bal.parent, t) and bal.indecomposable(t, cap)


# --------------------------------------------------------------------------
# multisets of parts


@dataclass(frozen=True, eq=False)
class SplitMultiset:
    """Finitely many nonzero sub-multiplicities of ``parent`` with positive counts.

    Equal parts are merged and parts are kept in canonical (sorted) order.
    """

    parent: PolyhedralVarifold
    parts: tuple[tuple[SubMultiplicity, int], ...]

    def __post_init__(self):
        counts: Counter = Counter()
        for m, c in self.parts:
            if not isinstance(m, SubMultiplicity):
                m = SubMultiplicity.of(m)
            if int(c) != c or c < 1:
                raise InvalidSubMultiplicity(f"count {c} is not a positive integer")
            if len(m) != self.parent.n_edges:
                raise InvalidSubMultiplicity(f"{len(m)} values for {self.parent.n_edges} edges")
            if m.is_zero():
                raise InvalidSubMultiplicity("zero part")
            if any(x < 0 for x in m.values):
                raise InvalidSubMultiplicity("negative part")
            counts[m] += int(c)
        parts = tuple(sorted(counts.items(), key=lambda mc: (mc[0].values, mc[1])))
        total = self._sum(parts)
        for i, (s, b) in enumerate(zip(total, self.parent.mult)):
            if s > b:
                raise InvalidSubMultiplicity(f"edge {i}: parts sum to {s} > {b}")
        object.__setattr__(self, "parts", parts)

    def _sum(self, parts) -> tuple[Fraction, ...]:
        out = [Fraction(0)] * self.parent.n_edges
        for m, c in parts:
            for i, x in enumerate(m.values):
                out[i] += c * x
        return tuple(out)

    def total_count(self) -> int:
        return sum(c for _, c in self.parts)

    def combined(self) -> SubMultiplicity:
        """The varifold sum of count * part, as a sub-multiplicity of the parent."""
        return SubMultiplicity(self._sum(self.parts))

    def key(self) -> tuple:
        return tuple((m.values, c) for m, c in self.parts)


@dataclass(frozen=True, eq=False)
class Decomposition:
    multiset: SplitMultiset
    partial: bool = False
    undecided: tuple[SubMultiplicity, ...] = ()

    @property
    def parent(self) -> PolyhedralVarifold:
        return self.multiset.parent

    @property
    def parts(self) -> tuple[tuple[SubMultiplicity, int], ...]:
        return self.multiset.parts

    def key(self) -> tuple:
        return self.multiset.key()


def decompose(V: PolyhedralVarifold, cap: int | None = None,
              rng: np.random.Generator | None = None) -> Decomposition:
    """Split recursively until every piece is indecomposable.

    Any split will do: splits compose along nested pieces, so every leaf is a
    component of V itself, and each split strictly lowers the total
    multiplicity of both pieces.
    """
    cap = default_cap() if cap is None else cap
    bal = _balance(V)
    leaves: Counter = Counter()
    undecided: list[Ticks] = []
    stack = [bal.parent] if any(bal.parent) else []
    while stack:
        t = stack.pop()
        try:
            m = bal.first_split(t, cap, rng)
        except SearchCapExceeded:
            undecided.append(t)
            leaves[t] += 1
            continue
        if m is None:
            bal._indecomposable[t] = True
            leaves[t] += 1
        else:
            stack.append(tuple(a - b for a, b in zip(t, m)))
            stack.append(m)
    parts = tuple((bal.to_sub(t), c) for t, c in leaves.items())
    return Decomposition(SplitMultiset(V, parts), bool(undecided),
                         tuple(bal.to_sub(t) for t in sorted(set(undecided))))


def splitting_parts(V: PolyhedralVarifold, cap: int | None = None,
                    indecomposable_only: bool = True) -> list[SubMultiplicity]:
    """All nonzero m <= mult that split V (m = mult included), canonically ordered."""
    cap = default_cap() if cap is None else cap
    bal = _balance(V)
    pool = list(bal.search(bal.parent, cap))
    if any(bal.parent):
        pool.append(bal.parent)
    if indecomposable_only:
        pool = [t for t in pool if bal.indecomposable(t, cap)]
    return [bal.to_sub(t) for t in sorted(pool)]


def _exact_covers(target: Ticks, pool: list[Ticks], cap: int) -> Iterator[list[tuple[int, int]]]:
    """Every multiset of pool elements (index, count) summing exactly to target."""
    covers_edge = [[j for j, p in enumerate(pool) if p[e] > 0] for e in range(len(target))]
    chosen: list[tuple[int, int]] = []
    nodes = 0

    def rec(rem: list[int], i: int) -> Iterator[list[tuple[int, int]]]:
        nonlocal nodes
        nodes += 1
        if nodes > cap:
            raise SearchCapExceeded(cap, "enumeration")
        first = next((e for e, x in enumerate(rem) if x), None)
        if first is None:
            yield list(chosen)
            return
        # some part with index >= i must cover the first uncovered edge
        last = max((j for j in covers_edge[first] if j >= i), default=None)
        if last is None:
            return
        for j in range(i, last + 1):
            p = pool[j]
            top = min((rem[e] // p[e] for e in range(len(p)) if p[e]), default=0)
            for c in range(top, 0, -1):
                chosen.append((j, c))
                yield from rec([r - c * x for r, x in zip(rem, p)], j + 1)
                chosen.pop()

    yield from rec(list(target), 0)


def enumerate_decompositions(V: PolyhedralVarifold, cap: int | None = None,
                             max_mass: float = DEFAULT_MAX_MASS) -> list[Decomposition]:
    """All decompositions of V, by brute force over indecomposable splitting parts."""
    cap = default_cap() if cap is None else cap
    if float(sum(V.mult)) > max_mass:
        raise SearchCapExceeded(cap, f"enumeration (total multiplicity {float(sum(V.mult)):g} "
                                     f"> bound {max_mass:g})")
    bal = _balance(V)
    pool = [bal.from_sub(m) for m in splitting_parts(V, cap)]
    out = []
    for cover in _exact_covers(bal.parent, pool, cap):
        parts = tuple((bal.to_sub(pool[j]), c) for j, c in cover)
        out.append(Decomposition(SplitMultiset(V, parts)))
    out.sort(key=Decomposition.key)
    return out


# --------------------------------------------------------------------------
# verification and maximality


@dataclass
class VerificationReport:
    component_ok: bool = True
    weight_ok: bool = True
    variation_ok: bool = True
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.component_ok and self.weight_ok and self.variation_ok

    @property
    def first_failure(self) -> str | None:
        return self.failures[0] if self.failures else None


def verify_decomposition(V: PolyhedralVarifold, D: SplitMultiset | Decomposition,
                         cap: int | None = None) -> VerificationReport:
    """Check the three decomposition conditions; failures are listed in order."""
    cap = default_cap() if cap is None else cap
    ms = D.multiset if isinstance(D, Decomposition) else D
    rep = VerificationReport()
    if ms.parent is not V and tuple(ms.parent.mult) != tuple(V.mult):
        rep.component_ok = rep.weight_ok = rep.variation_ok = False
        rep.failures.append("decomposition belongs to a different parent")
        return rep
    bal = _balance(V)
    # (1) every part is a component
    for idx, (m, _) in enumerate(ms.parts):
        try:
            check_submultiplicity(V, m)
        except InvalidSubMultiplicity as exc:
            rep.component_ok = False
            rep.failures.append(f"part {idx}: not a sub-varifold ({exc})")
            continue
        t = bal.from_sub(m)
        if not bal.splits(bal.parent, t):
            rep.component_ok = False
            rep.failures.append(f"part {idx}: does not split the parent")
            continue
        try:
            split = bal.first_split(t, cap)
        except SearchCapExceeded:
            rep.component_ok = False
            rep.failures.append(f"part {idx}: indecomposability undecided (cap {cap})")
            continue
        if split is not None:
            rep.component_ok = False
            rep.failures.append(f"part {idx}: member decomposable (split by {list(map(str, bal.to_sub(split).values))})")
    # (2) weights add up edgewise
    total = ms.combined().values
    bad = [i for i, (s, b) in enumerate(zip(total, V.mult)) if s != b]
    if bad:
        rep.weight_ok = False
        detail = ", ".join(f"edge {i}: {total[i]} vs {V.mult[i]}" for i in bad)
        rep.failures.append(f"edgewise sum mismatch ({detail})")
    # (3) total variations add up at every vertex
    for v in range(V.arrangement.n_vertices):
        lhs = sum(c * np.linalg.norm(bal.vec(bal.from_sub(m), v)) for m, c in ms.parts)
        rhs = np.linalg.norm(bal.vec(bal.parent, v))
        if abs(lhs - rhs) > EPS_NUM * max(1.0, rhs):
            rep.variation_ok = False
            rep.failures.append(f"total variation mismatch at vertex {v}: {lhs:.12g} vs {rhs:.12g}")
    return rep


def _max_count(target: Ticks, pool: list[Ticks], cap: int) -> int:
    memo: dict[Ticks, int] = {}
    nodes = 0

    def best(rem: Ticks) -> int:
        nonlocal nodes
        if not any(rem):
            return 0
        if rem in memo:
            return memo[rem]
        nodes += 1
        if nodes > cap:
            raise SearchCapExceeded(cap, "maximality search")
        first = next(e for e, x in enumerate(rem) if x)
        out = -1
        for p in pool:
            if p[first] and all(a <= b for a, b in zip(p, rem)):
                sub = best(tuple(b - a for a, b in zip(p, rem)))
                if sub >= 0:
                    out = max(out, sub + 1)
        memo[rem] = out
        return out

    return best(target)


def is_maximal(D: SplitMultiset | Decomposition, B: Region | None = None,
               cap: int | None = None) -> bool:
    """Whether no multiset with the same sum and all parts weighted in B has a larger total count."""
    cap = default_cap() if cap is None else cap
    ms = D.multiset if isinstance(D, Decomposition) else D
    V = ms.parent
    B = Region.whole() if B is None else B
    for idx, (m, _) in enumerate(ms.parts):
        if weight_of(V, B, m.values) <= 0:
            raise VarifoldError(f"part {idx} has no weight in B")
    bal = _balance(V)
    target = bal.from_sub(ms.combined())
    pool = list(bal.search(target, cap)) + [target]
    pool = [t for t in pool if weight_of(V, B, bal.to_sub(t).values) > 0]
    return ms.total_count() >= _max_count(target, pool, cap)
