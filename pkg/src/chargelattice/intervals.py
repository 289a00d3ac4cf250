"""Interval semi-rings on ℕ and on a rational grid in [0, 1].

Both backends are chains: the partitions of ``[lo, hi)`` are exactly the
increasing endpoint chains ``lo = t0 < t1 < ... < tk = hi``, so sums of a
block function over partitions can be optimised by a split-point dynamic
program instead of enumerating all ``2**(k-1)`` compositions.
"""

from __future__ import annotations

import bisect
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Sequence

from .errors import Inadmissible, InvalidPartition, NotAMember, NotInRing
from .setsys import EXACT, BlockFunction, Optimum, Partition, RingMember, SemiRing
from .xreal import ExtReal, NEG_INF, POS_INF, ZERO, sup

__all__ = [
    "Interval",
    "EMPTY",
    "ChainSemiRing",
    "NatIntervals",
    "GridIntervals",
    "EndpointGrid",
    "AdmissibilityViolated",
    "interval_partitions",
    "sup_interval_dp",
    "split_point_dp",
]

AdmissibilityViolated = Inadmissible


@dataclass(frozen=True, order=True)
class Interval:
    """The half-open interval ``[lo, hi)``; every empty interval is ``EMPTY``."""

    lo: int | Fraction
    hi: int | Fraction

    @property
    def is_empty(self) -> bool:
        return self.lo >= self.hi


EMPTY = Interval(0, 0)


def _fmt_point(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


class ChainSemiRing(SemiRing):
    """Shared machinery for semi-rings of half-open intervals with admissible endpoints."""

    @property
    def empty(self) -> Interval:
        return EMPTY

    # subclasses: is_endpoint(x), cut_points(lo, hi), members()

    def is_endpoint(self, x) -> bool:
        raise NotImplementedError

    def cut_points(self, lo, hi) -> list:
        """Admissible endpoints in ``[lo, hi]``, increasing."""
        raise NotImplementedError

    def interval(self, lo, hi) -> Interval:
        if lo >= hi:
            return EMPTY
        if not (self.is_endpoint(lo) and self.is_endpoint(hi)):
            raise NotAMember(f"[{_fmt_point(lo)},{_fmt_point(hi)}) has an inadmissible endpoint")
        return Interval(lo, hi)

    def is_member(self, a) -> bool:
        return isinstance(a, Interval) and (
            a.is_empty or (self.is_endpoint(a.lo) and self.is_endpoint(a.hi))
        )

    def is_empty(self, a: Interval) -> bool:
        return a.is_empty

    def sort_key(self, a: Interval):
        return (a.lo, a.hi)

    def fmt(self, a) -> str:
        if isinstance(a, RingMember):
            return " + ".join(self.fmt(b) for b in a.blocks) or "{}"
        if a.is_empty:
            return "{}"
        return f"[{_fmt_point(a.lo)},{_fmt_point(a.hi)})"

    def intersect(self, a: Interval, b: Interval) -> Interval:
        if a.is_empty or b.is_empty:
            return EMPTY
        return self.interval(max(a.lo, b.lo), min(a.hi, b.hi))

    def difference(self, a: Interval, b: Interval) -> list[Interval]:
        if a.is_empty:
            return []
        c = self.intersect(a, b)
        if c.is_empty:
            return [a]
        out = [self.interval(a.lo, c.lo), self.interval(c.hi, a.hi)]
        return [x for x in out if not x.is_empty]

    def is_partition(self, target: Interval, blocks: Sequence[Interval]) -> bool:
        if target.is_empty:
            return len(blocks) == 0
        blocks = sorted(blocks)
        if not blocks or blocks[0].lo != target.lo or blocks[-1].hi != target.hi:
            return False
        return all(x.hi == y.lo for x, y in zip(blocks, blocks[1:]))

    def partitions(self, a: Interval, max_blocks: int | None = None) -> Iterator[Partition]:
        if not self.is_member(a):
            raise NotAMember(f"{a!r} is not a member")
        if a.is_empty:
            yield Partition(a, ())
            return
        inner = self.cut_points(a.lo, a.hi)[1:-1]
        k = len(inner)
        limit = k if max_blocks is None else min(k, max_blocks - 1)
        # chains ordered by (number of cuts, cut positions)
        for r in range(0, limit + 1):
            for cuts in itertools.combinations(inner, r):
                pts = [a.lo, *cuts, a.hi]
                yield Partition(a, tuple(Interval(s, t) for s, t in zip(pts, pts[1:])))

    def optimizer(self, g: BlockFunction, maximize: bool = True, depth: int | None = None):
        return _SplitDP(self, g, maximize)

    # -- ring -------------------------------------------------------------

    def ring_member(self, blocks: Iterable[Interval]) -> RingMember:
        """Canonical form of a finite union of members: maximal runs, increasing."""
        runs: list[list] = []
        for b in sorted(x for x in blocks if not x.is_empty):
            if runs and b.lo < runs[-1][1]:
                raise InvalidPartition("blocks overlap")
            if runs and b.lo == runs[-1][1]:
                runs[-1][1] = b.hi
            else:
                runs.append([b.lo, b.hi])
        return RingMember(tuple(Interval(lo, hi) for lo, hi in runs))

    def cells(self, a: Interval) -> list[Interval]:
        pts = self.cut_points(a.lo, a.hi) if not a.is_empty else []
        return [Interval(s, t) for s, t in zip(pts, pts[1:])]


class _SplitDP:
    """Split-point dynamic program on a chain.

    Values follow ``best(t) = opt_{s<t} best(s) + g([s,t))`` with
    ``best(lo) = 0``; tables are cached per left endpoint so every interval
    sharing ``lo`` reuses the same pass. Witnesses are recovered with a
    suffix pass choosing the smallest optimal next cut, which gives the
    lexicographically first optimal chain.
    """

    def __init__(self, backend: ChainSemiRing, g: BlockFunction, maximize: bool):
        self.backend = backend
        self.g = g
        self.maximize = maximize
        self._gcache: dict[tuple, ExtReal] = {}
        self._prefix: dict = {}

    def _better(self, a: ExtReal, b: ExtReal) -> bool:
        return a > b if self.maximize else a < b

    def block(self, s, t) -> ExtReal:
        key = (s, t)
        v = self._gcache.get(key)
        if v is None:
            v = self.g(Interval(s, t))
            if self.maximize and v.is_neg_inf:
                raise AdmissibilityViolated(Interval(s, t))
            if not self.maximize and v.is_pos_inf:
                raise AdmissibilityViolated(Interval(s, t), dual=True)
            self._gcache[key] = v
        return v

    def value(self, a: Interval) -> ExtReal:
        if a.is_empty:
            return ZERO
        pts = self.backend.cut_points(a.lo, a.hi)
        table = self._prefix.setdefault(a.lo, {a.lo: ZERO})
        for t in pts[1:]:
            if t in table:
                continue
            best = None
            for s in pts:
                if s >= t:
                    break
                cand = table[s] + self.block(s, t)
                if best is None or self._better(cand, best):
                    best = cand
            table[t] = best
        return table[a.hi]

    def witness(self, a: Interval) -> tuple[Interval, ...]:
        if a.is_empty:
            return ()
        pts = self.backend.cut_points(a.lo, a.hi)
        rest: dict = {pts[-1]: (ZERO, None)}
        for i in range(len(pts) - 2, -1, -1):
            s = pts[i]
            best = None
            for t in pts[i + 1:]:
                cand = self.block(s, t) + rest[t][0]
                if best is None or self._better(cand, best[0]):
                    best = (cand, t)
            rest[s] = best
        out = []
        s = pts[0]
        while s != pts[-1]:
            t = rest[s][1]
            out.append(Interval(s, t))
            s = t
        return tuple(out)

    def __call__(self, a: Interval) -> Optimum:
        if not self.backend.is_member(a):
            raise NotAMember(f"{a!r} is not a member")
        if a.is_empty:
            return Optimum(ZERO, (), EXACT)
        return Optimum(self.value(a), self.witness(a), EXACT)


class NatIntervals(ChainSemiRing):
    """``A_{m,n} = {k ∈ ℕ : m ≤ k < n}`` for naturals ``m, n ≥ first``."""

    finite = False

    def __init__(self, first: int = 1):
        self.first = first

    def __repr__(self) -> str:
        return f"NatIntervals(first={self.first})"

    def __eq__(self, other) -> bool:
        return isinstance(other, NatIntervals) and other.first == self.first

    def __hash__(self) -> int:
        return hash(("NatIntervals", self.first))

    def is_endpoint(self, x) -> bool:
        return isinstance(x, int) and x >= self.first

    def cut_points(self, lo, hi) -> list[int]:
        return list(range(lo, hi + 1))

    def members(self) -> Iterator[Interval]:
        """All members, ordered by right endpoint then left endpoint; unbounded."""
        yield EMPTY
        for hi in itertools.count(self.first + 1):
            for lo in range(self.first, hi):
                yield Interval(lo, hi)

    def cell(self, k: int) -> Interval:
        return self.interval(k, k + 1)

    def ring_membership(self, subset: Iterable[int]) -> RingMember:
        pts = sorted(set(subset))
        if any(not self.is_endpoint(k) for k in pts):
            raise NotInRing(tuple(pts))
        return self.ring_member(Interval(k, k + 1) for k in pts)

    def ring_elements(self, r: RingMember) -> list[int]:
        return [k for b in r.blocks for k in range(b.lo, b.hi)]

    def generate_ring(self, bound: int | None) -> Iterator[RingMember]:
        """Every ring member contained in ``[first, bound)``."""
        if bound is None:
            raise ValueError("the ring over ℕ is infinite; pass a bound")
        span = list(range(self.first, bound))
        for mask in range(1 << len(span)):
            yield self.ring_membership(k for i, k in enumerate(span) if mask >> i & 1)


class EndpointGrid(tuple):
    """A strictly increasing tuple of at least two rationals."""

    def __new__(cls, points: Iterable):
        pts = tuple(Fraction(p) for p in points)
        if len(pts) < 2:
            raise ValueError("a grid needs at least two points")
        if any(b <= a for a, b in zip(pts, pts[1:])):
            raise ValueError("grid points must be strictly increasing")
        return super().__new__(cls, pts)


class GridIntervals(ChainSemiRing):
    """Half-open intervals ``[a, b)`` whose endpoints lie on a declared rational grid."""

    finite = True

    def __init__(self, grid: Iterable):
        self.grid = EndpointGrid(grid)
        self._pos = {p: i for i, p in enumerate(self.grid)}

    def __repr__(self) -> str:
        return f"GridIntervals({len(self.grid)} points)"

    def __eq__(self, other) -> bool:
        return isinstance(other, GridIntervals) and other.grid == self.grid

    def __hash__(self) -> int:
        return hash(("GridIntervals", self.grid))

    def is_endpoint(self, x) -> bool:
        return not isinstance(x, bool) and isinstance(x, (int, Fraction)) and x in self._pos

    def index(self, x) -> int:
        return self._pos[Fraction(x)]

    def cut_points(self, lo, hi) -> list[Fraction]:
        return list(self.grid[self._pos[lo]: self._pos[hi] + 1])

    def interval(self, lo, hi) -> Interval:
        return super().interval(Fraction(lo), Fraction(hi))

    def members(self) -> Iterator[Interval]:
        yield EMPTY
        for i, lo in enumerate(self.grid):
            for hi in self.grid[i + 1:]:
                yield Interval(lo, hi)

    def cell_index(self, x) -> int:
        """Index of the grid cell containing the point ``x``."""
        i = bisect.bisect_right(self.grid, Fraction(x)) - 1
        if i < 0 or i >= len(self.grid) - 1:
            raise ValueError(f"{x} lies outside the grid")
        return i

    def ring_membership(self, cells: Iterable[int]) -> RingMember:
        """Ring member made of the grid cells with the given indices."""
        idx = sorted(set(cells))
        if any(i < 0 or i >= len(self.grid) - 1 for i in idx):
            raise NotInRing(tuple(idx))
        return self.ring_member(Interval(self.grid[i], self.grid[i + 1]) for i in idx)

    def generate_ring(self, bound=None) -> Iterator[RingMember]:
        n = len(self.grid) - 1
        for mask in range(1 << n):
            yield self.ring_membership(i for i in range(n) if mask >> i & 1)


def interval_partitions(backend: ChainSemiRing, a: Interval) -> Iterator[Partition]:
    return backend.partitions(a)


def split_point_dp(backend: ChainSemiRing, g: BlockFunction, a: Interval, maximize: bool = True) -> Optimum:
    return _SplitDP(backend, g, maximize)(a)


def sup_interval_dp(family: Sequence[Callable[[Interval], ExtReal]], a: Interval, backend: ChainSemiRing | None = None) -> ExtReal:
    """Supremum over chains of ``sum_C max_j nu_j(C)`` on ``a``, in O(n²) block evaluations.

    ``backend`` defaults to the backend attribute of the first family member.
    Raises :class:`AdmissibilityViolated` if some sub-interval has every
    ``nu_j`` equal to -inf.
    """
    if not family:
        raise ValueError("empty family")
    if backend is None:
        backend = family[0].backend

    def g(c: Interval) -> ExtReal:
        return sup(nu(c) for nu in family)

    return _SplitDP(backend, g, True).value(a)
