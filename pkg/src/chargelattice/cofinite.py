"""The algebra of finite and cofinite subsets of ℕ = {1, 2, 3, ...}.

Exact partition search is impossible here, so suprema are obtained from
closed forms for the built-in charges and from certified bounds found by
searching "run" partitions: split the first ``depth`` elements of a set into
consecutive runs and keep the rest as one remainder block. The class of run
partitions grows with ``depth``, so the bounds are monotone in it.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Mapping, Sequence

from .errors import InvalidPartition, NotAMember, NotInRing, UnsupportedRule
from .setsys import (
    EXACT,
    BlockFunction,
    LowerBound,
    Optimum,
    Partition,
    RingMember,
    SemiRing,
    UpperBound,
    power_set,
)
from .xreal import ExtReal, NEG_INF, POS_INF, ZERO, to_xreal, xsum

__all__ = [
    "CofiniteSet",
    "CofiniteAlgebra",
    "SymbolicCharge",
    "RULES",
    "jordan_symbolic",
    "is_symbolic",
    "variation_lower_bound",
    "run_partition_search",
    "EXACT_SEARCH_LIMIT",
    "DEFAULT_DEPTH",
]

FIRST = 1
RULES = ("card-cocard", "card-neginf", "zero")
EXACT_SEARCH_LIMIT = 12
DEFAULT_DEPTH = 32


@dataclass(frozen=True)
class CofiniteSet:
    """A finite set (``cofinite=False``) or the complement of a finite set."""

    support: frozenset
    cofinite: bool = False

    @classmethod
    def finite(cls, elements: Iterable[int] = ()) -> "CofiniteSet":
        return cls(frozenset(elements), False)

    @classmethod
    def co(cls, complement: Iterable[int] = ()) -> "CofiniteSet":
        return cls(frozenset(complement), True)

    @property
    def is_finite(self) -> bool:
        return not self.cofinite

    def complement(self) -> "CofiniteSet":
        return CofiniteSet(self.support, not self.cofinite)

    def __contains__(self, k: int) -> bool:
        return (k in self.support) != self.cofinite

    def elements(self) -> Iterator[int]:
        """Increasing enumeration; infinite for cofinite sets."""
        if not self.cofinite:
            yield from sorted(self.support)
            return
        for k in itertools.count(FIRST):
            if k not in self.support:
                yield k

    def __len__(self) -> int:
        if self.cofinite:
            raise ValueError("cofinite sets are infinite")
        return len(self.support)

    def __str__(self) -> str:
        body = ",".join(str(k) for k in sorted(self.support))
        if self.cofinite and not body:
            return "N"
        return f"N\\{{{body}}}" if self.cofinite else f"{{{body}}}"


def _union(a: CofiniteSet, b: CofiniteSet) -> CofiniteSet:
    if not a.cofinite and not b.cofinite:
        return CofiniteSet.finite(a.support | b.support)
    if a.cofinite and b.cofinite:
        return CofiniteSet.co(a.support & b.support)
    f, c = (a, b) if b.cofinite else (b, a)
    return CofiniteSet.co(c.support - f.support)


def _intersect(a: CofiniteSet, b: CofiniteSet) -> CofiniteSet:
    return _union(a.complement(), b.complement()).complement()


class CofiniteAlgebra(SemiRing):
    """``{A ⊆ ℕ : A or ℕ \\ A is finite}``; an algebra, hence a semi-ring."""

    finite = False

    def __repr__(self) -> str:
        return "CofiniteAlgebra()"

    def __eq__(self, other) -> bool:
        return isinstance(other, CofiniteAlgebra)

    def __hash__(self) -> int:
        return hash("CofiniteAlgebra")

    @property
    def empty(self) -> CofiniteSet:
        return CofiniteSet.finite()

    @property
    def whole(self) -> CofiniteSet:
        return CofiniteSet.co()

    def is_member(self, a) -> bool:
        return isinstance(a, CofiniteSet) and all(
            isinstance(k, int) and k >= FIRST for k in a.support
        )

    def is_empty(self, a: CofiniteSet) -> bool:
        return not a.cofinite and not a.support

    def intersect(self, a, b) -> CofiniteSet:
        return _intersect(a, b)

    def union(self, a, b) -> CofiniteSet:
        return _union(a, b)

    def difference(self, a, b) -> list[CofiniteSet]:
        d = _intersect(a, b.complement())
        return [] if self.is_empty(d) else [d]

    def sort_key(self, a: CofiniteSet):
        return next(a.elements(), 0)

    def fmt(self, a) -> str:
        if isinstance(a, RingMember):
            return " + ".join(self.fmt(b) for b in a.blocks) or "{}"
        return str(a)

    def is_partition(self, target, blocks: Sequence[CofiniteSet]) -> bool:
        acc = self.empty
        for b in blocks:
            if not self.is_empty(_intersect(acc, b)):
                return False
            acc = _union(acc, b)
        return acc == target

    def members(self) -> Iterator[CofiniteSet]:
        """Every member exactly once, by increasing largest support element."""
        yield self.empty
        yield self.whole
        for n in itertools.count(FIRST):
            below = range(FIRST, n)
            for r in range(len(below) + 1):
                for rest in itertools.combinations(below, r):
                    s = frozenset(rest) | {n}
                    yield CofiniteSet.finite(s)
                    yield CofiniteSet.co(s)

    def ring_membership(self, subset) -> RingMember:
        if not self.is_member(subset):
            raise NotInRing(subset)
        return RingMember(() if self.is_empty(subset) else (subset,))

    def generate_ring(self, bound=None) -> Iterator[RingMember]:
        for m in self.members():
            yield self.ring_membership(m)

    def partitions(self, a: CofiniteSet, max_blocks: int | None = None) -> Iterator[Partition]:
        """Partitions of ``a``.

        For finite ``a`` every partition is produced (at most ``max_blocks``
        blocks if given). For cofinite ``a`` there are infinitely many, and
        ``max_blocks`` is required: the stream is the run partitions that
        split off consecutive runs from the first ``max_blocks - 1`` elements.
        """
        if a.is_finite:
            elems = sorted(a.support)
            ps = power_set(elems)
            for p in ps.partitions(ps.full, max_blocks):
                yield Partition(a, tuple(CofiniteSet.finite(ps.labels(b)) for b in p.blocks))
            return
        if max_blocks is None:
            raise ValueError("a cofinite set has infinitely many partitions; pass max_blocks")
        head = list(itertools.islice(a.elements(), max(max_blocks - 1, 0)))
        for t in range(len(head) + 1):
            rest = _intersect(a, CofiniteSet.co(head[:t]))
            for r in range(t):
                for cuts in itertools.combinations(range(1, t), r):
                    pts = [0, *cuts, t]
                    runs = tuple(CofiniteSet.finite(head[s:e]) for s, e in zip(pts, pts[1:]))
                    yield Partition(a, runs + (rest,))
            if t == 0:
                yield Partition(a, (a,))

    def optimizer(self, g: BlockFunction, maximize: bool = True, depth: int | None = None):
        depth = DEFAULT_DEPTH if depth is None else depth

        def solve(a: CofiniteSet) -> Optimum:
            if not self.is_member(a):
                raise NotAMember(f"{a!r} is not a member")
            if a.is_finite and len(a.support) <= EXACT_SEARCH_LIMIT:
                return _exact_finite(g, a, maximize)
            return run_partition_search(g, a, depth, maximize)

        return solve


def _exact_finite(g: BlockFunction, a: CofiniteSet, maximize: bool) -> Optimum:
    # inside a finite set the algebra is the full power set
    ps = power_set(sorted(a.support))
    opt = ps.optimizer(lambda m: g(CofiniteSet.finite(ps.labels(m))), maximize)(ps.full)
    blocks = tuple(CofiniteSet.finite(ps.labels(b)) for b in opt.witness)
    return Optimum(opt.value, blocks, EXACT)


def run_partition_search(g: BlockFunction, a: CofiniteSet, depth: int, maximize: bool = True) -> Optimum:
    """Best ``sum g(C)`` over run partitions of ``a`` that cut within its first ``depth`` elements.

    The result is tagged as a lower bound (maximising) or upper bound
    (minimising) of the optimum over all partitions, unless the search was
    provably complete.
    """
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    better = (lambda x, y: x > y) if maximize else (lambda x, y: x < y)
    head = list(itertools.islice(a.elements(), depth))
    k = len(head)
    best: list[tuple[ExtReal, int] | None] = [(ZERO, 0)] + [None] * k
    for t in range(1, k + 1):
        for s in range(t):
            cand = best[s][0] + g(CofiniteSet.finite(head[s:t]))
            if best[t] is None or better(cand, best[t][0]):
                best[t] = (cand, s)
    top = None
    for t in range(k + 1):
        rest = _intersect(a, CofiniteSet.co(head[:t]))
        empty_rest = rest.is_finite and not rest.support
        cand = best[t][0] + (ZERO if empty_rest else g(rest))
        if top is None or better(cand, top[0]):
            top = (cand, t, None if empty_rest else rest)
    value, t, rest = top
    blocks = [] if rest is None else [rest]
    while t:
        s = best[t][1]
        blocks.append(CofiniteSet.finite(head[s:t]))
        t = s
    witness = tuple(sorted(blocks, key=lambda b: next(b.elements(), 0)))
    complete = a.is_finite and k == len(a.support) and k <= 2
    if complete:
        tag = EXACT
    else:
        tag = LowerBound(depth) if maximize else UpperBound(depth)
    return Optimum(value, witness, tag)


@dataclass(frozen=True)
class SymbolicCharge:
    """A catalogued charge on the cofinite algebra, plus finitely many point masses.

    Rules, for a finite set ``A`` and a cofinite set ``A``:

    ``card-cocard``  ``card(A)``  / ``-card(ℕ \\ A)``
    ``card-neginf``  ``card(A)``  / ``-inf``
    ``zero``         ``0``        / ``0``

    The point masses ``masses[k]`` are added to every set containing ``k``.
    """

    rule: str
    masses: tuple = field(default=())

    def __post_init__(self):
        if self.rule not in RULES:
            raise UnsupportedRule(f"unknown rule {self.rule!r}; expected one of {RULES}")
        if isinstance(self.masses, Mapping):
            items = self.masses.items()
        else:
            items = self.masses
        clean = []
        for k, v in sorted(items):
            if not isinstance(k, int) or k < FIRST:
                raise ValueError(f"point mass at {k!r} is not a natural")
            v = to_xreal(v)
            if not v.is_finite:
                raise ValueError("point masses must be finite")
            if v != 0:
                clean.append((k, v.fraction))
        object.__setattr__(self, "masses", tuple(clean))

    @functools.cached_property
    def _mass(self) -> dict[int, Fraction]:
        return dict(self.masses)

    @property
    def base(self) -> int:
        """Value of a singleton without a point mass."""
        return 0 if self.rule == "zero" else 1

    def point_value(self, k: int) -> Fraction:
        """Value on the singleton ``{k}``."""
        return self.base + self._mass.get(k, Fraction(0))

    def finite_sum(self, pts: frozenset, f: Callable[[Fraction], Fraction] = lambda v: v) -> Fraction:
        """``sum f(point_value(k))`` over the finite set ``pts``."""
        mass = self._mass
        hit = [k for k in mass if k in pts] if len(mass) < len(pts) else [k for k in pts if k in mass]
        plain = (len(pts) - len(hit)) * f(Fraction(self.base))
        return plain + sum((f(self.base + mass[k]) for k in hit), Fraction(0))

    def __call__(self, a: CofiniteSet) -> ExtReal:
        mass = self._mass
        if a.is_finite:
            return ExtReal(self.finite_sum(a.support))
        total = sum(mass.values(), Fraction(0))
        outside = sum((mass.get(k, 0) for k in a.support), Fraction(0))
        if self.rule == "card-neginf":
            return NEG_INF
        if self.rule == "card-cocard":
            return ExtReal(-len(a.support) + total - outside)
        return ExtReal(total - outside)

    @property
    def attains(self) -> set[int]:
        """Signs of the infinities this charge can take."""
        return {-1} if self.rule == "card-neginf" else set()

    def __neg__(self) -> "_Negated":
        return _Negated(self)

    def __str__(self) -> str:
        if not self.masses:
            return self.rule
        extra = ", ".join(f"{k}:{ExtReal(v)}" for k, v in self.masses)
        return f"{self.rule}+{{{extra}}}"


@dataclass(frozen=True)
class _Negated:
    base: SymbolicCharge

    def __call__(self, a: CofiniteSet) -> ExtReal:
        return -self.base(a)


class _ClosedPart:
    """Closed form of the positive (``sign=+1``) or negative (``sign=-1``) part."""

    def __init__(self, charge: SymbolicCharge, sign: int):
        self.charge = charge
        self.sign = sign

    def __call__(self, a: CofiniteSet) -> ExtReal:
        ch = self.charge
        sign = self.sign
        if a.is_finite:
            pts = a.support
        elif ch.rule == "zero":
            pts = frozenset(k for k, _ in ch.masses if k in a)
        else:
            # infinitely many points of value 1, and cofinite blocks with
            # values tending to -inf, so both parts blow up
            return POS_INF
        return ExtReal(ch.finite_sum(pts, lambda v: max(sign * v, 0)))

    def __repr__(self) -> str:
        return f"{'positive' if self.sign > 0 else 'negative'}-part({self.charge})"


def jordan_symbolic(charge: SymbolicCharge) -> tuple[Callable, Callable]:
    """Closed forms ``(positive part, negative part)`` of a built-in charge or its negation."""
    if isinstance(charge, _Negated):
        pos, negp = jordan_symbolic(charge.base)
        return negp, pos
    if not isinstance(charge, SymbolicCharge):
        raise UnsupportedRule(f"no closed form for {charge!r}")
    return _ClosedPart(charge, 1), _ClosedPart(charge, -1)


def is_symbolic(presentation) -> bool:
    return isinstance(presentation, (SymbolicCharge, _Negated))


def variation_lower_bound(charge: Callable, a: CofiniteSet, depth: int) -> ExtReal:
    """Best ``sum |mu(C)|`` over run partitions of ``a`` with cuts among its first ``depth`` elements."""
    if depth < 1:
        raise ValueError("depth must be at least 1")
    return run_partition_search(lambda c: abs(charge(c)), a, depth, True).value
