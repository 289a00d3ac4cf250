"""Set functions and charges on semi-ring backends.

A :class:`SetFunction` is any map from the members of a backend to extended
reals. A :class:`Charge` is a set function that has been checked to vanish
on the empty set, to be finitely additive, and to avoid one of the two
infinities; which one it avoids is stored as its :class:`Polarity`.
"""

from __future__ import annotations

import enum
import itertools
from fractions import Fraction
from typing import Any, Callable, Iterable, Mapping, Sequence

from .cofinite import CofiniteAlgebra, SymbolicCharge
from .errors import (
    AttainsBothInfinities,
    EmptyNotZero,
    Inadmissible,
    InvalidPartition,
    NotAdditive,
    NotAMember,
    UndefinedSum,
    WitnessFailure,
)
from .intervals import ChainSemiRing, GridIntervals, Interval, NatIntervals
from .setsys import FiniteSemiRing, RingMember, SemiRing
from .xreal import ExtReal, NEG_INF, POS_INF, ZERO, inf, sup, to_xreal, xsum

__all__ = [
    "Polarity",
    "SetFunction",
    "Charge",
    "validate_charge",
    "explicit_charge",
    "point_mass_charge",
    "chain_charge",
    "symbolic_charge",
    "zero_charge",
    "check_admissibility",
    "check_dual_admissibility",
    "extend_to_ring",
    "RingExtension",
    "check_countable_additivity_witness",
]


class Polarity(enum.Enum):
    """Which infinities a charge may attain."""

    FINITE = "finite"
    PLUS = "+inf"  # may attain +inf, never -inf
    MINUS = "-inf"  # may attain -inf, never +inf

    @property
    def avoids_neg_inf(self) -> bool:
        return self is not Polarity.MINUS

    @property
    def avoids_pos_inf(self) -> bool:
        return self is not Polarity.PLUS

    def negated(self) -> "Polarity":
        return {Polarity.PLUS: Polarity.MINUS, Polarity.MINUS: Polarity.PLUS}.get(self, self)

    @classmethod
    def of(cls, has_pos: bool, has_neg: bool) -> "Polarity":
        if has_pos and has_neg:
            raise ValueError("both infinities")
        return cls.PLUS if has_pos else cls.MINUS if has_neg else cls.FINITE


class SetFunction:
    """An extended-real valued function on the members of ``backend``."""

    def __init__(self, backend: SemiRing, fn: Callable[[Any], ExtReal], name: str = ""):
        self.backend = backend
        self._fn = fn
        self.name = name

    def __call__(self, a) -> ExtReal:
        return self._fn(a)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.name or '?'} on {self.backend!r})"

    def __neg__(self) -> "SetFunction":
        return SetFunction(self.backend, lambda a: -self(a), f"-{self.name}")

    def __add__(self, other: "SetFunction") -> "SetFunction":
        return SetFunction(self.backend, lambda a: self(a) + other(a), f"({self.name}+{other.name})")

    def __sub__(self, other: "SetFunction") -> "SetFunction":
        return self + (-other)

    def scale(self, c) -> "SetFunction":
        c = to_xreal(c)
        return SetFunction(self.backend, lambda a: c * self(a), f"{c}*{self.name}")

    def table(self, members: Iterable | None = None) -> dict:
        """Values on ``members`` (default: every member of a finite backend)."""
        if members is None:
            if not self.backend.finite:
                raise ValueError("backend is not finite; pass members explicitly")
            members = self.backend.members()
        return {a: self(a) for a in members}


class Charge(SetFunction):
    """A validated charge. Construct through the factory functions below."""

    def __init__(self, backend, fn, polarity: Polarity, name: str = "", presentation: Any = None):
        super().__init__(backend, fn, name)
        self.polarity = polarity
        self.presentation = presentation

    def __neg__(self) -> "Charge":
        pres = self.presentation
        if isinstance(pres, SymbolicCharge):
            pres = -pres
        return Charge(self.backend, lambda a: -self(a), self.polarity.negated(), f"-{self.name}", pres)

    def __add__(self, other):
        if isinstance(other, Charge) and {self.polarity, other.polarity} != {Polarity.PLUS, Polarity.MINUS}:
            pol = self.polarity if self.polarity is not Polarity.FINITE else other.polarity
            return Charge(self.backend, lambda a: self(a) + other(a), pol, f"({self.name}+{other.name})")
        return super().__add__(other)

    def scale(self, c):
        c = to_xreal(c)
        if not c.is_finite:
            return super().scale(c)
        pol = self.polarity if c > 0 else self.polarity.negated() if c < 0 else Polarity.FINITE
        return Charge(self.backend, lambda a: c * self(a), pol, f"{c}*{self.name}")


# -- explicit backends -------------------------------------------------------


def _as_mask(backend: FiniteSemiRing, key) -> int:
    if isinstance(key, int) and not isinstance(key, bool):
        return key
    return backend.mask(key)


def validate_charge(backend: SemiRing, valuation, name: str = "") -> Charge:
    """Check a valuation and wrap it as a :class:`Charge`.

    Explicit backends take a mapping from members (bitsets or label
    collections) to values and are checked exhaustively over every partition
    of every member. Interval backends take cell weights; cofinite backends
    take a :class:`SymbolicCharge`.
    """
    if isinstance(backend, FiniteSemiRing):
        return explicit_charge(backend, valuation, name)
    if isinstance(backend, ChainSemiRing):
        return chain_charge(backend, valuation, name)
    if isinstance(backend, CofiniteAlgebra):
        if not isinstance(valuation, SymbolicCharge):
            raise TypeError("cofinite charges must be SymbolicCharge rules")
        return symbolic_charge(valuation.rule, dict(valuation.masses), name)
    raise TypeError(f"unsupported backend {backend!r}")


def explicit_charge(backend: FiniteSemiRing, valuation: Mapping, name: str = "", check: bool = True) -> Charge:
    table: dict[int, ExtReal] = {}
    for key, v in valuation.items():
        table[_as_mask(backend, key)] = to_xreal(v)
    table.setdefault(0, ZERO)
    missing = [m for m in backend.members() if m not in table]
    if missing:
        raise NotAMember(f"valuation is missing member {backend.fmt(missing[0])}")
    extra = [m for m in table if not backend.is_member(m)]
    if extra:
        raise NotAMember(f"{backend.fmt(extra[0])} is not a member")
    if table[0] != 0:
        raise EmptyNotZero(table[0])
    pos = next((m for m in backend.members() if table[m].is_pos_inf), None)
    neg = next((m for m in backend.members() if table[m].is_neg_inf), None)
    if pos is not None and neg is not None:
        raise AttainsBothInfinities(pos, neg)
    if check:
        for a in backend.members():
            for p in backend.partitions(a):
                rhs = xsum(table[c] for c in p.blocks)
                if rhs != table[a]:
                    raise NotAdditive(a, p, table[a], rhs)

    def value(a):
        try:
            return table[a]
        except KeyError:
            raise NotAMember(f"{a!r} is not a member") from None

    return Charge(backend, value, Polarity.of(pos is not None, neg is not None), name, table)


def point_mass_charge(backend: FiniteSemiRing, masses: Mapping, name: str = "") -> Charge:
    """The charge ``A -> sum of masses[x] for x in A``; unlisted points weigh 0."""
    w = {backend.mask([x]): to_xreal(v) for x, v in masses.items()}
    pos = [m for m, v in w.items() if v.is_pos_inf]
    neg = [m for m, v in w.items() if v.is_neg_inf]
    if pos and neg:
        raise AttainsBothInfinities(pos[0], neg[0])
    table = {a: xsum(v for m, v in w.items() if a & m) for a in backend.members()}
    return explicit_charge(backend, table, name, check=False)


# -- interval backends -------------------------------------------------------


class _RangeSum:
    """Exact range sums of extended-real cell weights via prefix tables."""

    def __init__(self, weight_at: Callable[[int], ExtReal], size: int | None):
        self._w = weight_at
        self._size = size
        self._fin = [Fraction(0)]
        self._pos = [0]
        self._neg = [0]

    def _extend(self, n: int) -> None:
        if self._size is not None and n > self._size:
            raise NotAMember("range beyond the grid")
        while len(self._fin) <= n:
            v = self._w(len(self._fin) - 1)
            self._fin.append(self._fin[-1] + (v.fraction if v.is_finite else 0))
            self._pos.append(self._pos[-1] + v.is_pos_inf)
            self._neg.append(self._neg[-1] + v.is_neg_inf)

    def total(self, i: int, j: int) -> ExtReal:
        if j <= i:
            return ZERO
        self._extend(j)
        p = self._pos[j] - self._pos[i]
        n = self._neg[j] - self._neg[i]
        if p and n:
            raise UndefinedSum("range mixes +inf and -inf weights")
        if p:
            return POS_INF
        if n:
            return NEG_INF
        return ExtReal(self._fin[j] - self._fin[i])


def chain_charge(backend: ChainSemiRing, weights, name: str = "") -> Charge:
    """Charge on an interval backend given by weights on the atomic cells.

    On ``NatIntervals`` the weights are indexed by naturals ``k`` (the cell
    ``{k}``) and may be a mapping (missing keys weigh 0) or a callable
    returning finite rationals. On ``GridIntervals`` they are a sequence or
    mapping indexed by cell number.
    """
    if isinstance(backend, NatIntervals):
        first = backend.first
        if callable(weights) and not isinstance(weights, Mapping):
            def weight_at(i: int) -> ExtReal:
                v = to_xreal(weights(first + i))
                if not v.is_finite:
                    raise ValueError("callable weights must be finite")
                return v

            pol = Polarity.FINITE
        else:
            wmap = {int(k): to_xreal(v) for k, v in dict(weights).items()}
            if any(k < first for k in wmap):
                raise NotAMember("weight below the first natural")
            pol = _polarity_of(wmap.values())

            def weight_at(i: int) -> ExtReal:
                return wmap.get(first + i, ZERO)

        rs = _RangeSum(weight_at, None)

        def index(x):
            return x - first
    elif isinstance(backend, GridIntervals):
        ncell = len(backend.grid) - 1
        if isinstance(weights, Mapping):
            cells = [to_xreal(weights.get(i, 0)) for i in range(ncell)]
        else:
            cells = [to_xreal(v) for v in weights]
        if len(cells) != ncell:
            raise ValueError(f"expected {ncell} cell weights, got {len(cells)}")
        pol = _polarity_of(cells)
        rs = _RangeSum(cells.__getitem__, ncell)
        index = backend.index
    else:
        raise TypeError(f"not an interval backend: {backend!r}")

    def value(a: Interval) -> ExtReal:
        if a.is_empty:
            return ZERO
        if not backend.is_member(a):
            raise NotAMember(f"{a!r} is not a member")
        return rs.total(index(a.lo), index(a.hi))

    return Charge(backend, value, pol, name, weights)


def _polarity_of(values: Iterable[ExtReal]) -> Polarity:
    vals = list(values)
    has_pos = any(v.is_pos_inf for v in vals)
    has_neg = any(v.is_neg_inf for v in vals)
    if has_pos and has_neg:
        raise AttainsBothInfinities("+inf weight", "-inf weight")
    return Polarity.of(has_pos, has_neg)


# -- cofinite backend --------------------------------------------------------

COFINITE = CofiniteAlgebra()


def symbolic_charge(rule: str, masses: Mapping | None = None, name: str = "") -> Charge:
    sc = SymbolicCharge(rule, dict(masses or {}))
    pol = Polarity.MINUS if sc.attains == {-1} else Polarity.FINITE
    return Charge(COFINITE, sc, pol, name or str(sc), sc)


def zero_charge(backend: SemiRing) -> Charge:
    if isinstance(backend, CofiniteAlgebra):
        return symbolic_charge("zero", name="0")
    return Charge(backend, lambda a: ZERO, Polarity.FINITE, "0")


# -- family-level checks -----------------------------------------------------


def _representative_members(backend: SemiRing, limit: int) -> Iterable:
    if backend.finite:
        return backend.members()
    return itertools.islice(backend.members(), limit)


def check_admissibility(family: Sequence[SetFunction], members: Iterable | None = None, limit: int = 500) -> bool:
    """Confirm ``sup_j nu_j(A) > -inf`` for every member ``A``.

    A family containing a charge that never takes -inf is admissible outright.
    Otherwise every member of a finite backend is scanned; unbounded backends
    are scanned over their first ``limit`` members unless ``members`` is given.
    """
    if not family:
        raise ValueError("empty family")
    if any(isinstance(nu, Charge) and nu.polarity.avoids_neg_inf for nu in family):
        return True
    backend = family[0].backend
    for a in members if members is not None else _representative_members(backend, limit):
        if sup(nu(a) for nu in family).is_neg_inf:
            raise Inadmissible(a)
    return True


def check_dual_admissibility(family: Sequence[SetFunction], members: Iterable | None = None, limit: int = 500) -> bool:
    """Confirm ``inf_j nu_j(A) < +inf`` for every member ``A``."""
    if any(isinstance(nu, Charge) and nu.polarity.avoids_pos_inf for nu in family):
        return True
    backend = family[0].backend
    for a in members if members is not None else _representative_members(backend, limit):
        if inf(nu(a) for nu in family).is_pos_inf:
            raise Inadmissible(a, dual=True)
    return True


# -- ring extension ----------------------------------------------------------


class RingExtension:
    """The unique additive extension of a charge to the generated ring."""

    def __init__(self, charge: Charge):
        self.charge = charge
        self.backend = charge.backend

    def __call__(self, r) -> ExtReal:
        blocks = r.blocks if isinstance(r, RingMember) else tuple(r)
        be = self.backend
        for x, y in itertools.combinations(blocks, 2):
            if not be.is_empty(be.intersect(x, y)):
                raise InvalidPartition(f"{be.fmt(x)} and {be.fmt(y)} overlap")
        return xsum(self.charge(b) for b in blocks)

    def on_ring_backend(self, check: bool = False) -> Charge:
        """The extension as a charge on the ring backend (explicit backends only)."""
        be = self.backend
        if not isinstance(be, FiniteSemiRing):
            raise TypeError("ring backends exist only for explicit semi-rings")
        ring = be.ring_backend()
        table = {m: self(r) for m, r in be.ring_table().items()}
        name = f"{self.charge.name}^"
        return explicit_charge(ring, table, name, check=check)


def extend_to_ring(charge: Charge) -> RingExtension:
    return RingExtension(charge)


# -- countable additivity ----------------------------------------------------


def check_countable_additivity_witness(
    charge: SetFunction,
    target,
    pieces: Iterable,
    tail_bound: Callable[[int], Any],
    max_terms: int = 100,
) -> int:
    """Check ``|mu(target) - sum_{n<=N} mu(piece_n)| <= tail_bound(N)`` for ``N = 1..max_terms``.

    Pieces must be pairwise disjoint members contained in ``target``; the
    caller guarantees their union is ``target`` and that ``tail_bound`` tends
    to 0. Returns the number of truncations checked, or raises
    :class:`WitnessFailure` at the first failing one.
    """
    be = charge.backend
    total = charge(target)
    seen: list = []
    partial = ZERO
    n = 0
    for piece in itertools.islice(pieces, max_terms):
        n += 1
        if be.intersect(piece, target) != piece:
            raise InvalidPartition(f"piece {be.fmt(piece)} is not inside the target")
        for q in seen:
            if not be.is_empty(be.intersect(piece, q)):
                raise InvalidPartition(f"pieces {be.fmt(q)} and {be.fmt(piece)} overlap")
        seen.append(piece)
        partial = partial + charge(piece)
        bound = to_xreal(tail_bound(n))
        if total.is_finite and partial.is_finite:
            gap = abs(total - partial)
        else:
            gap = ZERO if total == partial else POS_INF
        if gap > bound:
            raise WitnessFailure(n, total, partial, bound)
    return n
