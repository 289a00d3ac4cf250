"""Semi-rings of sets: the backend contract and the explicit finite backend.

An explicit backend stores its members as bitsets over a fixed ordering of
the ground set. Partitions of a member are found by exact-cover search in
which every new block must contain the smallest element not yet covered;
this produces each partition exactly once, in a fixed order.
"""

from __future__ import annotations

import abc
from dataclasses import dataclass
from typing import Any, Callable, Hashable, Iterable, Iterator, NamedTuple, Sequence

from .errors import InvalidPartition, NotAMember, NotASemiRing, NotInRing
from .xreal import ExtReal, ZERO

__all__ = [
    "Partition",
    "RingMember",
    "Optimum",
    "Exact",
    "LowerBound",
    "UpperBound",
    "EXACT",
    "SemiRing",
    "FiniteSemiRing",
    "validate_semiring",
    "power_set",
    "partition_semiring",
    "enumerate_partitions",
    "generate_ring",
    "ring_membership",
    "common_refinement",
]


@dataclass(frozen=True)
class Partition:
    """A finite list of pairwise disjoint members whose union is ``target``.

    Blocks are held in the backend's canonical order. Use
    :meth:`SemiRing.partition` to build a checked instance.
    """

    target: Any
    blocks: tuple


@dataclass(frozen=True)
class RingMember:
    """A member of the generated ring: a finite disjoint list of semi-ring members."""

    blocks: tuple


@dataclass(frozen=True)
class Exact:
    def __str__(self) -> str:
        return "exact"


@dataclass(frozen=True)
class LowerBound:
    depth: int

    def __str__(self) -> str:
        return f"lower-bound(depth={self.depth})"


@dataclass(frozen=True)
class UpperBound:
    depth: int

    def __str__(self) -> str:
        return f"upper-bound(depth={self.depth})"


EXACT = Exact()


class Optimum(NamedTuple):
    value: ExtReal
    witness: tuple | None
    exactness: Exact | LowerBound | UpperBound = EXACT


# A "block function" assigns an extended real to every member; optimizers
# maximise or minimise its sum over the partitions of a member.
BlockFunction = Callable[[Any], ExtReal]


class SemiRing(abc.ABC):
    """Uniform presentation of a semi-ring of subsets of some ground set."""

    #: True when ``members()`` is a complete, finite enumeration.
    finite: bool = False

    @property
    @abc.abstractmethod
    def empty(self) -> Hashable: ...

    @abc.abstractmethod
    def is_member(self, a) -> bool: ...

    @abc.abstractmethod
    def is_empty(self, a) -> bool: ...

    @abc.abstractmethod
    def intersect(self, a, b): ...

    @abc.abstractmethod
    def difference(self, a, b) -> list:
        """Pairwise disjoint members whose union is ``a \\ b``."""

    @abc.abstractmethod
    def partitions(self, a, max_blocks: int | None = None) -> Iterator[Partition]: ...

    @abc.abstractmethod
    def members(self) -> Iterator: ...

    @abc.abstractmethod
    def is_partition(self, target, blocks: Sequence) -> bool: ...

    @abc.abstractmethod
    def sort_key(self, a): ...

    @abc.abstractmethod
    def optimizer(
        self, g: BlockFunction, maximize: bool = True, depth: int | None = None
    ) -> Callable[[Any], Optimum]:
        """Return ``a -> Optimum`` giving the best value of ``sum g(C)`` over partitions of ``a``."""

    def fmt(self, a) -> str:
        return str(a)

    def contains_empty(self) -> bool:
        return self.is_member(self.empty)

    def partition(self, target, blocks: Iterable) -> Partition:
        blocks = tuple(sorted((b for b in blocks), key=self.sort_key))
        if not self.is_member(target) or not all(self.is_member(b) for b in blocks):
            raise InvalidPartition("blocks and target must be members")
        if any(self.is_empty(b) for b in blocks):
            raise InvalidPartition("empty block")
        if not self.is_partition(target, blocks):
            raise InvalidPartition(f"blocks do not partition {self.fmt(target)}")
        return Partition(target, blocks)

    def fmt_partition(self, blocks: Iterable) -> str:
        blocks = list(blocks)
        if not blocks:
            return "(empty)"
        return " | ".join(self.fmt(b) for b in blocks)


def _lowbit(x: int) -> int:
    return (x & -x).bit_length() - 1


class FiniteSemiRing(SemiRing):
    """A semi-ring given by an explicit family of subsets of a finite ground set.

    Members are ``int`` bitsets: bit ``i`` stands for ``ground[i]``. Build
    instances with :func:`validate_semiring`; the constructor trusts its input.
    """

    finite = True

    def __init__(self, ground: Sequence[Hashable], masks: Iterable[int]):
        self.ground = tuple(ground)
        self._index = {x: i for i, x in enumerate(self.ground)}
        self._members = tuple(sorted(set(masks) | {0}))
        self._member_set = frozenset(self._members)
        self._cands: dict[int, list[int]] = {}
        for m in self._members:
            if m:
                self._cands.setdefault(_lowbit(m), []).append(m)
        self._ring: dict[int, RingMember] | None = None
        self._ring_backend: FiniteSemiRing | None = None

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FiniteSemiRing)
            and other.ground == self.ground
            and other._member_set == self._member_set
        )

    def __hash__(self) -> int:
        return hash((self.ground, self._member_set))

    def __repr__(self) -> str:
        return f"FiniteSemiRing(ground={list(self.ground)}, members={len(self._members)})"

    # -- encoding ---------------------------------------------------------

    def mask(self, labels: Iterable[Hashable]) -> int:
        m = 0
        for x in labels:
            try:
                m |= 1 << self._index[x]
            except KeyError:
                raise NotAMember(f"{x!r} is not in the ground set") from None
        return m

    def member(self, labels: Iterable[Hashable]) -> int:
        m = self.mask(labels)
        if m not in self._member_set:
            raise NotAMember(f"{self.fmt(m)} is not a member")
        return m

    def labels(self, mask: int) -> tuple:
        return tuple(x for i, x in enumerate(self.ground) if mask >> i & 1)

    def fmt(self, a) -> str:
        if isinstance(a, RingMember):
            return " + ".join(self.fmt(b) for b in a.blocks) or "{}"
        return "{" + ",".join(str(x) for x in self.labels(a)) + "}"

    @property
    def full(self) -> int:
        return (1 << len(self.ground)) - 1

    # -- contract ---------------------------------------------------------

    @property
    def empty(self) -> int:
        return 0

    def is_member(self, a) -> bool:
        return a in self._member_set

    def is_empty(self, a) -> bool:
        return a == 0

    def members(self) -> Iterator[int]:
        return iter(self._members)

    def sort_key(self, a: int) -> tuple[int, int]:
        return (_lowbit(a) if a else -1, a)

    def intersect(self, a: int, b: int) -> int:
        c = a & b
        if c not in self._member_set:
            raise NotAMember(f"{self.fmt(a)} ∩ {self.fmt(b)} = {self.fmt(c)} is not a member")
        return c

    def difference(self, a: int, b: int) -> list[int]:
        rest = a & ~b
        for cover in self._exact_covers(rest, None):
            return list(cover)
        raise NotASemiRing("difference", (a, b))

    def is_partition(self, target: int, blocks: Sequence[int]) -> bool:
        seen = 0
        for b in blocks:
            if seen & b:
                return False
            seen |= b
        return seen == target

    def _exact_covers(self, remaining: int, max_blocks: int | None) -> Iterator[tuple[int, ...]]:
        if remaining == 0:
            yield ()
            return
        if max_blocks is not None and max_blocks <= 0:
            return
        nxt = None if max_blocks is None else max_blocks - 1
        for m in self._cands.get(_lowbit(remaining), ()):
            if m & ~remaining == 0:
                for rest in self._exact_covers(remaining ^ m, nxt):
                    yield (m,) + rest

    def partitions(self, a: int, max_blocks: int | None = None) -> Iterator[Partition]:
        if a not in self._member_set:
            raise NotAMember(f"{self.fmt(a)} is not a member")
        for blocks in self._exact_covers(a, max_blocks):
            yield Partition(a, blocks)

    def optimizer(self, g: BlockFunction, maximize: bool = True, depth: int | None = None):
        return _CoverDP(self, g, maximize)

    # -- ring -------------------------------------------------------------

    def ring_table(self) -> dict[int, RingMember]:
        """All members of the generated ring, keyed by bitset, with canonical decompositions."""
        if self._ring is None:
            ring = {0: RingMember(())}
            frontier = [0]
            atoms = [m for m in self._members if m]
            while frontier:
                nxt = []
                for r in frontier:
                    for m in atoms:
                        u = r | m
                        if not r & m and u not in ring:
                            ring[u] = self.ring_membership(u)
                            nxt.append(u)
                frontier = nxt
            self._ring = dict(sorted(ring.items()))
        return self._ring

    def ring_membership(self, subset) -> RingMember:
        mask = subset if isinstance(subset, int) else self.mask(subset)
        for cover in self._exact_covers(mask, None):
            return RingMember(cover)
        raise NotInRing(self.labels(mask))

    def ring_mask(self, r: RingMember) -> int:
        m = 0
        for b in r.blocks:
            m |= b
        return m

    def ring_backend(self) -> "FiniteSemiRing":
        """The generated ring, presented as a semi-ring over the same ground set."""
        if self._ring_backend is None:
            self._ring_backend = FiniteSemiRing(self.ground, self.ring_table().keys())
        return self._ring_backend


class _CoverDP:
    """Memoised exact-cover optimisation over the remaining-set lattice.

    ``best(R)`` is the optimum of ``sum g(C)`` over exact covers of the bitset
    ``R`` by members. Candidates are scanned in enumeration order and replaced
    only on strict improvement, so the witness is the first optimal partition
    in enumeration order.
    """

    def __init__(self, backend: FiniteSemiRing, g: BlockFunction, maximize: bool):
        self.backend = backend
        self.g = g
        self.maximize = maximize
        self._gcache: dict[int, ExtReal] = {}
        self._memo: dict[int, tuple[ExtReal, int] | None] = {0: (ZERO, 0)}

    def _g(self, m: int) -> ExtReal:
        v = self._gcache.get(m)
        if v is None:
            v = self._gcache[m] = self.g(m)
        return v

    def _best(self, rem: int) -> tuple[ExtReal, int] | None:
        hit = self._memo.get(rem, False)
        if hit is not False:
            return hit
        best = None
        for m in self.backend._cands.get(_lowbit(rem), ()):
            if m & ~rem:
                continue
            sub = self._best(rem ^ m)
            if sub is None:
                continue
            val = self._g(m) + sub[0]
            if best is None or (val > best[0] if self.maximize else val < best[0]):
                best = (val, m)
        self._memo[rem] = best
        return best

    def __call__(self, a: int) -> Optimum:
        if not self.backend.is_member(a):
            raise NotAMember(f"{self.backend.fmt(a)} is not a member")
        found = self._best(a)
        blocks = []
        rem = a
        while rem:
            step = self._best(rem)
            blocks.append(step[1])
            rem ^= step[1]
        return Optimum(found[0], tuple(blocks))


def validate_semiring(ground: Sequence[Hashable], family: Iterable[Iterable[Hashable]]) -> FiniteSemiRing:
    """Check the semi-ring axioms and return the explicit backend.

    Raises :class:`NotASemiRing` naming the failed axiom and a witness pair,
    with members given as label tuples.
    """
    ground = tuple(ground)
    if len(set(ground)) != len(ground):
        raise ValueError("ground labels must be distinct")
    probe = FiniteSemiRing(ground, ())
    masks = sorted({probe.mask(s) for s in family})
    if 0 not in masks:
        raise NotASemiRing("empty", (), "the empty set is not in the family")
    backend = FiniteSemiRing(ground, masks)
    lab = backend.labels
    members = backend._members
    for i, a in enumerate(members):
        for b in members[i + 1:]:
            if a & b not in backend._member_set:
                raise NotASemiRing(
                    "intersection",
                    (lab(a), lab(b)),
                    f"{backend.fmt(a)} ∩ {backend.fmt(b)} = {backend.fmt(a & b)} is missing",
                )
    for a in members:
        for b in members:
            if a & ~b and next(backend._exact_covers(a & ~b, None), None) is None:
                raise NotASemiRing(
                    "difference",
                    (lab(a), lab(b)),
                    f"{backend.fmt(a)} \\ {backend.fmt(b)} is not a disjoint union of members",
                )
    return backend


def power_set(ground: Sequence[Hashable]) -> FiniteSemiRing:
    return FiniteSemiRing(ground, range(1 << len(ground)))


def partition_semiring(ground: Sequence[Hashable], blocks: Iterable[Iterable[Hashable]]) -> FiniteSemiRing:
    """The semi-ring ``{∅, A_1, ..., A_n}`` for a partition ``A_1..A_n`` of the ground set."""
    blocks = [list(b) for b in blocks]
    backend = validate_semiring(ground, [[]] + blocks)
    if backend.mask(x for b in blocks for x in b) != backend.full:
        raise ValueError("blocks must cover the ground set")
    return backend


def enumerate_partitions(backend: SemiRing, a, max_blocks: int | None = None) -> Iterator[Partition]:
    return backend.partitions(a, max_blocks)


def generate_ring(backend: SemiRing, bound=None) -> Iterator[RingMember]:
    """Stream the generated ring.

    Explicit backends yield every ring member in bitset order; structured
    backends implement ``generate_ring(bound)`` themselves.
    """
    if isinstance(backend, FiniteSemiRing):
        yield from backend.ring_table().values()
    else:
        yield from backend.generate_ring(bound)


def ring_membership(backend: SemiRing, subset) -> RingMember:
    return backend.ring_membership(subset)


def common_refinement(backend: SemiRing, p: Partition, q: Partition) -> Partition:
    if p.target != q.target:
        raise InvalidPartition("partitions of different members")
    blocks = []
    for b in p.blocks:
        for c in q.blocks:
            d = backend.intersect(b, c)
            if not backend.is_empty(d):
                blocks.append(d)
    return backend.partition(p.target, blocks)
