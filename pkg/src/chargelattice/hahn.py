"""ε-Hahn decompositions: split a member into a part where the charge is
at most ε and a part where it is at least -ε.

The split comes from a partition ``P`` of the member on which
``sum_C min(mu+(C), mu-(C)) < ε``. Blocks where the positive part does not
exceed the negative part go to ``H``, the rest to the complement. Such a
partition exists exactly when ``min(mu+(a), mu-(a))`` is finite; when both
parts are infinite no decomposition exists and :class:`Impossible` is
returned instead.

Which good partition is used is a policy choice: the first one in
enumeration order on explicit backends, and the minimiser of the block sum
(split-point DP or run-partition search) elsewhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from .charge import Charge, RingExtension
from .errors import InvalidPartition, SearchExhausted, ViolatingSubset
from .lattice import Jordan, Meet, jordan, meet_details
from .setsys import FiniteSemiRing, Partition, RingMember
from .xreal import ExtReal, xmin, xsum

__all__ = ["HahnCertificate", "Impossible", "epsilon_hahn", "verify_hahn"]


@dataclass(frozen=True)
class HahnCertificate:
    """``h`` and ``complement`` split ``member``; built from ``partition``.

    ``negative_side`` lists the blocks with ``mu+(C) <= mu-(C)`` (they make
    up ``h``), ``positive_side`` the others.
    """

    member: Any
    epsilon: Fraction
    h: RingMember
    complement: RingMember
    partition: Partition
    negative_side: tuple
    positive_side: tuple
    slack: ExtReal  # sum over the partition of min(mu+, mu-)

    def swapped(self) -> "HahnCertificate":
        return HahnCertificate(
            self.member, self.epsilon, self.complement, self.h, self.partition,
            self.positive_side, self.negative_side, self.slack,
        )


@dataclass(frozen=True)
class Impossible:
    """No ε-Hahn decomposition exists: both Jordan parts are infinite on ``member``."""

    member: Any
    positive: ExtReal
    negative: ExtReal
    verdict: Meet = Meet.INFINITE


def _epsilon(epsilon) -> Fraction:
    eps = Fraction(epsilon)
    if eps <= 0:
        raise ValueError(f"epsilon must be positive, got {eps}")
    return eps


def _min_part(parts: Jordan):
    pos, negp = parts.positive, parts.negative
    return lambda c: xmin(pos(c), negp(c))


def _good_partition(mu: Charge, a, eps: Fraction, parts: Jordan, depth):
    be = mu.backend
    g = _min_part(parts)
    if isinstance(be, FiniteSemiRing):
        for p in be.partitions(a):
            s = xsum(g(c) for c in p.blocks)
            if s < eps:
                return p, s
        raise SearchExhausted(f"no partition of {be.fmt(a)} has min-sum below {eps}")
    opt = be.optimizer(g, False, depth)(a)
    if opt.witness is None or not opt.value < eps:
        raise SearchExhausted(
            f"best partition of {be.fmt(a)} found has min-sum {opt.value} ({opt.exactness}), need < {eps}"
        )
    return Partition(a, tuple(opt.witness)), opt.value


def epsilon_hahn(mu: Charge, a, epsilon, depth: int | None = None, parts: Jordan | None = None):
    """Return a :class:`HahnCertificate` for ``mu`` on ``a``, or :class:`Impossible`.

    Raises :class:`SearchExhausted` when a decomposition exists but the
    bounded search on an unbounded backend did not reach a good enough
    partition (raise ``depth``).
    """
    eps = _epsilon(epsilon)
    parts = parts or jordan(mu, depth)
    details = meet_details(mu, a, depth, parts)
    if details.verdict is Meet.INFINITE:
        return Impossible(a, details.positive, details.negative)
    p, slack = _good_partition(mu, a, eps, parts, depth)
    pos, negp = parts.positive, parts.negative
    low = tuple(c for c in p.blocks if pos(c) <= negp(c))
    high = tuple(c for c in p.blocks if not pos(c) <= negp(c))
    return HahnCertificate(a, eps, RingMember(low), RingMember(high), p, low, high, slack)


def _check_split(be, cert: HahnCertificate) -> None:
    blocks = tuple(cert.h.blocks) + tuple(cert.complement.blocks)
    if not be.is_partition(cert.member, blocks):
        raise InvalidPartition(f"h and complement do not split {be.fmt(cert.member)}")


def verify_hahn(mu: Charge, cert: HahnCertificate, parts: Jordan | None = None) -> bool:
    """Check a certificate; return True or raise :class:`ViolatingSubset`.

    Explicit backends: every ring member ``B`` inside ``h`` must have
    ``mu(B) <= ε`` and every ring member ``D`` inside the complement
    ``mu(D) >= -ε``, checked exhaustively. Other backends: the sufficient
    block bounds ``sum mu+(C) <= ε`` over the blocks of ``h`` and
    ``sum mu-(C) <= ε`` over the blocks of the complement.
    """
    be = mu.backend
    eps = cert.epsilon
    _check_split(be, cert)
    if isinstance(be, FiniteSemiRing):
        ext = RingExtension(mu)
        table = be.ring_table()
        hm = be.ring_mask(cert.h)
        cm = be.ring_mask(cert.complement)
        for m, r in table.items():
            if m & ~hm == 0:
                v = ext(r)
                if v > eps:
                    raise ViolatingSubset(be.fmt(m), v, "H")
            if m & ~cm == 0:
                v = ext(r)
                if v < -eps:
                    raise ViolatingSubset(be.fmt(m), v, "complement")
        return True
    parts = parts or jordan(mu)
    up = xsum(parts.positive(c) for c in cert.h.blocks)
    if up > eps:
        raise ViolatingSubset(be.fmt(cert.h), up, "H")
    down = xsum(parts.negative(c) for c in cert.complement.blocks)
    if down > eps:
        raise ViolatingSubset(be.fmt(cert.complement), -down, "complement")
    return True
