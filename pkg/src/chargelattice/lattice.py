"""Lattice operations on set functions: the constructive supremum and what follows from it.

For an admissible family ``F = (nu_j)`` the supremum is

    mu_F(A) = sup over finite partitions P of A of  sum_{C in P} max_j nu_j(C)

and everything else (infimum, Jordan parts, variation, the meet of the
Jordan parts, the norm) is obtained from it. Each backend supplies the
partition optimiser: exact-cover search on explicit semi-rings, the
split-point DP on interval chains, and bounded run-partition search on the
cofinite algebra.
"""

from __future__ import annotations

import enum
from typing import Any, Iterable, NamedTuple, Sequence

from .charge import (
    Charge,
    Polarity,
    RingExtension,
    SetFunction,
    check_admissibility,
    check_dual_admissibility,
    explicit_charge,
    zero_charge,
)
from .cofinite import CofiniteAlgebra, is_symbolic, jordan_symbolic
from .errors import DichotomyMismatch, ExtensionMismatch, IdentityViolation, Inadmissible
from .intervals import ChainSemiRing, Interval, NatIntervals
from .setsys import EXACT, FiniteSemiRing, LowerBound, Optimum, UpperBound
from .xreal import ExtReal, ZERO, sup, to_xreal, xmin

__all__ = [
    "LatticeResult",
    "sup_family",
    "inf_family",
    "join",
    "meet",
    "Jordan",
    "jordan",
    "jordan_identities",
    "Meet",
    "MeetDetails",
    "meet_details",
    "meet_dichotomy",
    "Norm",
    "ba_norm",
    "extension_commutes",
]


def _flip(tag):
    if isinstance(tag, LowerBound):
        return UpperBound(tag.depth)
    if isinstance(tag, UpperBound):
        return LowerBound(tag.depth)
    return tag


class LatticeResult(SetFunction):
    """Values of a lattice operation, with an exactness tag and a witness partition per member.

    ``is_charge`` records whether the inputs were all charges, in which case
    the result is itself a charge; otherwise it is only guaranteed to be
    super-additive (sup) or sub-additive (inf).
    """

    def __init__(self, backend, solve, *, is_charge: bool, sign: int = 1, name: str = "", polarity=None):
        super().__init__(backend, self._value, name)
        self._solve = solve
        self._cache: dict[Any, Optimum] = {}
        self.sign = sign
        self.is_charge = is_charge
        self._polarity = polarity

    @classmethod
    def closed_form(cls, backend, fn, *, name: str = "", polarity=None) -> "LatticeResult":
        return cls(backend, lambda a: Optimum(to_xreal(fn(a)), None, EXACT), is_charge=True, name=name, polarity=polarity)

    def optimum(self, a) -> Optimum:
        hit = self._cache.get(a)
        if hit is None:
            opt = self._solve(a)
            if self.sign < 0:
                opt = Optimum(-opt.value, opt.witness, _flip(opt.exactness))
            hit = self._cache[a] = opt
        return hit

    def _value(self, a) -> ExtReal:
        return self.optimum(a).value

    def exactness(self, a):
        return self.optimum(a).exactness

    def witness(self, a):
        return self.optimum(a).witness

    def __neg__(self) -> "LatticeResult":
        return LatticeResult(
            self.backend, self._solve, is_charge=self.is_charge, sign=-self.sign, name=f"-{self.name}",
            polarity=None if self._polarity is None else self._polarity.negated(),
        )

    def as_charge(self) -> Charge:
        """The result as a validated :class:`Charge` (charge families only)."""
        if not self.is_charge:
            raise TypeError("the family contains non-charges; the result is only a set function")
        be = self.backend
        if isinstance(be, FiniteSemiRing):
            return explicit_charge(be, self.table(), self.name)
        if isinstance(be, ChainSemiRing):
            return Charge(be, self, self._polarity or Polarity.PLUS, self.name, presentation=self)
        raise ValueError("values on this backend are bounds, not a charge")


def _common_backend(family: Sequence[SetFunction]):
    if not family:
        raise ValueError("empty family")
    be = family[0].backend
    for nu in family[1:]:
        if nu.backend != be:
            raise ValueError("family members live on different backends")
    return be


def _sup_polarity(family) -> Polarity:
    if all(isinstance(nu, Charge) and nu.polarity is Polarity.FINITE for nu in family):
        be = family[0].backend
        if be.finite or isinstance(be, ChainSemiRing):
            return Polarity.FINITE
    return Polarity.PLUS


def sup_family(family: Sequence[SetFunction], depth: int | None = None, name: str = "") -> LatticeResult:
    """The constructive supremum ``mu_F`` of an admissible family.

    Exact on explicit and interval backends; on the cofinite algebra the
    value on a large or cofinite member is a lower bound from run partitions
    of the given ``depth``. Raises :class:`Inadmissible` when some member
    has every ``nu_j`` equal to -inf.
    """
    family = list(family)
    be = _common_backend(family)
    if be.finite:
        check_admissibility(family)

    def g(c) -> ExtReal:
        v = sup(nu(c) for nu in family)
        if v.is_neg_inf:
            raise Inadmissible(c)
        return v

    is_charge = all(isinstance(nu, Charge) for nu in family)
    name = name or "sup{" + ",".join(nu.name or "?" for nu in family) + "}"
    return LatticeResult(be, be.optimizer(g, True, depth), is_charge=is_charge, name=name, polarity=_sup_polarity(family))


def inf_family(family: Sequence[SetFunction], depth: int | None = None, name: str = "") -> LatticeResult:
    """``inf F := -sup(-F)``; needs ``inf_j nu_j(A) < +inf`` on every member."""
    family = list(family)
    be = _common_backend(family)
    if be.finite:
        check_dual_admissibility(family)
    negs = [-nu for nu in family]

    def g(c) -> ExtReal:
        v = sup(nu(c) for nu in negs)
        if v.is_neg_inf:
            raise Inadmissible(c, dual=True)
        return v

    name = name or "inf{" + ",".join(nu.name or "?" for nu in family) + "}"
    is_charge = all(isinstance(nu, Charge) for nu in family)
    return LatticeResult(be, be.optimizer(g, True, depth), is_charge=is_charge, sign=-1, name=name,
                         polarity=_sup_polarity(negs).negated())


def join(mu: SetFunction, nu: SetFunction) -> LatticeResult:
    return sup_family([mu, nu])


def meet(mu: SetFunction, nu: SetFunction) -> LatticeResult:
    return inf_family([mu, nu])


class Jordan(NamedTuple):
    positive: SetFunction
    negative: SetFunction
    variation: LatticeResult


def jordan(mu: Charge, depth: int | None = None) -> Jordan:
    """Positive part ``mu v 0``, negative part ``(-mu) v 0`` and variation ``mu v (-mu)``.

    The parts are charges. On the cofinite algebra the built-in charges have
    closed-form parts, which are returned exactly.
    """
    be = mu.backend
    if isinstance(be, CofiniteAlgebra) and is_symbolic(mu.presentation):
        pos_fn, neg_fn = jordan_symbolic(mu.presentation)
        pos = Charge(be, pos_fn, Polarity.PLUS, f"{mu.name}+")
        neg = Charge(be, neg_fn, Polarity.PLUS, f"{mu.name}-")
        var = LatticeResult.closed_form(be, lambda a: pos_fn(a) + neg_fn(a), name=f"|{mu.name}|", polarity=Polarity.PLUS)
        return Jordan(pos, neg, var)
    zero = zero_charge(be)
    pos = sup_family([mu, zero], depth, name=f"{mu.name}+")
    neg = sup_family([-mu, zero], depth, name=f"{mu.name}-")
    var = sup_family([mu, -mu], depth, name=f"|{mu.name}|")
    return Jordan(pos.as_charge(), neg.as_charge(), var)


def jordan_identities(mu: Charge, members: Iterable, parts: Jordan | None = None) -> dict[str, int]:
    """Check the Jordan identities memberwise; return how many checks of each kind ran.

    Always: ``|mu| = mu+ + mu-``. When ``mu > -inf``: ``mu+ = mu + mu-``.
    When ``mu < +inf``: ``mu+ - mu = mu-``. Where ``|mu|(A)`` is finite:
    ``mu = mu+ - mu-`` and ``(mu+ ^ mu-)(A) = 0``.
    """
    pos, negp, var = parts or jordan(mu)
    counts = {"variation": 0, "positive": 0, "negative": 0, "difference": 0, "disjoint": 0}
    for a in members:
        m, p, n, v = mu(a), pos(a), negp(a), var(a)
        if v != p + n:
            raise IdentityViolation("|mu| = mu+ + mu-", a, v, p + n)
        counts["variation"] += 1
        if mu.polarity.avoids_neg_inf:
            if p != m + n:
                raise IdentityViolation("mu+ = mu + mu-", a, p, m + n)
            counts["positive"] += 1
        if mu.polarity.avoids_pos_inf:
            if p - m != n:
                raise IdentityViolation("mu+ - mu = mu-", a, p - m, n)
            counts["negative"] += 1
        if v.is_finite:
            if m != p - n:
                raise IdentityViolation("mu = mu+ - mu-", a, m, p - n)
            counts["difference"] += 1
            mt = _meet_value(pos, negp, a)
            if mt.value != 0:
                raise IdentityViolation("mu+ ^ mu- = 0", a, mt.value, ZERO)
            counts["disjoint"] += 1
    return counts


class Meet(enum.Enum):
    ZERO = "zero"
    INFINITE = "infinite"


class MeetDetails(NamedTuple):
    verdict: Meet
    positive: ExtReal
    negative: ExtReal
    meet: ExtReal
    exactness: Any
    witness: tuple | None


def _meet_value(pos: SetFunction, negp: SetFunction, a, depth: int | None = None) -> Optimum:
    # Inf over partitions of sum min(mu+(C), mu-(C)); the terms are >= 0 so
    # no dual admissibility is needed.
    be = pos.backend
    return be.optimizer(lambda c: xmin(pos(c), negp(c)), False, depth)(a)


def meet_details(mu: Charge, a, depth: int | None = None, parts: Jordan | None = None) -> MeetDetails:
    pos, negp, _ = parts or jordan(mu, depth)
    p, n = pos(a), negp(a)
    verdict = Meet.ZERO if xmin(p, n).is_finite else Meet.INFINITE
    direct = _meet_value(pos, negp, a, depth)
    if verdict is Meet.ZERO:
        # a bounded search may stop short of 0; that is not a contradiction
        ok = direct.value == 0 or direct.exactness != EXACT
    else:
        ok = direct.value.is_pos_inf
    if not ok:
        raise DichotomyMismatch(
            f"on {mu.backend.fmt(a)}: parts ({p}, {n}) give {verdict.value}, direct meet is {direct.value}"
        )
    return MeetDetails(verdict, p, n, direct.value, direct.exactness, direct.witness)


def meet_dichotomy(mu: Charge, a, depth: int | None = None) -> Meet:
    """``ZERO`` iff ``min(mu+(a), mu-(a))`` is finite, cross-checked against the directly computed meet."""
    return meet_details(mu, a, depth).verdict


class Norm(NamedTuple):
    value: ExtReal
    exactness: Any
    diverged: bool


def ba_norm(mu: Charge, threshold=None, horizon: int = 2000) -> Norm:
    """``sup_A |mu|(A)``.

    Exact on finite backends and on the cofinite algebra (where ℕ is a
    member). On ℕ-intervals, ``|mu|(A_{first,n})`` is computed for growing
    ``n``; the result is a certified lower bound, and ``diverged`` is set
    once it exceeds ``threshold``.
    """
    be = mu.backend
    var = jordan(mu).variation
    if be.finite:
        return Norm(sup(var(a) for a in be.members()), EXACT, False)
    if isinstance(be, CofiniteAlgebra):
        return Norm(var(be.whole), var.exactness(be.whole), False)
    if isinstance(be, NatIntervals):
        limit = None if threshold is None else to_xreal(threshold)
        value = ZERO
        n = 0
        for n in range(1, horizon + 1):
            value = var(Interval(be.first, be.first + n))
            if value.is_pos_inf:
                return Norm(value, EXACT, True)
            if limit is not None and value > limit:
                return Norm(value, LowerBound(n), True)
        return Norm(value, LowerBound(n), False)
    raise TypeError(f"unsupported backend {be!r}")


def extension_commutes(family: Sequence[Charge], jordan_parts: bool = True) -> bool:
    """Check that taking the supremum commutes with extending to the generated ring.

    Computes ``sup_j hat(nu_j)`` on the ring and ``hat(sup_j nu_j)``, and
    compares them on every ring member; with ``jordan_parts`` also checks
    ``hat(mu)+ = hat(mu+)`` and ``hat(mu)- = hat(mu-)`` for every member of
    the family. Raises :class:`ExtensionMismatch` on the first difference.
    """
    family = list(family)
    be = _common_backend(family)
    if not isinstance(be, FiniteSemiRing):
        raise TypeError("needs an explicit backend")
    ring_table = be.ring_table()
    ext = [RingExtension(nu).on_ring_backend() for nu in family]
    lhs = sup_family(ext)
    rhs = RingExtension(sup_family(family).as_charge())
    for m, r in ring_table.items():
        if lhs(m) != rhs(r):
            raise ExtensionMismatch(be.fmt(m), lhs(m), rhs(r), "sup")
    if jordan_parts:
        for nu, nu_hat in zip(family, ext):
            pos, negp, _ = jordan(nu)
            pos_hat, neg_hat, _ = jordan(nu_hat)
            for m, r in ring_table.items():
                if pos_hat(m) != RingExtension(pos)(r):
                    raise ExtensionMismatch(be.fmt(m), pos_hat(m), RingExtension(pos)(r), "positive part")
                if neg_hat(m) != RingExtension(negp)(r):
                    raise ExtensionMismatch(be.fmt(m), neg_hat(m), RingExtension(negp)(r), "negative part")
    return True
