"""Worked examples as runnable fixtures with frozen expected values.

Each fixture builds its backend and charges and carries a list of queries.
A query is a zero-argument callable going through the public operations,
the value it must produce, and a short note on where that value comes from
(a closed form, or an independent derivation). :func:`run` evaluates every
query and compares exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, NamedTuple

from .charge import (
    explicit_charge,
    chain_charge,
    check_countable_additivity_witness,
    point_mass_charge,
    symbolic_charge,
)
from .cofinite import CofiniteSet, variation_lower_bound
from .density import (
    Density,
    DensitySpace,
    grid_abs_integral,
    grid_variation,
    measure_of_density,
    pointwise_sup,
    sup_density_measures,
    variation_of_density,
)
from .errors import RegressionMismatch, UnknownFixture, WitnessFailure
from .hahn import epsilon_hahn, verify_hahn
from .intervals import GridIntervals, Interval, NatIntervals
from .lattice import Meet, ba_norm, jordan, meet_dichotomy, sup_family
from .setsys import partition_semiring, power_set
from .xreal import NEG_INF, POS_INF, to_xreal

__all__ = ["Query", "Fixture", "Outcome", "FIXTURES", "fixture_ids", "build", "run"]


class Query(NamedTuple):
    name: str
    compute: Callable[[], Any]
    expected: Any
    basis: str


@dataclass
class Fixture:
    id: str
    title: str
    backend: Any
    charges: dict = field(default_factory=dict)
    queries: list = field(default_factory=list)

    def add(self, name: str, compute: Callable[[], Any], expected, basis: str) -> None:
        if isinstance(expected, (int, Fraction)) and not isinstance(expected, bool):
            expected = to_xreal(expected)
        self.queries.append(Query(name, compute, expected, basis))


class Outcome(NamedTuple):
    query: str
    expected: Any
    got: Any
    ok: bool
    basis: str


def _harmonic(lo: int, hi: int, step: int = 1) -> Fraction:
    return sum((Fraction(1, k) for k in range(lo, hi + 1, step)), Fraction(0))


# -- fixtures ----------------------------------------------------------------


def _partition_semiring() -> Fixture:
    ground = [1, 2, 3, 4, 5, 6]
    blocks = [[1, 2], [3], [4, 5, 6]]
    be = partition_semiring(ground, blocks)
    values = [
        {(1, 2): 3, (3,): -1, (4, 5, 6): 0},
        {(1, 2): -2, (3,): 5, (4, 5, 6): 1},
        {(1, 2): 1, (3,): 2, (4, 5, 6): "+inf"},
    ]
    family = [explicit_charge(be, {be.mask(k): v for k, v in vals.items()}, f"nu{j}") for j, vals in enumerate(values)]
    fx = Fixture("partition-semiring", "Semi-ring whose members admit only the trivial partition", be,
                 {nu.name: nu for nu in family})
    mu = sup_family(family)
    basis = "only partition of a member is the member itself, so the sup is the pointwise max"
    for blk, exp in [((1, 2), 3), ((3,), 5), ((4, 5, 6), POS_INF)]:
        fx.add(f"sup{{nu}}({','.join(map(str, blk))})", lambda b=blk: mu(be.mask(b)), exp, basis)
    return fx


def _alpha_family(n_max: int = 4) -> Fixture:
    # cells [k, k+1) for k in [-N, N); alpha_n: +1 on k >= 0, -1 on -n <= k < 0
    grid = GridIntervals(range(-n_max, n_max + 1))
    family = []
    for n in range(1, n_max + 1):
        w = [1 if k >= 0 else -1 if k >= -n else 0 for k in range(-n_max, n_max)]
        family.append(chain_charge(grid, w, f"alpha{n}"))
    fx = Fixture("alpha-family", "Length of the nonnegative part minus length inside [-n, 0), on an integer grid",
                 grid, {nu.name: nu for nu in family})
    mu = sup_family(family)
    a1 = family[0]

    def mismatches():
        return sum(1 for a in grid.members() if mu(a) != a1(a))

    fx.add("members where sup differs from alpha1", mismatches, 0,
           "the family decreases in n, so its supremum is its first member")
    whole = grid.interval(-n_max, n_max)
    fx.add(f"sup(alpha)[{-n_max},{n_max})", lambda: mu(whole), n_max - 1, "alpha1 of the whole grid: N - 1")
    fx.add("sup(alpha)[-4,-1)", lambda: mu(grid.interval(-4, -1)), 0, "alpha1 vanishes below -1")
    fx.add(f"alpha{n_max}[{-n_max},{n_max})", lambda: family[-1](whole), 0, "N - N")
    return fx


def _interval_alternating() -> Fixture:
    nat = NatIntervals(1)
    mu = chain_charge(nat, lambda k: Fraction((-1) ** k, k), "mu")
    fx = Fixture("interval-alternating", "Alternating harmonic charge on intervals of naturals", nat, {"mu": mu})
    var = jordan(mu).variation
    for n in (2, 3, 5, 10, 25, 50, 100):
        fx.add(f"|mu|[1,{n})", lambda n=n: var(Interval(1, n)), _harmonic(1, n - 1),
               "closed form: sum of 1/k over the interval")
    fx.add("mu[1,3)", lambda: mu(Interval(1, 3)), Fraction(-1, 2), "direct sum -1 + 1/2")
    fx.add("mu[4,10)", lambda: mu(Interval(4, 10)), sum(Fraction((-1) ** k, k) for k in range(4, 10)),
           "direct sum")
    fx.add("max |mu[m,n)| over 1 <= m < n <= 40",
           lambda: max(abs(mu(Interval(m, n))) for m in range(1, 40) for n in range(m + 1, 41)), 1,
           "alternating tail bound |mu[m,n)| <= 1/m")
    fx.add("norm exceeds 4", lambda: ba_norm(mu, threshold=4).diverged, True,
           "partial sums of the harmonic series are unbounded")
    return fx


def _cofinite_card() -> Fixture:
    mu = symbolic_charge("card-cocard", name="mu")
    be = mu.backend
    fx = Fixture("cofinite-card", "Cardinality on finite sets, minus co-cardinality on cofinite sets", be, {"mu": mu})
    tail = CofiniteSet.co([1, 2])
    fx.add("mu(N\\{1,2})", lambda: mu(tail), -2, "minus the size of the complement")

    def first_failure():
        pieces = (CofiniteSet.finite([n]) for n in range(3, 10_000))
        try:
            check_countable_additivity_witness(mu, tail, pieces, lambda n: Fraction(1, n), max_terms=50)
        except WitnessFailure as exc:
            return to_xreal(exc.n)
        return to_xreal(0)

    fx.add("first failing truncation of the singleton series", first_failure, 1,
           "the singletons carry +1 each while the union carries -2")
    for n in (1, 5, 20, 50):
        fx.add(f"|mu|(N) run-partition bound, depth {n}", lambda n=n: variation_lower_bound(mu, be.whole, n), 2 * n,
               "the split {1..n} + {n+1, ...} gives n + n")
    pos, negp, var = jordan(mu)
    fx.add("mu+(N)", lambda: pos(be.whole), POS_INF, "infinitely many points of mass 1")
    fx.add("mu-(N)", lambda: negp(be.whole), POS_INF, "cofinite blocks with arbitrarily negative value")
    fx.add("mu+({1,2,3})", lambda: pos(CofiniteSet.finite([1, 2, 3])), 3, "equals the cardinality")
    fx.add("mu-({1,2,3})", lambda: negp(CofiniteSet.finite([1, 2, 3])), 0, "nonnegative on finite sets")
    fx.add("meet on {1,2,3}", lambda: meet_dichotomy(mu, CofiniteSet.finite([1, 2, 3])).value, Meet.ZERO.value,
           "one Jordan part is finite")
    fx.add("meet on N\\{1}", lambda: meet_dichotomy(mu, CofiniteSet.co([1])).value, Meet.INFINITE.value,
           "both Jordan parts are infinite")
    fx.add("hahn on N", lambda: type(epsilon_hahn(mu, be.whole, Fraction(1, 2))).__name__, "Impossible",
           "both Jordan parts are infinite")
    fx.add("mu+(N\\{1,2}) = mu + mu-", lambda: mu(tail) + negp(tail), POS_INF, "-2 + inf")
    return fx


def _cofinite_neginf() -> Fixture:
    mu = symbolic_charge("card-neginf", name="mu")
    be = mu.backend
    fx = Fixture("cofinite-neginf", "Cardinality on finite sets, -inf on cofinite sets", be, {"mu": mu})
    pos, negp, _ = jordan(mu)
    tail = CofiniteSet.co([1, 2])
    fx.add("mu(N\\{1,2})", lambda: mu(tail), NEG_INF, "rule value on cofinite sets")
    fx.add("mu+({1,2,3,4})", lambda: pos(CofiniteSet.finite([1, 2, 3, 4])), 4, "equals the cardinality")
    fx.add("mu-({1,2,3,4})", lambda: negp(CofiniteSet.finite([1, 2, 3, 4])), 0, "nonnegative on finite sets")
    fx.add("mu+(N\\{1,2})", lambda: pos(tail), POS_INF, "infinitely many points of mass 1")
    fx.add("mu-(N\\{1,2})", lambda: negp(tail), POS_INF, "the set itself has value -inf")
    fx.add("mu+ - mu on N\\{1,2}", lambda: pos(tail) - mu(tail), POS_INF, "inf - (-inf)")
    return fx


def _grid_alternating(n_max: int = 30) -> Fixture:
    # cell [1/(m+1), 1/m) has density (-1)^(m+1) (m+1), hence mass (-1)^(m+1) / m
    pts = sorted(Fraction(1, m) for m in range(1, 2 * n_max + 1))
    grid = GridIntervals(pts)
    weights = []
    for lo, hi in zip(pts, pts[1:]):
        m = round(1 / hi)
        weights.append(Fraction((-1) ** (m + 1) * (m + 1)) * (hi - lo))
    mu = chain_charge(grid, weights, "mu")
    fx = Fixture("grid-alternating", "Alternating density on the cells [1/(m+1), 1/m)", grid, {"mu": mu})
    pos, negp, var = jordan(mu)
    for n in (1, 2, 3, 5, 10, 20, 30):
        a = grid.interval(Fraction(1, 2 * n), 1)
        fx.add(f"mu+[1/{2 * n},1)", lambda a=a: pos(a), _harmonic(1, 2 * n - 1, 2),
               "closed form: sum of 1/(2k-1) for k = 1..n")
        fx.add(f"mu-[1/{2 * n},1)", lambda a=a: negp(a), _harmonic(2, 2 * n - 2, 2),
               "derived: negative cells inside are m = 2, 4, .., 2n-2, each of mass 1/m")
    fx.add("max of mu over members", lambda: max(mu(a) for a in grid.members()), 1, "attained on [1/2, 1)")
    fx.add("min of mu over members", lambda: min(mu(a) for a in grid.members()), Fraction(-1, 2),
           "attained on [1/3, 1/2)")
    return fx


def _four_point() -> Fixture:
    be = power_set([1, 2, 3, 4])
    mu = point_mass_charge(be, {1: 2, 2: -3, 3: 1, 4: -1}, "mu")
    fx = Fixture("four-point", "Point masses 2, -3, 1, -1 on four points", be, {"mu": mu})
    pos, negp, var = jordan(mu)
    fx.add("mu+(all)", lambda: pos(be.full), 3, "sum of positive masses")
    fx.add("mu-(all)", lambda: negp(be.full), 4, "sum of negative masses")
    fx.add("|mu|(all)", lambda: var(be.full), 7, "sum of absolute masses")

    def hahn_set():
        cert = epsilon_hahn(mu, be.full, Fraction(1, 2))
        verify_hahn(mu, cert)
        return be.fmt(be.ring_mask(cert.h))

    fx.add("H for epsilon 1/2", hahn_set, "{2,4}", "exhaustive check over all 16 subsets")
    return fx


def _density_variation() -> Fixture:
    space = DensitySpace.counting([1, 2, 3, 4])
    f1 = Density([1, -1, 2, 0], space.points)
    f2 = Density([0, 3, -1, 0], space.points)
    fx = Fixture("density-variation", "Densities against counting measure, and a piecewise-constant integral",
                 space.semiring, {})
    fx.add("mu_f1(all)", lambda: measure_of_density(space, f1), 2, "direct sum")
    fx.add("sup(mu_f1, mu_f2)(all) by partitions", lambda: sup_density_measures(space, [f1, f2]), 6,
           "pointwise max (1, 3, 2, 0)")
    fx.add("integral of max(f1, f2)", lambda: measure_of_density(space, pointwise_sup([f1, f2])), 6,
           "pointwise max (1, 3, 2, 0)")
    v = variation_of_density(space, f1)
    fx.add("mu_f1+ (all)", lambda: v.positive, 3, "sum of positive values")
    fx.add("mu_f1- (all)", lambda: v.negative, 1, "sum of negative values")
    fx.add("var(mu_f1)(all)", lambda: v.variation, 4, "sum of absolute values")
    grid = GridIntervals(Fraction(k, 16) for k in range(65))
    values = [Fraction((-1) ** k * (k % 7 - 3), 5) for k in range(64)]
    a = grid.interval(0, 4)
    exact = sum(abs(v) * Fraction(1, 16) for v in values)
    fx.add("V[F;0,4] on 64 cells by partitions", lambda: grid_variation(grid, values, a), exact,
           "sum of |f| times cell length")
    fx.add("integral of |f| on [0,4)", lambda: grid_abs_integral(grid, values, a), exact,
           "sum of |f| times cell length")
    return fx


FIXTURES: dict[str, Callable[[], Fixture]] = {
    "partition-semiring": _partition_semiring,
    "alpha-family": _alpha_family,
    "interval-alternating": _interval_alternating,
    "cofinite-card": _cofinite_card,
    "cofinite-neginf": _cofinite_neginf,
    "grid-alternating": _grid_alternating,
    "four-point": _four_point,
    "density-variation": _density_variation,
}


def fixture_ids() -> list[str]:
    return list(FIXTURES)


def build(fixture_id: str) -> Fixture:
    try:
        builder = FIXTURES[fixture_id]
    except KeyError:
        raise UnknownFixture(f"unknown example {fixture_id!r}; known: {', '.join(FIXTURES)}") from None
    return builder()


def run(fixture: Fixture, strict: bool = True) -> list[Outcome]:
    """Evaluate every query; with ``strict`` raise :class:`RegressionMismatch` on the first miss."""
    out = []
    for q in fixture.queries:
        got = q.compute()
        if isinstance(got, (int, Fraction)) and not isinstance(got, bool):
            got = to_xreal(got)
        ok = got == q.expected and type(got) is type(q.expected)
        if not ok and strict:
            raise RegressionMismatch(q.name, q.expected, got)
        out.append(Outcome(q.name, q.expected, got, ok, q.basis))
    return out
