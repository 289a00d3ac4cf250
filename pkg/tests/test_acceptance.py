"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run directly (``python tests/test_acceptance.py``) for the criterion lines
alone; under pytest they are repeated in the terminal summary.
"""

from __future__ import annotations

import contextlib
import itertools
import random
import sys
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

import gen  # noqa: E402
import oracles  # noqa: E402
from chargelattice.charge import (  # noqa: E402
    Charge,
    Polarity,
    RingExtension,
    SetFunction,
    chain_charge,
    check_countable_additivity_witness,
    explicit_charge,
    symbolic_charge,
)
from chargelattice.cofinite import CofiniteSet, variation_lower_bound  # noqa: E402
from chargelattice.density import (  # noqa: E402
    Density,
    DensitySpace,
    grid_abs_integral,
    grid_variation,
    measure_of_density,
    pointwise_sup,
    sup_density_measures,
)
from chargelattice.errors import UndefinedSum, WitnessFailure  # noqa: E402
from chargelattice.hahn import HahnCertificate, Impossible, epsilon_hahn, verify_hahn  # noqa: E402
from chargelattice.intervals import GridIntervals, Interval, NatIntervals, sup_interval_dp  # noqa: E402
from chargelattice.lattice import (  # noqa: E402
    Meet,
    ba_norm,
    extension_commutes,
    jordan,
    jordan_identities,
    join,
    meet,
    meet_dichotomy,
    sup_family,
)
from chargelattice.xreal import ExtReal, POS_INF  # noqa: E402

RESULTS: dict[str, str] = {}


@contextlib.contextmanager
def criterion(n, title: str):
    key = str(n)
    try:
        yield
    except BaseException as exc:
        RESULTS[key] = f"criterion {key:>3} FAIL  {title}: {type(exc).__name__}: {exc}"
        print(RESULTS[key])
        raise
    RESULTS[key] = f"criterion {key:>3} PASS  {title}"
    print(RESULTS[key])


# -- 1 -----------------------------------------------------------------------


def test_criterion_01_interval_alternating_variation():
    with criterion(1, "alternating charge on intervals of naturals: |mu|[1,n) = H(n-1), norm diverges"):
        nat = NatIntervals(1)
        mu = chain_charge(nat, lambda k: Fraction((-1) ** k, k), "mu")
        var = jordan(mu).variation
        for n in range(1, 101):
            assert var(Interval(1, n)) == oracles.harmonic(1, n - 1), n
        # cross-check the DP against plain composition enumeration on short intervals
        g = {(i, j): abs(mu(Interval(i, j))) for i in range(1, 12) for j in range(i + 1, 13)}
        for n in range(2, 13):
            assert oracles.brute_interval_sup(g, 1, n) == var(Interval(1, n))
        # bounded: |mu[m,n)| <= 1/m
        for m in range(1, 30):
            for n in range(m + 1, 31):
                assert abs(mu(Interval(m, n))) <= Fraction(1, m)
        for threshold in (2, 4, 5):
            norm = ba_norm(mu, threshold=threshold)
            assert norm.diverged and norm.value > threshold


# -- 2 -----------------------------------------------------------------------


def test_criterion_02_cofinite_card():
    with criterion(2, "cofinite cardinality charge: -2 tail, witness failure, 2n bounds, meet dichotomy"):
        mu = symbolic_charge("card-cocard", name="mu")
        tail = CofiniteSet.co([1, 2])
        assert mu(tail) == -2
        pieces = (CofiniteSet.finite([n]) for n in range(3, 1000))
        with pytest.raises(WitnessFailure):
            check_countable_additivity_witness(mu, tail, pieces, lambda n: Fraction(1, n), max_terms=200)
        whole = CofiniteSet.co()
        for n in range(1, 51):
            assert variation_lower_bound(mu, whole, n) == 2 * n
        assert jordan(mu).variation(whole) == POS_INF
        finite = [CofiniteSet.finite(s) for r in range(5) for s in itertools.combinations(range(1, 6), r)]
        for a in finite:
            assert meet_dichotomy(mu, a) is Meet.ZERO
        for a in finite:
            assert meet_dichotomy(mu, a.complement()) is Meet.INFINITE


# -- 3 -----------------------------------------------------------------------


def _grid_alternating(n_max: int = 30):
    pts = sorted(Fraction(1, m) for m in range(1, 2 * n_max + 1))
    grid = GridIntervals(pts)
    weights = []
    for lo, hi in zip(pts, pts[1:]):
        m = round(1 / hi)
        dens = (-1) ** (m + 1) * (m + 1)
        weights.append(dens * (hi - lo))
    return grid, chain_charge(grid, weights, "mu")


def test_criterion_03_grid_alternating_positive_part():
    with criterion("3a", "grid example, positive part: mu+[1/(2n),1) = sum_{k<=n} 1/(2k-1), n <= 30"):
        grid, mu = _grid_alternating()
        pos = jordan(mu).positive
        for n in range(1, 31):
            a = grid.interval(Fraction(1, 2 * n), 1)
            assert pos(a) == sum(Fraction(1, 2 * k - 1) for k in range(1, n + 1)), n


def test_criterion_03_grid_alternating_negative_part_as_stated():
    # The stated closed form for the negative part is sum_{k=1}^{n} 1/(2k).
    # The cells inside [1/(2n), 1) are [1/(m+1), 1/m) for m = 1 .. 2n-1, so
    # the negative cells are m = 2, 4, .., 2n-2 and the exact value is
    # sum_{k=1}^{n-1} 1/(2k). This check asserts the stated form verbatim and
    # is expected to fail; the next test pins the exact value.
    with criterion("3b", "grid example, negative part: mu-[1/(2n),1) = sum_{k<=n} 1/(2k), n <= 30 (as stated)"):
        grid, mu = _grid_alternating()
        negp = jordan(mu).negative
        for n in range(1, 31):
            a = grid.interval(Fraction(1, 2 * n), 1)
            assert negp(a) == sum(Fraction(1, 2 * k) for k in range(1, n + 1)), (
                f"n={n}: computed {negp(a)}, stated {sum(Fraction(1, 2 * k) for k in range(1, n + 1))}"
            )


def test_grid_alternating_negative_part_exact_value():
    grid, mu = _grid_alternating()
    negp = jordan(mu).negative
    for n in range(1, 31):
        a = grid.interval(Fraction(1, 2 * n), 1)
        assert negp(a) == sum(Fraction(1, 2 * k) for k in range(1, n)), n
    # and directly from the cell masses, without the lattice code
    for n in range(1, 31):
        direct = sum(Fraction(1, m) for m in range(1, 2 * n) if m % 2 == 0)
        assert negp(grid.interval(Fraction(1, 2 * n), 1)) == direct


# -- 4 -----------------------------------------------------------------------


def test_criterion_04_sup_matches_exhaustive_partitions():
    with criterion(4, "sup_family = max over all partitions (>= 200 families), super-additivity (>= 200)"):
        rng = random.Random(4)
        families = 0
        # every semi-ring on up to 3 points
        for size in (1, 2, 3):
            for be in gen.all_semirings(size):
                members = set(be.members())
                fam = [gen.random_charge(rng, be, f"nu{j}") for j in range(rng.randint(1, 3))]
                mu = sup_family(fam)
                tables = [nu.table() for nu in fam]
                for a in members:
                    assert mu(a) == oracles.brute_sup(members, tables, a)
                families += 1
        # sampled semi-rings on 4 and 5 points
        while families < 260:
            be = gen.random_semiring(rng, rng.choice((4, 5)))
            members = set(be.members())
            infinite = rng.choice((None, None, "+"))
            fam = [gen.random_charge(rng, be, f"nu{j}", infinite if j == 0 else None) for j in range(rng.randint(1, 4))]
            mu = sup_family(fam)
            tables = [nu.table() for nu in fam]
            for a in members:
                assert mu(a) == oracles.brute_sup(members, tables, a)
            families += 1
        assert families >= 200
        # super-additivity for families of arbitrary (non-additive) set functions
        checked = 0
        while checked < 220:
            be = gen.random_semiring(rng, rng.randint(2, 5))
            members = set(be.members())
            tables = [gen.random_set_function(rng, be) for _ in range(rng.randint(1, 3))]
            fam = [SetFunction(be, t.__getitem__, f"s{j}") for j, t in enumerate(tables)]
            mu = sup_family(fam)
            assert not mu.is_charge
            for a in members:
                assert mu(a) == oracles.brute_sup(members, tables, a)
                for p in oracles.member_partitions(members, a):
                    assert mu(a) >= sum((mu(c) for c in p), ExtReal(0))
            checked += 1


# -- 5 -----------------------------------------------------------------------


def _random_upper_bound(rng, be, fam):
    """A random charge lambda with lambda >= nu_j on every member."""
    members = list(be.members())
    tables = [nu.table() for nu in fam]
    atoms = oracles.atom_classes(set(members), len(be.ground))
    for _ in range(20):
        masses = [ExtReal(gen.random_value(rng, -2, 8)) for _ in atoms]
        lam = oracles.charge_from_atoms(set(members), atoms, masses)
        if all(lam[a] >= t[a] for t in tables for a in members):
            return explicit_charge(be, lam, "lambda")
    # fall back to dominating every atom mass
    exts = [RingExtension(nu) for nu in fam]
    masses = [max(e(be.ring_membership(at)) for e in exts) + gen.random_value(rng, 0, 3) for at in atoms]
    return explicit_charge(be, oracles.charge_from_atoms(set(members), atoms, masses), "lambda")


def test_criterion_05_least_upper_bound_and_lattice_laws():
    with criterion(5, "mu_F >= nu_j, mu_F <= every upper bound (>= 200 families); absorption, commutativity, Riesz"):
        rng = random.Random(5)
        for trial in range(220):
            be = gen.random_semiring(rng, rng.randint(2, 5))
            members = list(be.members())
            fam = [gen.random_charge(rng, be, f"nu{j}") for j in range(rng.randint(1, 4))]
            mu = sup_family(fam)
            for nu in fam:
                assert all(mu(a) >= nu(a) for a in members)
            for _ in range(2):
                lam = _random_upper_bound(rng, be, fam)
                assert all(mu(a) <= lam(a) for a in members)
            if trial % 2 == 0:
                x, y = fam[0], gen.random_charge(rng, be, "y")
                xy_join, xy_meet = join(x, y), meet(x, y)
                yx_join, yx_meet = join(y, x), meet(y, x)
                absorb1 = join(x, xy_meet.as_charge())
                absorb2 = meet(x, xy_join.as_charge())
                for a in members:
                    assert xy_join(a) == yx_join(a) and xy_meet(a) == yx_meet(a)
                    assert absorb1(a) == x(a) and absorb2(a) == x(a)
                    assert xy_join(a) + xy_meet(a) == x(a) + y(a)


# -- 6 -----------------------------------------------------------------------


def test_criterion_06_jordan_identities():
    with criterion(6, "Jordan: mu = mu+ - mu-, |mu| = mu+ + mu-, mu+ ^ mu- = 0 (>= 200); infinite examples"):
        rng = random.Random(6)
        for _ in range(220):
            be = gen.random_semiring(rng, rng.randint(1, 5))
            mu = gen.random_charge(rng, be, "mu")
            parts = jordan(mu)
            counts = jordan_identities(mu, be.members(), parts)
            assert counts["difference"] == counts["disjoint"] == len(list(be.members()))
            lat_meet = meet(parts.positive, parts.negative)
            assert all(lat_meet(a) == 0 for a in be.members())
        # charges that reach an infinity: identities hold wherever defined
        for _ in range(40):
            be = gen.random_semiring(rng, rng.randint(1, 4))
            mu = gen.random_charge(rng, be, "mu", infinite=rng.choice("+-"))
            jordan_identities(mu, be.members())
        finite = [CofiniteSet.finite(s) for s in ([], [1], [2, 5], [1, 2, 3])]
        cofinite = [CofiniteSet.co(s) for s in ([], [1], [2, 5], [1, 2, 3])]
        mu = symbolic_charge("card-cocard", name="mu")
        pos, negp, var = jordan(mu)
        for a in finite + cofinite:
            assert pos(a) == mu(a) + negp(a)
            assert var(a) == pos(a) + negp(a)
        mu = symbolic_charge("card-neginf", name="mu")
        pos, negp, var = jordan(mu)
        defined = 0
        for a in finite + cofinite:
            try:
                rhs = mu(a) + negp(a)
            except UndefinedSum:
                continue
            assert pos(a) == rhs
            defined += 1
            assert pos(a) - mu(a) == negp(a)
        assert defined == len(finite)
        for a in cofinite:
            assert pos(a) - mu(a) == negp(a) == POS_INF


# -- 7 -----------------------------------------------------------------------


def test_criterion_07_interval_dp_matches_compositions():
    with criterion(7, "sup_interval_dp = exhaustive compositions, all intervals of length <= 12 (>= 100 families)"):
        rng = random.Random(7)
        nat = NatIntervals(1)
        top = 13
        for _ in range(110):
            tables = []
            for _ in range(rng.randint(1, 3)):
                tables.append({(i, j): ExtReal(gen.random_value(rng, -6, 6)) for i in range(1, top) for j in range(i + 1, top + 1)})
            fam = [lambda c, t=t: t[(c.lo, c.hi)] for t in tables]
            g = {k: max(t[k] for t in tables) for k in tables[0]}
            for lo in range(1, top):
                for hi in range(lo + 1, top + 1):
                    assert sup_interval_dp(fam, Interval(lo, hi), nat) == oracles.brute_interval_sup(g, lo, hi)


# -- 8 -----------------------------------------------------------------------


def test_criterion_08_epsilon_hahn():
    with criterion(8, "epsilon-Hahn certificates verify exhaustively (|Omega| <= 5); Impossible iff meet infinite"):
        rng = random.Random(8)
        eps_values = (Fraction(1), Fraction(1, 2), Fraction(1, 10))
        instances = []
        for size in (1, 2, 3):
            for be in gen.all_semirings(size):
                instances.append((be, gen.random_charge(rng, be, "mu")))
        for _ in range(120):
            be = gen.random_semiring(rng, rng.randint(4, 5))
            instances.append((be, gen.random_charge(rng, be, "mu", infinite=rng.choice((None, None, "+", "-")))))
        for be, mu in instances:
            parts = jordan(mu)
            for a in be.members():
                for eps in eps_values:
                    cert = epsilon_hahn(mu, a, eps, parts=parts)
                    assert isinstance(cert, HahnCertificate)
                    assert verify_hahn(mu, cert, parts)
                    assert cert.slack < eps
        mu = symbolic_charge("card-cocard", name="mu")
        members = [CofiniteSet.finite(s) for s in ([], [1], [2, 3], [1, 4, 6])]
        members += [m.complement() for m in members]
        for a in members:
            res = epsilon_hahn(mu, a, Fraction(1, 2))
            assert isinstance(res, Impossible) == (meet_dichotomy(mu, a) is Meet.INFINITE)
            if isinstance(res, HahnCertificate):
                assert verify_hahn(mu, res)
        assert isinstance(epsilon_hahn(mu, CofiniteSet.co(), Fraction(1, 2)), Impossible)


# -- 9 -----------------------------------------------------------------------


def test_criterion_09_extension_commutes():
    with criterion(9, "sup then extend = extend then sup on the ring, with Jordan parts (>= 100 instances)"):
        rng = random.Random(9)
        for _ in range(110):
            be = gen.random_semiring(rng, rng.randint(2, 5))
            fam = [gen.random_charge(rng, be, f"nu{j}") for j in range(rng.randint(1, 3))]
            assert extension_commutes(fam, jordan_parts=True)
            # the generated ring matches the brute-force one
            assert set(be.ring_table()) == oracles.brute_ring(set(be.members()), len(be.ground))


# -- 10 ----------------------------------------------------------------------


def test_criterion_10_density_sup():
    with criterion(10, "sup of density charges = integral of pointwise sup (>= 200 families); 64-cell variation"):
        rng = random.Random(10)
        for _ in range(210):
            npts = rng.randint(1, 10)
            pts = tuple(range(1, npts + 1))
            weights = {s: Fraction(rng.choice((0, 1, 1, 2, 3)), rng.choice((1, 2))) for s in pts}
            order = list(pts)
            rng.shuffle(order)
            cells, i = [], 0
            while i < npts:
                k = rng.randint(1, 3)
                cells.append(tuple(order[i:i + k]))
                i += k
            space = DensitySpace(pts, weights, tuple(cells))
            family = []
            for _ in range(rng.randint(1, 6)):
                vals = {s: (POS_INF if rng.random() < 0.05 else ExtReal(gen.random_value(rng))) for s in pts}
                family.append(Density(vals))
            fsup = pointwise_sup(family)
            subsets = [None] + [[s for s in pts if rng.random() < 0.5] for _ in range(3)]
            for a in subsets:
                assert sup_density_measures(space, family, a) == measure_of_density(space, fsup, a)
        grid = GridIntervals(Fraction(k, 8) for k in range(65))
        values = [Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(64)]
        whole = grid.interval(0, 8)
        exact = sum(abs(v) * Fraction(1, 8) for v in values)
        assert grid_variation(grid, values, whole) == exact
        assert grid_abs_integral(grid, values, whole) == exact
        for x in range(1, 65, 7):
            a = grid.interval(0, Fraction(x, 8))
            assert grid_variation(grid, values, a) == sum(abs(v) * Fraction(1, 8) for v in values[:x])


if __name__ == "__main__":
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion"):
            try:
                fn()
            except BaseException:
                pass
