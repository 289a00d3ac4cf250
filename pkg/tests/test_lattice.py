import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

import gen
import oracles
from chargelattice.charge import SetFunction, chain_charge, explicit_charge, point_mass_charge, symbolic_charge, zero_charge
from chargelattice.cofinite import CofiniteSet
from chargelattice.errors import Inadmissible
from chargelattice.intervals import Interval, NatIntervals
from chargelattice.lattice import (
    Meet,
    ba_norm,
    extension_commutes,
    inf_family,
    jordan,
    jordan_identities,
    meet_details,
    meet_dichotomy,
    sup_family,
)
from chargelattice.setsys import EXACT, LowerBound, power_set
from chargelattice.xreal import NEG_INF, POS_INF, ExtReal


def _tables(family, members):
    return [{m: nu(m) for m in members} for nu in family]


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_sup_and_inf_match_brute_force(seed):
    rng = random.Random(seed)
    be = gen.random_semiring(rng, rng.randint(1, 5))
    members = set(be.members())
    fam = [gen.random_charge(rng, be, f"n{i}") for i in range(rng.randint(1, 3))]
    s = sup_family(fam)
    i = inf_family(fam)
    neg = [{m: -v for m, v in t.items()} for t in _tables(fam, members)]
    for a in members:
        assert s(a) == oracles.brute_sup(members, _tables(fam, members), a)
        assert i(a) == -oracles.brute_sup(members, neg, a)
        assert s.exactness(a) == EXACT


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_sup_of_set_functions_is_not_a_charge(seed):
    rng = random.Random(seed)
    be = gen.random_semiring(rng, rng.randint(1, 4))
    table = gen.random_set_function(rng, be)
    nu = SetFunction(be, table.__getitem__, "f")
    res = sup_family([nu])
    members = set(be.members())
    for a in members:
        assert res(a) == oracles.brute_sup(members, [table], a)
        assert res(a) >= table[a]
    with pytest.raises(TypeError):
        res.as_charge()


def test_sup_properties():
    rng = random.Random(3)
    for _ in range(20):
        be = gen.random_semiring(rng, rng.randint(1, 5))
        mu, nu = gen.random_charge(rng, be, "m"), gen.random_charge(rng, be, "n")
        one, two = sup_family([mu]), sup_family([mu, nu])
        for a in be.members():
            assert one(a) == mu(a)
            assert two(a) >= one(a)
            assert two(a) >= nu(a)
        # the sup of charges is a charge
        two.as_charge()


def test_inadmissible_family():
    be = power_set([1, 2])
    mu = explicit_charge(be, {(1,): NEG_INF, (2,): 1, (1, 2): NEG_INF})
    with pytest.raises(Inadmissible):
        sup_family([mu])
    assert sup_family([mu, zero_charge(be)])(be.full) == 1
    with pytest.raises(Inadmissible):
        inf_family([-mu])


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([None, "+", "-"]))
def test_jordan_identities_on_random_charges(seed, infinite):
    rng = random.Random(seed)
    be = gen.random_semiring(rng, rng.randint(1, 5))
    mu = gen.random_charge(rng, be, "m", infinite)
    counts = jordan_identities(mu, be.members())
    assert counts["variation"] == sum(1 for _ in be.members())


def test_jordan_on_chain_matches_brute_force():
    nat = NatIntervals()
    w = {k: Fraction((-1) ** k * (k % 3 + 1), k) for k in range(1, 9)}
    mu = chain_charge(nat, w)
    pos, negp, var = jordan(mu)
    g = {(i, j): mu(Interval(i, j)) for i in range(1, 9) for j in range(i + 1, 10)}
    for (i, j) in g:
        a = Interval(i, j)
        assert pos(a) == oracles.brute_interval_sup({k: max(v, ExtReal(0)) for k, v in g.items()}, i, j)
        assert negp(a) == oracles.brute_interval_sup({k: max(-v, ExtReal(0)) for k, v in g.items()}, i, j)
        assert var(a) == sum(abs(w[k]) for k in range(i, j))
    jordan_identities(mu, [Interval(i, j) for (i, j) in g])


def test_cofinite_sup_is_tagged_lower_bound():
    mu = symbolic_charge("card-cocard")
    res = sup_family([mu, -mu], depth=4)
    whole = CofiniteSet.co()
    assert res.exactness(whole) == LowerBound(4)
    assert res(whole) == 8
    small = CofiniteSet.finite([1, 2])
    assert res(small) == 2 and res.exactness(small) == EXACT
    with pytest.raises(ValueError):
        res.as_charge()


def test_cofinite_jordan_is_closed_form():
    mu = symbolic_charge("card-cocard")
    pos, negp, var = jordan(mu)
    whole = CofiniteSet.co()
    assert pos(whole) == negp(whole) == var(whole) == POS_INF
    assert var.exactness(whole) == EXACT
    assert meet_dichotomy(mu, whole) is Meet.INFINITE
    assert meet_dichotomy(mu, CofiniteSet.finite([1, 2, 3])) is Meet.ZERO


def test_meet_details_on_explicit_charge():
    be = power_set([1, 2, 3])
    mu = point_mass_charge(be, {1: 1, 2: -2, 3: POS_INF})
    d = meet_details(mu, be.full)
    assert d.verdict is Meet.ZERO and d.meet == 0
    assert d.positive == POS_INF and d.negative == 2


def test_ba_norm():
    be = power_set([1, 2, 3])
    mu = point_mass_charge(be, {1: 1, 2: -2, 3: Fraction(1, 2)})
    assert ba_norm(mu).value == Fraction(7, 2)
    cof = ba_norm(symbolic_charge("zero", {1: 2, 4: -1}))
    assert cof.value == 3 and cof.exactness == EXACT
    harmonic = chain_charge(NatIntervals(), lambda k: Fraction((-1) ** (k + 1), k))
    norm = ba_norm(harmonic, threshold=3)
    assert norm.diverged and norm.value > 3
    assert norm.value == oracles.harmonic(1, norm.exactness.depth)


def test_extension_commutes_on_random_families():
    rng = random.Random(11)
    for _ in range(15):
        be = gen.random_semiring(rng, rng.randint(1, 4))
        fam = [gen.random_charge(rng, be, f"n{i}") for i in range(rng.randint(1, 3))]
        assert extension_commutes(fam)


def test_sup_needs_a_common_backend():
    with pytest.raises(ValueError):
        sup_family([zero_charge(power_set([1])), zero_charge(power_set([2]))])
    with pytest.raises(ValueError):
        sup_family([])
