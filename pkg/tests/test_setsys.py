import random

import pytest
from hypothesis import given, settings, strategies as st

import gen
import oracles
from chargelattice.errors import InvalidPartition, NotAMember, NotASemiRing, NotInRing
from chargelattice.setsys import (
    EXACT,
    common_refinement,
    enumerate_partitions,
    generate_ring,
    partition_semiring,
    power_set,
    ring_membership,
    validate_semiring,
)
from chargelattice.xreal import ExtReal

BELL = [1, 1, 2, 5, 15, 52, 203]


@pytest.mark.parametrize("n", range(0, 7))
def test_power_set_partition_count_is_bell(n):
    be = power_set(list(range(n)))
    parts = list(be.partitions(be.full))
    assert len(parts) == BELL[n]
    assert len({p.blocks for p in parts}) == len(parts)


def test_max_blocks():
    be = power_set([1, 2, 3, 4])
    sizes = [len(p.blocks) for p in be.partitions(be.full, max_blocks=2)]
    assert sorted(sizes) == [1] + [2] * 7


def test_not_a_semiring_intersection():
    with pytest.raises(NotASemiRing) as exc:
        validate_semiring([1, 2, 3], [[], [1, 2], [2, 3]])
    assert exc.value.axiom == "intersection"
    assert set(exc.value.witness) == {(1, 2), (2, 3)}


def test_not_a_semiring_missing_empty():
    with pytest.raises(NotASemiRing) as exc:
        validate_semiring([1, 2], [[1], [2]])
    assert exc.value.axiom == "empty"


def test_not_a_semiring_difference():
    # closed under intersection but {1,2,3} \ {1} = {2,3} is not a disjoint union of members
    with pytest.raises(NotASemiRing) as exc:
        validate_semiring([1, 2, 3], [[], [1], [1, 2, 3]])
    assert exc.value.axiom == "difference"
    assert exc.value.witness == ((1, 2, 3), (1,))


def test_semiring_classification_matches_brute_force():
    for size in (1, 2, 3):
        for be in gen.all_semirings(size):
            ground = list(be.ground)
            fam = [[ground[i] for i in oracles.bits(m)] for m in be.members()]
            assert validate_semiring(ground, fam) == be
    # 1 point: {∅}, {∅,{1}}
    assert sum(1 for _ in gen.all_semirings(1)) == 2


def test_partitions_match_brute_force_on_all_small_semirings():
    for size in (1, 2, 3):
        for be in gen.all_semirings(size):
            members = set(be.members())
            for a in members:
                ours = sorted(tuple(sorted(p.blocks)) for p in be.partitions(a))
                assert ours == sorted(oracles.member_partitions(members, a))


def test_partition_semiring_has_only_trivial_partitions():
    be = partition_semiring(list("abcde"), [["a", "b"], ["c"], ["d", "e"]])
    for a in be.members():
        parts = list(be.partitions(a))
        assert [p.blocks for p in parts] == ([(a,)] if a else [()])


def test_checked_partition_constructor():
    be = power_set([1, 2, 3])
    p = be.partition(be.full, [be.mask([1]), be.mask([2, 3])])
    assert p.target == be.full
    with pytest.raises(InvalidPartition):
        be.partition(be.full, [be.mask([1, 2]), be.mask([2, 3])])
    with pytest.raises(InvalidPartition):
        be.partition(be.full, [be.mask([1])])


def test_member_lookup():
    be = validate_semiring([1, 2, 3], [[], [1], [2], [3], [1, 2]])
    assert be.member([2, 1]) == be.mask([1, 2])
    with pytest.raises(NotAMember):
        be.member([2, 3])
    with pytest.raises(NotAMember):
        be.mask([7])


def test_generated_ring():
    be = validate_semiring([1, 2, 3, 4], [[], [1], [2], [1, 2], [3, 4]])
    ring = {be.ring_mask(r) for r in generate_ring(be)}
    assert ring == oracles.brute_ring(set(be.members()), 4)
    r = ring_membership(be, [1, 3, 4])
    assert sorted(be.fmt(b) for b in r.blocks) == ["{1}", "{3,4}"]
    with pytest.raises(NotInRing):
        ring_membership(be, [3])


def test_common_refinement():
    be = power_set([1, 2, 3, 4])
    p = be.partition(be.full, [be.mask([1, 2]), be.mask([3, 4])])
    q = be.partition(be.full, [be.mask([1]), be.mask([2, 3, 4])])
    r = common_refinement(be, p, q)
    assert sorted(r.blocks) == sorted([be.mask([1]), be.mask([2]), be.mask([3, 4])])


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10_000), st.booleans())
def test_cover_optimizer_matches_brute_force(seed, maximize):
    rng = random.Random(seed)
    be = gen.random_semiring(rng, rng.randint(1, 5))
    members = set(be.members())
    g = {m: ExtReal(gen.random_value(rng)) for m in members}
    opt = be.optimizer(g.__getitem__, maximize)
    for a in members:
        sums = [sum((g[c] for c in p), ExtReal(0)) for p in oracles.member_partitions(members, a)]
        res = opt(a)
        assert res.value == (max(sums) if maximize else min(sums))
        assert res.exactness == EXACT
        assert sum((g[c] for c in res.witness), ExtReal(0)) == res.value
        assert be.is_partition(a, res.witness)


def test_enumeration_order_is_deterministic():
    be = power_set(list("xyz"))
    first = [p.blocks for p in enumerate_partitions(be, be.full)]
    second = [p.blocks for p in enumerate_partitions(be, be.full)]
    assert first == second
    # smallest pivot block first: singletons lead, the whole set comes last
    assert first[0] == (1, 2, 4)
    assert first[-1] == (be.full,)
