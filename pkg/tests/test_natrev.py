"""Tests for natural-number and cardinal sequence reversibility."""
import itertools
import math
import random
from functools import lru_cache

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ordrev.core.counts import ABSENT, INF, Count
from ordrev.core.natrev import (
    CardinalSequence,
    CardinalValue,
    NatMultiset,
    NatProgression,
    SemigroupCertificate,
    SemigroupTable,
    cardinal_sum,
    decide_cardinal_reversible,
    decide_nat_reversible,
    divides_infinitely_many,
    is_independent,
    semigroup_member,
)
from ordrev.core.verdict import Clause, GcdFailure, IndependenceFailure
from ordrev.errors import InvalidPresentation, ZeroValue
from ordrev.witness.models import CardinalAbsorb, MergeShift, SparseChain
from ordrev.witness.verifier import verify_witness
from strategies import nat_multisets, random_sub_multiset


def multiset(values=(), progressions=()) -> NatMultiset:
    return NatMultiset.of([(v, INF) for v in values], progressions)


@lru_cache(maxsize=None)
def _brute_force_sums(gens: tuple[int, ...], limit: int = 60) -> frozenset[int]:
    """Every nonempty sum of generators up to limit, by exhaustive addend enumeration."""
    sums = set()

    def extend(total: int, first: int) -> None:
        for i in range(first, len(gens)):
            t = total + gens[i]
            if t <= limit:
                sums.add(t)
                extend(t, i)

    extend(0, 0)
    return frozenset(sums)


# ---------------------------------------------------------------------------
# Counts and multisets
# ---------------------------------------------------------------------------

def test_count_arithmetic():
    assert Count.fin(2) + Count.fin(3) == Count.fin(5)
    assert (Count.fin(2) + INF).is_infinite
    assert ABSENT.is_absent
    assert Count.from_json(Count.fin(4).to_json()) == Count.fin(4)
    assert Count.from_json("inf") == INF
    with pytest.raises(ValueError):
        Count.fin(-1)


def test_multiset_merges_duplicates():
    m = NatMultiset.of([(4, Count.fin(1)), (4, INF), (2, Count.fin(2))])
    assert m.singles == ((2, Count.fin(2)), (4, INF))
    assert m.k == (4,)
    assert not m.is_finite_to_one


def test_multiset_rejects_zero():
    with pytest.raises(ZeroValue):
        NatMultiset.of([(0, INF)])
    with pytest.raises(ZeroValue):
        NatProgression(0, 2)
    with pytest.raises(InvalidPresentation):
        NatMultiset.of([(3, Count.fin(0))])


def test_multiset_count_of_and_dict():
    m = NatMultiset.of([(5, Count.fin(2))], [NatProgression(1, 2, 3)])
    assert m.count_of(5) == Count.fin(5)
    assert m.count_of(4).is_absent
    assert NatMultiset.from_dict(m.to_dict()) == m
    assert str(m) == "{5:2, 1+2k x3}"


# ---------------------------------------------------------------------------
# Semigroup membership
# ---------------------------------------------------------------------------

def test_semigroup_member_examples():
    cert = semigroup_member(8, [3, 5])
    assert cert == SemigroupCertificate(8, ((3, 1), (5, 1)))
    assert str(cert) == "8 = 3 + 5"
    assert semigroup_member(7, [3, 5]) is None
    assert semigroup_member(0, [3]) is None
    assert semigroup_member(4, []) is None


def test_semigroup_table_agrees_with_brute_force():
    """Test the DP against exhaustive addend enumeration for every generator set <= 20 of size <= 3."""
    for size in (1, 2, 3):
        for gens in itertools.combinations(range(1, 21), size):
            table = SemigroupTable(gens)
            for n in range(1, 61):
                cert = table.certificate(n)
                assert (cert is not None) == (n in _brute_force_sums(gens)), (n, gens)
                if cert is not None:
                    assert cert.is_valid_over(gens)
                    assert cert.total == n


@settings(deadline=None)
@given(st.integers(1, 60), st.lists(st.integers(1, 20), min_size=1, max_size=3))
def test_semigroup_member_property(n, gens):
    cert = semigroup_member(n, gens)
    assert (cert is not None) == (n in _brute_force_sums(tuple(sorted(set(gens)))))


def test_is_independent():
    assert is_independent([2, 5]) == (True, None)
    ok, offender = is_independent([2, 4])
    assert not ok
    assert offender == (4, SemigroupCertificate(4, ((2, 2),)))
    assert is_independent([]) == (True, None)


def test_divides_infinitely_many():
    m = multiset([4, 10], [NatProgression(1, 2)])
    assert not divides_infinitely_many(2, m)
    assert divides_infinitely_many(3, m)
    assert divides_infinitely_many(2, multiset([4], [NatProgression(2, 2)]))


# ---------------------------------------------------------------------------
# decide_nat_reversible
# ---------------------------------------------------------------------------

def test_independent_finite_values_are_reversible():
    verdict = decide_nat_reversible(NatMultiset.of([(2, INF), (5, INF), (7, Count.fin(3))]))
    assert verdict.reversible
    assert verdict.k == (2, 5)
    assert verdict.witness is None


def test_gcd_one_with_progression_fails():
    verdict = decide_nat_reversible(multiset([2, 5], [NatProgression(1, 1)]))
    assert not verdict.reversible
    assert isinstance(verdict.details, GcdFailure)
    assert verdict.details.g == 1
    assert isinstance(verdict.witness, SparseChain)


def test_odd_progression_escapes_even_gcd():
    assert decide_nat_reversible(multiset([4, 10], [NatProgression(1, 2)])).reversible
    verdict = decide_nat_reversible(multiset([4, 10], [NatProgression(2, 2)]))
    assert not verdict.reversible
    assert verdict.details.g == 2


def test_dependent_values_fail():
    verdict = decide_nat_reversible(multiset([2, 4]))
    assert not verdict.reversible
    assert verdict.clause is Clause.NAT_SEQ
    assert isinstance(verdict.details, IndependenceFailure)
    assert verdict.witness == MergeShift(4, SemigroupCertificate(4, ((2, 2),)))


def test_single_repeated_value_is_reversible():
    assert decide_nat_reversible(multiset([5])).reversible


def test_empty_multiset_is_reversible():
    verdict = decide_nat_reversible(NatMultiset())
    assert verdict.reversible
    assert verdict.k == ()


def test_sparse_chain_example():
    """Test the plan for {3, 5 repeated} with the progression 8 + 15k."""
    m = multiset([3, 5], [NatProgression(8, 15)])
    verdict = decide_nat_reversible(m)
    plan = verdict.witness
    assert isinstance(plan, SparseChain)
    assert plan.k0 == 0
    assert plan.first_target == 8
    assert plan.init_cert == SemigroupCertificate(8, ((3, 1), (5, 1)))
    assert plan.step_cert.total == 15
    assert verify_witness(m, plan)


def test_trace_records_checks():
    verdict = decide_nat_reversible(multiset([4, 10], [NatProgression(1, 2)]))
    assert [step.check for step in verdict.trace] == ["K", "independence", "gcd"]
    assert all(step.passed for step in verdict.trace)


@settings(max_examples=60, deadline=None)
@given(nat_multisets())
def test_nat_witnesses_verify(m):
    """Test that every non-reversible verdict carries a plan the verifier accepts."""
    verdict = decide_nat_reversible(m, witness_depth=48)
    if verdict.reversible:
        assert verdict.witness is None
    else:
        assert verify_witness(m, verdict.witness, depth=48)


@given(nat_multisets())
def test_finite_to_one_is_reversible(m):
    if m.is_finite_to_one:
        assert decide_nat_reversible(m, with_witness=False).reversible


# ---------------------------------------------------------------------------
# Cardinals
# ---------------------------------------------------------------------------

def test_cardinal_ordering_and_sum():
    assert CardinalValue.fin(100) < CardinalValue.aleph(0) < CardinalValue.aleph(1)
    assert CardinalValue.parse("aleph_2") == CardinalValue.aleph(2)
    assert CardinalValue.parse(str(CardinalValue.fin(7))) == CardinalValue.fin(7)
    assert cardinal_sum([CardinalValue.fin(3), CardinalValue.aleph(1)]) == CardinalValue.aleph(1)
    assert cardinal_sum([CardinalValue.fin(3), CardinalValue.fin(4)]) == CardinalValue.fin(7)
    with pytest.raises(ZeroValue):
        CardinalValue.fin(0)


def test_finite_to_one_cardinals_are_reversible():
    verdict = decide_cardinal_reversible(
        [(CardinalValue.aleph(0), Count.fin(1)), (CardinalValue.fin(3), Count.fin(2))]
    )
    assert verdict.reversible
    assert verdict.clause is Clause.I


def test_repeated_cardinal_is_absorbed():
    seq = CardinalSequence.of([(CardinalValue.aleph(0), Count.fin(1)), (CardinalValue.fin(3), INF)])
    verdict = decide_cardinal_reversible(seq)
    assert not verdict.reversible
    assert verdict.clause is Clause.A
    assert verdict.witness == CardinalAbsorb(CardinalValue.aleph(0), CardinalValue.fin(3))
    assert verify_witness(seq, verdict.witness)


def test_repeated_aleph_absorbs_itself():
    seq = CardinalSequence.of([(CardinalValue.aleph(0), INF)])
    verdict = decide_cardinal_reversible(seq)
    assert not verdict.reversible
    assert verdict.witness == CardinalAbsorb(CardinalValue.aleph(0), CardinalValue.aleph(0))


def test_all_finite_cardinals_decide_as_naturals():
    values = [(CardinalValue.fin(2), INF), (CardinalValue.fin(5), INF)]
    verdict = decide_cardinal_reversible(values, [NatProgression(1, 1)])
    assert not verdict.reversible
    assert verdict.clause is Clause.NAT_SEQ
    assert decide_cardinal_reversible(values).reversible


def test_empty_cardinal_sequence_is_rejected():
    with pytest.raises(InvalidPresentation):
        decide_cardinal_reversible([])


# ---------------------------------------------------------------------------
# Gcd rule across small multisets
# ---------------------------------------------------------------------------

GRID_PROGRESSIONS = [
    (),
    ((1, 2),),
    ((3, 4),),
    ((2, 2),),
    ((1, 1),),
    ((5, 3),),
    ((1, 2), (3, 4)),
    ((1, 2), (2, 4)),
]
GRID_EXTRAS = [(), ((3, 2),), ((7, 1), (9, 4))]


def _grid_expectation(k: tuple[int, ...], progs: tuple[tuple[int, int], ...]) -> bool:
    if not k:
        return True
    if k == (2, 5):
        return not progs
    return all(d % 2 == 0 and a % 2 == 1 for a, d in progs)


@pytest.mark.parametrize("k", [(), (2, 5), (4, 10)])
@pytest.mark.parametrize("extras", GRID_EXTRAS)
@pytest.mark.parametrize("progs", GRID_PROGRESSIONS)
def test_gcd_rule_grid(k, extras, progs):
    m = NatMultiset.of(
        [(v, INF) for v in k] + [(v, Count.fin(c)) for v, c in extras],
        [NatProgression(a, d) for a, d in progs],
    )
    verdict = decide_nat_reversible(m)
    assert verdict.reversible == _grid_expectation(k, progs)
    if not verdict.reversible:
        assert isinstance(verdict.details, GcdFailure)
        assert verify_witness(m, verdict.witness)


def test_independent_sets_have_gcd_below_minimum():
    for size in (2, 3):
        for k in itertools.combinations(range(1, 21), size):
            if is_independent(k)[0]:
                assert math.gcd(*k) < min(k), k


def _random_multiset(rng: random.Random) -> NatMultiset:
    values = [
        (rng.randint(1, 20), INF if rng.random() < 0.5 else Count.fin(rng.randint(1, 3)))
        for _ in range(rng.randint(0, 4))
    ]
    progs = [
        NatProgression(rng.randint(1, 10), rng.randint(1, 6), rng.randint(1, 2))
        for _ in range(rng.randint(0, 2))
    ]
    return NatMultiset.of(values, progs)


def test_sub_multisets_of_reversible_sequences_are_reversible():
    rng = random.Random(7)
    failures = []
    for _ in range(2000):
        m = _random_multiset(rng)
        if not decide_nat_reversible(m, with_witness=False).reversible:
            continue
        for _ in range(5):
            sub = random_sub_multiset(m, rng)
            if not decide_nat_reversible(sub, with_witness=False).reversible:
                failures.append((str(m), str(sub)))
    assert failures == []
