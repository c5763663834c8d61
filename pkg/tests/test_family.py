"""Tests for family presentations: normalization, multiplicities, tails and splits."""
import pytest
from hypothesis import given

from ordrev.core.counts import ABSENT, INF, Count
from ordrev.core.family import (
    FamilyPresentation,
    Orientation,
    Progression,
    Single,
    cardinal_sequence,
    limit_part_family,
    limit_parts,
    multiplicity,
    normalize,
    split,
    tail_multiset,
)
from ordrev.core.natrev import CardinalValue, NatProgression
from ordrev.core.ordinal import OMEGA, ZERO, Ordinal, omega_power, shift
from ordrev.errors import EmptyFamily, InvalidPresentation, ZeroOrdinal
from strategies import families

W, WSTAR = Orientation.W, Orientation.WSTAR


def fam(*entries) -> FamilyPresentation:
    return FamilyPresentation(tuple(entries))


def mixed_tails_family() -> FamilyPresentation:
    """n+1 for every n, w fourteen times, w+4 and w+6 uncountably often, w+2n+1."""
    return fam(
        Progression(W, ZERO, 1, 1),
        Single(W, OMEGA, Count.fin(14)),
        Single(W, shift(OMEGA, 4), INF),
        Single(W, shift(OMEGA, 6), INF),
        Progression(W, OMEGA, 1, 2),
    )


def _direct_multiplicity(p: FamilyPresentation, alpha: Ordinal, orientation: Orientation) -> Count:
    total = ABSENT
    for entry in p.entries:
        finite = entry.is_finite_chain
        if not finite and entry.orientation is not orientation:
            continue
        if isinstance(entry, Single):
            if entry.value == alpha:
                total = total + entry.count
        else:
            for k in range(40):
                if entry.member(k) == alpha:
                    total = total + Count.fin(entry.count_per_member)
    return total


# ---------------------------------------------------------------------------
# Validation and normalization
# ---------------------------------------------------------------------------

def test_normalize_rejects_empty_family():
    with pytest.raises(EmptyFamily):
        normalize(fam())


def test_validate_rejects_bad_entries():
    """Test the structural invariants of entries."""
    with pytest.raises(ZeroOrdinal):
        normalize(fam(Single(W, ZERO)))
    with pytest.raises(ZeroOrdinal):
        normalize(fam(Progression(W, ZERO, 0, 1)))
    with pytest.raises(InvalidPresentation):
        normalize(fam(Progression(W, shift(OMEGA, 1), 0, 1)))
    with pytest.raises(InvalidPresentation):
        normalize(fam(Progression(W, OMEGA, 1, 0)))
    with pytest.raises(InvalidPresentation):
        normalize(fam(Single(W, OMEGA, Count.fin(0))))


def test_normalize_merges_and_reorients_finite_chains():
    """Test that finite chains become W and equal entries merge."""
    p = normalize(
        fam(
            Single(WSTAR, Ordinal.of(3), Count.fin(2)),
            Single(W, Ordinal.of(3)),
            Single(WSTAR, OMEGA),
            Progression(WSTAR, ZERO, 1, 2),
            Progression(W, ZERO, 1, 2, 2),
        )
    )
    assert Single(W, Ordinal.of(3), Count.fin(3)) in p.entries
    assert Progression(W, ZERO, 1, 2, 3) in p.entries
    assert Single(WSTAR, OMEGA) in p.entries
    assert len(p) == 3


def test_normalize_infinite_count_absorbs():
    p = normalize(fam(Single(W, OMEGA, Count.fin(2)), Single(W, OMEGA, INF)))
    assert p.entries == (Single(W, OMEGA, INF),)


@given(families())
def test_normalize_is_idempotent(p):
    once = normalize(p)
    assert normalize(once) == once


@given(families())
def test_normalize_preserves_multiplicities(p):
    """Test normalization against a direct per-entry summation."""
    normalized = normalize(p)
    candidates = {e.value for e in p.singles}
    for prog in p.progressions:
        candidates.update(prog.member(k) for k in range(6))
    for alpha in candidates:
        for orientation in Orientation:
            before = _direct_multiplicity(p, alpha, orientation)
            assert multiplicity(normalized, alpha, orientation) == before


# ---------------------------------------------------------------------------
# Multiplicities and tails
# ---------------------------------------------------------------------------

def test_multiplicity_examples():
    p = normalize(mixed_tails_family())
    assert multiplicity(p, shift(OMEGA, 4), W).is_infinite
    assert multiplicity(p, OMEGA, W) == Count.fin(14)
    assert multiplicity(p, shift(OMEGA, 5), W) == Count.fin(1)
    assert multiplicity(p, shift(OMEGA, 2), W).is_absent
    assert multiplicity(p, Ordinal.of(3), WSTAR) == Count.fin(1)
    assert multiplicity(p, shift(OMEGA, 4), WSTAR).is_absent


def test_tail_multiset_examples():
    """Test the tails over w: the tail-0 chains are excluded."""
    tails = tail_multiset(normalize(mixed_tails_family()), OMEGA, W)
    assert tails.singles == ((4, INF), (6, INF))
    assert tails.progressions == (NatProgression(1, 2),)


def test_tail_multiset_clips_progression_at_gamma():
    tails = tail_multiset(fam(Progression(W, OMEGA, 0, 3)), OMEGA, W)
    assert tails.progressions == (NatProgression(3, 3),)


def test_limit_parts_and_split():
    p = normalize(mixed_tails_family())
    assert limit_parts(p) == (ZERO, OMEGA)
    stats = split(p)
    assert stats.gamma_star == OMEGA
    assert not stats.finite_to_one
    assert stats.split.has_infinite_w and not stats.split.has_infinite_wstar


@given(families())
def test_split_places_entries(p):
    """Test that finite chains go to both parts and infinite chains to exactly one."""
    p = normalize(p)
    parts = split(p).split
    for entry in p.entries:
        in_w = entry in parts.p_w.entries
        in_wstar = entry in parts.p_wstar.entries
        if entry.is_finite_chain:
            assert in_w and in_wstar
        else:
            assert in_w != in_wstar
    assert len(parts.p_w) + len(parts.p_wstar) - sum(e.is_finite_chain for e in p.entries) == len(p)


@given(families())
def test_finite_to_one_matches_infinite_singles(p):
    p = normalize(p)
    expected = all(multiplicity(p, e.value, e.orientation).is_finite for e in p.singles)
    assert split(p).finite_to_one == expected


# ---------------------------------------------------------------------------
# Derived sequences
# ---------------------------------------------------------------------------

def test_cardinal_sequence_collapses_infinite_chains():
    seq = cardinal_sequence(normalize(mixed_tails_family()))
    assert seq.count_of(CardinalValue.aleph(0)).is_infinite
    assert seq.count_of(CardinalValue.fin(5)) == Count.fin(1)
    assert not seq.all_finite


def test_limit_part_family():
    p = normalize(fam(Single(W, shift(OMEGA, 3), Count.fin(2)), Progression(W, omega_power(2), 1, 1)))
    q = limit_part_family(p)
    assert q is not None
    assert q.entries == (Single(W, OMEGA, Count.fin(2)), Single(W, omega_power(2), INF))


def test_limit_part_family_none_when_zero_repeats():
    assert limit_part_family(normalize(fam(Single(W, Ordinal.of(2), INF), Single(W, OMEGA)))) is None
    assert limit_part_family(normalize(fam(Single(W, Ordinal.of(2))))) is None
