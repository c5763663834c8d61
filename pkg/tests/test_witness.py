"""Tests for witness construction, serialization and verification."""
import json

import pytest

from ordrev.core.counts import INF, Count
from ordrev.core.decide import decide
from ordrev.core.family import FamilyPresentation, Orientation, Single
from ordrev.core.natrev import (
    CardinalSequence,
    CardinalValue,
    NatMultiset,
    NatProgression,
    SemigroupCertificate,
    decide_nat_reversible,
)
from ordrev.core.ordinal import OMEGA, Ordinal, shift
from ordrev.errors import NotNonReversible
from ordrev.witness.builder import build_witness
from ordrev.witness.models import (
    CardinalAbsorb,
    MergeShift,
    OrdinalShift,
    SparseChain,
    plan_from_dict,
)
from ordrev.witness.verifier import (
    MergeShiftMap,
    SparseChainMap,
    Universe,
    _nat_combine,
    check_map,
    nat_universe,
    verify_witness,
)

W = Orientation.W
TWO_FOUR = NatMultiset.of([(2, INF), (4, INF)])


def cert(target: int, **coefficients: int) -> SemigroupCertificate:
    return SemigroupCertificate.from_mapping(target, {int(g[1:]): c for g, c in coefficients.items()})


class IdentityMap:
    def image(self, slot):
        return slot

    def preimages(self, slot):
        return [slot]


# ---------------------------------------------------------------------------
# Construction
# ---------------------------------------------------------------------------

def test_build_witness_rejects_reversible_verdict():
    verdict = decide_nat_reversible(NatMultiset.of([(2, INF), (5, INF)]))
    with pytest.raises(NotNonReversible):
        build_witness(verdict)


def test_build_witness_matches_attached_plan():
    verdict = decide_nat_reversible(TWO_FOUR, with_witness=False)
    assert verdict.witness is None
    plan = build_witness(verdict)
    assert plan == MergeShift(4, cert(4, g2=2))
    assert plan.donor_shifts == {2: 2}


def test_merge_shift_never_cites_its_target():
    m = NatMultiset.of([(3, INF), (6, INF), (9, INF)])
    plan = decide_nat_reversible(m).witness
    assert isinstance(plan, MergeShift)
    assert plan.target_value not in plan.donor_shifts


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------

def test_plans_reverify_after_reload():
    """Test that every plan kind survives to_dict -> JSON -> plan_from_dict."""
    family = FamilyPresentation(
        (Single(W, Ordinal.of(1), INF), Single(W, OMEGA), Single(W, shift(OMEGA, 2), INF))
    )
    cases = [
        (TWO_FOUR, decide_nat_reversible(TWO_FOUR).witness),
        (
            NatMultiset.of([(3, INF), (5, INF)], [NatProgression(8, 15)]),
            decide_nat_reversible(NatMultiset.of([(3, INF), (5, INF)], [NatProgression(8, 15)])).witness,
        ),
        (family, decide(family).witness),
    ]
    seq = CardinalSequence.of([(CardinalValue.aleph(0), INF)])
    cases.append((seq, CardinalAbsorb(CardinalValue.aleph(0), CardinalValue.aleph(0))))

    kinds = set()
    for subject, plan in cases:
        reloaded = plan_from_dict(json.loads(json.dumps(plan.to_dict())))
        assert reloaded == plan
        assert verify_witness(subject, reloaded)
        kinds.add(reloaded.kind)
    assert kinds == {"MergeShift", "SparseChain", "OrdinalShift", "CardinalAbsorb"}


def test_plan_from_dict_rejects_unknown_input():
    with pytest.raises(ValueError):
        plan_from_dict({"schema": 99, "kind": "MergeShift"})
    with pytest.raises(ValueError):
        plan_from_dict({"schema": 1, "kind": "Teleport"})


def test_ordinal_shift_dict_carries_split_directive():
    data = OrdinalShift(shift(OMEGA, 3), Ordinal.of(2)).to_dict()
    assert data["splitDirective"] == {"gamma": "w", "alpha": "2"}


# ---------------------------------------------------------------------------
# Verification failures
# ---------------------------------------------------------------------------

def test_verify_rejects_unavailable_target():
    check = verify_witness(TWO_FOUR, MergeShift(6, cert(6, g2=3)))
    assert check.error_type == "availability"


def test_verify_rejects_target_among_parts():
    check = verify_witness(TWO_FOUR, MergeShift(4, cert(4, g4=1)))
    assert check.error_type == "target_in_parts"


def test_verify_rejects_wrong_sum():
    check = verify_witness(TWO_FOUR, MergeShift(4, SemigroupCertificate(4, ((2, 1),))))
    assert check.error_type == "certificate"


def test_verify_rejects_wrong_gcd():
    m = NatMultiset.of([(2, INF), (5, INF)], [NatProgression(1, 1)])
    plan = decide_nat_reversible(m).witness
    assert isinstance(plan, SparseChain)
    bad = SparseChain(
        g=2,
        source=plan.source,
        k0=plan.k0,
        stride=plan.stride,
        init_cert=plan.init_cert,
        step_cert=plan.step_cert,
        donor_doubling=plan.donor_doubling,
    )
    assert verify_witness(m, bad).error_type == "gcd_mismatch"


def test_verify_rejects_prefix_beyond_limit_part():
    family = FamilyPresentation((Single(W, shift(OMEGA, 1), INF), Single(W, OMEGA)))
    check = verify_witness(family, OrdinalShift(OMEGA, shift(OMEGA, 1)))
    assert check.error_type == "alpha_too_big"


def test_verify_rejects_mismatched_subject():
    check = verify_witness(TWO_FOUR, CardinalAbsorb(CardinalValue.aleph(0), CardinalValue.fin(2)))
    assert check.error_type == "subject_mismatch"
    check = verify_witness(TWO_FOUR, OrdinalShift(OMEGA, Ordinal.of(2)))
    assert check.error_type == "subject_mismatch"


def test_verify_rejects_finite_host():
    seq = CardinalSequence.of([(CardinalValue.fin(5), Count.fin(1)), (CardinalValue.fin(2), INF)])
    check = verify_witness(seq, CardinalAbsorb(CardinalValue.fin(5), CardinalValue.fin(2)))
    assert check.error_type == "schema"


# ---------------------------------------------------------------------------
# Element-level check
# ---------------------------------------------------------------------------

def test_check_map_requires_a_merge():
    check, merges = check_map(nat_universe(TWO_FOUR), IdentityMap(), lambda parts, whole: None, 16)
    assert check.error_type == "injective"
    assert merges == set()


def test_check_map_detects_missing_image():
    universe = Universe()
    universe.add("a", 1, lambda _i: 1)

    class Teleport(IdentityMap):
        def image(self, slot):
            return ("b", 0)

    check, _ = check_map(universe, Teleport(), lambda parts, whole: None, 16)
    assert check.error_type == "image_missing"


def test_check_map_records_merge_sizes():
    plan = MergeShift(4, cert(4, g2=2))
    check, merges = check_map(nat_universe(TWO_FOUR), MergeShiftMap(plan), _nat_combine, 16)
    assert check
    assert merges == {2}


# ---------------------------------------------------------------------------
# Merges far from the start of their class
# ---------------------------------------------------------------------------

FAR = NatMultiset.of([(300, INF), (301, INF)], [NatProgression(1, 1)])


def test_sparse_chain_with_distant_first_target():
    """Test that the first target (member 300, index 299) lies beyond the window yet verifies."""
    verdict = decide_nat_reversible(FAR)
    plan = verdict.witness
    assert isinstance(plan, SparseChain)
    assert plan.k0 == 299
    assert plan.stride == 300
    assert verify_witness(FAR, plan, depth=4)


def test_anchors_supply_the_merges():
    plan = decide_nat_reversible(FAR).witness
    mapping = SparseChainMap(plan)
    check, _ = check_map(nat_universe(FAR), mapping, _nat_combine, 16)
    assert check.error_type == "injective"
    check, merges = check_map(
        nat_universe(FAR), mapping, _nat_combine, 16, anchors=mapping.anchors(16)
    )
    assert check
    assert merges == {2}


def test_small_depth_still_sees_merge_shift():
    m = NatMultiset.of([(3, INF), (9, INF)])
    plan = decide_nat_reversible(m, witness_depth=1).witness
    assert plan == MergeShift(9, cert(9, g3=3))
    assert verify_witness(m, plan, depth=1)


def test_verify_rejects_non_positive_depth():
    with pytest.raises(ValueError):
        verify_witness(TWO_FOUR, MergeShift(4, cert(4, g2=2)), depth=0)
