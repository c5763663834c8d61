"""Independent verification of witness plans.

A plan describes a surjection f of the index set. Indices are slots
(class label, position); each class holds the chains of one value (or one
copy of a progression). The verifier checks the plan's schema, then walks the
first ``depth`` slots of every class together with the plan's anchors (the
first ``depth`` merge targets and their donors, wherever they sit) and
confirms that image and preimage rules agree, that every slot is hit, that
merged chains add up to the chain they merge into, and that at least one
merge happens.
"""
from __future__ import annotations

import itertools
import logging
import random
from collections.abc import Callable, Hashable, Iterable, Iterator
from math import gcd
from typing import Any, Protocol

from ordrev.core.counts import Count
from ordrev.core.family import FamilyPresentation, multiplicity, tail_multiset
from ordrev.core.natrev import (
    CardinalSequence,
    NatMultiset,
    cardinal_sum,
)
from ordrev.core.ordinal import limit_part
from ordrev.witness.coloring import partition_limit, split_prefix, validate_coloring
from ordrev.witness.models import (
    VALID,
    CardinalAbsorb,
    MergeShift,
    OrdinalShift,
    SparseChain,
    WitnessCheck,
    WitnessPlan,
    failed,
)

logger = logging.getLogger(__name__)

Slot = tuple[Hashable, int]
Subject = FamilyPresentation | NatMultiset | CardinalSequence


class Universe:
    """The instantiated classes of an index set."""

    def __init__(self) -> None:
        self._classes: dict[Hashable, tuple[int | None, Callable[[int], Any]]] = {}

    def add(self, label: Hashable, size: int | None, value_at: Callable[[int], Any]) -> None:
        self._classes[label] = (size, value_at)

    def contains(self, slot: Slot) -> bool:
        label, index = slot
        if label not in self._classes or index < 0:
            return False
        size = self._classes[label][0]
        return size is None or index < size

    def value(self, slot: Slot) -> Any:
        label, index = slot
        return self._classes[label][1](index)

    def window(self, depth: int) -> Iterator[Slot]:
        for label, (size, _) in self._classes.items():
            limit = depth if size is None else min(size, depth)
            for index in range(limit):
                yield (label, index)


class SlotMap(Protocol):
    def image(self, slot: Slot) -> Slot: ...

    def preimages(self, slot: Slot) -> list[Slot]: ...


def _size(count: Count) -> int | None:
    return count.value


def nat_universe(m: NatMultiset) -> Universe:
    universe = Universe()
    for value, count in m.singles:
        universe.add(("s", value), _size(count), lambda _i, v=value: v)
    for prog in m.progressions:
        for copy in range(prog.count_per_member):
            universe.add(("p", prog.a, prog.d, copy), None, prog.member)
    return universe


# ---------------------------------------------------------------------------
# Slot maps
# ---------------------------------------------------------------------------

class MergeShiftMap:
    def __init__(self, plan: MergeShift):
        self.target = ("s", plan.target_value)
        self.shifts = plan.donor_shifts

    def image(self, slot: Slot) -> Slot:
        label, i = slot
        if label == self.target:
            return (label, i + 1)
        shift = self._shift(label)
        if shift:
            return (self.target, 0) if i < shift else (label, i - shift)
        return slot

    def preimages(self, slot: Slot) -> list[Slot]:
        label, i = slot
        if label == self.target:
            if i > 0:
                return [(label, i - 1)]
            return [(("s", v), p) for v, c in sorted(self.shifts.items()) for p in range(c)]
        shift = self._shift(label)
        if shift:
            return [(label, i + shift)]
        return [slot]

    def anchors(self, depth: int) -> Iterator[Slot]:
        yield (self.target, 0)
        yield from self.preimages((self.target, 0))

    def _shift(self, label: Hashable) -> int:
        if isinstance(label, tuple) and label[0] == "s":
            return self.shifts.get(label[1], 0)
        return 0


class SparseChainMap:
    def __init__(self, plan: SparseChain):
        self.source = ("p", plan.source.a, plan.source.d, 0)
        self.k0 = plan.k0
        self.stride = plan.stride
        self.init = plan.init_cert.as_dict()
        self.step = plan.step_cert.as_dict()
        self.doubling = plan.donor_doubling

    def _target_index(self, k: int) -> int | None:
        if k >= self.k0 and (k - self.k0) % self.stride == 0:
            return (k - self.k0) // self.stride
        return None

    @staticmethod
    def _donor_value(label: Hashable) -> int | None:
        if isinstance(label, tuple) and label[0] == "s":
            return label[1]
        return None

    def image(self, slot: Slot) -> Slot:
        label, i = slot
        if label == self.source:
            if self._target_index(i) is not None:
                return (label, i + self.stride)
            return slot

        v = self._donor_value(label)
        if v is None:
            return slot
        c = self.init.get(v, 0)
        if v in self.doubling:
            if i % 2 == 0:
                return (label, i // 2)
            q = i // 2
            if q < c:
                return (self.source, self.k0)
            j = (q - c) // self.step[v]
            return (self.source, self.k0 + (j + 1) * self.stride)
        if c:
            return (self.source, self.k0) if i < c else (label, i - c)
        return slot

    def preimages(self, slot: Slot) -> list[Slot]:
        label, i = slot
        if label == self.source:
            j = self._target_index(i)
            if j is None:
                return [slot]
            if j == 0:
                donors: list[Slot] = []
                for v, c in sorted(self.init.items()):
                    if v in self.doubling:
                        donors += [(("s", v), 2 * q + 1) for q in range(c)]
                    else:
                        donors += [(("s", v), p) for p in range(c)]
                return donors
            merged: list[Slot] = [(label, i - self.stride)]
            for v, e in sorted(self.step.items()):
                base = self.init.get(v, 0) + (j - 1) * e
                merged += [(("s", v), 2 * (base + t) + 1) for t in range(e)]
            return merged

        v = self._donor_value(label)
        if v is None:
            return [slot]
        if v in self.doubling:
            return [(label, 2 * i)]
        c = self.init.get(v, 0)
        if c:
            return [(label, i + c)]
        return [slot]

    def anchors(self, depth: int) -> Iterator[Slot]:
        for j in range(depth):
            slot = (self.source, self.k0 + j * self.stride)
            yield slot
            yield from self.preimages(slot)


class AbsorbMap:
    """host <- {host, a_0}, a_{k+1} -> a_k; with host == repeated, a_0 <- {a_0, a_1}."""

    HOST = "host"
    REPEATED = "repeated"

    def __init__(self, same: bool):
        self.same = same

    def image(self, slot: Slot) -> Slot:
        label, i = slot
        if label == self.HOST:
            return slot
        if self.same:
            return (label, 0) if i <= 1 else (label, i - 1)
        return (self.HOST, 0) if i == 0 else (label, i - 1)

    def preimages(self, slot: Slot) -> list[Slot]:
        label, i = slot
        if label == self.HOST:
            return [slot, (self.REPEATED, 0)]
        if self.same:
            return [(label, 0), (label, 1)] if i == 0 else [(label, i + 1)]
        return [(label, i + 1)]


def absorb_universe(host: Any, repeated: Any) -> Universe:
    universe = Universe()
    universe.add(AbsorbMap.REPEATED, None, lambda _i: repeated)
    if host != repeated:
        universe.add(AbsorbMap.HOST, 1, lambda _i: host)
    return universe


# ---------------------------------------------------------------------------
# Element-level check
# ---------------------------------------------------------------------------

Combine = Callable[[list[Any], Any], str | None]


def _nat_combine(parts: list[Any], whole: Any) -> str | None:
    if sum(parts) != whole:
        return f"{' + '.join(map(str, parts))} != {whole}"
    return None


def _ordinal_combine(parts: list[Any], whole: Any) -> str | None:
    # one part is a copy of the whole, the rest fit below its limit part
    if len(parts) == 1:
        return None if parts[0] == whole else f"{parts[0]} != {whole}"
    if whole not in parts:
        return f"no part of {whole} is a copy of it"
    rest = list(parts)
    rest.remove(whole)
    gamma = limit_part(whole)
    for part in rest:
        if gamma < part:
            return f"{part} does not fit below {gamma}"
    return None


def _cardinal_combine(parts: list[Any], whole: Any) -> str | None:
    total = cardinal_sum(parts)
    return None if total == whole else f"sum of {parts} is {total}, not {whole}"


def _walk(universe: Universe, depth: int, anchors: Iterable[Slot]) -> Iterator[Slot]:
    seen: set[Slot] = set()
    for slot in itertools.chain(universe.window(depth), anchors):
        if slot not in seen:
            seen.add(slot)
            yield slot


def check_map(
    universe: Universe,
    mapping: SlotMap,
    combine: Combine,
    depth: int,
    anchors: Iterable[Slot] = (),
) -> tuple[WitnessCheck, set[int]]:
    """
    Walk the instantiated window and the anchor slots; return the check and
    the merge-group sizes seen.
    """
    merges: set[int] = set()
    for slot in _walk(universe, depth, anchors):
        if not universe.contains(slot):
            return failed("schema", f"plan refers to nonexistent {slot}"), merges
        target = mapping.image(slot)
        if not universe.contains(target):
            return failed("image_missing", f"{slot} maps to nonexistent {target}"), merges
        if slot not in mapping.preimages(target):
            return failed("inconsistent_image", f"{slot} -> {target} is not a listed preimage"), merges

        pre = mapping.preimages(slot)
        if not pre:
            return failed("no_preimage", f"{slot} is not hit"), merges
        for source in pre:
            if not universe.contains(source):
                return failed("preimage_missing", f"{slot} lists nonexistent {source}"), merges
            if mapping.image(source) != slot:
                return failed(
                    "inconsistent_preimage", f"{source} is listed for {slot} but maps elsewhere"
                ), merges

        problem = combine([universe.value(s) for s in pre], universe.value(slot))
        if problem:
            return failed("constraint", f"at {slot}: {problem}"), merges
        if len(pre) >= 2:
            merges.add(len(pre))

    if not merges:
        return failed("injective", f"no merge among the slots checked at depth {depth}"), merges
    return VALID, merges


# ---------------------------------------------------------------------------
# Schemas
# ---------------------------------------------------------------------------

def _check_merge_shift_schema(m: NatMultiset, plan: MergeShift) -> WitnessCheck:
    k = set(m.k)
    t = plan.target_value
    if t not in k:
        return failed("availability", f"target {t} does not occur infinitely often")
    if plan.parts.target != t:
        return failed("certificate", f"certificate is for {plan.parts.target}, not {t}")
    if t in plan.donor_shifts:
        return failed("target_in_parts", f"target {t} cited among its own parts")
    if not plan.parts.is_valid_over(k - {t}):
        return failed(
            "certificate", f"{plan.parts} is not a sum over infinitely repeated values {sorted(k - {t})}"
        )
    return VALID


def _check_sparse_chain_schema(m: NatMultiset, plan: SparseChain) -> WitnessCheck:
    k = m.k
    if not k:
        return failed("availability", "no value occurs infinitely often")
    g = gcd(*k)
    if plan.g != g:
        return failed("gcd_mismatch", f"plan uses g={plan.g}, gcd(K)={g}")
    if not any(p.a == plan.source.a and p.d == plan.source.d for p in m.progressions):
        return failed("missing_progression", f"{plan.source.a}+{plan.source.d}k not present")
    if plan.stride < 1 or plan.k0 < 0:
        return failed("schema", "stride must be >= 1 and k0 >= 0")
    x = plan.first_target
    if x % g:
        return failed("not_divisible", f"{g} does not divide first target {x}")
    if plan.init_cert.target != x or not plan.init_cert.is_valid_over(k):
        return failed("certificate", f"init certificate {plan.init_cert} does not give {x} over K")
    step = plan.source.d * plan.stride
    if plan.step_cert.target != step or not plan.step_cert.is_valid_over(k):
        return failed("certificate", f"step certificate {plan.step_cert} does not give {step} over K")
    expected = frozenset(v for v, c in plan.step_cert.coefficients if c >= 1)
    if plan.donor_doubling != expected:
        return failed("doubling_set", f"doubling set {sorted(plan.donor_doubling)} != {sorted(expected)}")
    return VALID


def _nat_subject(subject: Subject, plan: MergeShift | SparseChain) -> NatMultiset | None:
    if isinstance(subject, NatMultiset):
        return subject
    if isinstance(subject, FamilyPresentation):
        return tail_multiset(subject, plan.limit_part, plan.orientation)
    if isinstance(subject, CardinalSequence) and subject.all_finite:
        return subject.to_nat_multiset()
    return None


def _verify_nat_plan(
    subject: Subject, plan: MergeShift | SparseChain, depth: int, samples: int, rng: random.Random
) -> WitnessCheck:
    m = _nat_subject(subject, plan)
    if m is None:
        return failed("subject_mismatch", f"{plan.kind} needs natural-number tails")

    if isinstance(plan, MergeShift):
        schema = _check_merge_shift_schema(m, plan)
        mapping: MergeShiftMap | SparseChainMap = MergeShiftMap(plan)
    else:
        schema = _check_sparse_chain_schema(m, plan)
        mapping = SparseChainMap(plan)
    if not schema:
        return schema

    check, merges = check_map(
        nat_universe(m), mapping, _nat_combine, depth, anchors=mapping.anchors(depth)
    )
    if not check:
        return check

    # gamma + t splits into copies gamma + v: lambda copies of gamma plus the tails
    if isinstance(subject, FamilyPresentation) and not plan.limit_part.is_zero:
        for lam in sorted(merges):
            coloring_check = validate_coloring(partition_limit(plan.limit_part, lam), samples, rng)
            if not coloring_check:
                return coloring_check
    return VALID


def _verify_ordinal_shift(
    subject: Subject, plan: OrdinalShift, depth: int, samples: int, rng: random.Random
) -> WitnessCheck:
    if not isinstance(subject, FamilyPresentation):
        return failed("subject_mismatch", "OrdinalShift needs a family of ordinals")
    host, alpha = plan.host_value, plan.repeated_value
    if not multiplicity(subject, alpha, plan.orientation).is_infinite:
        return failed("availability", f"{alpha} does not occur infinitely often")
    if multiplicity(subject, host, plan.orientation).is_absent:
        return failed("availability", f"host {host} does not occur")
    gamma = limit_part(host)
    if gamma < alpha or gamma.is_zero:
        return failed("alpha_too_big", f"{alpha} does not fit below limit part {gamma} of {host}")

    check, _ = check_map(
        absorb_universe(host, alpha), AbsorbMap(host == alpha), _ordinal_combine, depth
    )
    if not check:
        return check
    return validate_coloring(split_prefix(gamma, alpha), samples, rng)


def _verify_cardinal_absorb(subject: Subject, plan: CardinalAbsorb, depth: int) -> WitnessCheck:
    if not isinstance(subject, CardinalSequence):
        return failed("subject_mismatch", "CardinalAbsorb needs a cardinal sequence")
    if not plan.host.is_infinite:
        return failed("schema", f"host {plan.host} is finite")
    if plan.host < plan.repeated:
        return failed("schema", f"{plan.repeated} exceeds host {plan.host}")
    if subject.count_of(plan.host).is_absent:
        return failed("availability", f"host {plan.host} does not occur")
    if not subject.count_of(plan.repeated).is_infinite:
        return failed("availability", f"{plan.repeated} does not occur infinitely often")

    check, _ = check_map(
        absorb_universe(plan.host, plan.repeated),
        AbsorbMap(plan.host == plan.repeated),
        _cardinal_combine,
        depth,
    )
    return check


def verify_witness(
    subject: Subject,
    plan: WitnessPlan,
    *,
    depth: int = 256,
    samples: int = 64,
    seed: int = 0,
) -> WitnessCheck:
    """
    Check that a plan encodes a non-injective surjection of the subject's index set.

    Never raises for a bad plan; the returned WitnessCheck says what failed.
    """
    if depth < 1:
        raise ValueError(f"witness depth must be positive, got {depth}")
    rng = random.Random(seed)
    if isinstance(plan, (MergeShift, SparseChain)):
        result = _verify_nat_plan(subject, plan, depth, samples, rng)
    elif isinstance(plan, OrdinalShift):
        result = _verify_ordinal_shift(subject, plan, depth, samples, rng)
    elif isinstance(plan, CardinalAbsorb):
        result = _verify_cardinal_absorb(subject, plan, depth)
    else:
        result = failed("unknown_plan", f"cannot verify {type(plan).__name__}")

    if not result:
        logger.debug(f"{type(plan).__name__} rejected: {result.error_message}")
    return result
