"""Finite presentations of indexed families of well orders and reversed well orders."""
from __future__ import annotations

import logging
from collections.abc import Iterator
from dataclasses import dataclass, replace
from enum import Enum
from typing import Union

from ordrev.core.counts import ABSENT, INF, Count
from ordrev.core.natrev import CardinalSequence, CardinalValue, NatMultiset, NatProgression
from ordrev.core.ordinal import ZERO, Ordinal, decompose, limit_part, shift
from ordrev.errors import EmptyFamily, InvalidPresentation, ZeroOrdinal

logger = logging.getLogger(__name__)


class Orientation(str, Enum):
    """W is a well order alpha, WSTAR its reverse alpha*."""
    W = "wo"
    WSTAR = "rwo"


@dataclass(frozen=True)
class Single:
    """``count`` chains of type ``value`` (reversed when orientation is WSTAR)."""
    orientation: Orientation
    value: Ordinal
    count: Count = Count(1)

    @property
    def is_finite_chain(self) -> bool:
        return self.value.is_finite

    @property
    def limit_part(self) -> Ordinal:
        return limit_part(self.value)


@dataclass(frozen=True)
class Progression:
    """Chains of type gamma + (a + d*k) for every k >= 0, each count_per_member times."""
    orientation: Orientation
    gamma: Ordinal
    a: int
    d: int
    count_per_member: int = 1

    def member(self, k: int) -> Ordinal:
        return shift(self.gamma, self.a + self.d * k)

    @property
    def first_member(self) -> Ordinal:
        return self.member(0)

    def contains(self, alpha: Ordinal) -> bool:
        dec = decompose(alpha)
        return dec.gamma == self.gamma and dec.n >= self.a and (dec.n - self.a) % self.d == 0

    @property
    def is_finite_chain(self) -> bool:
        return self.gamma.is_zero

    @property
    def limit_part(self) -> Ordinal:
        return self.gamma


ChainEntry = Union[Single, Progression]


@dataclass(frozen=True)
class FamilyPresentation:
    entries: tuple[ChainEntry, ...] = ()

    def __iter__(self) -> Iterator[ChainEntry]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def singles(self) -> tuple[Single, ...]:
        return tuple(e for e in self.entries if isinstance(e, Single))

    @property
    def progressions(self) -> tuple[Progression, ...]:
        return tuple(e for e in self.entries if isinstance(e, Progression))


@dataclass(frozen=True)
class OrientationSplit:
    p_w: FamilyPresentation
    p_wstar: FamilyPresentation
    has_infinite_w: bool
    has_infinite_wstar: bool


@dataclass(frozen=True)
class FamilyStats:
    limit_parts: tuple[Ordinal, ...]
    gamma_star: Ordinal
    finite_to_one: bool
    split: OrientationSplit


def validate_entry(entry: ChainEntry) -> None:
    """
    Check the structural invariants of one chain entry.

    Raises:
        ZeroOrdinal: a chain (or progression member) would have type 0
        InvalidPresentation: any other violated invariant
    """
    if isinstance(entry, Single):
        if entry.value.is_zero:
            raise ZeroOrdinal("chain type must be a nonzero ordinal")
        if entry.count.is_absent:
            raise InvalidPresentation(f"chain {entry.value} has count 0")
        return

    if entry.gamma.is_successor:
        raise InvalidPresentation(f"progression base {entry.gamma} is not a limit ordinal or 0")
    if entry.a < 0:
        raise InvalidPresentation(f"progression offset must be >= 0, got {entry.a}")
    if entry.gamma.is_zero and entry.a == 0:
        raise ZeroOrdinal("progression would contain the empty chain 0")
    if entry.d < 1:
        raise InvalidPresentation(f"progression step must be positive, got {entry.d}")
    if entry.count_per_member < 1:
        raise InvalidPresentation(
            f"count per member must be positive, got {entry.count_per_member}"
        )


def _sort_key(entry: ChainEntry) -> tuple:
    orient = 0 if entry.orientation is Orientation.W else 1
    if isinstance(entry, Single):
        return (orient, 0, entry.value, 0, 0)
    return (orient, 1, entry.gamma, entry.a, entry.d)


def normalize(p: FamilyPresentation) -> FamilyPresentation:
    """
    Canonical form of a presentation.

    Finite chains are re-oriented to W (n and n* are isomorphic), singles with
    equal (orientation, value) are merged by adding counts, identical
    progressions are merged by adding count_per_member, and entries are sorted.
    Idempotent.

    Raises:
        EmptyFamily: no entries
        ZeroOrdinal, InvalidPresentation: see validate_entry()
    """
    if not p.entries:
        raise EmptyFamily("family has no entries")

    singles: dict[tuple[Orientation, Ordinal], Count] = {}
    progressions: dict[tuple[Orientation, Ordinal, int, int], int] = {}
    for entry in p.entries:
        validate_entry(entry)
        if entry.is_finite_chain and entry.orientation is not Orientation.W:
            entry = replace(entry, orientation=Orientation.W)
        if isinstance(entry, Single):
            key = (entry.orientation, entry.value)
            singles[key] = singles.get(key, ABSENT) + entry.count
        else:
            pkey = (entry.orientation, entry.gamma, entry.a, entry.d)
            progressions[pkey] = progressions.get(pkey, 0) + entry.count_per_member

    entries: list[ChainEntry] = [Single(o, v, c) for (o, v), c in singles.items()]
    entries += [Progression(o, g, a, d, c) for (o, g, a, d), c in progressions.items()]
    entries.sort(key=_sort_key)
    return FamilyPresentation(tuple(entries))


def _orientation_matches(entry: ChainEntry, orientation: Orientation) -> bool:
    return entry.is_finite_chain or entry.orientation is orientation


def multiplicity(p: FamilyPresentation, alpha: Ordinal, orientation: Orientation) -> Count:
    """|I_alpha|: how many chains have type alpha. Orientation is ignored for finite alpha."""
    total = ABSENT
    for entry in p.entries:
        if not _orientation_matches(entry, orientation):
            continue
        if isinstance(entry, Single):
            if entry.value == alpha:
                total = total + entry.count
        elif entry.contains(alpha):
            total = total + Count.fin(entry.count_per_member)
    return total


def tail_multiset(p: FamilyPresentation, gamma: Ordinal, orientation: Orientation) -> NatMultiset:
    """
    The finite tails n >= 1 of the chains gamma + n with limit part exactly gamma.

    Chains equal to gamma itself (tail 0) are excluded; a progression starting
    at gamma is clipped to its second member.
    """
    singles: list[tuple[int, Count]] = []
    progressions: list[NatProgression] = []
    for entry in p.entries:
        if not _orientation_matches(entry, orientation) or entry.limit_part != gamma:
            continue
        if isinstance(entry, Single):
            n = decompose(entry.value).n
            if n >= 1:
                singles.append((n, entry.count))
        else:
            a = entry.a if entry.a >= 1 else entry.a + entry.d
            progressions.append(NatProgression(a, entry.d, entry.count_per_member))
    return NatMultiset.of(singles, progressions)


def limit_parts(p: FamilyPresentation) -> tuple[Ordinal, ...]:
    """The distinct limit parts present, ascending."""
    return tuple(sorted({entry.limit_part for entry in p.entries}))


def split(p: FamilyPresentation) -> FamilyStats:
    """
    Orientation split: P_W holds the finite chains and the infinite W chains,
    P_Wstar the finite chains and the infinite W* chains.
    """
    parts = limit_parts(p)
    w: list[ChainEntry] = []
    wstar: list[ChainEntry] = []
    for entry in p.entries:
        if entry.is_finite_chain:
            w.append(entry)
            wstar.append(entry)
        elif entry.orientation is Orientation.W:
            w.append(entry)
        else:
            wstar.append(entry)

    has_infinite_w = any(not e.is_finite_chain for e in w)
    has_infinite_wstar = any(not e.is_finite_chain for e in wstar)
    finite_to_one = not any(isinstance(e, Single) and e.count.is_infinite for e in p.entries)

    return FamilyStats(
        limit_parts=parts,
        gamma_star=parts[-1] if parts else ZERO,
        finite_to_one=finite_to_one,
        split=OrientationSplit(
            p_w=FamilyPresentation(tuple(w)),
            p_wstar=FamilyPresentation(tuple(wstar)),
            has_infinite_w=has_infinite_w,
            has_infinite_wstar=has_infinite_wstar,
        ),
    )


def cardinal_sequence(p: FamilyPresentation) -> CardinalSequence:
    """
    The sequence of cardinalities <|alpha_i|>.

    Every infinite ordinal below epsilon_0 is countable, so infinite chains
    map to aleph_0.
    """
    values: list[tuple[CardinalValue, Count]] = []
    progressions: list[NatProgression] = []
    for entry in p.entries:
        if isinstance(entry, Single):
            value = entry.value
            card = CardinalValue.fin(value.finite_value) if value.is_finite else CardinalValue.aleph(0)
            values.append((card, entry.count))
        elif entry.gamma.is_zero:
            progressions.append(NatProgression(entry.a, entry.d, entry.count_per_member))
        else:
            values.append((CardinalValue.aleph(0), INF))
    return CardinalSequence.of(values, progressions)


def limit_part_family(p: FamilyPresentation) -> FamilyPresentation | None:
    """
    The family of nonzero limit parts <gamma_i>.

    Returns None when infinitely many gamma_i are 0 (that sequence is not
    finite-to-one) or when every gamma_i is 0.
    """
    entries: list[ChainEntry] = []
    for entry in p.entries:
        gamma = entry.limit_part
        if isinstance(entry, Single):
            if gamma.is_zero:
                if entry.count.is_infinite:
                    return None
                continue
            entries.append(Single(entry.orientation, gamma, entry.count))
        else:
            if gamma.is_zero:
                return None
            entries.append(Single(entry.orientation, gamma, INF))
    if not entries:
        return None
    return normalize(FamilyPresentation(tuple(entries)))
