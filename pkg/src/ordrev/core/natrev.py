"""Reversibility of sequences of natural numbers and of cardinals.

A sequence <n_i> of positive integers is reversible iff the set K of values
occurring infinitely often is independent (no element of K is a sum of the
others) and, when K is nonempty, gcd(K) divides only finitely many distinct
values of the sequence. A sequence of cardinals is reversible iff it is
finite-to-one or it is a reversible sequence of natural numbers.
"""
from __future__ import annotations

import logging
from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from functools import total_ordering
from math import gcd
from typing import Any

from ordrev.core.counts import ABSENT, Count
from ordrev.core.verdict import (
    CardinalAbsorbFailure,
    Clause,
    GcdFailure,
    IndependenceFailure,
    TraceStep,
    Verdict,
)
from ordrev.errors import InvalidPresentation, InvariantViolation, ZeroValue

logger = logging.getLogger(__name__)

DEFAULT_WITNESS_DEPTH = 256


# ---------------------------------------------------------------------------
# Natural-number multisets
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NatProgression:
    """The values {a + d*k : k >= 0}, each occurring count_per_member times."""
    a: int
    d: int
    count_per_member: int = 1

    def __post_init__(self) -> None:
        if self.a < 1:
            raise ZeroValue(f"progression must start at a positive value, got a={self.a}")
        if self.d < 1:
            raise InvalidPresentation(f"progression step must be positive, got d={self.d}")
        if self.count_per_member < 1:
            raise InvalidPresentation(
                f"count per member must be positive, got {self.count_per_member}"
            )

    def member(self, k: int) -> int:
        return self.a + self.d * k

    def contains(self, n: int) -> bool:
        return n >= self.a and (n - self.a) % self.d == 0

    def to_dict(self) -> dict[str, int]:
        return {"a": self.a, "d": self.d, "countPerMember": self.count_per_member}

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> NatProgression:
        return cls(int(data["a"]), int(data["d"]), int(data.get("countPerMember", 1)))


@dataclass(frozen=True)
class NatMultiset:
    """
    A finitely presented multiset of positive integers.

    Build with ``NatMultiset.of()``, which merges repeated singles and
    identical progressions and sorts both lists.
    """

    singles: tuple[tuple[int, Count], ...] = ()
    progressions: tuple[NatProgression, ...] = ()

    @classmethod
    def of(
        cls,
        singles: Mapping[int, Count] | Iterable[tuple[int, Count]] = (),
        progressions: Iterable[NatProgression] = (),
    ) -> NatMultiset:
        pairs = singles.items() if isinstance(singles, Mapping) else singles
        merged: dict[int, Count] = {}
        for value, count in pairs:
            if value < 1:
                raise ZeroValue(f"natural-number sequences take values >= 1, got {value}")
            if count.is_absent:
                raise InvalidPresentation(f"value {value} has count 0")
            merged[value] = merged.get(value, ABSENT) + count

        per_shape: dict[tuple[int, int], int] = {}
        for prog in progressions:
            key = (prog.a, prog.d)
            per_shape[key] = per_shape.get(key, 0) + prog.count_per_member

        return cls(
            singles=tuple(sorted(merged.items())),
            progressions=tuple(NatProgression(a, d, c) for (a, d), c in sorted(per_shape.items())),
        )

    @property
    def k(self) -> tuple[int, ...]:
        """Values occurring infinitely often. Progressions never contribute."""
        return tuple(value for value, count in self.singles if count.is_infinite)

    @property
    def is_empty(self) -> bool:
        return not self.singles and not self.progressions

    @property
    def is_infinite(self) -> bool:
        """Whether the multiset has infinitely many elements."""
        return bool(self.progressions) or any(c.is_infinite for _, c in self.singles)

    @property
    def is_finite_to_one(self) -> bool:
        return not self.k

    def count_of(self, n: int) -> Count:
        total = ABSENT
        for value, count in self.singles:
            if value == n:
                total = total + count
        for prog in self.progressions:
            if prog.contains(n):
                total = total + Count.fin(prog.count_per_member)
        return total

    def to_dict(self) -> dict[str, Any]:
        return {
            "singles": [[value, count.to_json()] for value, count in self.singles],
            "progressions": [p.to_dict() for p in self.progressions],
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> NatMultiset:
        return cls.of(
            [(int(v), Count.from_json(c)) for v, c in data.get("singles", [])],
            [NatProgression.from_dict(p) for p in data.get("progressions", [])],
        )

    def __str__(self) -> str:
        parts = [f"{v}:{c}" for v, c in self.singles]
        parts += [
            f"{p.a}+{p.d}k" + (f" x{p.count_per_member}" if p.count_per_member > 1 else "")
            for p in self.progressions
        ]
        return "{" + ", ".join(parts) + "}"


# ---------------------------------------------------------------------------
# Semigroup certificates
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SemigroupCertificate:
    """target = sum(coefficient * generator), with at least one coefficient >= 1."""
    target: int
    coefficients: tuple[tuple[int, int], ...]

    @classmethod
    def from_mapping(cls, target: int, coefficients: Mapping[int, int]) -> SemigroupCertificate:
        return cls(target, tuple(sorted((g, c) for g, c in coefficients.items() if c > 0)))

    def as_dict(self) -> dict[int, int]:
        return dict(self.coefficients)

    @property
    def total(self) -> int:
        return sum(g * c for g, c in self.coefficients)

    @property
    def addends(self) -> int:
        return sum(c for _, c in self.coefficients)

    def is_valid_over(self, generators: Iterable[int]) -> bool:
        allowed = set(generators)
        return (
            self.addends >= 1
            and all(c >= 0 and g in allowed for g, c in self.coefficients)
            and self.total == self.target
        )

    def to_dict(self) -> dict[str, Any]:
        return {
            "target": self.target,
            "coefficients": {str(g): c for g, c in self.coefficients},
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> SemigroupCertificate:
        return cls.from_mapping(
            int(data["target"]), {int(g): int(c) for g, c in data["coefficients"].items()}
        )

    def __str__(self) -> str:
        terms = " + ".join(f"{c}*{g}" if c > 1 else str(g) for g, c in self.coefficients)
        return f"{self.target} = {terms}"


class SemigroupTable:
    """
    Membership table for the semigroup generated by ``gens``, grown on demand.

    Dynamic programming over 0..n; at each total the smallest usable
    generator is tried first.
    """

    def __init__(self, gens: Iterable[int]):
        self.generators = tuple(sorted({g for g in gens if g >= 1}))
        # last[s] is the generator added to reach s; 0 marks the empty sum.
        self._last: list[int | None] = [0]

    def _extend(self, n: int) -> None:
        last = self._last
        for s in range(len(last), n + 1):
            choice = None
            for g in self.generators:
                if g > s:
                    break
                if last[s - g] is not None:
                    choice = g
                    break
            last.append(choice)

    def certificate(self, n: int) -> SemigroupCertificate | None:
        """Certificate that n is a nonempty sum of generators, or None."""
        if n < 1 or not self.generators:
            return None
        self._extend(n)
        if self._last[n] is None:
            return None

        coefficients: dict[int, int] = {}
        s = n
        while s:
            g = self._last[s]
            assert g
            coefficients[g] = coefficients.get(g, 0) + 1
            s -= g
        return SemigroupCertificate.from_mapping(n, coefficients)


def semigroup_member(n: int, gens: Iterable[int]) -> SemigroupCertificate | None:
    """Certificate that n is a nonempty sum of generators, or None."""
    return SemigroupTable(gens).certificate(n)


def is_independent(k: Iterable[int]) -> tuple[bool, tuple[int, SemigroupCertificate] | None]:
    """Whether no element of K is a sum of the others; on failure, the first offender."""
    values = sorted(set(k))
    for n in values:
        cert = semigroup_member(n, [v for v in values if v != n])
        if cert is not None:
            return False, (n, cert)
    return True, None


def divides_infinitely_many(g: int, m: NatMultiset) -> bool:
    """Whether g divides infinitely many distinct values of m."""
    return _gcd_progression(g, m) is not None


def _gcd_progression(g: int, m: NatMultiset) -> NatProgression | None:
    for prog in m.progressions:
        # a + d*k = 0 (mod g) is solvable, and then recurs with period g / gcd(d, g)
        if prog.a % gcd(prog.d, g) == 0:
            return prog
    return None


def decide_nat_reversible(
    m: NatMultiset,
    *,
    with_witness: bool = True,
    witness_depth: int = DEFAULT_WITNESS_DEPTH,
) -> Verdict:
    """
    Decide whether a natural-number sequence is reversible.

    Non-reversible verdicts carry either an IndependenceFailure or a
    GcdFailure; with ``with_witness`` they also carry a verified plan.
    The empty multiset is reversible.
    """
    k = m.k
    trace = [TraceStep("K", True, f"K = {{{', '.join(map(str, k))}}}")]

    independent, offender = is_independent(k)
    if not independent:
        assert offender is not None
        target, cert = offender
        trace.append(TraceStep("independence", False, str(cert)))
        verdict = Verdict(
            reversible=False,
            clause=Clause.NAT_SEQ,
            details=IndependenceFailure(target, cert),
            k=k,
            trace=tuple(trace),
        )
        return attach_witness(verdict, m, with_witness, witness_depth)
    trace.append(TraceStep("independence", True, ""))

    if k:
        g = gcd(*k)
        prog = _gcd_progression(g, m)
        if prog is not None:
            trace.append(
                TraceStep("gcd", False, f"gcd(K) = {g} divides infinitely many of {prog.a}+{prog.d}k")
            )
            verdict = Verdict(
                reversible=False,
                clause=Clause.NAT_SEQ,
                details=GcdFailure(g, k, prog),
                k=k,
                trace=tuple(trace),
            )
            return attach_witness(verdict, m, with_witness, witness_depth)
        trace.append(TraceStep("gcd", True, f"gcd(K) = {g} divides finitely many values"))

    logger.debug(f"{m} is reversible (K={k})")
    return Verdict(reversible=True, clause=Clause.NAT_SEQ, k=k, trace=tuple(trace))


def attach_witness(verdict: Verdict, subject: Any, with_witness: bool, depth: int) -> Verdict:
    if not with_witness:
        return verdict

    from ordrev.witness.builder import build_witness
    from ordrev.witness.verifier import verify_witness

    plan = build_witness(verdict)
    check = verify_witness(subject, plan, depth=depth)
    if not check:
        logger.error(f"Constructed witness failed verification: {check.error_message}")
        raise InvariantViolation(
            f"witness for {subject} did not verify: {check.error_type}: {check.error_message}"
        )
    return verdict.with_witness(plan)


# ---------------------------------------------------------------------------
# Cardinals
# ---------------------------------------------------------------------------

@total_ordering
@dataclass(frozen=True)
class CardinalValue:
    """A positive finite cardinal or aleph_index. Every finite cardinal is below every aleph."""
    kind: str
    n: int

    def __post_init__(self) -> None:
        if self.kind not in ("fin", "aleph"):
            raise InvalidPresentation(f"unknown cardinal kind {self.kind!r}")
        if self.kind == "fin" and self.n < 1:
            raise ZeroValue(f"finite cardinals must be >= 1, got {self.n}")
        if self.n < 0:
            raise InvalidPresentation(f"aleph index must be >= 0, got {self.n}")

    @classmethod
    def fin(cls, n: int) -> CardinalValue:
        return cls("fin", n)

    @classmethod
    def aleph(cls, index: int = 0) -> CardinalValue:
        return cls("aleph", index)

    @property
    def is_infinite(self) -> bool:
        return self.kind == "aleph"

    def _key(self) -> tuple[int, int]:
        return (1 if self.is_infinite else 0, self.n)

    def __lt__(self, other: object) -> bool:
        if not isinstance(other, CardinalValue):
            return NotImplemented
        return self._key() < other._key()

    def __str__(self) -> str:
        return f"aleph_{self.n}" if self.is_infinite else str(self.n)

    @classmethod
    def parse(cls, text: str) -> CardinalValue:
        if text.startswith("aleph_"):
            return cls.aleph(int(text[len("aleph_"):]))
        return cls.fin(int(text))


def cardinal_sum(values: Iterable[CardinalValue]) -> CardinalValue:
    """Cardinal addition: the largest aleph if any summand is infinite."""
    items = list(values)
    if not items:
        raise ValueError("empty cardinal sum")
    infinite = [v for v in items if v.is_infinite]
    if infinite:
        return max(infinite)
    return CardinalValue.fin(sum(v.n for v in items))


@dataclass(frozen=True)
class CardinalSequence:
    """A finitely presented sequence of cardinals: counted values plus natural progressions."""
    values: tuple[tuple[CardinalValue, Count], ...] = ()
    progressions: tuple[NatProgression, ...] = ()

    @classmethod
    def of(
        cls,
        values: Iterable[tuple[CardinalValue, Count]],
        progressions: Iterable[NatProgression] = (),
    ) -> CardinalSequence:
        merged: dict[CardinalValue, Count] = {}
        for value, count in values:
            if count.is_absent:
                raise InvalidPresentation(f"cardinal {value} has count 0")
            merged[value] = merged.get(value, ABSENT) + count
        nat = NatMultiset.of((), progressions)
        return cls(tuple(sorted(merged.items())), nat.progressions)

    @property
    def is_empty(self) -> bool:
        return not self.values and not self.progressions

    @property
    def is_finite_to_one(self) -> bool:
        return all(c.is_finite for _, c in self.values)

    @property
    def all_finite(self) -> bool:
        return not any(v.is_infinite for v, _ in self.values)

    def count_of(self, value: CardinalValue) -> Count:
        total = ABSENT
        for v, c in self.values:
            if v == value:
                total = total + c
        if not value.is_infinite:
            for prog in self.progressions:
                if prog.contains(value.n):
                    total = total + Count.fin(prog.count_per_member)
        return total

    def to_nat_multiset(self) -> NatMultiset:
        if not self.all_finite:
            raise InvalidPresentation("sequence has infinite cardinals")
        return NatMultiset.of([(v.n, c) for v, c in self.values], self.progressions)

    def __str__(self) -> str:
        parts = [f"{v}:{c}" for v, c in self.values]
        parts += [f"{p.a}+{p.d}k" for p in self.progressions]
        return "<" + ", ".join(parts) + ">"


def decide_cardinal_reversible(
    values: CardinalSequence | Iterable[tuple[CardinalValue, Count]],
    progressions: Iterable[NatProgression] = (),
    *,
    with_witness: bool = True,
    witness_depth: int = DEFAULT_WITNESS_DEPTH,
) -> Verdict:
    """
    Decide whether a sequence of cardinals is reversible.

    All-finite input is decided exactly as the natural-number sequence. Otherwise
    the sequence is reversible iff it is finite-to-one; failures carry a
    CardinalAbsorbFailure (host + repeated = host).
    """
    seq = values if isinstance(values, CardinalSequence) else CardinalSequence.of(values, progressions)
    if seq.is_empty:
        raise InvalidPresentation("cardinal sequence has no entries")

    if seq.all_finite:
        return decide_nat_reversible(
            seq.to_nat_multiset(), with_witness=with_witness, witness_depth=witness_depth
        )

    if seq.is_finite_to_one:
        return Verdict(
            reversible=True,
            clause=Clause.I,
            trace=(TraceStep("finite-to-one", True, str(seq)),),
        )

    host = max(v for v, _ in seq.values if v.is_infinite)
    repeated = min(v for v, c in seq.values if c.is_infinite)
    verdict = Verdict(
        reversible=False,
        clause=Clause.A,
        details=CardinalAbsorbFailure(host, repeated),
        trace=(
            TraceStep("finite-to-one", False, f"{repeated} occurs infinitely often"),
            TraceStep("natural-valued", False, f"{host} is infinite"),
        ),
    )
    return attach_witness(verdict, seq, with_witness, witness_depth)


