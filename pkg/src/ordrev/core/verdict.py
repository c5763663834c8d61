"""Verdicts, their clause payloads, and the decision trace."""
from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from typing import TYPE_CHECKING, Any, Union

if TYPE_CHECKING:
    from ordrev.core.family import Orientation
    from ordrev.core.natrev import (
        CardinalValue,
        NatMultiset,
        NatProgression,
        SemigroupCertificate,
    )
    from ordrev.core.ordinal import Ordinal
    from ordrev.witness.models import WitnessPlan


class Clause(str, Enum):
    """Which clause of the characterization decided the verdict."""
    I = "I"  # noqa: E741
    II = "II"
    A = "A"
    B = "B"
    MIXED_SPLIT = "MixedSplit"
    NAT_SEQ = "NatSeq"


@dataclass(frozen=True)
class TraceStep:
    """One check performed while deciding, in execution order."""
    check: str
    passed: bool
    detail: str = ""

    def to_dict(self) -> dict[str, Any]:
        return {"check": self.check, "passed": self.passed, "detail": self.detail}


@dataclass(frozen=True)
class IndependenceFailure:
    """K is not independent: target is a sum of the other elements of K."""
    target: int
    certificate: SemigroupCertificate

    def to_dict(self) -> dict[str, Any]:
        return {
            "failure": "independence",
            "target": self.target,
            "certificate": self.certificate.to_dict(),
        }


@dataclass(frozen=True)
class GcdFailure:
    """gcd(K) divides infinitely many distinct values, all inside one progression."""
    g: int
    k: tuple[int, ...]
    progression: NatProgression

    def to_dict(self) -> dict[str, Any]:
        return {
            "failure": "gcd",
            "g": self.g,
            "K": list(self.k),
            "progression": self.progression.to_dict(),
        }


@dataclass(frozen=True)
class CardinalAbsorbFailure:
    """An infinitely repeated cardinal fits into an infinite host: host + repeated = host."""
    host: CardinalValue
    repeated: CardinalValue

    def to_dict(self) -> dict[str, Any]:
        return {"failure": "absorb", "host": str(self.host), "repeated": str(self.repeated)}


@dataclass(frozen=True)
class ClauseAPayload:
    """Some alpha <= gamma_host occurs infinitely often."""
    alpha: Ordinal
    host: Ordinal
    orientation: Orientation

    def to_dict(self) -> dict[str, Any]:
        return {
            "alpha": str(self.alpha),
            "host": str(self.host),
            "orientation": self.orientation.value,
        }


@dataclass(frozen=True)
class ClauseBPayload:
    """The tails over limit part gamma are infinite and not a reversible sequence."""
    gamma: Ordinal
    tails: NatMultiset
    nat_verdict: Verdict
    orientation: Orientation

    def to_dict(self) -> dict[str, Any]:
        return {
            "gamma": str(self.gamma),
            "tails": self.tails.to_dict(),
            "natVerdict": self.nat_verdict.to_dict(),
            "orientation": self.orientation.value,
        }


@dataclass(frozen=True)
class ClauseIIPayload:
    """Reversible through the top limit part gamma_star."""
    gamma_star: Ordinal
    tails: NatMultiset
    nat_verdict: Verdict

    def to_dict(self) -> dict[str, Any]:
        return {
            "gammaStar": str(self.gamma_star),
            "tails": self.tails.to_dict(),
            "natVerdict": self.nat_verdict.to_dict(),
        }


Details = Union[
    IndependenceFailure,
    GcdFailure,
    CardinalAbsorbFailure,
    ClauseAPayload,
    ClauseBPayload,
    ClauseIIPayload,
]


@dataclass(frozen=True)
class Verdict:
    """
    Outcome of a decision.

    Reversible verdicts use clauses I, II, MixedSplit or NatSeq. Non-reversible
    verdicts returned by the deciders carry a witness plan that has already
    been verified against the decided input.
    """

    reversible: bool
    clause: Clause
    details: Details | None = None
    gamma_star: Ordinal | None = None
    k: tuple[int, ...] = ()
    sub_verdicts: tuple[Verdict, ...] = ()
    witness: WitnessPlan | None = None
    trace: tuple[TraceStep, ...] = ()

    def with_witness(self, plan: WitnessPlan) -> Verdict:
        return replace(self, witness=plan)

    def to_dict(self) -> dict[str, Any]:
        return {
            "reversible": self.reversible,
            "clause": self.clause.value,
            "gammaStar": None if self.gamma_star is None else str(self.gamma_star),
            "K": list(self.k),
            "details": None if self.details is None else self.details.to_dict(),
            "subVerdicts": [v.to_dict() for v in self.sub_verdicts],
            "witness": None if self.witness is None else self.witness.to_dict(),
            "trace": [step.to_dict() for step in self.trace],
        }
