"""Witness plans: finite schemas of non-injective surjections of an index set."""
from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass
from typing import Any, ClassVar, Union

from ordrev.core.family import Orientation
from ordrev.core.natrev import CardinalValue, NatProgression, SemigroupCertificate
from ordrev.core.ordinal import ZERO, Ordinal, limit_part

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class WitnessCheck:
    """Result of checking a plan or a coloring."""
    is_valid: bool
    error_type: str | None = None
    error_message: str | None = None

    def __bool__(self) -> bool:
        return self.is_valid

    def to_dict(self) -> dict[str, Any]:
        return {
            "isValid": self.is_valid,
            "errorType": self.error_type,
            "errorMessage": self.error_message,
        }


def failed(error_type: str, message: str) -> WitnessCheck:
    return WitnessCheck(False, error_type, message)


VALID = WitnessCheck(True)


@dataclass(frozen=True)
class MergeShift:
    """
    Merge donors into one copy of an infinitely repeated value t.

    The t-chains shift forward (t_k -> t_{k+1}), which frees t_0; the first
    c_v chains of each donor value v merge into t_0 and the remaining
    v-chains shift back by c_v.
    """

    kind: ClassVar[str] = "MergeShift"

    target_value: int
    parts: SemigroupCertificate
    limit_part: Ordinal = ZERO
    orientation: Orientation = Orientation.W

    @property
    def donor_shifts(self) -> dict[int, int]:
        return self.parts.as_dict()

    def to_dict(self) -> dict[str, Any]:
        return {
            "schema": SCHEMA_VERSION,
            "kind": self.kind,
            "targetValue": self.target_value,
            "parts": self.parts.to_dict(),
            "donorShifts": {str(v): c for v, c in self.parts.coefficients},
            "limitPart": str(self.limit_part),
            "orientation": self.orientation.value,
        }


@dataclass(frozen=True)
class SparseChain:
    """
    Chain of targets inside one progression.

    Targets are the members with index k0 + j*stride. Target 0 is built from
    donors (init_cert); target j+1 absorbs target j plus donors worth
    d*stride (step_cert). Donor classes in donor_doubling map v_{2k} -> v_k,
    so their odd-indexed chains are free to be consumed.
    """

    kind: ClassVar[str] = "SparseChain"

    g: int
    source: NatProgression
    k0: int
    stride: int
    init_cert: SemigroupCertificate
    step_cert: SemigroupCertificate
    donor_doubling: frozenset[int]
    limit_part: Ordinal = ZERO
    orientation: Orientation = Orientation.W

    @property
    def first_target(self) -> int:
        return self.source.member(self.k0)

    def to_dict(self) -> dict[str, Any]:
        return {
            "schema": SCHEMA_VERSION,
            "kind": self.kind,
            "g": self.g,
            "sourceProgression": self.source.to_dict(),
            "k0": self.k0,
            "stride": self.stride,
            "initCert": self.init_cert.to_dict(),
            "stepCert": self.step_cert.to_dict(),
            "donorDoubling": sorted(self.donor_doubling),
            "limitPart": str(self.limit_part),
            "orientation": self.orientation.value,
        }


@dataclass(frozen=True)
class OrdinalShift:
    """host <- {host, a_0} and a_{k+1} -> a_k for the infinitely repeated alpha."""

    kind: ClassVar[str] = "OrdinalShift"

    host_value: Ordinal
    repeated_value: Ordinal
    orientation: Orientation = Orientation.W

    @property
    def split_directive(self) -> tuple[Ordinal, Ordinal]:
        """Arguments of the split_prefix() call that partitions the host."""
        return limit_part(self.host_value), self.repeated_value

    def to_dict(self) -> dict[str, Any]:
        gamma, alpha = self.split_directive
        return {
            "schema": SCHEMA_VERSION,
            "kind": self.kind,
            "hostValue": str(self.host_value),
            "repeatedValue": str(self.repeated_value),
            "splitDirective": {"gamma": str(gamma), "alpha": str(alpha)},
            "orientation": self.orientation.value,
        }


@dataclass(frozen=True)
class CardinalAbsorb:
    """The cardinal analogue of OrdinalShift: host + repeated = host."""

    kind: ClassVar[str] = "CardinalAbsorb"

    host: CardinalValue
    repeated: CardinalValue

    def to_dict(self) -> dict[str, Any]:
        return {
            "schema": SCHEMA_VERSION,
            "kind": self.kind,
            "host": str(self.host),
            "repeated": str(self.repeated),
        }


WitnessPlan = Union[MergeShift, SparseChain, OrdinalShift, CardinalAbsorb]


def plan_from_dict(data: Mapping[str, Any]) -> WitnessPlan:
    """
    Rebuild a plan from its to_dict() form.

    Raises:
        ValueError: unknown kind or schema version
    """
    from ordrev.dsl.parser import parse_ordinal

    if data.get("schema") != SCHEMA_VERSION:
        raise ValueError(f"unsupported witness schema: {data.get('schema')!r}")

    kind = data.get("kind")
    if kind == MergeShift.kind:
        return MergeShift(
            target_value=int(data["targetValue"]),
            parts=SemigroupCertificate.from_dict(data["parts"]),
            limit_part=parse_ordinal(data.get("limitPart", "0")),
            orientation=Orientation(data.get("orientation", "wo")),
        )
    if kind == SparseChain.kind:
        return SparseChain(
            g=int(data["g"]),
            source=NatProgression.from_dict(data["sourceProgression"]),
            k0=int(data["k0"]),
            stride=int(data["stride"]),
            init_cert=SemigroupCertificate.from_dict(data["initCert"]),
            step_cert=SemigroupCertificate.from_dict(data["stepCert"]),
            donor_doubling=frozenset(int(v) for v in data["donorDoubling"]),
            limit_part=parse_ordinal(data.get("limitPart", "0")),
            orientation=Orientation(data.get("orientation", "wo")),
        )
    if kind == OrdinalShift.kind:
        return OrdinalShift(
            host_value=parse_ordinal(data["hostValue"]),
            repeated_value=parse_ordinal(data["repeatedValue"]),
            orientation=Orientation(data.get("orientation", "wo")),
        )
    if kind == CardinalAbsorb.kind:
        return CardinalAbsorb(
            host=CardinalValue.parse(data["host"]),
            repeated=CardinalValue.parse(data["repeated"]),
        )
    raise ValueError(f"unknown witness kind: {kind!r}")
