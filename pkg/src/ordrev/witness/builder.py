"""Construct witness plans from the payload of a non-reversible verdict."""
from __future__ import annotations

import logging
from collections.abc import Callable

from ordrev.core.family import Orientation
from ordrev.core.natrev import NatProgression, SemigroupCertificate, SemigroupTable
from ordrev.core.ordinal import ZERO, Ordinal
from ordrev.core.verdict import (
    CardinalAbsorbFailure,
    Clause,
    ClauseAPayload,
    ClauseBPayload,
    GcdFailure,
    IndependenceFailure,
    Verdict,
)
from ordrev.errors import InvariantViolation, NotNonReversible
from ordrev.witness.models import (
    CardinalAbsorb,
    MergeShift,
    OrdinalShift,
    SparseChain,
    WitnessPlan,
)

logger = logging.getLogger(__name__)


def merge_shift(
    failure: IndependenceFailure,
    limit_part: Ordinal = ZERO,
    orientation: Orientation = Orientation.W,
) -> MergeShift:
    return MergeShift(failure.target, failure.certificate, limit_part, orientation)


def sparse_chain(
    failure: GcdFailure,
    limit_part: Ordinal = ZERO,
    orientation: Orientation = Orientation.W,
) -> SparseChain:
    """
    Pick the first progression member in <K> and the least stride d*s in <K>.

    Both exist: gcd(d, g) divides a, and <K> contains every large enough
    multiple of g.
    """
    g, k, prog = failure.g, failure.k, failure.progression
    # every multiple of g from g*min(K)*max(K) on lies in <K>
    bound = (g * min(k) * max(k)) // prog.d + 2 * g + 2

    table = SemigroupTable(k)
    k0, init_cert = _first_in_semigroup(prog.member, table, bound)
    stride, step_cert = _first_in_semigroup(lambda s: prog.d * s, table, bound, start=1)

    donors = frozenset(v for v, c in step_cert.coefficients if c >= 1)
    logger.debug(
        f"SparseChain over {prog.a}+{prog.d}k: k0={k0}, stride={stride}, "
        f"init {init_cert}, step {step_cert}"
    )
    return SparseChain(
        g=g,
        source=NatProgression(prog.a, prog.d, prog.count_per_member),
        k0=k0,
        stride=stride,
        init_cert=init_cert,
        step_cert=step_cert,
        donor_doubling=donors,
        limit_part=limit_part,
        orientation=orientation,
    )


def _first_in_semigroup(
    value_at: Callable[[int], int], table: SemigroupTable, bound: int, start: int = 0
) -> tuple[int, SemigroupCertificate]:
    for i in range(start, start + bound + 1):
        cert = table.certificate(value_at(i))
        if cert is not None:
            return i, cert
    raise InvariantViolation(f"no value in <{set(table.generators)}> within {bound} steps")


def _from_payload_a(verdict: Verdict) -> WitnessPlan:
    payload = verdict.details
    assert isinstance(payload, ClauseAPayload)
    return OrdinalShift(payload.host, payload.alpha, payload.orientation)


def _from_payload_b(verdict: Verdict) -> WitnessPlan:
    payload = verdict.details
    assert isinstance(payload, ClauseBPayload)
    inner = payload.nat_verdict.details
    if isinstance(inner, IndependenceFailure):
        return merge_shift(inner, payload.gamma, payload.orientation)
    if isinstance(inner, GcdFailure):
        return sparse_chain(inner, payload.gamma, payload.orientation)
    raise InvariantViolation(f"clause B payload carries no natural-number failure: {inner!r}")


def _from_independence(verdict: Verdict) -> WitnessPlan:
    assert isinstance(verdict.details, IndependenceFailure)
    return merge_shift(verdict.details)


def _from_gcd(verdict: Verdict) -> WitnessPlan:
    assert isinstance(verdict.details, GcdFailure)
    return sparse_chain(verdict.details)


def _from_absorb(verdict: Verdict) -> WitnessPlan:
    assert isinstance(verdict.details, CardinalAbsorbFailure)
    return CardinalAbsorb(verdict.details.host, verdict.details.repeated)


BUILDERS: dict[type, Callable[[Verdict], WitnessPlan]] = {
    ClauseAPayload: _from_payload_a,
    ClauseBPayload: _from_payload_b,
    IndependenceFailure: _from_independence,
    GcdFailure: _from_gcd,
    CardinalAbsorbFailure: _from_absorb,
}


def build_witness(verdict: Verdict) -> WitnessPlan:
    """
    Build the plan matching a non-reversible verdict's payload.

    Mixed-orientation verdicts use their first failing sub-verdict.

    Raises:
        NotNonReversible: the verdict is reversible
    """
    if verdict.reversible:
        raise NotNonReversible(f"verdict (clause {verdict.clause.value}) is reversible")

    if verdict.clause is Clause.MIXED_SPLIT:
        for sub in verdict.sub_verdicts:
            if not sub.reversible:
                return sub.witness or build_witness(sub)
        raise InvariantViolation("non-reversible split verdict without a failing part")

    builder = BUILDERS.get(type(verdict.details))
    if builder is None:
        raise InvariantViolation(f"no witness construction for {type(verdict.details).__name__}")
    return builder(verdict)
