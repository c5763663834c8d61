"""Reversibility of disjoint unions of well orders and reversed well orders.

decide_well() computes the positive characterization: the family is
finite-to-one (clause I), or no alpha <= gamma* occurs infinitely often and
the tails over gamma* form a reversible sequence (clause II).
detect_nonrev_clause() searches for the negative conditions A and B
independently; the two must always agree.
"""
from __future__ import annotations

import logging

from ordrev.core.counts import ABSENT, Count
from ordrev.core.family import (
    ChainEntry,
    FamilyPresentation,
    Orientation,
    Progression,
    Single,
    limit_parts,
    normalize,
    split,
    tail_multiset,
)
from ordrev.core.natrev import DEFAULT_WITNESS_DEPTH, NatMultiset, attach_witness, decide_nat_reversible
from ordrev.core.ordinal import Ordinal, shift
from ordrev.core.verdict import (
    ClauseAPayload,
    ClauseBPayload,
    ClauseIIPayload,
    Clause,
    TraceStep,
    Verdict,
)
from ordrev.errors import InvalidPresentation, InvariantViolation, NotLimit, OrientationMixed

logger = logging.getLogger(__name__)


def _check_orientation(p: FamilyPresentation, orientation: Orientation) -> None:
    for entry in p.entries:
        if not entry.is_finite_chain and entry.orientation is not orientation:
            raise OrientationMixed(
                f"infinite {entry.orientation.value} chain in a family decided as {orientation.value}"
            )


def _host_value(entry: ChainEntry) -> Ordinal:
    return entry.value if isinstance(entry, Single) else entry.first_member


def _infinite_singles(p: FamilyPresentation) -> list[Ordinal]:
    return sorted(e.value for e in p.singles if e.count.is_infinite)


def detect_nonrev_clause(
    p: FamilyPresentation, orientation: Orientation
) -> ClauseAPayload | ClauseBPayload | None:
    """
    Search for a failure condition.

    A: some alpha <= gamma_i occurs infinitely often (only infinite singles can).
    B: some present limit part gamma has infinitely many chains gamma + n with
    n >= 1 and their tails are not a reversible sequence.

    Raises:
        OrientationMixed: an infinite chain has the other orientation
    """
    _check_orientation(p, orientation)

    for alpha in _infinite_singles(p):
        for entry in p.entries:
            if alpha <= entry.limit_part:
                return ClauseAPayload(alpha, _host_value(entry), orientation)

    for gamma in limit_parts(p):
        tails = tail_multiset(p, gamma, orientation)
        if not tails.is_infinite:
            continue
        nat_verdict = decide_nat_reversible(tails, with_witness=False)
        if not nat_verdict.reversible:
            return ClauseBPayload(gamma, tails, nat_verdict, orientation)
    return None


def decide_well(
    p: FamilyPresentation,
    orientation: Orientation,
    *,
    with_witness: bool = True,
    witness_depth: int = DEFAULT_WITNESS_DEPTH,
) -> Verdict:
    """
    Decide a family whose infinite chains all have the given orientation.

    Raises:
        OrientationMixed: an infinite chain has the other orientation
        InvariantViolation: the positive and negative characterizations disagree
    """
    p = normalize(p)
    _check_orientation(p, orientation)
    stats = split(p)
    gamma_star = stats.gamma_star
    trace = [TraceStep("gamma*", True, f"gamma* = {gamma_star}")]

    if stats.finite_to_one:
        trace.append(TraceStep("finite-to-one", True, "no chain type occurs infinitely often"))
        verdict = Verdict(True, Clause.I, gamma_star=gamma_star, trace=tuple(trace))
        return _cross_check(p, orientation, verdict, with_witness, witness_depth)
    trace.append(TraceStep("finite-to-one", False, "some chain type occurs infinitely often"))

    violations = [alpha for alpha in _infinite_singles(p) if alpha <= gamma_star]
    if violations:
        alpha = violations[0]
        host = next(e for e in p.entries if e.limit_part == gamma_star)
        trace.append(TraceStep("below gamma*", False, f"{alpha} <= {gamma_star} occurs infinitely often"))
        verdict = Verdict(
            reversible=False,
            clause=Clause.A,
            details=ClauseAPayload(alpha, _host_value(host), orientation),
            gamma_star=gamma_star,
            trace=tuple(trace),
        )
        return _cross_check(p, orientation, verdict, with_witness, witness_depth)
    trace.append(TraceStep("below gamma*", True, f"every alpha <= {gamma_star} occurs finitely often"))

    tails = tail_multiset(p, gamma_star, orientation)
    nat_verdict = decide_nat_reversible(tails, with_witness=False)
    trace.append(TraceStep("tails over gamma*", nat_verdict.reversible, str(tails)))
    if nat_verdict.reversible:
        verdict = Verdict(
            reversible=True,
            clause=Clause.II,
            details=ClauseIIPayload(gamma_star, tails, nat_verdict),
            gamma_star=gamma_star,
            k=nat_verdict.k,
            trace=tuple(trace),
        )
    else:
        verdict = Verdict(
            reversible=False,
            clause=Clause.B,
            details=ClauseBPayload(gamma_star, tails, nat_verdict, orientation),
            gamma_star=gamma_star,
            k=nat_verdict.k,
            trace=tuple(trace),
        )
    return _cross_check(p, orientation, verdict, with_witness, witness_depth)


def _cross_check(
    p: FamilyPresentation,
    orientation: Orientation,
    verdict: Verdict,
    with_witness: bool,
    witness_depth: int,
) -> Verdict:
    negative = detect_nonrev_clause(p, orientation)
    if verdict.reversible == (negative is not None):
        logger.error(f"Characterizations disagree on {p}: {verdict.clause.value} vs {negative}")
        raise InvariantViolation(
            f"clause {verdict.clause.value} says reversible={verdict.reversible}, "
            f"failure search found {negative}"
        )
    logger.debug(f"decide_well({orientation.value}): clause {verdict.clause.value}")
    if verdict.reversible:
        return verdict
    return attach_witness(verdict, p, with_witness, witness_depth)


def _fixed_gamma_family(
    gamma: Ordinal, tails: NatMultiset, count_at_zero_tail: Count, orientation: Orientation
) -> FamilyPresentation:
    entries: list[ChainEntry] = []
    if not count_at_zero_tail.is_absent:
        entries.append(Single(orientation, gamma, count_at_zero_tail))
    for n, count in tails.singles:
        entries.append(Single(orientation, shift(gamma, n), count))
    for prog in tails.progressions:
        entries.append(Progression(orientation, gamma, prog.a, prog.d, prog.count_per_member))
    return FamilyPresentation(tuple(entries))


def decide_fixed_gamma(
    gamma: Ordinal,
    tails: NatMultiset,
    count_at_zero_tail: Count = ABSENT,
    orientation: Orientation = Orientation.W,
    *,
    with_witness: bool = True,
    witness_depth: int = DEFAULT_WITNESS_DEPTH,
) -> Verdict:
    """
    Decide the union of chains gamma + n_i for one limit-or-zero gamma.

    Reversible iff gamma itself occurs finitely often (count_at_zero_tail)
    and the tails n_i >= 1 form a reversible sequence.

    Raises:
        NotLimit: gamma is a successor
        InvalidPresentation: gamma is 0 but chains of type 0 are counted
    """
    if gamma.is_successor:
        raise NotLimit(f"{gamma} is not a limit ordinal or 0")
    if gamma.is_zero and not count_at_zero_tail.is_absent:
        raise InvalidPresentation("chains of type 0 cannot be counted")

    trace = [TraceStep("|I_gamma|", count_at_zero_tail.is_finite, f"{gamma} occurs {count_at_zero_tail} times")]
    if count_at_zero_tail.is_infinite:
        verdict = Verdict(
            reversible=False,
            clause=Clause.A,
            details=ClauseAPayload(gamma, gamma, orientation),
            gamma_star=gamma,
            trace=tuple(trace),
        )
    else:
        nat_verdict = decide_nat_reversible(tails, with_witness=False)
        trace.append(TraceStep("tails", nat_verdict.reversible, str(tails)))
        if nat_verdict.reversible:
            clause = Clause.I if tails.is_finite_to_one else Clause.II
            details = None if clause is Clause.I else ClauseIIPayload(gamma, tails, nat_verdict)
            return Verdict(
                True, clause, details, gamma_star=gamma, k=nat_verdict.k, trace=tuple(trace)
            )
        verdict = Verdict(
            reversible=False,
            clause=Clause.B,
            details=ClauseBPayload(gamma, tails, nat_verdict, orientation),
            gamma_star=gamma,
            k=nat_verdict.k,
            trace=tuple(trace),
        )

    family = _fixed_gamma_family(gamma, tails, count_at_zero_tail, orientation)
    return attach_witness(verdict, family, with_witness, witness_depth)


def decide(
    p: FamilyPresentation,
    *,
    with_witness: bool = True,
    witness_depth: int = DEFAULT_WITNESS_DEPTH,
) -> Verdict:
    """
    Decide any family of well orders and reversed well orders.

    With infinite chains of both orientations the family is reversible iff
    P_W and P_W* both are; otherwise the single relevant orientation decides.

    Raises:
        EmptyFamily: no entries
    """
    p = normalize(p)
    stats = split(p)
    parts = stats.split

    if parts.has_infinite_w and parts.has_infinite_wstar:
        v_w = decide_well(
            parts.p_w, Orientation.W, with_witness=with_witness, witness_depth=witness_depth
        )
        v_wstar = decide_well(
            parts.p_wstar, Orientation.WSTAR, with_witness=with_witness, witness_depth=witness_depth
        )
        trace = (
            TraceStep("P_W", v_w.reversible, f"clause {v_w.clause.value}"),
            TraceStep("P_W*", v_wstar.reversible, f"clause {v_wstar.clause.value}"),
        )
        verdict = Verdict(
            reversible=v_w.reversible and v_wstar.reversible,
            clause=Clause.MIXED_SPLIT,
            gamma_star=stats.gamma_star,
            sub_verdicts=(v_w, v_wstar),
            trace=trace,
        )
        if verdict.reversible:
            return verdict
        # the failing part's surjection extends by the identity to the whole family
        return attach_witness(verdict, p, with_witness, witness_depth)

    orientation = Orientation.WSTAR if parts.has_infinite_wstar else Orientation.W
    return decide_well(p, orientation, with_witness=with_witness, witness_depth=witness_depth)
