"""Embedded golden corpus for ``ordrev selftest``."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field

from rich.console import Console
from rich.table import Table
from rich.text import Text

from ordrev.core.decide import decide
from ordrev.core.family import cardinal_sequence, normalize
from ordrev.core.natrev import decide_cardinal_reversible
from ordrev.core.verdict import Clause, Verdict
from ordrev.dsl.parser import parse
from ordrev.errors import OrdrevError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GoldenCase:
    name: str
    source: str
    reversible: bool
    clause: Clause
    gamma_star: str | None = None
    # "family" decides the ordinals, "cardinal" their cardinalities
    mode: str = "family"


GOLDEN_CASES: tuple[GoldenCase, ...] = (
    GoldenCase(
        "example-reversible",
        "wo(n + 1) for n in nat; wo(w) x 14; wo(w + 4) x aleph 1; "
        "wo(w + 6) x aleph 3; wo(w + 1 + 2*n) for n in nat;",
        True,
        Clause.II,
        gamma_star="w",
    ),
    GoldenCase("repeated-below-host", "wo(1) x inf; wo(w);", False, Clause.A, gamma_star="w"),
    GoldenCase("dependent-tails", "wo(w + 2) x inf; wo(w + 4) x inf;", False, Clause.B, gamma_star="w"),
    GoldenCase("K=2,5 finite values", "wo(2) x inf; wo(5) x inf; wo(7) x 3;", True, Clause.II),
    GoldenCase(
        "K=2,5 with progression", "wo(2) x inf; wo(5) x inf; wo(n + 1) for n in nat;", False, Clause.B
    ),
    GoldenCase(
        "K=4,10 odd progression", "wo(4) x inf; wo(10) x inf; wo(1 + 2*n) for n in nat;", True, Clause.II
    ),
    GoldenCase(
        "K=4,10 even progression", "wo(4) x inf; wo(10) x inf; wo(2 + 2*n) for n in nat;", False, Clause.B
    ),
    GoldenCase("w+n as ordinals", "wo(w); wo(w + 1 + n) for n in nat;", True, Clause.I, gamma_star="w"),
    GoldenCase(
        "w+n as cardinals", "wo(w); wo(w + 1 + n) for n in nat;", False, Clause.A, mode="cardinal"
    ),
    GoldenCase("both orientations", "wo(w); rwo(w);", True, Clause.MIXED_SPLIT, gamma_star="w"),
)


@dataclass
class CaseOutcome:
    case: GoldenCase
    passed: bool
    actual: str


@dataclass
class SelftestResult:
    outcomes: list[CaseOutcome] = field(default_factory=list)

    @property
    def failures(self) -> list[CaseOutcome]:
        return [o for o in self.outcomes if not o.passed]

    @property
    def ok(self) -> bool:
        return not self.failures


def decide_case(case: GoldenCase, witness_depth: int = 64) -> Verdict:
    family = normalize(parse(case.source))
    if case.mode == "cardinal":
        return decide_cardinal_reversible(cardinal_sequence(family), witness_depth=witness_depth)
    return decide(family, witness_depth=witness_depth)


def run_selftest(
    cases: tuple[GoldenCase, ...] = GOLDEN_CASES, witness_depth: int = 64
) -> SelftestResult:
    result = SelftestResult()
    for case in cases:
        try:
            verdict = decide_case(case, witness_depth)
        except OrdrevError as e:
            logger.error(f"{case.name}: {e}")
            result.outcomes.append(CaseOutcome(case, False, f"error: {e}"))
            continue

        gamma_star = None if verdict.gamma_star is None else str(verdict.gamma_star)
        passed = (
            verdict.reversible == case.reversible
            and verdict.clause is case.clause
            and (case.gamma_star is None or gamma_star == case.gamma_star)
            and (verdict.reversible or verdict.witness is not None)
        )
        actual = f"{'reversible' if verdict.reversible else 'not reversible'}, {verdict.clause.value}"
        result.outcomes.append(CaseOutcome(case, passed, actual))
    return result


def print_summary(result: SelftestResult, console: Console | None = None) -> None:
    console = console or Console()
    table = Table(title="Golden corpus")
    table.add_column("Case")
    table.add_column("Expected")
    table.add_column("Actual")
    table.add_column("", justify="center")
    for outcome in result.outcomes:
        case = outcome.case
        expected = f"{'reversible' if case.reversible else 'not reversible'}, {case.clause.value}"
        mark = Text("ok", style="green") if outcome.passed else Text("FAIL", style="bold red")
        table.add_row(case.name, expected, outcome.actual, mark)
    console.print(table)
    console.print(f"{len(result.outcomes) - len(result.failures)}/{len(result.outcomes)} cases passed")
