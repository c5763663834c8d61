"""Decision reports: canonical JSON and rich terminal rendering."""
from __future__ import annotations

import json
import time
from dataclasses import dataclass
from typing import Any

from rich.console import Console
from rich.panel import Panel
from rich.table import Table
from rich.text import Text

from ordrev.core.verdict import Verdict


@dataclass
class Report:
    """A verdict plus how long it took. The witness is present iff the verdict is non-reversible."""
    verdict: Verdict
    timing_ms: float = 0.0

    def to_dict(self, include_timing: bool = True) -> dict[str, Any]:
        data = self.verdict.to_dict()
        if include_timing:
            data["timingMs"] = round(self.timing_ms, 3)
        return data

    def to_json(self, include_timing: bool = True) -> str:
        """Canonical serialization: sorted keys, two-space indent."""
        return json.dumps(self.to_dict(include_timing), sort_keys=True, indent=2)


class Stopwatch:
    """Milliseconds elapsed since construction."""

    def __init__(self) -> None:
        self.start = time.perf_counter()

    @property
    def elapsed_ms(self) -> float:
        return (time.perf_counter() - self.start) * 1000


def _headline(verdict: Verdict) -> Text:
    if verdict.reversible:
        return Text(f"REVERSIBLE  (clause {verdict.clause.value})", style="bold green")
    return Text(f"NOT REVERSIBLE  (clause {verdict.clause.value})", style="bold red")


def _trace_table(verdict: Verdict) -> Table:
    table = Table(title="Checks", show_lines=False)
    table.add_column("#", justify="right", style="dim")
    table.add_column("Check")
    table.add_column("Result")
    table.add_column("Detail", overflow="fold")
    for i, step in enumerate(verdict.trace, start=1):
        result = Text("pass", style="green") if step.passed else Text("fail", style="red")
        table.add_row(str(i), step.check, result, step.detail)
    return table


def render_report(report: Report, console: Console | None = None) -> None:
    """Print a human-readable report."""
    console = console or Console()
    verdict = report.verdict

    lines = [_headline(verdict)]
    if verdict.gamma_star is not None:
        lines.append(Text(f"gamma* = {verdict.gamma_star.to_unicode()}"))
    if verdict.k:
        lines.append(Text(f"K = {{{', '.join(map(str, verdict.k))}}}"))
    lines.append(Text(f"{report.timing_ms:.1f} ms", style="dim"))
    console.print(Panel(Text("\n").join(lines), title="ordrev"))

    if verdict.trace:
        console.print(_trace_table(verdict))
    for sub in verdict.sub_verdicts:
        console.print(Text(f"Sub-verdict: clause {sub.clause.value}", style="bold"))
        console.print(_trace_table(sub))

    if verdict.witness is not None:
        console.print(
            Panel(
                json.dumps(verdict.witness.to_dict(), sort_keys=True, indent=2),
                title=f"Witness: {verdict.witness.kind}",
            )
        )
