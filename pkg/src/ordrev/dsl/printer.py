"""Canonical text form of a family; parse() reads it back."""
from __future__ import annotations

from ordrev.core.counts import Count
from ordrev.core.family import ChainEntry, FamilyPresentation, Single


def _multiplicity(count: Count) -> str:
    if count.is_infinite:
        return " x inf"
    return "" if count.value == 1 else f" x {count.value}"


def format_entry(entry: ChainEntry) -> str:
    orient = entry.orientation.value
    if isinstance(entry, Single):
        return f"{orient}({entry.value}){_multiplicity(entry.count)};"

    terms = [] if entry.gamma.is_zero else [str(entry.gamma)]
    if entry.a:
        terms.append(str(entry.a))
    terms.append("n" if entry.d == 1 else f"{entry.d}*n")
    mult = "" if entry.count_per_member == 1 else f" x {entry.count_per_member}"
    return f"{orient}({' + '.join(terms)}) for n in nat{mult};"


def format_family(p: FamilyPresentation) -> str:
    """One statement per line, in entry order."""
    return "\n".join(format_entry(entry) for entry in p.entries) + "\n"
