"""Ordinals below epsilon_0 in Cantor normal form.

An ordinal is a tuple of (exponent, coefficient) terms with strictly
decreasing exponents and positive coefficients; exponents are themselves
ordinals. The empty tuple is 0.
"""
from __future__ import annotations

import logging
from collections.abc import Iterable
from dataclasses import dataclass
from enum import Enum
from functools import total_ordering

from ordrev.errors import MalformedCNF

logger = logging.getLogger(__name__)


class Ordering(Enum):
    """Result of compare()."""
    LT = -1
    EQ = 0
    GT = 1


@total_ordering
@dataclass(frozen=True)
class Ordinal:
    """An ordinal below epsilon_0. Build with make_cnf() or the helpers below."""

    terms: tuple[tuple[Ordinal, int], ...] = ()

    @classmethod
    def of(cls, n: int) -> Ordinal:
        """The finite ordinal n."""
        if n < 0:
            raise MalformedCNF(f"negative ordinal: {n}")
        return cls(((ZERO, n),)) if n else ZERO

    def __lt__(self, other: object) -> bool:
        if not isinstance(other, Ordinal):
            return NotImplemented
        return compare(self, other) is Ordering.LT

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_finite(self) -> bool:
        return self.is_zero or (len(self.terms) == 1 and self.terms[0][0].is_zero)

    @property
    def is_limit(self) -> bool:
        return not self.is_zero and not self.terms[-1][0].is_zero

    @property
    def is_successor(self) -> bool:
        return not self.is_zero and self.terms[-1][0].is_zero

    @property
    def finite_value(self) -> int:
        """The integer value of a finite ordinal."""
        if not self.is_finite:
            raise ValueError(f"{self} is not finite")
        return self.terms[0][1] if self.terms else 0

    def __str__(self) -> str:
        """DSL rendering, e.g. ``w^2*3 + w + 4``; parse_ordinal() reads it back."""
        if self.is_zero:
            return "0"
        return " + ".join(_render_term(e, c) for e, c in self.terms)

    def __repr__(self) -> str:
        return f"Ordinal({self})"

    def to_unicode(self) -> str:
        """Human rendering, e.g. ``ω^2·3 + ω + 4``."""
        if self.is_zero:
            return "0"
        parts = []
        for exponent, coeff in self.terms:
            if exponent.is_zero:
                parts.append(str(coeff))
                continue
            base = "ω" if exponent == ONE else f"ω^{_wrap(exponent, exponent.to_unicode())}"
            parts.append(base if coeff == 1 else f"{base}·{coeff}")
        return " + ".join(parts)


def _wrap(exponent: Ordinal, text: str) -> str:
    if exponent.is_finite or exponent == OMEGA:
        return text
    return f"({text})"


def _render_term(exponent: Ordinal, coeff: int) -> str:
    if exponent.is_zero:
        return str(coeff)
    base = "w" if exponent == ONE else f"w^{_wrap(exponent, str(exponent))}"
    return base if coeff == 1 else f"{base}*{coeff}"


ZERO = Ordinal()
ONE = Ordinal(((ZERO, 1),))
OMEGA = Ordinal(((ONE, 1),))


@dataclass(frozen=True)
class Decomposition:
    """The unique split alpha = gamma + n with gamma limit-or-zero."""
    gamma: Ordinal
    n: int

    def recompose(self) -> Ordinal:
        return add(self.gamma, Ordinal.of(self.n))


def _as_ordinal(value: Ordinal | int) -> Ordinal:
    return value if isinstance(value, Ordinal) else Ordinal.of(value)


def make_cnf(terms: Iterable[tuple[Ordinal | int, int]]) -> Ordinal:
    """
    Build an ordinal from (exponent, coefficient) terms.

    Exponents may be given as ints for convenience.

    Raises:
        MalformedCNF: exponents not strictly decreasing, or a coefficient < 1.
    """
    normalized: list[tuple[Ordinal, int]] = []
    for exponent, coeff in terms:
        if isinstance(coeff, bool) or not isinstance(coeff, int) or coeff < 1:
            raise MalformedCNF(f"coefficient must be a positive integer, got {coeff!r}")
        exp = _as_ordinal(exponent)
        if normalized and compare(normalized[-1][0], exp) is not Ordering.GT:
            raise MalformedCNF(
                f"exponents must strictly decrease: {normalized[-1][0]} then {exp}"
            )
        normalized.append((exp, coeff))
    return Ordinal(tuple(normalized))


def omega_power(exponent: Ordinal | int, coeff: int = 1) -> Ordinal:
    """w^exponent * coeff."""
    return make_cnf([(exponent, coeff)])


def compare(a: Ordinal, b: Ordinal) -> Ordering:
    """Total order: lexicographic on the (exponent, coefficient) term sequences."""
    for (ea, ca), (eb, cb) in zip(a.terms, b.terms):
        by_exponent = compare(ea, eb)
        if by_exponent is not Ordering.EQ:
            return by_exponent
        if ca != cb:
            return Ordering.LT if ca < cb else Ordering.GT
    if len(a.terms) == len(b.terms):
        return Ordering.EQ
    return Ordering.LT if len(a.terms) < len(b.terms) else Ordering.GT


def add(a: Ordinal, b: Ordinal) -> Ordinal:
    """
    Ordinal sum a + b.

    Terms of a below b's leading exponent are absorbed; a term of a with
    exactly that exponent merges its coefficient with b's leading term.
    """
    if b.is_zero:
        return a
    lead_exp, lead_coeff = b.terms[0]
    kept: list[tuple[Ordinal, int]] = []
    for exponent, coeff in a.terms:
        order = compare(exponent, lead_exp)
        if order is Ordering.GT:
            kept.append((exponent, coeff))
        elif order is Ordering.EQ:
            return Ordinal((*kept, (lead_exp, coeff + lead_coeff), *b.terms[1:]))
        else:
            break
    return Ordinal((*kept, *b.terms))


def decompose(a: Ordinal) -> Decomposition:
    """Split a into its limit-or-zero part and finite tail."""
    if a.is_successor:
        return Decomposition(Ordinal(a.terms[:-1]), a.terms[-1][1])
    return Decomposition(a, 0)


def limit_part(a: Ordinal) -> Ordinal:
    return decompose(a).gamma


def finite_tail(a: Ordinal) -> int:
    return decompose(a).n


def shift(gamma: Ordinal, n: int) -> Ordinal:
    """gamma + n for a natural number n."""
    return add(gamma, Ordinal.of(n))
