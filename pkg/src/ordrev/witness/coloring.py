"""Explicit partitions of limit ordinals into copies of themselves.

Elements below gamma are CNF ordinals x = beta + m (beta limit or 0, m finite).
Every coloring exposes rank(), an order isomorphism from each color class
onto target(color), and its inverse unrank().
"""
from __future__ import annotations

import logging
import random
from abc import ABC, abstractmethod
from collections.abc import Hashable
from math import isqrt

from ordrev.core.ordinal import OMEGA, ZERO, Ordinal, add, decompose, omega_power, shift
from ordrev.errors import AlphaTooBig, NotLimit
from ordrev.witness.models import VALID, WitnessCheck, failed

logger = logging.getLogger(__name__)


class Coloring(ABC):
    """A partition of {x : x < gamma} with a rank isomorphism per class."""

    def __init__(self, gamma: Ordinal):
        if not gamma.is_limit:
            raise NotLimit(f"{gamma} is not a limit ordinal")
        self.gamma = gamma

    @abstractmethod
    def color(self, x: Ordinal) -> Hashable:
        ...

    @abstractmethod
    def rank(self, x: Ordinal) -> Ordinal:
        ...

    @abstractmethod
    def unrank(self, color: Hashable, y: Ordinal) -> Ordinal:
        ...

    @abstractmethod
    def target(self, color: Hashable) -> Ordinal:
        """The order type of the color class."""


class ResidueColoring(Coloring):
    """lambda copies of gamma: beta + m gets color m mod lambda and rank beta + m div lambda."""

    def __init__(self, gamma: Ordinal, lam: int):
        super().__init__(gamma)
        if lam < 1:
            raise ValueError(f"number of colors must be >= 1, got {lam}")
        self.lam = lam

    def color(self, x: Ordinal) -> int:
        return decompose(x).n % self.lam

    def rank(self, x: Ordinal) -> Ordinal:
        dec = decompose(x)
        return shift(dec.gamma, dec.n // self.lam)

    def unrank(self, color: Hashable, y: Ordinal) -> Ordinal:
        if not isinstance(color, int) or not 0 <= color < self.lam:
            raise ValueError(f"no color {color!r} among {self.lam}")
        dec = decompose(y)
        return shift(dec.gamma, dec.n * self.lam + color)

    def target(self, color: Hashable) -> Ordinal:
        return self.gamma


def _pair(x: int, y: int) -> int:
    return (x + y) * (x + y + 1) // 2 + y


def _unpair(m: int) -> tuple[int, int]:
    w = (isqrt(8 * m + 1) - 1) // 2
    y = m - w * (w + 1) // 2
    return w - y, y


class PairingColoring(Coloring):
    """omega copies of gamma via the Cantor pairing: m = pair(color, rank offset)."""

    def color(self, x: Ordinal) -> int:
        return _unpair(decompose(x).n)[0]

    def rank(self, x: Ordinal) -> Ordinal:
        dec = decompose(x)
        return shift(dec.gamma, _unpair(dec.n)[1])

    def unrank(self, color: Hashable, y: Ordinal) -> Ordinal:
        if not isinstance(color, int) or color < 0:
            raise ValueError(f"colors are natural numbers, got {color!r}")
        dec = decompose(y)
        return shift(dec.gamma, _pair(color, dec.n))

    def target(self, color: Hashable) -> Ordinal:
        return self.gamma


class PrefixSplit(Coloring):
    """
    {A, B} with A of type alpha and B of type gamma, for alpha <= gamma.

    A is the image of [0, alpha) under the rank inverse of the even class.
    Writing alpha = delta + r, B is the odd elements of every block below
    delta, the odd elements below 2r together with everything from 2r on in
    block delta, and every block above delta in full.
    """

    def __init__(self, gamma: Ordinal, alpha: Ordinal):
        super().__init__(gamma)
        if gamma < alpha:
            raise AlphaTooBig(f"{alpha} exceeds {gamma}")
        self.alpha = alpha
        self.evens = ResidueColoring(gamma, 2)
        dec = decompose(alpha)
        self.delta = dec.gamma
        self.r = dec.n

    def color(self, x: Ordinal) -> str:
        if self.evens.color(x) == 0 and self.evens.rank(x) < self.alpha:
            return "A"
        return "B"

    def rank(self, x: Ordinal) -> Ordinal:
        if self.color(x) == "A":
            return self.evens.rank(x)
        dec = decompose(x)
        beta, m = dec.gamma, dec.n
        if beta < self.delta:
            return shift(beta, (m - 1) // 2)
        if beta == self.delta:
            return shift(beta, m - min(self.r, (m + 1) // 2))
        return x

    def unrank(self, color: Hashable, y: Ordinal) -> Ordinal:
        if color == "A":
            return self.evens.unrank(0, y)
        if color != "B":
            raise ValueError(f"colors are 'A' and 'B', got {color!r}")
        dec = decompose(y)
        beta, q = dec.gamma, dec.n
        if beta < self.delta:
            return shift(beta, 2 * q + 1)
        if beta == self.delta:
            return shift(beta, 2 * q + 1 if q < self.r else q + self.r)
        return y

    def target(self, color: Hashable) -> Ordinal:
        return self.alpha if color == "A" else self.gamma


def partition_limit(gamma: Ordinal, lam: int | Ordinal) -> Coloring:
    """
    Partition a limit ordinal into lam copies of itself, 1 <= lam <= omega.

    Raises:
        NotLimit: gamma is 0 or a successor
    """
    if isinstance(lam, Ordinal):
        if lam == OMEGA:
            return PairingColoring(gamma)
        if not lam.is_finite:
            raise ValueError(f"at most omega colors, got {lam}")
        lam = lam.finite_value
    return ResidueColoring(gamma, lam)


def split_prefix(gamma: Ordinal, alpha: Ordinal) -> Coloring:
    """
    Partition a limit ordinal gamma into A of type alpha and B of type gamma.

    Raises:
        NotLimit: gamma is 0 or a successor
        AlphaTooBig: alpha > gamma
    """
    return PrefixSplit(gamma, alpha)


def _below_power(exponent: Ordinal, rng: random.Random, max_coeff: int, depth: int) -> Ordinal:
    """A random ordinal below w^exponent."""
    if exponent.is_zero or depth <= 0 or rng.random() < 0.25:
        return ZERO
    lead = sample_below(exponent, rng, max_coeff, depth - 1)
    head = omega_power(lead, rng.randint(1, max_coeff))
    return add(head, _below_power(lead, rng, max_coeff, depth - 1))


def sample_below(gamma: Ordinal, rng: random.Random, max_coeff: int = 6, depth: int = 3) -> Ordinal:
    """
    A random element of gamma, spread across its w-blocks.

    Picks a CNF term of gamma, lowers its coefficient, and appends a random
    tail below that term's power.
    """
    if gamma.is_zero:
        raise ValueError("0 has no elements")
    i = rng.randrange(len(gamma.terms))
    exponent, coeff = gamma.terms[i]
    base = Ordinal(gamma.terms[:i])
    lowered = rng.randrange(coeff)
    if lowered:
        base = add(base, omega_power(exponent, lowered))
    return add(base, _below_power(exponent, rng, max_coeff, depth))


def validate_coloring(
    coloring: Coloring,
    samples: int = 64,
    rng: random.Random | None = None,
) -> WitnessCheck:
    """Spot-check that each sampled class is mapped monotonically and invertibly onto its target."""
    rng = rng or random.Random(0)
    gamma = coloring.gamma
    for _ in range(samples):
        x = sample_below(gamma, rng)
        col = coloring.color(x)
        rx = coloring.rank(x)
        tgt = coloring.target(col)
        if not rx < tgt:
            return failed("rank_out_of_range", f"rank({x}) = {rx} is not below {tgt}")
        if coloring.unrank(col, rx) != x:
            return failed("rank_inverse", f"unrank(rank({x})) != {x}")

        y = coloring.unrank(col, sample_below(tgt, rng))
        if not y < gamma or coloring.color(y) != col:
            return failed("unrank_color", f"unrank landed on {y}, outside class {col!r}")
        ry = coloring.rank(y)
        if (x < y) != (rx < ry) or (x == y) != (rx == ry):
            return failed("monotonicity", f"{x}, {y} in class {col!r} ranked {rx}, {ry}")
    return VALID
