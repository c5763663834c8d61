"""Multiplicities that only distinguish finite counts from infinite ones."""
from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Count:
    """
    A finite count or Inf.

    Every infinite cardinal collapses to Inf: no clause of the decision
    procedure looks past "finite or not". ``Count.fin(0)`` is the absent count
    returned by lookups; chain entries require at least 1.
    """

    value: int | None

    @classmethod
    def fin(cls, k: int) -> Count:
        if k < 0:
            raise ValueError(f"count must be non-negative, got {k}")
        return cls(k)

    @classmethod
    def inf(cls) -> Count:
        return cls(None)

    @property
    def is_infinite(self) -> bool:
        return self.value is None

    @property
    def is_finite(self) -> bool:
        return self.value is not None

    @property
    def is_absent(self) -> bool:
        return self.value == 0

    def __add__(self, other: Count) -> Count:
        if self.value is None or other.value is None:
            return INF
        return Count(self.value + other.value)

    def __str__(self) -> str:
        return "inf" if self.value is None else str(self.value)

    def to_json(self) -> int | str:
        return "inf" if self.value is None else self.value

    @classmethod
    def from_json(cls, raw: int | str) -> Count:
        return INF if raw == "inf" else cls.fin(int(raw))


INF = Count.inf()
ABSENT = Count.fin(0)
