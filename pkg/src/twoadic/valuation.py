"""2-adic valuations, 2-adic splits and triangular numbers.

All quantities are plain Python ints (arbitrary precision). A valuation is
wrapped in :class:`Valuation` so that ``v2(0)`` can be represented as
infinite instead of raising.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import NamedTuple, Optional


@functools.total_ordering
@dataclass(frozen=True)
class Valuation:
    """Either a finite nonnegative exponent or infinity.

    ``Valuation(3)`` is finite, ``Valuation(None)`` (aka :data:`INFINITE`)
    is the valuation of zero. Valuations compare with each other and with
    plain ints, and add like extended naturals.
    """

    value: Optional[int]

    def __post_init__(self):
        if self.value is not None and (not isinstance(self.value, int) or self.value < 0):
            raise ValueError(f"finite valuation must be a nonnegative int, got {self.value!r}")

    @property
    def is_finite(self) -> bool:
        return self.value is not None

    def finite(self) -> int:
        """Return the exponent, raising if the valuation is infinite."""
        if self.value is None:
            raise ValueError("valuation is infinite")
        return self.value

    def _key(self, other):
        if isinstance(other, Valuation):
            return other.value
        if isinstance(other, int) and not isinstance(other, bool):
            return other
        return NotImplemented

    def __eq__(self, other):
        o = self._key(other)
        if o is NotImplemented:
            return NotImplemented
        return self.value == o

    def __hash__(self):
        return hash(self.value)

    def __lt__(self, other):
        o = self._key(other)
        if o is NotImplemented:
            return NotImplemented
        if self.value is None:
            return False
        return o is None or self.value < o

    def __add__(self, other):
        o = self._key(other)
        if o is NotImplemented:
            return NotImplemented
        if self.value is None or o is None:
            return INFINITE
        return Valuation(self.value + o)

    __radd__ = __add__

    def to_json(self) -> dict:
        if self.value is None:
            return {"infinite": True}
        return {"finite": self.value}

    def __str__(self):
        return "infinite" if self.value is None else str(self.value)

    def __repr__(self):
        return "Valuation(infinite)" if self.value is None else f"Valuation({self.value})"


INFINITE = Valuation(None)


class TwoAdicSplit(NamedTuple):
    """``k == 2**d * q`` with ``q`` odd."""

    d: int
    q: int


def _check_nat(k: int, name: str = "k") -> None:
    if not isinstance(k, int) or isinstance(k, bool):
        raise TypeError(f"{name} must be an int, got {type(k).__name__}")
    if k < 0:
        raise ValueError(f"{name} must be nonnegative, got {k}")


def trailing_zeros(k: int) -> int:
    # lowest set bit; caller guarantees k != 0
    return (k & -k).bit_length() - 1


def v2(k: int) -> Valuation:
    """2-adic valuation of ``k``; infinite for ``k == 0``.

    >>> v2(40)
    Valuation(3)
    """
    _check_nat(k)
    if k == 0:
        return INFINITE
    return Valuation(trailing_zeros(k))


def split2(k: int) -> TwoAdicSplit:
    """Split ``k >= 1`` as ``2**d * q`` with ``q`` odd.

    Odd inputs give ``d == 0``.
    """
    _check_nat(k)
    if k == 0:
        raise ValueError("split2 is undefined for 0")
    d = trailing_zeros(k)
    return TwoAdicSplit(d, k >> d)


def triangular(k: int) -> int:
    """Return ``1 + 2 + ... + k == k*(k+1)/2``."""
    _check_nat(k)
    return k * (k + 1) // 2


def v2_half_product(m: int) -> Valuation:
    """Valuation of ``m*(m+1)/2`` for ``m >= 1``.

    Exactly one of ``m``, ``m+1`` is even; the result is its valuation
    minus one.
    """
    _check_nat(m, "m")
    if m == 0:
        raise ValueError("m must be >= 1")
    even = m if m % 2 == 0 else m + 1
    return Valuation(trailing_zeros(even) - 1)
