"""Exact number handling shared by every module."""

from __future__ import annotations

import math
import numbers
from decimal import Decimal
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import InputError


def as_fraction(value) -> Fraction:
    """Convert ``value`` to an exact :class:`Fraction`.

    Accepts ints, Fractions, Decimals, strings such as ``"2/3"``, ``"0.61"`` or
    ``"1e-3"``, and floats. Floats go through their shortest repr, so ``0.61``
    becomes ``61/100`` rather than the nearest binary double.
    """
    if isinstance(value, bool):
        raise InputError(f"booleans are not numbers: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, numbers.Integral):
        return Fraction(int(value))
    if isinstance(value, Decimal):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise InputError(f"non-finite number: {value!r}")
        return Fraction(repr(value))
    if isinstance(value, numbers.Rational):
        return Fraction(value.numerator, value.denominator)
    if isinstance(value, str):
        text = value.strip()
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError):
            raise InputError(f"not an exact rational: {value!r}") from None
    raise InputError(f"cannot interpret {value!r} as a rational number")


def fmt(value: Fraction) -> str:
    """Exact string form: ``"3/8"`` or ``"1"``."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def approx(value: Fraction, digits: int = 4) -> str:
    return f"{float(value):.{digits}f}"


def fmt_both(value: Fraction, digits: int = 4) -> str:
    """``"3/8 (0.3750)"`` as shown in reports."""
    return f"{fmt(value)} ({approx(value, digits)})"


def common_denominator(values: Iterable[Fraction]) -> int:
    den = 1
    for v in values:
        den = math.lcm(den, v.denominator)
    return den


def to_scaled_ints(values: Sequence[Fraction]) -> tuple[np.ndarray, int]:
    """Return ``(numerators, den)`` with ``values[i] == numerators[i] / den``.

    The numerators are a numpy object array of Python ints so they can be fed
    to ``@`` against 0/1 incidence matrices without overflow.
    """
    den = common_denominator(values)
    nums = np.empty(len(values), dtype=object)
    for i, v in enumerate(values):
        nums[i] = v.numerator * (den // v.denominator)
    return nums, den


def exact_incidence_sums(incidence: np.ndarray, weights: Sequence[Fraction]) -> list[Fraction]:
    """Column sums ``sum_r weights[r] * incidence[r, e]`` computed exactly.

    ``incidence`` is an (R, m) 0/1 array. Scaling to a common denominator keeps
    the inner loop in integer arithmetic.
    """
    nums, den = to_scaled_ints(weights)
    if len(nums) == 0:
        return [Fraction(0)] * incidence.shape[1]
    totals = incidence.astype(object).T @ nums
    return [Fraction(int(t), den) for t in totals]
