"""Exact handling of probability-like scalars.

Resolutions, masses and event weights are probabilities in [0, 1]. Internally
they are normalized to :class:`fractions.Fraction` keys so that equal values
hash equally regardless of whether a caller passed ``0.05``, ``"1/20"`` or
``Fraction(1, 20)``. Floats are snapped to the nearest rational with
denominator at most 10**9, which identifies values closer than about 1e-18
and is far below every tolerance used in this package.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

Num = Union[int, float, Fraction]

_MAX_DEN = 10**9


def level_key(x: Num | str) -> Fraction:
    """Canonical rational key for a probability-like scalar."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a probability")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(x).limit_denominator(_MAX_DEN)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as a probability level")


def level_float(x: Num | str) -> float:
    return float(level_key(x))


def level_doc(x: Num) -> object:
    """JSON-friendly form: exact rationals as "n/d" strings, floats as-is."""
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return x.numerator
        return f"{x.numerator}/{x.denominator}"
    return x


def parse_level_doc(doc: object) -> Num:
    """Inverse of :func:`level_doc`."""
    if isinstance(doc, str):
        return Fraction(doc)
    if isinstance(doc, bool) or not isinstance(doc, (int, float)):
        raise TypeError(f"not a probability level document: {doc!r}")
    return doc


#: Default working grid of resolutions, 0.05 through 0.95.
DEFAULT_GRID: tuple[Fraction, ...] = tuple(Fraction(i, 20) for i in range(1, 20))
