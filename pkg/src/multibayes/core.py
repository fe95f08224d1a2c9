"""Dual-mode scalars (exact rational / float) and finite sample spaces.

Scalars are plain Python numbers: :class:`fractions.Fraction` for exact
mode and :class:`float` for float mode.  Python's numeric tower already
gives the contagion rule we need -- arithmetic between two Fractions
stays exact, anything touching a float becomes float -- so there is no
wrapper class, only helpers for parsing, formatting and logarithms.
"""

from __future__ import annotations

import math
from decimal import Context, Decimal, ROUND_HALF_EVEN
from fractions import Fraction
from typing import Hashable, Iterable, Iterator, Union

from .errors import NonPositiveLogError, SizeLimitError, UnknownElementError

Scalar = Union[Fraction, float]
Label = Hashable

#: Product spaces larger than this are refused (desk-scale guard).
MAX_PRODUCT_ELEMENTS = 10**6

#: Absolute tolerance for float-mode normalisation checks.
FLOAT_SUM_TOL = 1e-9


def is_exact(value: Scalar) -> bool:
    """True for exact-mode scalars (Fractions and ints)."""
    return isinstance(value, (Fraction, int)) and not isinstance(value, bool)


def as_scalar(value: Scalar | int | str) -> Scalar:
    """Coerce to a scalar: ints become Fractions, strings are parsed."""
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, (Fraction, float)):
        return value
    if isinstance(value, str):
        return parse_scalar(value)
    raise TypeError(f"cannot interpret {value!r} as a scalar")


def to_float(value: Scalar) -> float:
    return float(value)


def scalar_ln(value: Scalar) -> float:
    """Natural logarithm; always float mode.

    Raises NonPositiveLogError when ``value <= 0``.
    """
    if value <= 0:
        raise NonPositiveLogError(f"ln undefined for {value}")
    return math.log(value)


def parse_scalar(text: str) -> Scalar:
    """Parse ``"p/q"`` and integer literals as exact, decimals as float."""
    text = text.strip()
    if "/" in text:
        num, _, den = text.partition("/")
        return Fraction(int(num), int(den))
    if any(c in text for c in ".eE") and not text.lstrip("+-").isdigit():
        return float(text)
    return Fraction(int(text))


def format_scalar(value: Scalar) -> str:
    """Exact scalars render as ``p/q`` (or ``n`` for integers), floats as decimals."""
    if is_exact(value):
        value = Fraction(value)
        if value.denominator == 1:
            return str(value.numerator)
        return f"{value.numerator}/{value.denominator}"
    return repr(float(value))


_TWELVE_DIGITS = Context(prec=12, rounding=ROUND_HALF_EVEN)


def format_decimal12(value: Scalar) -> str:
    """Decimal rendering with 12 significant digits, round-half-even."""
    if is_exact(value):
        frac = Fraction(value)
        dec = _TWELVE_DIGITS.divide(Decimal(frac.numerator), Decimal(frac.denominator))
    else:
        dec = _TWELVE_DIGITS.plus(Decimal(float(value)))
    return str(dec)


class SampleSpace:
    """Finite ordered collection of distinct, hashable labels.

    The label order is fixed at construction and drives every
    enumeration and serialisation downstream.  Labels are usually
    strings; product spaces use tuples and multiset spaces use
    :class:`~multibayes.multiset.Multiset` labels.
    """

    __slots__ = ("_elements", "_index")

    def __init__(self, elements: Iterable[Label]):
        elems = tuple(elements)
        index: dict[Label, int] = {}
        for pos, elem in enumerate(elems):
            if elem in index:
                raise ValueError(f"duplicate element {elem!r} in sample space")
            index[elem] = pos
        self._elements = elems
        self._index = index

    @property
    def elements(self) -> tuple[Label, ...]:
        return self._elements

    def __len__(self) -> int:
        return len(self._elements)

    def __iter__(self) -> Iterator[Label]:
        return iter(self._elements)

    def __contains__(self, element: Label) -> bool:
        return element in self._index

    def index(self, element: Label) -> int:
        try:
            return self._index[element]
        except KeyError:
            raise UnknownElementError(f"{element!r} is not in the sample space") from None

    def __eq__(self, other: object) -> bool:
        return isinstance(other, SampleSpace) and self._elements == other._elements

    def __hash__(self) -> int:
        return hash(self._elements)

    def __repr__(self) -> str:
        inner = ", ".join(repr(e) for e in self._elements)
        return f"SampleSpace({{{inner}}})"

    def product(self, other: "SampleSpace") -> "SampleSpace":
        """Space of pairs ``(x, y)``, x-major in this space's order."""
        size = len(self) * len(other)
        if size > MAX_PRODUCT_ELEMENTS:
            raise SizeLimitError(f"product space with {size} elements refused")
        return SampleSpace((x, y) for x in self._elements for y in other._elements)

    def power(self, n: int) -> "SampleSpace":
        """Space of ``n``-tuples in lexicographic (first-coordinate-major) order."""
        if n < 0:
            raise ValueError("power requires n >= 0")
        size = len(self) ** n if len(self) else (1 if n == 0 else 0)
        if size > MAX_PRODUCT_ELEMENTS:
            raise SizeLimitError(f"power space with {size} elements refused")
        import itertools

        return SampleSpace(itertools.product(self._elements, repeat=n))


def label_str(label: Label) -> str:
    """Human-readable rendering of a space label (tuples without quotes)."""
    if isinstance(label, tuple):
        return "(" + ",".join(label_str(part) for part in label) + ")"
    return str(label)
