"""Factors, predicates and multiset evidence with their algebra."""

from __future__ import annotations

import enum
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .core import Label, SampleSpace, Scalar, as_scalar, format_scalar, label_str
from .errors import (
    EmptyEvidenceError,
    NotAPredicateError,
    SpaceMismatchError,
    UnknownElementError,
)
from .multiset import Multiset, coefm_counts

_ZERO = Fraction(0)
_ONE = Fraction(1)


class Factor:
    """Non-negative function on a sample space; the unit of evidence.

    A factor bounded by one is a predicate; a predicate with values in
    {0, 1} is sharp.  Factors compare and hash by pointwise values, so
    two factors built differently but extensionally equal are the same
    evidence key.
    """

    __slots__ = ("_space", "_values")

    def __init__(self, space: SampleSpace, values: Sequence[Scalar]):
        values = tuple(as_scalar(v) for v in values)
        if len(values) != len(space):
            raise ValueError("values must align with the sample space")
        for v in values:
            if v < 0:
                raise ValueError(f"factor values must be non-negative, got {v!r}")
        self._space = space
        self._values = values

    @classmethod
    def from_values(cls, space: SampleSpace, values: dict[Label, Scalar]) -> "Factor":
        for elem in values:
            if elem not in space:
                raise UnknownElementError(f"{elem!r} is not in the sample space")
        return cls(space, tuple(values.get(x, _ZERO) for x in space))

    @property
    def space(self) -> SampleSpace:
        return self._space

    @property
    def values(self) -> tuple[Scalar, ...]:
        return self._values

    @property
    def is_predicate(self) -> bool:
        return all(v <= 1 for v in self._values)

    @property
    def is_sharp(self) -> bool:
        return all(v == 0 or v == 1 for v in self._values)

    def __call__(self, element: Label) -> Scalar:
        return self._values[self._space.index(element)]

    def items(self) -> Iterator[tuple[Label, Scalar]]:
        return zip(self._space.elements, self._values)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Factor):
            return NotImplemented
        return self._space == other._space and self._values == other._values

    def __hash__(self) -> int:
        return hash((self._space, self._values))

    # operator sugar; the named module functions are the primary surface
    def __and__(self, other: "Factor") -> "Factor":
        return conj(self, other)

    def __add__(self, other: "Factor") -> "Factor":
        return add(self, other)

    def __rmul__(self, s: Scalar) -> "Factor":
        return scale(s, self)

    def __invert__(self) -> "Factor":
        return ortho(self)

    def __pow__(self, exponent) -> "Factor":
        """Iterated conjunction; fractional exponents give a float-mode factor."""
        if isinstance(exponent, int) and not isinstance(exponent, bool):
            return Factor(self._space, tuple(v**exponent for v in self._values))
        exponent = float(exponent)
        return Factor(
            self._space,
            tuple(0.0 if v == 0 else float(v) ** exponent for v in self._values),
        )

    def __str__(self) -> str:
        return " + ".join(f"{format_scalar(v)}*1{{{label_str(x)}}}" for x, v in self.items())

    def __repr__(self) -> str:
        return f"Factor({self})"


def truth(space: SampleSpace) -> Factor:
    return Factor(space, (_ONE,) * len(space))


def falsity(space: SampleSpace) -> Factor:
    return Factor(space, (_ZERO,) * len(space))


def indicator(subset: Iterable[Label], space: SampleSpace) -> Factor:
    """Sharp predicate that is one exactly on the given subset."""
    members = set()
    for elem in subset:
        space.index(elem)
        members.add(elem)
    return Factor(space, tuple(_ONE if x in members else _ZERO for x in space))


def point_pred(element: Label, space: SampleSpace) -> Factor:
    return indicator((element,), space)


def conj(p: Factor, q: Factor) -> Factor:
    """Pointwise product; the sequential conjunction of factors."""
    if p.space != q.space:
        raise SpaceMismatchError("conjunction needs factors on one space")
    return Factor(p.space, tuple(a * b for a, b in zip(p.values, q.values)))


def tensor_factor(p: Factor, q: Factor) -> Factor:
    """Parallel conjunction on the product space: (x, y) -> p(x) * q(y)."""
    space = p.space.product(q.space)
    return Factor(space, tuple(a * b for a in p.values for b in q.values))


def add(p: Factor, q: Factor) -> Factor:
    if p.space != q.space:
        raise SpaceMismatchError("sum needs factors on one space")
    return Factor(p.space, tuple(a + b for a, b in zip(p.values, q.values)))


def scale(s: Scalar, p: Factor) -> Factor:
    s = as_scalar(s)
    if s < 0:
        raise ValueError("factor scaling needs a non-negative scalar")
    return Factor(p.space, tuple(s * v for v in p.values))


def ortho(p: Factor) -> Factor:
    """Orthosupplement 1 - p; defined for predicates only."""
    if not p.is_predicate:
        raise NotAPredicateError("orthosupplement needs values bounded by one")
    return Factor(p.space, tuple(1 - v for v in p.values))


class Evidence:
    """Multiset of factors over one sample space.

    Factors that are pointwise equal are merged on construction; the
    remaining distinct factors keep their first-seen order, which fixes
    the factor order used by parallel conjunctions.
    """

    __slots__ = ("_factors", "_counts")

    def __init__(self, pairs: Iterable[tuple[Factor, int]]):
        factors: list[Factor] = []
        counts: list[int] = []
        space: SampleSpace | None = None
        for factor, count in pairs:
            if not isinstance(count, int) or isinstance(count, bool) or count < 0:
                raise ValueError(f"evidence multiplicities must be natural numbers, got {count!r}")
            if space is None:
                space = factor.space
            elif factor.space != space:
                raise SpaceMismatchError("evidence factors must share one space")
            if count == 0:
                continue
            try:
                pos = factors.index(factor)
            except ValueError:
                factors.append(factor)
                counts.append(count)
            else:
                counts[pos] += count
        self._factors = tuple(factors)
        self._counts = tuple(counts)

    @classmethod
    def from_factors(cls, factors: Iterable[Factor]) -> "Evidence":
        return cls((f, 1) for f in factors)

    @property
    def factors(self) -> tuple[Factor, ...]:
        return self._factors

    @property
    def counts(self) -> tuple[int, ...]:
        return self._counts

    @property
    def size(self) -> int:
        return sum(self._counts)

    @property
    def space(self) -> SampleSpace:
        if not self._factors:
            raise EmptyEvidenceError("empty evidence has no underlying space")
        return self._factors[0].space

    def coefficient(self) -> int:
        """Multinomial coefficient of the multiplicity vector."""
        return coefm_counts(self._counts)

    def items(self) -> Iterator[tuple[Factor, int]]:
        return zip(self._factors, self._counts)

    def __call__(self, factor: Factor) -> int:
        for f, c in self.items():
            if f == factor:
                return c
        return 0

    def __len__(self) -> int:
        return len(self._factors)

    def __add__(self, other: "Evidence") -> "Evidence":
        return Evidence(list(self.items()) + list(other.items()))

    def scale(self, n: int) -> "Evidence":
        if n < 0:
            raise ValueError("scaling factor must be a natural number")
        return Evidence((f, n * c) for f, c in self.items())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Evidence):
            return NotImplemented
        return dict(self.items()) == dict(other.items())

    def __str__(self) -> str:
        parts = [f"{c}|{f}>" for f, c in self.items()]
        return " + ".join(parts) if parts else "0"

    def __repr__(self) -> str:
        return f"Evidence({self})"


def point_evidence(phi: Multiset) -> Evidence:
    """Interpret a multiset over X as evidence made of point predicates."""
    return Evidence((point_pred(x, phi.space), c) for x, c in phi.items() if c)


def _require_nonempty(psi: Evidence) -> None:
    if not psi.factors:
        raise EmptyEvidenceError("operation needs nonempty evidence")


def and_conj(psi: Evidence) -> Factor:
    """Iterated sequential conjunction: x -> prod_p p(x)^count(p)."""
    _require_nonempty(psi)
    values = []
    for x in psi.space:
        v: Scalar = _ONE
        for factor, count in psi.items():
            v = v * factor(x) ** count
        values.append(v)
    return Factor(psi.space, values)


def tensor_conj(psi: Evidence) -> Factor:
    """Iterated parallel conjunction on the K-fold product space.

    Factors are laid out in the evidence's fixed factor order, each
    repeated by its multiplicity.
    """
    _require_nonempty(psi)
    sequence: list[Factor] = []
    for factor, count in psi.items():
        sequence.extend([factor] * count)
    space = psi.space.power(len(sequence))
    values = []
    for combo in space.elements:
        v: Scalar = _ONE
        for factor, x in zip(sequence, combo):
            v = v * factor(x)
        values.append(v)
    return Factor(space, values)


def frac_conj(psi: Evidence) -> Factor:
    """Geometric-mean conjunction: x -> prod_p p(x)^(count(p)/K), float mode.

    Zero factor values stay zero under fractional exponents, so no NaN
    can escape.
    """
    _require_nonempty(psi)
    total = psi.size
    values = []
    for x in psi.space:
        v = 1.0
        for factor, count in psi.items():
            base = factor(x)
            if base == 0:
                v = 0.0
                break
            v *= float(base) ** (count / total)
        values.append(v)
    return Factor(psi.space, values)


class MatchStatus(enum.Enum):
    NO_MATCH = "no-match"
    MATCH = "match"
    PERFECT_MATCH = "perfect-match"


def match_status(psi: Evidence) -> MatchStatus:
    """Classify evidence by the pointwise sum of its distinct factors.

    The sum runs over the support only; multiplicities do not enter.
    A perfect match sums to one everywhere, a match stays below one.
    """
    if not psi.factors:
        return MatchStatus.MATCH
    totals = [sum((f(x) for f in psi.factors), _ZERO) for x in psi.space]
    if all(t == 1 for t in totals):
        return MatchStatus.PERFECT_MATCH
    if all(t <= 1 for t in totals):
        return MatchStatus.MATCH
    return MatchStatus.NO_MATCH
