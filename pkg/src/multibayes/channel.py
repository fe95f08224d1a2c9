"""Channels (conditional probability tables) and their transformations."""

from __future__ import annotations

from typing import Callable, Sequence

from .core import Label, SampleSpace
from .distribution import Dist, dirac, multinomial
from .errors import SpaceMismatchError, ZeroValidityError
from .evidence import Evidence, Factor, point_pred
from .multiset import multiset_space
from .update import bayes_update
from .validity import validity


class Channel:
    """Map from domain elements to distributions on a codomain."""

    __slots__ = ("_dom", "_cod", "_rows")

    def __init__(self, dom: SampleSpace, cod: SampleSpace, rows: Sequence[Dist]):
        rows = tuple(rows)
        if len(rows) != len(dom):
            raise ValueError("need one row per domain element")
        for row in rows:
            if row.space != cod:
                raise SpaceMismatchError("every row must be a distribution on the codomain")
        self._dom = dom
        self._cod = cod
        self._rows = rows

    @classmethod
    def from_function(cls, f: Callable[[Label], Dist], dom: SampleSpace, cod: SampleSpace) -> "Channel":
        return cls(dom, cod, tuple(f(x) for x in dom))

    @property
    def dom(self) -> SampleSpace:
        return self._dom

    @property
    def cod(self) -> SampleSpace:
        return self._cod

    @property
    def rows(self) -> tuple[Dist, ...]:
        return self._rows

    def row(self, x: Label) -> Dist:
        return self._rows[self._dom.index(x)]

    def __call__(self, x: Label) -> Dist:
        return self.row(x)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Channel):
            return NotImplemented
        return self._dom == other._dom and self._rows == other._rows

    def __repr__(self) -> str:
        lines = ", ".join(f"{x!r} -> {row}" for x, row in zip(self._dom, self._rows))
        return f"Channel({lines})"


def identity_channel(space: SampleSpace) -> Channel:
    return Channel(space, space, tuple(dirac(x, space) for x in space))


def push(c: Channel, omega: Dist) -> Dist:
    """Pushforward (prediction): y -> sum_x omega(x) * c(x)(y)."""
    if omega.space != c.dom:
        raise SpaceMismatchError("distribution must live on the channel domain")
    weights = [
        sum(omega.weights[i] * row.weights[j] for i, row in enumerate(c.rows))
        for j in range(len(c.cod))
    ]
    return Dist(c.cod, weights)


def pull(c: Channel, q: Factor) -> Factor:
    """Pullback of a factor: x -> sum_y c(x)(y) * q(y)."""
    if q.space != c.cod:
        raise SpaceMismatchError("factor must live on the channel codomain")
    return Factor(c.dom, tuple(validity(row, q) for row in c.rows))


def triple_pull(c: Channel, psi: Evidence) -> Evidence:
    """Pull evidence factor-wise along the channel.

    Factors that become pointwise equal after pulling are merged by
    adding their multiplicities.
    """
    return Evidence((pull(c, q), count) for q, count in psi.items())


def dagger(c: Channel, omega: Dist) -> Channel:
    """Bayesian inversion of the channel at a prior distribution.

    Each codomain element maps to the prior conditioned on the pulled
    point predicate; a codomain element that the prediction gives zero
    probability has no well-defined row and raises ZeroValidityError.
    """
    rows = []
    for y in c.cod:
        pulled = pull(c, point_pred(y, c.cod))
        if validity(omega, pulled) == 0:
            raise ZeroValidityError(f"prediction gives zero probability to {y!r}")
        rows.append(bayes_update(omega, pulled))
    return Channel(c.cod, c.dom, rows)


def multinomial_channel(c: Channel, size: int) -> Channel:
    """Channel of draws: each domain element maps to the distribution of
    size-``size`` draws from its row."""
    cod = multiset_space(c.cod, size)
    return Channel(c.dom, cod, tuple(multinomial(size, row) for row in c.rows))
