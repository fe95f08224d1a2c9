"""Kullback-Leibler divergence between finite distributions."""

from __future__ import annotations

import math
from typing import TYPE_CHECKING

from .distribution import Dist
from .errors import SupportMismatchError

if TYPE_CHECKING:  # pragma: no cover
    from .channel import Channel


def kl_divergence(sigma: Dist, rho: Dist, base: float | None = None) -> float:
    """Divergence sum_x sigma(x) * ln(sigma(x) / rho(x)), with 0*ln(0) = 0.

    Support inclusion supp(sigma) <= supp(rho) is checked on the exact
    weights before any float conversion.  ``base`` switches the
    logarithm base (e.g. 2 for bits); the default is the natural log.
    """
    for x in sigma.support():
        if rho.get(x) == 0:
            raise SupportMismatchError(f"divergence undefined: {x!r} outside second support")
    total = 0.0
    for x, w in sigma.items():
        if w == 0:
            continue
        total += float(w) * math.log(float(w) / float(rho.get(x)))
    if base is not None:
        total /= math.log(base)
    return total


def expected_channel_divergence(sigma: Dist, rho: Dist, c: "Channel", base: float | None = None) -> float:
    """Average divergence of ``rho`` from the channel rows under ``sigma``.

    Computes sum_z sigma(z) * KL(rho, c(z)); it bounds the divergence
    from the pushforward KL(rho, c >> sigma) from above.
    """
    total = 0.0
    for z, w in sigma.items():
        if w == 0:
            continue
        total += float(w) * kl_divergence(rho, c.row(z), base=base)
    return total
