"""Updating distributions with factors and with multiset evidence.

Four rules live here: plain Bayesian conditioning on one factor,
Jeffrey's mixture of single-factor updates, Pearl's single update with
the full conjunction, and the variational-free-energy (VFE) update
with the geometric-mean conjunction.  Everything stays exact except
the VFE rule, which is inherently float.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from .core import Scalar, as_scalar, is_exact, FLOAT_SUM_TOL
from .distribution import Dist, convex_sum
from .divergence import kl_divergence
from .errors import NonConvexWeightsError, ZeroValidityError
from .evidence import Evidence, Factor, and_conj, frac_conj, _require_nonempty
from .multiset import Multiset
from .validity import validity


def bayes_update(omega: Dist, p: Factor) -> Dist:
    """Condition a distribution on a factor: x -> omega(x)*p(x) / (omega |= p)."""
    norm = validity(omega, p)
    if norm == 0:
        raise ZeroValidityError(f"cannot update: validity of {p} is zero")
    return Dist(omega.space, tuple(w * v / norm for w, v in zip(omega.weights, p.values)))


def iterated_pearl_validity(omega: Dist, ps: Sequence[Factor]) -> Scalar:
    """Chained dependent validity: each factor is evaluated in the
    distribution already updated with all previous ones.

    Equals the validity of the conjunction of all factors, in any
    order.  Raises ZeroValidityError naming the failing prefix when a
    mid-chain validity hits zero.
    """
    if not ps:
        raise ValueError("need at least one factor")
    current = omega
    result: Scalar = Fraction(1)
    for index, p in enumerate(ps):
        val = validity(current, p)
        if val == 0:
            raise ZeroValidityError(
                f"validity vanished at factor #{index} after updating with the first {index}"
            )
        result = result * val
        if index + 1 < len(ps):
            current = bayes_update(current, p)
    return result


def jeffrey_update(omega: Dist, psi: Evidence) -> Dist:
    """Mixture of single-factor updates, weighted by evidence frequencies."""
    _require_nonempty(psi)
    total = psi.size
    posteriors = []
    for index, (factor, _) in enumerate(psi.items()):
        if validity(omega, factor) == 0:
            raise ZeroValidityError(f"evidence factor #{index} ({factor}) has zero validity")
        posteriors.append(bayes_update(omega, factor))
    weights = [Fraction(count, total) for count in psi.counts]
    return convex_sum(weights, posteriors)


def jeffrey_update_weighted(omega: Dist, weighted_factors: Sequence[tuple[Factor, Scalar]]) -> Dist:
    """Jeffrey update with real-valued, pre-normalised factor weights.

    Extension of :func:`jeffrey_update` beyond natural multiplicities;
    the weights must be non-negative and sum to one.
    """
    if not weighted_factors:
        raise NonConvexWeightsError("need at least one weighted factor")
    weights = [as_scalar(w) for _, w in weighted_factors]
    total = sum(weights)
    if any(w < 0 for w in weights) or (
        total != 1 if all(is_exact(w) for w in weights) else abs(total - 1.0) > FLOAT_SUM_TOL
    ):
        raise NonConvexWeightsError("weights must be non-negative and sum to one")
    posteriors = [bayes_update(omega, factor) for factor, _ in weighted_factors]
    return convex_sum(weights, posteriors)


def pearl_update(omega: Dist, psi: Evidence) -> Dist:
    """Single Bayesian update with the conjunction of all evidence factors.

    A zero validity of the conjunction signals inconsistent evidence.
    """
    _require_nonempty(psi)
    return bayes_update(omega, and_conj(psi))


def vfe_update(omega: Dist, psi: Evidence) -> Dist:
    """Update with the geometric-mean conjunction of the evidence (float).

    Preconditions: every support factor has nonzero validity, and so
    does the fractional conjunction itself.
    """
    _require_nonempty(psi)
    for index, (factor, _) in enumerate(psi.items()):
        if validity(omega, factor) == 0:
            raise ZeroValidityError(f"evidence factor #{index} ({factor}) has zero validity")
    return bayes_update(omega.to_float(), frac_conj(psi))


def vfe_update_softmax(omega: Dist, psi: Evidence) -> Dist:
    """Softmax form of the VFE update: normalised exponentials of the
    frequency-weighted expected log-posteriors.

    Agrees with :func:`vfe_update` up to float rounding; kept as an
    independent route for cross-checking.
    """
    _require_nonempty(psi)
    total = psi.size
    posteriors = []
    for index, (factor, _) in enumerate(psi.items()):
        if validity(omega, factor) == 0:
            raise ZeroValidityError(f"evidence factor #{index} ({factor}) has zero validity")
        posteriors.append(bayes_update(omega, factor))
    raw = []
    for x in omega.space:
        if omega(x) == 0:
            raw.append(0.0)
            continue
        log_sum = 0.0
        for (_, count), posterior in zip(psi.items(), posteriors):
            weight = posterior(x)
            if weight == 0:
                log_sum = -math.inf
                break
            log_sum += (count / total) * math.log(float(weight))
        raw.append(math.exp(log_sum) if log_sum > -math.inf else 0.0)
    norm = sum(raw)
    if norm == 0:
        raise ZeroValidityError("softmax normalisation vanished")
    return Dist(omega.space, tuple(v / norm for v in raw))


def free_energy_objective(rho: Dist, omega: Dist, psi: Evidence) -> float:
    """Frequency-weighted divergence from the single-factor posteriors.

    Computes sum_p freq(p) * KL(rho, omega|p); the VFE update is its
    argmin over rho, and the objective exceeds the minimum by exactly
    KL(rho, vfe_update(omega, psi)).
    """
    _require_nonempty(psi)
    total = psi.size
    objective = 0.0
    for factor, count in psi.items():
        posterior = bayes_update(omega, factor)
        objective += (count / total) * kl_divergence(rho, posterior)
    return objective


def point_evidence_of_dist(omega: Dist, scale: int) -> Multiset:
    """Multiset ``scale * omega`` for a distribution with fractional weights.

    Requires every ``scale * omega(x)`` to be a natural number.
    """
    counts = []
    for w in omega.weights:
        c = Fraction(w) * scale
        if c.denominator != 1:
            raise ValueError(f"{scale} * {w} is not a natural number")
        counts.append(int(c))
    return Multiset(omega.space, counts)
