"""Exact discrete probabilistic inference with multiset evidence.

Distributions, factors and evidence over finite sample spaces, with
the four update rules (Bayesian, Jeffrey, Pearl, VFE), the matching
validities, channels and Kullback-Leibler divergence.  Everything that
does not need a logarithm is computed in exact rational arithmetic.
"""

from .core import (
    SampleSpace,
    Scalar,
    as_scalar,
    format_decimal12,
    format_scalar,
    is_exact,
    parse_scalar,
    scalar_ln,
)
from .errors import (
    EmptyEvidenceError,
    EmptyMultisetError,
    ExprParseError,
    ModelError,
    MultibayesError,
    NonConvexWeightsError,
    NonPositiveLogError,
    NotAPredicateError,
    SizeLimitError,
    SpaceMismatchError,
    SupportMismatchError,
    UnknownElementError,
    UnknownSuiteError,
    ZeroValidityError,
)
from .multiset import Multiset, acc, coefm, enumerate_multisets, multiset_space
from .distribution import (
    Dist,
    convex_sum,
    copy_dist,
    dirac,
    flrn,
    marginal,
    multinomial,
    push_function,
    tensor,
    tensor_power,
    uniform,
)
from .evidence import (
    Evidence,
    Factor,
    MatchStatus,
    and_conj,
    conj,
    falsity,
    frac_conj,
    indicator,
    match_status,
    ortho,
    point_evidence,
    point_pred,
    tensor_conj,
    tensor_factor,
    truth,
)
from .validity import (
    covariance,
    jeffrey_validity,
    log_likelihood_score,
    pearl_validity,
    validity,
)
from .divergence import expected_channel_divergence, kl_divergence
from .update import (
    bayes_update,
    free_energy_objective,
    iterated_pearl_validity,
    jeffrey_update,
    jeffrey_update_weighted,
    pearl_update,
    point_evidence_of_dist,
    vfe_update,
    vfe_update_softmax,
)
from .channel import (
    Channel,
    dagger,
    identity_channel,
    multinomial_channel,
    pull,
    push,
    triple_pull,
)

__version__ = "0.1.0"

__all__ = [
    "Channel",
    "Dist",
    "EmptyEvidenceError",
    "EmptyMultisetError",
    "Evidence",
    "ExprParseError",
    "Factor",
    "MatchStatus",
    "ModelError",
    "Multiset",
    "MultibayesError",
    "NonConvexWeightsError",
    "NonPositiveLogError",
    "NotAPredicateError",
    "SampleSpace",
    "Scalar",
    "SizeLimitError",
    "SpaceMismatchError",
    "SupportMismatchError",
    "UnknownElementError",
    "UnknownSuiteError",
    "ZeroValidityError",
    "acc",
    "and_conj",
    "as_scalar",
    "bayes_update",
    "coefm",
    "conj",
    "convex_sum",
    "copy_dist",
    "covariance",
    "dagger",
    "dirac",
    "enumerate_multisets",
    "expected_channel_divergence",
    "falsity",
    "flrn",
    "format_decimal12",
    "format_scalar",
    "frac_conj",
    "free_energy_objective",
    "identity_channel",
    "indicator",
    "is_exact",
    "iterated_pearl_validity",
    "jeffrey_update",
    "jeffrey_update_weighted",
    "jeffrey_validity",
    "kl_divergence",
    "log_likelihood_score",
    "marginal",
    "match_status",
    "multinomial",
    "multinomial_channel",
    "multiset_space",
    "ortho",
    "parse_scalar",
    "pearl_update",
    "pearl_validity",
    "point_evidence",
    "point_evidence_of_dist",
    "point_pred",
    "pull",
    "push",
    "push_function",
    "scalar_ln",
    "tensor",
    "tensor_conj",
    "tensor_factor",
    "tensor_power",
    "triple_pull",
    "truth",
    "uniform",
    "validity",
    "vfe_update",
    "vfe_update_softmax",
]
