"""Factors, predicates and evidence multisets."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from multibayes import (
    Dist,
    EmptyEvidenceError,
    Evidence,
    Factor,
    MatchStatus,
    NotAPredicateError,
    SampleSpace,
    SpaceMismatchError,
    and_conj,
    conj,
    falsity,
    frac_conj,
    indicator,
    match_status,
    ortho,
    point_pred,
    tensor_conj,
    tensor_factor,
    tensor_power,
    truth,
    validity,
)
from multibayes.evidence import add, scale

D = SampleSpace(("d", "~d"))
PT = Factor(D, (Fraction(9, 10), Fraction(2, 5)))
NT = Factor(D, (Fraction(1, 10), Fraction(3, 5)))
LMR = SampleSpace(("L", "M", "R"))

unit_values = st.fractions(min_value=0, max_value=1, max_denominator=24)


class TestConstructors:
    def test_indicator_values(self):
        assert indicator(("L", "R"), LMR).values == (1, 0, 1)

    def test_indicator_is_ortho_of_point(self):
        assert indicator(("L", "R"), LMR) == ortho(point_pred("M", LMR))

    def test_truth_is_ortho_of_falsity(self):
        assert truth(D) == ortho(falsity(D))

    def test_point_pred_is_singleton_indicator(self):
        assert point_pred("d", D) == indicator(("d",), D)

    def test_negative_values_rejected(self):
        with pytest.raises(ValueError):
            Factor(D, (Fraction(-1, 2), Fraction(1, 2)))

    def test_predicate_and_sharp_flags(self):
        assert PT.is_predicate and not PT.is_sharp
        assert indicator(("d",), D).is_sharp
        assert not Factor(D, (Fraction(3, 2), Fraction(0))).is_predicate


class TestAlgebra:
    def test_triple_conjunction_table(self):
        ppnt = conj(conj(PT, PT), NT)
        assert ppnt.values == (Fraction(81, 1000), Fraction(12, 125))

    def test_truth_falsity_units(self):
        assert conj(PT, truth(D)) == PT
        assert conj(PT, falsity(D)) == falsity(D)

    def test_test_predicates_sum_to_truth(self):
        assert add(PT, NT) == truth(D)
        assert ortho(PT) == NT

    def test_scale_and_operators(self):
        assert scale(Fraction(1, 2), PT).values == (Fraction(9, 20), Fraction(1, 5))
        assert (PT & NT) == conj(PT, NT)
        assert (PT + NT) == truth(D)
        assert (~PT) == NT
        assert (PT**2).values == (Fraction(81, 100), Fraction(4, 25))

    def test_ortho_requires_predicate(self):
        with pytest.raises(NotAPredicateError):
            ortho(Factor(D, (Fraction(2), Fraction(1))))

    def test_conj_requires_shared_space(self):
        with pytest.raises(SpaceMismatchError):
            conj(PT, truth(LMR))

    @given(values=st.lists(unit_values, min_size=2, max_size=2))
    def test_ortho_involution(self, values):
        p = Factor(D, values)
        assert ortho(ortho(p)) == p
        assert add(p, ortho(p)) == truth(D)


class TestEvidence:
    def test_merging_of_equal_factors(self):
        rebuilt = Factor(D, (Fraction(9, 10), Fraction(2, 5)))
        psi = Evidence(((PT, 1), (rebuilt, 1), (NT, 1)))
        assert psi.counts == (2, 1)
        assert psi.size == 3
        assert psi.coefficient() == 3

    def test_zero_counts_dropped(self):
        psi = Evidence(((PT, 0), (NT, 2)))
        assert psi.factors == (NT,)

    def test_addition_merges(self):
        psi = Evidence(((PT, 2),)) + Evidence(((PT, 1), (NT, 1)))
        assert psi(PT) == 3 and psi(NT) == 1


class TestConjunctions:
    def test_and_conj_is_iterated_product(self):
        q = Factor(D, (Fraction(1, 2), Fraction(1, 3)))
        r = Factor(D, (Fraction(1, 5), Fraction(1, 7)))
        psi = Evidence(((q, 2), (r, 3)))
        expected = conj(conj(q, q), conj(r, conj(r, r)))
        assert and_conj(psi) == expected

    def test_and_conj_singleton(self):
        assert and_conj(Evidence(((PT, 1),))) == PT

    def test_and_conj_medical_conjunction(self):
        psi = Evidence(((PT, 2), (NT, 1)))
        assert and_conj(psi).values == (Fraction(81, 1000), Fraction(12, 125))

    def test_and_conj_empty_rejected(self):
        with pytest.raises(EmptyEvidenceError):
            and_conj(Evidence(()))

    def test_tensor_conj_matches_iterated_tensor(self):
        q = Factor(D, (Fraction(1, 2), Fraction(1, 3)))
        r = Factor(D, (Fraction(1, 5), Fraction(1, 7)))
        psi = Evidence(((q, 2), (r, 3)))
        expected = tensor_factor(q, q)
        for nxt in (r, r, r):
            expected = tensor_factor(expected, nxt)
        flattened = Factor(
            psi.space.power(5),
            tuple(expected.values),
        )
        assert tensor_conj(psi).values == flattened.values

    def test_tensor_conj_validity_in_power(self):
        omega = Dist(D, (Fraction(1, 4), Fraction(3, 4)))
        psi = Evidence(((PT, 2), (NT, 2)))
        lhs = validity(tensor_power(omega, 4), tensor_conj(psi))
        rhs = validity(omega, PT) ** 2 * validity(omega, NT) ** 2
        assert lhs == rhs

    def test_frac_conj_single_and_repeated_factor(self):
        assert frac_conj(Evidence(((PT, 1),))).values == tuple(float(v) for v in PT.values)
        assert frac_conj(Evidence(((PT, 4),))).values == pytest.approx(
            tuple(float(v) for v in PT.values)
        )

    def test_frac_conj_power_recovers_conjunction(self):
        psi = Evidence(((PT, 2), (NT, 1)))
        lifted = frac_conj(psi) ** 3
        for got, want in zip(lifted.values, and_conj(psi).values):
            assert float(got) == pytest.approx(float(want), abs=1e-9)

    def test_frac_conj_zero_stays_zero(self):
        psi = Evidence(((point_pred("d", D), 1), (truth(D), 1)))
        assert frac_conj(psi)("~d") == 0.0


class TestMatchStatus:
    def test_medical_perfect_match(self):
        assert match_status(Evidence(((PT, 2), (NT, 1)))) is MatchStatus.PERFECT_MATCH

    def test_truth_alone_is_perfect(self):
        assert match_status(Evidence(((truth(D), 1),))) is MatchStatus.PERFECT_MATCH

    def test_non_matching_pair(self):
        space = SampleSpace("ab")
        p = Factor(space, (Fraction(1), Fraction(1, 2)))
        q = Factor(space, (Fraction(4, 5), Fraction(1, 2)))
        assert match_status(Evidence(((p, 2), (q, 3)))) is MatchStatus.NO_MATCH

    def test_plain_match(self):
        space = SampleSpace("ab")
        p = Factor(space, (Fraction(1, 3), Fraction(1, 2)))
        q = Factor(space, (Fraction(1, 3), Fraction(1, 4)))
        assert match_status(Evidence(((p, 5), (q, 5)))) is MatchStatus.MATCH
