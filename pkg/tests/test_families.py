"""Hash-family builders and their exhaustive contract checkers."""

from fractions import Fraction

import pytest

from multisep.errors import BudgetExceeded, ParameterError
from multisep.families import (
    FunctionFamily,
    HittingContract,
    OneVsManyContract,
    PairwiseContract,
    TPerfectContract,
    build_one_vs_many_separator,
    build_pairwise_independent,
    build_perfect_hash,
    build_perfect_hash_small_range,
    build_rectangle_hitting_set,
    find_family_violation,
    verify_family,
)

HALF = Fraction(1, 2)


# perfect hash ([n] -> [t^2])

def test_perfect_hash_4_2():
    fam = build_perfect_hash(4, 2)
    assert verify_family(fam, TPerfectContract(2))
    # the known-good 3-member family over range {1,2} also passes
    hand = FunctionFamily(4, 2, ((0, 1, 0, 1), (0, 0, 1, 1), (0, 1, 1, 0)))
    assert verify_family(hand, TPerfectContract(2))


def test_perfect_hash_trivial():
    fam = build_perfect_hash(1, 1)
    assert len(fam) >= 1 and verify_family(fam, TPerfectContract(1))


def test_perfect_hash_wider():
    for n, t in ((5, 2), (5, 3), (6, 2)):
        assert verify_family(build_perfect_hash(n, t), TPerfectContract(t))


# small-range variant ([d] -> [t])

def test_small_range_constant():
    fam = build_perfect_hash_small_range(3, 1)
    assert verify_family(fam, TPerfectContract(1))
    assert any(len(set(tab)) == 1 for tab in fam.tables)


def test_small_range_4_2():
    assert verify_family(build_perfect_hash_small_range(4, 2), TPerfectContract(2))


def test_small_range_identity_passes():
    ident = FunctionFamily(2, 2, ((0, 1),))
    assert verify_family(ident, TPerfectContract(2))


# pairwise independence

def test_pairwise_affine_mod3():
    fam = build_pairwise_independent(3, 3, 0)
    assert len(fam) == 9  # all of a*x + b mod 3
    assert verify_family(fam, PairwiseContract(Fraction(0)))


def test_pairwise_2_2_quarter():
    fam = build_pairwise_independent(2, 2, Fraction(1, 4))
    assert verify_family(fam, PairwiseContract(Fraction(1, 4)))


def test_pairwise_4_2_exact():
    fam = build_pairwise_independent(4, 2, 0)
    assert verify_family(fam, PairwiseContract(Fraction(0)))


# one-vs-many separation (half the members avoid any small D)

def test_one_vs_many_k1():
    # D is always empty, so any nonempty family works
    fam = build_one_vs_many_separator(2, 1)
    assert len(fam) >= 1
    assert verify_family(fam, OneVsManyContract(1))


def test_one_vs_many_4_2():
    assert verify_family(build_one_vs_many_separator(4, 2), OneVsManyContract(2))


def test_one_vs_many_3_3():
    fam = build_one_vs_many_separator(3, 3)
    assert verify_family(fam, OneVsManyContract(3, d_max=2))


def test_one_vs_many_pairwise_provider():
    fam = build_one_vs_many_separator(4, 2, provider="pairwise")
    assert verify_family(fam, OneVsManyContract(2))


def test_one_vs_many_requires_k_le_n():
    with pytest.raises(ParameterError):
        build_one_vs_many_separator(2, 3)


# rectangle hitting sets

def test_hitting_2x2_needs_all_points():
    hs = build_rectangle_hitting_set((2, 2), HALF)
    assert sorted(hs.points) == [(0, 0), (0, 1), (1, 0), (1, 1)]
    assert verify_family(hs, HittingContract(HALF))


def test_hitting_single_side():
    hs = build_rectangle_hitting_set((4,), HALF)
    # must meet every 2-subset of [4]: needs at least 3 of the 4 points
    assert len(hs.points) >= 3
    assert verify_family(hs, HittingContract(HALF))


def test_hitting_density_one():
    hs = build_rectangle_hitting_set((3, 3), Fraction(1))
    assert len(hs.points) >= 1
    assert verify_family(hs, HittingContract(Fraction(1)))


def test_hitting_third_density():
    hs = build_rectangle_hitting_set((3, 3), Fraction(1, 3))
    assert verify_family(hs, HittingContract(Fraction(1, 3)))


# verifier-side checks

def test_verify_identity_t_perfect():
    ident = FunctionFamily(3, 3, ((0, 1, 2),))
    assert verify_family(ident, TPerfectContract(3))


def test_verify_constant_fails_with_witness():
    const = FunctionFamily(2, 1, ((0, 0),))
    viol = find_family_violation(const, TPerfectContract(2))
    assert viol == ("t_perfect", (0, 1))
    assert not verify_family(const, TPerfectContract(2))


def test_verify_budget_refusal():
    fam = build_pairwise_independent(3, 3, 0)
    with pytest.raises(BudgetExceeded):
        verify_family(fam, PairwiseContract(Fraction(0)), budget=1)
