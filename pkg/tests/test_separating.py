"""Minimal separating families, stage replay, and lopsided universal sets."""

import itertools

import pytest

from multisep.errors import ParameterError
from multisep.families import FunctionFamily
from multisep.separating import (
    MinimalSeparatingFamily,
    UniversalSetFamily,
    build_lopsided_universal,
    build_minimal_separating,
    choose_universal_set,
    compositions_upto,
    explain_separation,
    find_separating_violation,
    find_universal_violation,
    verify_lopsided,
    verify_minimal_separating,
)


def test_compositions_order():
    got = list(compositions_upto(2, 2))
    # lexicographic, all sums <= 2
    assert got == [(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (2, 0)]


def test_build_4_2_3():
    msf = build_minimal_separating(4, 2, 3)
    assert verify_minimal_separating(msf)
    # hand-checked pair: C={1,2}, D={3} (1-based)
    arr = msf.tables
    ok = any(
        {tab[0], tab[1]} == {0, 1} and tab[2] == 2 for tab in arr
    )
    assert ok


def test_build_6_2_4():
    msf = build_minimal_separating(6, 2, 4)
    assert verify_minimal_separating(msf)


def test_build_t_equals_k():
    # D is always empty; reduces to t-perfect hashing composed with identity
    msf = build_minimal_separating(5, 2, 2)
    assert verify_minimal_separating(msf)


def test_empty_family_rejected_with_first_pair():
    msf = MinimalSeparatingFamily(
        3, 1, 1, FunctionFamily(3, 2, ()), {})
    viol = find_separating_violation(msf)
    assert viol == ((0,), ())


def test_explain_separation_replays_every_pair():
    msf = build_minimal_separating(5, 2, 4)
    for C in itertools.combinations(range(5), 2):
        rest = [x for x in range(5) if x not in C]
        for d in range(0, 3):
            for D in itertools.combinations(rest, d):
                info = explain_separation(msf, C, D)
                tab = info["table"]
                assert sorted(tab[c] for c in C) == [0, 1]
                assert all(tab[x] == 2 for x in D)
                assert msf.tables[info["member_index"]] == tab


def test_explain_separation_validates_inputs():
    msf = build_minimal_separating(4, 2, 3)
    with pytest.raises(ParameterError):
        explain_separation(msf, (0,), ())
    with pytest.raises(ParameterError):
        explain_separation(msf, (0, 1), (1,))
    with pytest.raises(ParameterError):
        explain_separation(msf, (0, 1), (2, 3))


def test_bad_parameters():
    with pytest.raises(ParameterError):
        build_minimal_separating(3, 0, 2)
    with pytest.raises(ParameterError):
        build_minimal_separating(3, 2, 1)  # k < t
    with pytest.raises(ParameterError):
        build_minimal_separating(1, 2, 2)  # t > n


# lopsided universal sets


def test_lopsided_3_1_1():
    usf = build_lopsided_universal(3, 1, 1)
    assert verify_lopsided(usf)
    for a, b in itertools.permutations(range(3), 2):
        assert any(a in fs and b not in fs for fs in (set(s) for s in usf.sets))


def test_lopsided_5_2_2():
    assert verify_lopsided(build_lopsided_universal(5, 2, 2))


def test_lopsided_4_1_2():
    assert verify_lopsided(build_lopsided_universal(4, 1, 2))


def test_lopsided_q_zero():
    usf = build_lopsided_universal(2, 2, 0)
    assert verify_lopsided(usf)


def test_full_set_family_fails():
    usf = UniversalSetFamily(3, 1, 1, ((0, 1, 2),), None)
    viol = find_universal_violation(usf)
    assert viol is not None
    assert not verify_lopsided(usf)


def test_choose_universal_set():
    usf = build_lopsided_universal(5, 2, 2)
    for A in itertools.combinations(range(5), 2):
        rest = [x for x in range(5) if x not in A]
        for B in itertools.combinations(rest, 2):
            fs = choose_universal_set(usf, A, B)
            assert set(A) <= set(fs) and not (set(B) & set(fs))


def test_lopsided_parameter_errors():
    with pytest.raises(ParameterError):
        build_lopsided_universal(3, 0, 1)
    with pytest.raises(ParameterError):
        build_lopsided_universal(3, 2, 2)  # p + q > n
