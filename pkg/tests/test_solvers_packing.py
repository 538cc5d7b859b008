"""(r,p,q)-packing DP against the subfamily-enumeration oracle."""

import itertools

import numpy as np
import pytest

from multisep.errors import ParameterError
from multisep.multiset import WeightedUniverse
from multisep.oracles import oracle_packing, oracle_packing_subfamily
from multisep.repsets import make_family, verify_representative
from multisep.solvers import (
    SetFamilyInstance,
    reduce_set_weighted_packing,
    set_family_instance,
    solve_rpq_packing,
)

TRIANGLE_SETS = ((0, 1), (0, 2), (1, 2))


def check_witness(inst, res):
    assert res.witness is not None and len(res.witness) == inst.p
    assert len(set(res.witness)) == inst.p  # distinct sets
    cover = [0] * inst.n
    for j in res.witness:
        for x in inst.sets[j]:
            cover[x] += 1
    assert max(cover) <= inst.r
    w = sum(c * inst.universe.weights[i] for i, c in enumerate(cover))
    if inst.set_weights is not None:
        w += sum(inst.set_weights[j] for j in res.witness)
    assert w == res.weight


def test_triangle_r2_p3():
    inst = set_family_instance(3, TRIANGLE_SETS, 2, 3,
                               element_weights=[1, 1, 1])
    res = solve_rpq_packing(inst)
    assert res.found and sorted(res.witness) == [0, 1, 2]
    assert res.weight == 6  # each element covered exactly twice
    check_witness(inst, res)


def test_triangle_r1_p2_not_found():
    inst = set_family_instance(3, TRIANGLE_SETS, 1, 2)
    res = solve_rpq_packing(inst)
    assert not res.found and res.witness is None


def test_instance_validation():
    with pytest.raises(ParameterError):
        set_family_instance(3, [(0, 1), (0, 1, 2)], 1, 1)  # ragged q
    with pytest.raises(ParameterError):
        set_family_instance(3, [(0, 0)], 1, 1)  # repeated element
    with pytest.raises(ParameterError):
        set_family_instance(3, [], 1, 1)
    with pytest.raises(ParameterError):
        SetFamilyInstance(WeightedUniverse((1, 0)), ((0, 1),), 1, 1, 2,
                          set_weights=(3,))  # nonzero element weights


def test_p_exceeding_sets():
    inst = set_family_instance(3, [(0, 1)], 2, 2)
    assert not solve_rpq_packing(inst).found


def random_instance(rng, set_weighted=False):
    n = int(rng.integers(2, 7))
    q = int(rng.integers(1, min(n, 3) + 1))
    m = int(rng.integers(1, 6))
    sets = []
    for _ in range(m):
        sets.append(tuple(sorted(rng.choice(n, size=q, replace=False).tolist())))
    r = int(rng.integers(1, 3))
    p = int(rng.integers(1, 4))
    if set_weighted:
        return set_family_instance(
            n, sets, r, p, set_weights=rng.integers(0, 9, size=m).tolist())
    return set_family_instance(
        n, sets, r, p, element_weights=rng.integers(0, 9, size=n).tolist())


def test_random_against_oracle():
    rng = np.random.default_rng(101)
    for trial in range(60):
        inst = random_instance(rng)
        want = oracle_packing(inst)
        res = solve_rpq_packing(inst)
        assert res.found == (want is not None), trial
        if res.found:
            assert res.weight == want
            check_witness(inst, res)


def test_oracle_subfamily_consistent():
    rng = np.random.default_rng(3)
    for _ in range(20):
        inst = random_instance(rng)
        w1 = oracle_packing(inst)
        w2, combo = oracle_packing_subfamily(inst)
        assert w1 == w2
        if w1 is None:
            assert combo is None
        else:
            assert len(combo) == inst.p


def test_reduce_single_set():
    inst = set_family_instance(2, [(0, 1)], 1, 1, set_weights=[7])
    red = reduce_set_weighted_packing(inst)
    assert red.n == 3 and red.sets == ((0, 1, 2),)
    assert red.universe.weights == (0, 0, 7)
    assert red.q == inst.q + 1 and red.set_weights is None


def test_reduce_requires_set_weights():
    inst = set_family_instance(2, [(0, 1)], 1, 1)
    with pytest.raises(ParameterError):
        reduce_set_weighted_packing(inst)


def test_two_disjoint_weighted_sets():
    inst = set_family_instance(4, [(0, 1), (2, 3)], 1, 2, set_weights=[2, 3])
    res = solve_rpq_packing(inst)
    assert res.found and res.weight == 5
    assert sorted(res.witness) == [0, 1]
    assert res.stats.get("reduction") == "private-elements"


def test_set_weighted_random_against_oracle():
    rng = np.random.default_rng(202)
    for trial in range(40):
        inst = random_instance(rng, set_weighted=True)
        want = oracle_packing(inst)
        res = solve_rpq_packing(inst)
        assert res.found == (want is not None), trial
        if res.found:
            assert res.weight == want
            check_witness(inst, res)


def test_dp_families_are_representative():
    # U-cell at (i, j): all unions of i distinct sets with indices <= j
    rng = np.random.default_rng(303)
    for _ in range(10):
        inst = random_instance(rng)
        k = inst.p * inst.q
        r_eff = min(inst.r, k)
        res = solve_rpq_packing(inst, keep_families=True)
        if "families" not in res.stats:
            continue
        fams = res.stats["families"]
        m = inst.m
        for i in range(1, inst.p + 1):
            for j in range(m):
                rows = []
                for combo in itertools.combinations(range(j + 1), i):
                    cover = [0] * inst.n
                    for t in combo:
                        for x in inst.sets[t]:
                            cover[x] += 1
                    if max(cover) <= r_eff:
                        rows.append(cover)
                true_fam = make_family(inst.universe, r_eff, k, rows) if rows \
                    else make_family(inst.universe, r_eff, k, [])
                assert verify_representative(true_fam, fams[("U", i, j)])
