import math
from itertools import permutations

import numpy as np
import pytest
from hypothesis import given, settings

from jointroute.assign import backward_assign, forward_assign, forward_assign_with_cost, lower_bound, two_phase
from jointroute.model import InfeasibleError, Instance
from jointroute.oracle import brute_force

from conftest import SQRT2, instances, random_instance


def test_forward_fix1(fix1):
    assert forward_assign(fix1).tolist() == [0, 1]


def test_forward_fix2(fix2):
    a, cost = forward_assign_with_cost(fix2)
    assert a.tolist() == [0, 1, 2]
    assert cost == pytest.approx(2.0)


def test_forward_zero_when_coincident():
    places = [(0, 0), (3, 1), (5, 5), (1, 2)]
    sigma = [0, 2, 3, 1]
    items = [places[sigma[i]] for i in range(4)]
    inst = Instance(items, places)
    a, cost = forward_assign_with_cost(inst)
    assert a.tolist() == sigma and cost == 0.0


@settings(max_examples=60, deadline=None)
@given(instances(max_n=6))
def test_forward_is_optimal(inst):
    _, cost = forward_assign_with_cost(inst)
    n = inst.n
    best = min(
        sum(math.dist(inst.items[i], inst.placeholders[([0] + list(p))[i]]) for i in range(n + 1))
        for p in permutations(range(1, n + 1))
    )
    assert cost == pytest.approx(best, rel=1e-9, abs=1e-9)


def test_backward_fix2(fix2):
    b, cost = backward_assign(fix2, [0, 1, 2])
    assert b.tolist() == [1, 2, 0]
    assert cost == pytest.approx(4.650281539872885)


def test_backward_fix1(fix1):
    b, cost = backward_assign(fix1, [0, 1])
    assert b.tolist() == [1, 0]
    assert cost == pytest.approx(1 + SQRT2)


def test_backward_rejects_n0():
    inst = Instance([(0, 0)], [(1, 1)])
    with pytest.raises(InfeasibleError):
        backward_assign(inst, [0])


@settings(max_examples=60, deadline=None)
@given(instances(max_n=6))
def test_backward_never_returns_to_own_item(inst):
    res = two_phase(inst)
    a, b = res.forward, res.backward
    assert sorted(b.tolist()) == list(range(inst.n + 1))
    assert all(b[a[i]] != i for i in range(inst.n + 1))


def test_lower_bound_fix1(fix1):
    assert lower_bound(fix1) == pytest.approx(2.0)


def test_lower_bound_fix2(fix2):
    # forward 2.0 + unmasked backward 2.0, both by enumeration
    assert lower_bound(fix2) == pytest.approx(4.0)
    assert lower_bound(fix2) <= 6.242640687119286


def test_lower_bound_zero_when_all_coincide():
    inst = Instance([(2, 2)] * 4, [(2, 2)] * 4)
    assert lower_bound(inst) == 0.0


@pytest.mark.parametrize("seed", range(10))
def test_lower_bound_below_optimum(seed):
    inst = random_instance(3 + seed % 3, seed)
    assert lower_bound(inst) <= brute_force(inst).cost + 1e-12
