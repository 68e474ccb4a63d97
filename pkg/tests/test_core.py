import json

import numpy as np
import pytest
from hypothesis import given, strategies as st

from xdpknap.core import (
    Instance,
    InstanceError,
    Item,
    Selection,
    SelectionError,
    sort_by_ratio,
    validate_selection,
)


@pytest.fixture
def pair():
    return Instance.from_items([(1, 0.6), (1, 0.5)], 1.0)


def test_empty_selection_is_feasible(pair):
    res = validate_selection(pair, Selection.empty())
    assert res.feasible and res.sums_consistent
    assert res.profit_sum == 0 and res.weight_sum == 0


def test_overweight_selection(pair):
    res = validate_selection(pair, Selection((1, 2), 2.0, 1.1))
    assert not res.feasible
    assert res.weight_sum == pytest.approx(1.1)


def test_single_item_selection(pair):
    res = validate_selection(pair, Selection((1,), 1.0, 0.6))
    assert res.ok
    assert (res.profit_sum, res.weight_sum) == (1.0, 0.6)


def test_stored_sum_mismatch_reported(pair):
    res = validate_selection(pair, Selection((1,), 1.5, 0.6))
    assert res.feasible and not res.sums_consistent
    assert "profit" in res.messages[0]


@pytest.mark.parametrize("chosen", [(0,), (3,), (1, 1)])
def test_structural_errors(pair, chosen):
    with pytest.raises(SelectionError):
        validate_selection(pair, Selection(chosen, 0.0, 0.0))


@pytest.mark.parametrize(
    "items, cap",
    [([(1, 0)], 1.0), ([(1, -1)], 1.0), ([(-1, 1)], 1.0), ([], 1.0), ([(1, 1)], 0.0), ([(1, 1)], float("nan"))],
)
def test_bad_instances_rejected(items, cap):
    with pytest.raises(InstanceError):
        Instance.from_items(items, cap)


def test_instance_is_read_only(pair):
    with pytest.raises(ValueError):
        pair.profits[0] = 5.0
    assert pair.items == [Item(1.0, 0.6), Item(1.0, 0.5)]


def test_capacity_below_every_weight_allowed():
    inst = Instance.from_items([(1, 2), (1, 3)], 1.0)
    assert inst.n == 2


def test_sort_by_ratio_examples():
    assert sort_by_ratio(Instance.from_items([(2, 1), (3, 1), (1, 1)], 5)).tolist() == [2, 1, 3]
    assert sort_by_ratio(Instance.from_items([(1, 1), (2, 2)], 5)).tolist() == [1, 2]


def test_sort_by_ratio_random(rng):
    inst = Instance(rng.random(1000), rng.random(1000) + 1e-12, 100.0)
    order = sort_by_ratio(inst)
    assert sorted(order.tolist()) == list(range(1, 1001))
    ratio = inst.profits[order - 1] / inst.weights[order - 1]
    # pairwise check on consecutive entries, ties broken by index
    for a, b, ia, ib in zip(ratio[:-1], ratio[1:], order[:-1], order[1:]):
        assert a > b or (a == b and ia < ib)
    assert np.array_equal(order, sort_by_ratio(inst))


@given(st.lists(st.tuples(st.integers(0, 5), st.integers(1, 5)), min_size=1, max_size=30))
def test_sort_is_stable_permutation(items):
    inst = Instance.from_items(items, 10)
    order = sort_by_ratio(inst).tolist()
    assert sorted(order) == list(range(1, len(items) + 1))
    keyed = sorted(range(1, len(items) + 1), key=lambda i: (-items[i - 1][0] / items[i - 1][1], i))
    assert order == keyed


def test_json_round_trip_bit_exact(rng):
    inst = Instance(rng.random(50), rng.random(50) + 1e-3, float(rng.random() * 10))
    again = Instance.from_json(inst.to_json())
    assert again == inst
    assert again.profits.tobytes() == inst.profits.tobytes()
    doc = json.loads(inst.to_json())
    assert set(doc) == {"capacity", "items"} and len(doc["items"][0]) == 2


def test_json_errors():
    with pytest.raises(InstanceError):
        Instance.from_json("{")
    with pytest.raises(InstanceError):
        Instance.from_json('{"items": []}')
    with pytest.raises(InstanceError):
        Instance.from_json('{"capacity": 1, "items": [[1, 2, 3]]}')


def test_selection_from_indices_and_mask(pair):
    sel = Selection.from_indices(pair, [2])
    assert sel == Selection((2,), 1.0, 0.5)
    assert sel.mask(2).tolist() == [0, 1]
