import numpy as np
import pytest

from xdpknap.core import Instance, validate_selection
from xdpknap.oracle import (
    OracleLimitError,
    exact_exhaustive,
    exact_mitm,
    exact_solve,
)
from xdpknap.xdp import xdp_solve

from conftest import brute_force_optimum, random_instance


def test_pair_optimum():
    inst = Instance.from_items([(1, 0.6), (1, 0.5)], 1.0)
    assert exact_exhaustive(inst).optimum == 1.0
    assert exact_mitm(inst).optimum == 1.0


def test_top_two():
    inst = Instance.from_items([(3, 1), (2, 1), (1, 1)], 2)
    res = exact_exhaustive(inst)
    assert res.optimum == 5
    assert res.selection.chosen == (1, 2)


def test_nothing_fits():
    inst = Instance.from_items([(5, 2), (4, 3)], 1.0)
    for solver in (exact_exhaustive, exact_mitm):
        res = solver(inst)
        assert res.optimum == 0 and res.selection.chosen == ()


def test_exhaustive_matches_itertools(rng):
    for _ in range(60):
        inst = random_instance(rng, int(rng.integers(1, 11)))
        res = exact_exhaustive(inst)
        assert res.optimum == pytest.approx(brute_force_optimum(inst), rel=1e-12, abs=0)
        assert validate_selection(inst, res.selection).ok


def test_cross_oracle_agreement(rng):
    for _ in range(150):
        inst = random_instance(rng, int(rng.integers(1, 21)))
        a = exact_exhaustive(inst)
        b = exact_mitm(inst)
        assert b.optimum == pytest.approx(a.optimum, rel=1e-12, abs=1e-15)
        assert validate_selection(inst, b.selection).ok


def test_cross_oracle_n20(rng):
    inst = random_instance(rng, 20)
    assert exact_mitm(inst).optimum == pytest.approx(exact_exhaustive(inst).optimum, rel=1e-12)


def test_integer_data_agreement(rng):
    for _ in range(50):
        n = int(rng.integers(2, 16))
        inst = Instance(rng.integers(1, 20, n), rng.integers(1, 20, n), float(rng.integers(5, 60)))
        assert exact_mitm(inst).optimum == exact_exhaustive(inst).optimum


def test_mitm_dominates_xdp_n32(rng):
    inst = random_instance(rng, 32)
    res = exact_mitm(inst)
    assert validate_selection(inst, res.selection).ok
    assert res.optimum >= xdp_solve(inst).S


def test_limits():
    big = Instance(np.ones(41), np.ones(41), 10.0)
    with pytest.raises(OracleLimitError, match="40"):
        exact_mitm(big)
    with pytest.raises(OracleLimitError, match="25"):
        exact_exhaustive(Instance(np.ones(26), np.ones(26), 10.0))
    with pytest.raises(OracleLimitError):
        exact_solve(big)
    assert exact_solve(Instance(np.ones(30), np.ones(30), 10.0)).method == "mitm"
