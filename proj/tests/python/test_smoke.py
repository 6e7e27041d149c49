import math
from fractions import Fraction

import numpy as np
import pytest

import sstl


def path_space():
    return sstl.Space(["a", "b", "c"], [("a", "b", 1.0), ("b", "c", 1.0)])


def test_space():
    s = path_space()
    assert len(s) == 3
    assert s.diameter == 2.0
    assert s.locations_in_range(0, 1, 2) == [1, 2]
    with pytest.raises(sstl.SpaceError):
        sstl.Space(["a"], [("a", "z", 1.0)])


def test_quant_surround_path():
    value, iterations = sstl.quant_surround([5, 1, 0], [0, 4, 2], path_space(), 0, 0, 2)
    assert value == 4
    assert iterations <= 3


def test_monitor_round_trip():
    s = path_space()
    values = np.zeros((3, 4, 1))
    values[1, :, 0] = [1, 2, 3, 4]
    t = sstl.Trace(["x"], values, "1/2")
    assert t.step == Fraction(1, 2)
    assert np.array_equal(t.to_numpy(), values)
    f = sstl.parse_formula("F[0,1] x > 0")
    assert f.until_count == 1
    q = sstl.monitor_quant(f, t, s)
    assert q.robustness.shape == (3, 2)
    assert q.robustness_at_zero == [0.0, 3.0, 0.0]
    b = sstl.monitor_bool(f, t, s)
    assert b.satisfied_at_zero == [False, True, False]
    assert b.intervals(1) == [(Fraction(0), Fraction(2))]


def test_errors():
    s = path_space()
    t = sstl.Trace(["x"], np.zeros((3, 2, 1)), 1)
    with pytest.raises(sstl.ParseError):
        sstl.parse_formula("x >")
    with pytest.raises(sstl.SchemaError):
        sstl.monitor_bool(sstl.parse_formula("y > 0"), t, s)
    with pytest.raises(sstl.HorizonError):
        sstl.monitor_quant(sstl.parse_formula("F[0,3] x > 0"), t, s)
    with pytest.raises(sstl.EvaluationError):
        sstl.monitor_quant(sstl.parse_formula("x == 0"), t, s)


def test_script_and_simulation():
    script = sstl.parse_script("spot := (xA <= 0.5) S[1,6] (xA > 0.5)\nlate := F[1,2] spot\n")
    trace, space = sstl.simulate_turing(K=6, T=4, seed=3, epsilon=0.1)
    again, _ = sstl.simulate_turing(K=6, T=4, seed=3, epsilon=0.1)
    assert trace == again
    assert trace.variables == ["xA", "xB"]
    a = sstl.monitor_quant(script["late"], trace, space, jobs=1)
    b = sstl.monitor_quant(script["late"], trace, space, jobs=3, surround="full")
    assert np.array_equal(a.robustness, b.robustness)


def test_smc():
    report = sstl.smc_estimate(sstl.parse_formula("true"), runs=5, seed=1, K=4, T=1)
    assert report["p_hat"] == 1.0
    assert report["runs"] == 5
    low, high = sstl.wilson_interval(5, 10)
    assert low < 0.5 < high
    assert math.isclose(sstl.pearson([1, 2, 3], [2, 4, 6]), 1.0)
    assert sstl.pearson([1, 2], [3, 3]) is None
    assert sstl.parse_grid("0:0.2:0.1") == [0.0, 0.1, 0.2]
