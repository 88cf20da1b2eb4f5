from fractions import Fraction

import pytest

import formal_higgs as fh


def test_decompose_partitions():
    assert fh.decompose(fh.polynomial([{}, {1: -1}], 16))["partition"] == [2]
    # T^2 - (1 + z) T + z
    assert fh.decompose(fh.polynomial([{0: 1, 1: 1}, {1: 1}], 16))["partition"] == [1, 1]


def test_repeated_root_is_an_error():
    with pytest.raises(fh.HiggsError) as info:
        fh.decompose(fh.polynomial([{}, {}], 16))
    assert info.value.kind == "NotSeparable"


def test_power_trace_of_inverse():
    # T^2 - z: Tr(T^-1) = 0, Tr(T^2) = 2z
    p = fh.polynomial([{}, {1: -1}], 16)
    assert fh.coefficients(fh.power_trace(p, -1)) == {}
    assert fh.coefficients(fh.power_trace(p, 2)) == {1: Fraction(2)}


def test_fixture_check_round_trip():
    good = fh.check(fh.fixture("p1-ramified-positive"))
    assert good["contained"] and good["consistent"]
    assert all(r["value"] == "0/1" for r in good["residuals"])
    bad = fh.check(fh.fixture("p1-trivial-negative"))
    assert not bad["contained"] and bad["consistent"]
    assert any(r["value"] != "0/1" for r in bad["residuals"])


def test_check_window_override():
    report = fh.check(fh.fixture("p1-ramified-positive"), window=(-4, 4))
    assert report["precision"]["window"] == [-4, 4]


def test_hitchin():
    z, one, zero = fh.series({1: 1}, 8), fh.series({0: 1}, 8), fh.series({}, 8)
    out = fh.hitchin([[zero, z], [one, zero]], trivialize=True)
    assert fh.coefficients(out["p"]["a"][1]) == {1: Fraction(-1)}
    assert "P" in out


def test_fixture_names():
    names = fh.fixture_names()
    assert "p1-ramified-positive" in names and len(names) >= 20
    with pytest.raises(fh.HiggsError) as info:
        fh.fixture("nope")
    assert info.value.kind == "UnknownFixture"
