import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from bscoherence.exceptions import CascadeError, CascadeParseError
from bscoherence.network import (
    BeamSplitter,
    Cascade,
    config1,
    config1_for,
    config2,
    format_cascade,
    optimal_split,
    parse_cascade,
    tau_vector,
)


def test_config2_single_splitter_is_balanced():
    (bs,) = config2(1).splitters
    assert bs.theta == pytest.approx(math.pi / 4, abs=1e-15)
    assert bs.t ** 2 == pytest.approx(bs.r ** 2)


def test_config2_two_splitters():
    b1, b2 = config2(2).splitters
    assert b1.theta == pytest.approx(math.asin(1 / math.sqrt(3)), abs=1e-15)
    assert b1.t ** 2 == pytest.approx(2 * b1.r ** 2, abs=1e-15)
    assert b2.theta == pytest.approx(math.pi / 4, abs=1e-15)


def test_config2_first_angle_N3():
    assert config2(3).splitters[0].theta == pytest.approx(math.pi / 6, abs=1e-15)


@pytest.mark.parametrize("N", range(1, 8))
def test_config2_transmission_ratio(N):
    for j, bs in enumerate(config2(N).splitters, start=1):
        assert bs.t ** 2 == pytest.approx((N + 1 - j) * bs.r ** 2, abs=1e-13)


def test_config2_degenerate():
    c = config2(0)
    assert c.mode_count == 1 and c.splitters == ()
    np.testing.assert_array_equal(tau_vector(c), [1.0])


@pytest.mark.parametrize("depth, count", [(1, 1), (2, 3), (3, 7), (5, 31)])
def test_config1_shape(depth, count):
    c = config1(depth)
    assert len(c.splitters) == count
    assert c.mode_count == 2 ** depth
    assert all(b.theta == math.pi / 4 for b in c.splitters)


def test_config1_rejects_depth_zero():
    with pytest.raises(CascadeError):
        config1(0)


def test_config1_for_power_of_two_only():
    assert config1_for(7).mode_count == 8
    with pytest.raises(CascadeError, match="power of two"):
        config1_for(4)


def test_tau_examples():
    np.testing.assert_allclose(tau_vector(config2(1)), [1 / math.sqrt(2)] * 2, atol=1e-15)
    np.testing.assert_allclose(tau_vector(config1(2)), [0.5] * 4, atol=1e-15)
    np.testing.assert_allclose(tau_vector(config1(3)), [1 / math.sqrt(8)] * 8, atol=1e-15)


@pytest.mark.parametrize("N", range(0, 11))
def test_config2_equal_split(N):
    assert np.max(np.abs(tau_vector(config2(N)) - optimal_split(N))) < 1e-12


@pytest.mark.parametrize("d", range(1, 6))
def test_config1_equal_split(d):
    assert np.max(np.abs(tau_vector(config1(d)) - optimal_split(2 ** d - 1))) < 1e-12


def test_optimal_split_examples():
    np.testing.assert_array_equal(optimal_split(0), [1.0])
    np.testing.assert_allclose(optimal_split(1), [1 / math.sqrt(2)] * 2)
    np.testing.assert_allclose(optimal_split(3), [0.5] * 4)


@st.composite
def random_cascades(draw):
    modes = draw(st.integers(2, 7))
    k = draw(st.integers(0, 12))
    splitters = []
    for _ in range(k):
        a = draw(st.integers(0, modes - 1))
        b = draw(st.integers(0, modes - 2))
        b = b + 1 if b >= a else b
        splitters.append(BeamSplitter(a, b, draw(st.floats(-7, 7))))
    return Cascade(modes, tuple(splitters))


def _connected(c):
    return not c.unreachable_modes()


@settings(max_examples=200)
@given(random_cascades().filter(_connected))
def test_tau_unit_norm(c):
    assert abs(math.fsum(tau_vector(c) ** 2) - 1) < 1e-12


@settings(max_examples=100)
@given(random_cascades().filter(_connected), st.randoms())
def test_relabel_equivariance(c, rnd):
    perm = list(range(c.mode_count))
    rnd.shuffle(perm)
    tau = tau_vector(c)
    moved = tau_vector(c.relabel(perm))
    np.testing.assert_allclose(moved[perm], tau, atol=1e-15)


def test_unreachable_mode_is_structural_error():
    c = Cascade(3, (BeamSplitter(0, 1, 0.3),))
    with pytest.raises(CascadeError, match="not reachable"):
        tau_vector(c)


def test_bad_splitters_rejected():
    with pytest.raises(CascadeError):
        BeamSplitter(1, 1, 0.2)
    with pytest.raises(CascadeError):
        Cascade(2, (BeamSplitter(0, 2, 0.2),))


def test_file_round_trip():
    for c in (config2(4), config1(3)):
        back = parse_cascade(format_cascade(c))
        assert back == c


def test_parse_with_comments_and_inferred_modes():
    text = """
    # two splitters
    1: 0 1 0.6154797086703874   # first
    2: 0 2 0.7853981633974483
    """
    c = parse_cascade(text)
    assert c.mode_count == 3
    np.testing.assert_allclose(tau_vector(c), optimal_split(2), atol=1e-12)


@pytest.mark.parametrize("text, line", [
    ("1: 0 1 0.5\n2: 0 2\n", 2),
    ("1: 0 1 abc\n", 1),
    ("# c\n2: 0 1 0.5\n", 2),
    ("1 0 1 0.5\n", 1),
    ("1: 0 0 0.5\n", 1),
])
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(CascadeParseError) as info:
        parse_cascade(text)
    assert info.value.lineno == line
    assert f"line {line}" in str(info.value)
