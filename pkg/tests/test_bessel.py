import numpy as np
import pytest

from fluidmimo import bessel_j0

from oracles import j0_first_zero, j0_series


def test_value_at_zero_is_exactly_one():
    assert bessel_j0(0.0) == 1.0


def test_known_value_at_one():
    # series oracle gives 0.765197686557966...
    assert abs(bessel_j0(1.0) - 0.7651977) < 1e-6
    assert abs(bessel_j0(1.0) - j0_series(1.0)) < 1e-7


def test_first_zero_location():
    zero = j0_first_zero()
    assert abs(zero - 2.4048256) < 1e-6
    assert abs(bessel_j0(zero)) < 1e-6


def test_series_agreement_below_eight():
    grid = np.linspace(0.0, 8.0, 4001)
    err = np.abs(bessel_j0(grid) - j0_series(grid))
    assert err.max() <= 1e-7


def test_relative_accuracy_above_eight():
    # away from the zeros of J0; series still converges fine at x <= 16
    grid = np.linspace(8.0, 16.0, 2001)
    ref = j0_series(grid, terms=80)
    keep = np.abs(ref) > 1e-3
    rel = np.abs(bessel_j0(grid[keep]) - ref[keep]) / np.abs(ref[keep])
    assert rel.max() <= 1e-6


def test_envelope_bounds():
    # J0 lies in [-0.4028, 1] on the nonnegative axis
    grid = np.linspace(0.0, 200.0, 20001)
    vals = bessel_j0(grid)
    assert vals.max() <= 1.0 + 1e-8
    assert vals.min() >= -0.4028


def test_scalar_and_array_forms():
    arr = bessel_j0(np.array([0.0, 1.0, 10.0]))
    assert arr.shape == (3,)
    assert isinstance(bessel_j0(1.5), float)


@pytest.mark.parametrize("bad", [float("nan"), float("inf"), -1.0])
def test_rejects_bad_input(bad):
    with pytest.raises(ValueError):
        bessel_j0(bad)
