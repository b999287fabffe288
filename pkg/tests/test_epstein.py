import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ljlattice.epstein import (
    SeriesControl,
    UpperHalfPoint,
    ZetaDeriv,
    direct_cutoff_for,
    direct_tail_bound,
    w_b,
    w_b_grid,
    w_b_partial,
    zeta_cs,
    zeta_direct,
    zeta_dy,
    zeta_grid,
    zeta_partial,
)
from ljlattice.errors import DomainError, SeriesTruncationError, UnsupportedError

HEX = UpperHalfPoint(0.5, math.sqrt(3) / 2)
ORDERS = [(1, 0), (0, 1), (2, 0), (1, 1), (0, 2), (2, 1), (1, 2), (0, 3)]


def _direct(s, z, tol=1e-10):
    return zeta_direct(s, z, SeriesControl(direct_cutoff=direct_cutoff_for(s, z, tol)), with_tail=True)


def test_upper_half_point_validation():
    with pytest.raises(DomainError):
        UpperHalfPoint(0.0, 0.0)
    p = UpperHalfPoint.from_complex(0.25 + 1.5j)
    assert p.z == 0.25 + 1.5j
    assert tuple(p) == (0.25, 1.5)


def test_series_control_validation():
    with pytest.raises(DomainError):
        SeriesControl(tol=0)
    with pytest.raises(DomainError):
        SeriesControl(max_fourier_terms=0)


@pytest.mark.parametrize("d", [(3, 0), (0, 4), (2, 2), (-1, 0)])
def test_zeta_deriv_rejects_unsupported_orders(d):
    with pytest.raises(UnsupportedError):
        ZetaDeriv(*d)


@pytest.mark.parametrize("s", [3, 6])
@pytest.mark.parametrize("z", [(0.3, 1.2), (0.0, 1.0), (0.5, math.sqrt(3) / 2), (0.1, 2.4), (0.45, 0.9)])
def test_cs_matches_direct_sum(s, z):
    z = UpperHalfPoint(*z)
    d = _direct(s, z)
    assert d.tail <= 1e-10
    assert zeta_cs(s, z) == pytest.approx(d.value, abs=1e-8)


def test_direct_tail_bound_is_an_upper_bound():
    z = UpperHalfPoint(0.2, 1.1)
    small = zeta_direct(6, z, SeriesControl(direct_cutoff=5))
    big = zeta_direct(6, z, SeriesControl(direct_cutoff=80))
    assert big - small <= direct_tail_bound(6, z, 5)
    assert direct_tail_bound(6, UpperHalfPoint(1.2, 1.0), 10) == math.inf


def test_direct_cutoff_search_gives_up():
    with pytest.raises(SeriesTruncationError):
        direct_cutoff_for(1.2, UpperHalfPoint(0.0, 1.0), 1e-14, max_cutoff=64)


def test_hexagonal_point_minimizes_zeta3():
    base = _direct(3, HEX).value
    for z in [(0.0, 1.0), (0.4, 0.95), (0.5, 1.0), (0.2, 1.3)]:
        assert _direct(3, UpperHalfPoint(*z)).value > base


@pytest.mark.parametrize("s", [1.0, 0.5])
def test_divergent_s_rejected(s):
    with pytest.raises(DomainError):
        zeta_cs(s, HEX)
    with pytest.raises(DomainError):
        zeta_direct(s, HEX)


def test_small_y_rejected():
    with pytest.raises(DomainError):
        zeta_cs(3, UpperHalfPoint(0.0, 1e-7))


def test_truncation_error_when_cap_too_low():
    with pytest.raises(SeriesTruncationError):
        zeta_cs(3, UpperHalfPoint(0.0, 0.3), SeriesControl(max_fourier_terms=2))


def test_large_y_leading_term():
    y = 8.0
    lead = 2 * 1.0173430619844491 * y**3  # 2 zeta(6) y^3
    assert zeta_cs(3, UpperHalfPoint(0.3, y)) == pytest.approx(lead, rel=1e-4)


@given(st.floats(-3, 3), st.floats(0.4, 3.0), st.sampled_from([3, 6]))
def test_periodic_and_even_in_x(x, y, s):
    v = zeta_cs(s, UpperHalfPoint(x, y))
    assert zeta_cs(s, UpperHalfPoint(x + 1, y)) == pytest.approx(v, rel=1e-12)
    assert zeta_cs(s, UpperHalfPoint(-x, y)) == pytest.approx(v, rel=1e-12)


@pytest.mark.parametrize("s", [3, 6])
def test_critical_points_of_y_derivative(s):
    assert zeta_partial(s, UpperHalfPoint(0.0, 1.0), ZetaDeriv(0, 1)) == pytest.approx(0.0, abs=1e-10)
    assert zeta_partial(s, HEX, ZetaDeriv(0, 1)) == pytest.approx(0.0, abs=1e-10)


@given(st.floats(0.6, 3.0))
def test_x_derivative_vanishes_on_axis(y):
    assert zeta_partial(3, UpperHalfPoint(0.0, y), ZetaDeriv(1, 0)) == pytest.approx(0.0, abs=1e-12)


def test_x_derivative_negative_inside_domain():
    assert zeta_partial(3, UpperHalfPoint(0.25, 1.3), ZetaDeriv(1, 0)) < 0


def _fd_lower(s, z, dx, dy, h=1e-5):
    if dy:
        lo = ZetaDeriv(dx, dy - 1)
        f = lambda t: zeta_partial(s, UpperHalfPoint(z.x, t), lo)
        return (f(z.y + h) - f(z.y - h)) / (2 * h)
    lo = ZetaDeriv(dx - 1, dy)
    f = lambda t: zeta_partial(s, UpperHalfPoint(t, z.y), lo)
    return (f(z.x + h) - f(z.x - h)) / (2 * h)


@settings(max_examples=30, deadline=None)
@given(st.floats(0.0, 0.5), st.floats(0.7, 2.5), st.sampled_from([3, 6]), st.sampled_from(ORDERS))
def test_derivatives_match_finite_differences(x, y, s, order):
    z = UpperHalfPoint(x, y)
    exact = zeta_partial(s, z, ZetaDeriv(*order))
    fd = _fd_lower(s, z, *order)
    assert exact == pytest.approx(fd, rel=1e-6, abs=1e-8)


def test_second_derivative_vs_values():
    z, h = UpperHalfPoint(0.25, 1.1), 1e-4
    f = lambda t: zeta_cs(3, UpperHalfPoint(0.25, t))
    fd = (f(z.y + h) - 2 * f(z.y) + f(z.y - h)) / h**2
    assert zeta_partial(3, z, ZetaDeriv(0, 2)) == pytest.approx(fd, rel=1e-6)


def test_zeta_dy_matches_zeta_partial():
    for k in range(4):
        assert zeta_dy(6, 0.2, 1.3, k) == pytest.approx(zeta_partial(6, UpperHalfPoint(0.2, 1.3), ZetaDeriv(0, k)),
                                                        rel=1e-14)


def test_zeta_dy_high_order_vs_finite_difference():
    h = 1e-5
    for k in (4, 5):
        fd = (zeta_dy(3, 0.0, 1.2 + h, k - 1) - zeta_dy(3, 0.0, 1.2 - h, k - 1)) / (2 * h)
        assert zeta_dy(3, 0.0, 1.2, k) == pytest.approx(fd, rel=1e-6)


def test_grid_matches_pointwise():
    xs = np.array([0.0, 0.2, 0.5])
    ys = np.array([0.9, 1.4])
    g = zeta_grid(6, xs[:, None], ys[None, :], ZetaDeriv(1, 1))
    for i, x in enumerate(xs):
        for j, y in enumerate(ys):
            assert g[i, j] == pytest.approx(zeta_partial(6, UpperHalfPoint(x, y), ZetaDeriv(1, 1)), rel=1e-13,
                                            abs=1e-14)


def test_derivatives_need_integer_s():
    with pytest.raises(UnsupportedError):
        zeta_partial(3.5, HEX, ZetaDeriv(0, 1))


@pytest.mark.parametrize("s", [2.5, 4.2])
def test_non_integer_s_fallback_matches_direct(s):
    z = UpperHalfPoint(0.3, 1.2)
    assert zeta_cs(s, z) == pytest.approx(_direct(s, z, 1e-9).value, abs=1e-8)


def test_w_b_reduces_to_zeta_at_b0():
    assert w_b(6, 3, 0.0, HEX) == zeta_cs(6, HEX)


def test_w_b_rejects_bad_ordering():
    for fn in (lambda: w_b(3, 6, 1.0, HEX), lambda: w_b_partial(3, 3, 1.0, HEX, ZetaDeriv(0, 1)),
               lambda: w_b_grid(1.0, 0.5, 1.0, 0.0, 1.0)):
        with pytest.raises(DomainError):
            fn()


def test_w_b_partial_linear_in_b():
    d = ZetaDeriv(0, 2)
    z = UpperHalfPoint(0.1, 1.2)
    expected = zeta_partial(6, z, d) - 2.5 * zeta_partial(3, z, d)
    assert w_b_partial(6, 3, 2.5, z, d) == pytest.approx(expected, rel=1e-14)
