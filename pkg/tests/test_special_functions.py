import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.special import kv

from ljlattice import special_functions as sf
from ljlattice.errors import DomainError


@pytest.mark.parametrize(
    "s, exact",
    [
        (2.0, math.pi**2 / 6),
        (6.0, math.pi**6 / 945),
        (12.0, 691 * math.pi**12 / 638512875),
    ],
)
def test_riemann_zeta_closed_forms(s, exact):
    assert sf.riemann_zeta(s) == pytest.approx(exact, rel=1e-13)


def test_riemann_zeta_odd_values():
    # Apery's constant and zeta(5) to the published digits
    assert sf.riemann_zeta(3.0) == pytest.approx(1.2020569031595942, rel=1e-14)
    assert sf.riemann_zeta(5.0) == pytest.approx(1.0369277551433699, rel=1e-14)
    assert sf.riemann_zeta(11.0) == pytest.approx(1.0004941886041195, rel=1e-14)


@pytest.mark.parametrize("s", [1.0, 0.5, -2.0])
def test_riemann_zeta_rejects_divergent(s):
    with pytest.raises(DomainError):
        sf.riemann_zeta(s)


def test_tail_bound_dominates_tail():
    n = 50
    tail = math.fsum(k**-6.0 for k in range(n + 1, 200000))
    assert tail <= sf.riemann_zeta_tail_bound(6.0, n)


@given(st.integers(min_value=1, max_value=3000), st.sampled_from([-11.0, -5.0, 0.0, 1.0]))
def test_divisor_sigma_matches_brute_force(n, z):
    brute = math.fsum(float(d) ** z for d in range(1, n + 1) if n % d == 0)
    assert sf.divisor_sigma(z, n) == pytest.approx(brute, rel=1e-14)


def test_divisor_sigma_multiplicative():
    for m, n in [(4, 9), (8, 15), (7, 25)]:
        assert sf.divisor_sigma(-5.0, m * n) == pytest.approx(
            sf.divisor_sigma(-5.0, m) * sf.divisor_sigma(-5.0, n), rel=1e-14
        )


@pytest.mark.parametrize("n", [0, -3, 2.5])
def test_divisor_sigma_rejects_bad_n(n):
    with pytest.raises(DomainError):
        sf.divisor_sigma(1.0, n)


def test_divisors_sorted():
    assert sf.divisors(36) == [1, 2, 3, 4, 6, 9, 12, 18, 36]
    assert sf.divisors(1) == [1]


@given(st.integers(min_value=0, max_value=8), st.floats(min_value=0.05, max_value=60.0))
def test_bessel_k_half_matches_scipy(n, x):
    assert sf.bessel_k_half(n, x) == pytest.approx(kv(n + 0.5, x), rel=1e-12)


def test_bessel_k_half_order_half_is_elementary():
    x = 1.7
    assert sf.bessel_k_half(0, x) == pytest.approx(math.sqrt(math.pi / (2 * x)) * math.exp(-x), rel=1e-15)


def test_bessel_rejects_nonpositive_argument():
    with pytest.raises(DomainError):
        sf.bessel_k_half(2, 0.0)


def test_half_int_order_validation():
    assert sf.HalfIntOrder.from_nu(5.5) == sf.HalfIntOrder(5)
    assert sf.HalfIntOrder(2).nu == 2.5
    with pytest.raises(DomainError):
        sf.HalfIntOrder.from_nu(3.0)
    with pytest.raises(DomainError):
        sf.HalfIntOrder(-1)


def test_kernel_spec_validation():
    with pytest.raises(DomainError):
        sf.KernelSpec(sf.HalfIntOrder(2), 0, 0)
    with pytest.raises(DomainError):
        sf.KernelSpec(sf.HalfIntOrder(2), 1, 4)


@given(
    st.sampled_from([2, 5]),
    st.integers(min_value=1, max_value=5),
    st.floats(min_value=0.3, max_value=3.0),
)
def test_kernel_value_matches_scipy(n, m, y):
    direct = math.sqrt(y) * kv(n + 0.5, 2 * math.pi * m * y)
    assert sf.kernel_value(n, m, y) == pytest.approx(direct, rel=1e-12)


@settings(max_examples=60)
@given(
    st.sampled_from([2, 5]),
    st.integers(min_value=1, max_value=3),
    st.integers(min_value=1, max_value=3),
    st.floats(min_value=0.4, max_value=2.0),
)
def test_kernel_derivative_vs_central_difference(n, m, j, y):
    h = 1e-5
    fd = (sf.kernel_value(n, m, y + h, j - 1) - sf.kernel_value(n, m, y - h, j - 1)) / (2 * h)
    exact = sf.kernel_value(n, m, y, j)
    assert exact == pytest.approx(fd, rel=1e-6, abs=1e-13)


@pytest.mark.parametrize("n, j", [(2, 1), (5, 1), (2, 2), (5, 2)])
@pytest.mark.parametrize("m", [1, 2, 4])
@pytest.mark.parametrize("y", [0.5, 0.8660254, 1.0, 2.5])
def test_closed_forms_agree_with_generic_differentiation(n, j, m, y):
    spec = sf.KernelSpec(sf.HalfIntOrder(n), m, j)
    assert sf.kernel_deriv(spec, y) == pytest.approx(sf.kernel_deriv_generic(n, m, j, y), rel=1e-12)


def test_kernel_completely_monotone():
    ys = np.linspace(0.5, 3.0, 50)
    for j in range(4):
        vals = np.array([sf.kernel_value(5, 2, y, j) for y in ys])
        assert np.all(np.sign(vals) == (-1) ** j)


def test_eval_terms_vectorised():
    a, terms = sf.kernel_terms(5, 3, 2)
    ys = np.array([0.6, 1.1, 2.0])
    vec = sf.eval_terms(a, terms, ys)
    assert vec == pytest.approx([sf.kernel_value(5, 3, y, 2) for y in ys], rel=1e-14)
