"""Scalar special functions behind the Fourier expansion of the Epstein zeta.

Everything here is a pure function of its arguments: the Riemann zeta value
at real s > 1, divisor power sums, the modified Bessel function of the second
kind at half-integer order, and exact y-derivatives of the kernel
``sqrt(y) * K_{n+1/2}(2 pi m y)`` that multiplies every Fourier mode.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError


@dataclass(frozen=True)
class HalfIntOrder:
    """Bessel order ``nu = n + 1/2`` stored by its integer part ``n``."""

    n: int

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 0:
            raise DomainError(f"half-integer order needs integer n >= 0, got {self.n!r}")

    @property
    def nu(self) -> float:
        return self.n + 0.5

    @classmethod
    def from_nu(cls, nu: float) -> "HalfIntOrder":
        n = nu - 0.5
        if n < 0 or abs(n - round(n)) > 1e-12:
            raise DomainError(f"order {nu} is not a non-negative half-integer")
        return cls(int(round(n)))


@dataclass(frozen=True)
class KernelSpec:
    """Selects ``d^j/dy^j [sqrt(y) K_nu(2 pi * harmonic * y)]``."""

    order: HalfIntOrder
    harmonic: int
    deriv_order: int = 0

    def __post_init__(self):
        if self.harmonic < 1:
            raise DomainError(f"harmonic index must be >= 1, got {self.harmonic}")
        if self.deriv_order not in (0, 1, 2, 3):
            raise DomainError(f"deriv_order must be in 0..3, got {self.deriv_order}")


def riemann_zeta(s: float, tol: float = 1e-14) -> float:
    """Riemann zeta function for real ``s > 1``.

    The partial sum up to N is completed by the Euler-Maclaurin tail through
    the ``N^(-s-3)`` term; N is chosen so that the first omitted term,
    ``s(s+1)(s+2)(s+3)(s+4) N^(-s-5) / 30240``, is below ``tol``.  For the
    orders this package needs (5, 6, 11, 12) a few dozen terms suffice.
    """
    if not s > 1:
        raise DomainError(f"riemann_zeta needs s > 1 (series diverges), got s={s}")
    if tol <= 0:
        raise DomainError("tol must be positive")
    n_terms = 16
    rising5 = s * (s + 1) * (s + 2) * (s + 3) * (s + 4)
    while rising5 * n_terms ** (-s - 5) / 30240.0 > tol:
        n_terms *= 2
    n = float(n_terms)
    head = math.fsum(k ** -s for k in range(n_terms, 0, -1))
    tail = (n ** (1.0 - s) / (s - 1.0) - 0.5 * n ** -s + s * n ** (-s - 1) / 12.0
            - s * (s + 1) * (s + 2) * n ** (-s - 3) / 720.0)
    return head + tail


def riemann_zeta_tail_bound(s: float, n_terms: int) -> float:
    """Upper bound ``N^(1-s)/(s-1)`` on ``sum_{n>N} n^-s``."""
    return n_terms ** (1.0 - s) / (s - 1.0)


def divisors(n: int) -> list[int]:
    if n < 1:
        raise DomainError(f"divisors need n >= 1, got {n}")
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def divisor_sigma(z: float, n: int) -> float:
    """``sigma_z(n)``: sum of ``d**z`` over the positive divisors d of n."""
    if not isinstance(n, int) or n < 1:
        raise DomainError(f"divisor_sigma needs a positive integer n, got {n!r}")
    return math.fsum(float(d) ** z for d in divisors(n))


def half_int_coefficients(n: int) -> list[int]:
    """Exact integers ``(n+k)! / (k! (n-k)!)`` for k = 0..n."""
    return [
        math.factorial(n + k) // (math.factorial(k) * math.factorial(n - k))
        for k in range(n + 1)
    ]


def bessel_k_half(order: HalfIntOrder | int, x: float) -> float:
    """Modified Bessel function ``K_{n+1/2}(x)`` from its finite closed form.

    Parameters
    ----------
    order : HalfIntOrder or int
        The order, or its integer part n.
    x : float
        Argument, must be positive.
    """
    n = order.n if isinstance(order, HalfIntOrder) else HalfIntOrder(order).n
    if not x > 0:
        raise DomainError(f"bessel_k_half needs x > 0, got x={x}")
    inv = 1.0 / (2.0 * x)
    poly = 0.0
    # Horner in 1/(2x); all coefficients are positive so there is no cancellation.
    for c in reversed(half_int_coefficients(n)):
        poly = poly * inv + c
    return math.sqrt(math.pi / (2.0 * x)) * math.exp(-x) * poly


# A kernel derivative is exp(-a y) * sum_k coef_k * y^(-k); the dict maps k -> coef.
def kernel_terms(n: int, harmonic: int, deriv_order: int) -> tuple[float, dict[int, float]]:
    """Rate ``a`` and coefficients of the ``exp(-a y) * sum_k c_k y^-k`` form."""
    a = 2.0 * math.pi * harmonic
    pref = math.sqrt(math.pi / (2.0 * a))
    terms = {
        k: pref * c / (2.0 * a) ** k for k, c in enumerate(half_int_coefficients(n))
    }
    for _ in range(deriv_order):
        terms = _differentiate(terms, a)
    return a, terms


def _differentiate(terms: dict[int, float], a: float) -> dict[int, float]:
    # d/dy [e^{-ay} y^{-k}] = e^{-ay} (-a y^{-k} - k y^{-k-1})
    out: dict[int, float] = {}
    for k, c in terms.items():
        out[k] = out.get(k, 0.0) - a * c
        if k:
            out[k + 1] = out.get(k + 1, 0.0) - k * c
    return out


def eval_terms(a: float, terms: dict[int, float], y):
    """Evaluate a :func:`kernel_terms` representation; ``y`` may be an array."""
    inv = 1.0 / y
    top = max(terms)
    poly = 0.0
    for k in range(top, -1, -1):
        poly = poly * inv + terms.get(k, 0.0)
    return np.exp(-a * y) * poly


# Closed forms for -d/dy and d^2/dy^2 of sqrt(y) K_{5/2}, K_{11/2} at argument
# 2 pi m y, as polynomials in 1/(m pi y).  The 11/2 first coefficients are 15/2
# (symbolic differentiation of the Bessel closed form).
_CLOSED_FORMS = {
    (2, 1): (-1.0, 0.5, 1, (1.0, 3 / 2, 3 / 2, 3 / 4)),
    (5, 1): (-1.0, 0.5, 1, (1.0, 15 / 2, 30.0, 315 / 4, 2205 / 16, 4725 / 32, 4725 / 64)),
    (2, 2): (2.0, 1.5, 2, (1.0, 3 / 2, 9 / 4, 9 / 4, 9 / 8)),
    (5, 2): (
        2.0, 1.5, 2,
        (1.0, 15 / 2, 135 / 4, 435 / 4, 4095 / 16, 13545 / 32, 14175 / 32, 14175 / 64),
    ),
}


def _closed_form(n: int, m: int, j: int, y: float) -> float:
    scale, m_pow, pi_pow, coefs = _CLOSED_FORMS[(n, j)]
    inv = 1.0 / (m * math.pi * y)
    poly = 0.0
    for c in reversed(coefs):
        poly = poly * inv + c
    return scale * m**m_pow * math.pi**pi_pow * math.exp(-2.0 * math.pi * m * y) * poly


def kernel_deriv(spec: KernelSpec, y: float) -> float:
    """``d^j/dy^j [sqrt(y) K_{n+1/2}(2 pi m y)]`` with j = ``spec.deriv_order``."""
    if not y > 0:
        raise DomainError(f"kernel_deriv needs y > 0, got y={y}")
    n, m, j = spec.order.n, spec.harmonic, spec.deriv_order
    if (n, j) in _CLOSED_FORMS:
        return _closed_form(n, m, j, y)
    a, terms = kernel_terms(n, m, j)
    return float(eval_terms(a, terms, y))


def kernel_deriv_generic(n: int, harmonic: int, deriv_order: int, y: float) -> float:
    """Same quantity as :func:`kernel_deriv`, always via term-wise differentiation."""
    if not y > 0:
        raise DomainError(f"kernel_deriv needs y > 0, got y={y}")
    a, terms = kernel_terms(n, harmonic, deriv_order)
    return float(eval_terms(a, terms, y))


def kernel_value(n: int, harmonic: int, y: float, deriv_order: int = 0) -> float:
    """Convenience wrapper around :func:`kernel_deriv` taking plain integers."""
    return kernel_deriv(KernelSpec(HalfIntOrder(n), harmonic, deriv_order), y)
