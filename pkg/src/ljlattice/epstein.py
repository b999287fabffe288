"""Epstein zeta function of unit-covolume two-dimensional lattices.

``zeta(s, z) = sum_{(m,n) != 0} y^s / |m z + n|^(2s)`` for ``z = x + iy`` in the
upper half-plane.  Two independent evaluation routes are provided:

* :func:`zeta_direct` sums the lattice directly inside a box and reports a
  rigorous bound on the discarded tail.  It is slow and only used as an oracle.
* :func:`zeta_cs` uses the Fourier expansion in x,

  .. math::

      \\zeta(s,z) = 2\\xi(2s) y^s
          + 2\\sqrt{\\pi}\\frac{\\Gamma(s-1/2)}{\\Gamma(s)}\\xi(2s-1) y^{1-s}
          + \\frac{8\\pi^s}{\\Gamma(s)} \\sum_{n\\ge1} n^{s-1/2}\\sigma_{1-2s}(n)
            \\sqrt{y} K_{s-1/2}(2\\pi n y) \\cos(2\\pi n x),

  whose Fourier tail decays like ``exp(-2 pi n y)``.  For integer s the Bessel
  order is a half-integer and every term is elementary, which also makes the
  analytic x/y derivatives of :func:`zeta_partial` exact.

Functions accept scalars or numpy arrays for ``x``/``y`` where noted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from . import special_functions as sf
from .errors import DomainError, SeriesTruncationError, UnsupportedError

MIN_Y = 1e-6

# Gamma values at the orders the Lennard-Jones problem needs.
_GAMMA = {
    3.0: 2.0,
    6.0: 120.0,
    2.5: 3.0 * math.sqrt(math.pi) / 4.0,
    5.5: 945.0 * math.sqrt(math.pi) / 32.0,
}


def _gamma(v: float) -> float:
    return _GAMMA.get(float(v), math.gamma(v))


@dataclass(frozen=True)
class UpperHalfPoint:
    """A lattice shape ``z = x + iy`` with ``y > 0``."""

    x: float
    y: float

    def __post_init__(self):
        if not self.y > 0:
            raise DomainError(f"point must lie in the upper half-plane, got y={self.y}")

    @classmethod
    def from_complex(cls, z: complex) -> "UpperHalfPoint":
        return cls(float(z.real), float(z.imag))

    @property
    def z(self) -> complex:
        return complex(self.x, self.y)

    def __iter__(self):
        yield self.x
        yield self.y


@dataclass(frozen=True)
class SeriesControl:
    """Truncation policy for the infinite sums."""

    tol: float = 1e-12
    max_fourier_terms: int = 64
    direct_cutoff: int = 200

    def __post_init__(self):
        if not self.tol > 0:
            raise DomainError("SeriesControl.tol must be positive")
        if self.max_fourier_terms < 1 or self.direct_cutoff < 1:
            raise DomainError("SeriesControl term caps must be >= 1")


DEFAULT_CONTROL = SeriesControl()


@dataclass(frozen=True)
class ZetaDeriv:
    """Orders of the partial derivatives in x and y."""

    dx_order: int = 0
    dy_order: int = 0

    def __post_init__(self):
        if not (0 <= self.dx_order <= 2 and 0 <= self.dy_order <= 3):
            raise UnsupportedError(f"unsupported derivative order {self}")
        if self.dx_order + self.dy_order > 3:
            raise UnsupportedError(f"total derivative order above 3: {self}")


class DirectSum(NamedTuple):
    value: float
    tail: float
    cutoff: int


def _as_point(z) -> UpperHalfPoint:
    if isinstance(z, UpperHalfPoint):
        return z
    if isinstance(z, complex):
        return UpperHalfPoint.from_complex(z)
    x, y = z
    return UpperHalfPoint(float(x), float(y))


def _check_s(s: float) -> None:
    if not s > 1:
        raise DomainError(f"Epstein zeta needs s > 1 (lattice sum diverges), got s={s}")


def _check_y(y) -> None:
    if np.any(np.asarray(y) < MIN_Y):
        raise DomainError(f"y below {MIN_Y} is rejected; reduce the point first")


def _is_integer_order(s: float) -> bool:
    return abs(s - round(s)) < 1e-12 and round(s) >= 2


# ---------------------------------------------------------------------------
# direct lattice summation (oracle)
# ---------------------------------------------------------------------------


def direct_tail_bound(s: float, z: UpperHalfPoint, cutoff: int) -> float:
    """Bound on ``sum y^s/|mz+n|^(2s)`` over pairs with ``max(|m|,|n|) > cutoff``.

    In lattice coordinates ``P = (mz+n)/sqrt(y)`` every discarded point has
    ``|P| >= rho = cutoff * min(y, 1-|x|) / sqrt(y)``.  Comparing each point with
    the average over its own fundamental cell (diameter d) gives
    ``(1 + d/rho)^(2s) * 2 pi (rho-d)^(2-2s) / (2s-2)``.
    Returns ``inf`` when the estimate does not apply (``|x| >= 1`` or ``rho <= d``).
    """
    x, y = z.x, z.y
    if abs(x) >= 1.0:
        return math.inf
    sy = math.sqrt(y)
    rho = (cutoff + 1) * min(y, 1.0 - abs(x)) / sy
    d = max(abs(complex(1.0 + x, y)), abs(complex(1.0 - x, -y))) / sy
    if rho <= d:
        return math.inf
    return (1.0 + d / rho) ** (2 * s) * 2.0 * math.pi * (rho - d) ** (2.0 - 2.0 * s) / (2.0 * s - 2.0)


def direct_cutoff_for(s: float, z, tol: float, max_cutoff: int = 4000) -> int:
    """Smallest box half-width whose :func:`direct_tail_bound` is below ``tol``."""
    z = _as_point(z)
    lo, hi = 1, 1
    while direct_tail_bound(s, z, hi) > tol:
        hi *= 2
        if hi > max_cutoff:
            raise SeriesTruncationError(
                f"direct sum needs a cutoff above {max_cutoff} for tol={tol} at {z}"
            )
    while lo < hi:
        mid = (lo + hi) // 2
        if direct_tail_bound(s, z, mid) > tol:
            lo = mid + 1
        else:
            hi = mid
    return hi


def zeta_direct(s: float, z, ctl: SeriesControl = DEFAULT_CONTROL, *, with_tail: bool = False):
    """Box-truncated lattice sum over ``|m|, |n| <= ctl.direct_cutoff``.

    With ``with_tail=True`` a :class:`DirectSum` carrying the tail bound is
    returned instead of the bare float.
    """
    _check_s(s)
    z = _as_point(z)
    _check_y(z.y)
    cutoff = ctl.direct_cutoff
    n = np.arange(-cutoff, cutoff + 1, dtype=float)
    # half lattice: m >= 1 with all n, plus m = 0 with n >= 1; then double
    total = []
    for m in range(cutoff, 0, -1):
        re = m * z.x + n
        sq = re * re + (m * z.y) ** 2
        total.append(np.sum(np.sort(sq ** -s)))
    pos = np.arange(cutoff, 0, -1, dtype=float)
    total.append(np.sum(pos ** (-2.0 * s)))
    value = 2.0 * z.y**s * math.fsum(total)
    if with_tail:
        return DirectSum(value, direct_tail_bound(s, z, cutoff), cutoff)
    return value


# ---------------------------------------------------------------------------
# Fourier (Chowla-Selberg) expansion
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _constants(s: float) -> tuple[float, float, float]:
    """(2 xi(2s), 2 sqrt(pi) Gamma(s-1/2)/Gamma(s) xi(2s-1), 8 pi^s / Gamma(s))."""
    lead = 2.0 * sf.riemann_zeta(2.0 * s)
    second = 2.0 * math.sqrt(math.pi) * _gamma(s - 0.5) / _gamma(s) * sf.riemann_zeta(2.0 * s - 1.0)
    fourier = 8.0 * math.pi**s / _gamma(s)
    return lead, second, fourier


@lru_cache(maxsize=None)
def fourier_coefficient(s: float, n: int) -> float:
    """``(8 pi^s / Gamma(s)) * n^(s-1/2) * sigma_{1-2s}(n)``."""
    return _constants(s)[2] * n ** (s - 0.5) * sf.divisor_sigma(1.0 - 2.0 * s, n)


@lru_cache(maxsize=None)
def _kernel_table(order: int, n: int, j: int):
    return sf.kernel_terms(order, n, j)


def _kernel(s: float, n: int, j: int, y):
    if _is_integer_order(s):
        a, terms = _kernel_table(int(round(s)) - 1, n, j)
        return sf.eval_terms(a, terms, y)
    if j:
        raise UnsupportedError(f"y-derivatives need integer s, got s={s}")
    from scipy.special import kv

    return np.sqrt(y) * kv(s - 0.5, 2.0 * math.pi * n * y)


def _power_deriv(p: float, j: int) -> float:
    """Coefficient of y^(p-j) in d^j/dy^j y^p."""
    c = 1.0
    for i in range(j):
        c *= p - i
    return c


def _trig_deriv(n: int, dx: int, x):
    w = 2.0 * math.pi * n
    if dx == 0:
        return np.cos(w * x)
    if dx == 1:
        return -w * np.sin(w * x)
    return -(w * w) * np.cos(w * x)


def _series(s: float, x, y, dx: int, dy: int, ctl: SeriesControl):
    lead, second, fourier = _constants(s)
    if dx == 0:
        poly = lead * _power_deriv(s, dy) * y ** (s - dy)
        poly = poly + second * _power_deriv(1.0 - s, dy) * y ** (1.0 - s - dy)
    else:
        poly = 0.0 * y
    y_min = float(np.min(y))
    acc = poly
    for n in range(1, ctl.max_fourier_terms + 1):
        c = fourier_coefficient(s, n)
        acc = acc + c * _kernel(s, n, dy, y) * _trig_deriv(n, dx, x)
        # the kernel is completely monotone, so its size at y_min bounds the term
        bound = abs(c) * (2.0 * math.pi * n) ** dx * abs(float(_kernel(s, n, dy, y_min)))
        if bound < ctl.tol / 10.0:
            return acc
    raise SeriesTruncationError(
        f"Fourier series for s={s} did not reach tol={ctl.tol} within "
        f"{ctl.max_fourier_terms} terms at y={y_min}"
    )


def zeta_cs(s: float, z, ctl: SeriesControl = DEFAULT_CONTROL) -> float:
    """Epstein zeta via its Fourier expansion in x.

    Integer ``s >= 2`` uses the elementary half-integer Bessel kernels; other
    ``s > 1`` fall back to :func:`scipy.special.kv`.
    """
    return zeta_partial(s, z, ZetaDeriv(0, 0), ctl)


def zeta_partial(s: float, z, d: ZetaDeriv = ZetaDeriv(), ctl: SeriesControl = DEFAULT_CONTROL) -> float:
    """``d^(i+j)/dx^i dy^j zeta(s, z)`` by term-wise differentiation of the expansion."""
    _check_s(s)
    p = _as_point(z)
    x, y = p.x, p.y
    _check_y(y)
    if (d.dx_order or d.dy_order) and not _is_integer_order(s):
        raise UnsupportedError(f"derivatives are only implemented for integer s, got s={s}")
    return float(_series(s, x, y, d.dx_order, d.dy_order, ctl))


def zeta_grid(s: float, x, y, d: ZetaDeriv = ZetaDeriv(), ctl: SeriesControl = DEFAULT_CONTROL):
    """Vectorised :func:`zeta_partial` over broadcastable arrays ``x`` and ``y``."""
    _check_s(s)
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    _check_y(y)
    if (d.dx_order or d.dy_order) and not _is_integer_order(s):
        raise UnsupportedError(f"derivatives are only implemented for integer s, got s={s}")
    return _series(s, x, y, d.dx_order, d.dy_order, ctl)


def zeta_dy(s: int, x, y, k: int, ctl: SeriesControl = DEFAULT_CONTROL):
    """``d^k/dy^k zeta(s, x+iy)`` for any ``k >= 0``; integer s only.

    :class:`ZetaDeriv` caps the order at 3; the inequality checks need up to 5.
    """
    _check_s(s)
    if not _is_integer_order(s):
        raise UnsupportedError(f"derivatives are only implemented for integer s, got s={s}")
    if k < 0:
        raise UnsupportedError("derivative order must be non-negative")
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    _check_y(y)
    out = _series(s, x, y, 0, k, ctl)
    return float(out) if np.ndim(out) == 0 else out


def w_b(s1: float, s2: float, b: float, z, ctl: SeriesControl = DEFAULT_CONTROL) -> float:
    """Lennard-Jones type difference ``zeta(s1, z) - b * zeta(s2, z)``."""
    if not s1 > s2 > 1:
        raise DomainError(f"w_b needs s1 > s2 > 1, got s1={s1}, s2={s2}")
    return zeta_cs(s1, z, ctl) - b * zeta_cs(s2, z, ctl)


def w_b_partial(s1: float, s2: float, b: float, z, d: ZetaDeriv, ctl: SeriesControl = DEFAULT_CONTROL) -> float:
    if not s1 > s2 > 1:
        raise DomainError(f"w_b needs s1 > s2 > 1, got s1={s1}, s2={s2}")
    return zeta_partial(s1, z, d, ctl) - b * zeta_partial(s2, z, d, ctl)


def w_b_grid(s1: float, s2: float, b: float, x, y, ctl: SeriesControl = DEFAULT_CONTROL):
    if not s1 > s2 > 1:
        raise DomainError(f"w_b needs s1 > s2 > 1, got s1={s1}, s2={s2}")
    return zeta_grid(s1, x, y, ctl=ctl) - b * zeta_grid(s2, x, y, ctl=ctl)
