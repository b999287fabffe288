"""Minimizers of ``zeta(6, z) - b * zeta(3, z)`` over lattice shapes.

The minimum over the upper half-plane is attained on the boundary of the
fundamental domain: the imaginary axis above ``i`` or the unit arc from ``i``
to ``e^{i pi/3}``.  The arc is handled on the equivalent half-line
``1/2 + iy, y in [1/2, sqrt(3)/2]``.  Two critical-point ratios drive every
solve here:

* ``X(y) = d/dy zeta(6, iy) / d/dy zeta(3, iy)`` on the axis,
* ``H(y) = d/dy zeta(6, 1/2+iy) / d/dy zeta(3, 1/2+iy)`` on the half-line.

Both are 0/0 at the symmetric points (``y=1`` resp. ``y=1/2, sqrt(3)/2``) and
are evaluated there through higher derivatives.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional, Tuple

import numpy as np

from . import special_functions as sf
from .epstein import (
    DEFAULT_CONTROL,
    SeriesControl,
    UpperHalfPoint,
    ZetaDeriv,
    _as_point,
    w_b,
    w_b_grid,
    zeta_cs,
    zeta_partial,
)
from .errors import DomainError, SolverError
from .modular import halfline_to_angle, reduce

SQRT3_2 = math.sqrt(3.0) / 2.0
GUARD = 1e-4
TIE_EPS = 1e-9
DEFAULT_TOL = 1e-12

PHASES = ("Hexagonal", "DegeneratePair", "Rhombic", "Square", "Rectangular")


@dataclass(frozen=True)
class Thresholds:
    b0: float
    b1: float
    b1_5: float
    b2: float
    b_arc: float
    b3: float
    theta_b1: float
    y_b1: float
    y0: float

    def __post_init__(self):
        order = (self.b0, self.b1, self.b1_5, self.b2, self.b_arc, self.b3)
        if not all(a < b for a, b in zip(order, order[1:])):
            raise SolverError(f"threshold ordering violated: {order}")

    def as_dict(self) -> dict:
        return dict(self.__dict__)


@dataclass(frozen=True)
class PhasePoint:
    tag: str
    minimizers: Tuple[UpperHalfPoint, ...]
    theta: Optional[float] = None
    y: Optional[float] = None

    def __post_init__(self):
        if self.tag not in PHASES:
            raise DomainError(f"unknown phase tag {self.tag!r}")


@dataclass(frozen=True)
class LJParams:
    """Lennard-Jones parameters; the reduced coupling is ``b = sigma^-6``."""

    epsilon: float
    sigma: float

    def __post_init__(self):
        if not (self.epsilon > 0 and self.sigma > 0):
            raise DomainError("epsilon and sigma must be positive")

    @property
    def b(self) -> float:
        return self.sigma**-6


@dataclass(frozen=True)
class BranchSolveReport:
    b: float
    solution: float
    residual: float
    iterations: int
    bracket: Tuple[float, float]


@dataclass(frozen=True)
class GridSpec:
    """Sampling of the closed fundamental domain for :func:`brute_minimize`.

    Uniform steps up to ``y_switch``, then ``log_points`` log-spaced heights up
    to ``y_cap`` (default ``max(3, 3 * asymptotic_y(b))``).
    """

    step: float = 1e-3
    y_switch: float = 2.0
    log_points: int = 400
    y_cap: Optional[float] = None
    refine_tol: float = 1e-10


# ---------------------------------------------------------------------------
# root finding
# ---------------------------------------------------------------------------


def bisect_secant(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    *,
    ftol: float = 0.0,
    xtol: float = 1e-15,
    max_iter: int = 200,
) -> Tuple[float, float, int]:
    """Bracketed root of ``f``: secant steps, falling back to bisection.

    Returns ``(root, f(root), iterations)``.  Stops when ``|f| <= ftol`` or the
    bracket is narrower than ``xtol`` relative to its location.
    """
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return lo, flo, 0
    if fhi == 0.0:
        return hi, fhi, 0
    if (flo > 0) == (fhi > 0):
        raise SolverError(f"no sign change on [{lo}, {hi}]: f={flo}, {fhi}")
    best, fbest = (lo, flo) if abs(flo) < abs(fhi) else (hi, fhi)
    for it in range(1, max_iter + 1):
        width = hi - lo
        x = hi - fhi * (hi - lo) / (fhi - flo)
        # keep secant only if it lands well inside the bracket
        if not lo + 0.05 * width < x < hi - 0.05 * width:
            x = 0.5 * (lo + hi)
        fx = f(x)
        if abs(fx) < abs(fbest):
            best, fbest = x, fx
        if fx == 0.0 or abs(fx) <= ftol:
            return x, fx, it
        if (fx > 0) == (flo > 0):
            lo, flo = x, fx
        else:
            hi, fhi = x, fx
        # after a lopsided secant step also halve, so the bracket always shrinks
        if hi - lo > 0.5 * width:
            m = 0.5 * (lo + hi)
            fm = f(m)
            if abs(fm) < abs(fbest):
                best, fbest = m, fm
            if fm == 0.0 or abs(fm) <= ftol:
                return m, fm, it
            if (fm > 0) == (flo > 0):
                lo, flo = m, fm
            else:
                hi, fhi = m, fm
        if hi - lo <= xtol * max(1.0, abs(lo)):
            return best, fbest, it
    return best, fbest, max_iter


# ---------------------------------------------------------------------------
# critical ratios
# ---------------------------------------------------------------------------


def _dy(s: int, x: float, y: float, k: int, ctl: SeriesControl = DEFAULT_CONTROL) -> float:
    return zeta_partial(s, UpperHalfPoint(x, y), ZetaDeriv(0, k), ctl)


def _limit_ratio(x: float, y0: float, h: float) -> float:
    # both first derivatives vanish at y0: expand them to second order in h
    a2, a3 = _dy(6, x, y0, 2), _dy(6, x, y0, 3)
    b2, b3 = _dy(3, x, y0, 2), _dy(3, x, y0, 3)
    return (a2 + 0.5 * a3 * h) / (b2 + 0.5 * b3 * h)


def ratio_X(y: float) -> float:
    """``X(y)`` on the imaginary axis; finite limit ``b3`` at ``y=1``."""
    if not y > 0:
        raise DomainError(f"ratio_X needs y > 0, got {y}")
    if abs(y - 1.0) < GUARD:
        return _limit_ratio(0.0, 1.0, y - 1.0)
    den = _dy(3, 0.0, y, 1)
    if abs(den) < 1e-300:
        raise SolverError(f"d/dy zeta(3, iy) vanishes at y={y}")
    return _dy(6, 0.0, y, 1) / den


def ratio_H(y: float) -> float:
    """``H(y)`` on the half-line ``1/2 + iy``; finite limits at both ends."""
    if not 0.5 - 1e-15 <= y <= SQRT3_2 + 1e-15:
        raise DomainError(f"ratio_H needs y in [1/2, sqrt(3)/2], got {y}")
    if y - 0.5 < GUARD:
        return _limit_ratio(0.5, 0.5, y - 0.5)
    if SQRT3_2 - y < GUARD:
        return _limit_ratio(0.5, SQRT3_2, y - SQRT3_2)
    return _dy(6, 0.5, y, 1) / _dy(3, 0.5, y, 1)


# ---------------------------------------------------------------------------
# branch solvers and thresholds
# ---------------------------------------------------------------------------


def asymptotic_y(b: float) -> float:
    """Large-b growth law ``(zeta(6) b / (2 zeta(12)))^(1/3)`` of the rectangular minimizer."""
    if not b > 0:
        raise DomainError(f"asymptotic_y needs b > 0, got {b}")
    return (sf.riemann_zeta(6.0) / (2.0 * sf.riemann_zeta(12.0)) * b) ** (1.0 / 3.0)


def b3_value() -> float:
    return ratio_X(1.0)


def solve_y_b(b: float, tol: float = DEFAULT_TOL) -> BranchSolveReport:
    """Height of the rectangular minimizer ``i y_b``: root of ``X(y) = b`` on ``y > 1``."""
    b3 = b3_value()
    if not b > b3:
        raise DomainError(f"solve_y_b needs b > b3 = {b3:.6f}, got {b}")
    lo, hi = 1.0, max(2.0, 2.0 * asymptotic_y(b))
    root, res, it = bisect_secant(lambda y: ratio_X(y) - b, lo, hi, ftol=tol * b)
    return BranchSolveReport(b, root, res, it, (lo, hi))


def _halfline_num(y: float) -> float:
    # numerator of H'(y): A'B - AB' with A, B the first y-derivatives
    a1, a2 = _dy(6, 0.5, y, 1), _dy(6, 0.5, y, 2)
    b1, b2 = _dy(3, 0.5, y, 1), _dy(3, 0.5, y, 2)
    return a2 * b1 - a1 * b2


@lru_cache(maxsize=8)
def halfline_minimum(tol: float = DEFAULT_TOL) -> Tuple[float, float]:
    """``(b0, y0)``: the minimum value of H and where it is attained."""
    y0, _, _ = bisect_secant(_halfline_num, 0.65, 0.76, xtol=max(tol, 1e-15))
    return ratio_H(y0), y0


def b1_5_value() -> float:
    lo, hi = UpperHalfPoint(0.5, 0.5), UpperHalfPoint(0.5, SQRT3_2)
    return (zeta_cs(6, lo) - zeta_cs(6, hi)) / (zeta_cs(3, lo) - zeta_cs(3, hi))


def solve_halfline_branch(b: float, tol: float = DEFAULT_TOL) -> BranchSolveReport:
    """Local minimizer of the half-line energy: root of ``H(y) = b`` on ``(1/2, y0)``."""
    b0, y0 = halfline_minimum()
    b2 = ratio_H(0.5)
    if not b0 < b < b2:
        raise DomainError(f"solve_halfline_branch needs {b0:.6f} < b < {b2:.6f}, got {b}")
    lo, hi = 0.5 + 1e-9, y0
    root, res, it = bisect_secant(lambda y: ratio_H(y) - b, lo, hi, ftol=tol)
    return BranchSolveReport(b, root, res, it, (lo, hi))


def _g(b: float, y: float) -> float:
    return w_b(6, 3, b, UpperHalfPoint(0.5, y))


def energy_gap(b: float, tol: float = DEFAULT_TOL) -> float:
    """Energy of the rhombic local minimum minus that of the hexagonal point."""
    y = solve_halfline_branch(b, tol).solution
    return _g(b, y) - _g(b, SQRT3_2)


@lru_cache(maxsize=8)
def solve_b1(tol: float = DEFAULT_TOL) -> Tuple[float, float]:
    """``(b1, y_b1)``: the coupling where rhombic and hexagonal energies tie."""
    b0, _ = halfline_minimum()
    lo, hi = b0 + 1e-6, b1_5_value() - 1e-6
    b1, _, _ = bisect_secant(lambda b: energy_gap(b, tol), lo, hi, xtol=max(tol, 1e-15))
    return b1, solve_halfline_branch(b1, tol).solution


@lru_cache(maxsize=8)
def compute_thresholds(tol: float = DEFAULT_TOL) -> Thresholds:
    b0, y0 = halfline_minimum(tol)
    b1, y_b1 = solve_b1(tol)
    return Thresholds(
        b0=b0,
        b1=b1,
        b1_5=b1_5_value(),
        b2=ratio_H(0.5),
        b_arc=ratio_H(SQRT3_2),
        b3=b3_value(),
        theta_b1=halfline_to_angle(y_b1),
        y_b1=y_b1,
        y0=y0,
    )


# ---------------------------------------------------------------------------
# classification
# ---------------------------------------------------------------------------


def _arc_point(theta: float) -> UpperHalfPoint:
    return UpperHalfPoint(math.cos(theta), math.sin(theta))


def classify(b: float, thresholds: Optional[Thresholds] = None, tol: float = DEFAULT_TOL) -> PhasePoint:
    """Shape of the global minimizer of ``zeta(6,z) - b zeta(3,z)``."""
    t = thresholds or compute_thresholds()
    hexagonal = _arc_point(math.pi / 3)
    if abs(b - t.b1) <= TIE_EPS:
        return PhasePoint("DegeneratePair", (hexagonal, _arc_point(t.theta_b1)), theta=t.theta_b1)
    if b < t.b1:
        return PhasePoint("Hexagonal", (hexagonal,), theta=math.pi / 3)
    if b < t.b2:
        y = solve_halfline_branch(b, tol).solution
        theta = halfline_to_angle(y)
        return PhasePoint("Rhombic", (_arc_point(theta),), theta=theta)
    if b <= t.b3:
        return PhasePoint("Square", (UpperHalfPoint(0.0, 1.0),), theta=math.pi / 2, y=1.0)
    y = solve_y_b(b, tol).solution
    return PhasePoint("Rectangular", (UpperHalfPoint(0.0, y),), y=y)


# ---------------------------------------------------------------------------
# brute-force oracle and physical units
# ---------------------------------------------------------------------------


def _grid_axes(grid: GridSpec, y_cap: float) -> Tuple[np.ndarray, np.ndarray]:
    xs = np.linspace(0.0, 0.5, int(round(0.5 / grid.step)) + 1)
    top = min(grid.y_switch, y_cap)
    ys = np.arange(SQRT3_2, top + grid.step / 2, grid.step)
    if y_cap > top:
        ys = np.concatenate([ys, np.geomspace(top, y_cap, grid.log_points)[1:]])
    return xs, ys


def _coordinate_descent(f, x: float, y: float, step: float, tol: float) -> Tuple[float, float, float]:
    fx = f(x, y)
    h = step
    while h > tol:
        moved = False
        for dx, dy in ((h, 0.0), (-h, 0.0), (0.0, h), (0.0, -h)):
            nx, ny = x + dx, y + dy * max(1.0, y)
            if ny <= 0:
                continue
            fn = f(nx, ny)
            if fn < fx:
                x, y, fx, moved = nx, ny, fn, True
                break
        if not moved:
            h *= 0.5
    return x, y, fx


def brute_minimize(
    s1: float, s2: float, b: float, grid: GridSpec = GridSpec(), ctl: SeriesControl = DEFAULT_CONTROL
) -> Tuple[UpperHalfPoint, float]:
    """Grid search over the closed fundamental domain, then local refinement.

    Independent of the ratio machinery, and usable for any ``s1 > s2 > 1``.
    """
    if not s1 > s2 > 1:
        raise DomainError(f"brute_minimize needs s1 > s2 > 1, got s1={s1}, s2={s2}")
    if not grid.step > 0 or grid.log_points < 2:
        raise DomainError("empty grid")
    y_cap = grid.y_cap if grid.y_cap is not None else max(3.0, 3.0 * asymptotic_y(max(b, 1e-12)))
    xs, ys = _grid_axes(grid, y_cap)
    X, Y = xs[:, None], ys[None, :]
    vals = w_b_grid(s1, s2, b, X, Y, ctl)
    vals = np.where(X * X + Y * Y >= 1.0 - 1e-12, vals, np.inf)
    if not np.isfinite(vals).any():
        raise DomainError("grid has no point in the fundamental domain")
    i, j = np.unravel_index(np.argmin(vals), vals.shape)
    x0, y0 = float(xs[i]), float(ys[j])
    # refine without constraints: the energy is group invariant, so reduce afterwards
    f = lambda x, y: w_b(s1, s2, b, UpperHalfPoint(x, y), ctl)
    x, y, _ = _coordinate_descent(f, x0, y0, grid.step, grid.refine_tol)
    pos, _ = reduce(UpperHalfPoint(x, y))
    return pos.point, f(pos.point.x, pos.point.y)


def lj_energy(p: LJParams, z) -> float:
    """Lennard-Jones lattice energy ``2 eps sigma^12 (zeta(6,z) - b zeta(3,z))``."""
    return 2.0 * p.epsilon * p.sigma**12 * w_b(6, 3, p.b, _as_point(z))


def betermin_A_to_b(A: float) -> float:
    """Coupling ``b = 2 A^3`` from the area parameter A of the rescaled energy."""
    if not A > 0:
        raise DomainError(f"A must be positive, got {A}")
    return 2.0 * A**3
