"""Sampled checks of the inequalities behind the minimizer classification.

Each check evaluates one quantitative inequality on a dense finite sample
(uniform points plus Chebyshev points clustered at the interval ends) and
records the worst margin.  This can falsify a bound but never certifies it.
Unbounded y-ranges are cut at ``Y_MAX``; every Fourier quantity involved decays
like ``exp(-2 pi y)`` beyond it.

Notation for the Fourier pieces of ``w = zeta(6, z) - b zeta(3, z)``, with
``c_s(n)`` the Fourier coefficient and ``k_s(n, y) = sqrt(y) K_{s-1/2}(2 pi n y)``:

* ``P_n(y, b) = n (b c_3 k_3 - c_6 k_6)``          so ``dw/dx = 2 pi sum_n P_n sin(2 pi n x)``
* ``A_n(y, b) = c_6 k_6'' - b c_3 k_3''``           so ``d2w/dy2 = A_0 + sum_n A_n cos(2 pi n x)``
* ``B_n(y, b) = n (c_6 (-k_6') - b c_3 (-k_3'))``   so ``d2w/dxdy = 2 pi sum_n B_n sin(2 pi n x)``

and ``A(y), B(y)`` denote ``d/dy zeta(6|3, 1/2 + iy)``.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np

from . import special_functions as sf
from .epstein import _kernel, fourier_coefficient, zeta_dy, zeta_grid, ZetaDeriv
from .minimizer import bisect_secant

SQRT3_2 = math.sqrt(3.0) / 2.0
Y_MAX = 5.0
MIN_SAMPLES = 500
N_TERMS = 40  # Fourier modes in the explicit coefficient sums; mode 40 is below 1e-90


@dataclass
class LemmaCheck:
    lemma_id: str
    domain_description: str
    sample_count: int
    worst_margin: float
    bound: float
    passed: bool
    worst_point: Optional[List[float]] = None
    note: str = ""
    informational: bool = False

    def report(self) -> dict:
        return {
            "lemma_id": self.lemma_id,
            "bound": self.bound,
            "worst_margin": self.worst_margin,
            "worst_point": self.worst_point,
            "samples": self.sample_count,
            "passed": self.passed,
            "domain": self.domain_description,
            "note": self.note,
            "informational": self.informational,
        }


# ---------------------------------------------------------------------------
# sampling
# ---------------------------------------------------------------------------


def sample_interval(lo: float, hi: float, n: int = MIN_SAMPLES, *, open_lo=False, open_hi=False) -> np.ndarray:
    """Half uniform, half Chebyshev-clustered points in ``[lo, hi]``, sorted."""
    n = max(int(n), 4)
    nu = n // 2
    uni = np.linspace(lo, hi, nu)
    k = np.arange(n - nu)
    cheb = 0.5 * (lo + hi) - 0.5 * (hi - lo) * np.cos((2 * k + 1) * np.pi / (2 * (n - nu)))
    pts = np.concatenate([uni, cheb])
    # open ends are nudged inward rather than dropped so the count stays n
    span = hi - lo
    if open_lo:
        pts = np.where(pts <= lo, lo + 1e-9 * span, pts)
    if open_hi:
        pts = np.where(pts >= hi, hi - 1e-9 * span, pts)
    return np.sort(pts)


def _domain_grid(n: int, y_lo: float = SQRT3_2, y_hi: float = Y_MAX, open_x: bool = False):
    """Points of the closed fundamental domain with ``y_lo <= y <= y_hi``."""
    ys = sample_interval(y_lo, y_hi, n)
    ts = sample_interval(0.0, 1.0, n, open_lo=open_x, open_hi=open_x)
    x_min = np.sqrt(np.clip(1.0 - ys * ys, 0.0, None))
    X = x_min[:, None] + ts[None, :] * (0.5 - x_min[:, None])
    Y = np.broadcast_to(ys[:, None], X.shape)
    if open_x:
        X = np.clip(X, 1e-9, 0.5 - 1e-9)
    return X, Y


def _rectangle_grid(n: int, x_lo, x_hi, y_lo, y_hi, open_x: bool = False):
    xs = sample_interval(x_lo, x_hi, n, open_lo=open_x, open_hi=open_x)
    ys = sample_interval(y_lo, y_hi, n)
    X, Y = np.meshgrid(xs, ys)
    return X, Y


def _summarize(lemma_id, domain, values, bound, points, *, sense=">=", strict=False, slack=0.0,
               note="", informational=False) -> LemmaCheck:
    values = np.asarray(values, dtype=float)
    margin = values - bound if sense == ">=" else bound - values
    i = int(np.argmin(margin))
    worst = float(margin.flat[i])
    pt = [float(np.asarray(p).flat[i]) for p in points]
    if slack:
        passed = worst > -slack
    else:
        passed = worst > 0.0 if strict else worst >= 0.0
    return LemmaCheck(lemma_id, domain, int(values.size), worst, float(bound), bool(passed), pt, note, informational)


# ---------------------------------------------------------------------------
# Fourier pieces
# ---------------------------------------------------------------------------


def _c(s: int, n: int) -> float:
    return fourier_coefficient(float(s), n)


def _k(s: int, n: int, j: int, y):
    return _kernel(float(s), n, j, y)


def P_n(n: int, y, b: float = 3.062):
    return n * (b * _c(3, n) * _k(3, n, 0, y) - _c(6, n) * _k(6, n, 0, y))


def A_n(n: int, y, b: float = 3.06):
    y = np.asarray(y, dtype=float)
    if n == 0:
        z6 = sf.riemann_zeta(6.0)
        z12, z11, z5 = sf.riemann_zeta(12.0), sf.riemann_zeta(11.0), sf.riemann_zeta(5.0)
        sq = math.sqrt(math.pi)
        top = 60.0 * z12 * y**4 + 60.0 * sq * math.gamma(5.5) / math.gamma(6.0) * z11 * y**-7
        low = 12.0 * z6 * y + 12.0 * sq * math.gamma(2.5) / math.gamma(3.0) * z5 * y**-4
        return top - b * low
    return _c(6, n) * _k(6, n, 2, y) - b * _c(3, n) * _k(3, n, 2, y)


def B_n(n: int, y, b: float = 3.07):
    return n * (_c(6, n) * -_k(6, n, 1, y) - b * _c(3, n) * -_k(3, n, 1, y))


def _c6_plain() -> float:
    return 8.0 * math.pi**6 / math.gamma(6.0)


def eps1(y):
    """Tail majorant ``sum_{n>=4} n^{15/2} sigma_{-11}(n) (8 pi^6/5!) k_6(n, y)``."""
    return sum(n**7.5 * sf.divisor_sigma(-11.0, n) * _c6_plain() * _k(6, n, 0, y) for n in range(4, N_TERMS))


def eps2(y):
    """Tail majorant ``sum_{n>=4} n^{15/2} sigma_{-11}(n) (8 pi^6/5!) (-k_6'(n, y))``."""
    return sum(n**7.5 * sf.divisor_sigma(-11.0, n) * _c6_plain() * -_k(6, n, 1, y) for n in range(4, N_TERMS))


def fourier_pieces_numeric(kind: str, n: int, y: float, b: float, m: int = 64) -> float:
    """Extract ``P_n``, ``A_n`` or ``B_n`` by numerically Fourier-analyzing ``zeta_grid`` in x.

    The trapezoid rule on a full period is spectrally accurate here.
    """
    x = np.arange(m) / m
    if kind == "P":
        f = zeta_grid(6, x, y, ZetaDeriv(1, 0)) - b * zeta_grid(3, x, y, ZetaDeriv(1, 0))
        return float(2.0 * np.mean(f * np.sin(2 * np.pi * n * x)) / (2 * np.pi))
    if kind == "A":
        f = zeta_grid(6, x, y, ZetaDeriv(0, 2)) - b * zeta_grid(3, x, y, ZetaDeriv(0, 2))
        w = 1.0 if n == 0 else 2.0
        return float(w * np.mean(f * np.cos(2 * np.pi * n * x)))
    if kind == "B":
        f = zeta_grid(6, x, y, ZetaDeriv(1, 1)) - b * zeta_grid(3, x, y, ZetaDeriv(1, 1))
        return float(2.0 * np.mean(f * np.sin(2 * np.pi * n * x)) / (2 * np.pi))
    raise ValueError(f"unknown Fourier piece {kind!r}")


def _dy(s: int, x, y, k: int):
    return zeta_dy(s, x, y, k)


def _axis_Y(y, order: int = 0):
    """``Y = zeta6'' zeta3' - zeta6' zeta3''`` on the imaginary axis and its y-derivatives."""
    d6 = [_dy(6, 0.0, y, j) for j in range(1, order + 3)]
    d3 = [_dy(3, 0.0, y, j) for j in range(1, order + 3)]
    # Y = f' g - f g' with f = zeta6', g = zeta3'; Leibniz gives Y^(k)
    total = 0.0
    for i in range(order + 1):
        binom = math.comb(order, i)
        total = total + binom * (d6[i + 1] * d3[order - i] - d6[order - i] * d3[i + 1])
    return total


# ---------------------------------------------------------------------------
# two-dimensional checks
# ---------------------------------------------------------------------------


def check_x_monotonicity(b: float = 3.062, samples: int = MIN_SAMPLES, region: str = "domain") -> LemmaCheck:
    """``d/dx (zeta(6) - b zeta(3)) >= 0`` on the closed domain (``region='domain'``)
    or on its part above ``y = 1`` (``region='upper'``)."""
    y_lo = 1.0 if region == "upper" else SQRT3_2
    X, Y = _domain_grid(samples, y_lo=y_lo)
    vals = zeta_grid(6, X, Y, ZetaDeriv(1, 0)) - b * zeta_grid(3, X, Y, ZetaDeriv(1, 0))
    desc = f"closed fundamental domain, {y_lo:.6g} <= y <= {Y_MAX}"
    claimed = (region == "domain" and b >= 3.062) or (region == "upper" and b >= 3.0)
    if b == 0.0:
        rid = "x_monotone_b0"
    else:
        rid = "x_monotone_upper" if region == "upper" else "x_monotone_domain"
    return _summarize(rid, desc, vals, 0.0, (X, Y), slack=1e-12,
                      informational=not claimed,
                      note="" if claimed else "outside the claimed parameter range; informational")


def check_y_convexity(b: float = 3.06, samples: int = MIN_SAMPLES) -> LemmaCheck:
    """``d2/dy2 (zeta(6) - b zeta(3)) > 0`` on the closed domain."""
    X, Y = _domain_grid(samples)
    vals = zeta_grid(6, X, Y, ZetaDeriv(0, 2)) - b * zeta_grid(3, X, Y, ZetaDeriv(0, 2))
    return _summarize("y_convex", f"closed fundamental domain, y <= {Y_MAX}", vals, 0.0, (X, Y), strict=True)


def check_zeta3_convexity(samples: int = MIN_SAMPLES) -> LemmaCheck:
    """``d2/dy2 zeta(3) >= 4`` on ``x in [0, 1/2], y >= sqrt(3)/2``."""
    X, Y = _rectangle_grid(samples, 0.0, 0.5, SQRT3_2, Y_MAX)
    vals = zeta_grid(3, X, Y, ZetaDeriv(0, 2))
    return _summarize("zeta3_y_convex", f"x in [0, 1/2], sqrt(3)/2 <= y <= {Y_MAX}", vals, 4.0, (X, Y))


def check_mixed_derivative(b: float = 3.07, samples: int = MIN_SAMPLES) -> LemmaCheck:
    """``d2/dxdy (zeta(6) - b zeta(3)) > 0`` for ``0 < x < 1/2``, ``sqrt(3)/2 <= y <= 1``.

    The derivative vanishes identically at ``x = 0`` and ``x = 1/2`` (it is odd
    about both), so the check is on ``d2w/dxdy / (2 pi sin 2 pi x)`` in the open
    strip, whose positivity is the same statement.
    """
    X, Y = _rectangle_grid(samples, 0.0, 0.5, SQRT3_2, 1.0, open_x=True)
    mixed = zeta_grid(6, X, Y, ZetaDeriv(1, 1)) - b * zeta_grid(3, X, Y, ZetaDeriv(1, 1))
    vals = mixed / (2 * np.pi * np.sin(2 * np.pi * X))
    return _summarize("mixed_derivative", "0 < x < 1/2, sqrt(3)/2 <= y <= 1", vals, 0.0, (X, Y),
                      strict=True, note="rectangle x in [0,1/2], y in [sqrt(3)/2,1] (printed domain is degenerate)")


# ---------------------------------------------------------------------------
# one-dimensional inequality checks
# ---------------------------------------------------------------------------


def _arc_main(y):
    u = np.sqrt(np.clip(1.0 - y * y, 0.0, None))
    p1, p2, p3 = P_n(1, y), P_n(2, y), P_n(3, y)
    return p1 + p3 + 2 * p2 * np.cos(2 * np.pi * u) + 2 * p3 * np.cos(4 * np.pi * u)


def _check_1d(lemma_id, lo, hi, fn, bound, sense=">=", samples=MIN_SAMPLES, open_lo=False, open_hi=False,
              desc=None, note="") -> LemmaCheck:
    ys = sample_interval(lo, hi, samples, open_lo=open_lo, open_hi=open_hi)
    vals = fn(ys)
    left = "(" if open_lo else "["
    right = ")" if open_hi else "]"
    desc = desc or f"y in {left}{lo:.6g}, {hi:.6g}{right}"
    return _summarize(lemma_id, desc, vals, bound, (ys,), sense=sense, note=note)


def _kernel_bound_P(y):
    # bare K_{11/2}(4 pi y), without the sqrt(y) carried by P_n
    y = np.asarray(y, dtype=float)
    return 0.1 * 2**6.5 * sf.divisor_sigma(-11.0, 2) * _c6_plain() * _k(6, 2, 0, y) / np.sqrt(y)


def _kernel_bound_B(y):
    return 0.1 * 2**6.5 * sf.divisor_sigma(-11.0, 2) * _c6_plain() * -_k(6, 2, 1, y)


def _half(s, j):
    return lambda y: _dy(s, 0.5, y, j)


def _ab(i, j):
    # A^(i) B^(j) - A^(j) B^(i), derivatives of the first y-derivatives on x = 1/2
    def f(y):
        return _dy(6, 0.5, y, i + 1) * _dy(3, 0.5, y, j + 1) - _dy(6, 0.5, y, j + 1) * _dy(3, 0.5, y, i + 1)
    return f


def check_inflection_root(samples: int = MIN_SAMPLES, target: float = 0.65546688, tol: float = 1e-6) -> LemmaCheck:
    """``d2/dy2 zeta(3, 1/2+iy)`` changes sign exactly once, from - to +, at ``target``."""
    ys = sample_interval(0.5, SQRT3_2, samples)
    v = _half(3, 2)(ys)
    changes = int(np.sum(np.sign(v[1:]) != np.sign(v[:-1])))
    root, _, _ = bisect_secant(_half(3, 2), 0.55, 0.75, xtol=1e-15)
    root = float(root)
    sign_ok = changes == 1 and v[0] < 0 < v[-1]
    margin = tol - abs(root - target)
    return LemmaCheck("halfline_zeta3_inflection", "y in [1/2, sqrt(3)/2]", samples, margin, tol,
                      bool(sign_ok and margin >= 0), [root], note=f"root {root:.10f}, sign changes {changes}")


def check_axis_Y_zeros(tol: float = 1e-8) -> LemmaCheck:
    vals = [abs(_axis_Y(1.0, k)) for k in range(3)]
    worst = tol - max(vals)
    return LemmaCheck("axis_Y_zeros", "y = 1, orders 0..2", 3, worst, tol, worst >= 0, [1.0],
                      note="|Y|, |Y'|, |Y''| = " + ", ".join(f"{v:.3e}" for v in vals))


def check_P1_root(target: float = 0.9434111, tol: float = 1e-5, samples: int = MIN_SAMPLES) -> LemmaCheck:
    ys = sample_interval(SQRT3_2, Y_MAX, samples)
    v = P_n(1, ys)
    changes = int(np.sum(np.sign(v[1:]) != np.sign(v[:-1])))
    root, _, _ = bisect_secant(lambda y: float(P_n(1, y)), 0.9, 1.0, xtol=1e-15)
    root = float(root)
    margin = tol - abs(root - target)
    return LemmaCheck("P1_sign_change", f"y in [sqrt(3)/2, {Y_MAX}]", samples, margin, tol,
                      bool(changes == 1 and v[0] < 0 < v[-1] and margin >= 0), [root],
                      note=f"root {root:.10f}")


def check_mixed_leading_at_one(target: float = 5.87e-3, tol: float = 1e-4, samples: int = MIN_SAMPLES) -> LemmaCheck:
    """``B1 - 2B2 + 3B3 - eps2`` equals ``target`` at y=1 and is minimal there on the arc band."""
    f = lambda y: B_n(1, y) - 2 * B_n(2, y) + 3 * B_n(3, y) - eps2(y)
    ys = sample_interval(SQRT3_2, 1.0, samples)
    at_one = float(f(1.0))
    lowest = float(np.min(f(ys)))
    margin = tol - abs(at_one - target)
    ok = margin >= 0 and lowest >= at_one - 1e-12
    return LemmaCheck("mixed_leading_at_one", "y in [sqrt(3)/2, 1], value at y=1", samples, margin, target,
                      ok, [1.0], note=f"value at y=1: {at_one:.6e}; minimum over the band {lowest:.6e}")


def check_tail_eps2(samples: int = MIN_SAMPLES) -> LemmaCheck:
    """The actual Fourier tail ``sum_{n>=4} n B_n`` is below its majorant ``eps2``."""
    ys = sample_interval(SQRT3_2, Y_MAX, samples)
    tail = sum(n * np.abs(B_n(n, ys)) for n in range(4, N_TERMS))
    return _summarize("mixed_tail_eps2", f"y in [sqrt(3)/2, {Y_MAX}]", eps2(ys) - tail, 0.0, (ys,))


def check_sign_facts(samples: int = MIN_SAMPLES, n_max: int = 10) -> List[LemmaCheck]:
    out = []
    ys = sample_interval(SQRT3_2, Y_MAX, samples)
    worst = max(float(np.max(P_n(n, ys) / np.abs(_c(6, n) * _k(6, n, 0, ys)))) for n in range(2, n_max + 1))
    # signs are compared after dividing out the common exp(-2 pi n y) scale
    out.append(LemmaCheck("P_n_negative", f"n = 2..{n_max}, y in [sqrt(3)/2, {Y_MAX}]", samples * (n_max - 1),
                          -worst, 0.0, worst < 0, note="margin is -max P_n / |c6 k6|"))
    yp = sample_interval(0.05, Y_MAX, samples)
    for name, fn, kern in (("A_n_positive", A_n, (6, 2)), ("B_n_positive", B_n, (6, 1))):
        worst = min(float(np.min(fn(n, yp) / np.abs(_c(6, n) * _k(kern[0], n, kern[1], yp)))) for n in range(2, n_max + 1))
        out.append(LemmaCheck(name, f"n = 2..{n_max}, y in [0.05, {Y_MAX}]", samples * (n_max - 1),
                              worst, 0.0, worst > 0, note="margin is min value / |c6 k6^(j)|"))
    return out


def check_fourier_two_way(tol: float = 1e-8, ys: Sequence[float] = (SQRT3_2, 1.0, 1.5)) -> LemmaCheck:
    """``P_n``, ``A_n``, ``B_n`` from the closed formulas agree with a numerical x-Fourier analysis."""
    worst = 0.0
    where = None
    for y in ys:
        for kind, fn, b in (("P", P_n, 3.062), ("A", A_n, 3.06), ("B", B_n, 3.07)):
            for n in range(0 if kind == "A" else 1, 4):
                exact = float(fn(n, y, b))
                num = fourier_pieces_numeric(kind, n, y, b)
                err = abs(exact - num)
                if err > worst:
                    worst, where = err, [float(n), float(y)]
    return LemmaCheck("fourier_two_way", "n <= 3, y in {sqrt(3)/2, 1, 1.5}", 3 * 3 * 4, tol - worst, tol,
                      worst <= tol, where, note=f"max abs discrepancy {worst:.3e}")


def _registry(samples: int) -> Dict[str, Callable[[], object]]:
    """Check name -> thunk; a thunk returns one LemmaCheck or a list of them."""
    s = samples
    side = max(min(samples, 200), 10)  # 2d checks use side x side grids
    return {
        "x_monotone_domain": lambda: check_x_monotonicity(3.062, side, "domain"),
        "x_monotone_upper": lambda: check_x_monotonicity(3.0, side, "upper"),
        "x_monotone_b0": lambda: check_x_monotonicity(0.0, side, "domain"),
        "y_convex": lambda: check_y_convexity(3.06, side),
        "zeta3_y_convex": lambda: check_zeta3_convexity(side),
        "mixed_derivative": lambda: check_mixed_derivative(3.07, side),
        "arc_main_combination": lambda: _check_1d("arc_main_combination", SQRT3_2, 1.0, _arc_main, 2.655e-5, samples=s),
        "arc_tail_eps1": lambda: _check_1d("arc_tail_eps1", SQRT3_2, 1.0, eps1, 5.76e-6, sense="<=", samples=s),
        "x_leading_pair": lambda: _check_1d(
            "x_leading_pair", SQRT3_2, Y_MAX, lambda y: 2 * P_n(3, y) - P_n(2, y) - _kernel_bound_P(y), 0.0,
            samples=s, note="2P3 - P2 minus (1/10) 2^{13/2} sigma_{-11}(2) (8pi^6/5!) K_{11/2}(4 pi y)"),
        "convex_first_mode": lambda: _check_1d(
            "convex_first_mode", SQRT3_2, 1.0,
            lambda y: A_n(1, y) - sum(n * n * A_n(n, y) for n in range(2, N_TERMS)), 3.0, samples=s),
        "convex_alternating": lambda: _check_1d(
            "convex_alternating", SQRT3_2, 1.0,
            lambda y: A_n(0, y) + sum((-1) ** n * A_n(n, y) for n in range(1, N_TERMS)), 4.688e-3, samples=s),
        "convex_upper_dominance": lambda: _check_1d(
            "convex_upper_dominance", 1.0, Y_MAX,
            lambda y: A_n(0, y) - sum(np.abs(A_n(n, y)) for n in range(1, N_TERMS)), 5.0, samples=s),
        "mixed_leading_pair": lambda: _check_1d(
            "mixed_leading_pair", SQRT3_2, Y_MAX, lambda y: B_n(2, y) - 2 * B_n(3, y) - _kernel_bound_B(y), 0.0,
            samples=s, note="B2 - 2B3 minus (1/10) 2^{13/2} sigma_{-11}(2) (8pi^6/5!) (-k_6'(2, y))"),
        "mixed_leading_at_one": lambda: check_mixed_leading_at_one(samples=s),
        "mixed_tail_eps2": lambda: check_tail_eps2(samples=s),
        "axis_Y_positive": lambda: _check_1d("axis_Y_positive", 1.05, Y_MAX, _axis_Y, 4.5, samples=s),
        "axis_Y_third": lambda: _check_1d("axis_Y_third", 1.0, 1.05, lambda y: _axis_Y(y, 3), 1e5, samples=s),
        "axis_Y_zeros": check_axis_Y_zeros,
        "halfline_zeta3_third": lambda: _check_1d("halfline_zeta3_third", 0.5, SQRT3_2, _half(3, 3), 30.0, samples=s),
        "halfline_zeta3_inflection": lambda: check_inflection_root(samples=s),
        "halfline_AB_middle": lambda: _check_1d(
            "halfline_AB_middle", 0.65, 0.76, _ab(2, 0), 6.0, samples=s, desc="y in [0.65, 0.76]; A''B - AB''"),
        "halfline_AB_upper": lambda: _check_1d(
            "halfline_AB_upper", 0.76, SQRT3_2, _ab(2, 1), 9.0, samples=s,
            desc="y in [0.76, sqrt(3)/2]; A''B' - A'B''"),
        "halfline_AB_third_low": lambda: _check_1d(
            "halfline_AB_third_low", 0.5, 0.54, _ab(3, 1), -1600.0, sense="<=", samples=s, open_lo=True,
            desc="y in (1/2, 0.54]; A'''B' - A'B'''"),
        "halfline_AB_low": lambda: _check_1d(
            "halfline_AB_low", 0.54, 0.65, _ab(2, 1), -90.0, sense="<=", samples=s,
            desc="y in [0.54, 0.65]; A''B' - A'B''"),
        "P1_sign_change": lambda: check_P1_root(samples=s),
        "sign_facts": lambda: check_sign_facts(samples=s),
        "fourier_two_way": check_fourier_two_way,
    }


# registry keys that expand to several LemmaCheck entries
_GROUPS = {"sign_facts": ("P_n_negative", "A_n_positive", "B_n_positive")}
TWO_DIM = ("x_monotone_domain", "x_monotone_upper", "x_monotone_b0", "y_convex", "zeta3_y_convex",
           "mixed_derivative")


def check_names() -> List[str]:
    names = []
    for key in _registry(MIN_SAMPLES):
        names.extend(_GROUPS.get(key, (key,)))
    return names


def _select(only: Optional[Sequence[str]]) -> List[str]:
    keys = list(_registry(MIN_SAMPLES))
    if not only:
        return keys
    wanted = set(only)
    unknown = wanted - set(check_names())
    if unknown:
        raise KeyError(f"unknown check names: {sorted(unknown)}")
    return [k for k in keys if wanted & set(_GROUPS.get(k, (k,)))]


def _run_key(args):
    key, samples = args
    res = _registry(samples)[key]()
    return res if isinstance(res, list) else [res]


def check_scalar_lemmas(samples: int = MIN_SAMPLES) -> List[LemmaCheck]:
    """All one-dimensional and pointwise checks."""
    return run_all(samples, only=[n for n in check_names() if n not in TWO_DIM])


def run_all(samples: int = MIN_SAMPLES, only: Optional[Sequence[str]] = None, jobs: int = 1) -> List[LemmaCheck]:
    """Run the selected checks in a fixed order; ``jobs > 1`` spreads them over processes."""
    tasks = [(k, samples) for k in _select(only)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            groups = list(pool.map(_run_key, tasks))
    else:
        groups = [_run_key(t) for t in tasks]
    out = [c for g in groups for c in g]
    if only:
        wanted = set(only)
        out = [c for c in out if c.lemma_id in wanted]
    return out


def report(checks: Sequence[LemmaCheck]) -> dict:
    failed = [c.lemma_id for c in checks if not c.passed and not c.informational]
    return {"passed": not failed, "failed": failed, "checks": [c.report() for c in checks]}


def write_report(checks: Sequence[LemmaCheck], path) -> dict:
    doc = report(checks)
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return doc
