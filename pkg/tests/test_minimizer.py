import math

import pytest
from hypothesis import given, strategies as st

from ljlattice.epstein import UpperHalfPoint, w_b, zeta_cs
from ljlattice.errors import DomainError, SolverError
from ljlattice.minimizer import (
    SQRT3_2,
    LJParams,
    Thresholds,
    asymptotic_y,
    b1_5_value,
    betermin_A_to_b,
    bisect_secant,
    brute_minimize,
    classify,
    compute_thresholds,
    energy_gap,
    lj_energy,
    ratio_H,
    ratio_X,
    solve_halfline_branch,
    solve_y_b,
)


@pytest.fixture(scope="module")
def th():
    return compute_thresholds()


def test_thresholds_ordered(th):
    order = [th.b0, th.b1, th.b1_5, th.b2, th.b_arc, th.b3]
    assert order == sorted(order)
    assert 0.5 < th.y_b1 < th.y0 < SQRT3_2
    with pytest.raises(SolverError):
        Thresholds(3, 2, 3, 4, 5, 6, 1.3, 0.6, 0.7)


def test_bisect_secant_basic():
    root, res, it = bisect_secant(lambda x: x * x - 2, 0, 2, ftol=1e-14)
    assert root == pytest.approx(math.sqrt(2), rel=1e-13)
    with pytest.raises(SolverError):
        bisect_secant(lambda x: x * x + 1, -1, 1)


@given(st.floats(1.05, 3.0))
def test_ratio_X_inversion_symmetry(y):
    assert ratio_X(1 / y) == pytest.approx(ratio_X(y), rel=1e-9)


@given(st.floats(0.3, 0.83), st.sampled_from([3, 6]))
def test_halfline_inversion_symmetry(y, s):
    # 1/2 + iy and 1/2 + i/(4y) span the same lattice up to rotation and scale
    a = zeta_cs(s, UpperHalfPoint(0.5, y))
    assert zeta_cs(s, UpperHalfPoint(0.5, 1 / (4 * y))) == pytest.approx(a, rel=1e-10)


def test_ratio_limits_are_continuous(th):
    for h in (2e-4, 1e-4 - 1e-9, 5e-5):
        assert ratio_X(1 + h) == pytest.approx(th.b3, rel=1e-3)
        assert ratio_H(0.5 + h) == pytest.approx(th.b2, rel=1e-3)
        assert ratio_H(SQRT3_2 - h) == pytest.approx(th.b_arc, rel=1e-3)
    # guard band edges: value on both sides agree closely
    assert ratio_X(1 + 1e-4 - 1e-12) == pytest.approx(ratio_X(1 + 1e-4 + 1e-12), rel=1e-7)


def test_X_increasing_above_one():
    ys = [1.01, 1.2, 1.5, 2.0, 3.0, 5.0]
    vals = [ratio_X(y) for y in ys]
    assert vals == sorted(vals)


def test_H_has_interior_minimum(th):
    assert ratio_H(th.y0) == pytest.approx(th.b0, rel=1e-12)
    assert ratio_H(th.y0 - 0.01) > th.b0 and ratio_H(th.y0 + 0.01) > th.b0


def test_rectangular_branch_monotone_and_asymptotic():
    ys = [solve_y_b(b).solution for b in (4.5, 10, 100, 1e4)]
    assert ys == sorted(ys)
    assert solve_y_b(1e8).solution == pytest.approx(asymptotic_y(1e8), rel=1e-6)


def test_rhombic_branch_monotone(th):
    bs = [th.b1 + 1e-4, 2.96, 2.97, 2.98, th.b2 - 1e-4]
    ys = [solve_halfline_branch(b).solution for b in bs]
    assert ys == sorted(ys, reverse=True)


def test_branch_solvers_reject_out_of_range(th):
    with pytest.raises(DomainError):
        solve_y_b(th.b3 - 0.1)
    with pytest.raises(DomainError):
        solve_halfline_branch(th.b2 + 0.01)


def test_energy_gap_changes_sign_at_b1(th):
    assert energy_gap(th.b1) == pytest.approx(0.0, abs=1e-10)
    assert energy_gap(th.b1 - 1e-3) > 0 > energy_gap(th.b1 + 1e-3)


def test_b1_5_is_energy_tie_of_endpoints():
    b = b1_5_value()
    assert w_b(6, 3, b, UpperHalfPoint(0.5, 0.5)) == pytest.approx(w_b(6, 3, b, UpperHalfPoint(0.5, SQRT3_2)),
                                                                   rel=1e-12)


@pytest.mark.parametrize(
    "b, tag",
    [(0.0, "Hexagonal"), (2.9, "Hexagonal"), (2.95, "Rhombic"), (2.98, "Rhombic"), (3.0, "Square"),
     (4.0, "Square"), (4.1, "Rectangular"), (200.0, "Rectangular")],
)
def test_classify_tags(b, tag, th):
    assert classify(b, th).tag == tag


def test_classify_degenerate_pair(th):
    p = classify(th.b1, th)
    assert p.tag == "DegeneratePair"
    assert len(p.minimizers) == 2
    assert p.theta == pytest.approx(th.theta_b1)


def test_classification_continuous_at_b2_and_b3(th):
    near = classify(th.b2 - 1e-7, th).minimizers[0]
    assert abs(near.z - 1j) < 1e-2
    rect = classify(th.b3 + 1e-6, th).minimizers[0]
    assert abs(rect.y - 1.0) < 1e-2


def test_classification_jumps_at_b1(th):
    before = classify(th.b1 - 1e-6, th).minimizers[0]
    after = classify(th.b1 + 1e-6, th).minimizers[0]
    assert abs(before.z - after.z) > 0.1


@pytest.mark.parametrize("b", [1.0, 2.97, 3.5, 8.0])
def test_brute_force_agrees_with_classify(b, th):
    z, _ = brute_minimize(6, 3, b)
    expected = classify(b, th).minimizers[0]
    assert abs(z.z - expected.z) < 1e-5


def test_brute_force_general_exponents_prefers_hexagon_at_zero():
    z, _ = brute_minimize(5, 2, 0.0)
    assert abs(z.z - complex(0.5, SQRT3_2)) < 1e-5
    with pytest.raises(DomainError):
        brute_minimize(3, 6, 1.0)


def test_lj_params_and_energy():
    p = LJParams(epsilon=1.0, sigma=1.1)
    assert p.b == pytest.approx(1.1**-6)
    z = UpperHalfPoint(0.5, SQRT3_2)
    assert lj_energy(p, z) == pytest.approx(2 * 1.1**12 * w_b(6, 3, p.b, z))
    with pytest.raises(DomainError):
        LJParams(epsilon=-1, sigma=1)


def test_betermin_map():
    assert betermin_A_to_b(1.0) == 2.0
    assert classify(betermin_A_to_b(1.2)).tag == "Square"
    with pytest.raises(DomainError):
        betermin_A_to_b(0.0)
