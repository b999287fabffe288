"""Reduction to the fundamental domain of the group generated by
``z -> z+1``, ``z -> -1/z`` and ``z -> -conj(z)``.

The closed fundamental domain is ``|z| >= 1, 0 <= x <= 1/2``.  Its two boundary
pieces that matter for lattice minimization are the imaginary half-axis above
``i`` (``gamma_a``) and the unit arc from ``i`` to ``e^{i pi/3}`` (``gamma_b``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Tuple

from .epstein import UpperHalfPoint, _as_point
from .errors import DomainError, LatticeError

BOUNDARY_TOL = 1e-12
CORNER_TOL = 1e-9
MAX_STEPS = 200

HEX = complex(0.5, math.sqrt(3.0) / 2.0)
SQUARE = 1j

REGION_TAGS = ("interior", "gamma_a", "gamma_b", "corner_i", "corner_hex", "other_boundary")

_OPS = {
    "T": lambda z: z + 1,
    "Tinv": lambda z: z - 1,
    "S": lambda z: -1 / z,
    "R": lambda z: -z.conjugate(),
}
# every generator here is an involution except T, whose inverse is Tinv
_INVERSE = {"T": "Tinv", "Tinv": "T", "S": "S", "R": "R"}


@dataclass(frozen=True)
class GeneratorWord:
    """Generators to apply, left to right, to a reduced point to recover the input."""

    tags: Tuple[str, ...] = ()

    def __post_init__(self):
        bad = [t for t in self.tags if t not in _OPS]
        if bad:
            raise DomainError(f"unknown generator tags {bad}")

    def apply(self, z) -> complex:
        w = _as_point(z).z if not isinstance(z, complex) else z
        for t in self.tags:
            w = _OPS[t](w)
        return w

    def inverse(self) -> "GeneratorWord":
        return GeneratorWord(tuple(_INVERSE[t] for t in reversed(self.tags)))

    @property
    def is_identity(self) -> bool:
        return not self.tags

    def __len__(self):
        return len(self.tags)


@dataclass(frozen=True)
class FundamentalDomainPosition:
    point: UpperHalfPoint
    region_tag: str

    def __post_init__(self):
        if self.region_tag not in REGION_TAGS:
            raise DomainError(f"unknown region tag {self.region_tag!r}")


def region_of(z) -> str:
    """Tag a point already in the closed fundamental domain."""
    z = _as_point(z)
    w = z.z
    if abs(w - SQUARE) <= CORNER_TOL:
        return "corner_i"
    if abs(w - HEX) <= CORNER_TOL:
        return "corner_hex"
    r = abs(w)
    on_axis = abs(z.x) <= BOUNDARY_TOL
    on_circle = abs(r - 1.0) <= BOUNDARY_TOL
    if on_axis and z.y >= 1.0 - BOUNDARY_TOL:
        return "gamma_a"
    if on_circle and math.sqrt(3.0) / 2.0 - BOUNDARY_TOL <= z.y <= 1.0 + BOUNDARY_TOL:
        return "gamma_b"
    if abs(z.x - 0.5) <= BOUNDARY_TOL:
        return "other_boundary"
    if r > 1.0 and 0.0 < z.x < 0.5:
        return "interior"
    raise DomainError(f"{z} is not in the closed fundamental domain; call reduce() first")


def in_closed_domain(z, tol: float = BOUNDARY_TOL) -> bool:
    z = _as_point(z)
    return abs(z.z) >= 1.0 - tol and -tol <= z.x <= 0.5 + tol


def reduce(z) -> tuple[FundamentalDomainPosition, GeneratorWord]:
    """Map ``z`` into the closed fundamental domain.

    Returns the reduced position and a word w with ``w.apply(reduced) == z``.
    """
    p = _as_point(z)
    w = p.z
    applied: list[str] = []  # generators applied to the input, in order
    for _ in range(MAX_STEPS):
        # shift x into (-1/2, 1/2] so points on x = 1/2 stay put
        shift = math.ceil(w.real - 0.5)
        if shift:
            w -= shift
            applied.extend(["Tinv" if shift > 0 else "T"] * abs(shift))
        if abs(w) < 1.0 - BOUNDARY_TOL:
            w = -1 / w
            applied.append("S")
            continue
        break
    else:
        raise LatticeError(f"reduction of {p} did not terminate in {MAX_STEPS} steps")
    if w.real < 0:
        w = -w.conjugate()
        applied.append("R")
    # snap float noise on the boundary; keeps region tags stable
    x, y = w.real, w.imag
    if abs(x) <= BOUNDARY_TOL:
        x = 0.0
    reduced = UpperHalfPoint(x, y)
    word = GeneratorWord(tuple(applied)).inverse()
    return FundamentalDomainPosition(reduced, region_of(reduced)), word


def arc_to_halfline(u: float) -> float:
    """Image height of ``u + i sqrt(1-u^2)`` on the line ``x = 1/2``.

    The map preserves every Epstein zeta value.
    """
    if not 0.0 <= u <= 0.5:
        raise DomainError(f"arc parameter u must lie in [0, 1/2], got {u}")
    return 0.5 * math.sqrt((1.0 + u) / (1.0 - u))


def halfline_to_arc(y_half: float) -> float:
    """Inverse of :func:`arc_to_halfline`: returns u."""
    if not 0.5 - 1e-15 <= y_half <= math.sqrt(3.0) / 2.0 + 1e-15:
        raise DomainError(f"half-line height must lie in [1/2, sqrt(3)/2], got {y_half}")
    q = 4.0 * y_half * y_half
    return min(max((q - 1.0) / (q + 1.0), 0.0), 0.5)


def halfline_to_angle(y_half: float) -> float:
    """Angle theta of the arc point ``e^{i theta}`` matching ``1/2 + i y_half``."""
    return math.acos(halfline_to_arc(y_half))


def angle_to_halfline(theta: float) -> float:
    if not math.pi / 3 - 1e-15 <= theta <= math.pi / 2 + 1e-15:
        raise DomainError(f"theta must lie in [pi/3, pi/2], got {theta}")
    return arc_to_halfline(min(max(math.cos(theta), 0.0), 0.5))
