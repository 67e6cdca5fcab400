"""The Lobachevsky function and the hyperbolic volume constants built from it."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import bernoulli

_TERMS = 40

# coefficient of theta^(2n+1) in -int_0^theta log(sin t / t) dt
_B = bernoulli(2 * _TERMS)
_COEFFS = np.array([
    2.0 ** (2 * n - 1) * abs(_B[2 * n]) / (n * math.factorial(2 * n) * (2 * n + 1))
    for n in range(1, _TERMS + 1)
])


class AngleSum(ValueError):
    pass


def _check_angle(theta) -> float:
    theta = float(theta)
    if not math.isfinite(theta):
        raise ValueError(f"angle must be finite, got {theta}")
    return theta


def reduce_angle(theta: float) -> float:
    """Representative of ``theta`` modulo pi in ``(-pi/2, pi/2]``."""
    r = math.remainder(theta, math.pi)
    return math.pi / 2 if r == -math.pi / 2 else r


def lobachevsky(theta: float) -> float:
    """``-int_0^theta log|2 sin t| dt``.

    After reduction to ``|theta| <= pi/2`` this is
    ``theta - theta log(2|theta|)`` plus an odd power series with
    Bernoulli-number coefficients, which converges geometrically there.
    """
    t = reduce_angle(_check_angle(theta))
    a = abs(t)
    if a == 0.0 or a == math.pi / 2:
        return 0.0
    powers = a ** np.arange(3, 2 * _TERMS + 2, 2)
    val = a - a * math.log(2 * a) + float(np.dot(_COEFFS, powers))
    return math.copysign(val, t)


@dataclass(frozen=True)
class ConstantsTable:
    V3: float
    Voct: float
    V2: float
    G2: float

    @property
    def two_V3(self) -> float:
        return 2 * self.V3

    def as_dict(self) -> dict:
        return {"V3": self.V3, "2V3": self.two_V3, "Voct": self.Voct, "V2": self.V2, "G2": self.G2}


def truncate(x: float, places: int = 2) -> str:
    """Decimal truncation (not rounding), the way digits are quoted as ``2.02...``."""
    scale = 10 ** places
    return f"{math.floor(x * scale) / scale:.{places}f}"


def constants() -> ConstantsTable:
    """``V3`` regular ideal tetrahedron, ``Voct`` regular ideal octahedron,
    ``V2`` ideal triangle area, and ``G2`` with ``area(F) = G2 * chi(F)``."""
    return ConstantsTable(
        V3=2 * lobachevsky(math.pi / 6),
        Voct=8 * lobachevsky(math.pi / 4),
        V2=math.pi,
        G2=-2 * math.pi,
    )


def ideal_tetrahedron_volume(alpha: float, beta: float, gamma: float, tol: float = 1e-9) -> float:
    angles = [_check_angle(a) for a in (alpha, beta, gamma)]
    if not all(0 < a < math.pi for a in angles):
        raise AngleSum(f"dihedral angles {angles} must lie in (0, pi)")
    if abs(sum(angles) - math.pi) > tol:
        raise AngleSum(f"dihedral angles sum to {sum(angles)}, not pi")
    return sum(lobachevsky(a) for a in angles)
