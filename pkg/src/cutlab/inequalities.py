"""Norm and volume bounds from Euler characteristics of guts and surfaces."""

from __future__ import annotations

from dataclasses import dataclass, field

from .hyperbolic import constants

DEFAULT_TOL = 1e-9


class MissingVolume(ValueError):
    pass


class UnsupportedDimension(ValueError):
    pass


def surface_norm(chis) -> float:
    """Simplicial volume of a surface from the Euler characteristics of its
    components: ``-2 chi`` for hyperbolic pieces, zero otherwise."""
    total = 0
    for chi in chis:
        if int(chi) != chi or chi > 2:
            raise ValueError(f"invalid Euler characteristic {chi}")
        if chi < 0:
            total += -2 * chi
    return float(total)


@dataclass(frozen=True)
class GutsData:
    chi_guts: int
    polyhedron_faces: int | None = None

    def __post_init__(self):
        if int(self.chi_guts) != self.chi_guts or self.chi_guts > 0:
            raise ValueError(f"chi(guts) must be a non-positive integer, got {self.chi_guts}")
        if self.polyhedron_faces is not None and self.polyhedron_faces < 4:
            raise ValueError("a polyhedron has at least 4 faces")


def guts_bounds(g: GutsData) -> dict:
    """Lower bounds for the simplicial norm (and, via polyhedra, the volume).

    All values are magnitudes of ``>=`` bounds.
    """
    c = constants()
    chi = g.chi_guts
    out = {
        "norm_simplex": float(-chi),
        "norm_polyhedron": None,
        "volume_2V3": -2 * c.V3 * chi,
        "volume_octahedron": -c.Voct * chi,
    }
    if g.polyhedron_faces is not None:
        out["norm_polyhedron"] = -2 * chi / (g.polyhedron_faces - 2)
    return {k: (v + 0.0 if v is not None else None) for k, v in out.items()}


@dataclass(frozen=True)
class ManifoldData:
    dimension: int = 3
    volume: float | None = None
    simplicial_norm: float | None = None

    def __post_init__(self):
        if self.dimension < 2:
            raise ValueError("dimension must be at least 2")


REASON_NONEMPTY_GUTS = "volume-below-2V3"
REASON_NO_TIGHT = "volume-below-2V3-and-empty-guts-excluded"


@dataclass(frozen=True)
class ObstructionReport:
    verdict: str  # "Obstructed" | "NotObstructed"
    reasons: tuple[str, ...]
    numbers: dict = field(default_factory=dict)
    conclusion: str = ""

    @property
    def obstructed(self) -> bool:
        return self.verdict == "Obstructed"


def tight_obstruction(
    m: ManifoldData,
    empty_guts_excluded: bool = False,
    tol: float = DEFAULT_TOL,
) -> ObstructionReport:
    """Volume test against ``2 V3``.

    A tight essential lamination with nonempty guts forces
    ``vol >= 2 V3``, so a strictly smaller volume rules it out.  If the caller
    also knows that laminations with empty guts are impossible in ``M``, the
    conclusion becomes that ``M`` has no tight essential lamination at all.
    """
    if m.dimension != 3:
        raise UnsupportedDimension("the tight-lamination volume test is three-dimensional")
    volume = m.volume
    if volume is None and m.simplicial_norm is not None:
        volume = constants().V3 * m.simplicial_norm
    if volume is None:
        raise MissingVolume("volume (or simplicial norm) is required")
    threshold = constants().two_V3
    margin = threshold - volume
    numbers = {"volume": volume, "threshold_2V3": threshold, "margin": margin, "tolerance": tol}
    if margin > tol:
        if empty_guts_excluded:
            return ObstructionReport(
                "Obstructed", (REASON_NONEMPTY_GUTS, REASON_NO_TIGHT), numbers,
                "no tight essential lamination",
            )
        return ObstructionReport(
            "Obstructed", (REASON_NONEMPTY_GUTS,), numbers,
            "no tight essential lamination with nonempty guts",
        )
    return ObstructionReport("NotObstructed", (), numbers, "volume does not rule out tight laminations")


def hypersurface_bounds(
    m: ManifoldData,
    surface_chi: int | None = None,
    V_n: float | None = None,
    V_n1: float | None = None,
    G_n1: float | None = None,
) -> dict:
    """Upper bound ``(n+1)/2 ||M||`` for the norm of an embedded hypersurface,
    and the volume lower bound ``C_n chi(F)`` with
    ``C_n = 2/(n+1) * V_n / V_(n-1) * G_(n-1)``.

    The constants are built in for ``n = 3``; other dimensions need all three
    supplied.
    """
    n = m.dimension
    if m.simplicial_norm is None and m.volume is None:
        raise ValueError("simplicial norm or volume is required")
    if n == 3 and V_n is None and V_n1 is None and G_n1 is None:
        c = constants()
        V_n, V_n1, G_n1 = c.V3, c.V2, c.G2
    elif None in (V_n, V_n1, G_n1):
        raise UnsupportedDimension(f"constants for n={n} must be supplied (V_n, V_(n-1), G_(n-1))")
    norm = m.simplicial_norm
    if norm is None:
        norm = m.volume / V_n
    Cn = 2 / (n + 1) * V_n / V_n1 * G_n1
    out = {"norm_bound": (n + 1) / 2 * norm, f"C{n}": Cn, "volume_bound": None, "volume_ok": None}
    if surface_chi is not None:
        bound = Cn * surface_chi
        out["volume_bound"] = bound
        if m.volume is not None:
            out["volume_ok"] = m.volume >= bound
    return out
