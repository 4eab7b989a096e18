"""Equilibrium measures: densities, gap points, endpoint limits, certificates.

Representation. On every band (real interval, or circular arc in angle
coordinates) the density is written as

    omega(t) = G(s) / sqrt(1 - s^2),      s = (t - center)/half  in (-1, 1),

with G analytic on the closed band: the inverse-square-root blow-up at the two
band endpoints is explicit and G carries everything else.  Closed-form
densities store G symbolically and also as a Chebyshev expansion; the
collocation oracle produces the Chebyshev coefficients directly.

Log potentials. With G = sum_p c_p T_p(s), every integral of the form
int G(s)/sqrt(1-s^2) * log|x - t(s)| ds reduces to the classical integrals

    int T_p(s) log|sigma - s| / sqrt(1-s^2) ds
        = -pi log 2                     (p = 0, |sigma| <= 1)
        = -pi T_p(sigma)/p              (p >= 1, |sigma| <= 1)
        =  pi log(|zeta|/2)             (p = 0, |sigma| > 1)
        = -pi / (p zeta^p)              (p >= 1, |sigma| > 1)

where zeta is the exterior inverse Joukowski image of sigma.  On the line the
kernel is exactly log(half * |sigma - s|), so potentials are closed-form; on
the circle the kernel log|e^{i a} - e^{i b}| = log|a - b| + log|sinc((a-b)/2)|
leaves an analytic correction that plain Gauss-Chebyshev quadrature handles.

Certificates. Every constructed density is checked two ways: total mass 1 (by
independent cosine-substitution quadrature) and constancy of the log potential
over interior probes (Frostman property).  A density object that fails either
check is not returned; the builders raise instead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from numpy.polynomial import chebyshev as _cheb

from .config import DEFAULT_TOL, Tolerances
from .errors import DomainError, InvalidArgumentError, NumericFailureError
from .numerics import find_root_bracketed, gauss_chebyshev, gauss_legendre
from .sets import (
    ArcUnion,
    Circle,
    IntervalUnion,
    Lemniscate,
    SetLike,
    wrap_angle,
)

__all__ = [
    "EndpointData",
    "EquilibriumDensity",
    "arc_density",
    "circle_density",
    "collocation_density",
    "density_arc",
    "density_circle",
    "density_intervals",
    "density_lemniscate",
    "frostman_check",
    "frostman_profile",
    "interval_density",
    "lemniscate_density",
    "omega_limit",
    "omega_limit_arc",
    "omega_limit_extrapolated",
    "solve_xi",
]


# ---------------------------------------------------------------------------
# quadrature helpers
# ---------------------------------------------------------------------------

def _sqrt_weight_integral(
    g: Callable[[np.ndarray], np.ndarray],
    lo: float,
    hi: float,
    tol: Tolerances = DEFAULT_TOL,
) -> float:
    """int_lo^hi g(u)/sqrt((u-lo)(hi-u)) du for analytic g.

    Cosine substitution u = c + r cos(s) turns this into int_0^pi g ds; the
    mapped abscissae are built from sin so that symmetric sets cancel odd
    integrands exactly in floating point.  Gauss-Legendre doubling from 64
    points until the value moves by less than quad_rel.
    """
    c = 0.5 * (lo + hi)
    r = 0.5 * (hi - lo)
    n = tol.quad_initial_points
    prev = None
    while n <= tol.quad_max_points:
        rule = gauss_legendre(n)
        u = c - r * np.sin(0.5 * np.pi * rule.nodes)
        val = 0.5 * np.pi * float(rule.weights @ np.asarray(g(u), dtype=float))
        if prev is not None and abs(val - prev) < tol.quad_rel * max(1.0, abs(val)):
            return val
        prev = val
        n *= 2
    raise NumericFailureError("singular band quadrature did not converge")


def _cheb_log_integrals(sigma: float, pmax: int) -> np.ndarray:
    """I_p = int T_p(s) log|sigma - s| / sqrt(1-s^2) ds for p = 0..pmax."""
    out = np.empty(pmax + 1)
    p = np.arange(1, pmax + 1, dtype=float)
    if abs(sigma) <= 1.0:
        out[0] = -math.pi * math.log(2.0)
        if pmax >= 1:
            theta = math.acos(min(1.0, max(-1.0, sigma)))
            out[1:] = -math.pi * np.cos(p * theta) / p
    else:
        zeta = math.copysign(abs(sigma) + math.sqrt(sigma * sigma - 1.0), sigma)
        out[0] = math.pi * math.log(0.5 * abs(zeta))
        if pmax >= 1:
            out[1:] = -math.pi * (1.0 / zeta) ** p / p
    return out


def _cheb_coeffs_of(g: Callable[[np.ndarray], np.ndarray], tol: Tolerances) -> np.ndarray:
    """Chebyshev expansion of an analytic function, degree doubled until the
    tail is at machine level (relative 1e-13)."""
    deg = tol.band_expansion_degree
    while True:
        coeffs = _cheb.chebinterpolate(g, deg)
        scale = float(np.max(np.abs(coeffs)))
        if scale == 0.0:
            return coeffs
        if float(np.max(np.abs(coeffs[-4:]))) <= 1e-13 * scale or deg >= 8 * tol.band_expansion_degree:
            return coeffs
        deg *= 2


# ---------------------------------------------------------------------------
# data types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EndpointData:
    """Endpoint limit Omega_j = lim sqrt(dist) * density along the set."""

    index: int              # 1-based endpoint index
    omega_limit: float
    band: int               # 0-based band/arc the limit is taken from
    side: str               # 'left' | 'right'

    def __post_init__(self):
        if not (np.isfinite(self.omega_limit) and self.omega_limit > 0):
            raise NumericFailureError("endpoint limit must be finite and positive")
        if self.side not in ("left", "right"):
            raise InvalidArgumentError("side must be 'left' or 'right'")


@dataclass(frozen=True)
class _Band:
    center: float
    half: float
    coeffs: np.ndarray          # Chebyshev coefficients of the regular part G


@dataclass(frozen=True)
class EquilibriumDensity:
    """Equilibrium density of a set, with its correctness certificates.

    `geometry` is 'line' (interval unions), 'circle' (arc unions, evaluate
    takes an angle), 'constant' (circles) or 'level-set' (lemniscates,
    evaluate takes a complex point).  `xi` is populated only by the
    closed-form interval route.
    """

    set: SetLike
    geometry: str
    xi: tuple[float, ...]
    mass: float
    frostman_spread: float
    method: str
    bands: tuple[_Band, ...] = field(repr=False, default=())
    _eval: Callable = field(repr=False, default=None, compare=False)

    def evaluate(self, point) -> float:
        """Density at a point: real t (line), angle (circle), complex z."""
        return self._eval(point)


# ---------------------------------------------------------------------------
# gap points (interval unions)
# ---------------------------------------------------------------------------

def _gap_weight(e: IntervalUnion, gap: int) -> Callable[[np.ndarray], np.ndarray]:
    """Analytic part of 1/sqrt(prod |u - a_i|) on gap `gap` (0-based): the
    gap's own two bounding endpoints are absorbed by the cosine substitution."""
    skip = {2 * gap + 1, 2 * gap + 2}   # 0-based endpoint indices bounding the gap
    others = [a for i, a in enumerate(e.endpoints) if i not in skip]

    def w(u: np.ndarray) -> np.ndarray:
        den = np.ones_like(u)
        for a in others:
            den = den * np.abs(u - a)
        return 1.0 / np.sqrt(den)

    return w


def solve_xi(e: IntervalUnion, tol: Tolerances = DEFAULT_TOL) -> list[float]:
    """Gap points xi_1 < ... < xi_{m-1}: one in each gap of E.

    The defining conditions (each gap integral of the monic gap polynomial
    against the endpoint weight vanishes) are linear in the polynomial's
    coefficients, so they are assembled as an (m-1)x(m-1) moment system and
    solved directly; the xi are then the bracketed roots of that polynomial,
    one per gap.
    """
    m = e.m
    if m == 1:
        return []
    npoly = m - 1
    moments = np.empty((npoly, npoly + 1))
    for j, (glo, ghi) in enumerate(e.gaps):
        w = _gap_weight(e, j)
        for p in range(npoly + 1):
            moments[j, p] = _sqrt_weight_integral(lambda u, p=p: u**p * w(u), glo, ghi, tol)
    a = moments[:, :npoly]
    rhs = -moments[:, npoly]
    if np.linalg.cond(a) > 1e12:
        raise NumericFailureError("gap moment system is numerically singular")
    coeffs = np.linalg.solve(a, rhs)
    poly = np.concatenate([coeffs, [1.0]])

    xi = []
    for j, (glo, ghi) in enumerate(e.gaps):
        qlo = float(np.polynomial.polynomial.polyval(glo, poly))
        qhi = float(np.polynomial.polynomial.polyval(ghi, poly))
        if qlo == 0.0 or qhi == 0.0 or qlo * qhi > 0:
            raise NumericFailureError(
                f"gap polynomial does not change sign across gap {j + 1}; "
                "root left its gap"
            )
        root = find_root_bracketed(
            lambda u: float(np.polynomial.polynomial.polyval(u, poly)), glo, ghi, tol=tol
        )
        if not glo < root < ghi:
            raise NumericFailureError(f"xi escaped gap {j + 1}")
        xi.append(root)

    # re-verify the defining conditions with the factored polynomial
    diam = max(1.0, e.endpoints[-1] - e.endpoints[0])
    for j, (glo, ghi) in enumerate(e.gaps):
        w = _gap_weight(e, j)

        def integrand(u):
            q = np.ones_like(u)
            for x0 in xi:
                q = q * (u - x0)
            return q * w(u)

        residual = abs(_sqrt_weight_integral(integrand, glo, ghi, tol))
        if residual > tol.xi_gap_residual * diam:
            raise NumericFailureError(
                f"gap condition residual {residual:.3e} in gap {j + 1}"
            )
    return xi


# ---------------------------------------------------------------------------
# pointwise density formulas
# ---------------------------------------------------------------------------

def density_intervals(e: IntervalUnion, xi: Sequence[float], t: float) -> float:
    """Density of an interval union at an interior point."""
    loc = e.locate(t)
    if loc.kind != "interior":
        raise DomainError(f"density needs an interior point, got {loc.kind}")
    num = 1.0
    for x0 in xi:
        num *= abs(t - x0)
    den = 1.0
    for a in e.endpoints:
        den *= abs(t - a)
    return num / (math.pi * math.sqrt(den))


def density_arc(beta: float, t: float) -> float:
    """Density (per arc length) of the arc {e^{is}: |s| <= beta} at angle t."""
    if not 0.0 < beta < math.pi:
        raise InvalidArgumentError("beta must be in (0, pi)")
    if not abs(t) < beta:
        raise DomainError("angle outside the open arc")
    # sin^2(b/2) - sin^2(t/2) = sin((b-t)/2) sin((b+t)/2), cancellation-free
    den = math.sin(0.5 * (beta - t)) * math.sin(0.5 * (beta + t))
    return math.cos(0.5 * t) / (2.0 * math.pi * math.sqrt(den))


def density_circle(c: Circle) -> float:
    return 1.0 / (2.0 * math.pi * c.radius)


def density_lemniscate(lem: Lemniscate, z: complex, tol: Tolerances = DEFAULT_TOL) -> float:
    """Density on |T(z)| = 1 per arc length: |T'(z)| / (2 pi N)."""
    if not lem.on_curve(z, tol.lemniscate_on_curve):
        raise DomainError("point is not on the lemniscate")
    return abs(lem.derivative_value(z)) / (2.0 * math.pi * lem.degree)


# ---------------------------------------------------------------------------
# endpoint limits
# ---------------------------------------------------------------------------

def omega_limit(
    e: IntervalUnion, j: int, xi: Sequence[float] | None = None, tol: Tolerances = DEFAULT_TOL
) -> EndpointData:
    """Closed-form limit of sqrt|t - a_j| * density at endpoint j (1-based)."""
    if xi is None:
        xi = solve_xi(e, tol)
    band, side = e.endpoint_band(j)
    a = e.endpoints[j - 1]
    num = 1.0
    for x0 in xi:
        num *= abs(a - x0)
    den = 1.0
    for i, b in enumerate(e.endpoints):
        if i != j - 1:
            den *= abs(a - b)
    return EndpointData(j, num / (math.pi * math.sqrt(den)), band, side)


def _neville_richardson(values: Sequence[float], ratio: float) -> tuple[float, float]:
    """Eliminate powers d, d^2, ... from f(d_i) with d_{i+1} = d_i / ratio.

    Returns (extrapolated value, error estimate)."""
    col = list(values)
    last_penultimate = col[-1]
    for k in range(1, len(values)):
        rk = ratio**k
        col = [(rk * col[i + 1] - col[i]) / (rk - 1.0) for i in range(len(col) - 1)]
        if len(col) >= 2:
            last_penultimate = col[-1]
    return col[0], abs(col[0] - last_penultimate)


def omega_limit_extrapolated(
    d: EquilibriumDensity, j: int, tol: Tolerances = DEFAULT_TOL
) -> EndpointData:
    """Omega_j from the density alone: Richardson extrapolation of
    sqrt(dist) * omega over distances 1e-2 .. 1e-5 approaching endpoint j.

    Distance is |t - a_j| on the line and chordal |z - A_j| on the circle.
    """
    if d.geometry == "line":
        e: IntervalUnion = d.set
        band, side = e.endpoint_band(j)
        lo, hi = e.bands[band]
        a = e.endpoints[j - 1]
        length = hi - lo
        dists = np.asarray(tol.extrapolation_chords)
        if dists[0] >= 0.25 * length:
            dists = dists * (0.25 * length / dists[0])
        fvals = []
        for dist in dists:
            t = a + dist if side == "left" else a - dist
            fvals.append(math.sqrt(dist) * d.evaluate(t))
    elif d.geometry == "circle":
        arcs: ArcUnion = d.set
        band, side = arcs.endpoint_arc(j)
        lo, hi = arcs.arcs[band]
        alpha = arcs.angles[j - 1]
        length = hi - lo
        dists = np.asarray(tol.extrapolation_chords)
        # chord d corresponds to angular offset 2 asin(d/2)
        if 2.0 * math.asin(0.5 * dists[0]) >= 0.25 * length:
            dists = dists * (0.25 * length / (2.0 * math.asin(0.5 * dists[0])))
        fvals = []
        for dist in dists:
            off = 2.0 * math.asin(0.5 * dist)
            theta = alpha + off if side == "left" else alpha - off
            fvals.append(math.sqrt(dist) * d.evaluate(theta))
    else:
        raise InvalidArgumentError("endpoint limits need a line or circle density")
    value, err = _neville_richardson(fvals, 10.0)
    if not err < tol.omega_extrapolation:
        raise NumericFailureError(
            f"endpoint extrapolation not converging (error estimate {err:.2e})"
        )
    return EndpointData(j, value, band, side)


def omega_limit_arc(
    a: ArcUnion,
    j: int,
    density: EquilibriumDensity | None = None,
    tol: Tolerances = DEFAULT_TOL,
) -> EndpointData:
    """Omega_j on an arc union (chordal normalization)."""
    if density is None:
        density = arc_density(a, tol)
    return omega_limit_extrapolated(density, j, tol)


# ---------------------------------------------------------------------------
# density builders
# ---------------------------------------------------------------------------

def _interval_regular(e: IntervalUnion, xi: Sequence[float], k: int) -> Callable:
    lo, hi = e.bands[k]
    c, r = 0.5 * (lo + hi), 0.5 * (hi - lo)
    others = [a for i, a in enumerate(e.endpoints) if i not in (2 * k, 2 * k + 1)]

    def g(s):
        t = c + r * np.asarray(s, dtype=float)
        num = np.ones_like(t)
        for x0 in xi:
            num = num * np.abs(t - x0)
        den = np.ones_like(t)
        for a in others:
            den = den * np.abs(t - a)
        return num / (math.pi * r * np.sqrt(den))

    return g


def _band_mass(bands: tuple[_Band, ...], band_geometry: tuple, tol: Tolerances) -> float:
    """Total mass by independent cosine-substitution quadrature per band."""
    total = 0.0
    for b, (lo, hi) in zip(bands, band_geometry):
        def g(u, b=b):
            s = (u - b.center) / b.half
            return b.half * _cheb.chebval(s, b.coeffs)

        total += _sqrt_weight_integral(g, lo, hi, tol)
    return total


def _potential_line(bands: tuple[_Band, ...], x: float) -> float:
    u = 0.0
    for b in bands:
        sigma = (x - b.center) / b.half
        integrals = _cheb_log_integrals(sigma, b.coeffs.size - 1)
        u -= b.half * (
            math.log(b.half) * math.pi * b.coeffs[0] + float(integrals @ b.coeffs)
        )
    return u


_ARC_QUAD_POINTS = 256


def _potential_circle(bands: tuple[_Band, ...], theta: float) -> float:
    rule = gauss_chebyshev(_ARC_QUAD_POINTS)
    s_nodes = rule.nodes
    wq = math.pi / _ARC_QUAD_POINTS
    u = 0.0
    for b in bands:
        sigma = (theta - b.center) / b.half
        g_nodes = _cheb.chebval(s_nodes, b.coeffs)
        delta = theta - (b.center + b.half * s_nodes)
        if abs(sigma) <= 1.0 + 1e-12:
            integrals = _cheb_log_integrals(sigma, b.coeffs.size - 1)
            main = math.log(b.half) * math.pi * b.coeffs[0] + float(integrals @ b.coeffs)
            corr = wq * float(np.sum(g_nodes * np.log(np.abs(np.sinc(delta / (2.0 * math.pi))))))
            u -= b.half * (main + corr)
        else:
            kern = np.log(2.0 * np.abs(np.sin(0.5 * delta)))
            u -= b.half * wq * float(np.sum(g_nodes * kern))
    return u


def frostman_profile(
    d: EquilibriumDensity, probes: int = DEFAULT_TOL.frostman_probes_per_band, tol: Tolerances = DEFAULT_TOL
) -> tuple[np.ndarray, np.ndarray]:
    """Log potential U(x) = int log(1/|x-t|) dmu(t) on interior probe points."""
    if probes < 3:
        raise InvalidArgumentError("need at least 3 probes per band")
    if d.geometry == "line":
        geometry = d.set.bands
        potential = _potential_line
    elif d.geometry == "circle":
        geometry = d.set.arcs
        potential = _potential_circle
    else:
        raise InvalidArgumentError("Frostman probing needs a line or circle density")
    points = []
    for lo, hi in geometry:
        buf = tol.frostman_buffer_rel * (hi - lo)
        points.append(np.linspace(lo + buf, hi - buf, probes))
    points = np.concatenate(points)
    values = np.array([potential(d.bands, float(p)) for p in points])
    return points, values


def frostman_check(
    d: EquilibriumDensity, probes: int = DEFAULT_TOL.frostman_probes_per_band, tol: Tolerances = DEFAULT_TOL
) -> float:
    """Max - min of the log potential over probe points (ideally 0)."""
    _, values = frostman_profile(d, probes, tol)
    return float(np.max(values) - np.min(values))


def interval_density(
    e: IntervalUnion,
    tol: Tolerances = DEFAULT_TOL,
    xi_override: Sequence[float] | None = None,
    validate: bool = True,
) -> EquilibriumDensity:
    """Closed-form density of an interval union (the xi route).

    xi_override exists for negative controls (deliberately wrong gap points);
    with validate=False the certificates are still computed and stored but not
    enforced.
    """
    xi = list(xi_override) if xi_override is not None else solve_xi(e, tol)
    if len(xi) != e.m - 1:
        raise InvalidArgumentError("xi count must be m - 1")
    bands = []
    for k, (lo, hi) in enumerate(e.bands):
        g = _interval_regular(e, xi, k)
        coeffs = _cheb_coeffs_of(g, tol)
        bands.append(_Band(0.5 * (lo + hi), 0.5 * (hi - lo), coeffs))
    bands = tuple(bands)

    def evaluate(t: float) -> float:
        return density_intervals(e, xi, t)

    mass = _band_mass(bands, e.bands, tol)
    density = EquilibriumDensity(
        set=e, geometry="line", xi=tuple(xi), mass=mass,
        frostman_spread=math.nan, method="closed-form", bands=bands, _eval=evaluate,
    )
    spread = frostman_check(density, tol=tol)
    density = EquilibriumDensity(
        set=e, geometry="line", xi=tuple(xi), mass=mass,
        frostman_spread=spread, method="closed-form", bands=bands, _eval=evaluate,
    )
    if validate:
        _validate_density(density, tol)
        for (glo, ghi), x0 in zip(e.gaps, xi):
            if not glo < x0 < ghi:
                raise NumericFailureError("a gap point lies outside its gap")
    return density


def _validate_density(d: EquilibriumDensity, tol: Tolerances) -> None:
    if abs(d.mass - 1.0) > tol.mass_tol:
        raise NumericFailureError(f"density mass {d.mass!r} is not 1 within {tol.mass_tol}")
    if not d.frostman_spread <= tol.frostman_spread:
        raise NumericFailureError(
            f"log potential not constant: spread {d.frostman_spread:.3e}"
        )


def arc_density(a: ArcUnion, tol: Tolerances = DEFAULT_TOL) -> EquilibriumDensity:
    """Density of an arc union: closed form for one arc, collocation otherwise."""
    if a.m > 1:
        return collocation_density(a, tol)
    lo, hi = a.arcs[0]
    center = 0.5 * (lo + hi)
    beta = 0.5 * (hi - lo)

    def g(s):
        s = np.asarray(s, dtype=float)
        h1 = 0.5 * beta * np.sinc(beta * (1.0 - s) / (2.0 * math.pi))
        h2 = 0.5 * beta * np.sinc(beta * (1.0 + s) / (2.0 * math.pi))
        return np.cos(0.5 * beta * s) / (2.0 * math.pi * np.sqrt(h1 * h2))

    coeffs = _cheb_coeffs_of(g, tol)
    bands = (_Band(center, beta, coeffs),)

    def evaluate(theta: float) -> float:
        t = wrap_angle(theta - center)
        return density_arc(beta, t)

    mass = _band_mass(bands, a.arcs, tol)
    density = EquilibriumDensity(
        set=a, geometry="circle", xi=(), mass=mass,
        frostman_spread=math.nan, method="closed-form", bands=bands, _eval=evaluate,
    )
    spread = frostman_check(density, tol=tol)
    density = EquilibriumDensity(
        set=a, geometry="circle", xi=(), mass=mass,
        frostman_spread=spread, method="closed-form", bands=bands, _eval=evaluate,
    )
    _validate_density(density, tol)
    return density


def circle_density(c: Circle) -> EquilibriumDensity:
    """Uniform density on a circle; potential constancy holds by symmetry."""
    value = density_circle(c)

    def evaluate(z) -> float:
        if not c.on_curve(complex(z)):
            raise DomainError("point is not on the circle")
        return value

    return EquilibriumDensity(
        set=c, geometry="constant", xi=(), mass=1.0, frostman_spread=0.0,
        method="closed-form", bands=(), _eval=evaluate,
    )


def lemniscate_density(lem: Lemniscate, tol: Tolerances = DEFAULT_TOL) -> EquilibriumDensity:
    """Density on |T(z)| = 1; the potential is -log|T|/N + const, constant on
    the curve by construction, so no numeric Frostman check is run."""

    def evaluate(z) -> float:
        return density_lemniscate(lem, complex(z), tol)

    return EquilibriumDensity(
        set=lem, geometry="level-set", xi=(), mass=1.0, frostman_spread=0.0,
        method="closed-form", bands=(), _eval=evaluate,
    )


# ---------------------------------------------------------------------------
# collocation oracle
# ---------------------------------------------------------------------------

def collocation_density(
    s: IntervalUnion | ArcUnion,
    tol: Tolerances = DEFAULT_TOL,
    degree: int | None = None,
) -> EquilibriumDensity:
    """Independent equilibrium solver: no gap points, no density formulas.

    Unknowns are the Chebyshev coefficients of the regular part on every band
    plus the (unknown) constant value of the potential; equations are
    potential constancy at interior Chebyshev collocation points and total
    mass 1.  Ill-conditioning triggers one degree doubling, then a hard
    failure.
    """
    if isinstance(s, IntervalUnion):
        geometry = "line"
        band_spans = s.bands
    elif isinstance(s, ArcUnion):
        geometry = "circle"
        band_spans = s.arcs
    else:
        raise InvalidArgumentError("collocation needs an interval or arc union")
    if len(band_spans) > 8:
        raise InvalidArgumentError("collocation limited to 8 bands")

    n = degree if degree is not None else tol.collocation_degree
    attempt_degrees = [n] if degree is not None else [n, 2 * n]
    last_cond = math.inf
    for deg in attempt_degrees:
        matrix, rhs, cond = _collocation_system(band_spans, geometry, deg)
        last_cond = cond
        if cond <= tol.collocation_cond_max:
            break
    else:
        raise NumericFailureError(
            f"collocation matrix ill-conditioned (estimate {last_cond:.2e}); "
            "try larger degree or fewer bands"
        )
    solution = np.linalg.solve(matrix, rhs)

    per = deg + 1
    bands = []
    for k, (lo, hi) in enumerate(band_spans):
        coeffs = solution[k * per : (k + 1) * per].copy()
        bands.append(_Band(0.5 * (lo + hi), 0.5 * (hi - lo), coeffs))
    bands = tuple(bands)

    def evaluate(point: float) -> float:
        t = wrap_angle(point) if geometry == "circle" else point
        for b, (lo, hi) in zip(bands, band_spans):
            if lo < t < hi:
                sig = (t - b.center) / b.half
                return float(_cheb.chebval(sig, b.coeffs) / math.sqrt(1.0 - sig * sig))
        raise DomainError("density evaluation needs an interior point")

    mass = _band_mass(bands, band_spans, tol)
    density = EquilibriumDensity(
        set=s, geometry=geometry, xi=(), mass=mass,
        frostman_spread=math.nan, method="collocation", bands=bands, _eval=evaluate,
    )
    spread = frostman_check(density, tol=tol)
    density = EquilibriumDensity(
        set=s, geometry=geometry, xi=(), mass=mass,
        frostman_spread=spread, method="collocation", bands=bands, _eval=evaluate,
    )
    _validate_density(density, tol)
    return density


def _collocation_system(band_spans, geometry: str, deg: int):
    per = deg + 1
    nbands = len(band_spans)
    size = nbands * per + 1
    matrix = np.zeros((size, size))
    rhs = np.zeros(size)

    centers = [0.5 * (lo + hi) for lo, hi in band_spans]
    halves = [0.5 * (hi - lo) for lo, hi in band_spans]
    # first-kind Chebyshev collocation points per band (strictly interior)
    q = np.arange(per)
    s_colloc = np.cos((2 * q + 1) * np.pi / (2.0 * per))

    if geometry == "circle":
        rule = gauss_chebyshev(_ARC_QUAD_POINTS)
        s_nodes = rule.nodes
        wq = math.pi / _ARC_QUAD_POINTS
        tmat = _cheb.chebvander(s_nodes, deg)          # (M, per)

    row = 0
    for kq in range(nbands):
        points = centers[kq] + halves[kq] * s_colloc
        for x in points:
            for kc in range(nbands):
                colbase = kc * per
                sigma = (x - centers[kc]) / halves[kc]
                if geometry == "line":
                    integrals = _cheb_log_integrals(sigma, deg)
                    contrib = integrals.copy()
                    contrib[0] += math.log(halves[kc]) * math.pi
                    matrix[row, colbase : colbase + per] = -halves[kc] * contrib
                else:
                    delta = x - (centers[kc] + halves[kc] * s_nodes)
                    if kc == kq:
                        integrals = _cheb_log_integrals(sigma, deg)
                        corr = wq * (tmat.T @ np.log(np.abs(np.sinc(delta / (2.0 * math.pi)))))
                        contrib = integrals + corr
                        contrib[0] += math.log(halves[kc]) * math.pi
                        matrix[row, colbase : colbase + per] = -halves[kc] * contrib
                    else:
                        kern = np.log(2.0 * np.abs(np.sin(0.5 * delta)))
                        matrix[row, colbase : colbase + per] = -halves[kc] * wq * (tmat.T @ kern)
            matrix[row, -1] = -1.0      # unknown potential constant
            row += 1
    # mass row: int G_k/sqrt(1-s^2) * half_k ds = pi * half_k * c_{k,0}
    for kc in range(nbands):
        matrix[row, kc * per] = math.pi * halves[kc]
    rhs[row] = 1.0
    cond = float(np.linalg.cond(matrix))
    return matrix, rhs, cond
