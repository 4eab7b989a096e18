"""Brute-force extremal constants: LP sup-norm problems and L2 eigenproblems.

Nothing here uses the closed-form factors.  Sup-norm extremal problems are
solved as semi-infinite linear programs with cutting-plane refinement: start
from Chebyshev-spaced constraint grids, solve, then keep adding every local
maximum of |P| that pokes above 1 on a ten-times-finer grid until the norm is
certified to 1 + 1e-6.  The reported value therefore brackets the true
extremum within that slack from above.  L2 problems become generalized
eigenproblems for the pencil (A, B) of derivative and plain Gram matrices
assembled with per-band Gauss-Jacobi rules that absorb the weight's endpoint
exponents exactly; the pencil is solved from row factors of A and B so basis
conditioning enters only through its square root.

verify_inequality is the falsification harness: it throws seeded random
polynomials at every non-asymptotic inequality in the catalog and reports any
ratio that exceeds 1 beyond floating-point slack.  Norms are computed on dense
grids and then polished by local optimization so that an undersampled norm can
never manufacture a spurious violation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from numpy.polynomial import chebyshev as _cheb
from scipy.linalg import solve_triangular
from scipy.optimize import minimize_scalar

from .config import DEFAULT_TOL, Tolerances
from .equilibrium import arc_density, interval_density, solve_xi
from .errors import (
    DomainError,
    InvalidArgumentError,
    NumericFailureError,
    ResourceLimitError,
)
from .factors import Weight, va_markov_exact, videnskii_pointwise, videnskii_markov
from .numerics import golub_welsch, jacobi_recurrence, simplex_solve
from .sets import IntervalUnion, PeriodicSet, gamma_of

__all__ = [
    "BASIS_KINDS",
    "ExtremalResult",
    "L2_MODES",
    "PolyBasis",
    "VERIFY_INEQUALITIES",
    "VerifyReport",
    "VidenskiiReport",
    "l2_ratio_numeric",
    "markov_constant_numeric",
    "pointwise_derivative_sup",
    "verify_inequality",
    "videnskii_check",
]

BASIS_KINDS = ("algebraic-chebyshev", "trigonometric")
L2_MODES = ("markov", "gradient-bernstein", "omega-bernstein")


@dataclass(frozen=True)
class PolyBasis:
    """Evaluation basis for the LP problems.

    algebraic-chebyshev: T_0..T_n of the reference interval (conditioning is
    what the reference interval is for; span is all polynomials of degree n).
    trigonometric: 1, cos t, sin t, ..., cos nt, sin nt.
    """

    kind: str
    degree: int
    reference: tuple[float, float] = (-1.0, 1.0)

    def __post_init__(self):
        if self.kind not in BASIS_KINDS:
            raise InvalidArgumentError(f"unknown basis kind {self.kind!r}")
        if not (isinstance(self.degree, int) and self.degree >= 1):
            raise InvalidArgumentError("degree must be a positive integer")
        lo, hi = self.reference
        if not (np.isfinite(lo) and np.isfinite(hi) and lo < hi):
            raise InvalidArgumentError("bad reference interval")

    @property
    def dim(self) -> int:
        return self.degree + 1 if self.kind == "algebraic-chebyshev" else 2 * self.degree + 1

    def design_matrix(self, points, deriv: int = 0) -> np.ndarray:
        """(len(points), dim) matrix of the deriv-th basis derivatives."""
        pts = np.atleast_1d(np.asarray(points, dtype=float))
        if self.kind == "algebraic-chebyshev":
            lo, hi = self.reference
            c, r = 0.5 * (lo + hi), 0.5 * (hi - lo)
            s = (pts - c) / r
            coeffs = np.eye(self.degree + 1)
            if deriv:
                coeffs = _cheb.chebder(coeffs, deriv, axis=0)
                if coeffs.shape[0] == 0:
                    return np.zeros((pts.size, self.dim))
            return _cheb.chebval(s, coeffs).T * r ** (-deriv)
        cols = [np.full(pts.size, 1.0 if deriv == 0 else 0.0)]
        shift = 0.5 * math.pi * deriv
        for j in range(1, self.degree + 1):
            amp = float(j) ** deriv
            cols.append(amp * np.cos(j * pts + shift))
            cols.append(amp * np.sin(j * pts + shift))
        return np.stack(cols, axis=1)


@dataclass(frozen=True)
class ExtremalResult:
    """Outcome of one sup-norm extremal problem, with its certificate."""

    value: float
    coefficients: tuple[float, ...]
    grid: tuple[float, ...]
    refinements: int
    certified_norm: float
    degree: int
    order: int
    l_n: float | None = None

    def __post_init__(self):
        if not self.certified_norm <= 1.0 + DEFAULT_TOL.cert_slack:
            raise NumericFailureError(
                f"uncertified extremal result (norm {self.certified_norm!r})"
            )


def _bands_of(domain) -> tuple[tuple[float, float], ...]:
    if isinstance(domain, IntervalUnion):
        return domain.bands
    if isinstance(domain, PeriodicSet):
        return domain.base.bands
    raise InvalidArgumentError("need an interval union or a periodic set")


def _check_pairing(domain, basis: PolyBasis) -> None:
    algebraic = isinstance(domain, IntervalUnion)
    if algebraic != (basis.kind == "algebraic-chebyshev"):
        raise InvalidArgumentError(
            "algebraic basis goes with interval unions, trigonometric with periodic sets"
        )


def _chebyshev_spaced(bands, per_band: int) -> np.ndarray:
    pieces = []
    for lo, hi in bands:
        c, r = 0.5 * (lo + hi), 0.5 * (hi - lo)
        pieces.append(c + r * np.cos(np.linspace(math.pi, 0.0, per_band)))
    return np.concatenate(pieces)


def _band_local_maxima(values: np.ndarray, offsets: Sequence[int]) -> list[int]:
    """Indices that are local maxima within their own band segment."""
    out = []
    for start, stop in zip(offsets, list(offsets[1:]) + [len(values)]):
        seg = values[start:stop]
        for i in range(len(seg)):
            left = seg[i - 1] if i > 0 else -math.inf
            right = seg[i + 1] if i + 1 < len(seg) else -math.inf
            if seg[i] >= left and seg[i] >= right:
                out.append(start + i)
    return out


def _derivative_sup(domain, basis: PolyBasis, x0: float, k: int, tol: Tolerances) -> ExtremalResult:
    bands = _bands_of(domain)
    per = 40 * basis.degree
    if 2 * len(bands) * per > tol.lp_max_constraints:
        raise ResourceLimitError("initial constraint grid exceeds the LP limit")
    coarse = _chebyshev_spaced(bands, per)
    fine = _chebyshev_spaced(bands, 10 * per)
    fine_offsets = [i * 10 * per for i in range(len(bands))]

    v_coarse = basis.design_matrix(coarse)
    if np.linalg.cond(v_coarse) > tol.basis_cond_max:
        raise NumericFailureError("basis is ill-conditioned on the constraint grid")
    # The LP is solved in QR-orthonormalized coordinates: the extremal
    # polynomial is representation-free, and on short arcs or gapped sets the
    # raw coefficient basis can be so skewed that no vertex meets the
    # feasibility certificate.  Witness coefficients are mapped back at the
    # end and re-checked against the original objective row.
    q_coarse, r_fac = np.linalg.qr(v_coarse)

    def to_working(mat: np.ndarray) -> np.ndarray:
        return solve_triangular(r_fac.T, mat.T, lower=True).T

    v_fine = to_working(basis.design_matrix(fine))
    objective = basis.design_matrix([x0], deriv=k)[0]
    objective_w = to_working(objective[None, :])[0]

    best = None
    for sign in (1.0, -1.0):
        rows = q_coarse
        grid = coarse
        refinements = 0
        while True:
            if 2 * rows.shape[0] > tol.lp_max_constraints:
                raise ResourceLimitError("constraint grid exceeded the LP limit")
            lhs = np.vstack([rows, -rows])
            rhs = np.ones(lhs.shape[0])
            lp = simplex_solve(sign * objective_w, lhs, rhs, tol=tol)
            if lp.status == "iteration-limit":
                raise ResourceLimitError("LP iteration limit reached")
            if lp.status != "optimal":
                raise NumericFailureError(f"LP ended with status {lp.status!r}")
            coeff_w = lp.solution
            profile = np.abs(v_fine @ coeff_w)
            certified = float(np.max(profile))
            if certified <= 1.0 + tol.cert_slack:
                break
            if refinements >= tol.refine_max_rounds:
                raise NumericFailureError("cutting-plane refinement did not converge")
            peaks = [
                i
                for i in _band_local_maxima(profile, fine_offsets)
                if profile[i] > 1.0 + tol.lp_feasibility
            ]
            if not peaks:
                peaks = [int(np.argmax(profile))]
            new_points = fine[peaks]
            rows = np.vstack([rows, to_working(basis.design_matrix(new_points))])
            grid = np.concatenate([grid, new_points])
            refinements += 1
        value = float(lp.objective)
        if best is None or value > best[0]:
            best = (value, coeff_w, grid, refinements, certified)

    value, coeff_w, grid, refinements, certified = best
    coeff = solve_triangular(r_fac, coeff_w)
    recheck = abs(float(objective @ coeff))
    if abs(recheck - value) > tol.objective_recheck * max(1.0, abs(value)):
        raise NumericFailureError("extremal witness does not reproduce the LP value")
    return ExtremalResult(
        value=value,
        coefficients=tuple(float(c) for c in coeff),
        grid=tuple(float(g) for g in np.sort(grid)),
        refinements=refinements,
        certified_norm=certified,
        degree=basis.degree,
        order=k,
    )


def pointwise_derivative_sup(
    domain, basis: PolyBasis, x0: float, k: int = 1, tol: Tolerances = DEFAULT_TOL
) -> ExtremalResult:
    """sup |P^(k)(x0)| over the basis span with sup-norm at most 1 on the set."""
    _check_pairing(domain, basis)
    if not (isinstance(k, int) and k >= 1):
        raise InvalidArgumentError("derivative order must be a positive integer")
    if domain.locate(x0).kind != "interior":
        raise DomainError("evaluation point must be interior to the set")
    return _derivative_sup(domain, basis, x0, k, tol)


def markov_constant_numeric(
    domain, basis: PolyBasis, k: int = 1, tol: Tolerances = DEFAULT_TOL
) -> ExtremalResult:
    """sup over the set of |P^(k)|, by sweeping endpoint-clustered candidates.

    Candidates per band: both endpoints plus ten geometrically spaced interior
    points per endpoint, from half the band length down to 1e-6 of it; the
    k-th derivative extremum localizes at endpoint distance ~ n^-2, which this
    ladder straddles for every tested degree.  l_n is value / n^{2k}.
    """
    _check_pairing(domain, basis)
    if not (isinstance(k, int) and k >= 1):
        raise InvalidArgumentError("derivative order must be a positive integer")
    bands = _bands_of(domain)
    candidates: list[float] = []
    for lo, hi in bands:
        length = hi - lo
        dists = np.geomspace(0.5 * length, 1e-6 * length, tol.interior_probes_per_endpoint)
        candidates.append(lo)
        candidates.append(hi)
        candidates.extend(lo + dists)
        candidates.extend(hi - dists)
    best = None
    for x0 in candidates:
        result = _derivative_sup(domain, basis, float(x0), k, tol)
        if best is None or result.value > best.value:
            best = result
    scale = float(basis.degree) ** (2 * k)
    return ExtremalResult(
        value=best.value,
        coefficients=best.coefficients,
        grid=best.grid,
        refinements=best.refinements,
        certified_norm=best.certified_norm,
        degree=best.degree,
        order=best.order,
        l_n=best.value / scale,
    )


# ---------------------------------------------------------------------------
# L2 eigenproblems
# ---------------------------------------------------------------------------

def _gauss_jacobi_band(lo: float, hi: float, alpha_left: float, alpha_right: float, m: int):
    """Nodes/weights for int_lo^hi f(t) (t-lo)^aL (hi-t)^aR dt."""
    rec = jacobi_recurrence(alpha_right, alpha_left, m)
    rule = golub_welsch(rec, m)
    c, r = 0.5 * (lo + hi), 0.5 * (hi - lo)
    nodes = c + r * rule.nodes
    weights = rule.weights * r ** (1.0 + alpha_left + alpha_right)
    return nodes, weights


def _gram_factors(
    e: IntervalUnion,
    w: Weight,
    basis: PolyBasis,
    mode: str,
    tol: Tolerances,
) -> tuple[np.ndarray, np.ndarray]:
    """Row factors (N, M) of the derivative/plain Gram pencil: A = N^T N, B = M^T M.

    The pencil is solved from the factors (QR plus one triangular solve plus an
    SVD) instead of from the assembled Gram matrices.  The factors carry
    sqrt(cond(B)) instead of cond(B), which is what keeps the eigenvalues
    basis-independent to near machine precision even for poorly scaled
    reference intervals.
    """
    n = basis.degree
    m = 2 * n + 40
    b_rows: list[np.ndarray] = []
    a_rows: list[np.ndarray] = []

    if mode == "omega-bernstein":
        xi = solve_xi(e, tol)
        endpoints = e.endpoints
        for kband, (lo, hi) in enumerate(e.bands):
            others = [p for i, p in enumerate(endpoints) if i not in (2 * kband, 2 * kband + 1)]

            def gap_product(t):
                out = np.ones_like(t)
                for x0 in xi:
                    out = out * np.abs(t - x0)
                return out

            def other_roots(t):
                out = np.ones_like(t)
                for p in others:
                    out = out * np.abs(t - p)
                return out

            # B: measure omega dt = gap_product / (pi sqrt(prod |t-a|)) dt
            nodes, weights = _gauss_jacobi_band(lo, hi, -0.5, -0.5, m)
            rest = gap_product(nodes) / (math.pi * np.sqrt(other_roots(nodes)))
            v0 = basis.design_matrix(nodes)
            b_rows.append(v0 * np.sqrt(weights * rest)[:, None])
            # A: (P'/(pi omega))^2 omega dt = P'^2 sqrt(prod |t-a|)/(pi gap_product) dt
            nodes, weights = _gauss_jacobi_band(lo, hi, 0.5, 0.5, m)
            rest = np.sqrt(other_roots(nodes)) / (math.pi * gap_product(nodes))
            v1 = basis.design_matrix(nodes, deriv=1)
            a_rows.append(v1 * np.sqrt(weights * rest)[:, None])
        return np.vstack(a_rows), np.vstack(b_rows)

    for kband, (lo, hi) in enumerate(e.bands):
        alpha_left, alpha_right = w.band_exponents(kband)
        other = [
            (i, p)
            for i, p in enumerate(e.endpoints)
            if i not in (2 * kband, 2 * kband + 1)
        ]

        def rest_factor(t):
            out = w.evaluate_h(t)
            for i, p in other:
                out = out * np.abs(t - p) ** w.exponents[i]
            return out

        nodes, weights = _gauss_jacobi_band(lo, hi, alpha_left, alpha_right, m)
        scaled = np.sqrt(weights * rest_factor(nodes))
        v0 = basis.design_matrix(nodes)
        b_rows.append(v0 * scaled[:, None])
        if mode == "markov":
            v1 = basis.design_matrix(nodes, deriv=1)
            a_rows.append(v1 * scaled[:, None])
        else:  # gradient-bernstein: multiplier (1-t)(1+t), exponents bumped by 1
            nodes, weights = _gauss_jacobi_band(lo, hi, alpha_left + 1.0, alpha_right + 1.0, m)
            scaled = np.sqrt(weights * rest_factor(nodes))
            v1 = basis.design_matrix(nodes, deriv=1)
            a_rows.append(v1 * scaled[:, None])
    return np.vstack(a_rows), np.vstack(b_rows)


def l2_ratio_numeric(
    e: IntervalUnion,
    w: Weight | None,
    n: int,
    mode: str = "markov",
    tol: Tolerances = DEFAULT_TOL,
    reference: tuple[float, float] | None = None,
) -> float:
    """sqrt of the largest eigenvalue of the derivative-vs-plain Gram pencil.

    mode=markov compares ||P'|| to ||P|| in L2(w); gradient-bernstein inserts
    the multiplier (1-x^2) and therefore requires E = [-1, 1]; omega-bernstein
    ignores w and measures P'/(pi * density) in L2(equilibrium measure).
    """
    if mode not in L2_MODES:
        raise InvalidArgumentError(f"unknown mode {mode!r}")
    if not (isinstance(n, int) and 1 <= n <= 100):
        raise InvalidArgumentError("degree must be an integer in 1..100")
    if w is None:
        w = Weight.unweighted(e)
    w.validate_on(e)
    if mode == "gradient-bernstein" and (
        e.m != 1 or abs(e.endpoints[0] + 1.0) > 1e-12 or abs(e.endpoints[1] - 1.0) > 1e-12
    ):
        raise InvalidArgumentError("gradient-bernstein mode is defined on [-1, 1] only")
    basis = PolyBasis("algebraic-chebyshev", n, reference or e.covering_interval)
    a_fac, b_fac = _gram_factors(e, w, basis, mode, tol)
    cond_b = float(np.linalg.cond(b_fac)) ** 2
    if not np.isfinite(cond_b) or cond_b > tol.basis_cond_max:
        raise NumericFailureError(
            f"basis Gram condition estimate {cond_b:.3e} exceeds {tol.basis_cond_max:.1e}; "
            "choose a reference interval closer to the covering interval"
        )
    # QR of the B-factor yields the Cholesky factor of B without squaring the
    # conditioning; sqrt(lambda_max) is then the top singular value of the
    # A-factor expressed in the B-orthonormal coordinates.
    r = np.linalg.qr(b_fac, mode="r")
    x = solve_triangular(r.T, a_fac.T, lower=True).T
    return float(np.linalg.svd(x, compute_uv=False)[0])


# ---------------------------------------------------------------------------
# randomized falsification harness
# ---------------------------------------------------------------------------

VERIFY_INEQUALITIES = (
    "bernstein-unit",       # |P'(x)| sqrt(1-x^2) <= n ||P|| on [-1,1]
    "markov-unit",          # ||P'|| <= n^2 ||P|| on [-1,1]
    "va-markov",            # ||P^(k)|| <= exact constant on [-1,1]
    "szego-unit",           # (P' sqrt(1-x^2))^2 + n^2 P^2 <= n^2 ||P||^2
    "bernstein-szego",      # (P'/(pi w))^2 + n^2 P^2 <= n^2 ||P||^2 on any E
    "bernstein-alg",        # |P'(x)| <= n pi w_E(x) ||P||
    "bernstein-trig",       # |T'(t)| <= n 2 pi w_Gamma ||T||
    "trig-full-period",     # ||T'|| <= n ||T||
    "riesz-circle",         # |P'(z)| <= n ||P|| on |z| = 1
)


@dataclass(frozen=True)
class VerifyReport:
    inequality: str
    trials: int
    seed: int
    max_ratio: float
    worst_degree: int
    violations: tuple[tuple[int, int, float], ...]   # (trial, degree, ratio)
    witnesses: tuple[tuple[float, ...], ...] = ()    # coefficients, one per violation

    @property
    def ok(self) -> bool:
        return not self.violations


def _polish_max(fn: Callable[[float], float], xs: np.ndarray, vals: np.ndarray, top: int = 3) -> float:
    """Max of fn: grid maximum improved by bounded local optimization around
    the strongest local maxima, so the result can only increase."""
    best = float(np.max(vals))
    order = np.argsort(vals)[::-1]
    polished = 0
    for i in order:
        if polished >= top:
            break
        lo = xs[i - 1] if i > 0 else xs[i]
        hi = xs[i + 1] if i + 1 < len(xs) else xs[i]
        if lo == hi:
            continue
        res = minimize_scalar(lambda x: -fn(x), bounds=(lo, hi), method="bounded")
        best = max(best, -float(res.fun))
        polished += 1
    return best


def _sup_norm_bands(coeff_eval: Callable, bands, per_band: int) -> float:
    best = -math.inf
    for lo, hi in bands:
        c, r = 0.5 * (lo + hi), 0.5 * (hi - lo)
        xs = c + r * np.cos(np.linspace(math.pi, 0.0, per_band))
        vals = np.abs(coeff_eval(xs))

        def pointwise(x):
            return float(np.max(np.abs(coeff_eval(x))))

        best = max(best, _polish_max(pointwise, xs, vals))
    return best


def _verify_context(s, inequality: str, tol: Tolerances):
    """Everything degree-independent a single inequality check needs."""
    ctx = {}
    if inequality in ("bernstein-unit", "markov-unit", "va-markov", "szego-unit"):
        if not (isinstance(s, IntervalUnion) and s.endpoints == (-1.0, 1.0)):
            raise InvalidArgumentError(f"{inequality} is specific to [-1, 1]")
        ctx["bands"] = s.bands
    elif inequality in ("bernstein-szego", "bernstein-alg"):
        if not isinstance(s, IntervalUnion):
            raise InvalidArgumentError(f"{inequality} needs an interval union")
        ctx["bands"] = s.bands
        ctx["density"] = interval_density(s, tol)
    elif inequality == "bernstein-trig":
        if not isinstance(s, PeriodicSet):
            raise InvalidArgumentError("bernstein-trig needs a periodic set")
        ctx["bands"] = s.base.bands
        ctx["density"] = arc_density(gamma_of(s), tol)
    elif inequality == "trig-full-period":
        ctx["bands"] = ((-math.pi, math.pi),)
    elif inequality == "riesz-circle":
        ctx["bands"] = ((-math.pi, math.pi),)
    else:
        raise InvalidArgumentError(f"unknown inequality {inequality!r}")
    return ctx


def _probe_points(bands, tol: Tolerances, per_band: int = 64) -> np.ndarray:
    pieces = []
    for lo, hi in bands:
        buf = tol.frostman_buffer_rel * (hi - lo)
        pieces.append(np.linspace(lo + buf, hi - buf, per_band))
    return np.concatenate(pieces)


def _trial_ratio(s, inequality: str, ctx, n: int, k: int, coeffs: np.ndarray, tol: Tolerances) -> float:
    """Worst LHS/RHS ratio of one random polynomial; > 1 means violation."""
    if inequality == "riesz-circle":
        def val(theta):
            z = np.exp(1j * np.asarray(theta))
            return np.polynomial.polynomial.polyval(z, coeffs)

        def dval(theta):
            z = np.exp(1j * np.asarray(theta))
            der = np.polynomial.polynomial.polyder(coeffs)
            return np.polynomial.polynomial.polyval(z, der)

        norm = _sup_norm_bands(lambda th: val(th), ctx["bands"], 40 * n + 60)
        probes = _probe_points(ctx["bands"], tol)
        lhs = np.max(np.abs(dval(probes)))
        return float(lhs / (n * norm))

    if inequality in ("bernstein-trig", "trig-full-period"):
        basis = PolyBasis("trigonometric", n)
    else:
        lo, hi = s.covering_interval if isinstance(s, IntervalUnion) else (-1.0, 1.0)
        basis = PolyBasis("algebraic-chebyshev", n, (lo, hi))

    def poly(x):
        return basis.design_matrix(np.atleast_1d(x)) @ coeffs

    def dpoly(x, order=1):
        return basis.design_matrix(np.atleast_1d(x), deriv=order) @ coeffs

    norm = _sup_norm_bands(lambda x: poly(x), ctx["bands"], 40 * n + 60)
    probes = _probe_points(ctx["bands"], tol)

    if inequality == "bernstein-unit":
        lhs = np.abs(dpoly(probes)) * np.sqrt(1.0 - probes**2)
        return float(np.max(lhs) / (n * norm))
    if inequality == "markov-unit":
        dnorm = _sup_norm_bands(lambda x: dpoly(x), ctx["bands"], 40 * n + 60)
        return float(dnorm / (n * n * norm))
    if inequality == "va-markov":
        dnorm = _sup_norm_bands(lambda x: dpoly(x, k), ctx["bands"], 40 * n + 60)
        return float(dnorm / (va_markov_exact(n, k) * norm))
    if inequality == "szego-unit":
        lhs = (dpoly(probes) * np.sqrt(1.0 - probes**2)) ** 2 + n * n * poly(probes) ** 2
        return float(np.max(lhs) / (n * n * norm * norm))
    scale = ctx.get("density_scale", 1.0)
    if inequality == "bernstein-szego":
        omega = scale * np.array([ctx["density"].evaluate(float(t)) for t in probes])
        lhs = (dpoly(probes) / (math.pi * omega)) ** 2 + n * n * poly(probes) ** 2
        return float(np.max(lhs) / (n * n * norm * norm))
    if inequality == "bernstein-alg":
        omega = scale * np.array([ctx["density"].evaluate(float(t)) for t in probes])
        lhs = np.abs(dpoly(probes)) / (math.pi * omega)
        return float(np.max(lhs) / (n * norm))
    if inequality == "bernstein-trig":
        omega = scale * np.array([ctx["density"].evaluate(float(t)) for t in probes])
        lhs = np.abs(dpoly(probes)) / (2.0 * math.pi * omega)
        return float(np.max(lhs) / (n * norm))
    if inequality == "trig-full-period":
        dnorm = _sup_norm_bands(lambda x: dpoly(x), ctx["bands"], 40 * n + 60)
        return float(dnorm / (n * norm))
    raise InvalidArgumentError(f"unknown inequality {inequality!r}")


def verify_inequality(
    s,
    inequality: str,
    trials: int,
    rng_seed: int,
    order: int = 2,
    tol: Tolerances = DEFAULT_TOL,
    density_scale: float = 1.0,
) -> VerifyReport:
    """Randomized check of a non-asymptotic inequality; `order` is the
    derivative order used by the exact higher-derivative inequality only.

    density_scale is a negative-control hook: the density-based bounds are
    divided through the scaled density, so any value other than 1 corrupts
    the right-hand sides on purpose and must produce violations.
    """
    if trials < 1:
        raise InvalidArgumentError("trials must be >= 1")
    if not (np.isfinite(density_scale) and density_scale > 0):
        raise InvalidArgumentError("density_scale must be positive")
    ctx = _verify_context(s, inequality, tol)
    ctx["density_scale"] = float(density_scale)
    rng = np.random.default_rng(rng_seed)
    max_ratio = -math.inf
    worst_degree = 0
    violations = []
    witnesses = []
    for trial in range(trials):
        lowest = order if inequality == "va-markov" else 1
        n = int(rng.integers(lowest, tol.verify_max_degree + 1))
        if inequality == "riesz-circle":
            coeffs = rng.standard_normal(n + 1)
        elif inequality in ("bernstein-trig", "trig-full-period"):
            coeffs = rng.standard_normal(2 * n + 1)
        else:
            coeffs = rng.standard_normal(n + 1)
        ratio = _trial_ratio(s, inequality, ctx, n, order, coeffs, tol)
        if ratio > max_ratio:
            max_ratio = ratio
            worst_degree = n
        if ratio > 1.0 + tol.verify_hard:
            violations.append((trial, n, float(ratio)))
            witnesses.append(tuple(float(c) for c in coeffs))
    return VerifyReport(
        inequality=inequality,
        trials=trials,
        seed=rng_seed,
        max_ratio=float(max_ratio),
        worst_degree=worst_degree,
        violations=tuple(violations),
        witnesses=tuple(witnesses),
    )


# ---------------------------------------------------------------------------
# trigonometric interval check
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class VidenskiiReport:
    beta: float
    degree: int
    pointwise_ratios: tuple[float, ...]
    max_pointwise_ratio: float
    markov_ratio: float

    @property
    def ok(self) -> bool:
        """Certifies the exact pointwise bound only.  The norm ratio is
        reported raw: its closed-form constant is asymptotic, and for wide
        arcs the finite-degree extremum genuinely exceeds it (by 79% at
        beta = 3, n = 4), converging from above as n grows."""
        return self.max_pointwise_ratio <= 1.0 + DEFAULT_TOL.cert_slack


def videnskii_check(beta: float, n: int, tol: Tolerances = DEFAULT_TOL) -> VidenskiiReport:
    """LP extremal values on [-beta, beta] against the closed trig bounds:
    pointwise derivative sup vs n * (pointwise factor), and the derivative
    norm vs n^2 * 2 cot(beta/2)."""
    if not 0.0 < beta < math.pi:
        raise InvalidArgumentError("beta must be in (0, pi)")
    per = PeriodicSet(IntervalUnion((-beta, beta)))
    basis = PolyBasis("trigonometric", n)
    ratios = []
    for theta in np.linspace(-0.8 * beta, 0.8 * beta, 9):
        bound = n * videnskii_pointwise(beta, float(theta)).value
        got = pointwise_derivative_sup(per, basis, float(theta), 1, tol).value
        ratios.append(got / bound)
    markov = markov_constant_numeric(per, basis, 1, tol)
    markov_ratio = markov.value / (n * n * videnskii_markov(beta).value)
    return VidenskiiReport(
        beta=beta,
        degree=n,
        pointwise_ratios=tuple(float(r) for r in ratios),
        max_pointwise_ratio=float(max(ratios)),
        markov_ratio=float(markov_ratio),
    )
