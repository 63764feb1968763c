"""Numerical verification of the polynomial inequalities and identities.

Every check returns a structured VerificationReport. Bound checks follow the
rule pass <=> measured <= bound * (1 + tol), except additive-form checks
(bounded by zero) which use an absolute slack recorded in the report, and
identity checks, where measured is the absolute discrepancy |lhs - rhs| and
bound is the allowed discrepancy, so the same rule applies with tol = 0.

Degenerate inputs (zero polynomial, degree too small) yield a report with
status "degenerate" instead of a verdict; every inequality is vacuous there.
"""
from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidParam, NotRealValued, OnUnitCircle, RootInForbiddenRegion
from .kernels import (
    besov_111_bound_constant,
    besov_inf1_bound_constant,
    wiener_bound_constant,
)
from .norms import (
    DEFAULT_CONFIG,
    QuadratureConfig,
    _doubled_value,
    besov_111_seminorm,
    besov_inf1_seminorm,
    circle_max,
    lp_norm,
    mahler_jensen,
    sup_norm,
    sup_norm_argmax,
    wiener_norm,
)
from .poly import AlgebraicPoly, TrigPoly, poly_to_json, roots

DEFAULT_TOL = 1e-8
HULL_TOL = 1e-7


@dataclass
class VerificationReport:
    """Outcome of one inequality/identity check on one input."""

    check_id: str
    digest: str
    measured: float
    bound: float
    tol: float
    passed: bool
    margin: float
    status: str = "ok"
    witnesses: list = field(default_factory=list)
    params: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {
            "check_id": self.check_id,
            "digest": self.digest,
            "measured": self.measured,
            "bound": self.bound,
            "tol": self.tol,
            "pass": self.passed,
            "margin": self.margin,
            "status": self.status,
            "witnesses": [[float(x), float(v)] for x, v in self.witnesses],
            "params": self.params,
        }
        return out


def _digest(payload) -> str:
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


def _poly_payload(p) -> dict:
    return poly_to_json(p)


def _report(check_id, payload, measured, bound, tol, *, abs_slack=None,
            witnesses=(), params=None) -> VerificationReport:
    measured = float(measured)
    bound = float(bound)
    if abs_slack is not None:
        passed = measured <= bound + abs_slack
    else:
        passed = measured <= bound * (1.0 + tol)
    params = dict(params or {})
    if abs_slack is not None:
        params["abs_slack"] = float(abs_slack)
    return VerificationReport(
        check_id=check_id,
        digest=_digest(payload),
        measured=measured,
        bound=bound,
        tol=float(tol),
        passed=bool(passed),
        margin=bound - measured,
        witnesses=sorted(witnesses, key=lambda wv: bound - wv[1]),
        params=params,
    )


def _degenerate(check_id, payload, params=None) -> VerificationReport:
    return VerificationReport(
        check_id=check_id,
        digest=_digest(payload),
        measured=0.0,
        bound=0.0,
        tol=0.0,
        passed=True,
        margin=0.0,
        status="degenerate",
        params=dict(params or {}),
    )


def parse_p(p) -> float:
    if isinstance(p, str):
        if p.lower() in ("inf", "infinity", "sup"):
            return math.inf
        p = float(p)
    p = float(p)
    if p < 0:
        raise InvalidParam("p must be >= 0 or inf")
    return p


def _ladder_norm(t: TrigPoly, p: float, cfg: QuadratureConfig) -> float:
    """Norm of a trig polynomial at rung p of the ladder (0 = Mahler, inf = sup)."""
    if t.is_zero():
        return 0.0
    if math.isinf(p):
        return sup_norm(t, cfg)
    if p == 0:
        return mahler_jensen(t)
    return lp_norm(t, p, cfg)


def check_bernstein(t: TrigPoly, p, tol: float = DEFAULT_TOL,
                    cfg: QuadratureConfig | None = None) -> VerificationReport:
    """Derivative norm bound: ||T'||_p <= n ||T||_p, n the declared degree.

    Routes p = 0 through the Mahler (Jensen) norm and p = inf through the
    refined sup norm.
    """
    cfg = cfg or DEFAULT_CONFIG
    p = parse_p(p)
    payload = {"op": "bernstein", "p": repr(p), "poly": _poly_payload(t)}
    params = {"n": t.degree, "p": p}
    if t.is_zero():
        return _degenerate("bernstein", payload, params)
    n = t.degree
    dt = t.derivative()
    witnesses = []
    if math.isinf(p):
        measured, xmax = sup_norm_argmax(dt)
        witnesses = [(xmax, measured)]
    else:
        measured = _ladder_norm(dt, p, cfg)
    bound = n * _ladder_norm(t, p, cfg)
    return _report("bernstein", payload, measured, bound, tol,
                   witnesses=witnesses, params=params)


def _min_root_modulus(p: AlgebraicPoly) -> float:
    if p.effective_degree in (None, 0):
        return math.inf
    if p.known_roots is not None and len(p.known_roots) == p.effective_degree:
        mods = np.abs(np.asarray(p.known_roots, dtype=np.complex128))
    else:
        mods = np.abs(roots(p).roots)
    return float(mods.min()) if mods.size else math.inf


def _require_roots_outside(p: AlgebraicPoly, rho: float):
    """Reject inputs whose minimal root modulus undercuts rho by > 1e-6."""
    lo = _min_root_modulus(p)
    if lo < rho - 1e-6:
        raise RootInForbiddenRegion(
            f"root of modulus {lo:.6g} violates the requirement >= {rho:g}"
        )


def check_malik(p: AlgebraicPoly, tol: float = DEFAULT_TOL,
                cfg: QuadratureConfig | None = None) -> VerificationReport:
    """|P'(z)| + |Q'(z)| <= n on the circle after normalizing sup|P| to 1,
    Q the reciprocal polynomial."""
    payload = {"op": "malik", "poly": _poly_payload(p)}
    params = {"n": p.degree}
    if p.is_zero():
        return _degenerate("malik", payload, params)
    n = p.degree
    scale = sup_norm(p, cfg)
    pn = p * (1.0 / scale)
    dp = pn.derivative()
    dq = pn.reciprocal().derivative()

    def f(x):
        z = np.exp(1j * np.asarray(x, dtype=np.float64))
        return np.abs(dp(z)) + np.abs(dq(z))

    measured, xmax = circle_max(f, 32 * (n + 1))
    return _report("malik", payload, measured, n, tol,
                   witnesses=[(xmax, measured)], params=params)


def check_laguerre(p: AlgebraicPoly, rho: float, tol: float = DEFAULT_TOL,
                   cfg: QuadratureConfig | None = None) -> VerificationReport:
    """rho |P'(z)| <= |Q'(z)| on the circle for P with all roots of modulus >= rho.

    Additive form: measured is the max of rho|P'| - |Q'|, bounded by zero with
    absolute slack tol * n * sup|P|.
    """
    if rho < 1.0:
        raise InvalidParam("rho >= 1 required")
    payload = {"op": "laguerre", "rho": rho, "poly": _poly_payload(p)}
    params = {"n": p.degree, "rho": rho}
    if p.is_zero():
        return _degenerate("laguerre", payload, params)
    _require_roots_outside(p, rho)
    n = p.degree
    dp = p.derivative()
    dq = p.reciprocal().derivative()

    def f(x):
        z = np.exp(1j * np.asarray(x, dtype=np.float64))
        return rho * np.abs(dp(z)) - np.abs(dq(z))

    measured, xmax = circle_max(f, 32 * (n + 1))
    slack = tol * n * sup_norm(p, cfg)
    return _report("laguerre", payload, measured, 0.0, tol, abs_slack=slack,
                   witnesses=[(xmax, measured)], params=params)


def check_lax_malik(p: AlgebraicPoly, rho: float, tol: float = DEFAULT_TOL,
                    cfg: QuadratureConfig | None = None) -> VerificationReport:
    """||P'||_inf <= n/(1+rho) * ||P||_inf for P with all roots of modulus >= rho."""
    if rho < 1.0:
        raise InvalidParam("rho >= 1 required")
    payload = {"op": "lax_malik", "rho": rho, "poly": _poly_payload(p)}
    params = {"n": p.degree, "rho": rho}
    if p.is_zero():
        return _degenerate("lax_malik", payload, params)
    _require_roots_outside(p, rho)
    n = p.degree
    measured, xmax = sup_norm_argmax(p.derivative())
    bound = n / (1.0 + rho) * sup_norm(p, cfg)
    return _report("lax_malik", payload, measured, bound, tol,
                   witnesses=[(xmax, measured)], params=params)


def check_ankeny_rivlin(p: AlgebraicPoly, rho: float, radius: float,
                        tol: float = DEFAULT_TOL,
                        cfg: QuadratureConfig | None = None) -> VerificationReport:
    """max_{|z|=R} |P(z)| <= (R^n + rho)/(1 + rho) * ||P||_inf for root-free rho-disk."""
    if rho < 1.0:
        raise InvalidParam("rho >= 1 required")
    if radius <= 1.0:
        raise InvalidParam("the growth bound is for radii R > 1")
    payload = {"op": "ankeny_rivlin", "rho": rho, "R": radius, "poly": _poly_payload(p)}
    params = {"n": p.degree, "rho": rho, "R": radius}
    if p.is_zero():
        return _degenerate("ankeny_rivlin", payload, params)
    _require_roots_outside(p, rho)
    n = p.degree
    measured, xmax = sup_norm_argmax(p.dilate(radius))
    bound = (radius**n + rho) / (1.0 + rho) * sup_norm(p, cfg)
    return _report("ankeny_rivlin", payload, measured, bound, tol,
                   witnesses=[(xmax, measured)], params=params)


def check_svdc(t: TrigPoly, tol: float = DEFAULT_TOL,
               cfg: QuadratureConfig | None = None) -> VerificationReport:
    """(T')^2 + n^2 T^2 <= n^2 pointwise for real-valued T normalized to sup 1."""
    payload = {"op": "svdc", "poly": _poly_payload(t)}
    params = {"n": t.degree}
    if t.is_zero():
        return _degenerate("svdc", payload, params)
    if not t.is_real_valued():
        raise NotRealValued("the pointwise bound needs a real-valued trig polynomial")
    n = t.degree
    tn = t * (1.0 / sup_norm(t, cfg))
    dt = tn.derivative()

    def f(x):
        xv = np.asarray(x, dtype=np.float64)
        return np.real(dt(xv)) ** 2 + n * n * np.real(tn(xv)) ** 2

    measured, xmax = circle_max(f, 32 * (2 * n + 1))
    return _report("svdc", payload, measured, float(n * n), tol,
                   witnesses=[(xmax, measured)], params=params)


def _convex_hull(points: np.ndarray) -> np.ndarray:
    """Monotone-chain convex hull of complex points (ccw, no strict-interior
    collinear vertices). Degenerate inputs return 1 or 2 points."""
    pts = sorted(set((float(z.real), float(z.imag)) for z in points))
    if len(pts) <= 2:
        return np.array([complex(*q) for q in pts])

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower: list = []
    for q in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], q) <= 0:
            lower.pop()
        lower.append(q)
    upper: list = []
    for q in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], q) <= 0:
            upper.pop()
        upper.append(q)
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 2:  # all collinear: keep the extreme pair
        hull = [pts[0], pts[-1]]
    return np.array([complex(*q) for q in hull])


def _segment_distance(p: complex, a: complex, b: complex) -> float:
    ab = b - a
    denom = abs(ab) ** 2
    if denom == 0.0:
        return abs(p - a)
    s = min(1.0, max(0.0, ((p - a) * np.conj(ab)).real / denom))
    return abs(p - (a + s * ab))


def _distance_to_hull(p: complex, hull: np.ndarray) -> float:
    if len(hull) == 1:
        return abs(p - hull[0])
    if len(hull) == 2:
        return _segment_distance(p, hull[0], hull[1])
    inside = True
    for i in range(len(hull)):
        a, b = hull[i], hull[(i + 1) % len(hull)]
        cr = ((b - a).conjugate() * (p - a)).imag
        if cr < 0.0:
            inside = False
            break
    if inside:
        return 0.0
    return min(
        _segment_distance(p, hull[i], hull[(i + 1) % len(hull)])
        for i in range(len(hull))
    )


def check_gauss_lucas(p: AlgebraicPoly, tol: float = HULL_TOL) -> VerificationReport:
    """Every root of P' lies in the convex hull of the roots of P.

    measured is the largest distance from a derivative root to the hull;
    bound is zero with absolute slack tol * (1 + root scale).
    """
    payload = {"op": "gauss_lucas", "poly": _poly_payload(p)}
    params = {"n": p.degree}
    if p.effective_degree is None or p.effective_degree < 2:
        return _degenerate("gauss_lucas", payload, params)
    if p.known_roots is not None and len(p.known_roots) == p.effective_degree:
        base = np.asarray(p.known_roots, dtype=np.complex128)
    else:
        base = roots(p).roots
    deriv_roots = roots(p.derivative()).roots
    hull = _convex_hull(base)
    dists = [(_distance_to_hull(complex(r), hull), complex(r)) for r in deriv_roots]
    measured = max(d for d, _ in dists)
    scale = float(np.abs(base).max())
    slack = tol * (1.0 + scale)
    worst = max(dists, key=lambda dr: dr[0])[1]
    return _report("gauss_lucas", payload, measured, 0.0, tol, abs_slack=slack,
                   witnesses=[(worst.real, measured)], params=params)


_EMBEDDING_KINDS = ("wiener", "besovinf1", "besov111")


def check_embedding(p: AlgebraicPoly, kind: str, tol: float = DEFAULT_TOL,
                    cfg: QuadratureConfig | None = None) -> VerificationReport:
    """Coefficient/Besov norm <= explicit constant times sup|P| at degree n.

    Constants: sqrt(n+1) for the coefficient-sum norm, sum_{k<n} 1/(2k+1) for
    the radial-sup seminorm, (8/pi) sum_{k<n} gamma(k+3/2)^2/(k!(k+1)!) for
    the second-derivative area seminorm.
    """
    if kind not in _EMBEDDING_KINDS:
        raise InvalidParam(f"embedding kind must be one of {_EMBEDDING_KINDS}")
    payload = {"op": f"embedding_{kind}", "poly": _poly_payload(p)}
    params = {"n": p.degree, "kind": kind}
    if p.is_zero():
        return _degenerate(f"embedding_{kind}", payload, params)
    n = p.degree
    if kind == "wiener":
        measured = wiener_norm(p)
        const = wiener_bound_constant(n)
    elif kind == "besovinf1":
        measured = besov_inf1_seminorm(p, cfg)
        const = besov_inf1_bound_constant(n)
    else:
        measured = besov_111_seminorm(p, cfg)
        const = besov_111_bound_constant(n)
    bound = const * sup_norm(p, cfg)
    return _report(f"embedding_{kind}", payload, measured, bound, tol, params=params)


def check_dominated_derivative(p: AlgebraicPoly, tol: float = DEFAULT_TOL,
                               cfg: QuadratureConfig | None = None) -> VerificationReport:
    """Term-by-term domination with the canonical majorant sup|P| * z^n:
    |P| <= |F| on the circle and F root-free outside the closed disk force
    |P'| <= |F'| = n sup|P| there."""
    payload = {"op": "dominated_derivative", "poly": _poly_payload(p)}
    params = {"n": p.degree}
    if p.is_zero():
        return _degenerate("dominated_derivative", payload, params)
    n = p.degree
    measured, xmax = sup_norm_argmax(p.derivative())
    bound = n * sup_norm(p, cfg)
    return _report("dominated_derivative", payload, measured, bound, tol,
                   witnesses=[(xmax, measured)], params=params)


def check_identity_logplus(v: complex, tol: float = DEFAULT_TOL,
                           cfg: QuadratureConfig | None = None) -> VerificationReport:
    """Circle mean of log|v + w| equals log+ |v| away from |v| = 1.

    By rotation invariance the inner unimodular factor is fixed to 1. The
    report carries the absolute discrepancy against an allowance of
    tol * (1 + |log+ |v||); inputs within 1e-6 of the unit circle are
    rejected since the integrand then has a near-contour log singularity.
    """
    cfg = cfg or DEFAULT_CONFIG
    v = complex(v)
    if abs(abs(v) - 1.0) < 1e-6:
        raise OnUnitCircle("|v| = 1 is excluded (log singularity on the contour)")
    payload = {"op": "logplus", "v": [v.real, v.imag]}

    def mean_at(grid: int) -> float:
        w = np.exp(2j * np.pi * np.arange(grid) / grid)
        return float(np.mean(np.log(np.abs(v + w))))

    quad = _doubled_value(mean_at, 64, cfg.rel_tol, cfg.max_doublings + 4)
    rhs = max(0.0, math.log(abs(v))) if v != 0 else 0.0
    measured = abs(quad - rhs)
    allowance = tol * (1.0 + abs(rhs))
    return _report("logplus", payload, measured, allowance, 0.0,
                   params={"v_abs": abs(v), "lhs": quad, "rhs": rhs})


def check_identity_power(u: float, p: float, tol: float = DEFAULT_TOL) -> VerificationReport:
    """u^p = integral over a > 0 of log+(u/a) p^2 a^(p-1) da.

    Substituting a = u e^(-s) and then t = p s turns the right side into
    u^p * integral of t e^(-t) dt, evaluated by Gauss-Laguerre quadrature.
    """
    if u < 0 or not (p > 0) or not math.isfinite(p):
        raise InvalidParam("need u >= 0 and finite p > 0")
    payload = {"op": "power_identity", "u": u, "p": p}
    if u == 0.0:
        quad = 0.0
    else:
        t, w = np.polynomial.laguerre.laggauss(48)
        quad = float(u**p * np.sum(w * t))
    rhs = float(u**p)
    measured = abs(quad - rhs)
    allowance = tol * (1.0 + rhs)
    return _report("power_identity", payload, measured, allowance, 0.0,
                   params={"u": u, "p": p, "lhs": quad, "rhs": rhs})


@dataclass(frozen=True)
class ChiFunction:
    """Evaluator for chi: R+ -> R with the monotonicity hypothesis flag
    (chi increasing, differentiable, x chi'(x) increasing)."""

    name: str
    fn: object = None
    monotone_hypothesis: bool = True
    is_log: bool = False

    @staticmethod
    def power(exponent: float) -> "ChiFunction":
        if not (exponent > 0):
            raise InvalidParam("power chi needs a positive exponent")
        return ChiFunction(name=f"x^{exponent:g}", fn=lambda x: x**exponent)

    @staticmethod
    def log() -> "ChiFunction":
        return ChiFunction(name="log", is_log=True)

    @staticmethod
    def parse(name: str) -> "ChiFunction":
        if name == "log":
            return ChiFunction.log()
        if name.startswith("x^"):
            return ChiFunction.power(float(name[2:]))
        raise InvalidParam(f"unknown chi spec {name!r}; use 'log' or 'x^<p>'")


def check_chi_version(t: TrigPoly, chi: ChiFunction, tol: float = DEFAULT_TOL,
                      cfg: QuadratureConfig | None = None) -> VerificationReport:
    """Circle mean of chi(|T'|) <= circle mean of chi(n |T|).

    The log case routes through exp of the means, i.e. the Mahler comparison
    ||T'||_0 <= n ||T||_0 via the Jensen evaluation, avoiding -inf samples.
    """
    cfg = cfg or DEFAULT_CONFIG
    if not chi.monotone_hypothesis:
        raise InvalidParam("chi must assert the monotonicity hypothesis")
    payload = {"op": "chi", "chi": chi.name, "poly": _poly_payload(t)}
    params = {"n": t.degree, "chi": chi.name}
    if t.is_zero():
        return _degenerate("chi_bound", payload, params)
    n = t.degree
    dt = t.derivative()
    if chi.is_log:
        measured = 0.0 if dt.is_zero() else mahler_jensen(dt)
        bound = n * mahler_jensen(t)
        return _report("chi_bound", payload, measured, bound, tol, params=params)

    grid0 = cfg.initial_grid(n)

    def mean_of(poly, scale):
        def at(grid: int) -> float:
            vals = np.abs(poly.values_on_grid(grid)) * scale
            return float(np.mean(chi.fn(vals)))

        return _doubled_value(at, grid0, cfg.rel_tol, cfg.max_doublings)

    measured = mean_of(dt, 1.0)
    bound = mean_of(t, float(n))
    return _report("chi_bound", payload, measured, bound, tol, params=params)


@dataclass
class MateNevaiComparison:
    """Derivative norm against the two explicit bounds available for 0 < p < 1."""

    p: float
    n: int
    measured: float
    sharp_bound: float        # n ||P||_p
    mate_nevai_bound: float   # n (4e)^(1/p) ||P||_p
    factor: float             # (4e)^(1/p)
    digest: str

    @property
    def consistent(self) -> bool:
        return self.measured <= self.sharp_bound * (1 + DEFAULT_TOL) and (
            self.sharp_bound <= self.mate_nevai_bound
        )

    def to_json(self) -> dict:
        return {
            "check_id": "mate_nevai",
            "p": self.p,
            "n": self.n,
            "measured": self.measured,
            "sharp_bound": self.sharp_bound,
            "mate_nevai_bound": self.mate_nevai_bound,
            "factor": self.factor,
            "digest": self.digest,
        }


def mate_nevai_compare(p: AlgebraicPoly, power: float,
                       cfg: QuadratureConfig | None = None) -> MateNevaiComparison:
    """Report ||P'||_p next to n ||P||_p and n (4e)^(1/p) ||P||_p for 0 < p < 1,
    exhibiting the (4e)^(1/p) improvement factor of the sharp constant."""
    cfg = cfg or DEFAULT_CONFIG
    if not (0.0 < power < 1.0):
        raise InvalidParam("the comparison is for 0 < p < 1")
    payload = {"op": "mate_nevai", "p": power, "poly": _poly_payload(p)}
    t = TrigPoly.from_algebraic(p)
    dt = TrigPoly.from_algebraic(p.derivative())
    base = lp_norm(t, power, cfg) if not p.is_zero() else 0.0
    measured = lp_norm(dt, power, cfg) if not p.derivative().is_zero() else 0.0
    factor = (4.0 * math.e) ** (1.0 / power)
    n = p.degree
    return MateNevaiComparison(
        p=power,
        n=n,
        measured=measured,
        sharp_bound=n * base,
        mate_nevai_bound=n * factor * base,
        factor=factor,
        digest=_digest(payload),
    )
