"""Polynomial types and exact arithmetic on the unit circle.

Two coefficient conventions live side by side:

* ``AlgebraicPoly`` stores ``a_0 .. a_n`` for ``P(z) = sum a_k z^k``;
* ``TrigPoly`` stores ``a_{-n} .. a_n`` for ``T(x) = sum a_k exp(ikx)``.

The lift ``Q(z) = z^n T(z)`` identifies the two on ``|z| = 1``: it shares
the coefficient array of ``T`` read as an algebraic polynomial of degree 2n.

The declared degree (length of the coefficient vector) is the bound that
enters inequality constants; the effective degree tracks the actual data.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidParam, ParseError, ZeroPolynomial

_TWO_PI = 2.0 * np.pi


def _horner(coeffs: np.ndarray, z: np.ndarray) -> np.ndarray:
    """Evaluate sum coeffs[k] z^k by Horner's scheme (vectorized in z)."""
    out = np.zeros_like(z, dtype=np.complex128)
    for a in coeffs[::-1]:
        out = out * z + a
    return out


def _poly_values(coeffs: np.ndarray, z: np.ndarray) -> np.ndarray:
    """Horner for short polynomials, a cumulative power matrix otherwise.

    The power-matrix route trades memory (len(z) x len(coeffs)) for a handful
    of vector ops, which wins once the coefficient loop would dominate; it
    falls back to Horner when the matrix would be large.
    """
    m = len(coeffs)
    if m <= 8 or z.ndim != 1 or z.size * m > 2_000_000:
        return _horner(coeffs, z)
    zc = np.ascontiguousarray(z, dtype=np.complex128)
    pw = np.empty((z.size, m), dtype=np.complex128)
    pw[:, 0] = 1.0
    np.multiply.accumulate(np.broadcast_to(zc[:, None], (z.size, m - 1)), axis=1,
                           out=pw[:, 1:])
    return pw @ coeffs


def _grid_values(coeffs: np.ndarray, kmin: int, grid: int) -> np.ndarray:
    """Values of sum_j coeffs[j] e^{i(kmin+j)x} at x = 2*pi*t/grid, t = 0..grid-1.

    Uses a zero-padded inverse FFT; requires grid >= len(coeffs) so the
    frequency residues mod grid stay distinct.
    """
    m = len(coeffs)
    if grid < m:
        raise InvalidParam(f"grid {grid} too small for {m} coefficients")
    c = np.zeros(grid, dtype=np.complex128)
    c[(np.arange(m) + kmin) % grid] = coeffs
    return np.fft.ifft(c) * grid


@dataclass(frozen=True)
class AlgebraicPoly:
    """P(z) = sum_{k=0}^{n} coeffs[k] z^k; declared degree n = len(coeffs) - 1.

    Trailing zero coefficients are legal. ``known_roots`` is optional
    provenance set by generators that build the polynomial from its roots;
    it lets root-condition checks avoid the ill-conditioning of numerically
    re-deriving multiple roots.
    """

    coeffs: np.ndarray
    known_roots: tuple | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        c = np.atleast_1d(np.asarray(self.coeffs, dtype=np.complex128)).copy()
        if c.ndim != 1 or c.size == 0:
            raise InvalidParam("coefficient vector must be one-dimensional and nonempty")
        c.flags.writeable = False
        object.__setattr__(self, "coeffs", c)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def effective_degree(self) -> int | None:
        """Largest k with coeffs[k] != 0, or None for the zero polynomial."""
        nz = np.nonzero(self.coeffs)[0]
        return int(nz[-1]) if nz.size else None

    def is_zero(self) -> bool:
        return self.effective_degree is None

    def __call__(self, z):
        scalar = np.isscalar(z)
        vals = _poly_values(self.coeffs, np.atleast_1d(np.asarray(z, dtype=np.complex128)))
        return complex(vals[0]) if scalar else vals.reshape(np.shape(z))

    def derivative(self) -> "AlgebraicPoly":
        """Coefficient k of P' is (k+1) a_{k+1}; declared degree max(0, n-1)."""
        if self.degree == 0:
            return AlgebraicPoly(np.zeros(1))
        k = np.arange(1, self.degree + 1)
        return AlgebraicPoly(k * self.coeffs[1:])

    def reciprocal(self) -> "AlgebraicPoly":
        """Coefficient k of the reciprocal is conj(a_{n-k}), n the declared degree."""
        return AlgebraicPoly(np.conj(self.coeffs[::-1]))

    def dilate(self, r: float) -> "AlgebraicPoly":
        """P_r with P_r(z) = P(rz), i.e. coefficients a_k r^k."""
        return AlgebraicPoly(self.coeffs * (complex(r) ** np.arange(len(self.coeffs))))

    def values_on_grid(self, grid: int) -> np.ndarray:
        """P(e^{ix}) at the uniform angles x = 2*pi*t/grid."""
        return _grid_values(self.coeffs, 0, grid)

    def __mul__(self, other):
        if isinstance(other, AlgebraicPoly):
            return AlgebraicPoly(np.convolve(self.coeffs, other.coeffs))
        return AlgebraicPoly(self.coeffs * complex(other))

    __rmul__ = __mul__

    def wiener(self) -> float:
        return float(np.abs(self.coeffs).sum())


@dataclass(frozen=True)
class TrigPoly:
    """T(x) = sum_{k=-n}^{n} coeffs[n+k] e^{ikx}; length must be odd (2n+1)."""

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.atleast_1d(np.asarray(self.coeffs, dtype=np.complex128)).copy()
        if c.ndim != 1 or c.size % 2 == 0:
            raise InvalidParam("trig coefficient vector must have odd length 2n+1")
        c.flags.writeable = False
        object.__setattr__(self, "coeffs", c)

    @property
    def degree(self) -> int:
        return (len(self.coeffs) - 1) // 2

    def is_zero(self) -> bool:
        return not np.any(self.coeffs)

    def coefficient(self, k: int) -> complex:
        n = self.degree
        if abs(k) > n:
            return 0j
        return complex(self.coeffs[n + k])

    def __call__(self, x):
        """Evaluate via the lift: T(x) = Q(e^{ix}) e^{-inx} with Q(z) = z^n T(z)."""
        scalar = np.isscalar(x)
        xv = np.atleast_1d(np.asarray(x, dtype=np.float64))
        z = np.exp(1j * xv)
        vals = _poly_values(self.coeffs, z.ravel()).reshape(z.shape) * np.exp(-1j * self.degree * xv)
        return complex(vals[0]) if scalar else vals.reshape(np.shape(x))

    def derivative(self) -> "TrigPoly":
        """d/dx: coefficient k becomes i*k*a_k."""
        n = self.degree
        k = np.arange(-n, n + 1)
        return TrigPoly(1j * k * self.coeffs)

    def to_algebraic(self) -> AlgebraicPoly:
        """The lift Q(z) = z^n T(z), an algebraic polynomial of declared degree 2n."""
        return AlgebraicPoly(self.coeffs)

    @classmethod
    def from_algebraic(cls, p: AlgebraicPoly) -> "TrigPoly":
        """Analytic embedding: a_k = p.coeffs[k] for k >= 0, zero for k < 0."""
        n = p.degree
        return cls(np.concatenate([np.zeros(n, dtype=np.complex128), p.coeffs]))

    def analytic_part(self) -> AlgebraicPoly:
        """The k >= 0 coefficients as an algebraic polynomial."""
        return AlgebraicPoly(self.coeffs[self.degree:])

    def has_negative_frequencies(self, tol: float = 0.0) -> bool:
        neg = self.coeffs[: self.degree]
        return bool(np.any(np.abs(neg) > tol))

    def is_real_valued(self, tol: float = 1e-12) -> bool:
        """True when a_{-k} = conj(a_k) up to tol relative to the largest coefficient."""
        scale = max(float(np.abs(self.coeffs).max()), 1e-300)
        return bool(np.abs(self.coeffs - np.conj(self.coeffs[::-1])).max() <= tol * scale)

    def shift(self, a: float) -> "TrigPoly":
        """T(. + a): coefficient k picks up the phase e^{ika}."""
        n = self.degree
        k = np.arange(-n, n + 1)
        return TrigPoly(self.coeffs * np.exp(1j * k * a))

    def values_on_grid(self, grid: int) -> np.ndarray:
        return _grid_values(self.coeffs, -self.degree, grid)

    def __mul__(self, other):
        if isinstance(other, TrigPoly):
            return TrigPoly(np.convolve(self.coeffs, other.coeffs))
        return TrigPoly(self.coeffs * complex(other))

    __rmul__ = __mul__


@dataclass(frozen=True)
class ExponentialSum:
    """f(x) = sum_j amplitudes[j] e^{i frequencies[j] x} with real frequencies.

    ``bandwidth`` is an upper bound on |frequencies|; it defaults to the max.
    """

    amplitudes: np.ndarray
    frequencies: np.ndarray
    bandwidth: float = None  # type: ignore[assignment]

    def __post_init__(self):
        a = np.atleast_1d(np.asarray(self.amplitudes, dtype=np.complex128)).copy()
        f = np.atleast_1d(np.asarray(self.frequencies, dtype=np.float64)).copy()
        if a.shape != f.shape or a.ndim != 1 or a.size == 0:
            raise InvalidParam("amplitudes and frequencies must be matching nonempty vectors")
        if np.unique(f).size != f.size:
            raise InvalidParam("frequencies must be distinct")
        bw = float(np.abs(f).max()) if self.bandwidth is None else float(self.bandwidth)
        if np.abs(f).max() > bw + 1e-12:
            raise InvalidParam("bandwidth must dominate every |frequency|")
        a.flags.writeable = False
        f.flags.writeable = False
        object.__setattr__(self, "amplitudes", a)
        object.__setattr__(self, "frequencies", f)
        object.__setattr__(self, "bandwidth", bw)

    def __call__(self, x):
        scalar = np.isscalar(x)
        xv = np.asarray(x, dtype=np.float64)
        vals = np.exp(1j * np.multiply.outer(xv, self.frequencies)) @ self.amplitudes
        return complex(vals) if scalar else vals

    def derivative_values(self, x):
        scalar = np.isscalar(x)
        xv = np.asarray(x, dtype=np.float64)
        w = 1j * self.frequencies * self.amplitudes
        vals = np.exp(1j * np.multiply.outer(xv, self.frequencies)) @ w
        return complex(vals) if scalar else vals

    def amplitude_sum(self) -> float:
        return float(np.abs(self.amplitudes).sum())


@dataclass(frozen=True)
class RootSet:
    """All roots of the effective-degree polynomial, with multiplicity.

    ``residual`` is the relative max-norm error of rebuilding the coefficient
    vector as leading * prod (z - z_j).
    """

    roots: np.ndarray
    residual: float

    def __post_init__(self):
        r = np.atleast_1d(np.asarray(self.roots, dtype=np.complex128)).copy()
        r.flags.writeable = False
        object.__setattr__(self, "roots", r)

    def clustered(self, tol: float = 1e-7) -> list[tuple[complex, int]]:
        """Greedy clustering for multiplicity reporting; arithmetic never relies on it."""
        out: list[tuple[complex, int]] = []
        taken = np.zeros(len(self.roots), dtype=bool)
        for i, r in enumerate(self.roots):
            if taken[i]:
                continue
            group = np.abs(self.roots - r) <= tol
            group &= ~taken
            taken |= group
            out.append((complex(self.roots[group].mean()), int(group.sum())))
        return out


def _leja_order(rts: np.ndarray) -> np.ndarray:
    """Order roots so successive partial products stay balanced.

    Start from the largest modulus, then repeatedly take the root whose
    product of distances to the chosen ones is largest (tracked in logs).
    Plain left-to-right multiplication can lose all precision at degree
    beyond ~100; this ordering keeps the product ladder well conditioned.
    """
    d = len(rts)
    if d <= 2:
        return rts
    picked = np.zeros(d, dtype=bool)
    order = np.empty(d, dtype=np.intp)
    order[0] = int(np.argmax(np.abs(rts)))
    picked[order[0]] = True
    with np.errstate(divide="ignore"):
        logdist = np.log(np.abs(rts - rts[order[0]]))
    for i in range(1, d):
        logdist[picked] = -np.inf
        nxt = int(np.argmax(logdist))
        order[i] = nxt
        picked[nxt] = True
        with np.errstate(divide="ignore"):
            step = np.log(np.abs(rts - rts[nxt]))
        logdist = logdist + step
    return rts[order]


def _coeffs_from_roots(rts, leading: complex) -> np.ndarray:
    c = np.array([1.0 + 0j])
    for r in _leja_order(np.asarray(rts, dtype=np.complex128)):
        c = np.convolve(c, np.array([-r, 1.0 + 0j]))
    return c * leading


def from_roots(rts, leading: complex = 1.0) -> AlgebraicPoly:
    """Monomial coefficients of leading * prod (z - z_j), with root provenance."""
    rts = [complex(r) for r in rts]
    return AlgebraicPoly(_coeffs_from_roots(rts, complex(leading)), known_roots=tuple(rts))


def _newton_corrections(w: np.ndarray, wrev: np.ndarray, z: np.ndarray) -> np.ndarray:
    """p(z)/p'(z) for monic p, overflow-safe on both sides of the unit circle.

    Direct evaluation is bounded for |z| <= 1; outside, p(z) ~ |z|^d overflows
    at high degree, so with u = 1/z and q(u) = p(z)/z^d the correction is
    computed as z q(u) / (d q(u) - u q'(u)), which only ever evaluates inside
    the disk.
    """
    d = len(w) - 1
    dw = w[1:] * np.arange(1, d + 1)
    dwrev = wrev[1:] * np.arange(1, d + 1)
    out = np.empty_like(z)
    inside = np.abs(z) <= 1.0
    if inside.any():
        zi = z[inside]
        denom = _poly_values(dw, zi)
        denom = np.where(denom == 0, 1e-300, denom)
        out[inside] = _poly_values(w, zi) / denom
    if (~inside).any():
        zo = z[~inside]
        u = 1.0 / zo
        q = _poly_values(wrev, u)
        qd = _poly_values(dwrev, u)
        denom = d * q - u * qd
        denom = np.where(denom == 0, 1e-300, denom)
        out[~inside] = zo * q / denom
    return out


def _initial_points(w: np.ndarray) -> np.ndarray:
    """Slightly perturbed circles at coefficient-based root-modulus estimates.

    The upper convex hull of (k, log|w_k|) splits the roots into annuli: a
    hull segment from k1 to k2 predicts k2 - k1 roots of modulus about
    (|w_k1|/|w_k2|)^(1/(k2-k1)). Starting every point on one circle at the
    Cauchy bound instead can sit so far out that the far-field contraction
    (about 2/d per step) cannot reach the roots within the iteration budget.
    """
    import math

    d = len(w) - 1
    mods = np.abs(w)
    hull: list[tuple[int, float]] = []
    for k in np.nonzero(mods)[0]:
        pt = (int(k), math.log(mods[k]))
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (x2 - x1) * (pt[1] - y1) - (pt[0] - x1) * (y2 - y1) >= 0:
                hull.pop()
            else:
                break
        hull.append(pt)
    radii = np.empty(d)
    pos = 0
    for (k1, y1), (k2, y2) in zip(hull, hull[1:]):
        radii[pos : pos + (k2 - k1)] = math.exp((y1 - y2) / (k2 - k1))
        pos += k2 - k1
    j = np.arange(d)
    angles = 2 * np.pi * (j + 0.35) / d + 1.0 / (d + 3)
    return radii * (1.0 + 0.02 * np.cos(2.7 * j + 0.5)) * np.exp(1j * angles)


def _aberth(w: np.ndarray, tol: float = 1e-14, max_iter: int = 200) -> np.ndarray:
    """Simultaneous (Aberth-Ehrlich) iteration for all roots of a monic polynomial.

    ``w`` holds coefficients a_0..a_{d-1}, 1. Starts on slightly perturbed
    circles at the Newton-polygon modulus estimates; stops once the largest
    simultaneous Newton correction drops below tol * (1 + max|z|).
    """
    d = len(w) - 1
    if d == 1:
        return np.array([-w[0]], dtype=np.complex128)
    z = _initial_points(w)
    wrev = w[::-1].copy()
    for _ in range(max_iter):
        newton = _newton_corrections(w, wrev, z)
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, np.inf)
        s = (1.0 / diff).sum(axis=1)
        with np.errstate(divide="ignore", invalid="ignore"):
            corr = newton / (1.0 - newton * s)
        corr = np.where(np.isfinite(corr), corr, newton)
        z = z - corr
        if np.abs(corr).max() <= tol * (1.0 + np.abs(z).max()):
            break
    return z


def roots(p: AlgebraicPoly) -> RootSet:
    """All effective-degree roots with multiplicity, plus the rebuild residual.

    Exact zero coefficients at the bottom are factored out as exact roots at
    the origin before iterating. Raises ZeroPolynomial on the zero polynomial;
    a nonzero constant yields an empty root set.
    """
    d_eff = p.effective_degree
    if d_eff is None:
        raise ZeroPolynomial("the zero polynomial has no root set")
    c = p.coeffs[: d_eff + 1]
    if d_eff == 0:
        return RootSet(np.zeros(0, dtype=np.complex128), 0.0)
    nz = np.nonzero(c)[0]
    m0 = int(nz[0])  # exact roots at the origin
    work = c[m0:]
    found = [0.0 + 0j] * m0
    if len(work) > 1:
        found.extend(_aberth(work / work[-1]))
    all_roots = np.asarray(found, dtype=np.complex128)
    rebuilt = _coeffs_from_roots(all_roots, c[-1])
    residual = float(np.abs(rebuilt - c).max() / max(np.abs(c).max(), 1e-300))
    return RootSet(all_roots, residual)


_GENERATE_KINDS = (
    "gaussian-random",
    "unimodular-random",
    "extremal-exp",
    "lax-extremal",
    "roots-outside",
)


def generate(kind: str, n: int, seed: int = 0, rho: float | None = None):
    """Deterministic structured/random polynomial families.

    kinds:
      gaussian-random   TrigPoly with standard complex gaussian coefficients
      unimodular-random AlgebraicPoly with |a_k| = 1
      extremal-exp      TrigPoly e^{inx}
      lax-extremal      AlgebraicPoly ((z + rho)/(1 + rho))^n, requires rho >= 1
      roots-outside     AlgebraicPoly with all roots of modulus >= rho
    """
    if n < 0:
        raise InvalidParam("degree must be nonnegative")
    rng = np.random.default_rng(seed)
    if kind == "gaussian-random":
        re = rng.standard_normal(2 * n + 1)
        im = rng.standard_normal(2 * n + 1)
        return TrigPoly((re + 1j * im) / np.sqrt(2.0))
    if kind == "unimodular-random":
        return AlgebraicPoly(np.exp(2j * np.pi * rng.random(n + 1)))
    if kind == "extremal-exp":
        c = np.zeros(2 * n + 1, dtype=np.complex128)
        c[-1] = 1.0
        return TrigPoly(c)
    if kind == "lax-extremal":
        if rho is None or rho < 1.0:
            raise InvalidParam("lax-extremal requires rho >= 1")
        return from_roots([-rho] * n, leading=(1.0 + rho) ** (-n))
    if kind == "roots-outside":
        if rho is None or rho <= 0.0:
            raise InvalidParam("roots-outside requires rho > 0")
        moduli = rho * (1.0 + rng.random(n))
        angles = _TWO_PI * rng.random(n)
        lead = np.exp(2j * np.pi * rng.random()) * (0.5 + rng.random())
        return from_roots(moduli * np.exp(1j * angles), leading=lead)
    raise InvalidParam(f"unknown generator kind {kind!r}; choices: {_GENERATE_KINDS}")


# ---------------------------------------------------------------------------
# JSON interchange
#
# {"type": "alg"|"trig", "degree": n, "coeffs": [[re, im], ...]} with coeffs
# ordered a_0..a_n (alg) or a_{-n}..a_n (trig); exponential sums use
# {"type": "expsum", "bandwidth": lam, "terms": [[re, im, freq], ...]}.
# ---------------------------------------------------------------------------


def poly_to_json(p) -> dict:
    if isinstance(p, AlgebraicPoly):
        kind, deg = "alg", p.degree
    elif isinstance(p, TrigPoly):
        kind, deg = "trig", p.degree
    else:
        raise ParseError(f"cannot serialize object of type {type(p).__name__}")
    return {
        "type": kind,
        "degree": deg,
        "coeffs": [[float(c.real), float(c.imag)] for c in p.coeffs],
    }


def expsum_to_json(f: ExponentialSum) -> dict:
    return {
        "type": "expsum",
        "bandwidth": float(f.bandwidth),
        "terms": [
            [float(a.real), float(a.imag), float(l)]
            for a, l in zip(f.amplitudes, f.frequencies)
        ],
    }


def _pairs_to_complex(pairs) -> np.ndarray:
    try:
        arr = np.asarray([[float(re), float(im)] for re, im in pairs], dtype=np.float64)
    except (TypeError, ValueError) as exc:
        raise ParseError(f"coefficients must be [re, im] pairs: {exc}") from exc
    return arr[:, 0] + 1j * arr[:, 1]


def poly_from_json(obj: dict):
    """Parse the polynomial interchange format, rejecting length mismatches."""
    if not isinstance(obj, dict) or "type" not in obj:
        raise ParseError("polynomial JSON must be an object with a 'type' field")
    kind = obj["type"]
    if kind == "expsum":
        return expsum_from_json(obj)
    try:
        degree = int(obj["degree"])
        coeffs = _pairs_to_complex(obj["coeffs"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad polynomial JSON: {exc}") from exc
    if degree < 0:
        raise ParseError("degree must be nonnegative")
    if kind == "alg":
        if len(coeffs) != degree + 1:
            raise ParseError(
                f"alg coeffs length {len(coeffs)} does not match degree {degree} (need degree+1)"
            )
        return AlgebraicPoly(coeffs)
    if kind == "trig":
        if len(coeffs) != 2 * degree + 1:
            raise ParseError(
                f"trig coeffs length {len(coeffs)} does not match degree {degree} (need 2*degree+1)"
            )
        return TrigPoly(coeffs)
    raise ParseError(f"unknown polynomial type {kind!r}")


def expsum_from_json(obj: dict) -> ExponentialSum:
    try:
        terms = obj["terms"]
        amps = np.asarray([complex(t[0], t[1]) for t in terms])
        freqs = np.asarray([float(t[2]) for t in terms])
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise ParseError(f"bad expsum JSON: {exc}") from exc
    bw = obj.get("bandwidth")
    try:
        return ExponentialSum(amps, freqs, None if bw is None else float(bw))
    except InvalidParam as exc:
        raise ParseError(str(exc)) from exc


def load_poly_file(path):
    """Load a polynomial (or exponential sum) from a JSON file."""
    with open(path, "r", encoding="utf-8") as handle:
        try:
            obj = json.load(handle)
        except json.JSONDecodeError as exc:
            raise ParseError(f"{path}: {exc}") from exc
    return poly_from_json(obj)
