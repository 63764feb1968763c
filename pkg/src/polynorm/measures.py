"""Exact differentiation as convolution with discrete atomic measures.

Two measures are built here:

* the 2n-atom interpolation measure mu_n with nodes x_r = (2r-1)*pi/(2n) and
  weights c_r = (-1)^(r+1) / (4 n sin^2(x_r/2)), total variation exactly n,
  for which T' = T * mu_n on every trig polynomial of degree <= n;
* the infinite atomic measure of total variation lam that differentiates any
  finite exponential sum of bandwidth <= lam, truncated at odd |k| <= K with
  nodes k*pi/(2*lam) and weight moduli 4*lam/(k^2 pi^2).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import BandwidthExceeded, InvalidParam
from .poly import ExponentialSum, TrigPoly


@dataclass(frozen=True)
class DiscreteMeasure:
    """Finite list of (complex weight, real node) atoms.

    ``truncation_tail`` bounds the total variation of any omitted atoms;
    ``bandwidth`` records the differentiation bandwidth for truncated series
    measures (None for exact finite measures).
    """

    weights: np.ndarray
    nodes: np.ndarray
    truncation_tail: float = 0.0
    bandwidth: float | None = field(default=None, compare=False)

    def __post_init__(self):
        w = np.atleast_1d(np.asarray(self.weights, dtype=np.complex128)).copy()
        t = np.atleast_1d(np.asarray(self.nodes, dtype=np.float64)).copy()
        if w.shape != t.shape or w.ndim != 1:
            raise InvalidParam("weights and nodes must be matching vectors")
        w.flags.writeable = False
        t.flags.writeable = False
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "nodes", t)

    @property
    def total_variation(self) -> float:
        return float(np.abs(self.weights).sum())

    def to_json(self) -> dict:
        return {
            "atoms": [
                [float(c.real), float(c.imag), float(t)]
                for c, t in zip(self.weights, self.nodes)
            ],
            "tail": float(self.truncation_tail),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "DiscreteMeasure":
        atoms = obj["atoms"]
        w = np.asarray([complex(a[0], a[1]) for a in atoms])
        t = np.asarray([float(a[2]) for a in atoms])
        return cls(w, t, truncation_tail=float(obj.get("tail", 0.0)))


def riesz_measure(n: int) -> DiscreteMeasure:
    """The 2n-atom differentiation measure for degree-n trig polynomials.

    Atoms (c_r, x_r), r = 1..2n, with x_r = (2r-1)*pi/(2n) and
    c_r = (-1)^(r+1) / (4 n sin^2(x_r / 2)); the weight moduli sum to n.
    """
    if n < 1:
        raise InvalidParam("the differentiation measure needs n >= 1")
    r = np.arange(1, 2 * n + 1)
    x = (2 * r - 1) * np.pi / (2 * n)
    c = ((-1.0) ** (r + 1)) / (4.0 * n * np.sin(x / 2.0) ** 2)
    return DiscreteMeasure(c.astype(np.complex128), x)


def convolve(t: TrigPoly, mu: DiscreteMeasure, x):
    """sum_r c_r * T(x + t_r) over the atoms; x may be a scalar or an array."""
    scalar = np.isscalar(x)
    xv = np.asarray(x, dtype=np.float64)
    shifted = xv[..., None] + mu.nodes  # (..., atoms)
    vals = t(shifted.ravel()).reshape(shifted.shape) @ mu.weights
    return complex(vals) if scalar else vals


def boas_measure(lam: float, trunc: int = 401) -> DiscreteMeasure:
    """Truncated differentiation measure for bandwidth lam, cut at odd |k| <= trunc.

    Atoms sit at t_k = k*pi/(2*lam) for odd k with weights c_k = i * d_k * i^(-k),
    d_k = 4*lam/(k^2 pi^2): the Fourier coefficients of the 4*lam-periodic
    triangle-wave multiplier vanish at even k != 0 and the k = 0 weight is zero.
    The stored tail is the exact variation of the dropped atoms, at most
    8*lam/(pi^2 * trunc); total variation increases to lam as trunc grows.
    """
    if not (lam > 0) or not math.isfinite(lam):
        raise InvalidParam("bandwidth must be positive and finite")
    if trunc < 1 or trunc % 2 == 0:
        raise InvalidParam("truncation order must be an odd integer >= 1")
    k_pos = np.arange(1, trunc + 1, 2)
    k = np.concatenate([-k_pos[::-1], k_pos])
    d = 4.0 * lam / (k.astype(np.float64) ** 2 * np.pi**2)
    weights = 1j * d * (1j ** (-k.astype(np.float64)))
    nodes = k * np.pi / (2.0 * lam)
    tail = lam - float(d.sum())
    return DiscreteMeasure(weights, nodes, truncation_tail=max(tail, 0.0), bandwidth=lam)


def boas_derivative(f: ExponentialSum, trunc: int = 401,
                    measure: DiscreteMeasure | None = None):
    """(approximation, error bound) for f' as a truncated translate series.

    approximation(x) = sum_k c_k f(x + t_k) over the stored atoms; the bound
    truncation_tail * sum |amplitudes| dominates |approximation(x) - f'(x)|
    for every real x, since sup|f| <= sum |amplitudes|.
    """
    if measure is None:
        measure = boas_measure(f.bandwidth, trunc)
    if measure.bandwidth is None:
        raise InvalidParam("measure was not built for bandlimited differentiation")
    if float(np.abs(f.frequencies).max()) > measure.bandwidth + 1e-12:
        raise BandwidthExceeded(
            f"frequency {np.abs(f.frequencies).max():g} exceeds measure bandwidth "
            f"{measure.bandwidth:g}"
        )
    error_bound = measure.truncation_tail * f.amplitude_sum()

    def approximation(x):
        scalar = np.isscalar(x)
        xv = np.asarray(x, dtype=np.float64)
        shifted = xv[..., None] + measure.nodes
        vals = f(shifted.ravel()).reshape(shifted.shape) @ measure.weights
        return complex(vals) if scalar else vals

    return approximation, float(error_bound)


def riesz_weight_identity(n: int) -> float:
    """(1/(4 n^2)) * sum_{r=1}^{2n} 1/sin^2((2r-1)*pi/(4n)); equals 1 exactly.

    This restates that the differentiation-measure weight moduli sum to n.
    """
    if n < 1:
        raise InvalidParam("n >= 1 required")
    r = np.arange(1, 2 * n + 1)
    s = float(np.sum(1.0 / np.sin((2 * r - 1) * np.pi / (4.0 * n)) ** 2))
    return s / (4.0 * n * n)


def riesz_weight_identity_alt(n: int) -> float:
    """The same sum with the 1/(2 n^2) prefactor variant; evaluates to 2.

    Kept so reports can surface both normalizations side by side.
    """
    return 2.0 * riesz_weight_identity(n)


def euler_partial_sums(terms: int) -> dict:
    """Partial sums of sum (2r-1)^-2 and the pi^2/8, pi^2/6 estimates they give.

    ``normalized`` is 8/pi^2 times the odd partial sum (tends to 1 like 1/terms);
    the pi^2/6 estimate uses the exact relation full = (4/3) * odd.
    """
    if terms < 1:
        raise InvalidParam("need at least one term")
    r = np.arange(1, terms + 1, dtype=np.float64)
    odd_sum = float(np.sum((2.0 * r - 1.0) ** -2))
    return {
        "terms": terms,
        "odd_sum": odd_sum,
        "pi2_over_8_estimate": odd_sum,
        "pi2_over_6_estimate": odd_sum * 4.0 / 3.0,
        "normalized": odd_sum * 8.0 / math.pi**2,
    }
