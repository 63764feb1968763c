import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polynorm.errors import InvalidParam
from polynorm.kernels import (
    bergman_profile,
    besov_111_bound_constant,
    besov_111_terms,
    besov_inf1_bound_constant,
    deriv_via_kernel,
    dirichlet,
    grid_size,
    second_deriv_via_kernel,
    trig_deriv_via_kernel,
    wiener_bound_constant,
)
from polynorm.norms import disk_mean, sup_norm
from polynorm.poly import AlgebraicPoly, TrigPoly


def _rand_alg(rng, n):
    return AlgebraicPoly((rng.standard_normal(n + 1) + 1j * rng.standard_normal(n + 1)) / np.sqrt(2))


def _rand_trig(rng, n):
    return TrigPoly((rng.standard_normal(2 * n + 1) + 1j * rng.standard_normal(2 * n + 1)) / np.sqrt(2))


def _trig_z_derivative(t: TrigPoly, xi: complex) -> complex:
    n = t.degree
    return sum(k * t.coefficient(k) * xi ** (k - 1) for k in range(-n, n + 1) if k != 0)


# ------------------------------------------------------------ dirichlet kernel

def test_dirichlet_examples():
    assert dirichlet(3, 1.0) == pytest.approx(3.0)
    assert dirichlet(2, -1.0) == pytest.approx(0.0)
    with pytest.raises(InvalidParam):
        dirichlet(0, 1.0)


@settings(max_examples=50, deadline=None)
@given(
    st.integers(min_value=1, max_value=24),
    st.complex_numbers(max_magnitude=3, allow_nan=False, allow_infinity=False),
)
def test_dirichlet_geometric_identity(n, z):
    lhs = dirichlet(n, z) * (1 - z)
    assert abs(lhs - (1 - z**n)) <= 1e-9 * (1 + abs(z) ** n)


# -------------------------------------------------------- first derivative rep

def test_deriv_via_kernel_examples():
    assert deriv_via_kernel(AlgebraicPoly([0, 0, 1]), 1.0) == pytest.approx(2.0, abs=1e-12)
    assert deriv_via_kernel(AlgebraicPoly([4.2]), 0.3 + 0.1j) == pytest.approx(0.0, abs=1e-12)


def test_deriv_via_kernel_matches_direct():
    rng = np.random.default_rng(8)
    for trial in range(40):
        n = int(rng.integers(1, 9))
        p = _rand_alg(rng, n)
        # mix of boundary and interior evaluation points
        xi = np.exp(2j * np.pi * rng.random()) * (1.0 if trial % 2 else rng.random())
        direct = p.derivative()(xi)
        got = deriv_via_kernel(p, xi)
        assert abs(got - direct) <= 1e-10 * (1 + abs(direct))


def test_deriv_via_kernel_rejects_outside():
    with pytest.raises(InvalidParam):
        deriv_via_kernel(AlgebraicPoly([0, 1]), 1.5)


def test_kernel_grid_floor_enforced():
    p = AlgebraicPoly([0, 0, 1])
    with pytest.raises(InvalidParam):
        deriv_via_kernel(p, 0.5, grid=8)  # below 4n+8


# ------------------------------------------------------- second derivative rep

def test_second_deriv_examples():
    for xi in (0.0, 0.7j, np.exp(1j)):
        assert second_deriv_via_kernel(AlgebraicPoly([0, 0, 1]), xi) == pytest.approx(2.0, abs=1e-11)
    assert second_deriv_via_kernel(AlgebraicPoly([3, 2]), 0.5) == pytest.approx(0.0, abs=1e-12)


def test_second_deriv_matches_direct():
    rng = np.random.default_rng(9)
    xi = 0.5 * np.exp(1j * np.pi / 3)
    for trial in range(30):
        p = _rand_alg(rng, int(rng.integers(2, 9)))
        direct = p.derivative().derivative()(xi)
        got = second_deriv_via_kernel(p, xi)
        assert abs(got - direct) <= 1e-9 * (1 + abs(direct))


# ------------------------------------------------------------- trig kernel rep

def test_trig_kernel_examples():
    assert trig_deriv_via_kernel(TrigPoly([1, 0, 1]), 1.0) == pytest.approx(0.0, abs=1e-12)
    assert trig_deriv_via_kernel(TrigPoly([2.0 + 1j]), np.exp(0.3j)) == pytest.approx(0.0, abs=1e-12)
    with pytest.raises(InvalidParam):
        trig_deriv_via_kernel(TrigPoly([1, 0, 1]), 0.9)


def test_trig_kernel_matches_direct():
    rng = np.random.default_rng(10)
    for trial in range(30):
        n = int(rng.integers(1, 9))
        t = _rand_trig(rng, n)
        xi = complex(np.exp(2j * np.pi * rng.random()))
        direct = _trig_z_derivative(t, xi)
        got = trig_deriv_via_kernel(t, xi)
        assert abs(got - direct) <= 1e-10 * (1 + abs(direct))


def test_trig_kernel_reduces_to_analytic():
    rng = np.random.default_rng(11)
    for trial in range(10):
        n = int(rng.integers(1, 8))
        p = _rand_alg(rng, n)
        t = TrigPoly.from_algebraic(p)
        xi = complex(np.exp(2j * np.pi * rng.random()))
        assert abs(trig_deriv_via_kernel(t, xi) - deriv_via_kernel(p, xi)) < 1e-11 * (
            1 + abs(p.derivative()(xi))
        )


# -------------------------------------------------------- quadrature exactness

def test_doubling_leaves_values_unchanged():
    rng = np.random.default_rng(12)
    for trial in range(15):
        n = int(rng.integers(1, 20))
        p = _rand_alg(rng, n)
        t = _rand_trig(rng, n)
        xi_in = 0.6 * np.exp(2j * np.pi * rng.random())
        xi_on = complex(np.exp(2j * np.pi * rng.random()))
        base = grid_size(n)
        for fn, poly, xi in (
            (deriv_via_kernel, p, xi_in),
            (second_deriv_via_kernel, p, xi_in),
            (trig_deriv_via_kernel, t, xi_on),
        ):
            a = fn(poly, xi, grid=base)
            b = fn(poly, xi, grid=2 * base)
            assert abs(a - b) <= 1e-12 * (1 + abs(a))


def test_sup_bound_chain():
    # |P'(xi)| <= n * sup|P| for unimodular xi, via the kernel representation
    rng = np.random.default_rng(13)
    for trial in range(20):
        n = int(rng.integers(1, 10))
        p = _rand_alg(rng, n)
        xi = complex(np.exp(2j * np.pi * rng.random()))
        assert abs(deriv_via_kernel(p, xi)) <= n * sup_norm(p) * (1 + 1e-9)


# ----------------------------------------------------------- explicit constants

def test_wiener_bound_constant():
    assert wiener_bound_constant(0) == 1.0
    assert wiener_bound_constant(3) == 2.0
    assert wiener_bound_constant(8) == 3.0


def test_besov_inf1_bound_constant():
    assert besov_inf1_bound_constant(1) == pytest.approx(1.0)
    assert besov_inf1_bound_constant(2) == pytest.approx(4 / 3)
    assert besov_inf1_bound_constant(3) == pytest.approx(23 / 15)
    # alternate normalization drops the k = 0 term
    assert besov_inf1_bound_constant(3, start_index=1) == pytest.approx(23 / 15 - 1)


def test_besov_111_bound_constant():
    assert besov_111_bound_constant(1) == pytest.approx(2.0, rel=1e-14)
    assert besov_111_bound_constant(1) < 8 / math.pi
    terms = besov_111_terms(40)
    assert np.all(terms > 0)
    ratios = terms[1:] / terms[:-1]
    assert np.all(ratios > 1) and np.all(ratios < 1.6)
    assert terms[-1] < 1.0  # every term below 1 keeps the sum below (8/pi) n


def test_besov_111_terms_against_gamma():
    # independent oracle through lgamma
    got = besov_111_terms(20)
    for k in (0, 1, 5, 19):
        expect = math.exp(
            2 * math.lgamma(k + 1.5) - math.lgamma(k + 1) - math.lgamma(k + 2)
        )
        assert got[k] == pytest.approx(expect, rel=1e-13)


def test_bergman_cross_check():
    # the disk quadrature reproduces the closed-form coefficient sums
    rng = np.random.default_rng(14)
    for n in (1, 2, 5, 16):
        u = complex(np.exp(2j * np.pi * rng.random()))
        got = disk_mean(bergman_profile(n, u), 2.0)
        assert got == pytest.approx(float(besov_111_terms(n).sum()), rel=1e-8)
