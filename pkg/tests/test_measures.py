import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polynorm.errors import BandwidthExceeded, InvalidParam
from polynorm.measures import (
    DiscreteMeasure,
    boas_derivative,
    boas_measure,
    convolve,
    euler_partial_sums,
    riesz_measure,
    riesz_weight_identity,
    riesz_weight_identity_alt,
)
from polynorm.poly import ExponentialSum, TrigPoly, generate


def _rand_trig(rng, n):
    return TrigPoly((rng.standard_normal(2 * n + 1) + 1j * rng.standard_normal(2 * n + 1)) / np.sqrt(2))


# ------------------------------------------------------------ the 2n-atom rule

def test_riesz_measure_n1():
    mu = riesz_measure(1)
    assert np.allclose(mu.nodes, [np.pi / 2, 3 * np.pi / 2])
    assert np.allclose(mu.weights, [0.5, -0.5])
    assert mu.total_variation == pytest.approx(1.0, abs=1e-15)
    assert mu.truncation_tail == 0.0


def test_riesz_measure_total_variation():
    for n in (1, 2, 3, 17, 64, 128):
        mu = riesz_measure(n)
        assert len(mu.weights) == 2 * n
        assert mu.total_variation == pytest.approx(n, rel=1e-12)


def test_riesz_measure_invalid():
    with pytest.raises(InvalidParam):
        riesz_measure(0)


def test_riesz_differentiates_exponential():
    mu = riesz_measure(1)
    t = generate("extremal-exp", 1)  # e^{ix}
    assert convolve(t, mu, 0.0) == pytest.approx(1j, abs=1e-14)


def test_convolve_identity_atom():
    mu = DiscreteMeasure([1.0 + 0j], [0.0])
    rng = np.random.default_rng(1)
    t = _rand_trig(rng, 4)
    xs = rng.uniform(0, 2 * np.pi, 20)
    assert np.abs(convolve(t, mu, xs) - t(xs)).max() < 1e-14


def test_convolve_constant_annihilated():
    # the alternating weights cancel on constants: brute-force weight sum is 0
    for n in (1, 2, 5, 9):
        mu = riesz_measure(n)
        assert abs(mu.weights.sum()) < 1e-12 * n
        t = TrigPoly([2.5 + 1j])
        assert abs(convolve(t, mu, 0.7)) < 1e-12 * n


def test_riesz_exactness_random():
    rng = np.random.default_rng(3)
    xs = np.linspace(0, 2 * np.pi, 64, endpoint=False)
    for n in (1, 2, 5, 13, 32, 64):
        mu = riesz_measure(n)
        for trial in range(10):
            t = _rand_trig(rng, n)
            sup_proxy = np.abs(t(xs)).max()
            resid = np.abs(convolve(t, mu, xs) - t.derivative()(xs)).max()
            assert resid <= 1e-9 * n * sup_proxy


@settings(max_examples=40, deadline=None)
@given(
    st.integers(min_value=1, max_value=24),
    st.integers(min_value=0, max_value=2**32 - 1),
    st.floats(min_value=0.0, max_value=2 * np.pi),
)
def test_riesz_exactness_property(n, seed, x):
    t = generate("gaussian-random", n, seed=seed)
    mu = riesz_measure(n)
    got = convolve(t, mu, x)
    want = t.derivative()(x)
    scale = float(np.abs(t.coeffs).sum())
    assert abs(got - want) <= 1e-10 * n * max(scale, 1e-6)


@settings(max_examples=40, deadline=None)
@given(
    st.floats(min_value=1e-3, max_value=50.0),
    st.integers(min_value=0, max_value=400),
)
def test_boas_tail_law_property(lam, half_k):
    trunc = 2 * half_k + 1
    mu = boas_measure(lam, trunc)
    assert mu.total_variation <= lam + 1e-12 * lam
    assert mu.total_variation + mu.truncation_tail == pytest.approx(lam, rel=1e-12)
    assert mu.truncation_tail <= 8 * lam / (np.pi**2 * trunc)


def test_riesz_exactness_lower_degree():
    # the degree-n rule stays exact on polynomials of degree below n
    rng = np.random.default_rng(4)
    mu = riesz_measure(9)
    t = _rand_trig(rng, 6).to_algebraic()  # degree 12 lift, pad to degree 9 trig
    t9 = TrigPoly(np.concatenate([np.zeros(3), t.coeffs, np.zeros(3)]))
    xs = np.linspace(0, 2 * np.pi, 32, endpoint=False)
    resid = np.abs(convolve(t9, mu, xs) - t9.derivative()(xs)).max()
    assert resid < 1e-10


def test_sharpness_transfer():
    # |T'(x)| <= n * max over the translated node set of |T|
    rng = np.random.default_rng(5)
    for n in (1, 3, 8):
        mu = riesz_measure(n)
        for trial in range(20):
            t = _rand_trig(rng, n)
            for x in rng.uniform(0, 2 * np.pi, 4):
                node_max = np.abs(t(x + mu.nodes)).max()
                assert abs(t.derivative()(x)) <= n * node_max * (1 + 1e-10)


# -------------------------------------------------------- the truncated series

def test_boas_measure_k1():
    mu = boas_measure(1.0, 1)
    assert np.allclose(mu.nodes, [-np.pi / 2, np.pi / 2])
    assert np.allclose(np.abs(mu.weights), [4 / np.pi**2, 4 / np.pi**2])
    assert mu.bandwidth == 1.0


def test_boas_measure_structure():
    lam = 2.3
    mu = boas_measure(lam, 99)
    # atoms only at odd multiples of pi/(2 lam)
    k = mu.nodes * 2 * lam / np.pi
    assert np.allclose(k, np.round(k))
    assert np.all(np.abs(np.round(k).astype(int)) % 2 == 1)
    # variation + tail add to lam exactly, and the tail obeys the 1/K law
    assert mu.total_variation <= lam
    assert mu.total_variation + mu.truncation_tail == pytest.approx(lam, abs=1e-12)
    assert mu.truncation_tail <= 8 * lam / (np.pi**2 * 99)


def test_boas_measure_convergence():
    lam = 1.0
    tvs = [boas_measure(lam, K).total_variation for K in (1, 11, 101, 1001)]
    assert all(b > a for a, b in zip(tvs, tvs[1:]))
    assert tvs[-1] == pytest.approx(lam, abs=1e-3)


def test_boas_measure_invalid():
    with pytest.raises(InvalidParam):
        boas_measure(0.0, 3)
    with pytest.raises(InvalidParam):
        boas_measure(1.0, 4)  # even truncation


def test_boas_derivative_single_frequency():
    lam0 = 0.8
    f = ExponentialSum([1.0], [lam0], bandwidth=1.0)
    approx, bound = boas_derivative(f, 2001)
    xs = np.linspace(-3, 3, 50)
    resid = np.abs(approx(xs) - f.derivative_values(xs)).max()
    assert resid <= bound
    assert bound < 2e-3


def test_boas_derivative_constant():
    f = ExponentialSum([1.0], [0.0], bandwidth=1.0)
    mu = boas_measure(1.0, 401)
    approx, bound = boas_derivative(f, measure=mu)
    assert abs(approx(0.3)) <= bound


def test_boas_derivative_mixture():
    f = ExponentialSum([1.0, 1.0], [1.0, np.pi / 4], bandwidth=1.5)
    approx, bound = boas_derivative(f, 401)
    xs = np.linspace(-5, 5, 100)
    resid = np.abs(approx(xs) - f.derivative_values(xs)).max()
    assert resid <= bound
    assert bound <= 8 * 1.5 / (np.pi**2 * 401) * f.amplitude_sum()


def test_boas_bandwidth_exceeded():
    f = ExponentialSum([1.0], [2.0])
    mu = boas_measure(1.0, 41)
    with pytest.raises(BandwidthExceeded):
        boas_derivative(f, measure=mu)


def test_measure_json_round_trip():
    mu = boas_measure(1.5, 21)
    back = DiscreteMeasure.from_json(mu.to_json())
    assert np.allclose(back.weights, mu.weights)
    assert np.allclose(back.nodes, mu.nodes)
    assert back.truncation_tail == pytest.approx(mu.truncation_tail)


# ----------------------------------------------------------- weight identities

def test_weight_identity():
    for n in (1, 2, 7, 50, 128):
        assert riesz_weight_identity(n) == pytest.approx(1.0, rel=1e-12)
        assert riesz_weight_identity_alt(n) == pytest.approx(2.0, rel=1e-12)


def test_euler_partial_sums():
    out = euler_partial_sums(10000)
    assert out["normalized"] == pytest.approx(1.0, abs=2e-4)
    assert out["pi2_over_8_estimate"] == pytest.approx(np.pi**2 / 8, abs=5e-5)
    assert out["pi2_over_6_estimate"] == pytest.approx(np.pi**2 / 6, abs=5e-5)
