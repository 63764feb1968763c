import math

import numpy as np
import pytest

from polynorm import checks as C
from polynorm.errors import (
    InvalidParam,
    NotRealValued,
    OnUnitCircle,
    RootInForbiddenRegion,
)
from polynorm.poly import AlgebraicPoly, TrigPoly, from_roots, generate


def _rand_trig(rng, n):
    return TrigPoly((rng.standard_normal(2 * n + 1) + 1j * rng.standard_normal(2 * n + 1)) / np.sqrt(2))


def _rand_alg(rng, n):
    return AlgebraicPoly((rng.standard_normal(n + 1) + 1j * rng.standard_normal(n + 1)) / np.sqrt(2))


def _monomial(n):
    c = np.zeros(n + 1, dtype=complex)
    c[-1] = 1.0
    return AlgebraicPoly(c)


def _cos_n(n):
    c = np.zeros(2 * n + 1, dtype=complex)
    c[0] = c[-1] = 0.5
    return TrigPoly(c)


# ------------------------------------------------------------------- bernstein

def test_bernstein_equality_family():
    for n in (1, 4, 9):
        t = generate("extremal-exp", n)
        for p in (0.0, 0.25, 0.5, 1.0, 2.0, 4.0, math.inf):
            rep = C.check_bernstein(t, p)
            assert rep.passed
            assert abs(rep.margin) <= 1e-8 * max(rep.bound, 1.0)


def test_bernstein_two_cos_sup():
    rep = C.check_bernstein(TrigPoly([1, 0, 1]), math.inf)
    assert rep.measured == pytest.approx(2.0, rel=1e-10)
    assert rep.bound == pytest.approx(2.0, rel=1e-10)
    assert rep.passed


def test_bernstein_random_sweep():
    rng = np.random.default_rng(41)
    for trial in range(40):
        n = int(rng.integers(1, 17))
        t = _rand_trig(rng, n)
        p = [0.0, 0.5, 1.0, 2.0][trial % 4]
        rep = C.check_bernstein(t, p)
        assert rep.passed, (n, p, rep.measured, rep.bound)


def test_bernstein_degenerate():
    rep = C.check_bernstein(TrigPoly([0.0, 0.0, 0.0]), 2.0)
    assert rep.status == "degenerate" and rep.passed


# ----------------------------------------------------------------- section-3 suite

def test_malik_monomial_equality():
    for n in (1, 3, 8):
        rep = C.check_malik(_monomial(n))
        assert rep.passed
        assert abs(rep.margin) <= 1e-8 * n


def test_malik_self_reciprocal():
    n = 6
    c = np.zeros(n + 1, dtype=complex)
    c[0] = c[-1] = 0.5  # (1 + z^n)/2, equal to its reciprocal
    rep = C.check_malik(AlgebraicPoly(c))
    assert rep.passed


def test_malik_random():
    rng = np.random.default_rng(43)
    for trial in range(30):
        rep = C.check_malik(_rand_alg(rng, int(rng.integers(1, 13))))
        assert rep.passed


def test_laguerre_linear_equality():
    rho = 2.0
    rep = C.check_laguerre(AlgebraicPoly([-rho, 1]), rho)
    # rho |P'| = 2 = |Q'| on the circle: additive margin ~ 0
    assert rep.passed
    assert abs(rep.measured) <= 1e-9


def test_laguerre_generated_family():
    rng = np.random.default_rng(44)
    for rho in (1.0, 1.5, 2.0):
        for trial in range(10):
            p = generate("roots-outside", 4, seed=int(rng.integers(2**31)), rho=rho)
            rep = C.check_laguerre(p, rho)
            assert rep.passed


def test_laguerre_rejects_inside_roots():
    with pytest.raises(RootInForbiddenRegion):
        C.check_laguerre(from_roots([0.5, 3.0]), 1.0)
    with pytest.raises(InvalidParam):
        C.check_laguerre(AlgebraicPoly([-2, 1]), 0.5)


def test_lax_malik_extremal_equality():
    for n, rho in ((2, 1.0), (5, 1.5), (3, 2.0)):
        rep = C.check_lax_malik(generate("lax-extremal", n, rho=rho), rho)
        assert rep.passed
        assert abs(rep.margin) <= 1e-8 * max(rep.bound, 1.0)


def test_lax_malik_linear_equality():
    rep = C.check_lax_malik(AlgebraicPoly([3, 1]), 3.0)
    assert rep.measured == pytest.approx(1.0, rel=1e-10)
    assert rep.bound == pytest.approx(1.0, rel=1e-10)
    assert rep.passed


def test_ankeny_rivlin_example():
    p = generate("lax-extremal", 2, rho=1.0)  # ((z+1)/2)^2
    rep = C.check_ankeny_rivlin(p, 1.0, 2.0)
    assert rep.measured == pytest.approx(9 / 4, rel=1e-10)
    assert rep.bound == pytest.approx(5 / 2, rel=1e-10)
    assert rep.passed


def test_ankeny_rivlin_radius_to_one():
    p = generate("roots-outside", 5, seed=3, rho=1.2)
    margins = []
    for radius in (2.0, 1.5, 1.1, 1.01):
        rep = C.check_ankeny_rivlin(p, 1.2, radius)
        assert rep.passed
        margins.append(rep.margin / rep.bound)
    assert margins[-1] < margins[0]  # margin shrinks as R -> 1+


def test_svdc_cos_equality():
    for n in (1, 4, 7):
        rep = C.check_svdc(_cos_n(n))
        assert rep.passed
        assert abs(rep.margin) <= 1e-10 * max(1.0, n * n)


def test_svdc_half_cos():
    rep = C.check_svdc(TrigPoly([0.25, 0, 0.25]))  # T = cos x / 2 before normalizing
    assert rep.passed
    assert rep.measured <= rep.bound * (1 + 1e-10)


def test_svdc_rejects_complex():
    with pytest.raises(NotRealValued):
        C.check_svdc(TrigPoly([0, 0, 1.0]))


def test_gauss_lucas_examples():
    rep = C.check_gauss_lucas(AlgebraicPoly([-1, 0, 1]))
    assert rep.passed and rep.measured == 0.0
    rep = C.check_gauss_lucas(from_roots([1, 1, 1]))
    assert rep.passed
    rep = C.check_gauss_lucas(AlgebraicPoly([1, 1]))
    assert rep.status == "degenerate"


def test_gauss_lucas_random():
    rng = np.random.default_rng(45)
    for trial in range(25):
        rep = C.check_gauss_lucas(_rand_alg(rng, 12))
        assert rep.passed


# ------------------------------------------------------------------- embeddings

def test_embedding_examples():
    rep = C.check_embedding(_monomial(5), "wiener")
    assert rep.measured == pytest.approx(1.0) and rep.passed
    rep = C.check_embedding(AlgebraicPoly([1, 2]), "besov111")
    assert rep.measured == 0.0 and rep.passed
    p = generate("unimodular-random", 6, seed=2)
    rep = C.check_embedding(p, "wiener")
    assert rep.measured == pytest.approx(7.0, rel=1e-12)
    assert rep.passed
    with pytest.raises(InvalidParam):
        C.check_embedding(p, "sobolev")


def test_embedding_random_all_kinds():
    rng = np.random.default_rng(46)
    for trial in range(12):
        p = _rand_alg(rng, int(rng.integers(1, 11)))
        for kind in ("wiener", "besovinf1", "besov111"):
            rep = C.check_embedding(p, kind)
            assert rep.passed, (kind, rep.measured, rep.bound)


def test_dominated_derivative():
    rng = np.random.default_rng(47)
    for trial in range(12):
        rep = C.check_dominated_derivative(_rand_alg(rng, int(rng.integers(1, 11))))
        assert rep.passed
    rep = C.check_dominated_derivative(_monomial(7))
    assert abs(rep.margin) <= 1e-8 * rep.bound


# -------------------------------------------------------------------- identities

def test_logplus_identity():
    for v in (0.0, 2.0, 0.5, -1.7 + 0.4j, 0.3j):
        rep = C.check_identity_logplus(v)
        assert rep.passed, (v, rep.measured, rep.bound)
    with pytest.raises(OnUnitCircle):
        C.check_identity_logplus(np.exp(0.4j))


def test_power_identity():
    rep = C.check_identity_power(0.0, 1.3)
    assert rep.passed and rep.measured == 0.0
    for u, p in ((1.0, 2.0), (2.0, 0.5), (0.3, 3.7)):
        rep = C.check_identity_power(u, p)
        assert rep.passed
        assert rep.params["rhs"] == pytest.approx(u**p)
    with pytest.raises(InvalidParam):
        C.check_identity_power(-1.0, 2.0)
    with pytest.raises(InvalidParam):
        C.check_identity_power(1.0, 0.0)


def test_chi_power_matches_bernstein_p2():
    rng = np.random.default_rng(48)
    t = _rand_trig(rng, 5)
    chi = C.ChiFunction.power(2.0)
    rep = C.check_chi_version(t, chi)
    bern = C.check_bernstein(t, 2.0)
    # chi = x^2 compares the squared 2-norms
    assert rep.measured == pytest.approx(bern.measured**2, rel=1e-9)
    assert rep.bound == pytest.approx(bern.bound**2, rel=1e-9)
    assert rep.passed


def test_chi_sweep():
    rng = np.random.default_rng(49)
    for name in ("x^0.3", "x^2", "log"):
        chi = C.ChiFunction.parse(name)
        for trial in range(10):
            t = _rand_trig(rng, int(rng.integers(1, 9)))
            assert C.check_chi_version(t, chi).passed


def test_chi_log_equality():
    t = generate("extremal-exp", 4)
    rep = C.check_chi_version(t, C.ChiFunction.log())
    assert rep.measured == pytest.approx(4.0, rel=1e-12)
    assert rep.bound == pytest.approx(4.0, rel=1e-12)


def test_chi_requires_hypothesis_flag():
    bad = C.ChiFunction(name="custom", fn=lambda x: x, monotone_hypothesis=False)
    with pytest.raises(InvalidParam):
        C.check_chi_version(TrigPoly([1, 0, 1]), bad)


def test_mate_nevai_compare():
    rng = np.random.default_rng(50)
    factor_half = (4 * math.e) ** 2
    cmp1 = C.mate_nevai_compare(_rand_alg(rng, 6), 0.5)
    assert cmp1.factor == pytest.approx(factor_half, rel=1e-12)
    assert cmp1.consistent
    cmp2 = C.mate_nevai_compare(_rand_alg(rng, 6), 0.999)
    assert cmp2.factor == pytest.approx(4 * math.e, rel=1e-2)
    assert cmp2.sharp_bound <= cmp2.mate_nevai_bound
    with pytest.raises(InvalidParam):
        C.mate_nevai_compare(_rand_alg(rng, 3), 1.5)


# ------------------------------------------------------------- scale invariance

def test_scale_invariance_of_verdicts():
    rng = np.random.default_rng(51)
    scales = (3.7, 0.02, -5.0 + 2.0j)
    t = _rand_trig(rng, 6)
    p = _rand_alg(rng, 6)
    preal = generate("roots-outside", 5, seed=8, rho=1.5)
    for c in scales:
        for base, scaled in (
            (C.check_bernstein(t, 1.0), C.check_bernstein(t * c, 1.0)),
            (C.check_malik(p), C.check_malik(p * c)),
            (C.check_embedding(p, "wiener"), C.check_embedding(p * c, "wiener")),
        ):
            assert base.passed == scaled.passed
            if base.bound > 0:
                assert scaled.margin / scaled.bound == pytest.approx(
                    base.margin / base.bound, abs=1e-10
                )
        # rho-exclusion checks keep the known-root provenance under scaling
        ps = AlgebraicPoly(np.asarray(preal.coeffs) * c, known_roots=preal.known_roots)
        base = C.check_lax_malik(preal, 1.5)
        scaled = C.check_lax_malik(ps, 1.5)
        assert base.passed == scaled.passed
        assert scaled.margin / scaled.bound == pytest.approx(base.margin / base.bound, abs=1e-10)
        # additive-form and root-only checks: verdicts survive scaling too
        assert C.check_laguerre(ps, 1.5).passed == C.check_laguerre(preal, 1.5).passed
        assert C.check_gauss_lucas(p * c).passed == C.check_gauss_lucas(p).passed
    treal = _rand_trig(rng, 4)
    treal = TrigPoly(treal.coeffs + np.conj(treal.coeffs[::-1]))  # real-valued
    for c in (2.0, 0.125):
        assert C.check_svdc(treal * c).passed == C.check_svdc(treal).passed


def test_report_serialization_shape():
    rep = C.check_bernstein(TrigPoly([1, 0, 1]), 2.0)
    blob = rep.to_json()
    for key in ("check_id", "digest", "measured", "bound", "margin", "tol", "pass", "status"):
        assert key in blob
    assert blob["pass"] is True
