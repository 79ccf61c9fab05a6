import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import special, stats

from swipt_secrecy import specfun
from swipt_secrecy.specfun import GammaShapeRate

shapes = st.floats(0.5, 80.0)
args = st.floats(1e-6, 300.0)


@given(shapes, args)
@settings(max_examples=300, deadline=None)
def test_regularized_matches_scipy(s, x):
    p, q = specfun.regularized_gamma_pq(s, x)
    assert p == pytest.approx(special.gammainc(s, x), rel=1e-11, abs=1e-300)
    assert q == pytest.approx(special.gammaincc(s, x), rel=1e-11, abs=1e-300)


@given(shapes, args)
@settings(max_examples=200, deadline=None)
def test_log_forms_match_scipy_in_the_tails(s, x):
    want = math.log(special.gammaincc(s, x)) if special.gammaincc(s, x) > 0 else None
    if want is not None:
        assert specfun.log_regularized_upper_gamma(s, x) == pytest.approx(want, rel=1e-10, abs=1e-12)


def test_log_upper_tail_beyond_double_underflow():
    # Q(2, 1000) ~ 1001 e^-1000, far below the smallest double
    got = specfun.log_regularized_upper_gamma(2.0, 1000.0)
    assert got == pytest.approx(math.log(1001.0) - 1000.0, rel=1e-13)


@given(shapes, args)
@settings(max_examples=200, deadline=None)
def test_complement_and_recurrence(s, x):
    p, q = specfun.regularized_gamma_pq(s, x)
    assert p + q == pytest.approx(1.0, abs=1e-13)
    lhs = specfun.upper_incomplete_gamma(s + 1.0, x)
    rhs = s * specfun.upper_incomplete_gamma(s, x) + math.exp(s * math.log(x) - x)
    assert lhs == pytest.approx(rhs, rel=1e-10)


@pytest.mark.parametrize("n", [1, 2, 3, 7, 15])
def test_integer_series_identity(n):
    x = np.array([0.1, 1.0, 5.0, 20.0])
    expect = special.gammaincc(n, x) * math.gamma(n)
    np.testing.assert_allclose(specfun.upper_gamma_integer_series(n, x), expect, rtol=1e-12)


def test_integer_series_accepts_negative_argument():
    # Gamma(2, x) = (1 + x) e^-x as a polynomial identity
    assert specfun.upper_gamma_integer_series(2, -0.5) == pytest.approx(0.5 * math.exp(0.5))


def test_edge_values_and_errors():
    assert specfun.regularized_gamma_pq(2.0, 0.0) == (0.0, 1.0)
    assert specfun.upper_incomplete_gamma(3.0, 0.0) == pytest.approx(2.0)
    with pytest.raises(ValueError):
        specfun.regularized_lower_gamma(0.0, 1.0)
    with pytest.raises(ValueError):
        specfun.gamma_cdf(-1.0, GammaShapeRate(2.0, 1.0))


def test_vector_input_returns_array_and_scalar_returns_float():
    assert isinstance(specfun.regularized_upper_gamma(2.0, 1.0), float)
    out = specfun.regularized_upper_gamma(2.0, [0.5, 1.0, 2.0])
    assert out.shape == (3,)


@pytest.mark.parametrize("shape,rate", [(0.6, 2.0), (1.0, 0.5), (2.0, 0.01), (12.5, 3.0)])
def test_gamma_law_matches_scipy(shape, rate):
    g = GammaShapeRate(shape, rate)
    ref = stats.gamma(shape, scale=1.0 / rate)
    x = ref.ppf([0.01, 0.3, 0.5, 0.9, 0.999])
    np.testing.assert_allclose(specfun.gamma_pdf(x, g), ref.pdf(x), rtol=1e-11)
    np.testing.assert_allclose(specfun.gamma_cdf(x, g), ref.cdf(x), rtol=1e-11)
    np.testing.assert_allclose(specfun.gamma_sf(x, g), ref.sf(x), rtol=1e-10)
    assert g.mean == pytest.approx(ref.mean())
    assert g.variance == pytest.approx(ref.var())


@given(st.floats(0.5, 40.0), st.floats(1e-12, 0.999999))
@settings(max_examples=100, deadline=None)
def test_ppf_inverts_cdf(shape, q):
    g = GammaShapeRate(shape, 1.0)
    x = specfun.gamma_ppf(q, g)
    assert specfun.gamma_cdf(x, g) == pytest.approx(q, rel=1e-8)
    xu = specfun.gamma_ppf(q, g, upper=True)
    assert specfun.gamma_sf(xu, g) == pytest.approx(q, rel=1e-8)
