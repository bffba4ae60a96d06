"""Gamma and Gauss hypergeometric evaluation with frozen reference values.

References were computed independently at 30-digit precision (mpmath) and
frozen here as decimal literals.
"""

import math

import pytest

from radialheat import DomainError, NumericError, SpecialValue, gamma_fn, hyp2f1

REL = 1e-13


def test_gamma_frozen_values():
    for x, ref in [
        (0.25, 3.6256099082219083),
        (0.75, 1.2254167024651776),
        (1.25, 0.90640247705547708),
        (2.25, 1.1330030963193463),
        (2.75, 1.6083594219855457),
        (3.25, 2.5492569667185293),
        (0.5, 1.772453850905516),  # sqrt(pi)
    ]:
        out = gamma_fn(x)
        assert math.isclose(out.value, ref, rel_tol=REL), x
        assert out.method == "SERIES"
        assert out.error <= abs(out.value) * 1e-14


def test_gamma_reflection():
    out = gamma_fn(-0.5)
    assert math.isclose(out.value, -2.0 * math.sqrt(math.pi), rel_tol=1e-13)
    assert out.method == "REFLECTION"


def test_gamma_poles():
    for x in (0.0, -1.0, -3.0):
        with pytest.raises(DomainError):
            gamma_fn(x)


def test_gamma_recurrence():
    for x in (0.3, 1.7, 4.2):
        assert math.isclose(gamma_fn(x + 1.0).value, x * gamma_fn(x).value,
                            rel_tol=1e-13)


def test_gamma_product_identity():
    # G(1/4) G(3/4) = pi * sqrt(2)
    prod = gamma_fn(0.25).value * gamma_fn(0.75).value
    assert math.isclose(prod, math.pi * math.sqrt(2.0), rel_tol=1e-14)


def test_hyp2f1_direct_series():
    out = hyp2f1(-0.5, 1.5, 2.25, 2.0 / 3.0)
    assert math.isclose(out.value, 0.73650915281382621, rel_tol=1e-12)
    small = hyp2f1(0.3, 0.7, 1.9, 0.3)
    assert small.method == "SERIES"


def test_hyp2f1_transformed_region():
    out = hyp2f1(0.25, 1.5, 3.0, 5.0 / 6.0)
    assert math.isclose(out.value, 1.1718064274566043, rel_tol=1e-12)
    assert out.method == "TRANSFORMED_SERIES"
    out = hyp2f1(-0.5, 1.5, 2.25, 0.97)
    assert math.isclose(out.value, 0.55100312266696546, rel_tol=1e-12)
    out = hyp2f1(0.3, 0.7, 1.9, 0.95)
    assert math.isclose(out.value, 1.2052508930051755, rel_tol=1e-12)


def test_hyp2f1_integer_gap_falls_back_to_series():
    # c - a - b = 0: the 1-z transformation degenerates; direct series
    # still converges (slowly) and must be used
    out = hyp2f1(1.0, 1.0, 2.0, 0.5)
    assert math.isclose(out.value, 2.0 * math.log(2.0), rel_tol=1e-12)


def test_hyp2f1_at_unit_argument():
    out = hyp2f1(0.25, 1.5, 3.0, 1.0)
    assert math.isclose(out.value, 1.2718123301700163, rel_tol=1e-12)
    out = hyp2f1(-0.5, 1.5, 2.25, 1.0)
    assert math.isclose(out.value, 0.5210570512443992, rel_tol=1e-12)


def test_hyp2f1_unit_argument_divergent_case():
    # converges at z = 1 only when c - a - b > 0
    with pytest.raises((DomainError, NumericError)):
        hyp2f1(1.0, 1.5, 2.0, 1.0)


def test_hyp2f1_terminating_polynomial():
    # a = -2 terminates: F(-2, 1; 1; z) = (1 - z)**2 at any argument
    out = hyp2f1(-2.0, 1.0, 1.0, 3.0)
    assert math.isclose(out.value, 4.0, rel_tol=1e-14)
    assert math.isclose(hyp2f1(-2.0, 1.0, 1.0, 1.0).value, 0.0, abs_tol=1e-14)


def test_special_value_float_protocol():
    out = gamma_fn(0.5)
    assert isinstance(out, SpecialValue)
    assert float(out) == out.value
