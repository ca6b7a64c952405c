import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from oracles import rationals
from tuttegold.golden import (PHI, BivarPoly, GoldenNum, RealInterval, UPoly, beraha,
                              certified_compare, golden_interval, golden_sign)

PHI_F = (1 + math.sqrt(5)) / 2
goldens = st.builds(GoldenNum, rationals, rationals)
nonzero = goldens.filter(bool)


def test_phi_squared():
    assert PHI * PHI == PHI + 1


def test_special_values():
    assert PHI ** -2 == GoldenNum(2, -1)
    assert PHI.inverse() == PHI - 1
    assert float(GoldenNum(3, -1)) == pytest.approx((5 - math.sqrt(5)) / 2)
    assert float(PHI + 2) == pytest.approx(2 + 2 * math.cos(2 * math.pi / 10))


@given(goldens, goldens, goldens)
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a - a == 0


@given(nonzero, goldens)
def test_division_inverts_multiplication(a, b):
    assert (b / a) * a == b
    assert a * a.inverse() == 1


@given(nonzero)
def test_norm_is_product_with_conjugate(a):
    assert a * a.conjugate() == GoldenNum(a.norm())


@given(goldens)
def test_sign_agrees_with_high_precision_float(a):
    mp = mpmath.mpf(a.a.numerator) / a.a.denominator + \
        mpmath.mpf(a.b.numerator) / a.b.denominator * mpmath.phi
    expected = 0 if a == 0 else (1 if mp > 0 else -1)
    assert golden_sign(a) == expected


def test_sign_near_cancellation():
    # F_{n+1} - F_n phi tends to zero with alternating sign
    fib = [1, 1]
    for _ in range(60):
        fib.append(fib[-1] + fib[-2])
    for k in range(2, 60):
        x = GoldenNum(fib[k + 1], -fib[k])
        assert golden_sign(x) == (1 if k % 2 else -1)


def test_zero_division():
    with pytest.raises(ZeroDivisionError):
        PHI / GoldenNum(0)


@given(st.integers(-20, 20))
def test_integer_powers(k):
    assert PHI ** k * PHI ** -k == 1
    assert float(PHI ** k) == pytest.approx(PHI_F ** k)


def test_upoly_arithmetic_and_horner():
    x = UPoly.x()
    p = (x - 1) * (x - 2) * (x - 3)
    assert p.coeffs == (-6, 11, -6, 1)
    assert p(PHI ** -2) == -(PHI ** 2)
    assert (x ** 3).divide_by_x() == x ** 2


def test_bivar_evaluation():
    t = BivarPoly({(1, 0): 1, (0, 1): 1, (2, 0): 1})
    assert t(3, 5) == 3 + 5 + 9


def _precise(x):
    man, exp = x.man_exp
    return Fraction(int(man)) * Fraction(2) ** int(exp)


def test_interval_contains_beraha():
    with mpmath.workprec(400):
        for n in (6, 7, 8, 10, 13):
            b = beraha(n)
            true = mpmath.mpf(2) + 2 * mpmath.cos(2 * mpmath.pi / (n + 1))
            assert b.contains(_precise(true))
            assert b.width < Fraction(1, 2 ** 128)


def test_exact_beraha():
    assert beraha(2) == 1
    assert beraha(4) == PHI + 1
    assert beraha(5) == 3
    assert beraha(9) == PHI + 2


def test_golden_interval_encloses():
    iv = golden_interval(GoldenNum(Fraction(1, 3), 7))
    with mpmath.workprec(400):
        assert iv.contains(_precise(mpmath.mpf(1) / 3 + 7 * mpmath.phi))
    assert iv.width < Fraction(1, 2 ** 128)


@settings(max_examples=50)
@given(rationals, rationals)
def test_interval_arithmetic_encloses_point_values(p, q):
    a = RealInterval(p - Fraction(1, 100), p + Fraction(1, 100))
    b = RealInterval(q - Fraction(1, 100), q + Fraction(1, 100))
    for op in (lambda x, y: x + y, lambda x, y: x - y, lambda x, y: x * y):
        assert op(a, b).contains(op(p, q))


def test_certified_compare():
    assert certified_compare(PHI, GoldenNum(1)) == 1
    assert certified_compare(PHI, PHI) == 0
    b6 = beraha(6)
    assert certified_compare(b6, GoldenNum(3)) == 1
    assert certified_compare(b6, b6) is None


def test_immutable():
    with pytest.raises(AttributeError):
        PHI.a = 3
