from fractions import Fraction

import pytest
from flint import fmpz_poly, nmod
from hypothesis import given, settings
from hypothesis import strategies as st

from skein.algebra.modular import (balanced, crt_lift, interpolate_polynomial,
                                   interpolate_univariate, prime_list, rational_reconstruct,
                                   staged_lift)
from skein.algebra.numfield import cyclotomic_field, determinant, quadratic_field
from skein.algebra.poly import (CTX, NotDivisible, degree_in, evaluate, exact_divide, format_poly,
                                multiplicity, parse_poly)
from skein.algebra.ratfunc import RatFunc
from skein.algebra.resultant import (irreducible_factors, rational_roots, resultant,
                                     to_univariate)

PRIMES = prime_list(3)
small = st.integers(-50, 50)


def test_parse_roundtrip():
    p = parse_poly("d^2*t^5+2*d*t^5-4*d*t^4-(t-1)^2")
    assert parse_poly(format_poly(p)) == p
    assert parse_poly("d t") == parse_poly("d*t")
    assert degree_in(p, "t") == 5 and degree_in(p, "d") == 2
    with pytest.raises(ValueError):
        parse_poly("d+*t")


def test_multiplicity_and_division():
    d, t = CTX.gens()
    f = d * t + d + t
    a = f**3 * (d - 2)
    m, rest = multiplicity(a, f)
    assert m == 3 and rest == d - 2
    assert exact_divide(a, f**3) == d - 2
    with pytest.raises(NotDivisible):
        exact_divide(a, t)


def test_evaluate_mixed_rings():
    p = parse_poly("d^2-3*d*t+1")
    assert evaluate(p, {"d": Fraction(1, 2), "t": 2}) == Fraction(1, 4) - 3 + 1
    assert evaluate(p, {"d": nmod(3, 7), "t": nmod(5, 7)}) == nmod(9 - 45 + 1, 7)


@given(st.lists(small, min_size=1, max_size=4), st.lists(small, min_size=1, max_size=4),
       small, small)
@settings(max_examples=60, deadline=None)
def test_ratfunc_field_axioms(a, b, x, y):
    d, t = RatFunc.gens()
    u = sum(c * d**i for i, c in enumerate(a)) + t
    v = sum(c * t**i for i, c in enumerate(b)) + d
    assert (u + v) * v == u * v + v * v
    assert (u / v) * v == u
    assert u - u == 0
    pt = {"d": Fraction(x), "t": Fraction(y)}
    uv, vv = u(pt), v(pt)
    if vv != 0:
        assert (u / v)(pt) == uv / vv


def test_ratfunc_reduces_to_lowest_terms():
    d, t = RatFunc.gens()
    x = (d**2 - t**2) / (2 * d - 2 * t)
    assert x == (d + t) / 2
    assert x.den.is_constant()


@given(st.lists(st.integers(-10**30, 10**30), min_size=1, max_size=1))
@settings(max_examples=50, deadline=None)
def test_crt_lift_balanced(xs):
    x = xs[0]
    primes = prime_list(3)
    residues = [(p, x % p) for p in primes]
    assert crt_lift(residues) == x
    m = primes[0]
    assert -m // 2 <= balanced(x, m) <= m // 2


@given(st.lists(st.integers(-10**6, 10**6), min_size=1, max_size=6))
@settings(max_examples=50, deadline=None)
def test_staged_lift_recovers_integer_polynomial(coeffs):
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    primes = [10007, 10009, 10037]
    values = {p: sum(c * p**i for i, c in enumerate(coeffs)) for p in primes}
    assert staged_lift(values) == coeffs


@given(st.integers(-1000, 1000), st.integers(1, 1000))
def test_rational_reconstruction(n, den):
    m = PRIMES[0] * PRIMES[1]
    f = Fraction(n, den)
    a = f.numerator * pow(f.denominator, -1, m) % m
    assert rational_reconstruct(a, m) == (f.numerator, f.denominator)


def test_interpolation():
    p = 10007
    xs = [2, 3, 5, 7]
    ys = [x**3 - x + 4 for x in xs]
    poly = interpolate_polynomial(xs, ys, p)
    assert [int(c) for c in poly.coeffs()] == [4, p - 1, 0, 1]
    # (x+1)/(x-3)
    samples = [(x, (x + 1) * pow(x - 3, -1, p) % p) for x in (4, 5, 6, 8, 9)]
    num, den = interpolate_univariate(samples, p, 1, 1)
    assert [int(c) for c in num.coeffs()] == [1, 1]
    assert [int(c) for c in den.coeffs()] == [p - 3, 1]


def test_quadratic_field_arithmetic():
    K = quadratic_field(5)
    s = K.gen
    phi = (1 + s) / 2
    assert phi * phi == phi + 1
    assert abs(phi.numeric() - 1.6180339887) < 1e-9
    assert (1 / phi) * phi == 1
    assert determinant([[phi, 1], [1, phi - 1]], K.zero, K.one) == 0


def test_cyclotomic_field():
    K = cyclotomic_field(3, "w")
    w = K.gen
    assert w**3 == 1 and w != 1
    assert 1 + w + w * w == 0


def test_resultant_and_roots():
    d, t = CTX.gens()
    f = d - t**2
    g = d - 2 * t - 3
    r = to_univariate(resultant(f, g, "t"), "d")
    # t = 3 or t = -1 give d = 9 or d = 1
    assert sorted(rational_roots(r)) == [1, 9]
    facs = irreducible_factors(fmpz_poly([-2, 0, 1]) * fmpz_poly([1, 1]) ** 2)
    assert facs == [(fmpz_poly([1, 1]), 2), (fmpz_poly([-2, 0, 1]), 1)]
