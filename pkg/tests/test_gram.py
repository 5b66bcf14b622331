import random
from fractions import Fraction

import pytest

from skein.algebra.modular import prime_list
from skein.algebra.numfield import determinant
from skein.algebra.poly import CTX
from skein.algebra.ratfunc import RatFunc
from skein.analysis import curve_db
from skein.diagram import H_diagram, I_diagram, cupcap, par, square
from skein.evaluate import Evaluator, generic_cubic
from skein.gram import (GramMatrix, basis_diagrams, det_exact, det_modular,
                        guess_determinant, gram_matrix, kernel_at_point, omega_normalise,
                        rank_mod_prime, residue, verify_factorization)

d, t = CTX.gens()


@pytest.fixture(scope="module")
def g40():
    rel = generic_cubic()
    return gram_matrix(basis_diagrams(4, 0), rel, Evaluator(rel))


@pytest.fixture(scope="module")
def g50():
    rel = generic_cubic()
    return gram_matrix(basis_diagrams(5, 0), rel, Evaluator(rel))


def test_symmetric_fill_matches_full(g40):
    rel = generic_cubic()
    full = gram_matrix(basis_diagrams(4, 0), rel, full=True)
    assert full.entries == g40.entries
    assert g40.meta["pairing"] == "mirror"


def test_det_exact_two_routes(g50):
    one = RatFunc.const(1)
    direct = determinant([row[:] for row in g50.entries], one * 0, one)
    report = det_exact(g50)
    assert report.value == direct
    db = curve_db()
    dd = RatFunc(d)
    assert report.value == dd**10 * RatFunc(db["P_ABA"])**2 * RatFunc(db["P_SO3"])**4 * \
        RatFunc(db["Q_1_2"])


def test_det_modular_matches_exact(g40):
    value = det_exact(g40).value
    rng = random.Random(2)
    for p in prime_list(4):
        pt = {"d": rng.randrange(2, p), "t": rng.randrange(2, p)}
        try:
            expect = residue(value, p, pt)
        except ZeroDivisionError:
            continue
        assert det_modular(g40, p, pt) == expect


def test_empty_basis_det_is_one():
    m = GramMatrix([], [], "generic_cubic")
    assert det_exact(m).value == 1


def test_verify_accepts_true_claim(g40):
    claim = [(d, 4), (d + t - d * t - 2, 1), (d + t + d * t, 1)]
    report = verify_factorization(g40, claim, trials=20)
    assert report.ok and report.confidence > 1 - Fraction(1, 10**15)


def test_verify_refutes_wrong_exponent(g40):
    claim = [(d, 5), (d + t - d * t - 2, 1), (d + t + d * t, 1)]
    report = verify_factorization(g40, claim, trials=20)
    assert not report.ok and report.confidence == 0
    claim = [(d, 4), (d + t - d * t - 2, 1), (d + t + d * t, 1)]
    assert not verify_factorization(g40, claim, constant=-1).ok


def test_verify_negative_exponents():
    rel = generic_cubic()
    m = gram_matrix([square()], rel)
    report = det_exact(m)
    num, den = report.value.num, report.value.den
    assert not den.is_constant()
    assert verify_factorization(m, [(num, 1), (den, -1)], trials=10).ok


def test_guess_recovers_delta_4_0(g40):
    report = guess_determinant(g40, [101, 103, 107, 109, 113])
    got = report.value
    for f, e in report.factors:
        got = got * RatFunc(f) ** e
    assert got == det_exact(g40).value


def test_kernel_on_so3_curve():
    rel = generic_cubic(Fraction(3), Fraction(1, 2))
    m = gram_matrix(basis_diagrams(4, 0), rel)
    ker = kernel_at_point(m)
    assert len(ker) == 1
    assert rank_mod_prime(gram_matrix(basis_diagrams(4, 0), generic_cubic()), 10007,
                          {"d": 3, "t": pow(2, -1, 10007)}) == 3


def test_kernel_relation_matches_so3_flip():
    dv = Fraction(5)
    m = gram_matrix(basis_diagrams(4, 0), generic_cubic(dv, (dv - 2) / (dv - 1)))
    (ker,) = kernel_at_point(m)
    s = ker.coefficient(H_diagram())
    # H = I - ∥/(d-1) + ∪∩/(d-1)
    assert ker.coefficient(I_diagram()) == -s
    assert ker.coefficient(par()) == s / (dv - 1)
    assert ker.coefficient(cupcap()) == -s / (dv - 1)


@pytest.mark.parametrize("k", range(3))
def test_omega_normalise(k):
    # R = 3 - 2x; multiply by ω^k and write as A + Bω
    a, b = [3, -2], [0, 0]
    for _ in range(k):
        a, b = [-v for v in b], [u - v for u, v in zip(a, b)]
    assert omega_normalise([a, b]) == ([3, -2], k)
    assert omega_normalise([[1], [2]]) is None
