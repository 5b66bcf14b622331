from fractions import Fraction

import pytest

from skein.algebra.poly import CTX
from skein.algebra.ratfunc import RatFunc
from skein.analysis import (CommonComponent, CrossingCandidate, NamedRelation, aba_dimension,
                            aba_dimension_bruteforce, aba_relations, aba_series, braiding_check,
                            crossing_squared_is_identity, curve_db, g2_pentagon_relation,
                            g2_params, generating_function_identity, idempotents,
                            intersect_curves, on_curve, s3_crossing, so3_crossing, so3_params,
                            so3_relation, square_relation)
from skein.evaluate import so3

d, t = CTX.gens()


def test_curve_database_round_trips():
    db = curve_db()
    for name in ("P_ABA", "P_SO3", "P_G2", "Q_1_1", "Q_1_2"):
        assert name in db
    assert all(db.round_trips(n) for n in db.names())
    assert db["Q_1_1"] == d * t + d + t


def test_parameterisations_lie_on_their_curves():
    db = curve_db()
    for q in (Fraction(2), Fraction(-3, 5), Fraction(7, 2)):
        assert on_curve(db["P_SO3"], *so3_params(q))
        assert on_curve(db["P_G2"], *g2_params(q))
        assert not on_curve(db["P_G2"], *so3_params(q))


def test_so3_relation_is_the_kernel():
    rel = so3_relation()
    assert rel.details["kernel_dimension"] == 1
    assert rel.details["matches_expected"]
    assert rel.annihilates()


def test_square_relation_annihilates():
    assert square_relation().annihilates()
    assert square_relation(Fraction(4), Fraction(1, 3)).annihilates()


def test_square_relation_wrong_coefficient_detected():
    rel = square_relation(Fraction(4), Fraction(1, 3))
    bad = NamedRelation(rel.kind, [[c + (1 if i == 0 else 0) for i, c in enumerate(rel.vectors[0])]],
                        rel.basis, rel.gram)
    assert not bad.annihilates()


@pytest.mark.parametrize("branch", [1, 2])
def test_aba_relations(branch):
    rel = aba_relations(branch)
    assert rel.details["t_on_curve"]
    assert rel.annihilates()


def test_aba_relation_wrong_zeta_fails():
    rel = aba_relations(1)
    v = rel.vectors[0]
    # weights ζ^(2i) belong to the other root of t² = t + 1
    w = [c * c for c in v]
    bad = NamedRelation("aba", [w], rel.basis, rel.gram)
    assert not bad.annihilates()


def test_g2_pentagon_relation():
    assert g2_pentagon_relation(Fraction(2)).annihilates()


@pytest.mark.parametrize("d0, t0", [(Fraction(5), Fraction(1, 3)), (Fraction(-7, 2), Fraction(3))])
def test_idempotents(d0, t0):
    q = idempotents(d0, t0)
    assert all(q.checks.values()), q.checks


def test_idempotents_symbolic():
    dd, tt = RatFunc.gens()
    q = idempotents(dd, tt)
    assert all(q.checks.values())


def test_so3_braiding():
    qv = Fraction(3, 2)
    dv, _ = so3_params(qv)
    report = braiding_check(so3_crossing(qv), so3(dv))
    assert report["R2"] and report["pull_through_1"] and report["pull_through_2"]


def test_s3_crossing_is_symmetric():
    rel = so3(Fraction(2))
    report = braiding_check(s3_crossing(), rel)
    assert report["R2"] and report["pull_through_1"] and report["pull_through_2"]
    assert crossing_squared_is_identity(s3_crossing(), rel)


def test_perturbed_crossing_fails():
    qv = Fraction(3, 2)
    dv, _ = so3_params(qv)
    c = so3_crossing(qv)
    bad = CrossingCandidate(c.c_par, c.c_cc + Fraction(1, 7), c.c_H, c.c_I)
    report = braiding_check(bad, so3(dv))
    assert not (report["R2"] and report["pull_through_1"] and report["pull_through_2"])


def test_aba_dimensions():
    assert [aba_dimension(n) for n in range(8)] == aba_series(8)
    for n in range(9):
        assert aba_dimension(n) == aba_dimension_bruteforce(n)
    assert generating_function_identity(13)


def test_intersections_rational_points():
    # the line t = 1 meets d*t + d + t in d = -1/2
    (pt,) = intersect_curves(t - 1, d * t + d + t)
    assert pt.rational() == (Fraction(-1, 2), Fraction(1))


def test_intersections_in_a_number_field():
    pts = intersect_curves(d**2 - 2, t - d)
    assert len(pts) == 1 and pts[0].degree == 2
    assert pts[0].t_minpoly == (-2, 0, 1)


def test_intersections_tangent():
    pts = intersect_curves(t - d**2, t)
    assert [p.rational() for p in pts] == [(0, 0)]


def test_common_component_raises():
    with pytest.raises(CommonComponent):
        intersect_curves((d - t) * (d + 1), (d - t) * t)
