"""Curve data and category-level checks: parameterisations, the curve
database, minimal idempotents of the 4-point algebra, named relations,
braidings, ABA dimension counts and intersections of curves."""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from itertools import product
from pathlib import Path
from typing import Any, Callable, Iterable, Mapping, Sequence

from flint import fmpq, fmpq_mat, fmpq_poly, fmpz_mpoly, fmpz_poly

from .algebra.numfield import ExtElem, ExtensionField, cyclotomic_field, quadratic_field
from .algebra.poly import evaluate, format_poly, parse_poly
from .algebra.ratfunc import RatFunc
from .algebra.resultant import (irreducible_factors, poly_divmod, poly_gcd, resultant, specialise,
                                to_univariate)
from .diagram import (H_diagram, I_diagram, PlanarDiagram, connect, cupcap, glue, par, pentagon,
                      rotate, square, stack, vertex)
from .enumerate import BasisSet, enumerate_basis
from .evaluate import (Evaluator, ExcludedParameters, LinearCombination, RelationSet, _ctx,
                       default_dots, dotted_polygon_inward, g2_values, generic_cubic,
                       pentagon_forests, pentagon_trees, reduce_open, twisted_cubic)
from .gram import GramMatrix, basis_diagrams, gram_matrix, kernel_vectors

# curve database ----------------------------------------------------------------

CURVE_NAMES = ("P_SO3", "P_ABA", "P_G2", "Q_0_1", "Q_1_1", "Q_1_2", "Q_2_3", "Q_2_4_a",
               "Q_2_4_b", "Q_3_4", "Q_3_5", "Q_4_5", "Q_6_9", "Q_omega_9", "Q_omega_60")


@dataclass
class CurveDatabase:
    """Named integer polynomials in ``d``, ``t`` with their source text."""

    polys: dict[str, fmpz_mpoly]
    texts: dict[str, str]

    @classmethod
    def load(cls, extra_dir: str | Path | None = None) -> "CurveDatabase":
        """Bundled polynomials, plus every file in ``extra_dir`` if given."""
        polys, texts = {}, {}
        bundled = resources.files("skein") / "data" / "polynomials"
        sources = [(p.name, p.read_text()) for p in bundled.iterdir() if p.is_file()]
        if extra_dir is not None:
            sources += [(p.name, p.read_text()) for p in sorted(Path(extra_dir).iterdir())
                        if p.is_file()]
        for name, text in sources:
            text = text.strip()
            polys[name] = parse_poly(text)
            texts[name] = text
        return cls(polys, texts)

    def __getitem__(self, name: str) -> fmpz_mpoly:
        return self.polys[name]

    def __contains__(self, name: str) -> bool:
        return name in self.polys

    def names(self) -> list[str]:
        return sorted(self.polys)

    def round_trips(self, name: str) -> bool:
        return format_poly(self.polys[name]) == self.texts[name]

    def ratfunc(self, name: str) -> RatFunc:
        return RatFunc(self.polys[name])


_DB: CurveDatabase | None = None


def curve_db() -> CurveDatabase:
    global _DB
    if _DB is None:
        _DB = CurveDatabase.load()
    return _DB


# parameterisations ----------------------------------------------------------------

def _q_symbol():
    return RatFunc.gens(_ctx("q"))[0]


def so3_params(q=None) -> tuple[Any, Any]:
    """``d = q^2 + 1 + q^-2`` and ``t = (d - 2)/(d - 1)``, the point of the SO(3) curve."""
    if q is None:
        q = _q_symbol()
    if q == 0:
        raise ExcludedParameters("q must be nonzero")
    qi = (q * 0 + 1) / q
    x = q**2 + qi**2
    if x == 0:
        raise ExcludedParameters("q^2 + q^-2 = 0 gives d = 1")
    return x + 1, (x - 1) / x


def g2_params(q=None) -> tuple[Any, Any]:
    """``d = q^10 + q^8 + q^2 + 1 + q^-2 + q^-8 + q^-10`` and
    ``t = -(q^2 - 1 + q^-2)/(q^4 + q^-4)``."""
    if q is None:
        q = _q_symbol()
    v = g2_values(q)
    return v["d"], v["t"]


def on_curve(poly: fmpz_mpoly, d, t) -> bool:
    return evaluate(poly, {"d": d, "t": t}) == 0


# the 4-point stacking algebra -----------------------------------------------------

D4_NAMES = ("par", "cupcap", "I", "H")


def d4_basis() -> list[PlanarDiagram]:
    return [par(), cupcap(), I_diagram(), H_diagram()]


class StackAlgebra:
    """The algebra on ``D(4,0)`` under vertical stacking, reduced by ``relations``.

    Elements are coefficient lists in the order ``∥, ∪∩, I, H``; ``∥`` is the
    unit.  The trace closes point 0 to 1 and 2 to 3.
    """

    def __init__(self, relations: RelationSet):
        self.r = relations
        self.basis = d4_basis()
        target = enumerate_basis(4, 0)
        self.table = []
        for x in self.basis:
            row = []
            for y in self.basis:
                lc = reduce_open(stack(x, y), relations, target)
                row.append([lc.coefficient(b) for b in self.basis])
            self.table.append(row)
        ev = Evaluator(relations)
        self.traces = [ev.evaluate(glue(b, par())) for b in self.basis]

    def mul(self, u: Sequence, v: Sequence) -> list:
        zero = self.r.zero
        out = [zero] * 4
        for i, a in enumerate(u):
            if a == 0:
                continue
            for j, b in enumerate(v):
                if b == 0:
                    continue
                ab = a * b
                for k, c in enumerate(self.table[i][j]):
                    if c != 0:
                        out[k] = out[k] + ab * c
        return out

    def trace(self, u: Sequence):
        total = self.r.zero
        for a, tr in zip(u, self.traces):
            total = total + a * tr
        return total

    def unit(self) -> list:
        return [self.r.one, self.r.zero, self.r.zero, self.r.zero]

    def combination(self, u: Sequence, zero=None) -> LinearCombination:
        return LinearCombination(zip(u, self.basis), self.r.zero if zero is None else zero)


def xi_squared(d, t):
    return d**2 * t**4 + 2 * d * (t**4 - 2 * t**3 - t**2 + 4 * t + 2) + (t**2 - 2 * t - 1)**2


def trace_formula(d, t, xi, sign: int):
    s = sign * xi
    num = d**3 * t**2 + d**2 * (-s + 2 * t**2 + 2 * t - 1) + d * (s + 2 * t + 3) + s - t**2 + 2 * t + 1
    return -num / (2 * s)


@dataclass
class IdempotentQuartet:
    """``ι, x, y₊, y₋`` over ``D(4,0)`` with coefficients in ``base(ξ)``."""

    field: ExtensionField
    xi: ExtElem
    elements: dict[str, list]
    traces: dict[str, Any]
    algebra: StackAlgebra
    checks: dict[str, bool] = field(default_factory=dict)

    def numeric_traces(self) -> dict[str, complex]:
        return {k: v.numeric() if isinstance(v, ExtElem) else complex(v) for k, v in self.traces.items()}


def idempotents(d, t, *, embedding_sign: int = 1, check: bool = True) -> IdempotentQuartet:
    """Minimal idempotents of the 4-point algebra of the cubic category at ``(d, t)``.

    ``ξ`` is adjoined formally as a root of ``ξ² = disc``; when the base has a
    numeric embedding, ``ξ`` is embedded at ``embedding_sign`` times the
    principal square root of ``disc``.  With ``check`` every idempotent and
    orthogonality relation is verified by exact stacking.
    """
    rel = generic_cubic(d, t)
    one, zero = rel.one, rel.zero
    disc = xi_squared(d, t)
    if disc == 0:
        raise ExcludedParameters("ξ vanishes: the 4-point algebra has no basis of projections")
    emb = None
    try:
        emb = embedding_sign * cmath.sqrt(_numeric(disc))
    except (TypeError, ValueError):
        pass
    K = ExtensionField([-disc, zero, 1], name="xi", zero=zero, one=one, embedding=emb)
    xi = K.gen
    lift = K.from_base
    D, T = lift(d), lift(t)
    alg = StackAlgebra(rel)
    elements = {
        "iota": [K(zero), lift(one / d), K(zero), K(zero)],
        "x": [K(zero), K(zero), K(one), K(zero)],
    }
    for name, s in (("y_plus", 1), ("y_minus", -1)):
        sx = xi * s
        elements[name] = [
            (-(D + 1) * T**2 + sx + 1) / (sx * 2),
            (D * (T**2 - 2 * T - 2) - sx + T**2 - 2 * T - 1) / (D * sx * 2),
            -(D * (T + 2) * T + sx + T**2 + 1) / (sx * 2),
            (D * T + D + T) / sx,
        ]
    kalg = _ExtendedAlgebra(alg, K)
    traces = {k: kalg.trace(v) for k, v in elements.items()}
    q = IdempotentQuartet(K, xi, elements, traces, alg)
    if check:
        q.checks = check_quartet(q, d, t)
    return q


class _ExtendedAlgebra:
    """The stacking algebra with scalars extended to a field over its base."""

    def __init__(self, alg: StackAlgebra, field: ExtensionField):
        self.alg, self.K = alg, field
        self.table = [[[field.from_base(c) for c in cell] for cell in row] for row in alg.table]
        self.traces = [field.from_base(c) for c in alg.traces]

    def mul(self, u, v):
        zero = self.K(self.K.zero)
        out = [zero] * 4
        for i, a in enumerate(u):
            if a == 0:
                continue
            for j, b in enumerate(v):
                if b == 0:
                    continue
                ab = a * b
                for k, c in enumerate(self.table[i][j]):
                    if c != 0:
                        out[k] = out[k] + ab * c
        return out

    def trace(self, u):
        total = self.K(self.K.zero)
        for a, tr in zip(u, self.traces):
            total = total + a * tr
        return total


def check_quartet(q: IdempotentQuartet, d, t) -> dict[str, bool]:
    alg = _ExtendedAlgebra(q.algebra, q.field)
    K = q.field
    names = list(q.elements)
    checks = {}
    for a in names:
        checks[f"{a}^2 = {a}"] = alg.mul(q.elements[a], q.elements[a]) == q.elements[a]
    for i, a in enumerate(names):
        for b in names[i + 1:]:
            checks[f"{a}·{b} = 0"] = all(c == 0 for c in alg.mul(q.elements[a], q.elements[b]))
            checks[f"{b}·{a} = 0"] = all(c == 0 for c in alg.mul(q.elements[b], q.elements[a]))
    total = [sum((q.elements[n][k] for n in names), K(K.zero)) for k in range(4)]
    checks["sum = ∥"] = total == [K.from_base(c) for c in q.algebra.unit()]
    dd = K.from_base(d)
    checks["tr ι = 1"] = q.traces["iota"] == 1
    checks["tr x = d"] = q.traces["x"] == dd
    for name, s in (("y_plus", 1), ("y_minus", -1)):
        checks[f"tr {name} formula"] = q.traces[name] == trace_formula(dd, K.from_base(t), q.xi, s)
    checks["tr sum = d^2"] = sum(q.traces.values(), K(K.zero)) == dd * dd
    return checks


def _numeric(x) -> complex:
    if isinstance(x, ExtElem):
        return x.numeric()
    if isinstance(x, RatFunc):
        raise TypeError("symbolic values have no numeric image")
    return complex(x)


def h3_point_field(t_sign: int = 1) -> tuple[Any, Any]:
    """``d = (3 + √13)/2`` and ``t = (1 ± √5)/2`` in ``ℚ(√13)(√5)``."""
    K13 = quadratic_field(13, "s13")
    K5 = ExtensionField([K13(Fraction(-5)), K13(Fraction(0)), 1], name="s5",
                        zero=K13(Fraction(0)), one=K13(Fraction(1)), embedding=cmath.sqrt(5))
    s13 = K5.from_base(K13.gen)
    s5 = K5.gen
    d = (s13 + 3) / 2
    t = (s5 * t_sign + 1) / 2
    return d, t


# named relations -------------------------------------------------------------------

@dataclass
class NamedRelation:
    """One or more relation vectors over a diagram basis with the Gram matrix
    they are checked against."""

    kind: str
    vectors: list[list]
    basis: list[PlanarDiagram]
    gram: GramMatrix
    details: dict = field(default_factory=dict)

    def annihilates(self) -> bool:
        zero = self.gram.entries[0][0] * 0
        for v in self.vectors:
            for row in self.gram.entries:
                s = zero
                for x, c in zip(row, v):
                    if c != 0:
                        s = s + x * c
                if s != 0:
                    return False
        return True

    def combinations(self) -> list[LinearCombination]:
        zero = self.gram.entries[0][0] * 0
        return [LinearCombination(zip(v, self.basis), zero) for v in self.vectors]


def _symbolic_gram(n: int, k: int, variant: str) -> GramMatrix:
    rel = generic_cubic()
    return gram_matrix(basis_diagrams(n, k, variant), rel, Evaluator(rel))


def _specialise(m: GramMatrix, point: Mapping[str, Any]) -> GramMatrix:
    def f(x):
        if isinstance(x, RatFunc):
            return x(point)
        return x
    return m.map(f)


def _index(basis: Sequence[PlanarDiagram], dg: PlanarDiagram) -> int:
    keys = [b.key for b in basis]
    return keys.index(dg.key)


def so3_relation(d=None) -> NamedRelation:
    """``H - I + (∥ - ∪∩)/(d-1)`` against ``M(4,0)`` on the SO(3) curve.

    The kernel of the specialised Gram matrix is computed and normalised so
    that ``H`` has coefficient 1; ``details["expected"]`` holds the closed form.
    """
    if d is None:
        d = RatFunc.gens(_ctx("d"))[0]
    t = (d - 2) / (d - 1)
    m = _specialise(_symbolic_gram(4, 0, "plain"), {"d": d, "t": t})
    vecs = kernel_vectors(m)
    basis = m.basis
    one = d * 0 + 1
    inv = one / (d - 1)
    expected = [0] * len(basis)
    for c, dg in ((one, H_diagram()), (-one, I_diagram()), (inv, par()), (-inv, cupcap())):
        expected[_index(basis, dg)] = c
    normalised = []
    for v in vecs:
        h = v[_index(basis, H_diagram())]
        normalised.append([c / h for c in v] if h != 0 else v)
    return NamedRelation("so3", normalised, basis, m,
                         {"kernel_dimension": len(vecs), "expected": expected,
                          "matches_expected": normalised == [expected]})


def square_relation(d=None, t=None) -> NamedRelation:
    """The square reduction as a vector over ``D(4,1)`` against ``M(4,1)``."""
    rel = generic_cubic(d, t)
    basis = basis_diagrams(4, 1)
    m = gram_matrix(basis, rel, Evaluator(rel))
    v = [rel.zero] * len(basis)
    v[_index(basis, square())] = rel.one
    for c, dg in rel.square:
        v[_index(basis, dg)] = v[_index(basis, dg)] - c
    coeffs = {name: c for name, (c, _) in zip(("I", "H", "par", "cupcap"), rel.square)}
    return NamedRelation("square", [v], basis, m, {"coefficients": coeffs})


def aba_relations(branch: int = 1) -> NamedRelation:
    """The two ζ-weighted tree relations against ``M(5,1)`` at ``t² = t + 1``.

    Works over ``ℚ(ζ₅)(d)`` with ``t = -(ζ² + ζ³)``; ``branch`` picks
    ``ζ = z`` (``t = τ`` under the standard embedding) or ``ζ = z²``
    (``t = τ̄``).  Both ``ζ`` and ``ζ⁻¹`` are returned, so the pair does not
    depend on which rotation direction the trees are listed in.
    """
    dsym = RatFunc.gens(_ctx("d"))[0]
    one = dsym * 0 + 1
    K = cyclotomic_field(5, "z")
    K = ExtensionField([one * c for c in K.modulus[:-1]] + [1], name="z", zero=one * 0, one=one,
                       embedding=K.embedding)
    z = K.gen
    zeta = z if branch == 1 else z**2
    t = -(zeta**2 + zeta**3)
    d = K.from_base(dsym)
    m = _specialise(_symbolic_gram(5, 1, "plain"), {"d": d, "t": t})
    basis = m.basis
    trees = pentagon_trees()
    vecs = []
    for w in (zeta, zeta**4):
        v = [K(K.zero)] * len(basis)
        for i, tr in enumerate(trees):
            v[_index(basis, tr)] = w**i
        vecs.append(v)
    check = (t * t - t - 1) == 0
    return NamedRelation("aba", vecs, basis, m, {"t_on_curve": check, "branch": branch,
                                                  "dimension": len(basis)})


def g2_pentagon_relation(q=None) -> NamedRelation:
    """``pentagon - α(trees) - β(forests)`` against ``M□(5,1)`` along the G2 curve."""
    v = g2_values(q)
    m = _specialise(_symbolic_gram(5, 1, "square"), {"d": v["d"], "t": v["t"]})
    basis = m.basis
    zero = v["one"] * 0
    vec = [zero] * len(basis)
    vec[_index(basis, pentagon())] = v["one"]
    for tr in pentagon_trees():
        vec[_index(basis, tr)] = -v["alpha"]
    for fo in pentagon_forests():
        vec[_index(basis, fo)] = -v["beta"]
    return NamedRelation("g2_pentagon", [vec], basis, m,
                         {"alpha": v["alpha"], "beta": v["beta"]})


def twisted_square_relation(d=None) -> NamedRelation:
    """The inward-dotted square in terms of dotted ``D(4,0)``, checked against
    the twisted Gram matrix of ``D(4,1)``.

    ``details["coefficients"]`` lists the coefficients with their ω-phases;
    each is ``±1/d`` times a power of ω, the phase depending on where the dots
    of that diagram sit.
    """
    rel = twisted_cubic(d)
    basis = [default_dots(x) for x in basis_diagrams(4, 0)] + [dotted_polygon_inward(4)]
    m = gram_matrix(basis, rel, Evaluator(rel))
    vec = [rel.zero] * len(basis)
    vec[-1] = rel.one
    coeffs = {}
    keys = [b.key for b in basis]
    for c, dg in rel.square:
        i = keys.index(dg.key)
        vec[i] = vec[i] - c
        coeffs[i] = c
    w = rel.omega
    dval = rel.loop
    phases = {}
    for i, c in coeffs.items():
        phases[i] = next(((s, k) for s in (1, -1) for k in range(3)
                          if c * dval == w**k * s), None)
    return NamedRelation("twisted_square", [vec], basis, m,
                         {"coefficients": coeffs, "sign_and_omega_power": phases})


def q_omega_consistency(d=Fraction(-1)) -> NamedRelation:
    """Kernel of the twisted ``M□(6,1)`` at ``d = -1``.

    Reports the kernel dimension and a spanning pair of minimal-support
    vectors.  This is a consistency check on the relations only; nothing
    here decides whether such a category exists.
    """
    rel = twisted_cubic(d)
    m = gram_matrix(basis_diagrams(6, 1, "square"), rel, Evaluator(rel))
    vecs = kernel_vectors(m)
    support = lambda v: sum(1 for c in v if c != 0)
    minimal = _minimal_support_pair(vecs) if len(vecs) == 2 else vecs
    return NamedRelation("q_omega", minimal, m.basis, m,
                         {"kernel_dimension": len(vecs), "rank": m.size - len(vecs),
                          "supports": [support(v) for v in minimal]})


def _minimal_support_pair(vecs: list[list]) -> list[list]:
    a, b = vecs
    support = lambda v: sum(1 for c in v if c != 0)
    cands = [a, b]
    for i in range(len(a)):
        if a[i] != 0 and b[i] != 0:
            r = a[i] / b[i]
            cands.append([x - r * y for x, y in zip(a, b)])
    cands.sort(key=support)
    first = cands[0]
    for c in cands[1:]:
        # independent of the first: some 2x2 minor is nonzero
        if any(first[i] * c[j] != first[j] * c[i] for i in range(len(a)) for j in range(i + 1, len(a))
               if first[i] != 0 or c[i] != 0):
            return [first, c]
    return [a, b]


def named_relation(kind: str, **params) -> NamedRelation:
    table: dict[str, Callable[..., NamedRelation]] = {
        "so3": so3_relation,
        "square": square_relation,
        "aba": aba_relations,
        "g2_pentagon": g2_pentagon_relation,
        "twisted_square": twisted_square_relation,
        "q_omega": q_omega_consistency,
    }
    if kind not in table:
        raise ValueError(f"unknown relation {kind!r}; choose from {sorted(table)}")
    return table[kind](**params)


# braiding ---------------------------------------------------------------------------

@dataclass
class CrossingCandidate:
    """``c_par ∥ + c_cc ∪∩ + c_H H + c_I I``; the other crossing is its rotation by one click."""

    c_par: Any
    c_cc: Any
    c_H: Any
    c_I: Any

    def terms(self) -> list[tuple[Any, PlanarDiagram]]:
        return [(c, dg) for c, dg in ((self.c_par, par()), (self.c_cc, cupcap()),
                                      (self.c_H, H_diagram()), (self.c_I, I_diagram())) if c != 0]

    def rotated_terms(self) -> list[tuple[Any, PlanarDiagram]]:
        return [(c, rotate(dg, 1)) for c, dg in self.terms()]


def so3_crossing(q=None) -> CrossingCandidate:
    if q is None:
        q = _q_symbol()
    qi = (q * 0 + 1) / q
    return CrossingCandidate(q**2 - 1, qi**2, -(q**2 + qi**2), q * 0)


def s3_crossing() -> CrossingCandidate:
    return CrossingCandidate(Fraction(0), Fraction(0), Fraction(1), Fraction(1))


def g2_crossing(q=None) -> CrossingCandidate:
    if q is None:
        q = _q_symbol()
    one = q * 0 + 1
    qi = one / q
    s = q + qi
    big = (q**6 + q**4 + q**2 + qi**2 + qi**4 + qi**6) / s
    return CrossingCandidate(q**3 / s, qi**3 / s, -big * q, -big * qi)


def _expand(parts: Sequence, joins, outer, zero) -> LinearCombination:
    """Multilinear expansion: ``parts`` holds diagrams or term lists."""
    slots = [p if isinstance(p, list) else [(1, p)] for p in parts]
    out = LinearCombination(zero=zero)
    for choice in product(*slots):
        coef = 1
        for c, _ in choice:
            coef = coef * c
        out.add(coef, connect([dg for _, dg in choice], joins, outer))
    return out


def pull_through(crossing: list[tuple[Any, PlanarDiagram]], zero) -> tuple[LinearCombination, LinearCombination]:
    """Both sides of moving a strand across a vertex.

    The crossing's points are read as left, bottom, right, top, with the
    strand running from left to right.  The vertex's legs are down,
    up-right, up-left; the outer boundary is left, down, right, up-right,
    up-left.  On one side the strand crosses the down leg, on the other it
    crosses both upper legs.
    """
    # strand above the vertex: crossings A (up-left leg) and B (up-right leg)
    above = _expand([crossing, crossing, vertex()],
                    [((0, 2), (1, 0)), ((0, 1), (2, 2)), ((1, 1), (2, 1))],
                    [(0, 0), (2, 0), (1, 2), (1, 3), (0, 3)], zero)
    # strand below the vertex, crossing the down leg
    below = _expand([crossing, vertex()], [((0, 3), (1, 0))],
                    [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2)], zero)
    return above, below


def _radical_zero(lc: LinearCombination, basis: Sequence[PlanarDiagram], ev: Evaluator, zero) -> bool:
    for b in basis:
        s = zero
        for c, dg in lc.items():
            s = s + c * ev.evaluate(glue(dg, b))
        if s != 0:
            return False
    return True


def _compare(lhs: LinearCombination, rhs: LinearCombination, rel: RelationSet,
             target: BasisSet, ev: Evaluator) -> dict[str, bool]:
    def red(lc):
        out = LinearCombination(zero=rel.zero)
        for c, dg in lc.items():
            for c2, x in reduce_open(dg, rel, target).items():
                out.add(c * c2, x)
        return out
    diff = red(lhs) - red(rhs)
    return {"coefficients_equal": diff.is_zero(),
            "negligible_difference": _radical_zero(diff, list(target), ev, rel.zero)}


def braiding_check(c: CrossingCandidate, rel: RelationSet) -> dict[str, Any]:
    """Reidemeister II and both vertex pull-throughs for ``c`` under ``rel``.

    Each side is reduced to ``D(4,0)`` or ``D(5,0)``.  An axiom passes when
    the difference of the two sides pairs to zero with every basis diagram,
    i.e. it vanishes in the nondegenerate quotient; whether the reduced
    coefficients agree outright is reported alongside.
    """
    zero = rel.zero
    ev = Evaluator(rel)
    d4, d5 = enumerate_basis(4, 0), enumerate_basis(5, 0)
    over = [(rel.one * a, dg) for a, dg in c.terms()]
    under = [(rel.one * a, dg) for a, dg in c.rotated_terms()]
    r2 = _expand([over, under], [((0, 1), (1, 0)), ((0, 2), (1, 3))],
                 [(0, 0), (1, 1), (1, 2), (0, 3)], zero)
    report: dict[str, Any] = {}
    report["R2_detail"] = _compare(r2, LinearCombination([(rel.one, par())], zero), rel, d4, ev)
    for name, cr in (("pull_through_1", over), ("pull_through_2", under)):
        lhs, rhs = pull_through(cr, zero)
        report[f"{name}_detail"] = _compare(lhs, rhs, rel, d5, ev)
    for name in ("R2", "pull_through_1", "pull_through_2"):
        report[name] = report[f"{name}_detail"]["negligible_difference"]
    return report


def crossing_squared_is_identity(c: CrossingCandidate, rel: RelationSet) -> bool:
    over = [(rel.one * a, dg) for a, dg in c.terms()]
    sq = _expand([over, over], [((0, 1), (1, 0)), ((0, 2), (1, 3))],
                 [(0, 0), (1, 1), (1, 2), (0, 3)], rel.zero)
    res = _compare(sq, LinearCombination([(rel.one, par())], rel.zero), rel,
                   enumerate_basis(4, 0), Evaluator(rel))
    return res["negligible_difference"]


# ABA dimensions ----------------------------------------------------------------------

def _fib(k: int) -> int:
    a, b = 0, 1
    for _ in range(k):
        a, b = b, a + b
    return a


def aba_dimension(n: int) -> int:
    """Sum over noncrossing partitions of ``n`` points of ``∏ F_(|block|-1)``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return aba_series(n + 1)[n]


def aba_series(order: int) -> list[int]:
    """Coefficients ``a_0..a_(order-1)``, from the block containing the first point.

    Removing that block (of size ``s``) leaves ``s`` gaps filled independently,
    so ``A = 1 + Σ_s F_(s-1) x^s A^s``.
    """
    a = [0] * order
    if order:
        a[0] = 1
    for n in range(1, order):
        total = 0
        for s in range(1, n + 1):
            f = _fib(s - 1)
            if f:
                total += f * _gap_fillings(a, s, n - s)
        a[n] = total
    return a


def _gap_fillings(a: list[int], gaps: int, points: int) -> int:
    """Coefficient of ``x^points`` in ``A(x)^gaps`` using the known prefix of ``a``."""
    poly = [1] + [0] * points
    for _ in range(gaps):
        nxt = [0] * (points + 1)
        for i, c in enumerate(poly):
            if c:
                for j in range(points + 1 - i):
                    nxt[i + j] += c * a[j]
        poly = nxt
    return poly[points]


def noncrossing_partitions(n: int) -> Iterable[list[list[int]]]:
    """All noncrossing set partitions of ``0..n-1`` (brute-force check route)."""
    def rec(points: list[int]):
        if not points:
            yield []
            return
        first, rest = points[0], points[1:]
        for mask in range(1 << len(rest)):
            block = [first] + [p for i, p in enumerate(rest) if mask >> i & 1]
            gaps = []
            others = [p for i, p in enumerate(rest) if not mask >> i & 1]
            # points between consecutive block members must pair among themselves
            bounds = block + [n + first]
            for lo, hi in zip(bounds, bounds[1:]):
                gaps.append([p for p in others if lo < p < hi])
            if sum(map(len, gaps)) != len(others):
                continue
            yield from _combine(block, [list(rec(g)) for g in gaps])
    yield from rec(list(range(n)))


def _combine(block, gap_parts):
    if not gap_parts:
        yield [block]
        return
    for first in gap_parts[0]:
        for rest in _combine(block, gap_parts[1:]):
            yield first + rest


def aba_dimension_bruteforce(n: int) -> int:
    return sum(_prod(_fib(len(b) - 1) for b in p) for p in noncrossing_partitions(n))


def _prod(xs) -> int:
    out = 1
    for x in xs:
        out *= x
    return out


def generating_function_identity(order: int = 13) -> bool:
    """``G = (1 - xG)/(1 - xG - x²G²)`` holds to ``x^(order-1)``."""
    g = aba_series(order)
    xg = [0] + g[:order - 1]
    x2g2 = [0, 0] + _mul(g, g, order)[:order - 2]
    num = _sub([1] + [0] * (order - 1), xg)
    den = _sub(_sub([1] + [0] * (order - 1), xg), x2g2)
    return _mul(g, den, order) == num


def _mul(a, b, order):
    out = [0] * order
    for i, x in enumerate(a[:order]):
        if x:
            for j, y in enumerate(b[:order - i]):
                out[i + j] += x * y
    return out


def _sub(a, b):
    return [x - y for x, y in zip(a, b)]


# curve intersections ------------------------------------------------------------------

class CommonComponent(ValueError):
    """The two curves share a component, so they meet in infinitely many points."""


@dataclass(frozen=True)
class CurvePoint:
    """Common zeros grouped by field: ``d`` is a root of ``d_minpoly`` and
    ``t`` is ``t_coords`` in the power basis of that root; ``t_minpoly`` is
    the minimal polynomial of ``t`` over ℚ."""

    d_minpoly: tuple[int, ...]
    t_coords: tuple[Fraction, ...]
    t_minpoly: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.d_minpoly) - 1

    def rational(self) -> tuple[Fraction, Fraction] | None:
        if self.degree != 1:
            return None
        c0, c1 = self.d_minpoly
        return Fraction(-c0, c1), self.t_coords[0]

    def describe(self) -> dict[str, Any]:
        out: dict[str, Any] = {"d_minpoly": str(fmpz_poly(list(self.d_minpoly))).replace("x", "d"),
                               "t_minpoly": str(fmpz_poly(list(self.t_minpoly))).replace("x", "t"),
                               "t_in_d": [str(c) for c in self.t_coords]}
        r = self.rational()
        if r is not None:
            out["point"] = [str(r[0]), str(r[1])]
        return out


def intersect_curves(f: fmpz_mpoly, g: fmpz_mpoly) -> list[CurvePoint]:
    """Common zeros of ``f`` and ``g`` with exact coordinates.

    Each irreducible factor ``m(d)`` of ``Res_t(f, g)`` gives the field
    ``ℚ[d]/(m)``; over it ``t`` is the root of ``gcd(f(d, t), g(d, t))``.
    Points are confirmed by substituting back and by checking that the
    minimal polynomial of ``t`` divides ``Res_d(f, g)``.
    """
    common = f.gcd(g)
    if not common.is_constant():
        raise CommonComponent(f"common factor {common}")
    rd = resultant(f, g, "t")
    rt = resultant(f, g, "d")
    if rd.is_zero() or rt.is_zero():
        raise CommonComponent("a resultant vanishes identically")
    rt_uni = to_univariate(rt, "t")
    points = []
    for m, _ in irreducible_factors(to_univariate(rd, "d")):
        K, dval = _root_field(m)
        fu = specialise(f, "d", dval, "t")
        gu = specialise(g, "d", dval, "t")
        h = _squarefree(poly_gcd(fu, gu))
        if len(h) < 2:
            continue
        if len(h) > 2:
            raise NotImplementedError("t is not rational over the field of d; extend further")
        tval = -h[0] / h[1]
        if evaluate(f, {"d": dval, "t": tval}) != 0 or evaluate(g, {"d": dval, "t": tval}) != 0:
            raise ArithmeticError("back-substitution failed")
        tmin = _minimal_polynomial(tval, K)
        if rt_uni % tmin != 0:
            raise ArithmeticError("t-coordinate is not a root of the other resultant")
        coords = tuple(Fraction(c) for c in (tval.coords if isinstance(tval, ExtElem) else (tval,)))
        points.append(CurvePoint(tuple(int(c) for c in m.coeffs()), coords,
                                 tuple(int(c) for c in tmin.coeffs())))
    return points


def _squarefree(h: list) -> list:
    """Squarefree part of a monic polynomial; curves may meet tangentially."""
    if len(h) < 3:
        return h
    dh = [c * i for i, c in enumerate(h)][1:]
    g = poly_gcd(h, dh)
    return poly_divmod(h, g)[0] if len(g) > 1 else h


def _root_field(m: fmpz_poly):
    cs = [int(c) for c in m.coeffs()]
    if len(cs) == 2:
        return None, Fraction(-cs[0], cs[1])
    lead = cs[-1]
    K = ExtensionField([Fraction(c, lead) for c in cs[:-1]] + [1], name="r")
    return K, K.gen


def _minimal_polynomial(x, K) -> fmpz_poly:
    if K is None:
        x = Fraction(x)
        return fmpz_poly([-x.numerator, x.denominator])
    mat = x.multiplication_matrix()
    n = len(mat)
    cp = fmpq_mat(n, n, [fmpq(c.numerator, c.denominator) for row in mat for c in row]).charpoly()
    num = _clear_denominators(cp)
    for fac, _ in irreducible_factors(num):
        if _vanishes(fac, x, K):
            return fac
    raise ArithmeticError("no factor of the characteristic polynomial vanishes")


def _clear_denominators(p: fmpq_poly) -> fmpz_poly:
    return p.numer() if hasattr(p, "numer") else fmpz_poly([int(c * p.denom()) for c in p.coeffs()])


def _vanishes(p: fmpz_poly, x, K) -> bool:
    acc = K(K.zero)
    for c in reversed([int(c) for c in p.coeffs()]):
        acc = acc * x + Fraction(c)
    return acc == 0
