"""Gram matrices of diagram pairings with exact, multimodular and randomised
determinant work, kernels at algebraic points and ranks modulo primes."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import prod
from typing import Any, Callable, Mapping, Sequence

from flint import fmpz_mpoly, fmpz_poly, nmod_mat, nmod_poly

from .algebra.modular import (PRIME_FLOOR, crt_lift, is_prime, random_prime,
                              rational_reconstruct, staged_lift)
from .algebra.numfield import ExtElem
from .algebra.poly import CTX, const, degree_in, exact_divide
from .algebra.ratfunc import RatFunc
from .diagram import PlanarDiagram, glue, sphere_join
from .enumerate import BasisSet, enumerate_basis
from .evaluate import Evaluator, LinearCombination, RelationSet, default_dots, dotted_polygon_inward


@dataclass
class GramMatrix:
    """Pairings ``entries[i][j] = evaluate(glue(basis[i], basis[j]))``."""

    basis: list[PlanarDiagram]
    entries: list[list]
    relations: str
    params: Mapping[str, Any] = field(default_factory=dict)
    meta: dict = field(default_factory=dict)

    @property
    def size(self) -> int:
        return len(self.basis)

    def minor(self, keep: Sequence[int]) -> "GramMatrix":
        return GramMatrix([self.basis[i] for i in keep],
                          [[self.entries[i][j] for j in keep] for i in keep],
                          self.relations, self.params, dict(self.meta, minor=list(keep)))

    def map(self, f: Callable) -> "GramMatrix":
        return GramMatrix(self.basis, [[f(x) for x in row] for row in self.entries],
                          self.relations, self.params, dict(self.meta))


def basis_diagrams(n: int, k: int, variant: str = "plain") -> list[PlanarDiagram]:
    return list(enumerate_basis(n, k, variant).members)


def gram_matrix(basis: Sequence[PlanarDiagram] | BasisSet, relations: RelationSet,
                evaluator: Evaluator | None = None, pairing: str | None = None,
                full: bool = False, offset: int | None = None) -> GramMatrix:
    """Gram matrix of ``basis`` under ``relations``.

    ``pairing="mirror"`` glues ``basis[i]`` to the mirror image of ``basis[j]``;
    ``"sphere"`` closes ``basis[i]`` with ``basis[j]`` placed outside it
    unmirrored, point ``i`` meeting point ``offset-i`` (default ``n-1``).  Both
    pairings are symmetric, so only the upper triangle is evaluated unless
    ``full``.  Determinant signs of the two pairings can differ by the sign of
    the boundary relabelling acting on the basis.  Twisted
    relations default to the sphere pairing, since mirroring a dotted vertex
    inverts its rotation eigenvalue; twisted bases are dotted by
    :func:`~skein.evaluate.default_dots`.
    """
    ev = evaluator or Evaluator(relations)
    basis = list(basis)
    pairing = pairing or ("sphere" if relations.twisted else "mirror")
    if pairing not in ("mirror", "sphere"):
        raise ValueError(f"unknown pairing {pairing!r}")
    meta = {"pairing": pairing}
    if pairing == "sphere":
        offset = (basis[0].n - 1 if basis else 0) if offset is None else offset
        meta["offset"] = offset
    if relations.twisted:
        basis = [x if x.dots is not None else default_dots(x) for x in basis]
        meta["dots"] = "corner before the dart of first arrival in canonical order"
    if pairing == "mirror":
        join = glue
    else:
        join = lambda x, z: sphere_join(x, z, offset)
    symmetric = not full
    N = len(basis)
    entries = [[None] * N for _ in range(N)]
    for i in range(N):
        for j in range(i if symmetric else 0, N):
            v = ev.evaluate(join(basis[i], basis[j]))
            entries[i][j] = v
            if symmetric:
                entries[j][i] = v
    return GramMatrix(basis, entries, relations.name, dict(relations.params), meta)


def omega_normalise(coords: Sequence[Sequence[int]]) -> tuple[list[int], int] | None:
    """Write ``A + Bω`` (integer coefficient lists) as ``ω^k R`` with ``R`` real.

    Returns ``(R, k)`` or ``None`` when no power of ``ω`` makes it real.
    """
    a = list(coords[0]) if coords else []
    b = list(coords[1]) if len(coords) > 1 else []
    n = max(len(a), len(b))
    a += [0] * (n - len(a))
    b += [0] * (n - len(b))
    for k in range(3):
        # multiply by ω^(-k) = ω^(2k); ω(x + yω) = -y + (x - y)ω
        x, y = a, b
        for _ in range((-k) % 3):
            x, y = [-v for v in y], [u - v for u, v in zip(x, y)]
        if all(v == 0 for v in y):
            while x and x[-1] == 0:
                x.pop()
            return x, k
    return None


# reports ---------------------------------------------------------------------------

@dataclass
class DetReport:
    method: str
    value: Any = None
    factors: list = field(default_factory=list)
    confidence: Fraction | int = 1
    seed: int | None = None
    runtime: float = 0.0
    details: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.details.get("refuted") is None


# specialisation modulo a prime --------------------------------------------------------

def residue(x, prime: int, values: Mapping[str, int]) -> int:
    """Image of an exact scalar modulo ``prime``; ``values`` gives residues of
    the variables and of extension generators (by field name)."""
    if isinstance(x, int):
        return x % prime
    if isinstance(x, Fraction):
        if x.denominator % prime == 0:
            raise ZeroDivisionError("denominator vanishes modulo the prime")
        return x.numerator * pow(x.denominator, -1, prime) % prime
    if isinstance(x, RatFunc):
        den = _poly_residue(x.den, prime, values)
        if den == 0:
            raise ZeroDivisionError("denominator vanishes at the point")
        return _poly_residue(x.num, prime, values) * pow(den, -1, prime) % prime
    if isinstance(x, fmpz_mpoly):
        return _poly_residue(x, prime, values)
    if isinstance(x, ExtElem):
        g = values[x.field.name] % prime
        total, power = 0, 1
        for c in x.coords:
            total = (total + residue(c, prime, values) * power) % prime
            power = power * g % prime
        return total
    return int(x) % prime


def _poly_residue(p: fmpz_mpoly, prime: int, values: Mapping[str, int]) -> int:
    names = p.context().names()
    return int(p(*[values[n] % prime for n in names])) % prime


def det_mod(rows: Sequence[Sequence[int]], prime: int) -> int:
    if not rows:
        return 1 % prime
    return int(nmod_mat([list(r) for r in rows], prime).det())


def det_modular(m: GramMatrix, prime: int, values: Mapping[str, int]) -> int:
    """Determinant of ``m`` specialised at ``values`` modulo ``prime``."""
    rows = [[residue(x, prime, values) for x in row] for row in m.entries]
    return det_mod(rows, prime)


def rank_mod(rows: Sequence[Sequence[int]], prime: int) -> int:
    if not rows or not rows[0]:
        return 0
    return nmod_mat([list(r) for r in rows], prime).rank()


# exact determinants ---------------------------------------------------------------

def bareiss(mat: list[list], one=1, divide: Callable | None = None):
    """Fraction-free determinant over an integral domain with exact division."""
    n = len(mat)
    if n == 0:
        return one
    a = [list(r) for r in mat]
    div = divide or (lambda x, y: x / y)
    sign = 1
    prev = one
    for k in range(n - 1):
        if a[k][k] == 0:
            piv = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if piv is None:
                return a[k][k] * 0
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = div(a[i][j] * a[k][k] - a[i][k] * a[k][j], prev)
        prev = a[k][k]
    return a[n - 1][n - 1] if sign > 0 else -a[n - 1][n - 1]


@dataclass
class Lift:
    """Row-scaled integer polynomial form of a matrix over ``ℚ(vars)`` or an
    extension of it: ``det M = det P / prod(scales)``.  Each entry of ``P`` is
    the list of power-basis coordinates of the scaled entry."""

    scales: list[fmpz_mpoly]
    rows: list[list[list[fmpz_mpoly]]]
    ctx: Any
    gen: str | None = None

    @property
    def size(self) -> int:
        return len(self.rows)

    def degree_bound(self, var: str) -> int:
        return sum(max((max((degree_in(c, var) for c in e), default=0) for e in row), default=0)
                   for row in self.rows)

    def total_degree_bound(self) -> int:
        return sum(max((max((_total_degree(c) for c in e), default=0) for e in row), default=0)
                   for row in self.rows)

    def coefficient_bound(self) -> int:
        """Bound on the absolute value of every coefficient of ``det P``."""
        width = len(self.rows[0][0]) if self.rows and self.rows[0] else 1
        b = 1
        for row in self.rows:
            b *= max(1, sum(sum(abs(int(x)) for c in e for x in c.coeffs()) for e in row))
        # products in Z[ω] can double the 1-norm
        return b * (2 ** (len(self.rows) * (width - 1)))

    def denominator(self) -> fmpz_mpoly:
        return prod(self.scales, start=const(1, self.ctx))


def _total_degree(p: fmpz_mpoly) -> int:
    return int(max((sum(m) for m in p.monoms()), default=0))


def lift_matrix(entries: Sequence[Sequence], ctx=None) -> Lift:
    """Clear denominators row by row (least common multiple of the row's denominators)."""
    gen = None
    coords_rows = []
    for row in entries:
        crow = []
        for x in row:
            if isinstance(x, ExtElem):
                gen = x.field.name
                crow.append([_as_rf(c, ctx) for c in x.coords])
            else:
                crow.append([_as_rf(x, ctx)])
        coords_rows.append(crow)
    if ctx is None:
        ctx = next((c.context() for row in coords_rows for e in row for c in e
                    if isinstance(c, RatFunc)), CTX)
    scales, rows = [], []
    for crow in coords_rows:
        L = const(1, ctx)
        for e in crow:
            for c in e:
                c = _as_rf(c, ctx)
                if not c.den.is_one():
                    g = L.gcd(c.den)
                    L = L * exact_divide(c.den, g)
        if L.leading_coefficient() < 0:
            L = -L
        scales.append(L)
        rows.append([[exact_divide(_as_rf(c, ctx).num * L, _as_rf(c, ctx).den) for c in e]
                     for e in crow])
    return Lift(scales, rows, ctx, gen)


def _as_rf(x, ctx) -> RatFunc:
    if isinstance(x, RatFunc):
        return x
    return RatFunc.const(Fraction(x), ctx or CTX)


def det_exact(m: GramMatrix, recheck: int = 3, seed: int = 0) -> DetReport:
    """Exact determinant by fraction-free elimination.

    Rational-function entries are lifted to integer polynomials row by row and
    the determinant is returned as a :class:`RatFunc`; the raw lift is kept in
    ``details``.  The result is re-checked at ``recheck`` random modular points.
    """
    start = time.time()
    N = m.size
    if N == 0:
        return DetReport("fraction_free", 1, runtime=0.0)
    sample = m.entries[0][0]
    details: dict = {}
    if isinstance(sample, RatFunc):
        lift = lift_matrix(m.entries)
        one = const(1, lift.ctx)
        P = [[e[0] for e in row] for row in lift.rows]
        detP = bareiss(P, one, exact_divide)
        value = RatFunc(detP, lift.denominator())
        details["lift_det"] = detP
        details["lift_scales"] = lift.scales
    elif isinstance(sample, ExtElem):
        from .algebra.numfield import determinant
        value = determinant(m.entries, sample.field.zero, sample.field.one)
        value = sample.field(value.coords) if isinstance(value, ExtElem) else sample.field.from_base(value)
    else:
        value = bareiss([[Fraction(x) for x in row] for row in m.entries], Fraction(1))
    report = DetReport("fraction_free", value, runtime=time.time() - start, seed=seed, details=details)
    if recheck and isinstance(value, RatFunc):
        rng = random.Random(seed)
        names = value.context().names()
        done = 0
        while done < recheck:
            p = random_prime(rng)
            vals = {n: rng.randrange(2, p) for n in names}
            try:
                lhs = det_modular(m, p, vals)
                rhs = residue(value, p, vals)
            except ZeroDivisionError:
                continue
            if lhs != rhs:
                raise ArithmeticError("exact determinant disagrees with a modular evaluation")
            done += 1
        report.details["rechecked"] = done
    return report


# univariate determinant polynomials modulo a prime ----------------------------------------

def _entry_to_nmod_poly(coords: list[fmpz_mpoly], var: str, prime: int,
                        values: Mapping[str, int]) -> nmod_poly:
    """Specialise every variable except ``var`` (and the extension generator) mod ``prime``."""
    total = nmod_poly([], prime)
    gen = values.get("__gen__", 1)
    gpow = 1
    for c in coords:
        if not c.is_zero():
            names = c.context().names()
            idx = names.index(var)
            coeffs: dict[int, int] = {}
            for mono, a in zip(c.monoms(), c.coeffs()):
                v = int(a)
                for j, e in enumerate(mono):
                    if j != idx and e:
                        v = v * pow(values[names[j]], e, prime)
                coeffs[mono[idx]] = (coeffs.get(mono[idx], 0) + v) % prime
            top = max(coeffs)
            total += nmod_poly([coeffs.get(i, 0) for i in range(top + 1)], prime) * gpow
        gpow = gpow * gen % prime
    return total


def det_polynomial_mod(lift: Lift, var: str, prime: int, values: Mapping[str, int],
                       degree: int | None = None, rng: random.Random | None = None) -> nmod_poly:
    """``det P`` as a polynomial in ``var`` modulo ``prime`` with the other
    variables fixed, by evaluation at ``degree + 1`` points and interpolation."""
    if degree is None:
        degree = lift.degree_bound(var)
    polys = [[_entry_to_nmod_poly(e, var, prime, values) for e in row] for row in lift.rows]
    rng = rng or random.Random(prime)
    xs: list[int] = []
    seen = set()
    while len(xs) < degree + 1:
        x = rng.randrange(1, prime)
        if x not in seen:
            seen.add(x)
            xs.append(x)
    ys = []
    for x in xs:
        rows = [[int(f(x)) for f in row] for row in polys]
        ys.append(det_mod(rows, prime))
    from .algebra.modular import interpolate_polynomial
    return interpolate_polynomial(xs, ys, prime)


def exact_univariate_det(lift: Lift, var: str, gen_minpoly: Sequence[int] | None = None,
                         prime_floor: int = PRIME_FLOOR, seed: int = 0) -> list[list[int]]:
    """``det P`` exactly, for a lift in one variable over ``ℤ`` or ``ℤ[g]`` with
    ``g`` quadratic.  Returns integer coefficient lists, one per power of ``g``.

    Uses primes split for ``gen_minpoly`` and both roots of it to separate the
    coordinates; enough primes are taken to exceed twice the coefficient bound.
    """
    degree = lift.degree_bound(var)
    bound = lift.coefficient_bound()
    width = 1 if gen_minpoly is None else len(gen_minpoly) - 1
    if width > 2:
        raise ValueError("only quadratic generators are supported")
    rng = random.Random(seed)
    residues: list[list[list[tuple[int, int]]]] = [[[] for _ in range(degree + 1)] for _ in range(width)]
    modulus = 1
    p = prime_floor
    while modulus <= 2 * bound:
        p += 1
        while not is_prime(p):
            p += 1
        roots = [0]
        if width == 2:
            roots = [int(r) for r, _ in nmod_poly(list(gen_minpoly), p).roots()]
            if len(roots) != 2:
                continue
        vals = [det_polynomial_mod(lift, var, p, {"__gen__": r}, degree, rng) for r in roots]
        if width == 1:
            comps = [vals[0]]
        else:
            r1, r2 = roots
            inv = pow(r1 - r2, -1, p)
            b = (vals[0] - vals[1]) * inv
            a = vals[0] - b * r1
            comps = [a, b]
        for w, f in enumerate(comps):
            cs = [int(c) for c in f.coeffs()]
            for i in range(degree + 1):
                residues[w][i].append((p, cs[i] if i < len(cs) else 0))
        modulus *= p
    out = []
    for w in range(width):
        cs = [crt_lift(r) for r in residues[w]]
        while cs and cs[-1] == 0:
            cs.pop()
        out.append(cs)
    return out


def det_twisted(m: GramMatrix, seed: int = 0) -> DetReport:
    """Exact determinant of a twisted Gram matrix over ``ℚ(d)(ω)``.

    The value is returned as ``ω^k R`` with ``R`` a real rational function;
    ``value`` is ``R`` and ``details["omega_power"]`` is ``k``.  The phase
    depends on where the dots sit, so only ``R`` is meaningful.
    """
    start = time.time()
    lift = lift_matrix(m.entries)
    names = lift.ctx.names()
    if len(names) != 1:
        raise ValueError("twisted determinants are univariate in d")
    var = names[0]
    coords = exact_univariate_det(lift, var, [1, 1, 1], seed=seed)
    normal = omega_normalise(coords)
    if normal is None:
        raise ArithmeticError("determinant is not a power of ω times a real value")
    real, k = normal
    num = lift.ctx.from_dict({(i,): c for i, c in enumerate(real) if c})
    value = RatFunc(num, lift.denominator())
    return DetReport("multimodular_omega", value, seed=seed, runtime=time.time() - start,
                     details={"omega_power": k, "lift_det": coords, "lift_scales": lift.scales})


# verification -----------------------------------------------------------------------

def _claimed_residue(claimed: Sequence[tuple[Any, int]], prime: int, values: Mapping[str, int],
                     constant: int = 1) -> int:
    total = constant % prime
    for f, e in claimed:
        r = residue(f, prime, values)
        if r == 0:
            raise ZeroDivisionError("claimed factor vanishes at the point")
        total = total * pow(r, e, prime) % prime
    return total


def verify_factorization(m: GramMatrix, claimed: Sequence[tuple[fmpz_mpoly, int]], trials: int = 20,
                         sample_bits: int = 62, constant: int = 1, seed: int = 0) -> DetReport:
    """Schwartz–Zippel test of ``det m == constant * prod f^e`` at random points.

    Exponents may be negative.  Each trial samples a prime ``p`` of ``sample_bits``
    bits and a point uniformly from ``[2, p)``; the identity cleared of
    denominators has total degree at most ``D``, so a false claim survives a
    trial with probability at most ``D/(p-2)``.
    """
    start = time.time()
    rng = random.Random(seed)
    lift = lift_matrix(m.entries)
    names = lift.ctx.names()
    D = lift.total_degree_bound() + sum(_total_degree(s) for s in lift.scales)
    D += sum(abs(e) * _total_degree(f) for f, e in claimed)
    fail = Fraction(1)
    witnesses = []
    done = 0
    while done < trials:
        p = random_prime(rng, 2 ** (sample_bits - 1), 2 ** sample_bits)
        vals = {n: rng.randrange(2, p) for n in names}
        try:
            lhs = det_modular(m, p, vals)
            rhs = _claimed_residue(claimed, p, vals, constant)
        except ZeroDivisionError:
            continue
        done += 1
        if lhs != rhs:
            witnesses.append({"prime": p, "point": vals, "det": lhs, "claimed": rhs})
            return DetReport("schwartz_zippel", factors=list(claimed), confidence=0, seed=seed,
                             runtime=time.time() - start,
                             details={"refuted": witnesses[0], "trials": done, "degree_bound": D})
        fail *= Fraction(D, p - 2)
    return DetReport("schwartz_zippel", factors=list(claimed), confidence=1 - fail, seed=seed,
                     runtime=time.time() - start, details={"trials": done, "degree_bound": D})


def verify_twisted_factorization(m: GramMatrix, claimed: Sequence[tuple[fmpz_mpoly, int]],
                                 trials: int = 20, sample_bits: int = 62, constant: int = 1,
                                 seed: int = 0) -> DetReport:
    """Schwartz–Zippel test of ``det m == ω^k * constant * prod f^e`` for some ``k``.

    Primes are drawn with ``p = 1 (mod 3)`` so ``ω`` has an image mod ``p``; the
    two images are conjugate, so ``k`` is read up to sign and must agree
    across trials.  A false claim survives one trial with probability at most
    ``3D/(p-2)``, one term per candidate phase.
    """
    start = time.time()
    rng = random.Random(seed)
    lift = lift_matrix(m.entries)
    if lift.gen is None:
        raise ValueError("expected a matrix over an ω extension")
    var = lift.ctx.names()[0]
    D = lift.total_degree_bound() + sum(_total_degree(s) for s in lift.scales)
    D += sum(abs(e) * _total_degree(f) for f, e in claimed)
    fail = Fraction(1)
    phases: set[int] = set()
    done = 0
    while done < trials:
        p = random_prime(rng, 2 ** (sample_bits - 1), 2 ** sample_bits)
        if p % 3 != 1:
            continue
        w = next(int(r) for r, _ in nmod_poly([1, 1, 1], p).roots())
        vals = {var: rng.randrange(2, p), lift.gen: w}
        try:
            lhs = det_modular(m, p, vals)
            rhs = _claimed_residue(claimed, p, vals, constant)
        except ZeroDivisionError:
            continue
        done += 1
        ratio = lhs * pow(rhs, -1, p) % p
        k = next((k for k in range(3) if pow(w, k, p) == ratio), None)
        if k is None or (phases and min(k, -k % 3) not in phases):
            return DetReport("schwartz_zippel_omega", factors=list(claimed), confidence=0,
                             seed=seed, runtime=time.time() - start,
                             details={"refuted": {"prime": p, "point": vals, "det": lhs,
                                                  "claimed": rhs}, "trials": done})
        phases.add(min(k, -k % 3))
        fail *= Fraction(3 * D, p - 2)
    return DetReport("schwartz_zippel_omega", factors=list(claimed), confidence=1 - fail,
                     seed=seed, runtime=time.time() - start,
                     details={"trials": done, "degree_bound": D,
                              "omega_power_up_to_sign": sorted(phases)})


def nmod_multiplicity(a: nmod_poly, f: nmod_poly) -> int:
    if a.is_zero():
        raise ValueError("multiplicity in the zero polynomial")
    if f.degree() < 1:
        raise ValueError("multiplicity of a constant")
    m = 0
    while True:
        q, r = divmod(a, f)
        if not r.is_zero():
            return m
        a, m = q, m + 1


def verify_multiplicities(m: GramMatrix | Lift, claimed: Mapping[str, tuple[fmpz_mpoly, int]],
                          trials: int = 20, var: str = "d", seed: int = 0) -> DetReport:
    """Check that each claimed factor divides ``det m`` with exactly the stated
    multiplicity, on univariate specialisations at random points.

    Each trial fixes the other variable at a random residue modulo a random
    62-bit prime and interpolates ``det P`` in ``var``.  Exponents refer to the
    determinant itself; the row-scaling denominators of the lift are added back.
    A larger true multiplicity is always detected; a smaller one survives a
    trial only if the specialisation hits a root of a resultant of degree at most
    ``deg_var(f) T + deg_other(f) D``.
    """
    start = time.time()
    lift = m if isinstance(m, Lift) else lift_matrix(m.entries)
    rng = random.Random(seed)
    names = lift.ctx.names()
    other = [n for n in names if n != var]
    Dv = lift.degree_bound(var)
    Do = {n: lift.degree_bound(n) for n in other}
    scale_mult = {}
    for name, (f, e) in claimed.items():
        total = 0
        for s in lift.scales:
            k, _ = _multiplicity_or_zero(s, f)
            total += k
        scale_mult[name] = total
    fail = {name: Fraction(1) for name in claimed}
    observed = []
    done = 0
    while done < trials:
        p = random_prime(rng)
        vals = {n: rng.randrange(2, p) for n in other}
        detp = det_polynomial_mod(lift, var, p, vals, Dv, rng)
        if detp.is_zero():
            continue
        row = {}
        bad = None
        for name, (f, e) in claimed.items():
            g = _entry_to_nmod_poly([f], var, p, vals)
            if g.degree() < 1:
                raise ValueError(f"factor {name} is constant in {var}")
            k = nmod_multiplicity(detp, g)
            row[name] = k - scale_mult[name]
            if row[name] != e:
                bad = name
        done += 1
        observed.append({"prime": p, "point": vals, "multiplicities": row})
        if bad is not None:
            return DetReport("schwartz_zippel", factors=list(claimed.items()), confidence=0, seed=seed,
                             runtime=time.time() - start,
                             details={"refuted": {"factor": bad, **observed[-1]}, "trials": done})
        for name, (f, e) in claimed.items():
            deg_bad = degree_in(f, var) * sum(Do.values()) + sum(degree_in(f, n) for n in other) * Dv
            fail[name] *= Fraction(max(int(deg_bad), 1), p - 2)
    conf = 1 - sum(fail.values())
    return DetReport("schwartz_zippel", factors=list(claimed.items()), confidence=conf, seed=seed,
                     runtime=time.time() - start,
                     details={"trials": done, "observed": observed, "degree_bounds": {var: Dv, **Do},
                              "lift_multiplicities": scale_mult})


def _multiplicity_or_zero(a: fmpz_mpoly, f: fmpz_mpoly) -> tuple[int, fmpz_mpoly]:
    from .algebra.poly import multiplicity
    if a.is_constant():
        return 0, a
    return multiplicity(a, f)


def recover_power_cofactor(m: GramMatrix | Lift, known: Sequence[tuple[fmpz_mpoly, int]], power: int,
                           var: str = "t", primes: int = 3, seed: int = 0) -> DetReport:
    """Recover ``det m = c * prod(known) * q^power`` with ``q`` a polynomial in ``var`` alone.

    At each prime the determinant is interpolated in ``var`` at two random
    values of the other variable; after dividing out the known factors the
    cofactor must agree at both values and be ``c`` times a ``power``-th power.
    The monic root is recovered per prime and lifted by CRT and rational
    reconstruction; the result must agree between the first ``primes - 1``
    primes and all of them.
    """
    start = time.time()
    lift = m if isinstance(m, Lift) else lift_matrix(m.entries)
    rng = random.Random(seed)
    names = lift.ctx.names()
    other = [n for n in names if n != var]
    T = lift.degree_bound(var)
    per_prime = []
    while len(per_prime) < primes:
        p = random_prime(rng)
        cofs = []
        for _ in range(2):
            vals = {n: rng.randrange(2, p) for n in other}
            detp = det_polynomial_mod(lift, var, p, vals, T, rng)
            for f, e in known:
                g = _entry_to_nmod_poly([f], var, p, vals)
                scale_k = sum(_multiplicity_or_zero(s, f)[0] for s in lift.scales)
                k = e + scale_k
                if g.degree() < 1:
                    detp = detp * pow(int(g.coeffs()[0]), -k, p) if k else detp
                    continue
                for _ in range(k):
                    q, r = divmod(detp, g)
                    if not r.is_zero():
                        raise ArithmeticError("a known factor does not divide the determinant")
                    detp = q
            # the scales' own content beyond the known factors
            rest_scale = 1
            for s in lift.scales:
                r = s
                for f, _ in known:
                    _, r = _multiplicity_or_zero(r, f)
                rv = _entry_to_nmod_poly([r], var, p, vals)
                if rv.degree() > 0:
                    raise ArithmeticError("row scale has a factor outside the known list")
                rest_scale = rest_scale * int(rv.coeffs()[0]) % p
            cofs.append(detp * rest_scale)
        if cofs[0] != cofs[1]:
            raise ArithmeticError("cofactor depends on the other variable")
        cof = cofs[0]
        if cof.degree() % power:
            raise ArithmeticError("cofactor degree is not a multiple of the power")
        lead = int(cof.coeffs()[-1])
        monic = cof * pow(lead, -1, p)
        root = nmod_poly([1], p)
        for g, mult in monic.factor()[1]:
            if mult % power:
                raise ArithmeticError("cofactor is not a perfect power")
            root *= g ** (mult // power)
        per_prime.append((p, lead, [int(c) for c in root.coeffs()]))
    # lift the monic root's coefficients
    modulus = prod(p for p, _, _ in per_prime)
    deg = len(per_prime[0][2])
    coeffs = []
    for i in range(deg):
        a = crt_lift([(p, r[i]) for p, _, r in per_prime]) % modulus
        rr = rational_reconstruct(a, modulus)
        if rr is None:
            raise ArithmeticError("rational reconstruction failed")
        coeffs.append(Fraction(*rr))
    den = 1
    for c in coeffs:
        den = den * c.denominator // _gcd(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    g = 0
    for c in ints:
        g = _gcd(g, c)
    ints = [c // g for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    qpoly = fmpz_poly(ints)
    # leading constant c with det = c * prod(known) * q^power
    lead_res = []
    for p, lead, _ in per_prime:
        qlead = ints[-1] % p
        lead_res.append((p, lead * pow(pow(qlead, power, p), -1, p) % p))
    c = crt_lift(lead_res)
    consistent = all(int(nmod_poly([x % p for x in ints], p).coeffs()[-1]) != 0 for p, _, _ in per_prime)
    return DetReport("multimodular", value=qpoly, factors=[(qpoly, power)], seed=seed,
                     runtime=time.time() - start,
                     details={"primes": [p for p, _, _ in per_prime], "constant": c,
                              "monic_root": coeffs, "consistent": consistent})


def _gcd(a: int, b: int) -> int:
    from math import gcd
    return gcd(a, b)


# guessing ------------------------------------------------------------------------------

def _normalise_factor(f: fmpz_poly) -> tuple[fmpz_poly, int]:
    """Primitive, positive leading coefficient; returns the factor and the unit removed."""
    cs = [int(c) for c in f.coeffs()]
    g = 0
    for c in cs:
        g = _gcd(g, c)
    if cs[-1] < 0:
        g = -g
    return fmpz_poly([c // g for c in cs]), g


def _det_at_integer(m: GramMatrix, var_fixed: str, value: int) -> tuple[fmpz_poly, fmpz_poly]:
    """Exact ``det`` as numerator/denominator in ``ℤ[other]`` after fixing one variable."""
    lift = lift_matrix(m.entries)
    names = lift.ctx.names()
    other = [n for n in names if n != var_fixed]
    if len(other) != 1:
        raise ValueError("guessing needs exactly two variables")
    o = names.index(other[0])
    fi = names.index(var_fixed)

    def spec(pol: fmpz_mpoly) -> fmpz_poly:
        cs: dict[int, int] = {}
        for mono, a in zip(pol.monoms(), pol.coeffs()):
            cs[mono[o]] = cs.get(mono[o], 0) + int(a) * value ** mono[fi]
        top = max(cs, default=0)
        return fmpz_poly([cs.get(i, 0) for i in range(top + 1)])

    P = [[spec(e[0]) for e in row] for row in lift.rows]
    num = bareiss(P, fmpz_poly([1]), lambda x, y: _exact_poly_div(x, y))
    den = fmpz_poly([1])
    for s in lift.scales:
        den *= spec(s)
    return num, den


def _exact_poly_div(x: fmpz_poly, y: fmpz_poly) -> fmpz_poly:
    q, r = divmod(x, y)
    if r != 0:
        raise ArithmeticError("inexact division in fraction-free elimination")
    return q


def guess_determinant(m: GramMatrix, primes: Sequence[int], var_fixed: str = "d") -> DetReport:
    """Guess a factorisation of ``det m`` from its specialisations at ``var_fixed = p``.

    At each prime the determinant is factored exactly over ``ℚ[other]``.  Factor
    shapes (degree, multiplicity) must agree across primes.  Every coefficient
    of every primitive factor, and the leftover constant, is then lifted from
    its values at the primes digit by digit in base ``p``.
    """
    start = time.time()
    if not primes:
        raise ValueError("no primes supplied")
    data = []
    for p in primes:
        num, den = _det_at_integer(m, var_fixed, p)
        shapes = []
        unit = Fraction(1)
        for poly, sign in ((num, 1), (den, -1)):
            c, facs = poly.factor()
            unit *= Fraction(int(c)) ** sign
            for f, mult in facs:
                nf, u = _normalise_factor(f)
                unit *= Fraction(u) ** (mult * sign)
                shapes.append((nf.degree(), sign * mult, [int(x) for x in nf.coeffs()]))
        shapes.sort(key=lambda s: (s[0], s[1], s[2]))
        data.append((p, unit, shapes))
    shape0 = [(s[0], s[1]) for s in data[0][2]]
    for p, _, shapes in data[1:]:
        if [(s[0], s[1]) for s in shapes] != shape0:
            return DetReport("guess", details={"refuted": "factor shapes differ across primes",
                                               "shapes": {q: [(s[0], s[1]) for s in sh] for q, _, sh in data}})
    factors = []
    for idx, (deg, mult) in enumerate(shape0):
        coeffs = []
        for r in range(deg + 1):
            values = {p: shapes[idx][2][r] for p, _, shapes in data}
            coeffs.append(staged_lift(values))
        factors.append((coeffs, mult))
    if any(u.denominator != 1 for _, u, _ in data):
        const_lift = {"num": staged_lift({p: u.numerator for p, u, _ in data}),
                      "den": staged_lift({p: u.denominator for p, u, _ in data})}
    else:
        const_lift = {"num": staged_lift({p: int(u) for p, u, _ in data}), "den": [1]}
    ctx = CTX
    names = ctx.names()
    other = [n for n in names if n != var_fixed][0]
    polys = []
    for coeffs, mult in factors:
        terms = {}
        for r, lifted in enumerate(coeffs):
            for s, c in enumerate(lifted):
                if c:
                    mono = [0, 0]
                    mono[names.index(var_fixed)] = s
                    mono[names.index(other)] = r
                    terms[tuple(mono)] = c
        polys.append((ctx.from_dict(terms), mult))

    def univ(cs):
        terms = {}
        for s, c in enumerate(cs):
            if c:
                mono = [0, 0]
                mono[names.index(var_fixed)] = s
                terms[tuple(mono)] = c
        return ctx.from_dict(terms)

    constant = RatFunc(univ(const_lift["num"]), univ(const_lift["den"]) if const_lift["den"] else const(1, ctx))
    return DetReport("guess", value=constant, factors=polys, runtime=time.time() - start,
                     confidence=0 if len(primes) == 1 else 1,
                     details={"primes": list(primes), "low_confidence": len(primes) == 1,
                              "shapes": shape0})


# kernels and ranks ----------------------------------------------------------------------

def nullspace(rows: Sequence[Sequence], zero, one) -> list[list]:
    """Basis of ``{v : rows v = 0}`` over an exact field."""
    if not rows:
        return []
    a = [list(r) for r in rows]
    nr, nc = len(a), len(a[0])
    pivots = []
    r = 0
    for c in range(nc):
        piv = next((i for i in range(r, nr) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = one / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(nr):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == nr:
            break
    free = [c for c in range(nc) if c not in pivots]
    basis = []
    for fcol in free:
        v = [zero] * nc
        v[fcol] = one
        for i, pc in enumerate(pivots):
            v[pc] = -a[i][fcol]
        basis.append(v)
    return basis


def kernel_at_point(m: GramMatrix, zero=None, one=None) -> list[LinearCombination]:
    """Null space of ``m`` as relations among its basis diagrams, each checked by
    re-multiplication."""
    if m.size == 0:
        return []
    sample = m.entries[0][0]
    if zero is None:
        zero = sample * 0
        one = zero + 1
    vecs = nullspace(m.entries, zero, one)
    out = []
    for v in vecs:
        for row in m.entries:
            s = zero
            for x, c in zip(row, v):
                s = s + x * c
            if s != 0:
                raise ArithmeticError("kernel vector fails the re-multiplication check")
        out.append(LinearCombination(((c, b) for c, b in zip(v, m.basis)), zero))
    return out


def kernel_vectors(m: GramMatrix) -> list[list]:
    sample = m.entries[0][0]
    zero = sample * 0
    return nullspace(m.entries, zero, zero + 1)


def rank_mod_prime(m: GramMatrix, prime: int, values: Mapping[str, int]) -> int:
    """Rank of ``m`` reduced modulo a prime ideal given by residues of its
    generators; a lower bound for the rank over the field."""
    rows = [[residue(x, prime, values) for x in row] for row in m.entries]
    return rank_mod(rows, prime)


# twisted square ---------------------------------------------------------------------------

def derive_twisted_square(base: RelationSet):
    """Express the inward-dotted square in the dotted D(4,0) basis.

    Pairs the square with each basis diagram (only bigons and triangles arise)
    and solves against the twisted Gram matrix of D(4,0).
    """
    from .algebra.numfield import solve_linear
    basis = [default_dots(x) for x in basis_diagrams(4, 0)]
    ev = Evaluator(base)
    gm = gram_matrix(basis, base, ev)
    sq = dotted_polygon_inward(4)
    rhs = [ev.evaluate(glue(sq, x)) for x in basis]
    zero = base.zero
    mt = [[gm.entries[j][i] for j in range(4)] for i in range(4)]
    coeffs = solve_linear(mt, rhs, zero, base.one)
    return tuple((c, x) for c, x in zip(coeffs, basis) if c != 0)
