"""Prime-field tools: word-size primes, CRT lifting, rational reconstruction
and univariate rational interpolation modulo a prime."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from math import isqrt
from typing import Iterable, Mapping, Sequence

from flint import fmpz, nmod, nmod_mat, nmod_poly

PRIME_FLOOR = 2**62


def is_prime(n: int) -> bool:
    return n >= 2 and bool(fmpz(n).is_prime())


def next_prime(n: int) -> int:
    n = max(n, 2)
    while not is_prime(n):
        n += 1
    return n


def random_prime(rng: random.Random, low: int = PRIME_FLOOR, high: int = 2**63) -> int:
    while True:
        p = rng.randrange(low, high) | 1
        if is_prime(p):
            return p


def prime_list(count: int, start: int = PRIME_FLOOR) -> list[int]:
    out, p = [], start
    while len(out) < count:
        p = next_prime(p + 1)
        out.append(p)
    return out


@dataclass(frozen=True)
class PrimePoint:
    """A prime together with residues of the specialised parameters."""

    prime: int
    values: Mapping[str, int] = field(default_factory=dict)

    def residue(self, name: str) -> nmod:
        return nmod(self.values[name], self.prime)


def balanced(x: int, m: int) -> int:
    x %= m
    return x - m if x > m // 2 else x


def crt_lift(residues: Sequence[tuple[int, int]]) -> int:
    """Balanced representative of the unique class matching ``(prime, residue)`` pairs."""
    if not residues:
        raise ValueError("no residues supplied")
    primes = [p for p, _ in residues]
    if len(set(primes)) != len(primes):
        raise ValueError("primes must be distinct")
    x, m = 0, 1
    for p, r in residues:
        # x + m*k = r (mod p)
        k = ((r - x) * pow(m, -1, p)) % p
        x, m = x + m * k, m * p
    return balanced(x, m)


def staged_lift(values: Mapping[int, int], max_levels: int = 64) -> list[int]:
    """Coefficients ``L_s`` of an integer polynomial ``L(x)`` from the values ``L(p)``.

    ``values`` maps primes ``p`` to the integers ``L(p)``.  The constant term is
    pinned down by ``L_0 = L(p) mod p`` for every ``p`` and the CRT; then, level by
    level, ``L_s = (L(p) - sum_{r<s} L_r p^r) p^(-s) mod p`` and the CRT again.
    The coefficients are guessed as balanced residues, so they are correct when
    ``2 max|L_s| < prod p``.  Stops once every remainder is exhausted.
    """
    if not values:
        raise ValueError("no values supplied")
    coeffs: list[int] = []
    for s in range(max_levels):
        residues = []
        exhausted = True
        for p, v in values.items():
            rest = v - sum(c * p**r for r, c in enumerate(coeffs))
            if rest % p**s:
                raise ArithmeticError(f"value at {p} is inconsistent with the guessed digits")
            rest //= p**s
            exhausted = exhausted and rest == 0
            residues.append((p, rest % p))
        if exhausted:
            break
        coeffs.append(crt_lift(residues))
    else:
        raise ArithmeticError("digit recursion did not terminate")
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def rational_reconstruct(a: int, m: int) -> tuple[int, int] | None:
    """Find ``n/d`` with ``n = a*d mod m`` and ``|n|, d <= sqrt(m/2)``."""
    a %= m
    bound = isqrt(m // 2)
    r0, r1 = m, a
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound:
        return None
    if s1 < 0:
        r1, s1 = -r1, -s1
    return r1, s1


class InterpolationError(ArithmeticError):
    """The sample system has no solution within the requested degree bounds."""


def interpolate_univariate(samples: Sequence[tuple[int, int]], prime: int,
                           num_deg: int, den_deg: int) -> tuple[nmod_poly, nmod_poly]:
    """Rational function ``N/D`` mod ``prime`` through the samples.

    Solves the linear system ``N(x_i) - y_i D(x_i) = 0`` with ``deg N <= num_deg``
    and ``deg D <= den_deg``; the result is normalised so that ``D`` is monic.
    Needs at least ``num_deg + den_deg + 1`` distinct sample points.
    """
    xs = [x % prime for x, _ in samples]
    if len(set(xs)) != len(xs):
        raise ValueError("sample points must be distinct")
    need = num_deg + den_deg + 1
    if len(samples) < need:
        raise InterpolationError(f"need {need} samples, got {len(samples)}")
    if den_deg == 0:
        poly = _newton(xs, [y % prime for _, y in samples], prime)
        if poly.degree() > num_deg:
            raise InterpolationError("samples exceed the numerator degree bound")
        return poly, nmod_poly([1], prime)
    rows = []
    for x, y in samples:
        row = [pow(x, i, prime) for i in range(num_deg + 1)]
        row += [(-y * pow(x, j, prime)) % prime for j in range(den_deg + 1)]
        rows.append(row)
    mat = nmod_mat(rows, prime)
    null, dim = mat.nullspace()
    if dim == 0:
        raise InterpolationError("no rational function fits the samples")
    vec = [int(null[i, 0]) for i in range(num_deg + den_deg + 2)]
    num = nmod_poly(vec[: num_deg + 1], prime)
    den = nmod_poly(vec[num_deg + 1:], prime)
    if den.is_zero():
        raise InterpolationError("degenerate denominator")
    g = num.gcd(den)
    num, den = num // g, den // g
    lead = den.coeffs()[-1]
    inv = pow(int(lead), -1, prime)
    num, den = num * inv, den * inv
    for x, y in samples:
        if den(x) == 0 or num(x) != den(x) * y:
            raise InterpolationError("solution does not reproduce every sample")
    return num, den


def _newton(xs: Sequence[int], ys: Sequence[int], p: int) -> nmod_poly:
    n = len(xs)
    coef = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) * pow(xs[i] - xs[i - j], -1, p) % p
    poly = nmod_poly([coef[-1]], p)
    for i in range(n - 2, -1, -1):
        poly = poly * nmod_poly([-xs[i] % p, 1], p) + coef[i]
    return poly


def interpolate_polynomial(xs: Sequence[int], ys: Sequence[int], prime: int) -> nmod_poly:
    """Unique polynomial of degree < len(xs) through the points, mod ``prime``."""
    return _newton([x % prime for x in xs], [y % prime for y in ys], prime)


def sample_points(rng: random.Random, count: int, prime: int, avoid: Iterable[int] = ()) -> list[int]:
    seen = set(a % prime for a in avoid)
    out = []
    while len(out) < count:
        x = rng.randrange(2, prime)
        if x not in seen:
            seen.add(x)
            out.append(x)
    return out
