"""Resultants and univariate polynomial helpers over exact fields.

Bivariate resultants come from flint.  The dense univariate routines work over
any exact field whose elements support ``+ - * /`` and ``== 0``, which is what
curve intersection needs after adjoining a root of one resultant factor.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from flint import fmpz_mpoly, fmpz_poly

from .poly import degree_in


def resultant(f: fmpz_mpoly, g: fmpz_mpoly, eliminate: str) -> fmpz_mpoly:
    """Sylvester resultant of ``f`` and ``g`` with respect to ``eliminate``."""
    if f.is_zero() or g.is_zero():
        raise ValueError("resultant of the zero polynomial")
    return f.resultant(g, eliminate)


def to_univariate(p: fmpz_mpoly, var: str) -> fmpz_poly:
    """View a polynomial involving only ``var`` as a flint ``fmpz_poly``."""
    names = p.context().names()
    idx = names.index(var)
    coeffs = [0] * (max(degree_in(p, var), 0) + 1)
    for exps, c in zip(p.monoms(), p.coeffs()):
        if any(e for i, e in enumerate(exps) if i != idx):
            raise ValueError(f"polynomial involves variables other than {var}")
        coeffs[exps[idx]] += int(c)
    return fmpz_poly(coeffs)


def irreducible_factors(p: fmpz_poly) -> list[tuple[fmpz_poly, int]]:
    """Primitive irreducible factors with positive leading coefficient."""
    _, facs = p.factor()
    out = []
    for f, e in facs:
        if f.degree() < 1:
            continue
        if f.coeffs()[-1] < 0:
            f = -f
        out.append((f, e))
    return sorted(out, key=lambda fe: (fe[0].degree(), [int(c) for c in fe[0].coeffs()]))


# dense univariate polynomials over an exact field, low degree first ----------

def _trim(a: Sequence) -> list:
    a = [Fraction(c) if isinstance(c, int) else c for c in a]
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_divmod(a: Sequence, b: Sequence) -> tuple[list, list]:
    a, b = _trim(a), _trim(b)
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    q = [0] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    while len(a) >= len(b):
        c = a[-1] / lead
        k = len(a) - len(b)
        q[k] = c
        for i, bi in enumerate(b):
            a[k + i] = a[k + i] - c * bi
        a = _trim(a[:-1] if a[-1] == 0 else a)
    return _trim(q), a


def poly_gcd(a: Sequence, b: Sequence) -> list:
    """Monic gcd of two univariate polynomials over a field."""
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, poly_divmod(a, b)[1]
    if not a:
        return []
    lead = a[-1]
    return [c / lead for c in a]


def poly_eval(a: Sequence, x):
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
    return acc


def specialise(p: fmpz_mpoly, var: str, value, other: str) -> list:
    """Coefficients in ``other`` of ``p`` with ``var`` set to ``value``."""
    names = p.context().names()
    iv, io = names.index(var), names.index(other)
    out: list = [0] * (max(degree_in(p, other), 0) + 1)
    for exps, c in zip(p.monoms(), p.coeffs()):
        out[int(exps[io])] = out[int(exps[io])] + int(c) * value ** int(exps[iv])
    return _trim(out)


def rational_roots(p: fmpz_poly) -> list[Fraction]:
    return sorted(Fraction(int(f.coeffs()[0]) * -1, int(f.coeffs()[1]))
                  for f, _ in irreducible_factors(p) if f.degree() == 1)
