"""Rational functions over the integers in a few named variables.

A :class:`RatFunc` is a reduced fraction ``num/den`` of flint ``fmpz_mpoly``
polynomials sharing one context.  The denominator is kept primitive with a
positive leading coefficient, so equal functions have equal representations.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Mapping

from flint import fmpz, fmpz_mpoly, fmpz_mpoly_ctx

from .poly import CTX, const, evaluate


def _content(p: fmpz_mpoly) -> int:
    g = 0
    for c in p.coeffs():
        g = gcd(g, int(c))
        if g == 1:
            break
    return g


class RatFunc:
    __slots__ = ("num", "den")

    def __init__(self, num: fmpz_mpoly, den: fmpz_mpoly | None = None, *, reduced: bool = False):
        if den is None:
            self.num, self.den = num, const(1, num.context())
            return
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if not reduced:
            num, den = self._reduce(num, den)
        self.num, self.den = num, den

    @staticmethod
    def _reduce(num: fmpz_mpoly, den: fmpz_mpoly) -> tuple[fmpz_mpoly, fmpz_mpoly]:
        ctx = den.context()
        if num.is_zero():
            return num, const(1, ctx)
        if not den.is_constant():
            g = num.gcd(den)
            if not g.is_constant():
                num, den = num / g, den / g
        c = gcd(_content(num), _content(den))
        if den.leading_coefficient() < 0:
            c = -c
        if c != 1:
            num, den = _scale_div(num, c), _scale_div(den, c)
        return num, den

    # construction helpers -------------------------------------------------
    @classmethod
    def const(cls, c, ctx: fmpz_mpoly_ctx = CTX) -> "RatFunc":
        c = Fraction(c)
        return cls(const(c.numerator, ctx), const(c.denominator, ctx), reduced=True)

    @classmethod
    def gens(cls, ctx: fmpz_mpoly_ctx = CTX) -> tuple["RatFunc", ...]:
        return tuple(cls(g) for g in ctx.gens())

    def context(self) -> fmpz_mpoly_ctx:
        return self.num.context()

    def _coerce(self, other) -> "RatFunc":
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, (int, Fraction, fmpz)):
            return RatFunc.const(Fraction(int(other)) if isinstance(other, fmpz) else other, self.context())
        if isinstance(other, fmpz_mpoly):
            return RatFunc(other)
        return NotImplemented

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if o.num.is_zero():
            return self
        if self.num.is_zero():
            return o
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, reduced=True)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if self.num.is_zero() or o.num.is_zero():
            return RatFunc(const(0, self.context()))
        if self.den.is_one() and o.den.is_one():
            return RatFunc(self.num * o.num)
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return RatFunc(self.num**e, self.den**e, reduced=True)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((str(self.num), str(self.den)))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_constant() and int(self.den.leading_coefficient()) == 1

    def __call__(self, point: Mapping[str, object]):
        """Evaluate at a point (ints, Fractions, nmod values, algebraic numbers)."""
        den = evaluate(self.den, point)
        if den == 0:
            raise ZeroDivisionError("denominator vanishes at the point")
        num = evaluate(self.num, point)
        if isinstance(num, int) and isinstance(den, int):
            return Fraction(num, den)
        return num / den

    def __repr__(self):
        if self.den.is_one():
            return f"RatFunc({self.num})"
        return f"RatFunc(({self.num})/({self.den}))"

    def __str__(self):
        if self.den.is_one():
            return str(self.num).replace(" ", "")
        return f"({str(self.num).replace(' ', '')})/({str(self.den).replace(' ', '')})"


def _scale_div(p: fmpz_mpoly, c: int) -> fmpz_mpoly:
    return p.context().from_dict({m: int(v) // c for m, v in zip(p.monoms(), p.coeffs())})


def as_ratfunc(x, ctx: fmpz_mpoly_ctx = CTX) -> RatFunc:
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, fmpz_mpoly):
        return RatFunc(x)
    return RatFunc.const(x, ctx)
