"""Simple algebraic extensions ``K[x]/(m(x))`` of an exact base field.

The base field can be the rationals (``Fraction``), a rational-function
field (:class:`~skein.algebra.ratfunc.RatFunc`) or another extension, so towers
such as ``Q(sqrt13)(sqrt5)(xi)`` are built by successive extension.  Elements
store their coordinates in the power basis of the generator.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from typing import Callable, Sequence


class ExtensionField:
    """The field ``base[x]/(modulus)`` for a monic irreducible ``modulus``.

    ``modulus`` lists coefficients from the constant term up and must end in 1.
    ``embedding`` optionally gives a complex value of the generator, used only
    for numeric images of exact results.
    """

    def __init__(self, modulus: Sequence, name: str = "a", zero=Fraction(0), one=Fraction(1),
                 embedding: complex | None = None, base_numeric: Callable | None = None):
        if modulus[-1] != 1:
            raise ValueError("modulus must be monic")
        self.degree = len(modulus) - 1
        if self.degree < 1:
            raise ValueError("modulus must have positive degree")
        self.modulus = tuple(modulus)
        self.name = name
        self.zero, self.one = zero, one
        self.embedding = embedding
        self.base_numeric = base_numeric or _numeric

    def __call__(self, coords) -> "ExtElem":
        if isinstance(coords, ExtElem) and coords.field is self:
            return coords
        if not isinstance(coords, (list, tuple)):
            coords = [coords]
        coords = list(coords) + [self.zero] * (self.degree - len(coords))
        if len(coords) > self.degree:
            return ExtElem(self, _reduce(coords, self.modulus, self.zero))
        return ExtElem(self, tuple(coords))

    @property
    def gen(self) -> "ExtElem":
        if self.degree == 1:
            return self([-self.modulus[0]])
        return self([self.zero, self.one])

    def from_base(self, c) -> "ExtElem":
        return self([c])

    def __repr__(self):
        return f"ExtensionField({self.name}, degree={self.degree})"


def _reduce(coords: list, modulus: tuple, zero) -> tuple:
    n = len(modulus) - 1
    coords = list(coords)
    for k in range(len(coords) - 1, n - 1, -1):
        c = coords[k]
        if c == 0:
            continue
        # x^k = x^(k-n) * x^n and x^n = -sum(m_i x^i)
        for i in range(n):
            if modulus[i] != 0:
                coords[k - n + i] = coords[k - n + i] - c * modulus[i]
        coords[k] = zero
    return tuple(coords[:n])


def _numeric(x) -> complex:
    if isinstance(x, ExtElem):
        return x.numeric()
    return complex(x)


class ExtElem:
    __slots__ = ("field", "coords")

    def __init__(self, field: ExtensionField, coords: tuple):
        self.field = field
        self.coords = coords

    def _coerce(self, other) -> "ExtElem":
        if isinstance(other, ExtElem):
            if other.field is self.field:
                return other
            # element of a smaller field in the tower
            return self.field.from_base(other)
        return self.field.from_base(other)

    def __add__(self, other):
        o = self._coerce(other)
        return ExtElem(self.field, tuple(a + b for a, b in zip(self.coords, o.coords)))

    __radd__ = __add__

    def __neg__(self):
        return ExtElem(self.field, tuple(-a for a in self.coords))

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        if not isinstance(other, ExtElem) or other.field is not self.field:
            o = self._coerce(other)
            if len([c for c in o.coords[1:] if c != 0]) == 0:
                c = o.coords[0]
                return ExtElem(self.field, tuple(a * c for a in self.coords))
            other = o
        n = self.field.degree
        zero = self.field.zero
        prod = [zero] * (2 * n - 1)
        for i, a in enumerate(self.coords):
            if a == 0:
                continue
            for j, b in enumerate(other.coords):
                if b == 0:
                    continue
                prod[i + j] = prod[i + j] + a * b
        return ExtElem(self.field, _reduce(prod, self.field.modulus, zero))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.field.from_base(self.field.one)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        try:
            o = self._coerce(other)
        except Exception:
            return NotImplemented
        return all(a == b for a, b in zip(self.coords, o.coords))

    def __hash__(self):
        return hash(tuple(str(c) for c in self.coords))

    def multiplication_matrix(self) -> list[list]:
        """Matrix of ``y -> self*y`` in the power basis (columns are images)."""
        n = self.field.degree
        cols = []
        basis = self.field.gen
        e = self.field.from_base(self.field.one)
        for _ in range(n):
            cols.append((self * e).coords)
            e = e * basis
        return [[cols[j][i] for j in range(n)] for i in range(n)]

    def inverse(self) -> "ExtElem":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        n = self.field.degree
        if n == 2:
            # (a + b x)(a + b x') with x + x' = -m1 and x x' = m0
            a, b = self.coords
            m0, m1 = self.field.modulus[0], self.field.modulus[1]
            norm = a * a - a * b * m1 + b * b * m0
            conj = ExtElem(self.field, (a - b * m1, -b))
            inv = self.field.one / norm
            return ExtElem(self.field, tuple(c * inv for c in conj.coords))
        mat = self.multiplication_matrix()
        rhs = [self.field.one] + [self.field.zero] * (n - 1)
        return ExtElem(self.field, tuple(solve_linear(mat, rhs, self.field.zero, self.field.one)))

    def __truediv__(self, other):
        o = self._coerce(other)
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def numeric(self) -> complex:
        """Complex image under the field's chosen embedding (not exact)."""
        if self.field.embedding is None:
            raise ValueError("field has no numeric embedding")
        g = complex(self.field.embedding)
        return sum((self.field.base_numeric(c) * g**i for i, c in enumerate(self.coords)), 0j)

    def norm(self):
        """Field norm down to the base field (determinant of multiplication)."""
        return determinant(self.multiplication_matrix(), self.field.zero, self.field.one)

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coords):
            if c == 0:
                continue
            terms.append(f"({c})" + ("" if i == 0 else f"*{self.field.name}" + (f"^{i}" if i > 1 else "")))
        return " + ".join(terms) if terms else "0"


def solve_linear(mat: list[list], rhs: list, zero, one) -> list:
    """Gaussian elimination over an exact field; ``mat`` must be invertible."""
    n = len(mat)
    a = [list(row) + [r] for row, r in zip(mat, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular system")
        a[col], a[piv] = a[piv], a[col]
        inv = one / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [a[r][n] for r in range(n)]


def determinant(mat: list[list], zero, one):
    n = len(mat)
    a = [list(row) for row in mat]
    det = one
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return zero
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det = det * a[col][col]
        inv = one / a[col][col]
        for r in range(col + 1, n):
            if a[r][col] != 0:
                f = a[r][col] * inv
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return det


# standard fields ----------------------------------------------------------------

def quadratic_field(disc: int, name: str = "s", sign: int = 1) -> ExtensionField:
    """``Q(sqrt(disc))`` with generator ``sqrt(disc)`` embedded at ``sign*|sqrt|``."""
    emb = sign * cmath.sqrt(disc)
    return ExtensionField([Fraction(-disc), Fraction(0), 1], name=name, embedding=emb)


def cyclotomic_field(n: int, name: str = "z", power: int = 1) -> ExtensionField:
    """``Q(zeta_n)``, embedded at ``exp(2 pi i power/n)``."""
    from flint import fmpz_poly
    if n < 3:
        raise ValueError("cyclotomic fields of order below 3 are just Q")
    minpoly = [int(c) for c in fmpz_poly.cyclotomic(n).coeffs()]
    emb = cmath.exp(2j * cmath.pi * power / n)
    return ExtensionField([Fraction(c) for c in minpoly[:-1]] + [1], name=name, embedding=emb)
