"""Sparse bivariate integer polynomials in ``d`` and ``t``.

Polynomials are flint ``fmpz_mpoly`` objects over a fixed lex context with
``d > t``.  This module adds the text format of the curve database, exact
division with an explicit failure value, and a few helpers used throughout the
package (specialisation at points, reduction modulo a prime).
"""

from __future__ import annotations

import ast
import re
from fractions import Fraction
from typing import Iterable, Mapping

from flint import fmpz, fmpz_mpoly, fmpz_mpoly_ctx, nmod

CTX = fmpz_mpoly_ctx.get(("d", "t"), "lex")
D, T = CTX.gens()


class NotDivisible(ArithmeticError):
    """Raised when an exact division leaves a remainder."""


_IMPLICIT = re.compile(r"(?<=[0-9A-Za-z_)])\s*(?=[A-Za-z_(])|(?<=\))\s*(?=[0-9])")


def _to_python_expr(text: str) -> str:
    text = text.strip().replace("^", "**")
    # insert the optional multiplication sign: "2d", "d t", ")(" and ")2"
    return _IMPLICIT.sub("*", text)


def _eval_node(node: ast.AST, names: Mapping[str, fmpz_mpoly]):
    if isinstance(node, ast.Expression):
        return _eval_node(node.body, names)
    if isinstance(node, ast.Constant) and isinstance(node.value, int):
        return node.value
    if isinstance(node, ast.Name):
        if node.id not in names:
            raise ValueError(f"unknown variable {node.id!r}")
        return names[node.id]
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _eval_node(node.operand, names)
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.BinOp):
        a = _eval_node(node.left, names)
        b = _eval_node(node.right, names)
        if isinstance(node.op, ast.Add):
            return a + b
        if isinstance(node.op, ast.Sub):
            return a - b
        if isinstance(node.op, ast.Mult):
            return a * b
        if isinstance(node.op, ast.Pow):
            if not isinstance(b, int) or b < 0:
                raise ValueError("exponents must be nonnegative integers")
            return a**b
    raise ValueError(f"unsupported syntax: {ast.dump(node)}")


def parse_poly(text: str, ctx: fmpz_mpoly_ctx = CTX) -> fmpz_mpoly:
    """Parse an integer polynomial such as ``d^2*t^5+2*d*t^5-4``.

    The multiplication sign is optional and parentheses are allowed.
    """
    names = dict(zip(ctx.names(), ctx.gens()))
    try:
        tree = ast.parse(_to_python_expr(text), mode="eval")
    except SyntaxError as exc:
        raise ValueError(f"malformed polynomial: {text!r}") from exc
    value = _eval_node(tree, names)
    if isinstance(value, int):
        return ctx.from_dict({(0,) * ctx.nvars(): value}) if value else ctx.from_dict({})
    return value


def format_poly(p: fmpz_mpoly) -> str:
    """Serialize in the compact style of the curve database files."""
    return str(p).replace(" ", "")


def const(c: int, ctx: fmpz_mpoly_ctx = CTX) -> fmpz_mpoly:
    return ctx.from_dict({(0,) * ctx.nvars(): c}) if c else ctx.from_dict({})


def exact_divide(a: fmpz_mpoly, b: fmpz_mpoly) -> fmpz_mpoly:
    """Return ``q`` with ``a == q*b``; raise :class:`NotDivisible` otherwise."""
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    q, r = divmod(a, b)
    if not r.is_zero():
        raise NotDivisible("remainder is nonzero")
    return q


def multiplicity(a: fmpz_mpoly, f: fmpz_mpoly) -> tuple[int, fmpz_mpoly]:
    """Largest ``m`` with ``f^m | a`` together with the cofactor ``a / f^m``."""
    if a.is_zero():
        raise ValueError("multiplicity in the zero polynomial is infinite")
    if f.is_constant():
        raise ValueError("multiplicity of a constant is undefined")
    m = 0
    while True:
        q, r = divmod(a, f)
        if not r.is_zero():
            return m, a
        a, m = q, m + 1


def degree_in(p: fmpz_mpoly, var: str) -> int:
    idx = p.context().names().index(var)
    return int(max((m[idx] for m in p.monoms()), default=-1))


def evaluate(p: fmpz_mpoly, point: Mapping[str, object]):
    """Evaluate term by term at a point whose coordinates support ``+`` and ``*``.

    Works for ints, Fractions, ``nmod`` values and algebraic numbers alike.
    """
    names = p.context().names()
    values = [point[n] for n in names]
    total = 0
    for exps, c in zip(p.monoms(), p.coeffs()):
        term = int(c)
        for v, e in zip(values, exps):
            if e:
                term = term * v**int(e)
        total = total + term
    return total


def reduce_mod(p: fmpz_mpoly, point: Mapping[str, int], prime: int) -> nmod:
    """Value of ``p`` at an integer point, reduced modulo ``prime``."""
    vals = {k: nmod(v, prime) for k, v in point.items()}
    return nmod(0, prime) + evaluate(p, vals)


def from_terms(terms: Iterable[tuple[tuple[int, int], int]], ctx: fmpz_mpoly_ctx = CTX) -> fmpz_mpoly:
    out: dict[tuple[int, ...], int] = {}
    for exps, c in terms:
        out[exps] = out.get(exps, 0) + c
    return ctx.from_dict({k: v for k, v in out.items() if v})


def to_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, fmpz)):
        return Fraction(int(c))
    return Fraction(int(c.p), int(c.q))
