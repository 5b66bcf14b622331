"""Skein evaluation: local relation sets, closed-diagram evaluation, open
reduction to a basis, the twisted (dotted) variant and a face-colouring oracle.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Any, Callable, Iterable, Mapping, Sequence

from .algebra.numfield import ExtensionField
from .algebra.ratfunc import RatFunc
from .diagram import (H_diagram, I_diagram, PlanarDiagram, cupcap, empty, par, polygon,
                      rotate, splice, strand, tree, vertex)

Terms = tuple[tuple[Any, PlanarDiagram], ...]


class StuckDiagram(ArithmeticError):
    """No rule of the relation set applies; ``remnant`` is the irreducible diagram."""

    def __init__(self, remnant: PlanarDiagram, message: str = "no applicable relation"):
        super().__init__(f"{message}: {remnant!r} with internal faces {remnant.face_sizes()}")
        self.remnant = remnant


class ExcludedParameters(ValueError):
    """Parameters lie on a locus excluded by the relation set."""


@dataclass
class RelationSet:
    """A family of local reduction rules with coefficients in one scalar ring.

    ``square`` and ``pentagon`` are templates over 4- and 5-point diagrams,
    applied with the template's boundary point ``j`` at the ``j``-th dart
    leaving the face counterclockwise.  ``flip`` rewrites the ``H``
    neighbourhood of an edge of a face of size four or more and is used when
    no face template applies.  ``region_rules`` map ``"pentapent"`` and
    ``"hexapent"`` to templates over the union of the two faces.
    """

    name: str
    loop: Any
    bigon: Any
    triangle: Any
    zero: Any
    one: Any
    square: Terms | None = None
    pentagon: Terms | None = None
    flip: Terms | None = None
    region_rules: Mapping[str, Terms] = field(default_factory=dict)
    twisted: bool = False
    omega: Any = None
    params: Mapping[str, Any] = field(default_factory=dict)

    def face_rule(self, size: int) -> tuple[str, Terms] | None:
        if size == 2:
            return ("bigon", ((self.bigon, strand()),))
        if size == 3:
            return ("triangle", ((self.triangle, vertex()),))
        if size == 4 and self.square is not None:
            return ("square", self.square)
        if size == 5 and self.pentagon is not None:
            return ("pentagon", self.pentagon)
        return None

    def can_reduce(self, size: int) -> bool:
        return self.face_rule(size) is not None or (size >= 4 and self.flip is not None)


# presets -----------------------------------------------------------------

def _d4_templates(c_I, c_H, c_par, c_cc) -> Terms:
    return tuple((c, dg) for c, dg in ((c_I, I_diagram()), (c_H, H_diagram()),
                                       (c_par, par()), (c_cc, cupcap())) if c != 0)


def _coerce(x, ring_one):
    return ring_one * x


def generic_cubic(d=None, t=None) -> RelationSet:
    """Cubic relations: loop ``d``, bigon 1, triangle ``t`` and the square
    reduction with denominator ``Q11 = dt + d + t``."""
    if d is None or t is None:
        d, t = RatFunc.gens()
    one = d * 0 + 1
    zero = one * 0
    q11 = d * t + d + t
    if q11 == 0 or d == 0:
        raise ExcludedParameters("generic cubic relations need d != 0 and dt + d + t != 0")
    a = (d * t * t + t * t - 1) / q11
    b = (-t * t + t + 1) / q11
    return RelationSet("generic_cubic", d, one, t, zero, one,
                       square=_d4_templates(a, a, b, b), params={"d": d, "t": t})


def so3(d=None) -> RelationSet:
    """SO(3)_q relations: ``t = (d-2)/(d-1)`` and ``H = I - ∥/(d-1) + ∪∩/(d-1)``."""
    if d is None:
        d = RatFunc.gens(_ctx("d"))[0]
    one = d * 0 + 1
    if d - 1 == 0 or d == 0:
        raise ExcludedParameters("SO(3) relations need d != 0, 1")
    t = (d - 2) / (d - 1)
    inv = one / (d - 1)
    return RelationSet("so3", d, one, t, one * 0, one,
                       flip=_d4_templates(one, 0, -inv, inv), params={"d": d, "t": t})


def chromatic(n: int, normalized: bool = False) -> RelationSet:
    """Face-colouring relations: loop n-1, bigon n-2, triangle n-3 and
    ``H + ∥ = I + ∪∩``, where ``∥`` pairs points (0,1) and (2,3).  With ``normalized`` the vertex is rescaled so the
    bigon is 1, giving ``t = (n-3)/(n-2)``."""
    if n < 1:
        raise ExcludedParameters("chromatic relations need n >= 1")
    if not normalized:
        return RelationSet(f"chromatic({n})", n - 1, n - 2, n - 3, 0, 1,
                           flip=_d4_templates(1, 0, -1, 1), params={"n": n})
    if n == 2:
        raise ExcludedParameters("the normalized chromatic set needs n != 2")
    s = Fraction(1, n - 2)
    return RelationSet(f"chromatic_normalized({n})", Fraction(n - 1), Fraction(1),
                       Fraction(n - 3, n - 2), Fraction(0), Fraction(1),
                       flip=_d4_templates(1, 0, -s, s), params={"n": n})


def _ctx(*names):
    from flint import fmpz_mpoly_ctx
    return fmpz_mpoly_ctx.get(names, "lex")


def g2_values(q=None) -> dict[str, Any]:
    """Loop, triangle and pentagon coefficients of the (G2)_q relations in ``ℚ(q)``."""
    if q is None:
        q = RatFunc.gens(_ctx("q"))[0]
    one = q * 0 + 1
    qi = one / q
    d = q**10 + q**8 + q**2 + 1 + qi**2 + qi**8 + qi**10
    t = -(q**2 - 1 + qi**2) / (q**4 + qi**4)
    phi36 = q**2 + 1 + qi**2
    phi8 = q**2 + qi**2
    phi16 = q**4 + qi**4
    sq_a = phi8 / (phi36 * phi16)
    sq_b = one / (phi36 * phi16**2)
    alpha = -one / (phi36 * phi16)
    beta = -one / (phi36**2 * phi16**2)
    return {"q": q, "d": d, "t": t, "square_a": sq_a, "square_b": sq_b,
            "alpha": alpha, "beta": beta, "one": one}


def pentagon_trees() -> list[PlanarDiagram]:
    """The five trees in D(5,0): rotations of the comb with legs 0, 1 on one vertex."""
    return [rotate(tree(5), c) if c else tree(5) for c in range(5)]


def pentagon_forests() -> list[PlanarDiagram]:
    """The five forests in D(5,0): a vertex on three points and a strand."""
    from .diagram import tensor
    base = tensor(vertex(), strand())
    return [rotate(base, c) if c else base for c in range(5)]


def g2(q=None) -> RelationSet:
    v = g2_values(q)
    one = v["one"]
    t = v["t"]
    a, b = v["square_a"], v["square_b"]
    pent = tuple((v["alpha"], x) for x in pentagon_trees()) + \
        tuple((v["beta"], x) for x in pentagon_forests())
    return RelationSet("g2", v["d"], one, t, one * 0, one,
                       square=_d4_templates(a, a, b, b), pentagon=pent,
                       params={"q": v["q"], "d": v["d"], "t": t})


# evaluation ----------------------------------------------------------------

def face_ports(dg: PlanarDiagram, face_darts: Sequence[int]) -> tuple[list[int], list[int]]:
    """Vertices of an internal face and its outgoing darts, counterclockwise from inside."""
    verts = [h // 3 for h in face_darts]
    ports = [dg.sigma(h) for h in face_darts]
    ports.reverse()
    verts.reverse()
    return verts, ports


def flip_ports(dg: PlanarDiagram, h: int) -> tuple[list[int], list[int]]:
    """The ``H`` neighbourhood of edge ``h``: ends counterclockwise, with the two
    ends at ``h``'s vertex first."""
    g = dg.alpha[h]
    s = dg.sigma
    return [h // 3, g // 3], [s(h), s(s(h)), s(g), s(s(g))]


def region_ports(dg: PlanarDiagram, internal: set[int], start: int) -> list[int]:
    """Darts leaving a region, counterclockwise from ``start``; ``internal``
    holds both darts of every edge inside the region."""
    ports = [start]
    h = dg.sigma(start)
    while True:
        while h in internal:
            h = dg.sigma(dg.alpha[h])
        if h == start:
            return ports
        ports.append(h)
        h = dg.sigma(h)


def _face_corner(h: int) -> int:
    # the face containing dart h sits in the corner between sigma^-1(h) and h
    return (h % 3 - 1) % 3


class Evaluator:
    """Evaluates closed diagrams under a relation set, memoised by key.

    With ``rng`` set, the face to reduce is drawn at random among all faces
    with an applicable rule instead of the deterministic smallest one.
    """

    def __init__(self, relations: RelationSet, rng: random.Random | None = None,
                 memo: bool = True):
        self.r = relations
        self.rng = rng
        self.memo: dict[bytes, Any] | None = {} if memo else None

    # closed diagrams ------------------------------------------------------
    def evaluate(self, dg: PlanarDiagram):
        if dg.n:
            raise ValueError("evaluate expects a closed diagram")
        r = self.r
        value = r.one
        if dg.loops:
            value = value * r.loop ** dg.loops
        if dg.V == 0:
            return value
        comps = dg.components() if len(dg._components()) > 1 else [
            PlanarDiagram(dg.V, 0, dg.alpha, 0, dg.dots, check=False)]
        for c in comps:
            value = value * self._connected(c)
            if value == 0:
                return r.zero
        return value

    def _connected(self, dg: PlanarDiagram):
        key = dg.key if self.memo is not None else None
        if key is not None and key in self.memo:
            return self.memo[key]
        val = self._reduce_connected(dg)
        if key is not None:
            self.memo[key] = val
        return val

    def _reduce_connected(self, dg: PlanarDiagram):
        r = self.r
        if dg.bridges():
            return r.zero
        rewrite = self.choose_rewrite(dg)
        if rewrite is None:
            raise StuckDiagram(dg)
        total = r.zero
        for coef, new in rewrite:
            if coef == 0:
                continue
            total = total + coef * self.evaluate(new)
        return total

    # rule selection -------------------------------------------------------
    def choose_rewrite(self, dg: PlanarDiagram, allowed: Callable[[int], bool] | None = None
                       ) -> list[tuple[Any, PlanarDiagram]] | None:
        """One rewrite step on an internal face, or ``None`` when stuck."""
        r = self.r
        faces = [f for f in dg.internal_faces() if allowed is None or allowed(f.size)]
        options = [f for f in faces if r.can_reduce(f.size)]
        if not options:
            return self._region_rewrite(dg)
        if self.rng is not None:
            face = self.rng.choice(sorted(options, key=lambda f: min(f.darts)))
        else:
            face = min(options, key=lambda f: (f.size, min(f.darts)))
        return self.rewrite_face(dg, face.darts)

    def rewrite_face(self, dg: PlanarDiagram, darts: Sequence[int]):
        r = self.r
        size = len(darts)
        rule = r.face_rule(size)
        if rule is None:
            # flip the edge after the face's lowest dart
            h = min(darts)
            verts, ports = flip_ports(dg, h)
            return self._apply(dg, verts, ports, r.flip)
        verts, ports = face_ports(dg, darts)
        scale = r.one
        if r.twisted:
            scale, dg = self._dots_into_face(dg, darts)
        _, terms = rule
        out = self._apply(dg, verts, ports, terms)
        return [(scale * c, x) for c, x in out]

    def _apply(self, dg, verts, ports, terms):
        return [(c, splice(dg, verts, ports, tpl)) for c, tpl in terms if c != 0]

    def _region_rewrite(self, dg: PlanarDiagram):
        r = self.r
        if not r.region_rules:
            return None
        fid, faces = dg._face_data
        for name, sizes in (("pentapent", (5, 5)), ("hexapent", (5, 6))):
            terms = r.region_rules.get(name)
            if terms is None:
                continue
            for i, fa in enumerate(faces):
                if not fa.internal or fa.size != sizes[0]:
                    continue
                for h in fa.darts:
                    j = fid[dg.alpha[h]]
                    fb = faces[j]
                    if j == i or not fb.internal or fb.size != sizes[1]:
                        continue
                    internal = set()
                    for x in fa.darts + fb.darts:
                        internal.add(x)
                        internal.add(dg.alpha[x])
                    # start two face-A vertices after the shared edge
                    start = dg.sigma(dg.phi(dg.phi(h)))
                    ports = region_ports(dg, internal, start)
                    verts = sorted({x // 3 for x in internal})
                    return self._apply(dg, verts, ports, terms)
        return None

    # twisted support ------------------------------------------------------
    def _dots_into_face(self, dg: PlanarDiagram, darts: Sequence[int]):
        """Move each face vertex's dot into the face; ``D = ω^-k D'`` for ``k`` ccw steps."""
        dots = list(dg.dots)
        k = 0
        for h in darts:
            v = h // 3
            target = _face_corner(h)
            k += (target - dots[v]) % 3
            dots[v] = target
        moved = PlanarDiagram(dg.V, dg.n, dg.alpha, dg.loops, dots, check=False)
        return self.r.omega ** ((-k) % 3), moved


def evaluate_closed(dg: PlanarDiagram, relations: RelationSet, *, rng: random.Random | None = None):
    return Evaluator(relations, rng=rng, memo=rng is None).evaluate(dg)


# open reduction --------------------------------------------------------------

class LinearCombination:
    """Finite sum of diagrams with scalar coefficients, keyed by canonical key."""

    def __init__(self, terms: Iterable[tuple[Any, PlanarDiagram]] = (), zero=0):
        self.coeffs: dict[bytes, Any] = {}
        self.diagrams: dict[bytes, PlanarDiagram] = {}
        self.zero = zero
        for c, dg in terms:
            self.add(c, dg)

    def add(self, c, dg: PlanarDiagram) -> None:
        if c == 0:
            return
        k = dg.key
        if k in self.coeffs:
            s = self.coeffs[k] + c
            if s == 0:
                del self.coeffs[k]
                del self.diagrams[k]
            else:
                self.coeffs[k] = s
        else:
            self.coeffs[k] = c
            self.diagrams[k] = dg

    def items(self):
        return [(self.coeffs[k], self.diagrams[k]) for k in self.coeffs]

    def coefficient(self, dg: PlanarDiagram):
        return self.coeffs.get(dg.key, self.zero)

    def scaled(self, c) -> "LinearCombination":
        return LinearCombination(((c * a, dg) for a, dg in self.items()), self.zero)

    def __add__(self, other: "LinearCombination") -> "LinearCombination":
        out = LinearCombination(self.items(), self.zero)
        for c, dg in other.items():
            out.add(c, dg)
        return out

    def __sub__(self, other: "LinearCombination") -> "LinearCombination":
        return self + other.scaled(-1)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __len__(self):
        return len(self.coeffs)

    def __repr__(self):
        return f"LinearCombination({len(self)} terms)"


class OpenReducer:
    """Reduce open diagrams to a linear combination of target-basis members."""

    def __init__(self, relations: RelationSet, least: int = 4, budget: int = 0,
                 evaluator: Evaluator | None = None):
        self.r = relations
        self.least = least
        self.budget = budget
        self.ev = evaluator or Evaluator(relations)
        self.memo: dict[bytes, LinearCombination] = {}

    def accepts(self, dg: PlanarDiagram) -> bool:
        sizes = dg.face_sizes()
        return all(s >= self.least for s in sizes) and len(sizes) <= self.budget

    def reduce(self, dg: PlanarDiagram) -> LinearCombination:
        if dg.n == 0:
            return LinearCombination([(self.ev.evaluate(dg), empty())], self.r.zero)
        key = dg.key
        if key in self.memo:
            return self.memo[key]
        res = self._reduce(dg)
        self.memo[key] = res
        return res

    def _reduce(self, dg: PlanarDiagram) -> LinearCombination:
        r = self.r
        scale = r.one
        if dg.loops:
            scale = scale * r.loop ** dg.loops
        closed = [darts for darts, b in dg._components() if not b]
        if closed:
            for c in dg.closed_components():
                scale = scale * self.ev.evaluate(c)
            keep = [h for darts, b in dg._components() if b for h in darts]
            dg = dg._subdiagram(keep)
        else:
            dg = PlanarDiagram(dg.V, dg.n, dg.alpha, 0, dg.dots, check=False)
        if scale == 0 or dg.bridges():
            return LinearCombination(zero=r.zero)
        if self.accepts(dg):
            return LinearCombination([(scale, dg)], r.zero)
        sizes = dg.face_sizes()
        small = min(sizes)
        if small < self.least:
            allowed = lambda s: s < self.least
        else:
            allowed = None
        step = self.ev.choose_rewrite(dg, allowed)
        if step is None:
            raise StuckDiagram(dg)
        out = LinearCombination(zero=r.zero)
        for c, new in step:
            if c == 0:
                continue
            for c2, x in self.reduce(new).items():
                out.add(scale * c * c2, x)
        return out


def reduce_open(dg: PlanarDiagram, relations: RelationSet, target) -> LinearCombination:
    """Express ``dg`` in the target basis (a :class:`~skein.enumerate.BasisSet`)."""
    least = 4 if target.variant == "plain" else 5
    red = OpenReducer(relations, least, target.k)
    out = red.reduce(dg)
    keys = set(target.keys)
    for _, x in out.items():
        if x.key not in keys:
            raise StuckDiagram(x, "reduction left a diagram outside the target basis")
    return out


# colouring oracle --------------------------------------------------------------

def chromatic_count(dg: PlanarDiagram, n: int) -> int:
    """Proper face ``n``-colourings with the outer face's colour fixed."""
    if dg.n:
        raise ValueError("chromatic_count expects a closed diagram")
    if n < 1:
        raise ValueError("need at least one colour")
    total = (n - 1) ** dg.loops
    if dg.V == 0:
        return total
    for comp in dg.components():
        total *= _colourings(comp, n) // n
    return total


def _colourings(dg: PlanarDiagram, n: int) -> int:
    fid, faces = dg._face_data
    F = len(faces)
    adj = [set() for _ in range(F)]
    for h in range(dg.num_darts):
        a, b = fid[h], fid[dg.alpha[h]]
        adj[a].add(b)
        adj[b].add(a)
    if any(i in adj[i] for i in range(F)):
        return 0
    order = sorted(range(F), key=lambda i: -len(adj[i]))
    colour = [-1] * F

    def count(idx: int) -> int:
        if idx == F:
            return 1
        f = order[idx]
        used = {colour[g] for g in adj[f] if colour[g] >= 0}
        s = 0
        for c in range(n):
            if c not in used:
                colour[f] = c
                s += count(idx + 1)
        colour[f] = -1
        return s

    return count(0)


# twisted relations ----------------------------------------------------------------

_OMEGA_FIELDS: dict = {}


def omega_field(base_one, name: str = "w") -> ExtensionField:
    """``base(ω)`` with ``ω² + ω + 1 = 0``, embedded at ``exp(2πi/3)``.

    Cached per base ring so elements built separately share one field.
    """
    import cmath
    ring = (type(base_one), tuple(base_one.context().names()) if isinstance(base_one, RatFunc) else ())
    key = (ring, name)
    if key not in _OMEGA_FIELDS:
        def numeric(c):
            if isinstance(c, RatFunc):
                raise ValueError("numeric image of a rational function")
            return complex(c)

        _OMEGA_FIELDS[key] = ExtensionField([base_one, base_one, 1], name=name, zero=base_one * 0,
                                            one=base_one, embedding=cmath.exp(2j * cmath.pi / 3),
                                            base_numeric=numeric)
    return _OMEGA_FIELDS[key]


def default_dots(dg: PlanarDiagram) -> PlanarDiagram:
    """Dot each vertex in the corner just before the dart through which the
    canonical traversal first reaches it (counterclockwise)."""
    v3 = 3 * dg.V
    dots = [0] * dg.V
    seen: set[int] = set()
    roots = list(range(v3, dg.num_darts)) or [0]
    from collections import deque
    queue = deque()
    labelled: set[int] = set()

    def enter(h: int) -> None:
        v = h // 3
        if v in seen:
            return
        seen.add(v)
        dots[v] = (h % 3 - 1) % 3
        for j in range(3):
            g = 3 * v + (h % 3 + j) % 3
            queue.append(g)

    for r0 in roots:
        if r0 >= v3:
            queue.append(r0)
        else:
            enter(r0)
        while queue:
            h = queue.popleft()
            if h in labelled:
                continue
            labelled.add(h)
            g = dg.alpha[h]
            if g < v3:
                enter(g)
            elif g not in labelled:
                queue.append(g)
    for v in range(dg.V):
        if v not in seen:
            enter(3 * v)
            while queue:
                h = queue.popleft()
                if h in labelled:
                    continue
                labelled.add(h)
                g = dg.alpha[h]
                if g < v3:
                    enter(g)
    return PlanarDiagram(dg.V, dg.n, dg.alpha, dg.loops, dots, check=False)


def dotted_polygon_inward(k: int) -> PlanarDiagram:
    """``k``-gon with every dot inside the polygon."""
    p = polygon(k)
    dots = [0] * p.V
    for v in range(p.V):
        # the internal face occupies the corner between the 'next' and 'prev' darts
        dots[v] = 1
    return PlanarDiagram(p.V, p.n, p.alpha, 0, dots, check=False)


def twisted_base(d=None, omega_power: int = 1) -> RelationSet:
    """Twisted relations without a square rule: loop d, bigon 1, triangle 0."""
    if d is None:
        d = RatFunc.gens(_ctx("d"))[0]
    one = d * 0 + 1
    W = omega_field(one)
    w = W.gen ** omega_power
    one_w = W.from_base(one)
    return RelationSet("twisted_base", W.from_base(d), one_w, one_w * 0, one_w * 0, one_w,
                       twisted=True, omega=w, params={"d": d, "field": W})


def twisted_cubic(d=None, omega_power: int = 1, square: Terms | None = None) -> RelationSet:
    """Twisted cubic relations.  The square template is derived from the
    radical of the twisted Gram matrix on D(4,0) unless given."""
    base = twisted_base(d, omega_power)
    if square is None:
        from .gram import derive_twisted_square
        square = derive_twisted_square(base)
    return replace(base, name="twisted_cubic", square=square)
