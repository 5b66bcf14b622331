"""Planar trivalent diagrams as combinatorial maps.

A diagram with ``V`` vertices and ``n`` boundary points has ``3V + n`` darts.
Vertex ``v`` owns darts ``3v, 3v+1, 3v+2`` in counterclockwise order, and dart
``3V + i`` is boundary point ``i`` (counted counterclockwise from the marked
point).  ``alpha`` pairs darts into edges; an edge between two boundary darts
is a strand.  Free loops are kept as a count.  Twisted diagrams carry a dot
per vertex, stored as a corner index ``c`` meaning the corner between the
vertex's local darts ``c`` and ``c+1``.

For face tracing the boundary circle is contracted to one extra vertex whose
rotation is ``b_i -> b_(i-1)``, so the faces of an open diagram are the faces
of a map on the sphere and Euler's formula applies per component.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence


class DiagramError(ValueError):
    """Malformed or non-planar diagram data."""


@dataclass(frozen=True)
class Face:
    darts: tuple[int, ...]
    size: int
    boundary_intervals: int

    @property
    def internal(self) -> bool:
        return self.boundary_intervals == 0

    @property
    def charge(self) -> int:
        return 6 - self.size - 2 * self.boundary_intervals


class PlanarDiagram:
    __slots__ = ("V", "n", "alpha", "loops", "dots", "__dict__")

    def __init__(self, V: int, n: int, alpha: Sequence[int], loops: int = 0,
                 dots: Sequence[int] | None = None, *, check: bool = True):
        self.V = V
        self.n = n
        self.alpha = tuple(alpha)
        self.loops = loops
        self.dots = None if dots is None else tuple(d % 3 for d in dots)
        if check:
            self.validate()

    # basic structure ------------------------------------------------------
    @property
    def num_darts(self) -> int:
        return 3 * self.V + self.n

    @property
    def E(self) -> int:
        return self.num_darts // 2 + self.loops

    def is_boundary(self, h: int) -> bool:
        return h >= 3 * self.V

    def sigma(self, h: int) -> int:
        v3 = 3 * self.V
        if h < v3:
            return h - 2 if h % 3 == 2 else h + 1
        i = h - v3
        return v3 + (i - 1) % self.n

    def sigma_inv(self, h: int) -> int:
        v3 = 3 * self.V
        if h < v3:
            return h + 2 if h % 3 == 0 else h - 1
        i = h - v3
        return v3 + (i + 1) % self.n

    def phi(self, h: int) -> int:
        return self.sigma(self.alpha[h])

    def boundary_dart(self, i: int) -> int:
        return 3 * self.V + i

    @property
    def twisted(self) -> bool:
        return self.dots is not None

    def validate(self) -> None:
        N = self.num_darts
        if self.V < 0 or self.n < 0 or self.loops < 0:
            raise DiagramError("negative counts")
        if len(self.alpha) != N:
            raise DiagramError(f"expected {N} darts, got {len(self.alpha)}")
        for h, g in enumerate(self.alpha):
            if not 0 <= g < N or g == h or self.alpha[g] != h:
                raise DiagramError(f"pairing is not a fixed-point-free involution at dart {h}")
        if self.dots is not None and len(self.dots) != self.V:
            raise DiagramError("one dot per vertex is required")
        for comp, has_boundary in self._components():
            darts = comp
            verts = {h // 3 for h in darts if h < 3 * self.V}
            faces = {self._face_id(h) for h in darts}
            e = len(darts) // 2
            v = len(verts) + (1 if has_boundary else 0)
            if v - e + len(faces) != 2:
                raise DiagramError("Euler characteristic check failed: diagram is not planar")

    # connectivity ---------------------------------------------------------
    @cached_property
    def _component_of(self) -> list[int]:
        N = self.num_darts
        v3 = 3 * self.V
        comp = [-1] * N
        c = 0
        for start in range(N):
            if comp[start] >= 0:
                continue
            stack = [start]
            comp[start] = c
            while stack:
                h = stack.pop()
                if h < v3:
                    base = h - h % 3
                    nbrs: Iterable[int] = (base, base + 1, base + 2, self.alpha[h])
                else:
                    # the boundary circle joins all boundary darts
                    nbrs = [self.alpha[h]] + list(range(v3, N))
                for g in nbrs:
                    if comp[g] < 0:
                        comp[g] = c
                        stack.append(g)
            c += 1
        return comp

    def _components(self) -> list[tuple[list[int], bool]]:
        groups: dict[int, list[int]] = {}
        for h, c in enumerate(self._component_of):
            groups.setdefault(c, []).append(h)
        v3 = 3 * self.V
        return [(darts, any(h >= v3 for h in darts)) for darts in groups.values()]

    def components(self) -> list["PlanarDiagram"]:
        """Closed components as separate diagrams (plus the boundary one, if any)."""
        return [self._subdiagram(darts) for darts, _ in self._components()]

    def closed_components(self) -> list["PlanarDiagram"]:
        return [self._subdiagram(darts) for darts, b in self._components() if not b]

    @property
    def is_connected(self) -> bool:
        if self.num_darts == 0:
            return self.loops <= 1
        return self.loops == 0 and len(self._components()) == 1

    @property
    def is_boundary_connected(self) -> bool:
        """Every component meets the boundary (no closed components or loops)."""
        return self.loops == 0 and all(b for _, b in self._components())

    def _subdiagram(self, darts: Iterable[int]) -> "PlanarDiagram":
        darts = set(darts)
        v3 = 3 * self.V
        verts = sorted({h // 3 for h in darts if h < v3})
        bnd = sorted(h for h in darts if h >= v3)
        remap = {}
        for k, v in enumerate(verts):
            for j in range(3):
                remap[3 * v + j] = 3 * k + j
        for i, h in enumerate(bnd):
            remap[h] = 3 * len(verts) + i
        alpha = [0] * len(remap)
        for h, nh in remap.items():
            alpha[nh] = remap[self.alpha[h]]
        dots = None if self.dots is None else [self.dots[v] for v in verts]
        return PlanarDiagram(len(verts), len(bnd), alpha, 0, dots, check=False)

    # faces ----------------------------------------------------------------
    @cached_property
    def _face_data(self) -> tuple[list[int], list[Face]]:
        N = self.num_darts
        fid = [-1] * N
        faces: list[Face] = []
        v3 = 3 * self.V
        for start in range(N):
            if fid[start] >= 0:
                continue
            cyc = []
            h = start
            while fid[h] < 0:
                fid[h] = len(faces)
                cyc.append(h)
                h = self.phi(h)
            m = sum(1 for x in cyc if x >= v3)
            faces.append(Face(tuple(cyc), len(cyc), m))
        return fid, faces

    def _face_id(self, h: int) -> int:
        return self._face_data[0][h]

    def face_of(self, h: int) -> Face:
        fid, faces = self._face_data
        return faces[fid[h]]

    def faces(self) -> list[Face]:
        """All faces of the map (free loops are not traced)."""
        return list(self._face_data[1])

    def internal_faces(self) -> list[Face]:
        return [f for f in self._face_data[1] if f.internal]

    def face_sizes(self) -> list[int]:
        return sorted(f.size for f in self.internal_faces())

    def bridges(self) -> list[int]:
        """Darts ``h`` (one per edge) whose edge has the same face on both sides."""
        fid = self._face_data[0]
        return [h for h in range(self.num_darts) if h < self.alpha[h] and fid[h] == fid[self.alpha[h]]]

    # keys -----------------------------------------------------------------
    def _code_from(self, roots: Sequence[int]) -> tuple:
        """Traversal code: labels are assigned breadth first, a vertex being
        labelled from the dart through which it is first reached."""
        v3 = 3 * self.V
        label: dict[int, int] = {}
        order: list[int] = []
        queue: deque[int] = deque()
        vdots: list[int] = []

        def visit_vertex(h: int) -> None:
            base = 3 * (h // 3)
            j = h - base
            for r in range(3):
                g = base + (j + r) % 3
                label[g] = len(order)
                order.append(g)
                queue.append(g)
            if self.dots is not None:
                vdots.append((self.dots[h // 3] - j) % 3)

        for r in roots:
            if r not in label:
                if r >= v3:
                    label[r] = len(order)
                    order.append(r)
                    queue.append(r)
                else:
                    visit_vertex(r)
        while queue:
            h = queue.popleft()
            g = self.alpha[h]
            if g not in label:
                if g >= v3:
                    label[g] = len(order)
                    order.append(g)
                    queue.append(g)
                else:
                    visit_vertex(g)
        code = tuple(label[self.alpha[h]] for h in order)
        return (code, tuple(vdots)) if self.dots is not None else (code,)

    @cached_property
    def key(self) -> bytes:
        """Canonical key: equal for isotopic diagrams with the same marking."""
        parts = []
        comps = self._components()
        v3 = 3 * self.V
        bnd = [h for h in range(v3, self.num_darts)]
        closed_codes = []
        if bnd:
            head = self._code_from(bnd)
        else:
            head = ()
        for darts, has_b in comps:
            if has_b:
                continue
            best = min(self._code_from([h]) for h in darts)
            closed_codes.append(best)
        closed_codes.sort()
        parts = (self.n, head, tuple(closed_codes), self.loops)
        return _encode(parts)

    def __eq__(self, other):
        return isinstance(other, PlanarDiagram) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"PlanarDiagram(n={self.n}, V={self.V}, loops={self.loops})"

    def sort_key(self) -> tuple:
        return (self.V, self.key)

    # text format ----------------------------------------------------------
    def to_text(self) -> str:
        v3 = 3 * self.V
        lines = [f"PTG n={self.n} V={self.V}"]
        for v in range(self.V):
            lines.append(f"rot {v}: {3 * v} {3 * v + 1} {3 * v + 2}")
        pairs = []
        for h, g in enumerate(self.alpha):
            if h < g and not (h < v3 <= g):
                pairs.append(f"({h},{g})")
        lines.append("pair: " + " ".join(pairs))
        bnd = []
        for i in range(self.n):
            b = v3 + i
            a = self.alpha[b]
            bnd.append(str(a if a < v3 else b))
        lines.append("boundary: " + " ".join(bnd))
        if self.dots is not None:
            lines.append("dots: " + " ".join(f"{v}:{c}" for v, c in enumerate(self.dots)))
        if self.loops:
            lines.append(f"loops: {self.loops}")
        return "\n".join(lines)


def _encode(obj) -> bytes:
    return repr(obj).replace(" ", "").encode()


# text parsing -------------------------------------------------------------

_HEADER = re.compile(r"^PTG\s+n=(\d+)\s+V=(\d+)\s*$")
_ROT = re.compile(r"^rot\s+(\d+)\s*:\s*(\d+)\s+(\d+)\s+(\d+)\s*$")
_PAIR = re.compile(r"\(\s*(\d+)\s*,\s*(\d+)\s*\)")


def parse_diagrams(text: str) -> list[PlanarDiagram]:
    """Parse every ``PTG`` record in ``text``."""
    records: list[list[str]] = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("PTG"):
            records.append([line])
        elif not records:
            raise DiagramError(f"data before the first PTG header: {line!r}")
        else:
            records[-1].append(line)
    return [_parse_record(r) for r in records]


def build_diagram(text: str) -> PlanarDiagram:
    ds = parse_diagrams(text)
    if len(ds) != 1:
        raise DiagramError(f"expected one diagram record, found {len(ds)}")
    return ds[0]


def _parse_record(lines: list[str]) -> PlanarDiagram:
    m = _HEADER.match(lines[0])
    if not m:
        raise DiagramError(f"malformed header: {lines[0]!r}")
    n, V = int(m.group(1)), int(m.group(2))
    rots: dict[int, tuple[int, int, int]] = {}
    pairs: list[tuple[int, int]] = []
    boundary: list[int] | None = None
    dots: dict[int, int] | None = None
    loops = 0
    for line in lines[1:]:
        if line.startswith("rot"):
            r = _ROT.match(line)
            if not r:
                raise DiagramError(f"malformed rotation line (vertices must be trivalent): {line!r}")
            v = int(r.group(1))
            if v in rots:
                raise DiagramError(f"vertex {v} listed twice")
            rots[v] = (int(r.group(2)), int(r.group(3)), int(r.group(4)))
        elif line.startswith("pair:"):
            body = line[5:]
            found = _PAIR.findall(body)
            if _PAIR.sub("", body).strip():
                raise DiagramError(f"malformed pair list: {line!r}")
            pairs.extend((int(a), int(b)) for a, b in found)
        elif line.startswith("boundary:"):
            toks = line[9:].split()
            if not all(t.isdigit() for t in toks):
                raise DiagramError(f"malformed boundary list: {line!r}")
            boundary = [int(t) for t in toks]
        elif line.startswith("dots:"):
            dots = {}
            for tok in line[5:].split():
                a, _, b = tok.partition(":")
                if not (a.isdigit() and b in ("0", "1", "2")):
                    raise DiagramError(f"malformed dot entry {tok!r}")
                dots[int(a)] = int(b)
        elif line.startswith("loops:"):
            tok = line[6:].strip()
            if not tok.isdigit():
                raise DiagramError(f"malformed loop count: {line!r}")
            loops = int(tok)
        else:
            raise DiagramError(f"unrecognised line: {line!r}")
    if boundary is None:
        boundary = []
    if len(boundary) != n:
        raise DiagramError(f"header says n={n} but {len(boundary)} boundary entries given")
    if sorted(rots) != list(range(V)):
        raise DiagramError(f"expected rotations for vertices 0..{V - 1}")
    index: dict[int, int] = {}
    for v, hs in rots.items():
        for j, h in enumerate(hs):
            if h in index:
                raise DiagramError(f"half-edge {h} used twice")
            index[h] = 3 * v + j
    v3 = 3 * V
    alpha = [-1] * (v3 + n)

    def link(a: int, b: int) -> None:
        if alpha[a] >= 0 or alpha[b] >= 0 or a == b:
            raise DiagramError("pairing is not an involution")
        alpha[a], alpha[b] = b, a

    strand_ends: dict[int, int] = {}
    for i, h in enumerate(boundary):
        if h in index:
            link(index[h], v3 + i)
        else:
            if h in strand_ends:
                raise DiagramError(f"boundary half-edge {h} listed twice")
            strand_ends[h] = v3 + i
    for a, b in pairs:
        if a in strand_ends and b in strand_ends:
            link(strand_ends[a], strand_ends[b])
        elif a in index and b in index:
            link(index[a], index[b])
        else:
            raise DiagramError(f"pair ({a},{b}) mixes unknown or boundary half-edges")
    if any(x < 0 for x in alpha):
        raise DiagramError("some half-edges are unpaired")
    dot_list = None
    if dots is not None:
        if sorted(dots) != list(range(V)):
            raise DiagramError("dots must be given for every vertex")
        dot_list = [dots[v] for v in range(V)]
    return PlanarDiagram(V, n, alpha, loops, dot_list)


# operations ---------------------------------------------------------------

def rotate(d: PlanarDiagram, clicks: int) -> PlanarDiagram:
    """Advance the marked point ``clicks`` steps counterclockwise."""
    if d.n == 0:
        raise DiagramError("cannot rotate a closed diagram")
    n, v3 = d.n, 3 * d.V
    c = clicks % n

    def f(h: int) -> int:
        return h if h < v3 else v3 + (h - v3 - c) % n

    alpha = [0] * d.num_darts
    for h, g in enumerate(d.alpha):
        alpha[f(h)] = f(g)
    return PlanarDiagram(d.V, n, alpha, d.loops, d.dots, check=False)


def _mirror_map(d: PlanarDiagram, relabel_boundary: bool):
    v3, n = 3 * d.V, d.n

    def f(h: int) -> int:
        if h < v3:
            j = h % 3
            return h - j + (-j) % 3
        if relabel_boundary:
            return v3 + (n - 1 - (h - v3))
        return h

    alpha = [0] * d.num_darts
    for h, g in enumerate(d.alpha):
        alpha[f(h)] = f(g)
    dots = None if d.dots is None else [(-c - 1) % 3 for c in d.dots]
    return alpha, dots


def reflect(d: PlanarDiagram) -> PlanarDiagram:
    """Mirror image: vertex rotations reversed, boundary ``i -> n-1-i``."""
    alpha, dots = _mirror_map(d, True)
    return PlanarDiagram(d.V, d.n, alpha, d.loops, dots, check=False)


def _reverse_rotations(d: PlanarDiagram) -> PlanarDiagram:
    alpha, dots = _mirror_map(d, False)
    return PlanarDiagram(d.V, d.n, alpha, d.loops, dots, check=False)


Port = tuple[int, int]


def connect(parts: Sequence[PlanarDiagram], joins: Iterable[tuple[Port, Port]],
            outer: Sequence[Port], *, check: bool = False) -> PlanarDiagram:
    """Assemble diagrams by joining boundary points.

    Ports are ``(part index, boundary index)``.  Each port is either joined to
    another port or listed in ``outer``, which gives the new boundary in
    counterclockwise order.  Chains of joined strands are followed through, and
    chains closing up without touching a vertex become free loops.
    """
    offsets, voff = [], 0
    for p in parts:
        offsets.append(voff)
        voff += p.V
    V = voff
    n = len(outer)
    join: dict[Port, Port] = {}
    for a, b in joins:
        if a in join or b in join:
            raise DiagramError(f"port joined twice: {a} or {b}")
        join[a], join[b] = b, a
    out_index: dict[Port, int] = {}
    for i, p in enumerate(outer):
        if p in join or p in out_index:
            raise DiagramError(f"port {p} used twice")
        out_index[p] = i
    for k, p in enumerate(parts):
        for i in range(p.n):
            if (k, i) not in join and (k, i) not in out_index:
                raise DiagramError(f"port {(k, i)} left dangling")

    v3 = 3 * V
    alpha = [-1] * (v3 + n)
    loops = sum(p.loops for p in parts)

    def step(k: int, h: int):
        """From local dart ``h`` of part ``k`` follow the edge to its far end."""
        p = parts[k]
        g = p.alpha[h]
        while True:
            if g < 3 * p.V:
                return ("v", 3 * offsets[k] + g)
            port = (k, g - 3 * p.V)
            if port in out_index:
                return ("b", v3 + out_index[port])
            k, i = join[port]
            p = parts[k]
            h = 3 * p.V + i
            g = p.alpha[h]

    for k, p in enumerate(parts):
        for h in range(3 * p.V):
            _, far = step(k, h)
            alpha[3 * offsets[k] + h] = far
    for port, i in out_index.items():
        k, j = port
        p = parts[k]
        _, far = step(k, 3 * p.V + j)
        alpha[v3 + i] = far
    # chains made only of strands and joins close up into free loops
    parent: dict[Port, Port] = {}

    def find(x: Port) -> Port:
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    open_chain: set[Port] = set()
    strand_ports = []
    for k, p in enumerate(parts):
        for i in range(p.n):
            g = p.alpha[3 * p.V + i]
            if g < 3 * p.V:
                continue
            port = (k, i)
            strand_ports.append(port)
            parent[find(port)] = find((k, g - 3 * p.V))
            if port in out_index:
                open_chain.add(port)
            else:
                other = join[port]
                ok, oi = other
                if parts[ok].alpha[3 * parts[ok].V + oi] < 3 * parts[ok].V:
                    open_chain.add(port)
                else:
                    parent[find(port)] = find(other)
    bad = {find(p) for p in open_chain}
    loops += len({find(p) for p in strand_ports} - bad)
    dots = None
    if any(p.dots is not None for p in parts):
        if not all(p.dots is not None or p.V == 0 for p in parts):
            raise DiagramError("cannot mix twisted and untwisted parts")
        dots = [c for p in parts for c in (p.dots or ())]
    return PlanarDiagram(V, n, alpha, loops, dots, check=check)


def glue(x: PlanarDiagram, y: PlanarDiagram) -> PlanarDiagram:
    """Closed diagram pairing ``x`` with the mirror of ``y`` (marked points matched)."""
    if x.n != y.n:
        raise DiagramError(f"boundary counts differ: {x.n} vs {y.n}")
    ym = _reverse_rotations(y)
    return connect([x, ym], [((0, i), (1, i)) for i in range(x.n)], [])


def sphere_join(x: PlanarDiagram, z: PlanarDiagram, offset: int = 0) -> PlanarDiagram:
    """Close ``x`` with ``z`` placed outside it, unmirrored: ``x_i`` meets ``z_(offset-i)``."""
    if x.n != z.n:
        raise DiagramError(f"boundary counts differ: {x.n} vs {z.n}")
    n = x.n
    return connect([x, z], [((0, i), (1, (offset - i) % n)) for i in range(n)], [])


def tensor(x: PlanarDiagram, y: PlanarDiagram) -> PlanarDiagram:
    """Side by side: boundary of ``x`` followed by boundary of ``y``."""
    return connect([x, y], [], [(0, i) for i in range(x.n)] + [(1, i) for i in range(y.n)])


def disjoint_union(*ds: PlanarDiagram) -> PlanarDiagram:
    out = empty()
    for d in ds:
        out = tensor(out, d)
    return out


def insert(host: PlanarDiagram, gap: int, piece: PlanarDiagram) -> PlanarDiagram:
    """Place ``piece`` in the boundary gap just after point ``gap - 1``
    (so its first point becomes point ``gap``)."""
    outer = [(0, i) for i in range(gap)] + [(1, j) for j in range(piece.n)] + \
            [(0, i) for i in range(gap, host.n)]
    return connect([host, piece], [], outer)


def stack(x: PlanarDiagram, y: PlanarDiagram) -> PlanarDiagram:
    """Vertical composite of 4-point diagrams, ``x`` on top of ``y``.

    Points are 0 = top left, 1 = bottom left, 2 = bottom right, 3 = top right;
    ``x``'s bottom points meet ``y``'s top points.  The identity is ``par()``.
    """
    if x.n != 4 or y.n != 4:
        raise DiagramError("stacking is defined for 4-point diagrams")
    return connect([x, y], [((0, 1), (1, 0)), ((0, 2), (1, 3))], [(0, 0), (1, 1), (1, 2), (0, 3)])


def excise(d: PlanarDiagram, vertices: Iterable[int], ports: Sequence[int]) -> PlanarDiagram:
    """Remove ``vertices``; the listed darts of removed vertices become new boundary.

    The result keeps ``d``'s boundary points first, followed by one point per
    entry of ``ports`` (so it is only an intermediate for :func:`splice`).
    Every dart of a removed vertex whose partner is kept must be listed; darts
    of removed vertices not listed must pair among themselves.  A port paired
    with another port (a chord) becomes a strand.
    """
    gone = set(vertices)
    keep = [v for v in range(d.V) if v not in gone]
    newv = {v: k for k, v in enumerate(keep)}
    V2 = len(keep)
    v3 = 3 * V2
    n = d.n
    pos = {h: j for j, h in enumerate(ports)}

    def f(h: int) -> int:
        if h >= 3 * d.V:
            return v3 + (h - 3 * d.V)
        v = h // 3
        if v in newv:
            return 3 * newv[v] + h % 3
        if h in pos:
            return v3 + n + pos[h]
        raise DiagramError(f"dart {h} of a removed vertex is not a port")

    alpha = [-1] * (v3 + n + len(ports))
    for v in keep:
        for j in range(3):
            h = 3 * v + j
            alpha[3 * newv[v] + j] = f(d.alpha[h])
    for i in range(n):
        alpha[v3 + i] = f(d.alpha[3 * d.V + i])
    for j, h in enumerate(ports):
        alpha[v3 + n + j] = f(d.alpha[h])
    dots = None if d.dots is None else [d.dots[v] for v in keep]
    return PlanarDiagram(V2, n + len(ports), alpha, d.loops, dots, check=False)


def splice(d: PlanarDiagram, vertices: Sequence[int], ports: Sequence[int],
           template: PlanarDiagram) -> PlanarDiagram:
    """Replace ``vertices`` of ``d`` by ``template``.

    ``ports`` lists the darts leaving the removed region counterclockwise as seen
    from inside it; template boundary point ``j`` takes the place of ``ports[j]``.
    The boundary of ``d`` is unchanged.
    """
    hole = excise(d, vertices, ports)
    n = d.n
    return connect([hole, template], [((0, n + j), (1, j)) for j in range(len(ports))],
                   [(0, i) for i in range(n)])


# standard diagrams ----------------------------------------------------------

def empty() -> PlanarDiagram:
    return PlanarDiagram(0, 0, (), check=False)


def loop(k: int = 1) -> PlanarDiagram:
    return PlanarDiagram(0, 0, (), k, check=False)


def strand() -> PlanarDiagram:
    return PlanarDiagram(0, 2, (1, 0), check=False)


def vertex() -> PlanarDiagram:
    return PlanarDiagram(1, 3, (3, 4, 5, 0, 1, 2), check=False)


def from_legs(n: int, vertices: Sequence[Sequence], *, dots=None) -> PlanarDiagram:
    """Small builder: each vertex lists three ends counterclockwise.

    An end is ``("b", i)`` for boundary point ``i`` or ``("v", w, j)`` for the
    ``j``-th end of vertex ``w``; strands are given as ``strands=[(i, j)]`` via
    :func:`with_strands`.
    """
    V = len(vertices)
    v3 = 3 * V
    alpha = [-1] * (v3 + n)
    for v, ends in enumerate(vertices):
        for j, e in enumerate(ends):
            h = 3 * v + j
            if e[0] == "b":
                g = v3 + e[1]
            else:
                g = 3 * e[1] + e[2]
            alpha[h] = g
            alpha[g] = h
    return PlanarDiagram(V, n, alpha, 0, dots)


def chords(n: int, pairs: Sequence[tuple[int, int]]) -> PlanarDiagram:
    """Diagram made only of strands."""
    alpha = [-1] * n
    for a, b in pairs:
        alpha[a], alpha[b] = b, a
    return PlanarDiagram(0, n, alpha)


def par() -> PlanarDiagram:
    """Two vertical strands: 0-1 and 2-3."""
    return chords(4, [(0, 1), (2, 3)])


def cupcap() -> PlanarDiagram:
    """Cup over cap: 0-3 and 1-2."""
    return chords(4, [(0, 3), (1, 2)])


def I_diagram() -> PlanarDiagram:
    """Top vertex on points 0, 3; bottom vertex on points 1, 2."""
    return from_legs(4, [
        [("b", 3), ("b", 0), ("v", 1, 0)],
        [("v", 0, 2), ("b", 1), ("b", 2)],
    ])


def H_diagram() -> PlanarDiagram:
    """Left vertex on points 0, 1; right vertex on points 2, 3."""
    return rotate(I_diagram(), 1)


def polygon(k: int) -> PlanarDiagram:
    """A ``k``-gon with one leg per corner; leg ``i`` at boundary point ``i``."""
    if k < 1:
        raise DiagramError("polygon needs at least one side")
    verts = []
    for i in range(k):
        verts.append([("b", i), ("v", (i + 1) % k, 2), ("v", (i - 1) % k, 1)])
    if k == 1:
        raise DiagramError("a monogon is not a trivalent polygon with distinct neighbours")
    if k == 2:
        # vertex 0's "next" and "prev" both go to vertex 1
        verts = [[("b", 0), ("v", 1, 2), ("v", 1, 1)], [("b", 1), ("v", 0, 2), ("v", 0, 1)]]
    return from_legs(k, verts)


def square() -> PlanarDiagram:
    return polygon(4)


def pentagon() -> PlanarDiagram:
    return polygon(5)


def tree(k: int) -> PlanarDiagram:
    """Caterpillar tree with ``k`` legs (the comb), for ``k >= 3``."""
    if k == 2:
        return strand()
    if k < 2:
        raise DiagramError("trees need at least two legs")
    # vertices w_1..w_(k-2) in a path; w_1 carries legs 0, 1
    m = k - 2
    verts = []
    for i in range(m):
        first = ("b", 0) if i == 0 else ("v", i - 1, 2)
        last = ("b", k - 1) if i == m - 1 else ("v", i + 1, 0)
        verts.append([first, ("b", i + 1), last])
    return from_legs(k, verts)


def pentafork() -> PlanarDiagram:
    """Pentagon whose last leg ends in a fork: six boundary points."""
    p = pentagon()
    return connect([p, vertex()], [((0, 4), (1, 0))], [(0, 0), (0, 1), (0, 2), (0, 3), (1, 1), (1, 2)])


def theta() -> PlanarDiagram:
    return glue(vertex(), vertex())


def tetrahedron() -> PlanarDiagram:
    return glue(vertex_in_triangle(), vertex())


def vertex_in_triangle() -> PlanarDiagram:
    """Triangle with three legs."""
    return polygon(3)


def prism(k: int) -> PlanarDiagram:
    """Closed ``k``-prism; ``prism(4)`` is the cube."""
    return glue(polygon(k), polygon(k))


def cube() -> PlanarDiagram:
    return prism(4)


def dodecahedron() -> PlanarDiagram:
    """Twelve pentagons: a pentagon capped onto a half-dodecahedron."""
    # half: inner pentagon u_i, spokes to ring a_i, ring of ten (a_i, c_i)
    # with pendant legs on the c_i and ring pentagons between spokes.
    verts: list[list] = []
    u = lambda i: i % 5
    a = lambda i: 5 + i % 5
    c = lambda i: 10 + i % 5
    for i in range(5):
        verts.append([None, None, None])
    for i in range(10):
        verts.append([None, None, None])
    # u_i: (spoke, next u, prev u)
    for i in range(5):
        verts[u(i)] = [("v", a(i), 0), ("v", u(i + 1), 2), ("v", u(i - 1), 1)]
    # a_i: (spoke u_i, c_(i-1), c_i) counterclockwise seen from outside the inner pentagon
    for i in range(5):
        verts[a(i)] = [("v", u(i), 0), ("v", c(i - 1), 2), ("v", c(i), 0)]
    # c_i: (a_i, leg, a_(i+1))
    for i in range(5):
        verts[c(i)] = [("v", a(i), 2), ("b", i), ("v", a(i + 1), 1)]
    half = from_legs(5, verts)
    return glue(half, pentagon())
