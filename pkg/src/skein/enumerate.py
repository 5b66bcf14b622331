"""Reduced diagram bases D(n,k) and D□(n,k), discharging features, and two
independent enumeration routes (growth regions and brute-force merging)."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Sequence

from .diagram import (DiagramError, Face, PlanarDiagram, connect, empty, rotate, strand,
                      tree)

PLAIN, SQUARE = "plain", "square_free"
VARIANTS = (PLAIN, SQUARE)
MAX_N, MAX_K, MAX_BRUTE_VERTICES = 8, 3, 12


class EnvelopeError(ValueError):
    """Request outside the supported enumeration envelope."""


def charge(face: Face) -> int:
    return face.charge


def _norm_variant(variant: str) -> str:
    if variant in ("square", "square_free", "sq"):
        return SQUARE
    if variant == PLAIN:
        return PLAIN
    raise ValueError(f"unknown variant {variant!r}")


# membership --------------------------------------------------------------

def face_profile(d: PlanarDiagram) -> tuple[int, ...]:
    return tuple(d.face_sizes())


def membership(variant: str, k: int) -> Callable[[PlanarDiagram], bool]:
    """D(n,k): no closed components, internal faces of size >= 4, at most k of
    them; D□(n,k): internal faces of size >= 5, at most k of them."""
    variant = _norm_variant(variant)
    least = 4 if variant == PLAIN else 5

    def pred(d: PlanarDiagram) -> bool:
        if not d.is_boundary_connected:
            return False
        sizes = d.face_sizes()
        return all(s >= least for s in sizes) and len(sizes) <= k

    return pred


def _prunable(variant: str, k: int) -> Callable[[PlanarDiagram], bool]:
    """True when a diagram can never grow into a member (its internal faces are final)."""
    least = 4 if _norm_variant(variant) == PLAIN else 5

    def bad(d: PlanarDiagram) -> bool:
        sizes = d.face_sizes()
        return any(s < least for s in sizes) or len(sizes) > k

    return bad


def max_vertices(n: int, k: int) -> int:
    return max(n + 2 * k - 2, 0)


# boundary regions ----------------------------------------------------------

@dataclass(frozen=True)
class RegionCharge:
    outgoing: int
    incoming: int
    value: int

    @property
    def growth(self) -> bool:
        return self.value >= 2


def boundary_faces(d: PlanarDiagram) -> list[Face]:
    """Boundary faces in boundary order: face ``j`` contains boundary dart ``j``."""
    return [d.face_of(d.boundary_dart(i)) for i in range(d.n)]


def _edge(d: PlanarDiagram, h: int) -> tuple[int, int]:
    g = d.alpha[h]
    return (h, g) if h < g else (g, h)


def boundary_region_charge(d: PlanarDiagram, start: int, length: int) -> RegionCharge:
    """``O - I + 1`` for the run of boundary faces ``start .. start+length-1``.

    ``O`` counts edges of the region's faces that meet the boundary, ``I`` the
    other edges at the region's vertices that leave it.
    """
    if not d.is_connected or d.n == 0:
        raise DiagramError("boundary regions are defined for connected open diagrams")
    if not 1 <= length < d.n:
        raise DiagramError("a boundary region must be a proper nonempty run of boundary faces")
    faces = boundary_faces(d)
    region = [faces[(start + j) % d.n] for j in range(length)]
    face_edges = {_edge(d, h) for f in region for h in f.darts}
    v3 = 3 * d.V
    out = {e for e in face_edges if e[1] >= v3}
    verts = {h // 3 for f in region for h in f.darts if h < v3}
    incoming = set()
    for v in verts:
        for h in range(3 * v, 3 * v + 3):
            e = _edge(d, h)
            if e not in face_edges:
                incoming.add(e)
    return RegionCharge(len(out), len(incoming), len(out) - len(incoming) + 1)


def region_charge_sum(d: PlanarDiagram, start: int, length: int) -> int:
    faces = boundary_faces(d)
    return sum(faces[(start + j) % d.n].charge for j in range(length))


# features -----------------------------------------------------------------

FEATURE_TAGS = ("very_small_face", "small_face", "pentapent", "hexapent", "growth_region",
                "corner_pentagon", "bridge_pentagon")
OPEN_POLICY = ("very_small_face", "pentapent", "hexapent", "corner_pentagon", "growth_region")
CLOSED_POLICY = ("very_small_face", "pentapent", "hexapent")


@dataclass(frozen=True)
class Feature:
    tag: str
    location: tuple


def _internal_adjacency(d: PlanarDiagram) -> tuple[list[Face], dict[int, set[int]]]:
    fid, faces = d._face_data
    internal = {i for i, f in enumerate(faces) if f.internal}
    adj: dict[int, set[int]] = {i: set() for i in internal}
    for i in internal:
        for h in faces[i].darts:
            j = fid[d.alpha[h]]
            if j in internal and j != i:
                adj[i].add(j)
    return faces, adj


def find_features(d: PlanarDiagram) -> list[Feature]:
    """Every feature present, in a fixed order."""
    faces, adj = _internal_adjacency(d)
    found: list[Feature] = []
    for i in sorted(adj):
        s = faces[i].size
        if s <= 4:
            found.append(Feature("very_small_face", (i,)))
        if s <= 5:
            found.append(Feature("small_face", (i,)))
    for i in sorted(adj):
        if faces[i].size != 5:
            continue
        for j in sorted(adj[i]):
            if faces[j].size == 5 and i < j:
                found.append(Feature("pentapent", (i, j)))
            if faces[j].size == 6:
                found.append(Feature("hexapent", (i, j)))
        nb = sorted(adj[i])
        if len(nb) <= 1 or (len(nb) == 2 and nb[1] in adj[nb[0]]):
            found.append(Feature("corner_pentagon", (i,)))
        elif len(nb) == 2:
            found.append(Feature("bridge_pentagon", (i,)))
    if d.n and d.is_connected:
        for length in range(1, d.n):
            for start in range(d.n):
                if boundary_region_charge(d, start, length).growth:
                    found.append(Feature("growth_region", (start, length)))
    return found


def find_feature(d: PlanarDiagram, policy: Sequence[str] | None = None) -> Feature:
    """Highest-priority feature present.

    Raises :class:`RuntimeError` if none is found, which would contradict the
    discharging lemmas for the default policies.
    """
    if policy is None:
        policy = OPEN_POLICY if d.n else CLOSED_POLICY
    present = find_features(d)
    for tag in policy:
        for f in present:
            if f.tag == tag:
                return f
    raise RuntimeError(f"internal consistency failure: no feature from {list(policy)} in {d!r}")


# brute force ---------------------------------------------------------------

@lru_cache(maxsize=None)
def noncrossing_matchings(N: int) -> tuple[tuple[tuple[int, int], ...], ...]:
    if N % 2:
        return ()
    if N == 0:
        return ((),)
    out = []
    for j in range(1, N, 2):
        for left in noncrossing_matchings(j - 1):
            for right in noncrossing_matchings(N - j - 1):
                out.append(((0, j),) + tuple((a + 1, b + 1) for a, b in left)
                           + tuple((a + j + 1, b + j + 1) for a, b in right))
    return tuple(out)


def _matching_diagram(N: int, pairs: Iterable[tuple[int, int]]) -> PlanarDiagram:
    alpha = [0] * N
    for a, b in pairs:
        alpha[a], alpha[b] = b, a
    return PlanarDiagram(0, N, alpha, check=False)


def merge(d: PlanarDiagram, i: int) -> PlanarDiagram:
    """Join boundary points ``i`` and ``i+1`` at a new vertex with one new leg."""
    if not 0 <= i < d.n - 1:
        raise DiagramError("merge needs two adjacent, non-wrapping boundary points")
    V, N = d.V, d.n
    v3o, v3 = 3 * V, 3 * V + 3
    w = 3 * V

    def f(h: int) -> int:
        if h < v3o:
            return h
        p = h - v3o
        if p < i:
            return v3 + p
        if p == i:
            return w + 2
        if p == i + 1:
            return w + 1
        return v3 + p - 1

    alpha = [0] * (v3 + N - 1)
    for h in range(v3o + N):
        alpha[f(h)] = f(d.alpha[h])
    alpha[w] = v3 + i
    alpha[v3 + i] = w
    dots = None
    return PlanarDiagram(V + 1, N - 1, alpha, d.loops, dots, check=False)


def brute_enumerate(n: int, max_vertices: int, predicate: Callable[[PlanarDiagram], bool],
                    prune: Callable[[PlanarDiagram], bool] | None = None) -> list[PlanarDiagram]:
    """Every boundary-connected diagram with ``n`` points and at most
    ``max_vertices`` vertices satisfying ``predicate``.

    Diagrams come from noncrossing matchings on ``n + V`` points by ``V``
    merges of adjacent points, deduplicated by key after each merge.  ``prune``
    may reject intermediates; it must only look at internal faces, which
    merging never destroys.
    """
    if max_vertices > MAX_BRUTE_VERTICES:
        raise EnvelopeError(f"brute force is limited to {MAX_BRUTE_VERTICES} vertices")
    found: dict[bytes, PlanarDiagram] = {}
    for V in range(max_vertices + 1):
        N = n + V
        level = {}
        for m in noncrossing_matchings(N):
            dg = _matching_diagram(N, m)
            level[dg.key] = dg
        for _ in range(V):
            nxt: dict[bytes, PlanarDiagram] = {}
            for dg in level.values():
                for i in range(dg.n - 1):
                    e = merge(dg, i)
                    if prune is not None and prune(e):
                        continue
                    nxt.setdefault(e.key, e)
            level = nxt
        for key, dg in level.items():
            if predicate(dg):
                found[key] = dg
    return sorted(found.values(), key=PlanarDiagram.sort_key)


# growth regions ------------------------------------------------------------

def layer(legs: int, inward: int, offset: int) -> PlanarDiagram:
    """A caterpillar layer: a comb with ``legs`` legs, rotated so that its
    ``inward`` inward-facing legs come first (``offset`` picks the block)."""
    base = tree(legs)
    return rotate(base, offset) if offset % legs else base


def attach_layer(host: PlanarDiagram, p: int, piece: PlanarDiagram, inward: int) -> PlanarDiagram:
    """Glue ``piece``'s first ``inward`` legs onto ``inward`` consecutive legs of
    ``host`` starting at ``p`` (counterclockwise); the rest of ``piece`` faces out.

    The new boundary starts just after the attached run of ``host``.
    """
    n0 = host.n
    joins = [((1, j), (0, (p + inward - 1 - j) % n0)) for j in range(inward)]
    used = {(p + j) % n0 for j in range(inward)}
    outer = [(0, (p + inward + j) % n0) for j in range(n0 - inward)]
    outer = [o for o in outer if o[1] not in used]
    outer += [(1, j) for j in range(inward, piece.n)]
    return connect([host, piece], joins, outer, check=True)


def add_H(host: PlanarDiagram, i: int) -> PlanarDiagram:
    """Put an ``H`` across legs ``i`` and ``i+1``, closing the face between them."""
    h = rotate(tree(4), 1)
    return attach_layer(host, i, h, 2)


def _with_rotations(d: PlanarDiagram, into: dict[bytes, PlanarDiagram]) -> None:
    for c in range(d.n):
        r = rotate(d, c) if c else d
        into.setdefault(r.key, r)


def connected_growth(n_max: int, k: int, variant: str) -> dict[int, dict[bytes, PlanarDiagram]]:
    """Connected diagrams with up to ``n_max`` legs built by growth layers.

    Level ``m`` is produced from levels ``m' < m`` by attaching a comb layer
    with ``I >= 1`` inward legs and ``O > I`` outward legs, starting from the
    strand and the bare combs.
    """
    bad = _prunable(variant, k)
    levels: dict[int, dict[bytes, PlanarDiagram]] = {m: {} for m in range(n_max + 1)}
    if n_max >= 2:
        _with_rotations(strand(), levels[2])
    for m in range(3, n_max + 1):
        _with_rotations(tree(m), levels[m])
    for m in range(2, n_max + 1):
        # layers raising the boundary count from m' to m: O - I = m - m'
        for mp in range(2, m):
            gain = m - mp
            for inward in range(1, mp + 1):
                legs = inward + inward + gain
                if legs < 3:
                    continue
                for host in list(levels[mp].values()):
                    for offset in range(legs):
                        piece = rotate(tree(legs), offset) if offset else tree(legs)
                        # hosts are closed under rotation, so attaching at 0 suffices
                        g = attach_layer(host, 0, piece, inward)
                        if g.V > max_vertices(m, k) or bad(g):
                            continue
                        _with_rotations(g, levels[m])
    return levels


def _add_hs(level: dict[bytes, PlanarDiagram], k: int, variant: str) -> dict[bytes, PlanarDiagram]:
    bad = _prunable(variant, k)
    out = dict(level)
    frontier = list(level.values())
    for _ in range(k):
        nxt = []
        for d in frontier:
            for i in range(d.n):
                g = add_H(d, i)
                if bad(g):
                    continue
                if g.key not in out:
                    before = len(out)
                    _with_rotations(g, out)
                    if len(out) > before:
                        nxt.append(g)
        frontier = nxt
    return out


def planar_unions(components: dict[int, list[PlanarDiagram]], n: int, k: int,
                  accept: Callable[[PlanarDiagram], bool]) -> dict[bytes, PlanarDiagram]:
    """All noncrossing unions with ``n`` points of the given connected pieces."""

    @lru_cache(maxsize=None)
    def unions(m: int) -> tuple[PlanarDiagram, ...]:
        if m == 0:
            return (empty(),)
        res: dict[bytes, PlanarDiagram] = {}
        for c_legs in range(2, m + 1):
            for comp in components.get(c_legs, ()):
                for gaps in _compositions(m - c_legs, c_legs):
                    for fill in _fills(gaps):
                        parts = [comp, *fill]
                        outer = []
                        for j in range(c_legs):
                            outer.append((0, j))
                            outer += [(j + 1, q) for q in range(fill[j].n)]
                        d = connect(parts, [], outer)
                        if len(d.face_sizes()) <= k:
                            res.setdefault(d.key, d)
        return tuple(res.values())

    def _fills(gaps):
        if not gaps:
            yield ()
            return
        for first in unions(gaps[0]):
            for rest in _fills(gaps[1:]):
                yield (first,) + rest

    return {d.key: d for d in unions(n) if accept(d)}


def _compositions(total: int, parts: int):
    if parts == 0:
        if total == 0:
            yield ()
        return
    for a in range(total + 1):
        for rest in _compositions(total - a, parts - 1):
            yield (a,) + rest


@dataclass(frozen=True)
class BasisSet:
    n: int
    k: int
    variant: str
    members: tuple[PlanarDiagram, ...]

    @property
    def keys(self) -> list[bytes]:
        return [d.key for d in self.members]

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __getitem__(self, i):
        return self.members[i]


def enumerate_basis(n: int, k: int, variant: str = PLAIN) -> BasisSet:
    """D(n,k) (``plain``) or D□(n,k) (``square_free``) via growth regions."""
    variant = _norm_variant(variant)
    if not (0 <= n <= MAX_N and 0 <= k <= MAX_K):
        raise EnvelopeError(f"supported envelope is n <= {MAX_N}, k <= {MAX_K}")
    members = _growth_basis(n, k, variant)
    return BasisSet(n, k, variant, tuple(members))


@lru_cache(maxsize=None)
def _growth_basis(n: int, k: int, variant: str) -> tuple[PlanarDiagram, ...]:
    levels = connected_growth(n, k, variant)
    comps: dict[int, list[PlanarDiagram]] = {}
    for m in range(2, n + 1):
        comps[m] = list(_add_hs(levels[m], k, variant).values())
    accept = membership(variant, k)
    found = planar_unions(comps, n, k, accept)
    return tuple(sorted(found.values(), key=PlanarDiagram.sort_key))


def brute_basis(n: int, k: int, variant: str = PLAIN) -> list[PlanarDiagram]:
    variant = _norm_variant(variant)
    return brute_enumerate(n, max_vertices(n, k), membership(variant, k), _prunable(variant, k))
