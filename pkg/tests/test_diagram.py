import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from skein.diagram import (DiagramError, H_diagram, I_diagram, PlanarDiagram, build_diagram,
                           chords, cube, cupcap, dodecahedron, glue, loop, par, parse_diagrams,
                           pentafork, polygon, prism, reflect, rotate, sphere_join, splice,
                           square, stack, tensor, tetrahedron, theta, tree, vertex)
from skein.enumerate import enumerate_basis

BASIS = list(enumerate_basis(6, 1, "plain")) + list(enumerate_basis(5, 1, "plain"))


def relabel(d: PlanarDiagram, perm, turns) -> PlanarDiagram:
    """Same diagram with vertices renumbered and each vertex's local darts cycled."""
    v3 = 3 * d.V

    def f(h):
        if h >= v3:
            return h
        v, j = divmod(h, 3)
        return 3 * perm[v] + (j + turns[v]) % 3

    alpha = [0] * d.num_darts
    for h, g in enumerate(d.alpha):
        alpha[f(h)] = f(g)
    return PlanarDiagram(d.V, d.n, alpha, d.loops)


@given(st.sampled_from(BASIS), st.randoms(use_true_random=False))
@settings(max_examples=80, deadline=None)
def test_key_ignores_labels(d, rng):
    perm = list(range(d.V))
    rng.shuffle(perm)
    turns = [rng.randrange(3) for _ in range(d.V)]
    assert relabel(d, perm, turns).key == d.key


@given(st.sampled_from(BASIS), st.integers(0, 12))
@settings(max_examples=60, deadline=None)
def test_rotation_and_reflection(d, c):
    assert rotate(rotate(d, c), -c) == d
    assert rotate(d, d.n) == d
    assert reflect(reflect(d)) == d
    assert rotate(d, c).V == d.V


def test_rotation_distinguishes_marking():
    assert rotate(I_diagram(), 1) == H_diagram()
    assert I_diagram() != H_diagram()
    assert rotate(par(), 1) == cupcap()


@given(st.sampled_from(BASIS))
@settings(max_examples=60, deadline=None)
def test_text_roundtrip(d):
    e = build_diagram(d.to_text())
    assert e == d and e.alpha == d.alpha


def test_parse_several_records_and_comments():
    text = "# two diagrams\n" + par().to_text() + "\n\n" + square().to_text() + "  # trailing\n"
    assert parse_diagrams(text) == [par(), square()]
    with pytest.raises(DiagramError):
        build_diagram("rot 0: 0 1 2")
    with pytest.raises(DiagramError):
        build_diagram("PTG n=x V=0")


def test_validation_rejects_bad_pairings():
    with pytest.raises(DiagramError):
        PlanarDiagram(0, 2, (0, 1))
    with pytest.raises(DiagramError):
        PlanarDiagram(0, 3, (1, 0, 2))
    # theta graph with both vertices turning the same way lives on a torus
    with pytest.raises(DiagramError):
        PlanarDiagram(2, 0, (3, 4, 5, 0, 1, 2))
    PlanarDiagram(2, 0, (3, 5, 4, 0, 2, 1))


@pytest.mark.parametrize("d, faces", [
    (theta(), 3), (tetrahedron(), 4), (cube(), 6), (dodecahedron(), 12), (prism(5), 7)])
def test_closed_polyhedra(d, faces):
    assert d.n == 0 and d.is_connected
    assert len(d.faces()) == faces
    assert sum(f.charge for f in d.faces()) == 12


def test_dodecahedron_is_all_pentagons():
    assert sorted(set(dodecahedron().face_sizes())) == [5]
    assert dodecahedron().V == 20


@given(st.sampled_from(BASIS))
@settings(max_examples=60, deadline=None)
def test_connected_open_charge_is_six(d):
    if d.is_connected:
        assert sum(f.charge for f in d.faces()) == 6


def test_builders():
    assert polygon(4) == square()
    assert len([f for f in square().faces() if f.internal]) == 1
    assert tree(4) in (I_diagram(), H_diagram())
    assert pentafork().n == 6 and pentafork().V == 6
    assert theta() == glue(vertex(), vertex())
    assert glue(par(), par()) == loop(2)
    assert glue(par(), cupcap()) == loop(1)


def test_tensor_and_stack():
    t = tensor(chords(2, [(0, 1)]), chords(2, [(0, 1)]))
    assert t == par() or t == cupcap()
    assert stack(par(), I_diagram()) == I_diagram()
    assert stack(I_diagram(), par()) == I_diagram()
    assert stack(cupcap(), cupcap()).loops == 1
    with pytest.raises(DiagramError):
        glue(par(), vertex())


def test_sphere_join_offsets():
    x = square()
    for off in range(4):
        assert sphere_join(x, par(), off).V == 4
    assert sphere_join(par(), par(), 1).loops in (1, 2)


def test_splice_square_face():
    # replacing the square of the cube by an I gives the triangular prism
    c = cube()
    face = next(f for f in c.faces() if f.size == 4)
    verts = [h // 3 for h in face.darts]
    ports = []
    for h in face.darts:
        base = h - h % 3
        ports.extend(g for g in (base, base + 1, base + 2) if c.alpha[g] // 3 not in verts)
    # face traversal runs clockwise as seen from inside the face
    ports.reverse()
    for j in range(4):
        out = splice(c, verts, ports[j:] + ports[:j], I_diagram())
        assert out == prism(3)


def test_random_relabel_closed():
    rng = random.Random(5)
    d = dodecahedron()
    perm = list(range(d.V))
    rng.shuffle(perm)
    assert relabel(d, perm, [rng.randrange(3) for _ in perm]) == d
