import pytest

from dimers.errors import InvalidDimensions
from dimers.grid import Color, GridSpec, Orientation, Topology, Vertex, build_grid, canonical_vertex_order


def test_two_by_two_rectangle():
    g = build_grid(GridSpec.rectangle(2, 2))
    assert len(g.vertices) == 4
    assert len(g.edges) == 4


def test_three_by_two_rectangle():
    g = build_grid(GridSpec.rectangle(3, 2))
    assert len(g.vertices) == 6
    assert len(g.edges) == 7


def test_four_by_four_torus():
    g = build_grid(GridSpec.torus(4, 4))
    assert len(g.vertices) == 16
    assert len(g.edges) == 32
    special = g.special_edges
    assert sum(e.orientation is Orientation.HORIZONTAL for e in special) == 4
    assert sum(e.orientation is Orientation.VERTICAL for e in special) == 4


@pytest.mark.parametrize("m,n", [(1, 2), (2, 3), (4, 5), (6, 6), (3, 8)])
def test_rectangle_counts(m, n):
    g = build_grid(GridSpec.rectangle(m, n))
    assert len(g.vertices) == m * n
    assert len(g.edges) == m * (n - 1) + n * (m - 1)
    assert len(g.black) == len(g.white) == m * n // 2
    assert all(g.degree(v) in (1, 2, 3, 4) for v in g.vertices)
    if m > 1 and n > 1:
        assert all(g.degree(v) in (2, 3, 4) for v in g.vertices)


@pytest.mark.parametrize("m,n,experimental", [(4, 4, False), (4, 8, False), (2, 2, True), (2, 6, True), (6, 4, True)])
def test_torus_structure(m, n, experimental):
    spec = GridSpec.torus(m, n, experimental)
    g = build_grid(spec)
    assert len(g.edges) == 2 * m * n
    assert all(g.degree(v) == 4 for v in g.vertices)
    special = g.special_edges
    assert sum(e.orientation is Orientation.HORIZONTAL for e in special) == m
    assert sum(e.orientation is Orientation.VERTICAL for e in special) == n
    # stripping the wrap edges leaves exactly the rectangle
    assert set(g.without_special_edges()) == set(build_grid(GridSpec.rectangle(m, n)).edges)


@pytest.mark.parametrize("spec", [GridSpec.rectangle(5, 8), GridSpec.torus(8, 4), GridSpec.torus(2, 2, True)])
def test_bipartite(spec):
    g = build_grid(spec)
    for e in g.edges:
        assert e.tail.color is not e.head.color


def test_colour_convention():
    assert Vertex(1, 1).color is Color.BLACK
    assert Vertex(2, 1).color is Color.WHITE


def test_canonical_order_two_by_two():
    order = canonical_vertex_order(build_grid(GridSpec.rectangle(2, 2)))
    assert order == (Vertex(1, 1), Vertex(2, 2), Vertex(2, 1), Vertex(1, 2))


@pytest.mark.parametrize("m,n", [(3, 2), (4, 6), (5, 2)])
def test_canonical_order_blacks_first(m, n):
    g = build_grid(GridSpec.rectangle(m, n))
    order = canonical_vertex_order(g)
    half = m * n // 2
    assert all(v.color is Color.BLACK for v in order[:half])
    assert all(v.color is Color.WHITE for v in order[half:])
    assert order == canonical_vertex_order(build_grid(GridSpec.rectangle(m, n)))


@pytest.mark.parametrize(
    "args",
    [
        (3, 3, Topology.RECTANGLE),
        (0, 2, Topology.RECTANGLE),
        (3, 4, Topology.TORUS),
        (6, 6, Topology.TORUS),  # needs the experimental flag
        (4, 2, Topology.TORUS),
    ],
)
def test_invalid_dimensions(args):
    with pytest.raises(InvalidDimensions):
        GridSpec(*args)
