"""Rectangular and toroidal grid graphs with a fixed checkerboard colouring.

Coordinates are 1-based: ``x`` is the column (1..cols), ``y`` the row (1..rows),
row 1 at the top. A vertex is black when ``x + y`` is even.

On the torus every cell gets a ``+x`` and a ``+y`` edge, the ones that wrap
around being *special*. When a side has length 2 the wrap edge runs parallel to
an ordinary edge; the graph is then a multigraph and both edges are kept.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import NamedTuple

from .errors import InvalidDimensions


class Topology(enum.Enum):
    RECTANGLE = "rectangle"
    TORUS = "torus"


class Color(enum.Enum):
    BLACK = "black"
    WHITE = "white"


class Orientation(enum.Enum):
    HORIZONTAL = "horizontal"
    VERTICAL = "vertical"


class Vertex(NamedTuple):
    x: int
    y: int

    @property
    def color(self) -> Color:
        return Color.BLACK if (self.x + self.y) % 2 == 0 else Color.WHITE


class Edge(NamedTuple):
    """A grid edge stored as ``tail -> head`` where head = tail + (1,0) or (0,1), wrapped."""

    tail: Vertex
    head: Vertex
    orientation: Orientation
    special: bool = False

    @property
    def endpoints(self) -> frozenset:
        return frozenset((self.tail, self.head))

    def other(self, v: Vertex) -> Vertex:
        return self.head if v == self.tail else self.tail

    @property
    def black(self) -> Vertex:
        return self.tail if self.tail.color is Color.BLACK else self.head

    @property
    def white(self) -> Vertex:
        return self.head if self.tail.color is Color.BLACK else self.tail


@dataclass(frozen=True)
class GridSpec:
    """Dimensions and topology of a board.

    ``experimental`` unlocks tori whose sides are even but not multiples of 4.
    """

    rows: int
    cols: int
    topology: Topology = Topology.RECTANGLE
    experimental: bool = False

    def __post_init__(self):
        for name in ("rows", "cols"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int) or value < 1:
                raise InvalidDimensions(f"{name} must be a positive integer, got {value!r}")
        if (self.rows * self.cols) % 2:
            raise InvalidDimensions(f"{self.rows}x{self.cols} has an odd number of cells")
        if self.topology is Topology.TORUS:
            if self.rows % 2 or self.cols % 2:
                raise InvalidDimensions("torus sides must both be even")
            if not self.validated and not self.experimental:
                raise InvalidDimensions(
                    f"torus {self.rows}x{self.cols}: sides not divisible by 4 need experimental=True"
                )

    @property
    def cells(self) -> int:
        return self.rows * self.cols

    @property
    def is_torus(self) -> bool:
        return self.topology is Topology.TORUS

    @property
    def validated(self) -> bool:
        """True for rectangles, and for tori with both sides divisible by 4."""
        if self.topology is Topology.RECTANGLE:
            return True
        return self.rows % 4 == 0 and self.cols % 4 == 0

    @classmethod
    def rectangle(cls, rows: int, cols: int) -> "GridSpec":
        return cls(rows, cols, Topology.RECTANGLE)

    @classmethod
    def torus(cls, rows: int, cols: int, experimental: bool = False) -> "GridSpec":
        return cls(rows, cols, Topology.TORUS, experimental)


@dataclass(frozen=True)
class Graph:
    spec: GridSpec
    vertices: tuple
    edges: tuple
    black: tuple = field(repr=False)
    white: tuple = field(repr=False)

    @cached_property
    def incident(self) -> dict:
        """Vertex -> tuple of incident edges (parallel edges listed separately)."""
        out = {v: [] for v in self.vertices}
        for e in self.edges:
            out[e.tail].append(e)
            out[e.head].append(e)
        return {v: tuple(es) for v, es in out.items()}

    @cached_property
    def order(self) -> tuple:
        return canonical_vertex_order(self)

    @cached_property
    def black_index(self) -> dict:
        return {v: i for i, v in enumerate(self.black)}

    @cached_property
    def white_index(self) -> dict:
        return {v: i for i, v in enumerate(self.white)}

    @property
    def special_edges(self) -> tuple:
        return tuple(e for e in self.edges if e.special)

    def degree(self, v: Vertex) -> int:
        return len(self.incident[v])

    def without_special_edges(self) -> tuple:
        return tuple(e for e in self.edges if not e.special)


def _row_major(vertices):
    return sorted(vertices, key=lambda v: (v.y, v.x))


@lru_cache(maxsize=64)
def build_grid(spec: GridSpec) -> Graph:
    m, n = spec.rows, spec.cols
    vertices = tuple(Vertex(x, y) for y in range(1, m + 1) for x in range(1, n + 1))
    edges = []
    for v in vertices:
        if v.x < n:
            edges.append(Edge(v, Vertex(v.x + 1, v.y), Orientation.HORIZONTAL))
        elif spec.is_torus:
            edges.append(Edge(v, Vertex(1, v.y), Orientation.HORIZONTAL, special=True))
        if v.y < m:
            edges.append(Edge(v, Vertex(v.x, v.y + 1), Orientation.VERTICAL))
        elif spec.is_torus:
            edges.append(Edge(v, Vertex(v.x, 1), Orientation.VERTICAL, special=True))
    black = tuple(v for v in _row_major(vertices) if v.color is Color.BLACK)
    white = tuple(v for v in _row_major(vertices) if v.color is Color.WHITE)
    return Graph(spec, vertices, tuple(edges), black, white)


def canonical_vertex_order(graph: Graph) -> tuple:
    """All black vertices, then all white ones, each class in row-major order."""
    return graph.black + graph.white
