"""Brute-force ground truth: exhaustive enumeration of matchings and overtilings.

Every recursion fixes the first uncovered cell in row-major order (top row
first, left to right) and branches over the ways to cover it, so each
configuration is produced exactly once and in a canonical order.
"""
from __future__ import annotations

import enum
from collections import Counter, deque
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Callable, Iterator, NamedTuple, Optional

from .errors import InvalidBoundary, InvalidDimensions, SizeLimitExceeded
from .grid import Edge, Graph, GridSpec, Orientation, Topology, Vertex, build_grid
from .kasteleyn import PARITY_TYPES, SignClass, permutation_sign, typed_sign_contributions

# Default enumeration limits, in cells. Callers may pass their own.
RECTANGLE_LIMIT = 36
TORUS_LIMIT = 32
OVERTILING_LIMIT = 16


@dataclass(frozen=True)
class Matching:
    grid: GridSpec
    edges: frozenset

    def __post_init__(self):
        covered = Counter(v for e in self.edges for v in (e.tail, e.head))
        if len(self.edges) != self.grid.cells // 2 or len(covered) != self.grid.cells:
            raise ValueError("not a perfect matching")
        if any(c != 1 for c in covered.values()):
            raise ValueError("a vertex is covered twice")

    def partner(self) -> dict:
        out = {}
        for e in self.edges:
            out[e.tail] = e.head
            out[e.head] = e.tail
        return out

    def parity_type(self) -> tuple:
        """("e"|"o", "e"|"o") for the special horizontal and special vertical edge counts."""
        if self.grid.topology is not Topology.TORUS:
            raise ValueError("parity type is only defined on the torus")
        h = sum(1 for e in self.edges if e.special and e.orientation is Orientation.HORIZONTAL)
        v = sum(1 for e in self.edges if e.special and e.orientation is Orientation.VERTICAL)
        return ("o" if h % 2 else "e", "o" if v % 2 else "e")

    def vertical_count(self) -> int:
        return sum(1 for e in self.edges if e.orientation is Orientation.VERTICAL)


def _limit_for(grid: GridSpec, max_cells: Optional[int]) -> int:
    if max_cells is not None:
        return max_cells
    return TORUS_LIMIT if grid.is_torus else RECTANGLE_LIMIT


class _Board:
    """Integer-indexed view of a graph for fast backtracking."""

    def __init__(self, graph: Graph):
        self.graph = graph
        self.index = {v: i for i, v in enumerate(graph.vertices)}
        # per cell: (edge, other cell index) for every incident edge
        self.moves = [
            tuple((e, self.index[e.other(v)]) for e in graph.incident[v]) for v in graph.vertices
        ]
        self.full = (1 << len(graph.vertices)) - 1


def _first_free(mask: int) -> int:
    return ((~mask) & (mask + 1)).bit_length() - 1


def iter_matchings(grid: GridSpec, max_cells: Optional[int] = None) -> Iterator[Matching]:
    limit = _limit_for(grid, max_cells)
    if grid.cells > limit:
        raise SizeLimitExceeded(f"{grid.rows}x{grid.cols} exceeds the enumeration limit of {limit} cells")
    board = _Board(build_grid(grid))
    chosen = []

    def walk(mask):
        if mask == board.full:
            yield Matching(grid, frozenset(chosen))
            return
        c = _first_free(mask)
        for e, d in board.moves[c]:
            if not (mask >> d) & 1:
                chosen.append(e)
                yield from walk(mask | (1 << c) | (1 << d))
                chosen.pop()

    yield from walk(0)


def enumerate_matchings(
    grid: GridSpec,
    visitor: Optional[Callable[[Matching], None]] = None,
    max_cells: Optional[int] = None,
) -> int:
    """Count every perfect matching, optionally streaming each one to ``visitor``."""
    if visitor is None:
        limit = _limit_for(grid, max_cells)
        if grid.cells > limit:
            raise SizeLimitExceeded(f"{grid.rows}x{grid.cols} exceeds the enumeration limit of {limit} cells")
        return _count_only(build_grid(grid))
    count = 0
    for matching in iter_matchings(grid, max_cells):
        visitor(matching)
        count += 1
    return count


def _count_only(graph: Graph) -> int:
    board = _Board(graph)
    moves = [tuple(d for _, d in ms) for ms in board.moves]

    def count(mask):
        if mask == board.full:
            return 1
        c = _first_free(mask)
        total = 0
        for d in moves[c]:
            if not (mask >> d) & 1:
                total += count(mask | (1 << c) | (1 << d))
        return total

    return count(0)


def matching_signature(matching: Matching, ordering=None) -> int:
    """Permutation sign times the unit ``i**(vertical edges)``.

    ``ordering`` defaults to the canonical one (blacks, then whites, row-major).
    The result is +1 or -1 when the number of columns is even. With an odd
    number of columns every matching has an odd number of vertical edges and
    the result is ``1j`` or ``-1j``.
    """
    grid = matching.grid
    graph = build_grid(grid)
    if ordering is None:
        ordering = graph.order
    half = grid.cells // 2
    black_pos = {v: i for i, v in enumerate(ordering[:half])}
    white_pos = {v: i for i, v in enumerate(ordering[half:])}
    perm = [0] * half
    for e in matching.edges:
        perm[black_pos[e.black]] = white_pos[e.white]
    unit = (1, 1j, -1, -1j)[matching.vertical_count() % 4]
    return permutation_sign(perm) * unit


def torus_typed_counts(m: int, n: int, experimental: bool = False, max_cells: Optional[int] = None) -> dict:
    grid = GridSpec.torus(m, n, experimental)
    counts = {t: 0 for t in PARITY_TYPES}

    def visit(mu):
        counts[mu.parity_type()] += 1

    enumerate_matchings(grid, visit, max_cells)
    return counts


def torus_signed_sums(m: int, n: int, experimental: bool = False, max_cells: Optional[int] = None) -> tuple:
    """For each sign class, the sum of typed contributions over all matchings."""
    grid = GridSpec.torus(m, n, experimental)
    sums = [0, 0, 0, 0]

    def visit(mu):
        for k, c in enumerate(typed_sign_contributions(mu)):
            sums[k] += c

    enumerate_matchings(grid, visit, max_cells)
    return tuple(sums)


def observed_sign_table(m: int, n: int, experimental: bool = False, max_cells: Optional[int] = None) -> dict:
    """Parity type -> tuple of contributions per sign class, as seen over all matchings.

    Raises if two matchings of the same type disagree.
    """
    grid = GridSpec.torus(m, n, experimental)
    table = {}

    def visit(mu):
        row = typed_sign_contributions(mu)
        t = mu.parity_type()
        if table.setdefault(t, row) != row:
            raise AssertionError(f"matchings of type {t} contribute inconsistently")

    enumerate_matchings(grid, visit, max_cells)
    return table


# Overtilings -----------------------------------------------------------------

class Direction(enum.Enum):
    LEFT = (-1, 0)
    RIGHT = (1, 0)
    UP = (0, -1)
    DOWN = (0, 1)


class Stub(NamedTuple):
    """A boundary cell covered by half a domino whose other half lies off the board."""

    x: int
    y: int
    direction: Direction


def outward_directions(m: int, n: int, x: int, y: int) -> tuple:
    out = []
    if x == 1:
        out.append(Direction.LEFT)
    if x == n:
        out.append(Direction.RIGHT)
    if y == 1:
        out.append(Direction.UP)
    if y == m:
        out.append(Direction.DOWN)
    return tuple(out)


@dataclass(frozen=True)
class BoundaryConfiguration:
    stubs: frozenset

    @classmethod
    def of(cls, *stubs) -> "BoundaryConfiguration":
        return cls(frozenset(Stub(x, y, Direction[d.upper()] if isinstance(d, str) else d) for x, y, d in stubs))

    def validate(self, m: int, n: int):
        seen = set()
        for s in self.stubs:
            if not (1 <= s.x <= n and 1 <= s.y <= m):
                raise InvalidBoundary(f"stub {s} lies outside the {m}x{n} board")
            if s.direction not in outward_directions(m, n, s.x, s.y):
                raise InvalidBoundary(f"stub {s} does not point off the board")
            if (s.x, s.y) in seen:
                raise InvalidBoundary(f"cell ({s.x}, {s.y}) carries two stubs")
            seen.add((s.x, s.y))


def _check_overtiling_size(m, n, max_cells):
    if m < 1 or n < 1:
        raise InvalidDimensions("sides must be positive")
    limit = OVERTILING_LIMIT if max_cells is None else max_cells
    if m * n > limit:
        raise SizeLimitExceeded(f"{m}x{n} exceeds the overtiling limit of {limit} cells")


def count_overtilings(m: int, n: int, max_cells: Optional[int] = None) -> int:
    """Coverings where each cell is paired with a neighbour or is an outward-pointing stub.

    Stubs carry their direction, so a corner cell can stub in two distinct ways.
    """
    _check_overtiling_size(m, n, max_cells)
    cells = m * n
    full = (1 << cells) - 1
    stub_options = [len(outward_directions(m, n, c % n + 1, c // n + 1)) for c in range(cells)]

    def walk(mask):
        if mask == full:
            return 1
        c = _first_free(mask)
        x = c % n
        total = 0
        if stub_options[c]:
            total += stub_options[c] * walk(mask | (1 << c))
        if x + 1 < n and not (mask >> (c + 1)) & 1:
            total += walk(mask | (1 << c) | (1 << (c + 1)))
        if c + n < cells:
            total += walk(mask | (1 << c) | (1 << (c + n)))
        return total

    return walk(0)


def count_with_boundary(m: int, n: int, config: BoundaryConfiguration, max_cells: Optional[int] = None) -> int:
    """Number of ways to tile the cells left uncovered by the stubs of ``config``."""
    _check_overtiling_size(m, n, max_cells)
    config.validate(m, n)
    mask = 0
    for s in config.stubs:
        mask |= 1 << ((s.y - 1) * n + (s.x - 1))
    return _tilings_of_rest(m, n, mask)


@lru_cache(maxsize=None)
def _tilings_of_rest(m, n, mask):
    cells = m * n
    if mask == (1 << cells) - 1:
        return 1
    c = _first_free(mask)
    total = 0
    if c % n + 1 < n and not (mask >> (c + 1)) & 1:
        total += _tilings_of_rest(m, n, mask | (1 << c) | (1 << (c + 1)))
    if c + n < cells and not (mask >> (c + n)) & 1:
        total += _tilings_of_rest(m, n, mask | (1 << c) | (1 << (c + n)))
    return total


def boundary_configurations(m: int, n: int) -> Iterator[BoundaryConfiguration]:
    """Every structurally valid stub set, including ones with no completion."""
    border = [
        (x, y, outward_directions(m, n, x, y))
        for y in range(1, m + 1)
        for x in range(1, n + 1)
        if outward_directions(m, n, x, y)
    ]
    choices = [(None,) + dirs for _, _, dirs in border]
    for pick in product(*choices):
        yield BoundaryConfiguration(
            frozenset(Stub(x, y, d) for (x, y, _), d in zip(border, pick) if d is not None)
        )


def count_boundary_configurations(m: int, n: int) -> int:
    total = 1
    for y in range(1, m + 1):
        for x in range(1, n + 1):
            total *= 1 + len(outward_directions(m, n, x, y))
    return total


# Flip graph --------------------------------------------------------------------

def flip_neighbours(matching: Matching) -> Iterator[Matching]:
    """Matchings reachable by rotating two parallel dominoes that fill a 2x2 block."""
    grid = matching.grid
    graph = build_grid(grid)
    edge_of = {e.endpoints: e for e in graph.edges if not e.special}
    present = {e.endpoints for e in matching.edges}
    for y in range(1, grid.rows):
        for x in range(1, grid.cols):
            a, b = Vertex(x, y), Vertex(x + 1, y)
            c, d = Vertex(x, y + 1), Vertex(x + 1, y + 1)
            horiz = (frozenset((a, b)), frozenset((c, d)))
            vert = (frozenset((a, c)), frozenset((b, d)))
            for old, new in ((horiz, vert), (vert, horiz)):
                if old[0] in present and old[1] in present:
                    edges = set(matching.edges)
                    edges.difference_update(edge_of[p] for p in old)
                    edges.update(edge_of[p] for p in new)
                    yield Matching(grid, frozenset(edges))


def flip_connectivity(m: int, n: int, max_cells: Optional[int] = None) -> bool:
    """Breadth-first search over the flip graph from the first enumerated matching."""
    from .codec import encode

    grid = GridSpec.rectangle(m, n)
    total = enumerate_matchings(grid, max_cells=max_cells)
    start = next(iter_matchings(grid, max_cells))
    seen = {encode(start).as_int()}
    queue = deque([start])
    while queue:
        mu = queue.popleft()
        for nu in flip_neighbours(mu):
            key = encode(nu).as_int()
            if key not in seen:
                seen.add(key)
                queue.append(nu)
    return len(seen) == total
