"""One bit per domino: a bijection between rectangle tilings and valid codes.

Scan cells in row-major order. At the first cell not yet covered, write 0 if
its domino reaches right and 1 if it reaches down. Every tiling of an m x n
rectangle therefore costs exactly mn/2 bits.

File format: two big-endian unsigned 16-bit integers (rows, cols), then the
bits packed most-significant-bit first, the final byte zero-padded.
"""
from __future__ import annotations

import struct
from dataclasses import dataclass

from .errors import InvalidCode, InvalidDimensions
from .grid import GridSpec, Orientation, Topology, Vertex, build_grid
from .oracle import Matching

RIGHT, DOWN = 0, 1
_HEADER = struct.Struct(">HH")


@dataclass(frozen=True)
class TilingCode:
    bits: tuple
    grid: GridSpec

    def __post_init__(self):
        if self.grid.topology is not Topology.RECTANGLE:
            raise InvalidDimensions("tiling codes are defined for rectangles only")
        object.__setattr__(self, "bits", tuple(int(b) for b in self.bits))
        if any(b not in (0, 1) for b in self.bits):
            raise InvalidCode("bits must be 0 or 1")

    def __str__(self):
        return "".join(map(str, self.bits))

    def as_int(self) -> int:
        """Bits read as a binary number, most significant first."""
        return int(str(self), 2) if self.bits else 0

    @classmethod
    def from_string(cls, text: str, rows: int, cols: int) -> "TilingCode":
        text = text.strip()
        if set(text) - {"0", "1"}:
            raise InvalidCode("code strings may contain only 0 and 1")
        return cls(tuple(int(c) for c in text), GridSpec.rectangle(rows, cols))

    def to_bytes(self) -> bytes:
        packed = bytearray((len(self.bits) + 7) // 8)
        for i, b in enumerate(self.bits):
            if b:
                packed[i // 8] |= 0x80 >> (i % 8)
        return _HEADER.pack(self.grid.rows, self.grid.cols) + bytes(packed)

    @classmethod
    def from_bytes(cls, data: bytes) -> "TilingCode":
        if len(data) < _HEADER.size:
            raise InvalidCode("truncated header")
        rows, cols = _HEADER.unpack_from(data)
        grid = GridSpec.rectangle(rows, cols)
        nbits = grid.cells // 2
        body = data[_HEADER.size:]
        if len(body) != (nbits + 7) // 8:
            raise InvalidCode(f"expected {(nbits + 7) // 8} payload bytes, found {len(body)}")
        bits = tuple((body[i // 8] >> (7 - i % 8)) & 1 for i in range(len(body) * 8))
        if any(bits[nbits:]):
            raise InvalidCode("padding bits must be zero", index=nbits)
        return cls(bits[:nbits], grid)


def encode(matching: Matching) -> TilingCode:
    grid = matching.grid
    if grid.topology is not Topology.RECTANGLE:
        raise InvalidDimensions("only rectangle tilings can be encoded")
    partner = matching.partner()
    covered = set()
    bits = []
    for y in range(1, grid.rows + 1):
        for x in range(1, grid.cols + 1):
            v = Vertex(x, y)
            if v in covered:
                continue
            w = partner[v]
            if w == Vertex(x + 1, y):
                bits.append(RIGHT)
            elif w == Vertex(x, y + 1):
                bits.append(DOWN)
            else:
                raise AssertionError(f"first uncovered cell {v} is paired with {w}")
            covered.update((v, w))
    return TilingCode(tuple(bits), grid)


def decode(code: TilingCode) -> Matching:
    grid = code.grid
    expected = grid.cells // 2
    if len(code.bits) != expected:
        raise InvalidCode(f"a {grid.rows}x{grid.cols} code has {expected} bits, got {len(code.bits)}")
    graph = build_grid(grid)
    edge_of = {(e.tail, e.orientation): e for e in graph.edges}
    covered = set()
    edges = []
    cells = iter((x, y) for y in range(1, grid.rows + 1) for x in range(1, grid.cols + 1))
    for index, bit in enumerate(code.bits):
        v = next(Vertex(x, y) for x, y in cells if Vertex(x, y) not in covered)
        if bit == RIGHT:
            w, orientation = Vertex(v.x + 1, v.y), Orientation.HORIZONTAL
            off_grid = w.x > grid.cols
        else:
            w, orientation = Vertex(v.x, v.y + 1), Orientation.VERTICAL
            off_grid = w.y > grid.rows
        if off_grid:
            raise InvalidCode(f"bit {index}: partner of {tuple(v)} lies off the board", index=index)
        if w in covered:
            raise InvalidCode(f"bit {index}: partner of {tuple(v)} is already covered", index=index)
        covered.update((v, w))
        edges.append(edge_of[(v, orientation)])
    return Matching(grid, frozenset(edges))


def is_valid_code(code: TilingCode) -> bool:
    try:
        decode(code)
    except InvalidCode:
        return False
    return True
