"""Weighted bipartite adjacency matrices and determinant-based counts.

Horizontal edges weigh ``+1`` and vertical edges ``+i``. Rows of a matrix are
black vertices and columns are white vertices, both in canonical order.
"""
from __future__ import annotations

import enum
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

from .errors import InvalidDimensions, InvalidSignClass, SignCalibrationFailure
from .grid import GridSpec, Orientation, Topology, build_grid
from .linalg import GaussianInt, GaussianMatrix, block_antidiagonal, det_exact


class SignClass(enum.Enum):
    B0 = 0
    B1 = 1
    B2 = 2
    B3 = 3

    @property
    def flips_vertical(self) -> bool:
        return self in (SignClass.B1, SignClass.B3)

    @property
    def flips_horizontal(self) -> bool:
        return self in (SignClass.B2, SignClass.B3)


def edge_weight(edge, sign_class: SignClass = SignClass.B0) -> GaussianInt:
    if edge.orientation is Orientation.HORIZONTAL:
        w = GaussianInt(1, 0)
        flip = sign_class.flips_horizontal
    else:
        w = GaussianInt(0, 1)
        flip = sign_class.flips_vertical
    return -w if (flip and edge.special) else w


@dataclass(frozen=True)
class KasteleynMatrix:
    grid: GridSpec
    sign_class: SignClass
    matrix: GaussianMatrix

    def determinant(self) -> GaussianInt:
        return det_exact(self.matrix)


def build_kasteleyn(grid: GridSpec, sign_class: SignClass = SignClass.B0) -> KasteleynMatrix:
    if grid.topology is Topology.RECTANGLE and sign_class is not SignClass.B0:
        raise InvalidSignClass("a rectangle has no special edges; only B0 applies")
    graph = build_grid(grid)
    p = grid.cells // 2
    rows = [[GaussianInt() for _ in range(p)] for _ in range(p)]
    bi, wi = graph.black_index, graph.white_index
    for e in graph.edges:
        j, k = bi[e.black], wi[e.white]
        # parallel edges on a side-2 torus add up
        rows[j][k] = rows[j][k] + edge_weight(e, sign_class)
    return KasteleynMatrix(grid, sign_class, GaussianMatrix(tuple(map(tuple, rows))))


def full_kasteleyn_matrix(grid: GridSpec, sign_class: SignClass = SignClass.B0) -> GaussianMatrix:
    """The ``mn x mn`` weighted adjacency matrix, blacks before whites."""
    return block_antidiagonal(build_kasteleyn(grid, sign_class).matrix)


def path_matrix(size: int) -> list:
    return [[int(abs(a - b) == 1) for b in range(size)] for a in range(size)]


def kronecker_matrix(m: int, n: int) -> GaussianMatrix:
    """``C_m (x) I_n + I_m (x) i C_n`` for path adjacency matrices ``C``.

    Index ``(a, b)`` maps to ``a*n + b``; steps in ``a`` weigh 1 and steps in ``b``
    weigh ``i``. Read with ``a`` as the row this is the m x n grid with the
    weights swapped (vertical 1, horizontal i); its determinant is
    ``(-1)**(m*n//2)`` times that of :func:`full_kasteleyn_matrix`.
    """
    cm, cn = path_matrix(m), path_matrix(n)
    size = m * n
    rows = [[GaussianInt() for _ in range(size)] for _ in range(size)]
    for a in range(m):
        for b in range(n):
            r = a * n + b
            for a2 in range(m):
                if cm[a][a2]:
                    rows[r][a2 * n + b] = GaussianInt(1, 0)
            for b2 in range(n):
                if cn[b][b2]:
                    rows[r][a * n + b2] = GaussianInt(0, 1)
    return GaussianMatrix(tuple(map(tuple, rows)))


def count_rectangle_det(m: int, n: int) -> int:
    """|det B| for the m x n rectangle.

    With an odd number of columns every matching has an odd number of vertical
    edges and the determinant is purely imaginary, so the board is transposed
    first; the count is symmetric in m and n.
    """
    GridSpec.rectangle(m, n)
    if n % 2:
        m, n = n, m
    d = build_kasteleyn(GridSpec.rectangle(m, n)).determinant()
    if d.im != 0:
        raise ArithmeticError(f"rectangle determinant {d} is not real")
    return abs(d.re)


# Torus -----------------------------------------------------------------------

PARITY_TYPES = (("e", "e"), ("o", "e"), ("e", "o"), ("o", "o"))

# Contribution of one matching of each parity type (special horizontal parity,
# special vertical parity) to each normalised determinant, sides divisible by 4.
SIGN_TABLE = {
    ("e", "e"): (+1, +1, +1, +1),
    ("o", "e"): (-1, -1, +1, +1),
    ("e", "o"): (-1, +1, -1, +1),
    ("o", "o"): (-1, +1, +1, -1),
}

# Coefficients of the normalised determinants in the count, sides divisible by 4.
COMBINATION = (-1, +1, +1, +1)


def _character(parity_type, sign_class) -> int:
    h, v = (p == "o" for p in parity_type)
    return -1 if (h and sign_class.flips_horizontal) != (v and sign_class.flips_vertical) else 1


def base_sign(m: int, n: int, parity_type) -> int:
    """Normalised B0 contribution of a matching of ``parity_type`` on the m x n torus.

    ``(-1)**(h*v + h*[4 | n] + v*[4 | m])``; with both sides divisible by 4 this
    reproduces :data:`SIGN_TABLE`. The other residue classes were fitted to
    exhaustive enumeration and are only trusted behind the experimental flag.
    """
    h, v = (int(p == "o") for p in parity_type)
    exponent = h * v + h * int(n % 4 == 0) + v * int(m % 4 == 0)
    return -1 if exponent % 2 else 1


def sign_table(m: int, n: int) -> dict:
    return {
        t: tuple(base_sign(m, n, t) * _character(t, k) for k in SignClass) for t in PARITY_TYPES
    }


def combination(m: int, n: int) -> tuple:
    """Coefficients ``c`` with ``sum(c[k] * d[k]) == 2 * N'`` for the m x n torus.

    The rows of the sign table are signed characters of Z2 x Z2, so the
    coefficients come from character orthogonality.
    """
    table = sign_table(m, n)
    coeffs = tuple(sum(table[t][k.value] for t in PARITY_TYPES) // 2 for k in SignClass)
    return coeffs


def vanishing_class(m: int, n: int) -> SignClass:
    """The sign class whose determinant vanishes: the one entering with coefficient -1."""
    (k,) = [k for k, c in zip(SignClass, combination(m, n)) if c < 0]
    return k


def permutation_sign(perm) -> int:
    """Sign of a permutation given as a sequence of images of 0..len-1."""
    seen = [False] * len(perm)
    sign = 1
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        j = start
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


@lru_cache(maxsize=None)
def reference_sign(grid: GridSpec) -> int:
    """Leibniz sign of the all-horizontal, non-wrapping matching.

    That matching uses no special edges and has weight 1 under every sign
    class, so multiplying a determinant by this sign makes (e,e) matchings
    contribute +1.
    """
    if grid.cols % 2:
        raise InvalidDimensions("reference matching needs an even number of columns")
    graph = build_grid(grid)
    bi, wi = graph.black_index, graph.white_index
    perm = [0] * (grid.cells // 2)
    for e in graph.edges:
        if e.orientation is Orientation.HORIZONTAL and not e.special and e.tail.x % 2 == 1:
            perm[bi[e.black]] = wi[e.white]
    return permutation_sign(perm)


def torus_determinants(m: int, n: int, experimental: bool = False, workers: int = 1) -> tuple:
    """Normalised real determinants ``(d0, d1, d2, d3)`` of the four torus matrices."""
    grid = GridSpec.torus(m, n, experimental)
    classes = list(SignClass)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=min(workers, 4)) as pool:
            dets = list(pool.map(_torus_det, [grid] * 4, classes))
    else:
        dets = [_torus_det(grid, k) for k in classes]
    ref = reference_sign(grid)
    out = []
    for k, d in zip(classes, dets):
        if d.im != 0:
            raise SignCalibrationFailure(f"det {k.name} = {d} has a nonzero imaginary part")
        out.append(ref * d.re)
    return tuple(out)


def _torus_det(grid, sign_class):
    return build_kasteleyn(grid, sign_class).determinant()


def combine_torus(dets, m: int = 4, n: int = 4) -> int:
    total = sum(c * d for c, d in zip(combination(m, n), dets))
    if total % 2 or total < 0:
        raise SignCalibrationFailure(f"combination {total}/2 of {dets} is not a nonnegative integer")
    return total // 2


def count_torus_det(m: int, n: int, experimental: bool = False, workers: int = 1) -> int:
    dets = torus_determinants(m, n, experimental, workers)
    k = vanishing_class(m, n)
    if dets[k.value] != 0:
        raise SignCalibrationFailure(f"det {k.name} = {dets[k.value]} should vanish on the {m}x{n} torus")
    if any(d < 0 for d in dets):
        raise SignCalibrationFailure(f"normalised determinants {dets} are not all nonnegative")
    count = combine_torus(dets, m, n)
    if not GridSpec.torus(m, n, experimental).validated:
        _cross_check_experimental(m, n, count)
    return count


def _cross_check_experimental(m, n, count):
    from . import oracle

    if m * n <= oracle.TORUS_LIMIT:
        expected = oracle.enumerate_matchings(GridSpec.torus(m, n, experimental=True))
        if expected != count:
            raise SignCalibrationFailure(f"torus {m}x{n}: determinants give {count}, enumeration {expected}")
    else:
        warnings.warn(
            f"torus {m}x{n} is outside the enumeration limit; experimental count is not oracle-checked",
            stacklevel=3,
        )


def torus_sign_calibration(m: int, n: int) -> tuple:
    """Signs of the normalised determinants ``(d0, d1, d2, d3)``; 0 marks the vanishing one.

    Every other normalised determinant is positive in all four residue classes
    of the sides mod 4 (checked against the determinant path in the tests).
    """
    GridSpec.torus(m, n, experimental=True)
    k = vanishing_class(m, n)
    return tuple(0 if j is k else 1 for j in SignClass)


def matching_weight_sign(edges, sign_class: SignClass) -> int:
    """Product of edge weights of a torus matching, which is always a real unit."""
    vertical = flipped = 0
    for e in edges:
        if e.orientation is Orientation.VERTICAL:
            vertical += 1
            flipped += e.special and sign_class.flips_vertical
        else:
            flipped += e.special and sign_class.flips_horizontal
    if vertical % 2:
        raise ArithmeticError("odd number of vertical edges; weight is not real")
    return (-1) ** (vertical // 2 + flipped)


def typed_sign_contributions(matching) -> tuple:
    """Normalised contributions of one torus matching to ``det B_k`` for k = 0..3."""
    grid = matching.grid
    graph = build_grid(grid)
    bi, wi = graph.black_index, graph.white_index
    perm = [0] * (grid.cells // 2)
    for e in matching.edges:
        perm[bi[e.black]] = wi[e.white]
    sigma = reference_sign(grid) * permutation_sign(perm)
    return tuple(sigma * matching_weight_sign(matching.edges, k) for k in SignClass)


def typed_sign_contribution(matching, sign_class: SignClass) -> int:
    return typed_sign_contributions(matching)[sign_class.value]
