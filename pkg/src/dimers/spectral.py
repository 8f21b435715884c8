"""Closed-form eigenvalue products for rectangle and torus counts.

All arithmetic uses mpmath at an explicit working precision (``workprec``),
never the ambient one. A product is rounded to an integer only if it lies
within ``2**-32`` of one; otherwise PrecisionExhausted is raised and the
caller should retry with more bits.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import mpmath

from .errors import InvalidDimensions, PrecisionExhausted, SignCalibrationFailure
from .grid import GridSpec
from .kasteleyn import SignClass, combination, torus_sign_calibration, vanishing_class

GUARD_BITS = 64
ROUNDING_TOLERANCE = mpmath.mpf(2) ** -32


class SpectrumKind(enum.Enum):
    PATH = "path"  # eigenvalues 2cos(pi j/(s+1))
    CIRCULANT_PLUS = "circulant+"  # 2cos(2 pi j/s)
    CIRCULANT_MINUS = "circulant-"  # 2cos((2j-1) pi/s)


@dataclass(frozen=True)
class SpectrumSpec:
    side: int
    kind: SpectrumKind

    def __post_init__(self):
        if self.side < 1:
            raise InvalidDimensions("spectrum side must be positive")


def default_precision(m: int, n: int) -> int:
    return m * n + GUARD_BITS


def _angles(spec: SpectrumSpec, j_values):
    s = spec.side
    pi = mpmath.pi
    if spec.kind is SpectrumKind.PATH:
        return [pi * j / (s + 1) for j in j_values]
    if spec.kind is SpectrumKind.CIRCULANT_PLUS:
        return [2 * pi * j / s for j in j_values]
    return [(2 * j - 1) * pi / s for j in j_values]


def eigenvalues(spec: SpectrumSpec, precision_bits: int = 128) -> list:
    """The full eigenvalue multiset, j = 1..side."""
    with mpmath.workprec(precision_bits):
        return [2 * mpmath.cos(a) for a in _angles(spec, range(1, spec.side + 1))]


def _half_squares(spec: SpectrumSpec, precision_bits: int) -> list:
    """Squares of one eigenvalue from each {lam, -lam} pair (side must be even)."""
    with mpmath.workprec(precision_bits):
        return [(2 * mpmath.cos(a)) ** 2 for a in _angles(spec, range(1, spec.side // 2 + 1))]


def _round_checked(value, what: str, precision_bits: int) -> int:
    # with too few bits the value carries no fractional part and the distance test is vacuous
    if value and mpmath.mag(value) + 32 >= precision_bits:
        raise PrecisionExhausted(f"{what} needs more than {precision_bits} bits to round reliably")
    nearest = mpmath.nint(value)
    if abs(value - nearest) >= ROUNDING_TOLERANCE:
        raise PrecisionExhausted(f"{what} = {mpmath.nstr(value, 30)} is not within 2^-32 of an integer")
    return int(nearest)


def rectangle_square_product(m: int, n: int, precision_bits: int):
    """prod_{j<=m} prod_{k<=n/2} (4cos^2(pi j/(m+1)) + 4cos^2(pi k/(n+1))), i.e. N(m,n)^2.

    Needs n even; pairs the k and n+1-k factors into one real term.
    """
    with mpmath.workprec(precision_bits):
        rows = [4 * mpmath.cos(mpmath.pi * j / (m + 1)) ** 2 for j in range(1, m + 1)]
        cols = [4 * mpmath.cos(mpmath.pi * k / (n + 1)) ** 2 for k in range(1, n // 2 + 1)]
        product = mpmath.mpf(1)
        for a in rows:
            for b in cols:
                product *= a + b
        return product


def count_rectangle_spectral(m: int, n: int, precision_bits: int | None = None) -> int:
    GridSpec.rectangle(m, n)
    if n % 2:
        m, n = n, m
    if precision_bits is None:
        precision_bits = default_precision(m, n)
    with mpmath.workprec(precision_bits):
        root = mpmath.sqrt(rectangle_square_product(m, n, precision_bits))
        return _round_checked(root, f"N({m},{n})", precision_bits)


def kronecker_determinant(m: int, n: int, precision_bits: int = 128):
    """prod over path spectra of (mu + i nu): the determinant of C_m (x) I_n + I_m (x) i C_n."""
    mus = eigenvalues(SpectrumSpec(m, SpectrumKind.PATH), precision_bits)
    nus = eigenvalues(SpectrumSpec(n, SpectrumKind.PATH), precision_bits)
    with mpmath.workprec(precision_bits):
        product = mpmath.mpc(1)
        for mu in mus:
            for nu in nus:
                product *= mpmath.mpc(mu, nu)
        return product


def _torus_spectra(m: int, n: int, sign_class: SignClass):
    # horizontal direction has n sites, vertical has m
    horizontal = SpectrumKind.CIRCULANT_MINUS if sign_class.flips_horizontal else SpectrumKind.CIRCULANT_PLUS
    vertical = SpectrumKind.CIRCULANT_MINUS if sign_class.flips_vertical else SpectrumKind.CIRCULANT_PLUS
    return SpectrumSpec(n, horizontal), SpectrumSpec(m, vertical)


def torus_abs_determinant(m: int, n: int, sign_class: SignClass, precision_bits: int):
    """|det B_k| from the circulant spectra.

    det A_k = prod (mu + i nu); pairing nu with -nu and mu with -mu turns the
    product into a perfect square of prod_{half} (mu^2 + nu^2).
    """
    hspec, vspec = _torus_spectra(m, n, sign_class)
    mu2 = _half_squares(hspec, precision_bits)
    nu2 = _half_squares(vspec, precision_bits)
    with mpmath.workprec(precision_bits):
        product = mpmath.mpf(1)
        for a in mu2:
            for b in nu2:
                product *= a + b
        return product


def torus_determinants_spectral(m: int, n: int, precision_bits: int | None = None,
                                experimental: bool = False) -> tuple:
    """Signed, normalised torus determinants rounded to integers."""
    GridSpec.torus(m, n, experimental)
    if precision_bits is None:
        precision_bits = default_precision(m, n)
    signs = torus_sign_calibration(m, n)
    out = []
    for k, sign in zip(SignClass, signs):
        value = _round_checked(torus_abs_determinant(m, n, k, precision_bits), f"|det B{k.value}|", precision_bits)
        if sign == 0 and value != 0:
            raise SignCalibrationFailure(f"det {k.name} should vanish but the spectral product is {value}")
        out.append(sign * value)
    return tuple(out)


def count_torus_spectral(m: int, n: int, precision_bits: int | None = None,
                         experimental: bool = False) -> int:
    dets = torus_determinants_spectral(m, n, precision_bits, experimental)
    total = sum(c * d for c, d in zip(combination(m, n), dets))
    if total % 2 or total < 0:
        raise SignCalibrationFailure(f"combination {total}/2 is not a nonnegative integer")
    return total // 2


def vanishing_factor(m: int, n: int, precision_bits: int = 128):
    """Smallest |mu + i nu| over the spectrum of the vanishing torus matrix (0 up to rounding)."""
    hspec, vspec = _torus_spectra(m, n, vanishing_class(m, n))
    mus = eigenvalues(hspec, precision_bits)
    nus = eigenvalues(vspec, precision_bits)
    with mpmath.workprec(precision_bits):
        return min(mpmath.hypot(a, b) for a in mus for b in nus)
