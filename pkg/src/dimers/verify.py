"""Cross-pipeline and property checks behind the ``verify`` command."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import mpmath

from . import asymptotics, codec, kasteleyn, oracle, spectral
from .grid import GridSpec


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


def rectangle_sizes(max_cells: int):
    """All (m, n) with m <= n, m*n even and m*n <= max_cells."""
    return [
        (m, n)
        for m in range(1, max_cells + 1)
        for n in range(m, max_cells + 1)
        if m * n <= max_cells and (m * n) % 2 == 0
    ]


def fibonacci(k: int) -> int:
    """F_1 = 1, F_2 = 2, ... (the tilings-of-a-2xk-strip indexing)."""
    a, b = 1, 2
    for _ in range(k - 1):
        a, b = b, a + b
    return a


def check_oracle_equivalence(max_cells):
    bad = []
    sizes = rectangle_sizes(max_cells)
    for m, n in sizes:
        e = oracle.enumerate_matchings(GridSpec.rectangle(m, n))
        d = kasteleyn.count_rectangle_det(m, n)
        s = spectral.count_rectangle_spectral(m, n)
        if not e == d == s:
            bad.append(f"{m}x{n}: {e}/{d}/{s}")
    return not bad, f"{len(sizes)} rectangles" if not bad else "; ".join(bad)


def check_signature_coherence(max_cells):
    total = 0
    for m, n in rectangle_sizes(max_cells):
        signs = set()
        for mu in oracle.iter_matchings(GridSpec.rectangle(m, n), max_cells):
            signs.add(oracle.matching_signature(mu))
            total += 1
        if len(signs) != 1:
            return False, f"{m}x{n} has signatures {sorted(signs)}"
    return True, f"{total} matchings"


def check_codec_round_trip(max_cells):
    total = 0
    for m, n in rectangle_sizes(max_cells):
        for mu in oracle.iter_matchings(GridSpec.rectangle(m, n), max_cells):
            code = codec.encode(mu)
            if len(code.bits) != m * n // 2 or codec.decode(code) != mu:
                return False, f"round trip fails on {m}x{n}"
            total += 1
    return True, f"{total} matchings"


def check_fibonacci(_):
    bad = [k for k in range(1, 13) if kasteleyn.count_rectangle_det(2, k) != fibonacci(k)]
    return not bad, "k = 1..12" if not bad else f"fails at {bad}"


def check_jockusch(_):
    out = []
    for n in (2, 4, 6, 8):
        count = kasteleyn.count_rectangle_det(n, n)
        base = count if n % 4 == 0 else count // 2
        r = math.isqrt(base)
        if r * r != base or (n % 4 == 2 and count % 2):
            return False, f"N({n},{n}) = {count}"
        out.append(f"N({n},{n})={'' if n % 4 == 0 else '2*'}{r}^2")
    return True, ", ".join(out)


def check_torus(_):
    for m, n in ((4, 4), (4, 8)):
        dets = kasteleyn.torus_determinants(m, n)
        if dets[0] != 0:
            return False, f"det B0 = {dets[0]} at {m}x{n}"
        if oracle.torus_signed_sums(m, n) != dets:
            return False, f"typed sums differ from determinants at {m}x{n}"
        if kasteleyn.count_torus_det(m, n) != oracle.enumerate_matchings(GridSpec.torus(m, n)):
            return False, f"count mismatch at {m}x{n}"
        if oracle.observed_sign_table(m, n) != kasteleyn.SIGN_TABLE:
            return False, f"sign table mismatch at {m}x{n}"
    return True, "4x4 and 4x8"


def check_overtiling_chain(_):
    star = oracle.count_overtilings(4, 4)
    prime = kasteleyn.count_torus_det(4, 4)
    plain = kasteleyn.count_rectangle_det(4, 4)
    return star >= prime >= plain, f"N*={star} >= N'={prime} >= N={plain}"


def check_entropy(_):
    g = asymptotics.catalan_constant(128)
    with mpmath.workprec(128):
        target = g / mpmath.pi
    integral = asymptotics.entropy_integral(1e-8)
    gap = abs(integral.value - float(target))
    return gap <= 1e-8, f"|integral - G/pi| = {gap:.2e}"


def check_finite_size(_):
    reports = asymptotics.finite_size_entropy(64)
    logs = [r.per_site_log for r in reports]
    increasing = all(a < b for a, b in zip(logs, logs[1:]))
    return increasing and reports[-1].gap < 0.05, f"gap at n=64: {float(reports[-1].gap):.4f}"


def check_flip_connectivity(max_cells):
    sizes = [(m, n) for m, n in rectangle_sizes(max_cells) if m <= 6 and n <= 6]
    bad = [f"{m}x{n}" for m, n in sizes if not oracle.flip_connectivity(m, n)]
    return not bad, f"{len(sizes)} rectangles" if not bad else ", ".join(bad)


CHECKS: list[tuple[str, Callable]] = [
    ("oracle-equivalence", check_oracle_equivalence),
    ("signature-coherence", check_signature_coherence),
    ("codec-round-trip", check_codec_round_trip),
    ("fibonacci", check_fibonacci),
    ("jockusch-squares", check_jockusch),
    ("torus-sign-table", check_torus),
    ("overtiling-chain", check_overtiling_chain),
    ("entropy-integral", check_entropy),
    ("finite-size-entropy", check_finite_size),
    ("flip-connectivity", check_flip_connectivity),
]


def run_checks(max_cells: int = 36):
    for name, check in CHECKS:
        try:
            passed, detail = check(max_cells)
        except Exception as exc:  # a crashing check is a failed check
            passed, detail = False, f"{type(exc).__name__}: {exc}"
        yield CheckResult(name, bool(passed), detail)
