"""Central values ``L(E_d, 1)`` of the quadratic twists ``d Y^2 = X^3 - 432``.

For a twist with root number +1,

    L(E, 1) = 2 * sum_{n >= 1} a_n / n * exp(-2 pi n / sqrt(N)),

and for root number -1 the value is 0.  The twist coefficients are
``a_n = lambda(n) chi_d(n)`` with ``lambda`` the coefficients of the level-27
eta product.
"""

from __future__ import annotations

import math
import threading
from dataclasses import asdict, dataclass

import numpy as np

from .arith import QuadChar, chi, fundamental_discriminant, is_squarefree
from .qseries import build_F

TAIL_TARGET = 1e-6

_lam_lock = threading.Lock()
_lam_cache: tuple[int, ...] = ()


def lambda_coefficients(N: int) -> tuple[int, ...]:
    """``(lambda(0), ..., lambda(N'))`` for some ``N' >= N``; cached across calls."""
    global _lam_cache
    with _lam_lock:
        if len(_lam_cache) <= N:
            size = max(N, 2 * len(_lam_cache), 1024)
            _lam_cache = build_F(size).coeffs
        return _lam_cache


@dataclass(frozen=True)
class LReport:
    d: int
    d_reduced: int
    conductor: int
    root_number: int
    value: float
    tail_bound: float
    terms_used: int

    def to_json(self) -> dict:
        return asdict(self)

    def __str__(self):
        return (
            f"L(E_{self.d}, 1) = {self.value:.6f}  (twist d={self.d_reduced}, N={self.conductor}, "
            f"w={self.root_number:+d}, terms={self.terms_used}, tail<{self.tail_bound:.1e})"
        )


def reduce_twist(d: int) -> int:
    """Representative prime to 3 with the same central value (``E_d`` vs ``E_{-3d}``)."""
    if not is_squarefree(d):
        raise ValueError(f"d = {d} is not a squarefree nonzero integer")
    return -d // 3 if d % 3 == 0 else d


def _check_prime_to_3(d: int) -> None:
    if not is_squarefree(d):
        raise ValueError(f"d = {d} is not a squarefree nonzero integer")
    if d % 3 == 0:
        raise ValueError(f"3 divides d = {d}; apply reduce_twist first")


def root_number(d: int) -> int:
    _check_prime_to_3(d)
    return chi(d, -27)


def conductor(d: int) -> int:
    _check_prime_to_3(d)
    return 27 * fundamental_discriminant(d) ** 2


def twisted_an(d: int, N: int) -> list[int]:
    """``[0, a_1, ..., a_N]`` for ``E_d``."""
    _check_prime_to_3(d)
    lam = lambda_coefficients(N)
    ch = QuadChar.of_field(d)
    table, D = ch.table(), ch.conductor
    return [0] + [lam[n] * table[n % D] if lam[n] else 0 for n in range(1, N + 1)]


def tail_bound(N: int, M: int) -> float:
    """Bound on ``2 sum_{n > M} |a_n|/n e^{-2 pi n / sqrt N}`` using ``|a_n| <= 2n``.

    ``|a_n| <= d(n) sqrt(n)`` and ``d(n) <= 2 sqrt(n)``; the rest is geometric.
    """
    r = math.exp(-2 * math.pi / math.sqrt(N))
    return 4 * r ** (M + 1) / (1 - r)


def central_value(d: int, terms: int | None = None) -> LReport:
    """``L(E_d, 1)`` for any squarefree ``d``, via the representative prime to 3."""
    dr = reduce_twist(d)
    N = conductor(dr)
    w = root_number(dr)
    if w == -1:
        return LReport(d, dr, N, w, 0.0, 0.0, 0)
    M = terms if terms is not None else math.ceil(12 * math.sqrt(N))
    while tail_bound(N, M) >= TAIL_TARGET:
        M *= 2
    an = np.array(twisted_an(dr, M), dtype=np.float64)
    n = np.arange(M + 1, dtype=np.float64)
    n[0] = 1.0
    weights = np.exp(-2 * math.pi * n / math.sqrt(N)) / n
    value = 2.0 * float(np.dot(an[1:], weights[1:]))
    return LReport(d, dr, N, w, value, tail_bound(N, M), M)
