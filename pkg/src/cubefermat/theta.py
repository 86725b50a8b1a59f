"""Positive-definite ternary forms, their representation numbers and theta series.

Two independent counting paths are provided.  ``count_reps`` handles a single
``n`` by solving for the last coordinate exactly; ``batch_counts`` sweeps every
lattice point of the ellipsoid ``Q <= N`` once and histograms the values.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numba
import numpy as np

from .arith import fundamental_discriminant, squarefree_part
from .qseries import QSeries

DEFAULT_MEM_MB = 2048


class MemoryBudgetError(RuntimeError):
    """The requested sieve would exceed the configured memory cap."""


@dataclass(frozen=True)
class TernaryForm:
    """``Q(v) = v^T A v / 2`` for a symmetric integer ``A`` with even diagonal."""

    A: tuple[tuple[int, int, int], ...]
    name: str = ""

    def __post_init__(self):
        A = tuple(tuple(int(v) for v in row) for row in self.A)
        object.__setattr__(self, "A", A)
        if len(A) != 3 or any(len(r) != 3 for r in A):
            raise ValueError("Gram matrix must be 3x3")
        if any(A[i][j] != A[j][i] for i in range(3) for j in range(3)):
            raise ValueError("Gram matrix must be symmetric")
        if any(A[i][i] % 2 for i in range(3)):
            raise ValueError("Gram matrix must have even diagonal")
        m1 = A[0][0]
        m2 = A[0][0] * A[1][1] - A[0][1] ** 2
        if m1 <= 0 or m2 <= 0 or self.det <= 0:
            raise ValueError("form is not positive definite")

    @property
    def coefficients(self) -> tuple[int, int, int, int, int, int]:
        """``(xx, yy, zz, xy, xz, yz)`` coefficients of the polynomial."""
        A = self.A
        return (A[0][0] // 2, A[1][1] // 2, A[2][2] // 2, A[0][1], A[0][2], A[1][2])

    def __call__(self, x: int, y: int, z: int) -> int:
        c = self.coefficients
        return c[0] * x * x + c[1] * y * y + c[2] * z * z + c[3] * x * y + c[4] * x * z + c[5] * y * z

    @property
    def det(self) -> int:
        """Determinant of ``A``."""
        (a, b, c), (_, e, f), (_, _, i) = self.A
        return a * (e * i - f * f) - b * (b * i - f * c) + c * (b * f - e * c)

    def adjugate(self) -> list[list[int]]:
        A = self.A
        adj = [[0] * 3 for _ in range(3)]
        for i in range(3):
            for j in range(3):
                r = [k for k in range(3) if k != j]
                s = [k for k in range(3) if k != i]
                minor = A[r[0]][s[0]] * A[r[1]][s[1]] - A[r[0]][s[1]] * A[r[1]][s[0]]
                adj[i][j] = (-1) ** (i + j) * minor
        return adj

    def inverse(self) -> list[list[Fraction]]:
        D = self.det
        return [[Fraction(v, D) for v in row] for row in self.adjugate()]

    def permuted(self, perm: tuple[int, int, int]) -> "TernaryForm":
        """The equivalent form in coordinates reordered by ``perm``."""
        return TernaryForm(tuple(tuple(self.A[i][j] for j in perm) for i in perm), self.name)

    def axis_bound(self, axis: int, n: int) -> int:
        """Largest ``|v_axis|`` over integer ``v`` with ``Q(v) <= n``."""
        # min of Q on the slice v_axis = t is t^2 / (2 (A^-1)_ii)
        return math.isqrt(2 * n * self.adjugate()[axis][axis] // self.det)


Q1 = TernaryForm(((2, 0, 0), (0, 6, 0), (0, 0, 54)), "x^2+3y^2+27z^2")
Q2 = TernaryForm(((6, 0, 0), (0, 8, -2), (0, -2, 14)), "3x^2+4y^2+7z^2-2yz")
Q3 = TernaryForm(((2, 0, 1), (0, 2, 0), (1, 0, 14)), "x^2+y^2+7z^2+xz")
Q4 = TernaryForm(((2, 1, 0), (1, 4, 1), (0, 1, 8)), "x^2+2y^2+4z^2+xy+yz")
FORMS = {"Q1": Q1, "Q2": Q2, "Q3": Q3, "Q4": Q4}


def _isqrt_vec(v: np.ndarray) -> np.ndarray:
    s = np.sqrt(v.astype(np.float64)).astype(np.int64)
    s -= s * s > v
    s += (s + 1) * (s + 1) <= v
    return s


def count_reps(Q: TernaryForm, n: int) -> int:
    """Number of ``(x, y, z)`` in Z^3 with ``Q(x, y, z) = n``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    # solve for the widest axis, enumerate the two narrower ones
    adj = Q.adjugate()
    widest = max(range(3), key=lambda i: adj[i][i])
    Q = Q.permuted(tuple(i for i in range(3) if i != widest) + (widest,))
    cxx, cyy, czz, cxy, cxz, cyz = Q.coefficients
    X, Y = Q.axis_bound(0, n), Q.axis_bound(1, n)
    y = np.arange(-Y, Y + 1, dtype=np.int64)
    two_a = 2 * czz
    total = 0
    for x in range(-X, X + 1):
        # solve czz z^2 + b z + c = 0 for integer z
        b = cxz * x + cyz * y
        c = cxx * x * x + cxy * x * y + cyy * y * y - n
        disc = b * b - 4 * czz * c
        ok = disc >= 0
        if not ok.any():
            continue
        b, disc = b[ok], disc[ok]
        s = _isqrt_vec(disc)
        square = s * s == disc
        b, s = b[square], s[square]
        hit_lo = (-b - s) % two_a == 0
        hit_hi = ((-b + s) % two_a == 0) & (s > 0)
        total += int(hit_lo.sum()) + int(hit_hi.sum())
    return total


@numba.njit(nogil=True, cache=True)
def _sieve_slab(cxx, cyy, czz, cxy, cxz, cyz, N, x_lo, x_hi, hist):
    # completing the square in z: min_z Q(x, y, z) = ay*y^2 + by(x)*y + cy(x)
    ay = cyy - cyz * cyz / (4.0 * czz)
    for x in range(x_lo, x_hi):
        by = (cxy - cxz * cyz / (2.0 * czz)) * x
        cy = (cxx - cxz * cxz / (4.0 * czz)) * x * x - N
        dy = by * by - 4.0 * ay * cy
        if dy < 0:
            continue
        sy = math.sqrt(dy)
        y_lo = int(math.floor((-by - sy) / (2.0 * ay))) - 1
        y_hi = int(math.ceil((-by + sy) / (2.0 * ay))) + 1
        for y in range(y_lo, y_hi + 1):
            b = cxz * x + cyz * y
            c = cxx * x * x + cxy * x * y + cyy * y * y
            dz = b * b - 4 * czz * (c - N)
            if dz < 0:
                continue
            sz = math.sqrt(dz)
            z_lo = int(math.floor((-b - sz) / (2.0 * czz))) - 1
            z_hi = int(math.ceil((-b + sz) / (2.0 * czz))) + 1
            v = czz * z_lo * z_lo + b * z_lo + c
            step = czz * (2 * z_lo + 1) + b
            for _ in range(z_lo, z_hi + 1):
                if v <= N:
                    hist[v] += 1
                v += step
                step += 2 * czz


def _mem_limit_bytes() -> int:
    return int(os.environ.get("CUBEFERMAT_MEM_MB", DEFAULT_MEM_MB)) * 2**20


def batch_counts(Q: TernaryForm, N: int, shards: int = 1) -> np.ndarray:
    """``r_Q(n)`` for ``0 <= n <= N`` as an int64 array.

    The x-axis range is cut into ``shards`` disjoint slabs, each filling a
    private histogram on its own thread; the merge is a plain sum, so the
    result does not depend on ``shards``.
    """
    if N < 1 or shards < 1:
        raise ValueError("N and shards must be positive")
    need = (shards + 1) * (N + 1) * 8
    if need > _mem_limit_bytes():
        raise MemoryBudgetError(
            f"sieve to N={N} with {shards} shards needs {need / 2**20:.0f} MB, "
            f"cap is {_mem_limit_bytes() / 2**20:.0f} MB (CUBEFERMAT_MEM_MB)"
        )
    X = Q.axis_bound(0, N)
    edges = np.linspace(-X, X + 1, shards + 1).round().astype(np.int64)
    hists = [np.zeros(N + 1, dtype=np.int64) for _ in range(shards)]
    coeffs = Q.coefficients

    def run(i):
        _sieve_slab(*coeffs, N, int(edges[i]), int(edges[i + 1]), hists[i])

    if shards == 1:
        run(0)
    else:
        with ThreadPoolExecutor(max_workers=min(shards, os.cpu_count() or 1)) as pool:
            list(pool.map(run, range(shards)))
    total = hists[0]
    for h in hists[1:]:
        total += h
    return total


def theta_series(Q: TernaryForm, trunc: int) -> QSeries:
    """``sum_n r_Q(n) q^n`` to ``q^trunc``, by one sieve pass."""
    if trunc < 1:
        raise ValueError("trunc must be >= 1")
    return QSeries(batch_counts(Q, trunc, 1).tolist())


def coeff_a(n: int) -> int:
    """Coefficient of ``q^n`` in ``theta_Q1 - theta_Q2``."""
    return count_reps(Q1, n) - count_reps(Q2, n)


def coeff_b(n: int) -> int:
    """Coefficient of ``q^n`` in ``theta_Q3 - theta_Q4``."""
    return count_reps(Q3, n) - count_reps(Q4, n)


def theta_level(Q: TernaryForm) -> tuple[int, int]:
    """Level and character discriminant of ``theta_Q`` as a weight-3/2 form.

    The level is the least ``N`` making ``N A^{-1}`` integral with even
    diagonal; the character is attached to ``det(2A)``.
    """
    inv = Q.inverse()
    N = 1
    for i in range(3):
        for j in range(3):
            entry = inv[i][j] / 2 if i == j else inv[i][j]
            N = math.lcm(N, entry.denominator)
    s = squarefree_part(8 * Q.det)
    return N, (1 if s == 1 else fundamental_discriminant(s))
