"""Truncated q-expansions with exact integer coefficients."""

from __future__ import annotations

import csv
from typing import Callable, Iterable, Sequence

import numpy as np

from .arith import QuadChar


class PrecisionError(ValueError):
    """A computation needs more q-expansion terms than were supplied."""


class QSeries:
    """``sum_{n=0}^{trunc} c[n] q^n``, known up to and including ``q^trunc``.

    Instances are immutable; coefficients are Python ints.  Binary operations
    return the smallest truncation of their operands.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable[int]):
        c = tuple(int(x) for x in coeffs)
        if not c:
            raise ValueError("a q-series needs at least the constant term")
        self._c = c

    @classmethod
    def zero(cls, trunc: int) -> "QSeries":
        return cls([0] * (trunc + 1))

    @classmethod
    def one(cls, trunc: int) -> "QSeries":
        return cls([1] + [0] * trunc)

    @classmethod
    def monomial(cls, n: int, trunc: int, coeff: int = 1) -> "QSeries":
        c = [0] * (trunc + 1)
        if n <= trunc:
            c[n] = coeff
        return cls(c)

    @property
    def trunc(self) -> int:
        return len(self._c) - 1

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self._c

    def __len__(self):
        return len(self._c)

    def __getitem__(self, n):
        if isinstance(n, slice):
            return self._c[n]
        if n < 0 or n > self.trunc:
            raise PrecisionError(f"coefficient q^{n} requested, series known to q^{self.trunc}")
        return self._c[n]

    def __iter__(self):
        return iter(self._c)

    def truncate(self, trunc: int) -> "QSeries":
        if trunc > self.trunc:
            raise PrecisionError(f"cannot extend q^{self.trunc} series to q^{trunc}")
        return QSeries(self._c[: trunc + 1])

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        return hash(self._c)

    def __repr__(self):
        head = " + ".join(f"{c}q^{n}" for n, c in enumerate(self._c[:8]) if c)
        return f"QSeries({head or '0'} + O(q^{self.trunc + 1}))"

    def __add__(self, other: "QSeries") -> "QSeries":
        if not isinstance(other, QSeries):
            return NotImplemented
        m = min(self.trunc, other.trunc)
        return QSeries(a + b for a, b in zip(self._c[: m + 1], other._c))

    def __sub__(self, other: "QSeries") -> "QSeries":
        if not isinstance(other, QSeries):
            return NotImplemented
        m = min(self.trunc, other.trunc)
        return QSeries(a - b for a, b in zip(self._c[: m + 1], other._c))

    def __neg__(self) -> "QSeries":
        return QSeries(-a for a in self._c)

    def __mul__(self, other):
        if isinstance(other, int):
            return QSeries(other * a for a in self._c)
        if isinstance(other, QSeries):
            return mul(self, other)
        return NotImplemented

    __rmul__ = __mul__

    def map(self, fn: Callable[[int, int], int]) -> "QSeries":
        """Coefficientwise ``c[n] -> fn(n, c[n])``."""
        return QSeries(fn(n, c) for n, c in enumerate(self._c))

    def is_zero(self) -> bool:
        return not any(self._c)


def mul(f: QSeries, g: QSeries) -> QSeries:
    """Cauchy product, truncated at ``min(f.trunc, g.trunc)``."""
    N = min(f.trunc, g.trunc)
    a, b = f.coeffs[: N + 1], g.coeffs[: N + 1]
    nz_a = [(i, x) for i, x in enumerate(a) if x]
    nz_b = [(i, x) for i, x in enumerate(b) if x]
    if len(nz_a) < len(nz_b):
        a, b, nz_a, nz_b = b, a, nz_b, nz_a
    if not nz_b:
        return QSeries.zero(N)
    # int64 is exact when every partial sum is bounded below 2**63
    bound = max(abs(x) for _, x in nz_a) * sum(abs(x) for _, x in nz_b)
    if bound < 2**62:
        av = np.array(a, dtype=np.int64)
        out = np.zeros(N + 1, dtype=np.int64)
        for i, bi in nz_b:
            out[i:] += bi * av[: N + 1 - i]
        return QSeries(out.tolist())
    out = [0] * (N + 1)
    for i, bi in nz_b:
        for j, aj in nz_a:
            if i + j > N:
                break
            out[i + j] += bi * aj
    return QSeries(out)


def _pentagonal(N: int) -> list[int]:
    """Euler's product prod_{n>=1}(1 - q^n) to q^N, via generalized pentagonal numbers."""
    c = [0] * (N + 1)
    c[0] = 1
    k = 1
    while k * (3 * k - 1) // 2 <= N:
        sign = -1 if k % 2 else 1
        c[k * (3 * k - 1) // 2] += sign
        g = k * (3 * k + 1) // 2
        if g <= N:
            c[g] += sign
        k += 1
    return c


def _inverse(c: Sequence[int]) -> list[int]:
    """Power-series inverse of a series with constant term 1."""
    if c[0] != 1:
        raise ValueError("inverse needs constant term 1")
    N = len(c) - 1
    nz = [(j, cj) for j, cj in enumerate(c) if j and cj]
    inv = [0] * (N + 1)
    inv[0] = 1
    for n in range(1, N + 1):
        s = 0
        for j, cj in nz:
            if j > n:
                break
            s += cj * inv[n - j]
        inv[n] = -s
    return inv


def eta_factor(m: int, e: int, trunc: int) -> QSeries:
    """``prod_{n>=1} (1 - q^{m n})^e`` to ``q^trunc``; ``e`` may be negative."""
    if m < 1:
        raise ValueError("m must be positive")
    M = trunc // m
    base = _pentagonal(M)
    if e < 0:
        base = _inverse(base)
    acc = QSeries.one(M)
    factor = QSeries(base)
    for _ in range(abs(e)):
        acc = mul(acc, factor)
    return v_operator(acc, m, trunc)


def build_F(trunc: int) -> QSeries:
    """Weight-2 newform ``q prod (1-q^{3n})^2 (1-q^{9n})^2`` of level 27, to ``q^trunc``.

    Its coefficients are the Frobenius traces of ``Y^2 = X^3 - 432``.
    """
    if trunc < 1:
        raise ValueError("trunc must be >= 1")
    body = mul(eta_factor(3, 2, trunc - 1), eta_factor(9, 2, trunc - 1))
    return QSeries((0,) + body.coeffs)


def v_operator(f: QSeries, m: int, trunc: int | None = None) -> QSeries:
    """``f(q^m)``, cut to ``trunc`` (default ``f.trunc``).

    The dilated series is known through ``q^(m*f.trunc + m - 1)``.
    """
    if m < 1:
        raise ValueError("m must be positive")
    T = f.trunc if trunc is None else trunc
    if T > m * f.trunc + m - 1:
        raise PrecisionError(f"V({m}) of a q^{f.trunc} series is known only to q^{m * f.trunc + m - 1}")
    out = [0] * (T + 1)
    for n in range(0, T // m + 1):
        out[n * m] = f.coeffs[n]
    return QSeries(out)


def twist(f: QSeries, chi: QuadChar) -> QSeries:
    """``sum chi(n) a(n) q^n``."""
    D = chi.conductor
    if D == 1:
        return QSeries(f.coeffs)
    table = chi.table()
    return QSeries(a * table[n % D] if a else 0 for n, a in enumerate(f.coeffs))


def dump_csv(path, columns: dict[str, QSeries]) -> None:
    """Write ``n, <col>...`` rows up to the shortest truncation."""
    names = list(columns)
    N = min(s.trunc for s in columns.values())
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["n", *names])
        for n in range(N + 1):
            w.writerow([n, *(columns[k].coeffs[n] for k in names)])
