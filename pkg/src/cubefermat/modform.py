"""Hecke operators, the Shimura lift and Sturm bounds on truncated q-expansions."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .arith import QuadChar, factor, is_prime, is_squarefree, kronecker
from .qseries import PrecisionError, QSeries


@dataclass(frozen=True)
class FormContext:
    """Weight, level and nebentypus of the space a q-expansion is taken in.

    ``weight_twice`` is 4 for weight 2 and 3 for weight 3/2.  For weight 3/2
    ``level`` is the full level ``4N``.
    """

    weight_twice: int
    level: int
    character: QuadChar = QuadChar(1)

    def __post_init__(self):
        if self.weight_twice not in (3, 4):
            raise ValueError("only weights 3/2 and 2 are supported")
        if self.level < 1:
            raise ValueError("level must be positive")

    @property
    def weight(self) -> Fraction:
        return Fraction(self.weight_twice, 2)

    @property
    def modulus(self) -> int:
        # the nebentypus is a character mod 4*level in half-integral weight
        return self.level if self.weight_twice % 2 == 0 else 4 * self.level

    def char(self, n: int) -> int:
        """The nebentypus, extended by 0 on integers sharing a prime with the modulus."""
        if math.gcd(n, self.modulus) != 1:
            return 0
        return self.character(n)


WEIGHT2_27 = FormContext(4, 27)
WEIGHT2_54 = FormContext(4, 54)
HALF_108_TRIVIAL = FormContext(3, 108, QuadChar(1))
HALF_108_CHI3 = FormContext(3, 108, QuadChar(12))


def hecke_tp_weight2(f: QSeries, ctx: FormContext, p: int) -> QSeries:
    """``f | T_p`` in weight 2: ``a(pn) + chi(p) p a(n/p)``."""
    if ctx.weight_twice != 4:
        raise ValueError("T_p here is the weight-2 operator")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    M = f.trunc // p
    if M < 1:
        raise PrecisionError(f"T_{p} of a q^{f.trunc} series leaves no coefficients")
    a = f.coeffs
    cp = ctx.char(p) * p
    return QSeries(a[p * n] + (cp * a[n // p] if n % p == 0 else 0) for n in range(M + 1))


def hecke_tp2_half(f: QSeries, ctx: FormContext, p: int) -> QSeries:
    """``f | T_{p^2}`` in weight 3/2.

    ``a(p^2 n) + chi(p) (-n/p) a(n) + chi(p)^2 p a(n/p^2)``.
    """
    if ctx.weight_twice != 3:
        raise ValueError("T_{p^2} here is the weight-3/2 operator")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if (2 * ctx.level) % p == 0:
        raise ValueError(f"p = {p} divides 2 * level = {2 * ctx.level}")
    p2 = p * p
    M = f.trunc // p2
    if M < 1:
        raise PrecisionError(f"T_{p2} of a q^{f.trunc} series leaves no coefficients")
    a = f.coeffs
    cp = ctx.char(p)
    out = []
    for n in range(M + 1):
        c = a[p2 * n] + cp * kronecker(-n, p) * a[n]
        if n % p2 == 0:
            c += cp * cp * p * a[n // p2]
        out.append(c)
    return QSeries(out)


def _divisors(n: int) -> list[int]:
    divs = [1]
    for p, e in factor(n):
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def shimura_lift(f: QSeries, t: int, ctx: FormContext) -> QSeries:
    """Shimura lift ``S_t`` of a weight-3/2 cusp form to weight 2.

    Coefficient ``n`` is ``sum_{d | n} chi(d) (-t/d) a(t (n/d)^2)``; the
    constant term is set to 0.
    """
    if ctx.weight_twice != 3:
        raise ValueError("the lift is implemented for weight 3/2")
    if t < 1 or not is_squarefree(t):
        raise ValueError("t must be a squarefree positive integer")
    M = math.isqrt(f.trunc // t)
    if M < 1:
        raise PrecisionError(f"S_{t} of a q^{f.trunc} series leaves no coefficients")
    a = f.coeffs
    out = [0]
    for n in range(1, M + 1):
        s = 0
        for d in _divisors(n):
            w = ctx.char(d)
            if w:
                s += w * kronecker(-t, d) * a[t * (n // d) ** 2]
        out.append(s)
    return QSeries(out)


def sturm_bound(ctx: FormContext) -> int:
    """``ceil(k/12 * [SL2(Z) : Gamma0(N)])``."""
    index = Fraction(ctx.level)
    for p, _ in factor(ctx.level):
        index *= Fraction(p + 1, p)
    return math.ceil(ctx.weight / 12 * index)


def equal_upto(f: QSeries, g: QSeries, bound: int) -> bool:
    """True iff ``f`` and ``g`` agree on every coefficient ``q^0 .. q^bound``."""
    if f.trunc < bound or g.trunc < bound:
        raise PrecisionError(
            f"comparison to q^{bound} needs both series known that far (have {f.trunc}, {g.trunc})"
        )
    return f.coeffs[: bound + 1] == g.coeffs[: bound + 1]
