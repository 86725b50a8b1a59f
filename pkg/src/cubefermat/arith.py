"""Integer arithmetic: factorization, squarefree parts, Kronecker symbols and
quadratic characters."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

# Exact rationals are the stdlib Fraction (always reduced, positive denominator).
Rational = Fraction

# Deterministic Miller-Rabin witnesses for n < 3.3e24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)
_TRIAL_PRIMES = tuple(p for p in range(2, 1000) if all(p % q for q in range(2, math.isqrt(p) + 1)))


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int) -> int:
    if n % 2 == 0:
        return 2
    c = 1
    while True:
        x = y = 2
        g = 1
        while g == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            g = math.gcd(abs(x - y), n)
        if g != n:
            return g
        c += 1


def factor(n: int) -> list[tuple[int, int]]:
    """Prime factorization of ``1 <= n <= 2**63`` as ``[(p, e), ...]``.

    Trial division by primes below 1000, then Miller-Rabin on the cofactor
    and Pollard rho to split it when composite.
    """
    if n < 1 or n > 2**63:
        raise ValueError(f"factor expects 1 <= n <= 2**63, got {n}")
    exps: dict[int, int] = {}
    for p in _TRIAL_PRIMES:
        if p * p > n:
            break
        while n % p == 0:
            n //= p
            exps[p] = exps.get(p, 0) + 1
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if is_prime(m):
            exps[m] = exps.get(m, 0) + 1
            continue
        f = _pollard_rho(m)
        stack += [f, m // f]
    return sorted(exps.items())


def squarefree_part(n: int) -> int:
    """The squarefree ``s`` with ``n = s * m**2``, keeping the sign of ``n``."""
    if n == 0:
        raise ValueError("squarefree_part of 0 is undefined")
    s = 1
    for p, e in factor(abs(n)):
        if e % 2:
            s *= p
    return s if n > 0 else -s


def is_squarefree(n: int) -> bool:
    return n != 0 and all(e == 1 for _, e in factor(abs(n)))


def fundamental_discriminant(d: int) -> int:
    if not is_squarefree(d):
        raise ValueError(f"{d} is not a squarefree nonzero integer")
    return d if d % 4 == 1 else 4 * d


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a/n), defined for all integers a and n."""
    if n == 0:
        return 1 if abs(a) == 1 else 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    if v:
        if a % 2 == 0:
            return 0
        if v % 2 and a % 8 in (3, 5):
            result = -result
    # Jacobi symbol (a/n) for odd n > 0
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def chi(d: int, n: int) -> int:
    """Primitive quadratic character attached to Q(sqrt(d)), evaluated at n."""
    return kronecker(fundamental_discriminant(d), n)


@dataclass(frozen=True)
class QuadChar:
    """Primitive quadratic Dirichlet character of fundamental discriminant ``disc``.

    ``disc = 1`` is the principal character; ``disc = -3`` is the nontrivial
    character mod 3.
    """

    disc: int

    def __post_init__(self):
        D = self.disc
        if D == 1:
            return
        if D % 4 == 1 and is_squarefree(D):
            return
        if D % 4 == 0 and D // 4 % 4 in (2, 3) and is_squarefree(D // 4):
            return
        raise ValueError(f"{D} is not a fundamental discriminant")

    @classmethod
    def of_field(cls, d: int) -> "QuadChar":
        return cls(fundamental_discriminant(d))

    @property
    def conductor(self) -> int:
        return abs(self.disc)

    def __call__(self, n: int) -> int:
        return kronecker(self.disc, n)

    def table(self) -> list[int]:
        """Values on one period ``0..conductor-1``."""
        return [kronecker(self.disc, r) for r in range(self.conductor)]


def icbrt(n: int) -> int | None:
    """Exact integer cube root, or None when ``n`` is not a perfect cube."""
    if n < 0:
        r = icbrt(-n)
        return None if r is None else -r
    r = round(n ** (1 / 3)) if n < 2**60 else _icbrt_newton(n)
    for c in (r - 1, r, r + 1):
        if c >= 0 and c**3 == n:
            return c
    return None


def _icbrt_newton(n: int) -> int:
    x = 1 << ((n.bit_length() + 2) // 3)
    while True:
        y = (2 * x + n // (x * x)) // 3
        if y >= x:
            return x
        x = y


def is_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n
