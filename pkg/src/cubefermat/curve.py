"""Exact arithmetic on ``E: Y^2 = X^3 - 432`` over Q(sqrt d) and on its twists.

Points of the Fermat cubic ``x^3 + y^3 = z^3`` map to ``E`` by
``X = 12z/(x+y)``, ``Y = 36(y-x)/(x+y)``.  A point ``P`` over Q(sqrt d) gives
``P - sigma(P) = (a, b sqrt d)``, i.e. a rational point ``(a, b)`` on the twist
``E_d: d Y^2 = X^3 - 432``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .arith import icbrt, is_square, is_squarefree

CURVE_B = -432


@dataclass(frozen=True)
class QuadFieldElem:
    """``a + b sqrt(d)`` with rational ``a, b`` and squarefree ``d``.

    ``d = 1`` is accepted as the degenerate field Q; ``b`` is then folded into ``a``.
    """

    a: Fraction
    b: Fraction = Fraction(0)
    d: int = -1

    def __post_init__(self):
        if not is_squarefree(self.d):
            raise ValueError(f"d = {self.d} is not squarefree")
        a, b = Fraction(self.a), Fraction(self.b)
        if self.d == 1:
            a, b = a + b, Fraction(0)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    def _coerce(self, other) -> "QuadFieldElem":
        if isinstance(other, QuadFieldElem):
            if other.d != self.d:
                raise ValueError(f"mixing Q(sqrt {self.d}) and Q(sqrt {other.d})")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadFieldElem(Fraction(other), Fraction(0), self.d)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadFieldElem(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadFieldElem(-self.a, -self.b, self.d)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadFieldElem(self.a - o.a, self.b - o.b, self.d)

    def __rsub__(self, other):
        return -self + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadFieldElem(self.a * o.a + self.d * self.b * o.b, self.a * o.b + self.b * o.a, self.d)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        return self.a * self.a - self.d * self.b * self.b

    def conj(self) -> "QuadFieldElem":
        return QuadFieldElem(self.a, -self.b, self.d)

    def inverse(self) -> "QuadFieldElem":
        N = self.norm()
        if N == 0:
            raise ZeroDivisionError("inverse of zero in Q(sqrt d)")
        return QuadFieldElem(self.a / N, -self.b / N, self.d)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        r = QuadFieldElem(Fraction(1), Fraction(0), self.d)
        base = self
        while k:
            if k & 1:
                r = r * base
            base = base * base
            k >>= 1
        return r

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        if isinstance(other, QuadFieldElem):
            return self.d == other.d and self.a == other.a and self.b == other.b
        return NotImplemented

    def __hash__(self):
        return hash((self.a, self.b, self.d))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        root = f"√{self.d}" if self.d > 0 else f"√({self.d})"
        b = "" if abs(self.b) == 1 else str(abs(self.b))
        if self.a == 0:
            return f"{'-' if self.b < 0 else ''}{b}{root}"
        return f"{self.a}{'-' if self.b < 0 else '+'}{b}{root}"

    def to_list(self) -> list[int]:
        return [self.a.numerator, self.a.denominator, self.b.numerator, self.b.denominator]


def _elem(v, d: int) -> QuadFieldElem:
    return v if isinstance(v, QuadFieldElem) else QuadFieldElem(Fraction(v), Fraction(0), d)


@dataclass(frozen=True)
class FermatSolution:
    """A triple ``(x, y, z)`` over Q(sqrt d); ``k`` records a Burnside parameter when known."""

    x: QuadFieldElem
    y: QuadFieldElem
    z: QuadFieldElem
    k: Optional[Fraction] = field(default=None, compare=False)

    @classmethod
    def of(cls, x, y, z, d: int, k: Optional[Fraction] = None) -> "FermatSolution":
        return cls(_elem(x, d), _elem(y, d), _elem(z, d), k)

    @property
    def d(self) -> int:
        return self.x.d

    @property
    def nontrivial(self) -> bool:
        return bool(self.x) and bool(self.y) and bool(self.z)

    def scaled(self, c) -> "FermatSolution":
        return FermatSolution(self.x * c, self.y * c, self.z * c, self.k)

    def canonical(self) -> "FermatSolution":
        """Scale into Z[sqrt d] with content 1, rational ``z`` made positive,
        and ``x`` taken as the entry with the larger sqrt(d) part."""
        parts = [c for e in (self.x, self.y, self.z) for c in (e.a, e.b)]
        den = math.lcm(*(c.denominator for c in parts))
        content = math.gcd(*(int(c * den) for c in parts)) or 1
        s = self.scaled(Fraction(den, content))
        lead = s.z if s.z else (s.x if s.x else s.y)
        if (lead.a if lead.is_rational else lead.b) < 0:
            s = s.scaled(-1)
        if s.x.b < s.y.b:
            s = FermatSolution(s.y, s.x, s.z, s.k)
        return s

    def to_json(self) -> dict:
        out = {"d": self.d, "x": self.x.to_list(), "y": self.y.to_list(), "z": self.z.to_list()}
        out["k"] = None if self.k is None else [self.k.numerator, self.k.denominator]
        return out

    def __str__(self):
        return f"({self.x}, {self.y}, {self.z})"


def verify_solution(s: FermatSolution) -> bool:
    """Exact check of ``x^3 + y^3 = z^3`` with ``xyz != 0``."""
    return s.nontrivial and s.x**3 + s.y**3 == s.z**3


@dataclass(frozen=True)
class CurvePoint:
    """Point of ``Y^2 = X^3 - 432`` over Q(sqrt d); ``X is None`` marks infinity."""

    X: Optional[QuadFieldElem] = None
    Y: Optional[QuadFieldElem] = None

    @property
    def is_infinity(self) -> bool:
        return self.X is None

    def on_curve(self) -> bool:
        return self.is_infinity or self.Y * self.Y == self.X**3 + CURVE_B

    def __neg__(self):
        return self if self.is_infinity else CurvePoint(self.X, -self.Y)

    def conj(self) -> "CurvePoint":
        return self if self.is_infinity else CurvePoint(self.X.conj(), self.Y.conj())

    def __add__(self, other: "CurvePoint") -> "CurvePoint":
        return add_points(self, other)

    def __sub__(self, other: "CurvePoint") -> "CurvePoint":
        return add_points(self, -other)

    def __mul__(self, k: int) -> "CurvePoint":
        if k < 0:
            return (-self) * (-k)
        r, base = INFINITY, self
        while k:
            if k & 1:
                r = r + base
            base = base + base
            k >>= 1
        return r

    __rmul__ = __mul__

    def __str__(self):
        return "O" if self.is_infinity else f"({self.X}, {self.Y})"


INFINITY = CurvePoint()


def point(X, Y, d: int) -> CurvePoint:
    P = CurvePoint(_elem(X, d), _elem(Y, d))
    if not P.on_curve():
        raise ValueError(f"{P} is not on Y^2 = X^3 - 432")
    return P


def add_points(P: CurvePoint, Q: CurvePoint) -> CurvePoint:
    """Chord-and-tangent addition on ``Y^2 = X^3 - 432``."""
    if P.is_infinity:
        return Q
    if Q.is_infinity:
        return P
    if P.X == Q.X:
        if P.Y == -Q.Y:
            return INFINITY
        slope = 3 * P.X * P.X / (2 * P.Y)
    else:
        slope = (Q.Y - P.Y) / (Q.X - P.X)
    X3 = slope * slope - P.X - Q.X
    return CurvePoint(X3, slope * (P.X - X3) - P.Y)


def fermat_to_curve(s: FermatSolution) -> CurvePoint:
    if not s.x + s.y:
        return INFINITY
    u = s.x + s.y
    return CurvePoint(12 * s.z / u, 36 * (s.y - s.x) / u)


def twist_descent(P: CurvePoint) -> Optional[tuple[Fraction, Fraction]]:
    """``P - sigma(P)`` as a rational point ``(a, b)`` of ``d Y^2 = X^3 - 432``,
    or None when it is the point at infinity."""
    Q = P - P.conj()
    if Q.is_infinity:
        return None
    if Q.conj() != -Q:
        raise AssertionError("P - sigma(P) is not sigma-antisymmetric")
    a, b = Q.X.a, Q.Y.b
    d = Q.X.d
    if d == 1:
        b = Q.Y.a
    if d * b * b != a**3 + CURVE_B:
        raise AssertionError("descended point is off the twist")
    return a, b


def twist_to_fermat(a, b, d: int) -> FermatSolution:
    """Fermat triple with ``z = 1`` attached to the point ``(a, b)`` of ``E_d``.

    Inverse of :func:`fermat_to_curve` on ``(a, b sqrt d)``.
    """
    a, b = Fraction(a), Fraction(b)
    if a == 0:
        raise ValueError("a = 0 has no Fermat preimage with z = 1")
    if d * b * b != a**3 + CURVE_B:
        raise ValueError(f"({a}, {b}) is not on {d} Y^2 = X^3 - 432")
    Y = QuadFieldElem(Fraction(0), b, d)
    u = 12 / a  # x + y
    w = Y / (3 * a)  # y - x
    return FermatSolution((u - w) / 2, (u + w) / 2, QuadFieldElem(Fraction(1), Fraction(0), d))


def three_division_polynomial(d: int) -> list[int]:
    """``psi_3`` of ``y^2 = x^3 - 432 d^3`` as coefficients ``[c0, c1, c2, c3, c4]``."""
    B = -432 * d**3
    return [0, 12 * B, 0, 0, 3]


def _rational_roots(coeffs: list[int]) -> list[int]:
    """Rational roots of ``c1 x + c4 x^4``, the shape psi_3 takes when a = 0."""
    c0, c1, c2, c3, c4 = coeffs
    if c0 or c2 or c3 or not c4:
        raise ValueError("expected c1 x + c4 x^4")
    roots = [0]
    # x^3 = -c1/c4 is monic after scaling, so any rational root is an integer
    if c1 and -c1 % c4 == 0:
        r = icbrt(-c1 // c4)
        if r is not None:
            roots.append(r)
    return roots


def torsion_order(d: int) -> int:
    """Order of ``E_d(Q)_tors``: 3 when a rational 3-torsion point exists, else 1.

    Works on the integral model ``y^2 = x^3 - 432 d^3``.
    """
    if not is_squarefree(d):
        raise ValueError(f"d = {d} is not squarefree")
    B = -432 * d**3
    for x in _rational_roots(three_division_polynomial(d)):
        if is_square(x**3 + B):
            return 3
    return 1


def _burnside_candidates(H: int):
    for h in range(1, H + 1):
        cand = set()
        for q in range(1, h + 1):
            for p in (h, -h):
                cand.add((p, q))
        for p in range(-h + 1, h):
            cand.add((p, h))
        for p, q in sorted(cand):
            if p == 0 or math.gcd(p, q) != 1 or (p == -1 and q == 1):
                continue
            yield p, q


def burnside_search(d: int, H: int) -> Optional[FermatSolution]:
    """First Fermat solution in Q(sqrt d) from ``x, y = -3 +- sqrt(-3(1+4k^3))``,
    ``z = 6k``, over ``k = p/q`` with ``max(|p|, q) <= H``.

    Heights are tried in increasing order, ``(p, q)`` lexicographically within
    a height.  Returns the canonical representative, or None.
    """
    if not is_squarefree(d) or d == 1:
        raise ValueError(f"d = {d} must be squarefree and not 1")
    if H < 1:
        raise ValueError("height bound must be >= 1")
    for p, q in _burnside_candidates(H):
        # -3(1+4k^3) = d r^2  <=>  -3 d q (q^3 + 4 p^3) is a square (= (r d q^2)^2)
        m = -3 * d * q * (q**3 + 4 * p**3)
        if not is_square(m):
            continue
        k = Fraction(p, q)
        r = Fraction(math.isqrt(m), abs(d) * q * q)
        s = QuadFieldElem(Fraction(0), r, d)
        sol = FermatSolution(s - 3, -s - 3, QuadFieldElem(6 * k, Fraction(0), d), k).canonical()
        if not verify_solution(sol):
            raise AssertionError(f"Burnside parameter k = {k} gave a non-solution")
        return sol
    return None
