import json
import math
import random
from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from cubefermat.arith import is_squarefree
from cubefermat.curve import (
    INFINITY,
    CurvePoint,
    FermatSolution,
    QuadFieldElem,
    _burnside_candidates,
    add_points,
    burnside_search,
    fermat_to_curve,
    point,
    three_division_polynomial,
    torsion_order,
    twist_descent,
    twist_to_fermat,
    verify_solution,
)
from conftest import primes_upto

SQRT2 = QuadFieldElem(0, 1, 2)
D2_SOLUTION = FermatSolution.of(18 + 17 * SQRT2, 18 - 17 * SQRT2, 42, 2)
SQUAREFREE = [d for d in range(-100, 101) if d and is_squarefree(d)]

fracs = st.fractions(max_denominator=50).filter(lambda f: abs(f) < 1000)
elems = st.builds(lambda a, b: QuadFieldElem(a, b, 2), fracs, fracs)


def twist_point_count(d, p):
    # #E_d(F_p) for d Y^2 = X^3 - 432 at a prime p not dividing 6d
    s = 0
    for x in range(p):
        v = d * (x**3 - 432) % p
        if v:
            s += 1 if pow(v, (p - 1) // 2, p) == 1 else -1
    return p + 1 + s


@given(elems, elems, elems)
def test_field_axioms(x, y, z):
    assert (x + y) * z == x * z + y * z
    assert (x * y) * z == x * (y * z)
    assert (x * y).conj() == x.conj() * y.conj()
    assert (x * y).norm() == x.norm() * y.norm()
    if x:
        assert x * x.inverse() == 1
        assert (y / x) * x == y
    assert x**3 == x * x * x


def test_field_elem_basics():
    assert QuadFieldElem(1, 1, 1) == 2
    with pytest.raises(ValueError):
        QuadFieldElem(1, 1, 4)
    with pytest.raises(ValueError):
        SQRT2 + QuadFieldElem(0, 1, 3)
    with pytest.raises(ZeroDivisionError):
        QuadFieldElem(0, 0, 2).inverse()
    assert str(18 + 17 * SQRT2) == "18+17√2"
    assert str(QuadFieldElem(Fraction(1, 2), -1, -3)) == "1/2-√(-3)"
    assert (Fraction(3, 4) + SQRT2).to_list() == [3, 4, 1, 1]


def test_verify_solution_examples():
    assert verify_solution(D2_SOLUTION)
    for d in (2, -1, 5):
        assert not verify_solution(FermatSolution.of(1, 0, 1, d))
    assert not verify_solution(FermatSolution.of(1, 1, 1, 2))


@given(fracs.filter(bool))
def test_verify_solution_scaling_invariant(c):
    assert verify_solution(D2_SOLUTION.scaled(c))
    assert verify_solution(D2_SOLUTION.scaled(c + SQRT2))
    assert not verify_solution(FermatSolution.of(1, 1, 1, 2).scaled(c))


def test_canonical_and_json():
    s = D2_SOLUTION.scaled(Fraction(-5, 7)).canonical()
    assert s == D2_SOLUTION
    doc = json.loads(json.dumps(s.to_json()))
    assert doc == {"d": 2, "x": [18, 1, 17, 1], "y": [18, 1, -17, 1], "z": [42, 1, 0, 1], "k": None}


def test_fermat_to_curve_examples():
    assert fermat_to_curve(FermatSolution.of(1, 0, 1, 2)) == point(12, -36, 2)
    assert fermat_to_curve(FermatSolution.of(0, 1, 1, 2)) == point(12, 36, 2)
    P = fermat_to_curve(D2_SOLUTION)
    assert P == CurvePoint(QuadFieldElem(14, 0, 2), QuadFieldElem(0, -34, 2))
    assert P.on_curve() and 14**3 - 432 == 34**2 * 2
    assert fermat_to_curve(FermatSolution.of(1, -1, 0, 2)) is INFINITY


def test_point_validation():
    with pytest.raises(ValueError):
        point(1, 1, 2)


def test_group_law_examples():
    T = point(12, 36, 2)
    assert T + INFINITY == T and INFINITY + T == T
    assert T + point(12, -36, 2) == INFINITY
    assert T + T == point(12, -36, 2)
    assert 3 * T == INFINITY
    assert add_points(T, -T) is INFINITY


def _sample_points(count, seed=0):
    P = fermat_to_curve(D2_SOLUTION)
    T = point(12, 36, 2)
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        R = rng.randint(-2, 2) * P + rng.randint(0, 2) * T
        out.append(R)
    return out


def test_group_law_associative_and_closed():
    pts = _sample_points(20)
    rng = random.Random(1)
    for _ in range(20):
        A, B, C = rng.sample(pts, 3)
        assert (A + B) + C == A + (B + C)
        assert (A + B).on_curve()
        assert A + B == B + A


def test_twist_descent():
    assert twist_descent(point(12, 36, 2)) is None
    P = fermat_to_curve(D2_SOLUTION)
    a, b = twist_descent(P)
    assert 2 * b * b == a**3 - 432
    Q = P - P.conj()
    assert Q.conj() == -Q
    assert (a, b) == (Fraction(5425, 578), Fraction(276119, 19652))


def test_twist_to_fermat_examples():
    s = twist_to_fermat(12, -36, 1)
    assert (s.x, s.y, s.z) == (1, 0, 1) and not verify_solution(s)
    with pytest.raises(ValueError):
        twist_to_fermat(0, 0, 2)
    with pytest.raises(ValueError):
        twist_to_fermat(1, 1, 2)


def test_round_trip_through_the_twist():
    P = fermat_to_curve(D2_SOLUTION)
    a, b = twist_descent(P)
    s = twist_to_fermat(a, b, 2)
    assert verify_solution(s)
    R = fermat_to_curve(s)
    assert R == CurvePoint(QuadFieldElem(a, 0, 2), QuadFieldElem(0, b, 2))
    # R is anti-invariant, so descending it returns 2R
    a2, b2 = twist_descent(R)
    assert CurvePoint(QuadFieldElem(a2, 0, 2), QuadFieldElem(0, b2, 2)) == 2 * R


@pytest.mark.parametrize("d", [2, 5, 6, 15, 33, -2, -5, -14, -23])
def test_round_trip_from_burnside_hits(d):
    s = burnside_search(d, 30)
    assert s is not None
    P = fermat_to_curve(s)
    assert P.on_curve()
    a, b = twist_descent(P)
    assert d * b * b == a**3 - 432
    assert verify_solution(twist_to_fermat(a, b, d))


def test_torsion_examples():
    assert torsion_order(1) == 3 and torsion_order(-3) == 3 and torsion_order(2) == 1
    assert three_division_polynomial(2) == [0, 12 * -432 * 8, 0, 0, 3]
    with pytest.raises(ValueError):
        torsion_order(12)


def test_torsion_generators_have_order_three():
    for d, (X, Y) in ((1, (12, 36)), (-3, (0, 12))):
        assert d * Y * Y == X**3 - 432
        P = CurvePoint(QuadFieldElem(X, 0, d), QuadFieldElem(0, Y, d) if d != 1 else QuadFieldElem(Y, 0, d))
        assert P.on_curve() and 3 * P == INFINITY and P + P != INFINITY


def test_torsion_trivial_by_reduction():
    primes = primes_upto(400)[2:]
    for d in SQUAREFREE:
        if d in (1, -3):
            assert torsion_order(d) == 3
            continue
        g = 0
        for p in primes:
            if d % p:
                g = math.gcd(g, twist_point_count(d, p))
        assert g == 1, d
        assert torsion_order(d) == 1


def test_burnside_examples():
    s = burnside_search(2, 10)
    assert s is not None and verify_solution(s)
    assert s.k == Fraction(-7, 6)
    assert -3 * (1 + 4 * s.k**3) == 2 * Fraction(17, 6) ** 2
    ratio = D2_SOLUTION.z / s.z
    assert s.scaled(ratio) == D2_SOLUTION
    assert burnside_search(-1, 50) is None
    with pytest.raises(ValueError):
        burnside_search(1, 5)
    with pytest.raises(ValueError):
        burnside_search(2, 0)


def test_burnside_hits_all_verify():
    for d in SQUAREFREE:
        if d == 1:
            continue
        s = burnside_search(d, 12)
        if s is not None:
            assert s.d == d and verify_solution(s)
            assert s == s.canonical()


def test_burnside_order():
    seen = list(_burnside_candidates(7))
    keys = [(max(abs(p), q), p, q) for p, q in seen]
    assert keys == sorted(keys)
    assert len(set(seen)) == len(seen)
    assert all(p and math.gcd(p, q) == 1 and (p, q) != (-1, 1) for p, q in seen)
    assert (-7, 6) in seen


@given(st.integers(-30, 30), st.integers(1, 30))
def test_burnside_parametrization_is_a_solution(p, q):
    assume(p != 0 and (p, q) != (-q, q))
    k = Fraction(p, q)
    m = -3 * (1 + 4 * k**3)
    # adjoin sqrt(m) through its squarefree kernel and check the identity exactly
    num = m.numerator * m.denominator  # m = num / m.denominator^2
    core = num
    for f in range(2, 200):
        while core % (f * f) == 0:
            core //= f * f
    assume(is_squarefree(core) and core != 1)
    r = Fraction(math.isqrt(num // core), m.denominator)
    assert r * r * core == m
    s = QuadFieldElem(0, r, core)
    assert verify_solution(FermatSolution(s - 3, -s - 3, QuadFieldElem(6 * k, 0, core)))
