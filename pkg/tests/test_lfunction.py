import math
import random

import pytest

from cubefermat.arith import is_squarefree, squarefree_part
from cubefermat.lfunction import (
    TAIL_TARGET,
    central_value,
    conductor,
    lambda_coefficients,
    reduce_twist,
    root_number,
    tail_bound,
    twisted_an,
)

TABLE_NEG_N = {1: 1.52995, 34: 1.04953, 19: 0.70199, 13: 0.42434, 22: 1.30474, 7: 1.15653, 10: 1.93525, 46: 0.90231}
TABLE_NEG_3N = {1: 0.58887, 34: 1.81785, 19: 0.60794, 13: 1.46993, 22: 2.25989, 7: 1.00159, 10: 3.35196, 46: 1.56286}
SQUAREFREE = [d for d in range(-200, 201) if d and is_squarefree(d)]


def split_sum(d, A):
    """sum a_n/n (exp(-2 pi n A / sqrt N) + w exp(-2 pi n / (A sqrt N))): equals L(E_d, 1) for any A > 0."""
    dr = reduce_twist(d)
    N = conductor(dr)
    w = root_number(dr)
    M = int(40 * math.sqrt(N) * max(A, 1 / A))
    an = twisted_an(dr, M)
    s = 0.0
    for n in range(1, M + 1):
        if an[n]:
            s += an[n] / n * (math.exp(-2 * math.pi * n * A / math.sqrt(N)) + w * math.exp(-2 * math.pi * n / (A * math.sqrt(N))))
    return s


def legendre3(D):
    return [0, 1, -1][D % 3]


def test_reduce_twist():
    assert reduce_twist(2) == 2 and reduce_twist(3) == -1 and reduce_twist(-6) == 2
    for d in SQUAREFREE:
        r = reduce_twist(d)
        assert r % 3 and is_squarefree(r)
    with pytest.raises(ValueError):
        reduce_twist(12)


def test_conductor_examples():
    assert conductor(1) == 27 and conductor(-1) == 432 and conductor(2) == 1728
    with pytest.raises(ValueError):
        conductor(3)


def test_root_number_examples():
    assert root_number(2) == -1 and root_number(-1) == 1 and root_number(1) == 1
    with pytest.raises(ValueError):
        root_number(-3)


def test_root_number_from_character_values():
    # chi_D(-27) = sign(D) * chi_D(3), and chi_D(3) is (D/3) for 3 not dividing D
    for d in SQUAREFREE:
        if d % 3 == 0:
            continue
        D = d if d % 4 == 1 else 4 * d
        assert root_number(d) == (1 if D > 0 else -1) * legendre3(D)


def test_twisted_coefficients():
    lam = lambda_coefficients(2000)
    assert twisted_an(1, 2000) == [0] + list(lam[1:2001])
    assert twisted_an(-1, 10)[2] == 0
    for d in (-1, 2, -5, 7, 10):
        a = twisted_an(d, 2000)
        for m in range(2, 45):
            for n in range(m + 1, 2000 // m + 1):
                if math.gcd(m, n) == 1:
                    assert a[m * n] == a[m] * a[n]


def test_lambda_cache_grows():
    lam = lambda_coefficients(5000)
    assert len(lam) > 5000 and lam[13] == 5


def test_tail_bound_decreasing():
    assert tail_bound(432, 100) > tail_bound(432, 200) > 0


@pytest.mark.parametrize("n, value", sorted(TABLE_NEG_N.items()))
def test_table_values_minus_n(n, value):
    rep = central_value(-n)
    assert abs(rep.value - value) < 1e-4
    assert rep.root_number == 1 and rep.tail_bound < TAIL_TARGET


@pytest.mark.parametrize("n, value", sorted(TABLE_NEG_3N.items()))
def test_table_values_minus_3n(n, value):
    rep = central_value(-3 * n)
    assert abs(rep.value - value) < 1e-4
    assert rep.d_reduced == n


def test_report_fields_and_str():
    rep = central_value(-1)
    assert rep.to_json()["conductor"] == 432
    assert "1.529954" in str(rep)
    zero = central_value(2)
    assert zero.root_number == -1 and zero.value == 0.0


@pytest.mark.parametrize("d", [1, -1, -34, 5, -19, 10, 11, -47])
def test_value_independent_of_split_point(d):
    # a wrong root number or coefficient would make the sum depend on A
    ref = central_value(d).value
    for A in (0.7, 1.4):
        assert abs(split_sum(d, A) - ref) < 1e-7


def test_twist_symmetry_sample():
    rng = random.Random(7)
    for d in rng.sample([d for d in SQUAREFREE if abs(d) <= 150], 30):
        partner = squarefree_part(-3 * d)
        assert abs(central_value(d).value - central_value(partner).value) < 1e-5


def test_values_nonnegative_with_small_tail():
    for d in SQUAREFREE:
        rep = central_value(d)
        assert rep.value >= -1e-6
        assert rep.tail_bound < TAIL_TARGET
