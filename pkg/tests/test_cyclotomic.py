import random
from fractions import Fraction

import pytest

from quasinv.cyclotomic import (
    CycNumber,
    conj,
    cyclotomic_polynomial,
    inv,
    multiplicative_order,
    promote,
    root_of_unity,
)


def test_cyclotomic_polynomials():
    assert cyclotomic_polynomial(1) == [-1, 1]
    assert cyclotomic_polynomial(2) == [1, 1]
    assert cyclotomic_polynomial(3) == [1, 1, 1]
    assert cyclotomic_polynomial(4) == [1, 0, 1]
    assert cyclotomic_polynomial(6) == [1, -1, 1]
    assert cyclotomic_polynomial(12) == [1, 0, -1, 0, 1]


def test_root_of_unity_identities():
    assert root_of_unity(0, 5) == 1
    assert root_of_unity(2, 4) == -1
    z3 = root_of_unity(1, 3)
    assert z3 + root_of_unity(2, 3) == -1
    assert z3 * root_of_unity(2, 3) == 1


@pytest.mark.parametrize("n", range(1, 13))
def test_root_orders(n):
    from math import gcd

    for j in range(n):
        z = promote(root_of_unity(j, n), n)
        assert multiplicative_order(z) == n // gcd(j, n)
        # unit circle: z * conj(z) = 1
        assert z * conj(z) == 1


def test_conjugation():
    z3 = root_of_unity(1, 3)
    assert conj(z3) == root_of_unity(2, 3)
    assert conj(Fraction(2, 3)) == Fraction(2, 3)
    z4 = root_of_unity(1, 4)
    assert conj(z4) == -z4
    # involution
    z = 3 * z3 + Fraction(1, 2)
    assert conj(conj(z)) == z


def test_field_inverse_examples():
    z4 = root_of_unity(1, 4)
    w = 1 + z4
    winv = inv(w)
    assert w * winv == 1
    assert winv == (1 - z4) * Fraction(1, 2)
    z6 = root_of_unity(1, 6)
    assert z6 + conj(z6) == 1  # 2 cos(pi/3)
    with pytest.raises(ZeroDivisionError):
        inv(z4 - z4)


def _random_cyc(rng, n):
    return CycNumber.from_powers(
        n, {rng.randrange(n): Fraction(rng.randint(-4, 4), rng.randint(1, 3))
            for _ in range(3)}
    )


def test_field_axioms_random():
    rng = random.Random(7)
    for n in (3, 4, 5, 6, 8, 12):
        for _ in range(20):
            a, b, c = (_random_cyc(rng, n) for _ in range(3))
            assert (a + b) * c == a * c + b * c
            assert (a * b) * c == a * (b * c)
            assert conj(a * b) == conj(a) * conj(b)
            assert conj(a + b) == conj(a) + conj(b)
            if a:
                assert a * inv(a) == 1


def test_conductor_unification_coherent():
    # arithmetic across conductors M | N agrees with embedding into Q(zeta_N)
    z3 = promote(root_of_unity(1, 3), 3)
    z6 = promote(root_of_unity(1, 6), 6)
    assert z6 * z6 == z3
    assert z3.lift(6) == z6 * z6
    assert z6 - z3.lift(6) * z6 == z6 * (1 - z3)
    # rationals embed at any conductor
    assert promote(Fraction(5, 2), 12) == Fraction(5, 2)


def test_json_round_trip():
    z = promote(root_of_unity(1, 8), 8) * Fraction(3, 7) + 2
    data = z.to_json()
    assert data["conductor"] == 8
    assert CycNumber.from_json(data) == z
