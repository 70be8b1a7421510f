import itertools

import numpy as np
import pytest

from etf_forge.exceptions import DivisionByZero, FieldMismatch, NotPrime, TooLarge
from etf_forge.finite_field import (Field, PrimePower, field_arith, field_of_order,
                                    frobenius_power, is_irreducible, is_prime,
                                    is_prime_power, make_field, prime_power_decomposition,
                                    smallest_irreducible)
from tests.oracles import coeffs_to_index, poly_mul_mod

PRIME_POWERS_TO_64 = [q for q in range(2, 65) if is_prime_power(q)]


def test_primality_helpers():
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert prime_power_decomposition(64) == (2, 6)
    assert prime_power_decomposition(81) == (3, 4)
    assert prime_power_decomposition(12) is None
    assert PrimePower.from_order(49).q == 49


def test_gf2_and_small_moduli():
    gf2 = make_field(2, 1)
    assert gf2.q == 2 and [e.value for e in gf2.elements()] == [0, 1]
    assert make_field(2, 2).modulus == (1, 1, 1)  # x^2 + x + 1
    assert make_field(3, 2).modulus == (1, 0, 1)  # x^2 + 1
    assert make_field(2, 3).modulus == (1, 0, 1, 1)  # x^3 + x^2 + 1 precedes x^3 + x + 1


def test_modulus_is_smallest_irreducible():
    # exhaustive: no monic polynomial earlier in low-degree-first order is irreducible
    for p, m in [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2), (7, 2)]:
        chosen = smallest_irreducible(p, m)
        assert is_irreducible(list(chosen), p)
        earlier = [tuple(low) + (1,) for low in itertools.product(range(p), repeat=m)
                   if list(low) < list(chosen[:-1])]
        assert not any(is_irreducible(list(c), p) for c in earlier)


def test_gf4_x_times_x():
    gf = make_field(2, 2)
    x = gf.element(2)  # coefficients (0, 1)
    assert (x * x).coeffs == (1, 1)  # x + 1


def test_errors():
    with pytest.raises(NotPrime):
        Field(6)
    with pytest.raises(TooLarge):
        Field(2, 21)
    gf = make_field(3, 2)
    with pytest.raises(DivisionByZero):
        gf.inv(0)
    with pytest.raises(DivisionByZero):
        field_arith(gf.element(1), gf.element(0), "div")
    with pytest.raises(FieldMismatch):
        field_arith(gf.element(1), make_field(3, 1).element(1), "add")
    with pytest.raises(FieldMismatch):
        gf.add(9, 0)


@pytest.mark.parametrize("q", PRIME_POWERS_TO_64)
def test_field_axioms_exhaustive(q):
    gf = field_of_order(q)
    a, b = np.meshgrid(np.arange(q), np.arange(q), indexing="ij")
    add = gf.add_arrays(a, b)
    mul = gf.mul_arrays(a, b)
    assert np.array_equal(add, add.T) and np.array_equal(mul, mul.T)
    assert np.array_equal(add[:, 0], np.arange(q)) and np.array_equal(mul[:, 1], np.arange(q))
    # every row of the addition table is a permutation; likewise nonzero multiplication
    assert all(sorted(row) == list(range(q)) for row in add)
    assert all(sorted(row[1:]) == list(range(1, q)) for row in mul[1:])
    for x in range(q):
        assert gf.add(x, gf.neg(x)) == 0
        if x:
            assert gf.mul(x, gf.inv(x)) == 1
    # associativity and distributivity over all triples
    for x in range(q):
        lhs_mul = mul[mul[x][:, None], np.arange(q)[None, :]]   # (x*y)*z
        rhs_mul = mul[x][mul]                                    # x*(y*z)
        assert np.array_equal(lhs_mul, rhs_mul)
        lhs_add = add[add[x][:, None], np.arange(q)[None, :]]
        rhs_add = add[x][add]
        assert np.array_equal(lhs_add, rhs_add)
        lhs_dist = mul[x][add]                                   # x*(y+z)
        rhs_dist = add[mul[x][:, None], mul[x][None, :]]         # x*y + x*z
        assert np.array_equal(lhs_dist, rhs_dist)


@pytest.mark.parametrize("q", PRIME_POWERS_TO_64)
def test_multiplication_matches_polynomial_oracle(q):
    gf = field_of_order(q)
    for a in range(q):
        for b in range(q):
            expect = poly_mul_mod(list(gf.coefficients(a)), list(gf.coefficients(b)),
                                  list(gf.modulus), gf.p)
            assert gf.mul(a, b) == coeffs_to_index(expect, gf.p)


@pytest.mark.parametrize("q", PRIME_POWERS_TO_64)
def test_cyclic_multiplicative_group(q):
    gf = field_of_order(q)
    assert gf.order_of(gf.primitive) == q - 1


def test_frobenius_examples():
    gf4 = make_field(2, 2)
    for a in gf4.elements()[1:]:
        assert frobenius_power(a, 0).value == 1
        assert frobenius_power(a, 3).value == 1
    gf9 = make_field(3, 2)
    subfield = {x for x in range(9) if gf9.power(x, 3) == x}
    assert subfield == {0, 1, 2}
    for a in gf9.elements():
        assert frobenius_power(a, 4).value in subfield
    assert sum(1 for a in gf9.elements()[1:] if (a * a.inverse()).value == 1) == 8


def test_prime_field_additive_identity():
    gf = make_field(7, 1)
    zero = gf.element(0)
    assert all((a + zero) == a for a in gf.elements())


def test_quadratic_character_counts():
    for q in (5, 7, 9, 11, 13, 25, 27):
        gf = field_of_order(q)
        chars = [gf.quadratic_character(x) for x in range(1, q)]
        assert chars.count(1) == chars.count(-1) == (q - 1) // 2
