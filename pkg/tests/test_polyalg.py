"""Exactness and canonical-form tests for the sparse polynomial core."""

import random
from fractions import Fraction

import pytest

from ballpde.polyalg import (
    Polynomial,
    exponents_of_degree,
    exponents_up_to_degree,
    gradient,
    normsq,
    one_minus_normsq,
    one_minus_normsq_times,
)


def _var(d, i):
    return Polynomial.variable(d, i)


def _rand_poly(rng, d, degree):
    terms = {}
    for alpha in exponents_up_to_degree(d, degree):
        if rng.random() < 0.5:
            num = rng.randint(-9, 9)
            if num:
                terms[alpha] = Fraction(num, rng.randint(1, 9))
    return Polynomial(d, terms)


def _partial_oracle(p, i):
    """Independent derivative: expand p(x + h e_i) in an extra variable h
    and read off the linear coefficient."""
    d = p.dimension
    lifted = Polynomial.zero(d + 1)
    for alpha, c in p.terms.items():
        term = Polynomial.constant(d + 1, c)
        for axis, power in enumerate(alpha, start=1):
            base = Polynomial.variable(d + 1, axis)
            if axis == i:
                base = base + Polynomial.variable(d + 1, d + 1)
            term = term * base ** power
        lifted = lifted + term
    linear = {
        alpha[:-1]: c for alpha, c in lifted.terms.items() if alpha[-1] == 1
    }
    return Polynomial(d, linear)


class TestArithmetic:
    def test_additive_inverse_gives_canonical_zero(self):
        x1 = _var(2, 1)
        total = x1 + (-x1)
        assert not total
        assert total.terms == {}

    def test_add_distinct_monomials(self):
        p = _var(2, 1) ** 2 + _var(2, 2) ** 2
        assert p.coefficient((2, 0)) == 1
        assert p.coefficient((0, 2)) == 1

    def test_add_identity(self):
        p = _rand_poly(random.Random(1), 3, 4)
        assert p + Polynomial.zero(3) == p

    def test_mul_square_of_radial_factor(self):
        d = 2
        expected = Polynomial(
            d, {(0, 0): 1, (2, 0): -2, (0, 2): -2, (4, 0): 1, (2, 2): 2, (0, 4): 1}
        )
        assert one_minus_normsq(d) * one_minus_normsq(d) == expected

    def test_mul_identity(self):
        p = _rand_poly(random.Random(2), 2, 5)
        assert p * Polynomial.constant(2, 1) == p

    def test_difference_of_squares(self):
        x1, x2 = _var(2, 1), _var(2, 2)
        assert (x1 - x2) * (x1 + x2) == x1 ** 2 - x2 ** 2

    def test_dimension_mismatch_rejected(self):
        with pytest.raises(ValueError, match="dimension mismatch"):
            _var(2, 1) + _var(3, 1)
        with pytest.raises(ValueError, match="dimension mismatch"):
            _var(2, 1) * _var(3, 1)

    def test_scalar_multiplication(self):
        p = _var(2, 1)
        assert 3 * p == p.scale(3)
        assert Fraction(1, 2) * p == p * Fraction(1, 2)
        assert p.scale(0) == Polynomial.zero(2)

    @pytest.mark.parametrize("seed", range(5))
    def test_add_then_subtract_roundtrips(self, seed):
        rng = random.Random(seed)
        p = _rand_poly(rng, 2, 5)
        q = _rand_poly(rng, 2, 5)
        assert (p + q) - q == p

    @pytest.mark.parametrize("seed", range(5))
    def test_product_degree_adds(self, seed):
        rng = random.Random(100 + seed)
        p = _rand_poly(rng, 2, 4)
        q = _rand_poly(rng, 2, 3)
        if p and q:
            assert (p * q).degree == p.degree + q.degree

    def test_no_zero_coefficients_survive_operations(self):
        rng = random.Random(3)
        for _ in range(25):
            p = _rand_poly(rng, 2, 4)
            q = _rand_poly(rng, 2, 4)
            for result in (p + q, p - q, p * q, p.partial(1), p.laplacian()):
                assert all(c != 0 for c in result.terms.values())
                assert all(len(a) == 2 for a in result.terms)


class TestDerivatives:
    def test_partial_of_mixed_monomial(self):
        p = Polynomial.monomial((2, 1))  # x1^2 x2
        assert p.partial(1) == Polynomial(2, {(1, 1): 2})

    def test_partial_of_independent_variable(self):
        assert not _var(2, 1).partial(2)

    def test_partial_of_radial_factor_matches_shift_oracle(self):
        p = one_minus_normsq(2)
        assert p.partial(1) == Polynomial(2, {(1, 0): -2})
        assert p.partial(1) == _partial_oracle(p, 1)

    @pytest.mark.parametrize("seed", range(8))
    def test_partial_matches_shift_oracle_randomly(self, seed):
        rng = random.Random(seed)
        d = rng.choice([1, 2, 3])
        p = _rand_poly(rng, d, 4)
        i = rng.randint(1, d)
        assert p.partial(i) == _partial_oracle(p, i)

    def test_partial_axis_out_of_range(self):
        with pytest.raises(IndexError):
            _var(2, 1).partial(0)
        with pytest.raises(IndexError):
            _var(2, 1).partial(3)

    def test_laplacian_of_harmonic_quadratic(self):
        x1, x2 = _var(2, 1), _var(2, 2)
        assert not (x1 ** 2 - x2 ** 2).laplacian()

    @pytest.mark.parametrize("d", [2, 3, 5])
    def test_laplacian_of_radial_factor(self, d):
        assert one_minus_normsq(d).laplacian() == Polynomial.constant(d, -2 * d)

    def test_laplacian_of_constant(self):
        assert not Polynomial.constant(3, 1).laplacian()

    @pytest.mark.parametrize("seed", range(6))
    def test_laplacian_is_sum_of_second_partials(self, seed):
        rng = random.Random(40 + seed)
        d = rng.choice([2, 3])
        p = _rand_poly(rng, d, 5)
        total = Polynomial.zero(d)
        for i in range(1, d + 1):
            total = total + p.partial(i).partial(i)
        assert p.laplacian() == total

    @pytest.mark.parametrize("seed", range(25))
    def test_laplacian_product_rule(self, seed):
        rng = random.Random(seed)
        d = rng.choice([2, 3])
        p = _rand_poly(rng, d, 3)
        q = _rand_poly(rng, d, 3)
        cross = Polynomial.zero(d)
        for dp, dq in zip(gradient(p), gradient(q)):
            cross = cross + dp * dq
        lhs = (p * q).laplacian()
        rhs = p.laplacian() * q + cross.scale(2) + p * q.laplacian()
        assert lhs == rhs


class TestEuler:
    def test_euler_on_cubic_monomial(self):
        p = Polynomial.monomial((1, 1, 1))
        assert p.euler() == p.scale(3)

    def test_euler_kills_constants(self):
        assert not Polynomial.constant(2, 1).euler()

    def test_euler_of_radial_factor(self):
        d = 3
        assert one_minus_normsq(d).euler() == normsq(d).scale(-2)

    def test_euler_matches_gradient_form(self):
        # independent route: sum_i x_i * dp/dx_i
        rng = random.Random(9)
        for _ in range(10):
            d = rng.choice([2, 3])
            p = _rand_poly(rng, d, 4)
            total = Polynomial.zero(d)
            for i in range(1, d + 1):
                total = total + _var(d, i) * p.partial(i)
            assert p.euler() == total

    @pytest.mark.parametrize("degree", range(5))
    def test_euler_identity_on_homogeneous(self, degree):
        rng = random.Random(degree)
        d = 3
        terms = {
            a: Fraction(rng.randint(1, 5))
            for a in exponents_of_degree(d, degree)
        }
        p = Polynomial(d, terms)
        assert p.euler() == p.scale(degree)


class TestStructure:
    def test_homogeneous_parts_of_mixed_polynomial(self):
        d = 2
        p = Polynomial(d, {(0, 0): 1, (1, 0): 1, (1, 1): 1})
        parts = p.homogeneous_parts()
        assert [m for m, _ in parts] == [0, 1, 2]
        assert parts[0][1] == Polynomial.constant(d, 1)
        assert parts[2][1] == Polynomial.monomial((1, 1))

    def test_homogeneous_input_is_single_part(self):
        p = Polynomial(2, {(2, 0): 1, (1, 1): 3})
        assert len(p.homogeneous_parts()) == 1

    def test_homogeneous_parts_of_squared_radial_factor(self):
        d = 2
        parts = (one_minus_normsq(d) ** 2).homogeneous_parts()
        assert [m for m, _ in parts] == [0, 2, 4]
        assert parts[1][1] == normsq(d).scale(-2)
        assert parts[2][1] == normsq(d) * normsq(d)

    def test_homogeneous_parts_of_zero(self):
        assert Polynomial.zero(2).homogeneous_parts() == []

    def test_radial_multiplication_power_zero(self):
        p = _rand_poly(random.Random(5), 2, 3)
        assert one_minus_normsq_times(p, 0) == p

    def test_radial_multiplication_of_one(self):
        assert one_minus_normsq_times(Polynomial.constant(2, 1), 1) == one_minus_normsq(2)

    def test_radial_multiplication_squared_on_x1(self):
        # (1 - |x|^2)^2 x1 expanded, d = 2
        expected = Polynomial(
            2,
            {(1, 0): 1, (3, 0): -2, (1, 2): -2, (5, 0): 1, (3, 2): 2, (1, 4): 1},
        )
        assert one_minus_normsq_times(_var(2, 1), 2) == expected

    def test_degree_of_zero_is_minus_one(self):
        assert Polynomial.zero(2).degree == -1

    def test_grlex_term_order_and_printing(self):
        p = Polynomial(2, {(0, 0): 1, (1, 1): 2, (2, 0): 1, (0, 2): Fraction(1, 3)})
        keys = [a for a, _ in p.sorted_terms()]
        assert keys == [(2, 0), (1, 1), (0, 2), (0, 0)]
        assert (
            str(p)
            == "1/1 * x1^2*x2^0 + 2/1 * x1^1*x2^1 + 1/3 * x1^0*x2^2 + 1/1 * x1^0*x2^0"
        )

    def test_zero_prints_as_zero(self):
        assert str(Polynomial.zero(3)) == "0"

    def test_constructor_validates_exponents(self):
        with pytest.raises(ValueError):
            Polynomial(2, {(1,): 1})
        with pytest.raises(ValueError):
            Polynomial(2, {(-1, 0): 1})
        with pytest.raises(ValueError):
            Polynomial(0)

    def test_immutability(self):
        p = _var(2, 1)
        with pytest.raises(AttributeError):
            p.dimension = 3

    def test_variable_index_validation(self):
        with pytest.raises(IndexError):
            Polynomial.variable(2, 0)
        with pytest.raises(IndexError):
            Polynomial.variable(2, 3)

    def test_negative_power_rejected(self):
        with pytest.raises(ValueError):
            _var(2, 1) ** -1
        with pytest.raises(ValueError):
            one_minus_normsq(2, -1)


def test_exponent_enumeration_counts():
    assert len(list(exponents_of_degree(3, 4))) == 15  # C(6,2)
    assert len(list(exponents_up_to_degree(3, 4))) == 35  # C(7,3)
    assert list(exponents_of_degree(2, 2)) == [(2, 0), (1, 1), (0, 2)]
