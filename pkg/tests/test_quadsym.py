"""Exact quadrature and inner-product tests.

Derived expectations are frozen from independent oracles: Beta values come
from the binomial expansion of the one-dimensional integral, and sphere
moments are pinned by the reduction sum_i m(alpha + 2 e_i) = m(alpha)
together with normalization and symmetry.
"""

import itertools
import random
from fractions import Fraction

import pytest

from ballpde.polyalg import (
    Polynomial,
    exponents_up_to_degree,
    normsq,
    one_minus_normsq,
)
from ballpde.quadsym import (
    InnerProductSpec,
    ball_integral,
    ball_weighted_monomial_integral,
    format_rational,
    gram_matrix,
    gram_to_strings,
    ip_bilap,
    ip_classical,
    ip_delta_form,
    ip_grad,
    ip_sphere,
    ip_star,
    sphere_integral,
    sphere_monomial_integral,
    sphere_restricts_to_zero,
    star_matching_weight,
    star_radial_part,
)
from ballpde.bases import harmonic_basis
from ballpde.spectral import random_polynomial


def _beta_oracle(k, s):
    """int_0^1 u^(s-1) (1-u)^k du by binomial expansion: sum_i C(k,i)(-1)^i/(s+i)."""
    from math import comb

    return sum(Fraction(comb(k, i) * (-1) ** i) / (s + i) for i in range(k + 1))


class TestSphereMoments:
    def test_normalization(self):
        for d in (1, 2, 3, 5):
            assert sphere_monomial_integral((0,) * d) == 1

    def test_odd_parity_vanishes(self):
        assert sphere_monomial_integral((1, 0, 0)) == 0
        assert sphere_monomial_integral((2, 1)) == 0
        assert sphere_monomial_integral((3, 2, 1)) == 0

    def test_quadratic_moments_by_symmetry(self):
        # the d moments of x_i^2 are equal and sum to 1 on the sphere
        assert sphere_monomial_integral((2, 0)) == Fraction(1, 2)
        assert sphere_monomial_integral((2, 0, 0)) == Fraction(1, 3)
        assert sphere_monomial_integral((2, 0, 0, 0, 0)) == Fraction(1, 5)

    def test_classical_planar_values(self):
        # (1/2pi) int cos^4 = 3/8 and (1/2pi) int cos^2 sin^2 = 1/8
        assert sphere_monomial_integral((4, 0)) == Fraction(3, 8)
        assert sphere_monomial_integral((2, 2)) == Fraction(1, 8)

    @pytest.mark.parametrize("d", [2, 3, 4])
    def test_radial_reduction_property(self, d):
        # |x|^2 = 1 on the sphere: sum_i m(alpha + 2 e_i) = m(alpha)
        for alpha in exponents_up_to_degree(d, 6):
            total = sum(
                sphere_monomial_integral(
                    alpha[:i] + (alpha[i] + 2,) + alpha[i + 1:]
                )
                for i in range(d)
            )
            assert total == sphere_monomial_integral(alpha)

    def test_sphere_integral_is_linear_in_terms(self):
        p = Polynomial(2, {(2, 0): 2, (0, 2): Fraction(1, 2), (1, 0): 7})
        assert sphere_integral(p) == 2 * Fraction(1, 2) + Fraction(1, 2) * Fraction(1, 2)


class TestBallMoments:
    @pytest.mark.parametrize("d", [1, 2, 3, 4])
    def test_volume_ratio(self, d):
        assert ball_weighted_monomial_integral((0,) * d, 0) == Fraction(1, d)

    def test_odd_parity_vanishes(self):
        assert ball_weighted_monomial_integral((1, 0), 3) == 0

    def test_weighted_quadratic_value(self):
        # (1/w_2) int_B x1^2 (1-|x|^2) dx = (1/2) * B(2,2) * (1/2) = 1/24
        assert ball_weighted_monomial_integral((2, 0), 1) == Fraction(1, 24)

    def test_negative_weight_rejected(self):
        with pytest.raises(ValueError):
            ball_weighted_monomial_integral((0, 0), -1)

    @pytest.mark.parametrize("d", [2, 3, 4])
    def test_beta_factor_against_expansion_oracle(self, d):
        for alpha in exponents_up_to_degree(d, 6):
            for k in range(4):
                s = Fraction(sum(alpha) + d, 2)
                expected = sphere_monomial_integral(alpha) * _beta_oracle(k, s) / 2
                assert ball_weighted_monomial_integral(alpha, k) == expected

    @pytest.mark.parametrize("d", [2, 3, 4])
    def test_radial_factorization_consistency(self, d):
        # unweighted solid moment = sphere moment / (|alpha| + d)
        for alpha in exponents_up_to_degree(d, 8):
            assert ball_weighted_monomial_integral(alpha, 0) == (
                sphere_monomial_integral(alpha) / (sum(alpha) + d)
            )

    def test_ball_integral_term_by_term(self):
        p = Polynomial(2, {(2, 0): 24, (1, 1): 5})
        assert ball_integral(p, 1) == 1


class TestClassicalForm:
    def test_unit_normalization(self):
        one = Polynomial.constant(2, 1)
        for mu in (0, 1, 2, 5):
            assert ip_classical(one, one, mu) == 1

    def test_odd_pairing_vanishes(self):
        one = Polynomial.constant(2, 1)
        x1 = Polynomial.variable(2, 1)
        assert ip_classical(one, x1, 1) == 0

    def test_weighted_coordinate_norm(self):
        x1 = Polynomial.variable(2, 1)
        assert ip_classical(x1, x1, 1) == Fraction(1, 6)

    def test_negative_mu_rejected(self):
        one = Polynomial.constant(2, 1)
        with pytest.raises(ValueError):
            ip_classical(one, one, -1)


class TestGradForm:
    def test_unit_normalization(self):
        one = Polynomial.constant(3, 1)
        assert ip_grad(one, one, 1) == 1
        assert ip_grad(one, one, Fraction(1, 3)) == 1

    def test_constant_against_coordinate(self):
        one = Polynomial.constant(2, 1)
        x1 = Polynomial.variable(2, 1)
        assert ip_grad(one, x1, 1) == 0

    def test_coordinate_norm_piecewise(self):
        # bulk: lam * vol/w = 1/2, surface: 1/2
        x1 = Polynomial.variable(2, 1)
        assert ip_grad(x1, x1, 1) == 1

    def test_not_a_moment_functional(self):
        # shifting x1 across the pairing changes the value
        one = Polynomial.constant(2, 1)
        x1 = Polynomial.variable(2, 1)
        left = ip_grad(x1 * one, x1, 1)
        right = ip_grad(one, x1 * x1, 1)
        assert left == 1
        assert right == Fraction(1, 2)
        assert left != right

    def test_nonpositive_lambda_rejected(self):
        one = Polynomial.constant(2, 1)
        with pytest.raises(ValueError):
            ip_grad(one, one, 0)


class TestBilapForm:
    def test_unit_normalization(self):
        one = Polynomial.constant(2, 1)
        assert ip_bilap(one, one, 1) == 1

    def test_harmonics_of_distinct_degrees(self):
        h2 = harmonic_basis(3, 2).elements[0]
        h3 = harmonic_basis(3, 3).elements[0]
        assert ip_bilap(h2, h3, 1) == 0
        assert ip_bilap(h2, h3, Fraction(1, 3)) == 0

    def test_radial_square_norm(self):
        # Lap |x|^2 = 2d: bulk (2d)^2/d plus surface 1 -> 9 for d = 2
        r2 = normsq(2)
        assert ip_bilap(r2, r2, 1) == 9


class TestDeltaForm:
    def test_unit_normalization(self):
        for d in (2, 3):
            one = Polynomial.constant(d, 1)
            assert ip_delta_form(one, one) == 1

    def test_odd_pairing_vanishes(self):
        one = Polynomial.constant(2, 1)
        x1 = Polynomial.variable(2, 1)
        assert ip_delta_form(one, x1) == 0

    def test_coordinate_norm_regression(self):
        # Lap[(1-|x|^2)x1] = -(2d+4)x1; value (2d+4)^2/((|a|+d) 4d) = 5/9, d=3
        x1 = Polynomial.variable(3, 1)
        assert ip_delta_form(x1, x1) == Fraction(5, 9)


class TestStarForm:
    def test_zero_radial_exponent_case(self):
        # n = d + 4 makes the constant's radial factor vanish
        d = 3
        one = Polynomial.constant(d, 1)
        assert ip_star(one, one, 1, 1, d + 4) == 1

    def test_annihilated_homogeneous_degree(self):
        # factor m + n - 4 - d = 0: its radial contribution drops out
        d, n = 2, 3
        f = Polynomial.monomial((3, 0))  # degree m = 3 = 4 + d - n
        assert not star_radial_part(f, n)
        g = Polynomial.monomial((1, 0))
        assert ip_star(f, g, 1, 1, n) == ip_bilap(f, g, 1)

    def test_radial_part_restriction_semantics(self):
        # (1-|x|^2) factors vanish on the sphere even when the polynomial
        # representative is nonzero
        d, n = 3, 5
        y = harmonic_basis(d, n - 2).elements[0]
        shifted = one_minus_normsq(d) * y + y.scale(Fraction(2, 2 * n - 6 + d))
        radial = star_radial_part(shifted, n)
        assert radial  # not the zero polynomial
        rho = Fraction(-4 * d, 2 * n - 6 + d)
        defect = radial - y.scale(rho * (n - 4 - d + n - 2) == 0 or 1) * 0
        # restriction equals rho * Y exactly
        assert sphere_restricts_to_zero(radial - y.scale(rho))

    def test_matching_weight_values(self):
        assert star_matching_weight(3, 5) == Fraction(1, 6)
        assert star_matching_weight(3, 8) == Fraction(1, 42)
        with pytest.raises(ValueError):
            star_matching_weight(3, 4)

    def test_invalid_parameters(self):
        one = Polynomial.constant(2, 1)
        with pytest.raises(ValueError):
            ip_star(one, one, 1, 0, 5)
        with pytest.raises(ValueError):
            ip_star(one, one, 1, 1, 0)


class TestFormProperties:
    FORMS = [
        InnerProductSpec.classical(0),
        InnerProductSpec.classical(2),
        InnerProductSpec.grad(1),
        InnerProductSpec.grad(Fraction(1, 3)),
        InnerProductSpec.bilap(1),
        InnerProductSpec.delta_form(),
        InnerProductSpec.star(1, 1, 7),
        InnerProductSpec.sphere(),
    ]

    @pytest.mark.parametrize("spec", FORMS, ids=lambda s: s.describe())
    def test_symmetry_and_bilinearity(self, spec):
        rng = random.Random(11)
        d = 2
        for _ in range(5):
            f = random_polynomial(rng, d, 4)
            g = random_polynomial(rng, d, 4)
            h = random_polynomial(rng, d, 4)
            a = Fraction(rng.randint(-5, 5), rng.randint(1, 5))
            b = Fraction(rng.randint(-5, 5), rng.randint(1, 5))
            assert spec.evaluate(f, g) == spec.evaluate(g, f)
            combo = f.scale(a) + h.scale(b)
            assert spec.evaluate(combo, g) == a * spec.evaluate(
                f, g
            ) + b * spec.evaluate(h, g)

    @pytest.mark.parametrize(
        "spec",
        [
            InnerProductSpec.classical(0),
            InnerProductSpec.classical(1),
            InnerProductSpec.classical(2),
            InnerProductSpec.grad(1),
            InnerProductSpec.grad(Fraction(1, 3)),
            InnerProductSpec.bilap(1),
        ],
        ids=lambda s: s.describe(),
    )
    def test_positive_definiteness_smoke(self, spec):
        rng = random.Random(13)
        for _ in range(25):
            f = random_polynomial(rng, rng.choice([2, 3]), 6)
            assert spec.evaluate(f, f) > 0

    def test_star_positive_definiteness_up_to_pinned_degree(self):
        rng = random.Random(17)
        n = 6
        for _ in range(25):
            f = random_polynomial(rng, 2, n)
            assert ip_star(f, f, 1, 1, n) > 0

    def test_dimension_mismatch_rejected(self):
        f = Polynomial.constant(2, 1)
        g = Polynomial.constant(3, 1)
        for spec in self.FORMS:
            with pytest.raises(ValueError, match="dimension mismatch"):
                spec.evaluate(f, g)


class TestSpecValidation:
    def test_classical_requires_nonnegative_integer(self):
        with pytest.raises(ValueError):
            InnerProductSpec.classical(-1)
        with pytest.raises(ValueError):
            InnerProductSpec("classical", mu=Fraction(1, 2))

    def test_positive_lambda_required(self):
        for kind in ("grad", "bilap"):
            with pytest.raises(ValueError):
                InnerProductSpec(kind, lam=Fraction(0))

    def test_star_parameter_domains(self):
        with pytest.raises(ValueError):
            InnerProductSpec.star(1, Fraction(-1), 5)
        with pytest.raises(ValueError):
            InnerProductSpec.star(1, 1, 0)

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            InnerProductSpec("fancy")

    def test_describe_round_trip(self):
        assert InnerProductSpec.classical(2).describe() == "classical(mu=2)"
        assert (
            InnerProductSpec.star(1, Fraction(1, 6), 5).describe()
            == "star(lambda=1/1, mu=1/6, n=5)"
        )


class TestGram:
    def test_single_constant(self):
        one = Polynomial.constant(2, 1)
        assert gram_matrix([one], InnerProductSpec.classical(0)) == [[1]]

    def test_constant_and_coordinate_diagonal(self):
        one = Polynomial.constant(2, 1)
        x1 = Polynomial.variable(2, 1)
        gram = gram_matrix([one, x1], InnerProductSpec.classical(0))
        assert gram[0][1] == 0 and gram[1][0] == 0
        assert gram[0][0] == 1 and gram[1][1] > 0

    def test_symmetry_on_random_family(self):
        rng = random.Random(23)
        family = [random_polynomial(rng, 2, 3) for _ in range(4)]
        gram = gram_matrix(family, InnerProductSpec.grad(1))
        for i in range(4):
            for j in range(4):
                assert gram[i][j] == gram[j][i]

    def test_string_export(self):
        rows = gram_to_strings([[Fraction(1, 2), Fraction(0)]])
        assert rows == [["1/2", "0/1"]]
        assert format_rational(Fraction(-3, 7)) == "-3/7"


def test_sphere_restriction_detector():
    d = 3
    assert sphere_restricts_to_zero(Polynomial.zero(d))
    assert sphere_restricts_to_zero(one_minus_normsq(d) * Polynomial.variable(d, 2))
    assert not sphere_restricts_to_zero(Polynomial.variable(d, 1))


def test_sphere_pairing_of_orthonormalized_harmonics():
    basis = harmonic_basis(3, 3)
    for i, p in enumerate(basis.elements):
        for j, q in enumerate(basis.elements):
            expected = basis.norms_sq[i] if i == j else 0
            assert ip_sphere(p, q) == expected
