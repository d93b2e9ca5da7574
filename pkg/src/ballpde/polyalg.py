"""Exact sparse multivariate polynomial arithmetic over the rationals.

A polynomial in d variables is a map from exponent tuples to Fraction
coefficients.  The representation is canonical: zero coefficients are never
stored, every exponent tuple has length d, and the zero polynomial is the
empty map (the dimension is kept).  All operations are pure and exact; no
floating point enters anywhere.

Monomials are ordered graded-lexicographically (total degree first, then
lexicographic on the exponent tuple, highest first) for iteration and
printing, so output is deterministic.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Mapping

Exponent = tuple[int, ...]
Scalar = int | Fraction


def grlex_key(alpha: Exponent) -> tuple[int, Exponent]:
    """Sort key for descending graded lexicographic order (use reverse=True)."""
    return (sum(alpha), alpha)


def exponents_of_degree(dimension: int, degree: int) -> Iterator[Exponent]:
    """Yield all exponent tuples of exact total degree, graded-lex descending."""
    if degree < 0:
        return
    if dimension == 1:
        yield (degree,)
        return
    for first in range(degree, -1, -1):
        for rest in exponents_of_degree(dimension - 1, degree - first):
            yield (first,) + rest


def exponents_up_to_degree(dimension: int, degree: int) -> Iterator[Exponent]:
    """Yield all exponent tuples of total degree <= degree, low degree first."""
    for m in range(degree + 1):
        yield from exponents_of_degree(dimension, m)


class Polynomial:
    """Immutable sparse polynomial with Fraction coefficients."""

    __slots__ = ("dimension", "terms")

    def __init__(self, dimension: int, terms: Mapping[Exponent, Scalar] | None = None):
        if dimension < 1:
            raise ValueError(f"dimension must be positive, got {dimension}")
        clean: dict[Exponent, Fraction] = {}
        for alpha, c in (terms or {}).items():
            if len(alpha) != dimension:
                raise ValueError(
                    f"exponent {alpha} has length {len(alpha)}, expected {dimension}"
                )
            if any(a < 0 for a in alpha):
                raise ValueError(f"negative exponent in {alpha}")
            coeff = Fraction(c)
            if coeff:
                clean[tuple(alpha)] = coeff
        object.__setattr__(self, "dimension", dimension)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, dimension: int) -> Polynomial:
        return cls(dimension)

    @classmethod
    def constant(cls, dimension: int, value: Scalar) -> Polynomial:
        return cls(dimension, {(0,) * dimension: Fraction(value)})

    @classmethod
    def variable(cls, dimension: int, i: int) -> Polynomial:
        """The coordinate x_i, 1-based to match the x1..xd naming."""
        if not 1 <= i <= dimension:
            raise IndexError(f"variable index {i} out of range 1..{dimension}")
        alpha = [0] * dimension
        alpha[i - 1] = 1
        return cls(dimension, {tuple(alpha): Fraction(1)})

    @classmethod
    def monomial(cls, alpha: Exponent, coeff: Scalar = 1) -> Polynomial:
        return cls(len(alpha), {tuple(alpha): Fraction(coeff)})

    # -- basic queries -----------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.dimension == other.dimension and self.terms == other.terms

    __hash__ = None  # mutable-dict backed; not hashable

    @property
    def degree(self) -> int:
        """Max total degree; -1 for the zero polynomial."""
        return max((sum(a) for a in self.terms), default=-1)

    def coefficient(self, alpha: Exponent) -> Fraction:
        return self.terms.get(tuple(alpha), Fraction(0))

    def sorted_terms(self) -> list[tuple[Exponent, Fraction]]:
        """Terms in descending graded-lex order."""
        return sorted(self.terms.items(), key=lambda kv: grlex_key(kv[0]), reverse=True)

    def _require_same_dimension(self, other: Polynomial) -> None:
        if self.dimension != other.dimension:
            raise ValueError(
                f"dimension mismatch: {self.dimension} vs {other.dimension}"
            )

    # -- ring operations ---------------------------------------------------

    def __add__(self, other: Polynomial) -> Polynomial:
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._require_same_dimension(other)
        out = dict(self.terms)
        for alpha, c in other.terms.items():
            out[alpha] = out.get(alpha, Fraction(0)) + c
        return Polynomial(self.dimension, out)

    def __sub__(self, other: Polynomial) -> Polynomial:
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._require_same_dimension(other)
        out = dict(self.terms)
        for alpha, c in other.terms.items():
            out[alpha] = out.get(alpha, Fraction(0)) - c
        return Polynomial(self.dimension, out)

    def __neg__(self) -> Polynomial:
        return Polynomial(self.dimension, {a: -c for a, c in self.terms.items()})

    def __mul__(self, other: Polynomial | Scalar) -> Polynomial:
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._require_same_dimension(other)
        out: dict[Exponent, Fraction] = {}
        for a, ca in self.terms.items():
            for b, cb in other.terms.items():
                key = tuple(x + y for x, y in zip(a, b))
                out[key] = out.get(key, Fraction(0)) + ca * cb
        return Polynomial(self.dimension, out)

    def __rmul__(self, other: Scalar) -> Polynomial:
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, power: int) -> Polynomial:
        if power < 0:
            raise ValueError("negative power")
        result = Polynomial.constant(self.dimension, 1)
        for _ in range(power):
            result = result * self
        return result

    def scale(self, c: Scalar) -> Polynomial:
        c = Fraction(c)
        if not c:
            return Polynomial(self.dimension)
        return Polynomial(self.dimension, {a: c * v for a, v in self.terms.items()})

    # -- differential operators --------------------------------------------

    def partial(self, i: int) -> Polynomial:
        """Formal partial derivative with respect to x_i (1-based)."""
        if not 1 <= i <= self.dimension:
            raise IndexError(f"axis {i} out of range 1..{self.dimension}")
        k = i - 1
        out: dict[Exponent, Fraction] = {}
        for alpha, c in self.terms.items():
            if alpha[k] == 0:
                continue
            beta = alpha[:k] + (alpha[k] - 1,) + alpha[k + 1:]
            out[beta] = out.get(beta, Fraction(0)) + c * alpha[k]
        return Polynomial(self.dimension, out)

    def laplacian(self) -> Polynomial:
        """Sum of second partials."""
        out: dict[Exponent, Fraction] = {}
        for alpha, c in self.terms.items():
            for k, ak in enumerate(alpha):
                if ak < 2:
                    continue
                beta = alpha[:k] + (ak - 2,) + alpha[k + 1:]
                out[beta] = out.get(beta, Fraction(0)) + c * ak * (ak - 1)
        return Polynomial(self.dimension, out)

    def euler(self) -> Polynomial:
        """The Euler operator sum_i x_i d/dx_i; scales a homogeneous part of
        degree m by m."""
        out = {a: c * sum(a) for a, c in self.terms.items()}
        return Polynomial(self.dimension, out)

    # -- structure ---------------------------------------------------------

    def homogeneous_parts(self) -> list[tuple[int, Polynomial]]:
        """Decompose into homogeneous parts, degrees strictly increasing."""
        buckets: dict[int, dict[Exponent, Fraction]] = {}
        for alpha, c in self.terms.items():
            buckets.setdefault(sum(alpha), {})[alpha] = c
        return [
            (m, Polynomial(self.dimension, part))
            for m, part in sorted(buckets.items())
        ]

    def homogeneous_component(self, m: int) -> Polynomial:
        part = {a: c for a, c in self.terms.items() if sum(a) == m}
        return Polynomial(self.dimension, part)

    def is_homogeneous(self) -> bool:
        degrees = {sum(a) for a in self.terms}
        return len(degrees) <= 1

    # -- printing ----------------------------------------------------------

    def __str__(self) -> str:
        """Canonical text form: "num/den * x1^a1*...*xd^ad" terms joined by ' + '."""
        if not self.terms:
            return "0"
        parts = []
        for alpha, c in self.sorted_terms():
            powers = "*".join(f"x{i + 1}^{a}" for i, a in enumerate(alpha))
            parts.append(f"{c.numerator}/{c.denominator} * {powers}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"Polynomial(d={self.dimension}, {str(self)})"


def one_minus_normsq(dimension: int, power: int = 1) -> Polynomial:
    """The radial factor (1 - ||x||^2)^power, expanded."""
    if power < 0:
        raise ValueError("negative power")
    base = Polynomial(
        dimension,
        {(0,) * dimension: Fraction(1)}
        | {
            tuple(2 if j == i else 0 for j in range(dimension)): Fraction(-1)
            for i in range(dimension)
        },
    )
    return base ** power


def one_minus_normsq_times(p: Polynomial, power: int) -> Polynomial:
    """(1 - ||x||^2)^power * p, expanded."""
    if power == 0:
        return p
    return one_minus_normsq(p.dimension, power) * p


def normsq(dimension: int) -> Polynomial:
    """||x||^2 as a polynomial."""
    return Polynomial(
        dimension,
        {
            tuple(2 if j == i else 0 for j in range(dimension)): Fraction(1)
            for i in range(dimension)
        },
    )


def gradient(p: Polynomial) -> list[Polynomial]:
    return [p.partial(i) for i in range(1, p.dimension + 1)]


def poly_from_string_terms(dimension: int, entries: Iterable[tuple[Exponent, str]]) -> Polynomial:
    """Build a polynomial from (exponent, "num/den") pairs, as found in JSON."""
    return Polynomial(dimension, {tuple(a): Fraction(s) for a, s in entries})
