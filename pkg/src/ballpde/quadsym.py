"""Exact integration over the unit sphere and ball, and the bilinear forms.

Every integral here is normalized by the sphere surface area, so all values
are rational and every orthogonality claim can be tested as an exact zero.
The closed forms used:

  sphere moment   (1/w_d) int_S x^a dw
      = prod_i (a_i - 1)!! / (d (d+2) ... (d+|a|-2))   for all a_i even,
      and 0 if any a_i is odd.

  weighted ball moment   (1/w_d) int_B x^a (1-|x|^2)^k dx
      = sphere_moment(a) * (1/2) * B(k+1, (|a|+d)/2),
      via x = r x' and u = r^2; the Beta value k! / (s)_{k+1} with
      s = (|a|+d)/2 is rational even when s is a half-integer.

Five bilinear forms are provided, all normalized so <1,1> = 1:

  classical(mu)   c_mu int_B f g (1-|x|^2)^mu dx, integer mu >= 0
  grad(lam)       (lam/w) int_B grad f . grad g dx + (1/w) int_S f g dw
  bilap(lam)      (lam/w) int_B  Lap f  Lap g  dx + (1/w) int_S f g dw
  delta_form      a_d int_B Lap[(1-|x|^2)f] Lap[(1-|x|^2)g] dx
  star(lam,mu,n)  bilap(lam) plus a boundary radial-derivative term:
                  (mu/w) int_S  d/dr[r^E f]  d/dr[r^E g]  dw  at r = 1,
                  with E = n - 4 + d, so for a homogeneous part f_m the
                  derivative at r = 1 is (E + m) f_m(x').

Inner products of sparse polynomials are computed term-pair by term-pair
against memoized moments; products are never expanded, which keeps checks
against single monomials linear in the size of f.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Sequence

from .polyalg import Exponent, Polynomial, Scalar, gradient, one_minus_normsq_times


def format_rational(q: Fraction | int) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


@lru_cache(maxsize=None)
def sphere_monomial_integral(alpha: Exponent) -> Fraction:
    """Normalized sphere moment (1/w_d) int_S x^alpha dw."""
    if any(a % 2 for a in alpha):
        return Fraction(0)
    d = len(alpha)
    total = sum(alpha)
    num = math.prod(math.prod(range(1, a, 2)) for a in alpha)
    den = math.prod(range(d, d + total - 1, 2))
    return Fraction(num, den)


@lru_cache(maxsize=None)
def ball_weighted_monomial_integral(alpha: Exponent, k: int = 0) -> Fraction:
    """Normalized ball moment (1/w_d) int_B x^alpha (1-|x|^2)^k dx."""
    if k < 0:
        raise ValueError("weight exponent k must be >= 0")
    surface = sphere_monomial_integral(alpha)
    if not surface:
        return Fraction(0)
    s = Fraction(sum(alpha) + len(alpha), 2)
    beta = Fraction(math.factorial(k))
    for i in range(k + 1):
        beta /= s + i
    return surface * beta / 2


def sphere_integral(p: Polynomial) -> Fraction:
    """(1/w_d) int_S p dw, term by term."""
    return sum(
        (c * sphere_monomial_integral(a) for a, c in p.terms.items()), Fraction(0)
    )


def ball_integral(p: Polynomial, k: int = 0) -> Fraction:
    """(1/w_d) int_B p (1-|x|^2)^k dx, term by term."""
    return sum(
        (c * ball_weighted_monomial_integral(a, k) for a, c in p.terms.items()),
        Fraction(0),
    )


def _sphere_pairing(f: Polynomial, g: Polynomial) -> Fraction:
    """(1/w_d) int_S f g dw without expanding the product."""
    total = Fraction(0)
    for a, ca in f.terms.items():
        for b, cb in g.terms.items():
            m = sphere_monomial_integral(tuple(x + y for x, y in zip(a, b)))
            if m:
                total += ca * cb * m
    return total


def _ball_pairing(f: Polynomial, g: Polynomial, k: int = 0) -> Fraction:
    """(1/w_d) int_B f g (1-|x|^2)^k dx without expanding the product."""
    total = Fraction(0)
    for a, ca in f.terms.items():
        for b, cb in g.terms.items():
            m = ball_weighted_monomial_integral(tuple(x + y for x, y in zip(a, b)), k)
            if m:
                total += ca * cb * m
    return total


def _require_same_dimension(f: Polynomial, g: Polynomial) -> None:
    if f.dimension != g.dimension:
        raise ValueError(f"dimension mismatch: {f.dimension} vs {g.dimension}")


def ip_classical(f: Polynomial, g: Polynomial, mu: int) -> Fraction:
    """Weighted ball form with weight (1-|x|^2)^mu, normalized to <1,1> = 1."""
    _require_same_dimension(f, g)
    if mu < 0:
        raise ValueError("classical weight exponent mu must be >= 0")
    zero = (0,) * f.dimension
    return _ball_pairing(f, g, mu) / ball_weighted_monomial_integral(zero, mu)


def ip_grad(f: Polynomial, g: Polynomial, lam: Scalar = 1) -> Fraction:
    """Gradient form: (lam/w) int_B grad f . grad g + (1/w) int_S f g."""
    _require_same_dimension(f, g)
    lam = Fraction(lam)
    if lam <= 0:
        raise ValueError("lambda must be > 0")
    bulk = sum(
        (_ball_pairing(df, dg) for df, dg in zip(gradient(f), gradient(g))),
        Fraction(0),
    )
    return lam * bulk + _sphere_pairing(f, g)


def ip_bilap(f: Polynomial, g: Polynomial, lam: Scalar = 1) -> Fraction:
    """Laplacian form: (lam/w) int_B Lap f Lap g + (1/w) int_S f g."""
    _require_same_dimension(f, g)
    lam = Fraction(lam)
    if lam <= 0:
        raise ValueError("lambda must be > 0")
    return lam * _ball_pairing(f.laplacian(), g.laplacian()) + _sphere_pairing(f, g)


def ip_delta_form(f: Polynomial, g: Polynomial) -> Fraction:
    """Bi-Laplacian form on the radial lift, normalized so <1,1> = 1.

    The normalizing constant 1/(4 d^2 vol B) becomes 1/(4d) after the
    w_d normalization, since vol(B^d)/w_d = 1/d.
    """
    _require_same_dimension(f, g)
    d = f.dimension
    lf = one_minus_normsq_times(f, 1).laplacian()
    lg = one_minus_normsq_times(g, 1).laplacian()
    return _ball_pairing(lf, lg) / (4 * d)


def star_radial_part(f: Polynomial, n: int) -> Polynomial:
    """Boundary radial derivative d/dr[r^(n-4-d) f] at r = 1.

    Writing f = sum of homogeneous parts f_m, the lift along rays gives
    r^(n-4-d+m) f_m(x') whose radial derivative at r = 1 is
    (n - 4 - d + m) f_m(x').  The returned polynomial represents the
    derivative through its restriction to the sphere; only sphere
    integrals of it are meaningful.
    """
    e = n - 4 - f.dimension
    out = Polynomial.zero(f.dimension)
    for m, part in f.homogeneous_parts():
        out = out + part.scale(e + m)
    return out


def sphere_restricts_to_zero(p: Polynomial) -> bool:
    """Whether p vanishes identically on the unit sphere.

    Exact: the normalized surface integral of p^2 is zero iff the
    restriction is the zero function.
    """
    return not _sphere_pairing(p, p)


def star_matching_weight(d: int, n: int) -> Fraction:
    """The boundary weight mu = 1/(2d(2n-6-d)) that balances the star form.

    For the degree-n eigenfunction family of the k=2 singular weight, the
    shifted middle shell Z = [(1-|x|^2) + c] Y with c = 1/(n-3+d/2) pairs
    with a lower-degree g through boundary terms only; with t = 2n-6-d the
    radial derivative of Z restricts to (tc - 2) Y on the sphere, and

        <Z, g>_star = [c + mu t (tc - 2)] <Y, g>_sphere.

    The bracket vanishes exactly at mu = 1/(2d(2n-6-d)), which is positive
    precisely when n > 3 + d/2.
    """
    t = 2 * n - 6 - d
    if t <= 0:
        raise ValueError(
            f"no positive matching weight: need n > 3 + d/2, got n={n}, d={d}"
        )
    return Fraction(1, 2 * d * t)


def ip_star(
    f: Polynomial, g: Polynomial, lam: Scalar, mu: Scalar, n: int
) -> Fraction:
    """Degree-pinned form: bilap(lam) plus the boundary radial term.

    Positive definite on polynomials of degree <= n for every lam, mu > 0.
    The degree-n eigenfunction family of the k=2 singular weight is
    orthogonal to all lower-degree polynomials under this form for every
    lam > 0 when mu equals star_matching_weight(d, n).
    """
    _require_same_dimension(f, g)
    mu = Fraction(mu)
    if mu <= 0:
        raise ValueError("mu must be > 0")
    if n < 1:
        raise ValueError("n must be >= 1")
    base = ip_bilap(f, g, lam)
    return base + mu * _sphere_pairing(star_radial_part(f, n), star_radial_part(g, n))


def ip_sphere(f: Polynomial, g: Polynomial) -> Fraction:
    """Boundary-only pairing (1/w_d) int_S f g dw."""
    _require_same_dimension(f, g)
    return _sphere_pairing(f, g)


_KINDS = ("classical", "grad", "bilap", "delta", "star", "sphere")


@dataclass(frozen=True)
class InnerProductSpec:
    """Tagged description of one bilinear form.

    kind      one of 'classical', 'grad', 'bilap', 'delta', 'star', 'sphere'
    mu        weight exponent (classical, int >= 0) or boundary weight
              (star, rational > 0)
    lam       bulk weight, rational > 0 (grad, bilap, star)
    n         pinned degree for the star form, int >= 1
    """

    kind: str
    mu: Fraction | int | None = None
    lam: Fraction | None = None
    n: int | None = None

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown inner product kind {self.kind!r}")
        if self.kind == "classical":
            if not isinstance(self.mu, int) or self.mu < 0:
                raise ValueError("classical form needs integer mu >= 0")
        if self.kind in ("grad", "bilap", "star"):
            if self.lam is None or Fraction(self.lam) <= 0:
                raise ValueError(f"{self.kind} form needs lambda > 0")
        if self.kind == "star":
            if self.mu is None or Fraction(self.mu) <= 0:
                raise ValueError("star form needs mu > 0")
            if not isinstance(self.n, int) or self.n < 1:
                raise ValueError("star form needs integer n >= 1")

    @classmethod
    def classical(cls, mu: int) -> InnerProductSpec:
        return cls("classical", mu=mu)

    @classmethod
    def grad(cls, lam: Scalar = 1) -> InnerProductSpec:
        return cls("grad", lam=Fraction(lam))

    @classmethod
    def bilap(cls, lam: Scalar = 1) -> InnerProductSpec:
        return cls("bilap", lam=Fraction(lam))

    @classmethod
    def delta_form(cls) -> InnerProductSpec:
        return cls("delta")

    @classmethod
    def star(cls, lam: Scalar, mu: Scalar, n: int) -> InnerProductSpec:
        return cls("star", lam=Fraction(lam), mu=Fraction(mu), n=n)

    @classmethod
    def sphere(cls) -> InnerProductSpec:
        return cls("sphere")

    def evaluate(self, f: Polynomial, g: Polynomial) -> Fraction:
        if self.kind == "classical":
            return ip_classical(f, g, self.mu)
        if self.kind == "grad":
            return ip_grad(f, g, self.lam)
        if self.kind == "bilap":
            return ip_bilap(f, g, self.lam)
        if self.kind == "delta":
            return ip_delta_form(f, g)
        if self.kind == "star":
            return ip_star(f, g, self.lam, self.mu, self.n)
        return ip_sphere(f, g)

    def describe(self) -> str:
        if self.kind == "classical":
            return f"classical(mu={self.mu})"
        if self.kind == "grad":
            return f"grad(lambda={format_rational(self.lam)})"
        if self.kind == "bilap":
            return f"bilap(lambda={format_rational(self.lam)})"
        if self.kind == "delta":
            return "delta_form"
        if self.kind == "star":
            return (
                f"star(lambda={format_rational(self.lam)}, "
                f"mu={format_rational(self.mu)}, n={self.n})"
            )
        return "sphere"


def gram_matrix(
    family: Sequence[Polynomial],
    ip: InnerProductSpec | Callable[[Polynomial, Polynomial], Fraction],
) -> list[list[Fraction]]:
    """Exact symmetric Gram matrix of a family under one form."""
    pair = ip.evaluate if isinstance(ip, InnerProductSpec) else ip
    size = len(family)
    gram = [[Fraction(0)] * size for _ in range(size)]
    for i in range(size):
        for j in range(i, size):
            value = pair(family[i], family[j])
            gram[i][j] = value
            gram[j][i] = value
    return gram


def gram_to_strings(gram: Sequence[Sequence[Fraction]]) -> list[list[str]]:
    """Gram matrix as "num/den" strings, ready for JSON or CSV export."""
    return [[format_rational(v) for v in row] for row in gram]
