"""Construction of the polynomial families on the unit ball.

Everything is exact over the rationals:

* harmonic bases of each degree, pairwise orthogonal on the sphere;
* Jacobi polynomials with arbitrary rational parameters, via the
  terminating hypergeometric sum;
* the classical mutually orthogonal ball bases for the weight
  (1-|x|^2)^mu built from Jacobi radial factors times harmonics;
* the composite families attached to the singular weight parameters
  -1, -2, ..., assembled from harmonic shells with rational correction
  coefficients and a weighted classical top shell.

A harmonic basis is computed by projecting monomials onto the kernel of the
Laplacian and orthogonalizing.  For a monomial m of degree n the projection

    h = sum_j c_j |x|^(2j) Lap^j m,   c_0 = 1,
    c_{j+1} = -c_j / (2 (j+1) (2n - 2j + d - 4)),

is harmonic, and the projections of the monomials whose last exponent is 0
or 1 form a kernel basis.  Orthogonalization happens inside parity classes
(sphere moments of odd monomials vanish, so distinct classes are already
orthogonal) on dense integer vectors, which keeps large dimensions cheap.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .polyalg import (
    Exponent,
    Polynomial,
    exponents_of_degree,
    grlex_key,
    normsq,
    one_minus_normsq,
    one_minus_normsq_times,
)
from .quadsym import sphere_monomial_integral


class SingularCoefficientError(ValueError):
    """A shell correction coefficient has a vanishing denominator factor."""

    def __init__(self, n: int, j: int, nu: int, k: int, d: int, factor_index: int):
        self.n, self.j, self.nu, self.k, self.d = n, j, nu, k, d
        self.factor_index = factor_index
        super().__init__(
            f"coefficient (j={j}, nu={nu}) for degree n={n}, k={k}, d={d} "
            f"is singular: factor n - j - k + {factor_index} + d/2 = 0"
        )


def _comb(a: int, b: int) -> int:
    return math.comb(a, b) if a >= b >= 0 else 0


def harmonic_dim(d: int, n: int) -> int:
    """Dimension of the space of homogeneous harmonics of degree n."""
    if n < 0:
        return 0
    return _comb(n + d - 1, d - 1) - _comb(n + d - 3, d - 1)


def homogeneous_dim(d: int, n: int) -> int:
    """Dimension of the space of homogeneous polynomials of degree n."""
    if n < 0:
        return 0
    return _comb(n + d - 1, d - 1)


def total_dim(d: int, n: int) -> int:
    """Dimension of the space of all polynomials of degree <= n."""
    if n < 0:
        return 0
    return _comb(n + d, d)


def pochhammer(a: Fraction | int, m: int) -> Fraction:
    """Shifted factorial a (a+1) ... (a+m-1); empty product for m = 0."""
    a = Fraction(a)
    out = Fraction(1)
    for i in range(m):
        out *= a + i
    return out


# ---------------------------------------------------------------------------
# harmonic bases
# ---------------------------------------------------------------------------


@dataclass
class HarmonicBasis:
    """Pairwise sphere-orthogonal basis of the degree-n harmonics.

    Elements are homogeneous of degree n with integer coefficients (content
    reduced), annihilated by the Laplacian, and mutually orthogonal under
    the normalized sphere pairing.  Lengths are not normalized; the squared
    norms are recorded instead so everything stays rational.
    """

    dimension: int
    degree: int
    elements: list[Polynomial] = field(default_factory=list)
    norms_sq: list[Fraction] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.elements)


def _kernel_projection(d: int, n: int, beta: Exponent) -> Polynomial:
    """Harmonic component of the monomial x^beta, |beta| = n."""
    term = Polynomial.monomial(beta)
    out = term
    c = Fraction(1)
    r2 = normsq(d)
    r2j = Polynomial.constant(d, 1)
    for j in range(n // 2):
        c = -c / (2 * (j + 1) * (2 * n - 2 * j + d - 4))
        term = term.laplacian()
        if not term:
            break
        r2j = r2j * r2
        out = out + (r2j * term).scale(c)
    return out


def _orthogonalize_class(
    polys: list[Polynomial], d: int, n: int
) -> tuple[list[Polynomial], list[Fraction]]:
    """Gram-Schmidt a list of same-parity harmonics against the sphere form.

    Works on dense integer coordinate vectors over the union support; the
    common denominator of all degree-2n sphere moments cancels in every
    Gram-Schmidt ratio, so the pairing reduces to integer arithmetic.
    """
    support = sorted({a for p in polys for a in p.terms}, key=grlex_key, reverse=True)
    index = {a: s for s, a in enumerate(support)}
    size = len(support)
    moment_den = math.prod(range(d, d + 2 * n - 1, 2)) if n else 1
    weight = [[0] * size for _ in range(size)]
    for s, a in enumerate(support):
        for t in range(s, size):
            m = sphere_monomial_integral(
                tuple(x + y for x, y in zip(a, support[t]))
            ) * moment_den
            weight[s][t] = weight[t][s] = m.numerator if m.denominator == 1 else m

    def to_vector(p: Polynomial) -> list[int]:
        den = math.lcm(*(c.denominator for c in p.terms.values()))
        vec = [0] * size
        for a, c in p.terms.items():
            vec[index[a]] = int(c * den)
        return vec

    def weighted(v: list[int]) -> list[int]:
        return [sum(w * x for w, x in zip(row, v) if x) for row in weight]

    basis_vecs: list[list[int]] = []
    weighted_vecs: list[list[int]] = []
    norms: list[int] = []
    out_polys: list[Polynomial] = []
    out_norms: list[Fraction] = []
    for p in polys:
        vec = to_vector(p)
        coeffs = [
            Fraction(sum(x * y for x, y in zip(vec, wv) if x), nrm)
            for wv, nrm in zip(weighted_vecs, norms)
        ]
        if coeffs:
            den = math.lcm(*(c.denominator for c in coeffs))
            reduced = [den * x for x in vec]
            for c, e in zip(coeffs, basis_vecs):
                num = int(c * den)
                if num:
                    reduced = [x - num * y for x, y in zip(reduced, e)]
        else:
            reduced = vec
        content = math.gcd(*reduced)
        reduced = [x // content for x in reduced]
        wv = weighted(reduced)
        basis_vecs.append(reduced)
        weighted_vecs.append(wv)
        norms.append(sum(x * y for x, y in zip(reduced, wv) if x))
        out_polys.append(
            Polynomial(d, {a: x for a, x in zip(support, reduced) if x})
        )
        out_norms.append(Fraction(norms[-1], moment_den))
    return out_polys, out_norms


@lru_cache(maxsize=None)
def harmonic_basis(d: int, n: int) -> HarmonicBasis:
    """Exact orthogonal basis of the homogeneous harmonics of degree n.

    Empty for n < 0.  Results are cached per (d, n); treat them as
    read-only.
    """
    if d < 1:
        raise ValueError("dimension must be positive")
    if n < 0:
        return HarmonicBasis(d, n)
    generators = [b for b in exponents_of_degree(d, n) if b[-1] <= 1]
    projections = [(b, _kernel_projection(d, n, b)) for b in generators]

    classes: dict[tuple[int, ...], list[int]] = {}
    for i, (b, _) in enumerate(projections):
        classes.setdefault(tuple(a % 2 for a in b), []).append(i)

    elements: list[Polynomial | None] = [None] * len(generators)
    norms: list[Fraction | None] = [None] * len(generators)
    for members in classes.values():
        polys, member_norms = _orthogonalize_class(
            [projections[i][1] for i in members], d, n
        )
        for i, p, nsq in zip(members, polys, member_norms):
            elements[i] = p
            norms[i] = nsq
    return HarmonicBasis(d, n, elements, norms)


# ---------------------------------------------------------------------------
# Jacobi polynomials
# ---------------------------------------------------------------------------


def _check_jacobi_params(alpha: Fraction, beta: Fraction) -> None:
    for name, value in (("alpha", alpha), ("beta", beta)):
        if value.denominator == 1 and value <= -1:
            raise ValueError(f"inadmissible Jacobi parameter {name} = {value}")


def jacobi_radial_coeffs(j: int, alpha: Fraction | int, beta: Fraction | int) -> list[Fraction]:
    """Coefficients q_m of the Jacobi polynomial in powers of (1-t)/2.

    From the terminating hypergeometric sum,

        P_j(t) = ((alpha+1)_j / j!) *
                 sum_m ((-j)_m (j+alpha+beta+1)_m / (m! (alpha+1)_m)) u^m

    with u = (1-t)/2.  Substituting t = 2|x|^2 - 1 later turns u directly
    into 1 - |x|^2, which is why this form is the primary one.
    """
    if j < 0:
        raise ValueError("degree must be >= 0")
    alpha, beta = Fraction(alpha), Fraction(beta)
    _check_jacobi_params(alpha, beta)
    lead = pochhammer(alpha + 1, j) / math.factorial(j)
    coeffs = []
    for m in range(j + 1):
        num = pochhammer(-j, m) * pochhammer(j + alpha + beta + 1, m)
        den = math.factorial(m) * pochhammer(alpha + 1, m)
        coeffs.append(lead * num / den)
    return coeffs


def jacobi(j: int, alpha: Fraction | int, beta: Fraction | int) -> tuple[Fraction, ...]:
    """Jacobi polynomial coefficients in t, ascending degree.

    Normalized so the value at t = 1 is (alpha+1)_j / j!.
    """
    radial = jacobi_radial_coeffs(j, alpha, beta)
    out = [Fraction(0)] * (j + 1)
    # expand u^m = ((1-t)/2)^m = sum_i C(m,i) (-1)^i t^i / 2^m
    for m, q in enumerate(radial):
        if not q:
            continue
        scale = q / 2 ** m
        for i in range(m + 1):
            out[i] += scale * math.comb(m, i) * (-1) ** i
    while len(out) > 1 and not out[-1]:
        out.pop()
    return tuple(out)


def jacobi_value(coeffs: Sequence[Fraction], t: Fraction | int) -> Fraction:
    """Evaluate a univariate coefficient list at a rational point."""
    t = Fraction(t)
    out = Fraction(0)
    for c in reversed(coeffs):
        out = out * t + c
    return out


# ---------------------------------------------------------------------------
# families
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FamilyElement:
    """One family member: shell index, position within the shell (1-based),
    and the polynomial itself."""

    shell: int
    index: int
    poly: Polynomial

    @property
    def label(self) -> str:
        return f"(j={self.shell}, nu={self.index})"


@dataclass
class BasisFamily:
    """A labeled degree-n family of ball polynomials.

    kind is one of 'wmu', 'wminus1', 'vdelta', 'vminus2', 'u'.  Shell 0 is
    always the degree-n harmonic block; higher shells carry increasing
    powers of (1 - |x|^2).
    """

    kind: str
    dimension: int
    degree: int
    params: dict
    elements: list[FamilyElement]
    shells: list[str]

    def __len__(self) -> int:
        return len(self.elements)

    def polys(self) -> list[Polynomial]:
        return [e.poly for e in self.elements]

    def block_ids(self) -> list[int]:
        """Direct-sum block of each element.

        For the classical 'wmu' family every element is its own block (the
        basis is claimed mutually orthogonal); composite families are split
        by shell.
        """
        if self.kind == "wmu":
            return list(range(len(self.elements)))
        return [e.shell for e in self.elements]

    def describe(self) -> str:
        inner = ", ".join(f"{k}={v}" for k, v in self.params.items())
        extra = f", {inner}" if inner else ""
        return f"{self.kind}(d={self.dimension}, n={self.degree}{extra})"


def wmu_basis(d: int, n: int, mu: int) -> BasisFamily:
    """Mutually orthogonal basis for the weight (1-|x|^2)^mu, degree n.

    Shell j pairs the degree-j Jacobi radial factor, with parameters
    (mu, n - 2j + (d-2)/2) evaluated at 2|x|^2 - 1, against each harmonic
    of degree n - 2j.
    """
    if n < 0:
        raise ValueError("degree must be >= 0")
    if mu < 0:
        raise ValueError("mu must be >= 0")
    elements: list[FamilyElement] = []
    shells: list[str] = []
    for j in range(n // 2 + 1):
        m = n - 2 * j
        harmonics = harmonic_basis(d, m)
        if not harmonics.elements:
            continue
        beta = Fraction(2 * m + d - 2, 2)
        radial = jacobi_radial_coeffs(j, mu, beta)
        shells.append(f"jacobi(j={j}) * harmonics({m})")
        for nu, y in enumerate(harmonics.elements, start=1):
            poly = Polynomial.zero(d)
            for power, q in enumerate(radial):
                if q:
                    poly = poly + one_minus_normsq_times(y, power).scale(q)
            elements.append(FamilyElement(j, nu, poly))
    return BasisFamily("wmu", d, n, {"mu": mu}, elements, shells)


def _shifted_family(
    kind: str, d: int, n: int, inner_mu: int
) -> BasisFamily:
    """Harmonics plus (1-|x|^2) times the degree n-2 classical family."""
    if n < 0:
        raise ValueError("degree must be >= 0")
    elements = [
        FamilyElement(0, nu, y)
        for nu, y in enumerate(harmonic_basis(d, n).elements, start=1)
    ]
    shells = [f"harmonics({n})"]
    if n >= 2:
        inner = wmu_basis(d, n - 2, inner_mu)
        if inner.elements:
            shells.append(f"(1-|x|^2) * {inner.describe()}")
            for idx, e in enumerate(inner.elements, start=1):
                elements.append(
                    FamilyElement(1, idx, one_minus_normsq_times(e.poly, 1))
                )
    return BasisFamily(kind, d, n, {}, elements, shells)


def wminus1_basis(d: int, n: int) -> BasisFamily:
    """Gradient-form orthogonal family: harmonics plus a lifted mu=1 block."""
    return _shifted_family("wminus1", d, n, 1)


def vdelta_basis(d: int, n: int) -> BasisFamily:
    """Radial-lift bi-Laplacian family: harmonics plus a lifted mu=2 block."""
    return _shifted_family("vdelta", d, n, 2)


def vminus2_basis(d: int, n: int) -> BasisFamily:
    """Laplacian-form orthogonal family: three shells, defined for all n.

    Harmonics of degree n, then (1-|x|^2) times harmonics of degree n-2,
    then (1-|x|^2)^2 times the mu=2 family of degree n-4.
    """
    if n < 0:
        raise ValueError("degree must be >= 0")
    elements = [
        FamilyElement(0, nu, y)
        for nu, y in enumerate(harmonic_basis(d, n).elements, start=1)
    ]
    shells = [f"harmonics({n})"]
    middle = harmonic_basis(d, n - 2)
    if middle.elements:
        shells.append(f"(1-|x|^2) * harmonics({n - 2})")
        for nu, y in enumerate(middle.elements, start=1):
            elements.append(FamilyElement(1, nu, one_minus_normsq_times(y, 1)))
    if n >= 4:
        top = wmu_basis(d, n - 4, 2)
        if top.elements:
            shells.append(f"(1-|x|^2)^2 * {top.describe()}")
            for idx, e in enumerate(top.elements, start=1):
                elements.append(
                    FamilyElement(2, idx, one_minus_normsq_times(e.poly, 2))
                )
    return BasisFamily("vminus2", d, n, {}, elements, shells)


def shell_coefficient(j: int, nu: int, n: int, k: int, d: int) -> Fraction:
    """Correction coefficient of (1-|x|^2)^nu in the j-th harmonic shell.

    Evaluated in the cancelled form

        (-1)^(j-nu) j! (1-k)_j
        ----------------------  /  prod_{i=nu}^{j-1} (n - j - k + d/2 + i),
        nu! (j-nu)! (1-k)_nu

    which is finite exactly when no factor in the product vanishes; a zero
    factor raises SingularCoefficientError naming its index.
    """
    if not 1 <= j <= k - 1:
        raise ValueError(f"shell index j={j} out of range 1..{k - 1}")
    if not 0 <= nu <= j:
        raise ValueError(f"power nu={nu} out of range 0..{j}")
    x = Fraction(2 * (n - j - k) + d, 2)
    denom = Fraction(1)
    for i in range(nu, j):
        factor = x + i
        if factor == 0:
            raise SingularCoefficientError(n, j, nu, k, d, i)
        denom *= factor
    sign = -1 if (j - nu) % 2 else 1
    num = sign * math.factorial(j) * pochhammer(1 - k, j)
    den = math.factorial(nu) * math.factorial(j - nu) * pochhammer(1 - k, nu)
    return num / den / denom


def u_basis(d: int, n: int, k: int) -> BasisFamily:
    """Complete eigenfunction family for the weight parameter -k, k >= 2.

    Shell 0 holds the degree-n harmonics; shell j (1 <= j <= k-1) holds
    [sum_nu a_(j,nu) (1-|x|^2)^nu] times each harmonic of degree n-2j;
    shell k holds (1-|x|^2)^k times the mu=k family of degree n-2k.
    Raises SingularCoefficientError when a live shell coefficient blows up.
    """
    if n < 0:
        raise ValueError("degree must be >= 0")
    if k < 2:
        raise ValueError("k must be >= 2")
    elements = [
        FamilyElement(0, nu, y)
        for nu, y in enumerate(harmonic_basis(d, n).elements, start=1)
    ]
    shells = [f"harmonics({n})"]
    for j in range(1, k):
        m = n - 2 * j
        harmonics = harmonic_basis(d, m)
        if not harmonics.elements:
            continue
        coeffs = [shell_coefficient(j, nu, n, k, d) for nu in range(j + 1)]
        factor = Polynomial.zero(d)
        for nu, c in enumerate(coeffs):
            if c:
                factor = factor + one_minus_normsq(d, nu).scale(c)
        shells.append(f"Z_{j} * harmonics({m})")
        for nu, y in enumerate(harmonics.elements, start=1):
            elements.append(FamilyElement(j, nu, factor * y))
    if n - 2 * k >= 0:
        top = wmu_basis(d, n - 2 * k, k)
        if top.elements:
            shells.append(f"(1-|x|^2)^{k} * {top.describe()}")
            for idx, e in enumerate(top.elements, start=1):
                elements.append(
                    FamilyElement(k, idx, one_minus_normsq_times(e.poly, k))
                )
    return BasisFamily("u", d, n, {"k": k}, elements, shells)


def singularity_report(d: int, k: int, n_max: int) -> list[tuple[int, int, int]]:
    """All (n, j, nu) with a vanishing coefficient factor, for live shells.

    A factor n - j - k + nu + d/2 can vanish only in even dimension; the
    report is empty for odd d.  Shells with n - 2j < 0 never get built, so
    they are excluded.
    """
    if k < 2:
        raise ValueError("k must be >= 2")
    out = []
    for n in range(n_max + 1):
        for j in range(1, k):
            if n - 2 * j < 0:
                continue
            nu_times_2 = 2 * (j + k - n) - d
            if nu_times_2 % 2 == 0 and 0 <= nu_times_2 // 2 <= j - 1:
                out.append((n, j, nu_times_2 // 2))
    return out


def family_by_kind(kind: str, d: int, n: int, mu: int | None = None,
                   k: int | None = None) -> BasisFamily:
    """Dispatch used by the command line front end."""
    if kind == "wmu":
        if mu is None:
            raise ValueError("family 'wmu' needs mu")
        return wmu_basis(d, n, mu)
    if kind == "wminus1":
        return wminus1_basis(d, n)
    if kind == "vdelta":
        return vdelta_basis(d, n)
    if kind == "vminus2":
        return vminus2_basis(d, n)
    if kind == "u":
        if k is None:
            raise ValueError("family 'u' needs k")
        return u_basis(d, n, k)
    raise ValueError(f"unknown family kind {kind!r}")
