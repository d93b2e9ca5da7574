"""The ball operator, eigen-equation checks, and orthogonality reports.

The second-order operator under study is

    L_mu = Lap - E^2 - (2 mu + d) E,        E = sum_i x_i d/dx_i,

whose polynomial eigenfunctions of degree n carry the eigenvalue
-n (n + 2 mu + d).  All checks compare residual POLYNOMIALS against zero,
never floating point numbers, so a pass means exact equality.  Reports
carry enough structure to be serialized as JSON with rationals rendered
as "num/den" strings.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .bases import BasisFamily, harmonic_basis, total_dim
from .polyalg import (
    Exponent,
    Polynomial,
    Scalar,
    exponents_up_to_degree,
    one_minus_normsq_times,
)
from .quadsym import (
    InnerProductSpec,
    format_rational,
    ip_classical,
    sphere_restricts_to_zero,
    star_radial_part,
)


def apply_L(mu: Scalar, p: Polynomial) -> Polynomial:
    """Apply L_mu = Lap - E^2 - (2 mu + d) E exactly."""
    mu = Fraction(mu)
    euler = p.euler()
    return p.laplacian() - euler.euler() - euler.scale(2 * mu + p.dimension)


def eigenvalue(n: int, mu: Scalar, d: int) -> Fraction:
    """Eigenvalue -n (n + 2 mu + d) of degree-n eigenfunctions."""
    if n < 0:
        raise ValueError("degree must be >= 0")
    return -n * (n + 2 * Fraction(mu) + d)


def natural_mu(family: BasisFamily) -> Fraction | None:
    """The weight parameter whose operator the family diagonalizes."""
    if family.kind == "wmu":
        return Fraction(family.params["mu"])
    if family.kind == "wminus1":
        return Fraction(-1)
    if family.kind == "u":
        return Fraction(-family.params["k"])
    return None


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------


@dataclass
class EigenReport:
    """Residuals of L_mu p - lambda p over one family, element by element."""

    family: str
    mu: Fraction
    eigenvalue: Fraction
    residual_zero: list[bool]
    worst: tuple[str, Polynomial] | None = None

    @property
    def passed(self) -> bool:
        return all(self.residual_zero)

    def to_json_dict(self) -> dict:
        witnesses = []
        if self.worst is not None:
            witnesses.append({"element": self.worst[0], "residual": str(self.worst[1])})
        return {
            "claim": "eigenfunction residuals are identically zero",
            "parameters": {
                "family": self.family,
                "mu": format_rational(self.mu),
                "eigenvalue": format_rational(self.eigenvalue),
                "elements": len(self.residual_zero),
            },
            "pass": self.passed,
            "witnesses": witnesses,
        }


@dataclass
class GramReport:
    """Exact zero-checks of inner products over a family."""

    inner_product: str
    family: str
    mode: str
    entries_checked: int
    violations: list[tuple[str, str, str]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_json_dict(self) -> dict:
        return {
            "claim": f"required Gram entries vanish ({self.mode})",
            "parameters": {
                "family": self.family,
                "inner_product": self.inner_product,
                "entries": self.entries_checked,
            },
            "pass": self.passed,
            "witnesses": [
                {"left": a, "right": b, "value": v} for a, b, v in self.violations
            ],
        }


def check_eigen(family: BasisFamily, mu: Scalar) -> EigenReport:
    """Verify L_mu p = lambda p exactly for every family element."""
    mu = Fraction(mu)
    lam = eigenvalue(family.degree, mu, family.dimension)
    flags: list[bool] = []
    worst: tuple[str, Polynomial] | None = None
    for element in family.elements:
        residual = apply_L(mu, element.poly) - element.poly.scale(lam)
        ok = not residual
        flags.append(ok)
        if not ok:
            size = (residual.degree, len(residual.terms))
            if worst is None or size > (worst[1].degree, len(worst[1].terms)):
                worst = (element.label, residual)
    return EigenReport(family.describe(), mu, lam, flags, worst)


def check_orthogonality(
    family: BasisFamily,
    ip: InnerProductSpec,
    mode: str = "cross",
    other: BasisFamily | None = None,
) -> GramReport:
    """Exact orthogonality checks.

    mode 'cross'   every element against every monomial of lower degree
                   (monomials span the lower-degree polynomials);
    mode 'within'  every pair of elements from distinct direct-sum blocks;
    with `other`   every pair between the two families (mode ignored).
    """
    violations: list[tuple[str, str, str]] = []
    checked = 0
    if other is not None:
        for a in family.elements:
            for b in other.elements:
                checked += 1
                value = ip.evaluate(a.poly, b.poly)
                if value:
                    violations.append((a.label, b.label, format_rational(value)))
        return GramReport(
            ip.describe(),
            f"{family.describe()} vs {other.describe()}",
            "pair",
            checked,
            violations,
        )
    if mode == "cross":
        d = family.dimension
        for alpha in exponents_up_to_degree(d, family.degree - 1):
            mono = Polynomial.monomial(alpha)
            name = str(mono)
            for a in family.elements:
                checked += 1
                value = ip.evaluate(a.poly, mono)
                if value:
                    violations.append((a.label, name, format_rational(value)))
    elif mode == "within":
        blocks = family.block_ids()
        elements = family.elements
        for i in range(len(elements)):
            for j in range(i + 1, len(elements)):
                if blocks[i] == blocks[j]:
                    continue
                checked += 1
                value = ip.evaluate(elements[i].poly, elements[j].poly)
                if value:
                    violations.append(
                        (elements[i].label, elements[j].label, format_rational(value))
                    )
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return GramReport(ip.describe(), family.describe(), mode, checked, violations)


# ---------------------------------------------------------------------------
# operator identities
# ---------------------------------------------------------------------------


def shift_identity_residual(mu: Scalar, p: Polynomial) -> Polynomial:
    """Residual of the radial-factor commutation identity.

    L_mu[(1-|x|^2) p] - { 4(mu+1) p
                          + (1-|x|^2) [ -(4(mu+1) + 2d) p + L_(mu+2) p ] },
    identically zero for every polynomial p and rational mu.
    """
    mu = Fraction(mu)
    d = p.dimension
    lhs = apply_L(mu, one_minus_normsq_times(p, 1))
    inner = apply_L(mu + 2, p) - p.scale(4 * (mu + 1) + 2 * d)
    rhs = p.scale(4 * (mu + 1)) + one_minus_normsq_times(inner, 1)
    return lhs - rhs


def power_identity_residual(mu: Scalar, k: int, p: Polynomial) -> Polynomial:
    """Residual of the k-th power commutation identity.

    L_mu[(1-|x|^2)^k p] - { 4k(mu+k) (1-|x|^2)^(k-1) p
                            + (1-|x|^2)^k [ -(4k(mu+k) + 2kd) p
                                            + L_(mu+2k) p ] };
    k = 1 recovers the single-factor identity.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    mu = Fraction(mu)
    d = p.dimension
    lhs = apply_L(mu, one_minus_normsq_times(p, k))
    inner = apply_L(mu + 2 * k, p) - p.scale(4 * k * (mu + k) + 2 * k * d)
    rhs = one_minus_normsq_times(p, k - 1).scale(4 * k * (mu + k)) + (
        one_minus_normsq_times(inner, k)
    )
    return lhs - rhs


# ---------------------------------------------------------------------------
# symmetry of the weighted form
# ---------------------------------------------------------------------------


def random_polynomial(
    rng: random.Random, dimension: int, degree: int, sparsity: Fraction | float = 0.6
) -> Polynomial:
    """Seeded random polynomial with small rational coefficients.

    Every monomial of total degree <= degree is kept with the given
    probability; the result is never the zero polynomial.
    """
    while True:
        terms = {}
        for alpha in exponents_up_to_degree(dimension, degree):
            if rng.random() < sparsity:
                num = rng.randint(-9, 9)
                if num:
                    terms[alpha] = Fraction(num, rng.randint(1, 9))
        if terms:
            return Polynomial(dimension, terms)


@dataclass
class SymmetryReport:
    """Result of random-pair symmetry trials of the weighted form."""

    mu: int
    dimension: int
    trials: int
    seed: int
    counterexample: tuple[Polynomial, Polynomial] | None = None

    @property
    def passed(self) -> bool:
        return self.counterexample is None

    def to_json_dict(self) -> dict:
        witnesses = []
        if self.counterexample:
            f, g = self.counterexample
            witnesses.append({"f": str(f), "g": str(g)})
        return {
            "claim": "<L f, g> = <f, L g> under the weighted form",
            "parameters": {
                "mu": self.mu,
                "d": self.dimension,
                "trials": self.trials,
                "seed": self.seed,
            },
            "pass": self.passed,
            "witnesses": witnesses,
        }


def check_symmetry(
    mu: int, dimension: int, trials: int = 25, seed: int = 0, max_degree: int = 6
) -> SymmetryReport:
    """Test <L_mu f, g>_mu = <f, L_mu g>_mu exactly on random pairs.

    Restricted to integer mu >= 1, where the weight and its first power
    vanish fast enough at the boundary for the integrated identity.
    """
    if mu < 1:
        raise ValueError("mu must be >= 1")
    rng = random.Random(seed)
    for _ in range(trials):
        f = random_polynomial(rng, dimension, max_degree)
        g = random_polynomial(rng, dimension, max_degree)
        left = ip_classical(apply_L(mu, f), g, mu)
        right = ip_classical(f, apply_L(mu, g), mu)
        if left != right:
            return SymmetryReport(mu, dimension, trials, seed, (f, g))
    return SymmetryReport(mu, dimension, trials, seed)


# ---------------------------------------------------------------------------
# exact linear algebra on small operators
# ---------------------------------------------------------------------------


def _nullspace(matrix: list[list[Fraction]]) -> list[list[Fraction]]:
    """Kernel basis of an exact rational matrix (rows = equations)."""
    if not matrix:
        return []
    rows = [row[:] for row in matrix]
    cols = len(rows[0])
    pivot_col_of_row: list[int] = []
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                factor = rows[i][c]
                rows[i] = [v - factor * w for v, w in zip(rows[i], rows[r])]
        pivot_col_of_row.append(c)
        r += 1
        if r == len(rows):
            break
    pivots = set(pivot_col_of_row)
    basis = []
    for free in range(cols):
        if free in pivots:
            continue
        vec = [Fraction(0)] * cols
        vec[free] = Fraction(1)
        for i, pc in enumerate(pivot_col_of_row):
            vec[pc] = -rows[i][free]
        basis.append(vec)
    return basis


def operator_matrix(
    mu: Scalar, dimension: int, degree: int
) -> tuple[list[Exponent], list[list[Fraction]]]:
    """Matrix of L_mu on the monomial basis of polynomials of degree <= degree.

    Returns (ordered monomial list, matrix) with matrix[i][j] the
    coefficient of monomial i in L_mu applied to monomial j.
    """
    monomials = list(exponents_up_to_degree(dimension, degree))
    index = {a: i for i, a in enumerate(monomials)}
    size = len(monomials)
    matrix = [[Fraction(0)] * size for _ in range(size)]
    for j, alpha in enumerate(monomials):
        image = apply_L(mu, Polynomial.monomial(alpha))
        for a, c in image.terms.items():
            matrix[index[a]][j] = c
    return monomials, matrix


def _matmul(a: list[list[Fraction]], b: list[list[Fraction]]) -> list[list[Fraction]]:
    return [
        [sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in zip(*b)]
        for row in a
    ]


@dataclass
class QuadraticDefectReport:
    """Exact eigenstructure of L_(-2) on the planar quadratics.

    The eigenvalue 0 has algebraic multiplicity 4 on polynomials of degree
    <= 2 in two variables but only 3 independent eigenfunctions, so one
    quadratic (the radial direction) is missed; together with the two
    degree-1 eigenfunctions the eigenfunctions span a 5-dimensional
    subspace of the 6-dimensional quadratics.
    """

    eigenvalue_degree2: Fraction
    annihilated: list[str]
    kernel_dim: int
    generalized_kernel_dim: int
    eigenfunction_span_dim: int
    space_dim: int
    kernel_radial_free: bool

    @property
    def missing(self) -> int:
        return self.space_dim - self.eigenfunction_span_dim

    @property
    def passed(self) -> bool:
        return (
            self.eigenvalue_degree2 == 0
            and len(self.annihilated) == 3
            and self.kernel_dim == 3
            and self.generalized_kernel_dim == 4
            and self.missing == 1
            and self.kernel_radial_free
        )

    def to_json_dict(self) -> dict:
        return {
            "claim": "the planar k=2 operator misses exactly one quadratic",
            "parameters": {"d": 2, "k": 2, "degree": 2},
            "pass": self.passed,
            "witnesses": [
                {
                    "eigenvalue_degree2": format_rational(self.eigenvalue_degree2),
                    "annihilated": self.annihilated,
                    "kernel_dim": self.kernel_dim,
                    "generalized_kernel_dim": self.generalized_kernel_dim,
                    "eigenfunction_span_dim": self.eigenfunction_span_dim,
                    "space_dim": self.space_dim,
                    "missing": self.missing,
                }
            ],
        }


def quadratic_defect_report() -> QuadraticDefectReport:
    """Exhibit the missing quadratic eigenfunction of L_(-2) in the plane.

    Checks, all exactly: the degree-2 eigenvalue vanishes; 1, x1^2 - x2^2
    and x1 x2 are annihilated; the geometric kernel on quadratics is
    3-dimensional and contains nothing with a radial component, while the
    generalized kernel is 4-dimensional; eigenfunctions of every eigenvalue
    span only a 5-dimensional subspace of the 6 quadratics.
    """
    d, mu = 2, Fraction(-2)
    x1 = Polynomial.variable(d, 1)
    x2 = Polynomial.variable(d, 2)
    annihilated = []
    for p in (Polynomial.constant(d, 1), x1 * x1 - x2 * x2, x1 * x2):
        if not apply_L(mu, p):
            annihilated.append(str(p))

    monomials, matrix = operator_matrix(mu, d, 2)
    kernel = _nullspace(matrix)

    # kernel of stabilized powers of L = generalized eigenspace of 0
    power = matrix
    generalized = kernel
    while True:
        power = _matmul(power, matrix)
        bigger = _nullspace(power)
        if len(bigger) == len(generalized):
            break
        generalized = bigger

    # span of eigenfunctions across all eigenvalues of L on quadratics
    eigen_span: list[list[Fraction]] = []
    for n in range(3):
        lam = eigenvalue(n, mu, d)
        shifted = [
            [matrix[i][j] - (lam if i == j else 0) for j in range(len(monomials))]
            for i in range(len(monomials))
        ]
        eigen_span.extend(_nullspace(shifted))
    rank = len(eigen_span) - len(_nullspace_rows(eigen_span))

    # no kernel element carries the radial direction x1^2 + x2^2: the
    # coefficients of x1^2 and x2^2 must cancel
    i_x2 = monomials.index((2, 0))
    i_y2 = monomials.index((0, 2))
    radial_free = all(vec[i_x2] + vec[i_y2] == 0 for vec in kernel)

    return QuadraticDefectReport(
        eigenvalue_degree2=eigenvalue(2, mu, d),
        annihilated=annihilated,
        kernel_dim=len(kernel),
        generalized_kernel_dim=len(generalized),
        eigenfunction_span_dim=rank,
        space_dim=total_dim(d, 2),
        kernel_radial_free=radial_free,
    )


def _nullspace_rows(vectors: list[list[Fraction]]) -> list[list[Fraction]]:
    """Kernel of the row span (dependencies among the given vectors)."""
    if not vectors:
        return []
    transposed = [list(col) for col in zip(*vectors)]
    return _nullspace(transposed)


def harmonic_eigen_check(d: int, n: int, mu: Scalar) -> bool:
    """Every degree-n harmonic satisfies L_mu Y = -n(n+2mu+d) Y exactly."""
    lam = eigenvalue(n, mu, d)
    return all(
        not (apply_L(mu, y) - y.scale(lam)) for y in harmonic_basis(d, n).elements
    )


def star_middle_shell_restriction_check(family: BasisFamily) -> bool:
    """The middle-shell radial derivative restricts to -4d/(2n-6+d) times
    the underlying harmonic.

    For the k=2 eigenfunction family of degree n, the shell-1 elements are
    Z = [(1-|x|^2) + c] Y with c = 1/(n-3+d/2); on the sphere Z restricts
    to c Y, so the radial part of Z must restrict to ((2n-6-d)c - 2) / c
    times the restriction of Z.  Verified exactly through sphere norms.
    """
    n, d = family.degree, family.dimension
    c = Fraction(2, 2 * n - 6 + d)
    rho = (2 * n - 6 - d) * c - 2  # = -4d/(2n-6+d)
    for e in family.elements:
        if e.shell != 1:
            continue
        # radial part minus (rho/c) * Z must vanish on the sphere
        defect = star_radial_part(e.poly, n) - e.poly.scale(rho / c)
        if not sphere_restricts_to_zero(defect):
            return False
    return True
