"""Complete eigenstructure extraction for skew-symmetric matrix polynomials.

The complete eigenstructure of a polynomial at a declared grade consists of
its rank, finite elementary divisors (as irreducible rational factors with
partial multiplicities), partial multiplicities at infinity, and left/right
minimal indices. Everything here is computed in exact rational arithmetic.

Minimal indices and local multiplicities both come from kernel dimensions of
banded block-Toeplitz systems (convolution matrices). Rather than eliminating
the full dense matrices, `_Staircase` walks the band incrementally, carrying
only the subspace of admissible trailing coefficient blocks; the dense
matrices remain available through `convolution_matrix` for cross-checking.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .errors import GradeTooSmall, InternalInconsistency, ZeroRank
from .exact import (
    NEG_INF,
    MatrixPolynomial,
    RationalPolynomial,
    as_skew,
    normal_rank,
    nullspace_exact,
    rev,
    skew_smith,
)
from .points import eigenvalue_sort_key


def _finite_sort_key(factor):
    if isinstance(factor, RationalPolynomial):
        return (0,) + factor.sort_key()
    return (1,) + eigenvalue_sort_key(factor)


@dataclass(frozen=True)
class CompleteEigenstructure:
    """Rank, elementary divisors, and minimal indices at a fixed grade.

    ``finite`` maps each irreducible factor (monic RationalPolynomial over
    the rationals, or a SymbolicPoint tag) to its sorted tuple of positive
    partial multiplicities. ``infinite`` lists partial multiplicities at
    infinity including zeros, padded to length ``rank``. Minimal index lists
    are sorted ascending.
    """

    rows: int
    cols: int
    grade: int
    rank: int
    finite: tuple
    infinite: tuple
    left_minimal: tuple
    right_minimal: tuple

    @classmethod
    def build(cls, rows, cols, grade, rank, finite, infinite, left_minimal, right_minimal):
        """Canonicalize fields (sorting) and construct."""
        finite_items = tuple(
            sorted(
                ((factor, tuple(sorted(mults))) for factor, mults in dict(finite).items()),
                key=lambda item: _finite_sort_key(item[0]),
            )
        )
        return cls(
            rows=rows,
            cols=cols,
            grade=grade,
            rank=rank,
            finite=finite_items,
            infinite=tuple(sorted(infinite)),
            left_minimal=tuple(sorted(left_minimal)),
            right_minimal=tuple(sorted(right_minimal)),
        )

    @property
    def size(self) -> int:
        if self.rows != self.cols:
            raise ValueError("size is defined for square polynomials only")
        return self.rows

    def finite_map(self) -> dict:
        return dict(self.finite)

    def has_elementary_divisors(self) -> bool:
        return bool(self.finite) or any(self.infinite)

    def index_sums(self) -> tuple:
        """(finite degree sum, infinite sum, left sum, right sum)."""
        finite_total = 0
        for factor, mults in self.finite:
            deg = factor.degree if isinstance(factor, RationalPolynomial) else 1
            finite_total += int(deg) * sum(mults)
        return (
            finite_total,
            sum(self.infinite),
            sum(self.left_minimal),
            sum(self.right_minimal),
        )

    def to_json_dict(self) -> dict:
        from .points import format_eigenvalue

        finite = []
        for factor, mults in self.finite:
            if isinstance(factor, RationalPolynomial):
                key = [f"{c.numerator}/{c.denominator}" for c in factor.coeffs]
            else:
                key = format_eigenvalue(factor)
            finite.append({"factor": key, "multiplicities": list(mults)})
        return {
            "size": self.size,
            "grade": self.grade,
            "rank": self.rank,
            "finite": finite,
            "infinite": list(self.infinite),
            "left_minimal": list(self.left_minimal),
            "right_minimal": list(self.right_minimal),
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "CompleteEigenstructure":
        from .points import parse_eigenvalue

        finite = {}
        for item in data["finite"]:
            key = item["factor"]
            if isinstance(key, list):
                factor = RationalPolynomial([Fraction(c) for c in key])
            else:
                factor = parse_eigenvalue(key)
            finite[factor] = tuple(item["multiplicities"])
        return cls.build(
            rows=data["size"],
            cols=data["size"],
            grade=data["grade"],
            rank=data["rank"],
            finite=finite,
            infinite=data["infinite"],
            left_minimal=data["left_minimal"],
            right_minimal=data["right_minimal"],
        )


def same_orbit(first: CompleteEigenstructure, second: CompleteEigenstructure) -> bool:
    """Structural equality of complete eigenstructures (grade-aware)."""
    return first == second


@dataclass(frozen=True)
class ConvolutionProfile:
    """Kernel dimensions of the order-k convolution matrices, k = 0, 1, ..."""

    kernel_dims: tuple

    def __post_init__(self):
        dims = self.kernel_dims
        diffs = [b - a for a, b in zip((0,) + dims, dims)]
        if any(d2 < d1 for d1, d2 in zip(diffs, diffs[1:])):
            raise InternalInconsistency("convolution kernel profile is not convex")


def convolution_matrix(P: MatrixPolynomial, order: int) -> list:
    """Dense order-k convolution matrix of P, as rows of Fractions.

    Maps the stacked coefficients of a degree <= order vector polynomial x to
    the stacked coefficients of P @ x (degrees 0 .. grade + order).
    """
    coeffs = P.coefficient_matrices()
    n_rows = (P.grade + order + 1) * P.rows
    n_cols = (order + 1) * P.cols
    zero = Fraction(0)
    out = [[zero] * n_cols for _ in range(n_rows)]
    for col_block in range(order + 1):
        for d, C in enumerate(coeffs):
            base_r = (col_block + d) * P.rows
            base_c = col_block * P.cols
            for i in range(P.rows):
                row = out[base_r + i]
                ci = C[i]
                for j in range(P.cols):
                    row[base_c + j] = ci[j]
    return out


# ---------------------------------------------------------------------------
# banded staircase over the convolution system
# ---------------------------------------------------------------------------


def _integer_coefficient_matrices(P: MatrixPolynomial) -> list:
    """Trimmed coefficient matrices scaled to a common integer grid.

    Scaling by the global lcm of denominators leaves every kernel unchanged.
    """
    deg = P.degree
    if deg is NEG_INF:
        return []
    mats = [P.coefficient_matrix(k) for k in range(int(deg) + 1)]
    scale = 1
    for mat in mats:
        for row in mat:
            for v in row:
                scale = scale * v.denominator // math.gcd(scale, v.denominator)
    return [[[int(v * scale) for v in row] for row in mat] for mat in mats]


def _mat_times_vec(mat, vec):
    return tuple(sum(m * v for m, v in zip(row, vec)) for row in mat)


def _strip_content(vec):
    g = 0
    for v in vec:
        g = math.gcd(g, v)
        if g == 1:
            return vec
    if g <= 1:
        return vec
    return tuple(v // g for v in vec)


def _row_space_basis(vectors) -> list:
    """Integer echelon basis of the span of the given integer vectors."""
    basis = []  # list of (pivot_index, row)
    for vec in vectors:
        row = list(vec)
        for piv, brow in basis:
            if row[piv]:
                f, b = row[piv], brow[piv]
                row = [b * r - f * s for r, s in zip(row, brow)]
        piv = next((i for i, v in enumerate(row) if v), None)
        if piv is not None:
            basis.append((piv, list(_strip_content(tuple(row)))))
    return [tuple(row) for _, row in basis]


def _int_rank(matrix) -> int:
    from .exact import rank_exact

    return rank_exact(matrix)


class _Staircase:
    """Incremental kernel profile of the banded convolution system of P.

    At stage k the object knows the space S_k of coefficient tuples
    (x_0, ..., x_k) satisfying the first k+1 block rows of the convolution
    system, represented by the projection of S_k onto its trailing degree
    window (the last `deg` coefficient blocks) plus the dimension of the
    projection's fibers. From that, both dim S_k and dim ker C_k are cheap.
    Requires deg >= 1; callers special-case constant and zero polynomials.
    """

    def __init__(self, coeffs, n_cols):
        self.coeffs = coeffs
        self.delta = len(coeffs) - 1
        self.n_cols = n_cols
        if self.delta < 1:
            raise ValueError("staircase needs degree >= 1")
        # tail window: (x_{k-delta+1}, ..., x_k), earlier blocks zero-padded
        kernel0 = nullspace_exact(coeffs[0])
        pad = (0,) * ((self.delta - 1) * n_cols)
        self.tail_basis = [pad + v for v in kernel0]
        self.fiber_dim = 0
        self.stage = 0

    def prefix_dim(self) -> int:
        """dim S_k: solutions of the leading block rows only."""
        return self.fiber_dim + len(self.tail_basis)

    def kernel_dim(self) -> int:
        """dim ker C_k: prefix solutions that also satisfy the trailing rows."""
        if not self.tail_basis:
            return self.fiber_dim
        closing = [self._closing_rows(v) for v in self.tail_basis]
        cols = list(zip(*closing))  # transpose: rows of the small system
        return self.fiber_dim + len(self.tail_basis) - _int_rank(cols)

    def _closing_rows(self, tail):
        """Stacked block rows k+1 .. k+delta applied to a tail vector."""
        n, delta = self.n_cols, self.delta
        blocks = [tail[u * n : (u + 1) * n] for u in range(delta)]
        out = []
        for m in range(1, delta + 1):
            acc = [0] * len(self.coeffs[0])
            for u in range(m, delta + 1):
                C = self.coeffs[m + delta - u]
                vec = blocks[u - 1]
                for i, row in enumerate(C):
                    acc[i] += sum(c * v for c, v in zip(row, vec))
            out.extend(acc)
        return tuple(out)

    def advance(self):
        """Move from stage k to k+1 by adjoining one more coefficient block."""
        n, delta = self.n_cols, self.delta
        basis = self.tail_basis
        nb = len(basis)
        # first closing row applied to the basis, extended by P_0 on the new block
        system = []
        for i in range(len(self.coeffs[0])):
            system.append([0] * (nb + n))
        for b_idx, tail in enumerate(basis):
            blocks = [tail[u * n : (u + 1) * n] for u in range(delta)]
            acc = [0] * len(self.coeffs[0])
            for u in range(1, delta + 1):
                C = self.coeffs[1 + delta - u]
                vec = blocks[u - 1]
                for i, row in enumerate(C):
                    acc[i] += sum(c * v for c, v in zip(row, vec))
            for i, v in enumerate(acc):
                system[i][b_idx] = v
        P0 = self.coeffs[0]
        for i, row in enumerate(P0):
            for j, v in enumerate(row):
                system[i][nb + j] = v
        solutions = nullspace_exact(system)
        new_prefix_dim = self.fiber_dim + len(solutions)
        # shift the window: drop the oldest block, append the new one
        shifted = []
        for sol in solutions:
            combo = [0] * (delta * n)
            for c, tail in zip(sol[:nb], basis):
                if c:
                    for i, t in enumerate(tail):
                        combo[i] += c * t
            new_tail = tuple(combo[n:]) + tuple(sol[nb:])
            shifted.append(new_tail)
        self.tail_basis = _row_space_basis(shifted)
        self.fiber_dim = new_prefix_dim - len(self.tail_basis)
        self.stage += 1


def convolution_profile(P: MatrixPolynomial, up_to: int) -> ConvolutionProfile:
    """Kernel dimensions dim ker C_k for k = 0 .. up_to."""
    deg = P.degree
    if deg is NEG_INF:
        dims = [(k + 1) * P.cols for k in range(up_to + 1)]
        return ConvolutionProfile(tuple(dims))
    coeffs = _integer_coefficient_matrices(P)
    if len(coeffs) == 1:
        nullity = P.cols - _int_rank(coeffs[0])
        return ConvolutionProfile(tuple((k + 1) * nullity for k in range(up_to + 1)))
    stair = _Staircase(coeffs, P.cols)
    dims = [stair.kernel_dim()]
    for _ in range(up_to):
        stair.advance()
        dims.append(stair.kernel_dim())
    return ConvolutionProfile(tuple(dims))


def minimal_indices(P: MatrixPolynomial) -> tuple:
    """Right minimal indices of P, sorted ascending.

    The count of indices equal to k is the second difference of the kernel
    dimensions of the convolution matrices; the total count always equals
    cols - normal_rank(P). Left minimal indices are the right ones of the
    negated transpose (for skew-symmetric inputs that is P itself, so left
    and right coincide).
    """
    total = P.cols - normal_rank(P)
    if total == 0:
        return ()
    deg = P.degree
    if deg is NEG_INF:
        return (0,) * P.cols
    coeffs = _integer_coefficient_matrices(P)
    if len(coeffs) == 1:
        # constant matrix: every kernel vector is constant
        return (0,) * total
    stair = _Staircase(coeffs, P.cols)
    bound = (P.rows + P.cols) * max(P.grade, 1) + 1
    indices = []
    prev_dim = 0
    prev_diff = 0
    k = 0
    while True:
        dim = stair.kernel_dim()
        diff = dim - prev_dim
        indices.extend([k] * (diff - prev_diff))
        if diff == total:
            return tuple(sorted(indices))
        prev_dim, prev_diff = dim, diff
        k += 1
        if k > bound:
            raise InternalInconsistency("minimal index search exceeded its bound")
        stair.advance()


def left_minimal_indices(P: MatrixPolynomial) -> tuple:
    return minimal_indices(-P.transpose())


def multiplicities_at_zero(P: MatrixPolynomial) -> tuple:
    """Partial multiplicities of P at the point zero, padded with zeros to rank.

    Computed from the growth of the space of truncated power-series solutions
    of P x = 0 (the prefix spaces of the convolution system): with eta the
    rational kernel dimension, dim S_k grows by eta plus the number of
    multiplicities exceeding k.
    """
    rho = normal_rank(P)
    if rho == 0:
        return ()
    eta = P.cols - rho
    coeffs = _integer_coefficient_matrices(P)
    if len(coeffs) == 1:
        return (0,) * rho
    stair = _Staircase(coeffs, P.cols)
    bound = (P.rows + P.cols) * max(P.grade, 1) + 1
    counts = []  # counts[k] = number of multiplicities >= k+1
    prev = 0
    while True:
        dim = stair.prefix_dim()
        above = dim - prev - eta
        if above < 0:
            raise InternalInconsistency("negative multiplicity count at zero")
        if above == 0:
            break
        counts.append(above)
        prev = dim
        if stair.stage > bound:
            raise InternalInconsistency("multiplicity search exceeded its bound")
        stair.advance()
    mults = []
    for value in range(1, len(counts) + 1):
        upper = counts[value] if value < len(counts) else 0
        mults.extend([value] * (counts[value - 1] - upper))
    mults.extend([0] * (rho - len(mults)))
    return tuple(sorted(mults))


def infinite_structure(P: MatrixPolynomial, grade: int | None = None) -> tuple:
    """Partial multiplicities of P at infinity for the declared grade.

    These are the multiplicities at zero of the grade-reversal, with zeros
    included up to length normal_rank(P); they change when the grade does.
    """
    if grade is None:
        grade = P.grade
    deg = P.degree
    if deg is not NEG_INF and grade < deg:
        raise GradeTooSmall(f"grade {grade} < degree {deg}")
    if deg is NEG_INF:
        return ()
    return multiplicities_at_zero(rev(P, grade))


class GradeLawReport(NamedTuple):
    """Both sides of the smallest-infinite-multiplicity law."""

    gamma1: int
    grade_minus_degree: int
    leading_is_zero: bool


def smallest_infinite_multiplicity_law(
    P: MatrixPolynomial, grade: int | None = None
) -> GradeLawReport:
    """Check gamma_1 == grade - degree and its leading-coefficient corollary.

    gamma_1 is the smallest partial multiplicity at infinity; it vanishes
    exactly when the leading (grade-indexed) coefficient is nonzero.
    """
    if grade is None:
        grade = P.grade
    infinite = infinite_structure(P, grade)
    if not infinite:
        raise ZeroRank("law undefined for rank-zero polynomials")
    gamma1 = min(infinite)
    gap = grade - int(P.degree)
    leading_is_zero = gap > 0
    if gamma1 != gap or leading_is_zero != (gamma1 >= 1):
        raise InternalInconsistency(
            f"smallest infinite multiplicity {gamma1} disagrees with grade gap {gap}"
        )
    return GradeLawReport(gamma1, gap, leading_is_zero)


def _factor_rational(poly: RationalPolynomial) -> list:
    """Irreducible monic factors of a monic rational polynomial with exponents."""
    import sympy

    if poly.degree is NEG_INF or poly.degree == 0:
        return []
    lam = sympy.Symbol("_lam")
    expr = sympy.Poly(
        [sympy.Rational(c.numerator, c.denominator) for c in reversed(poly.coeffs)],
        lam,
        domain="QQ",
    )
    out = []
    for factor, exponent in expr.factor_list()[1]:
        coeffs = [Fraction(c.p, c.q) for c in reversed(factor.all_coeffs())]
        out.append((RationalPolynomial(coeffs).monic(), int(exponent)))
    return out


def analyze(P: MatrixPolynomial, grade: int | None = None) -> CompleteEigenstructure:
    """Complete eigenstructure of a skew-symmetric matrix polynomial.

    Combines the exact rank, the paired invariant polynomials (factored over
    the rationals), the structure at infinity for the declared grade, and the
    minimal indices. The pairing of all multiplicity lists, the equality of
    left and right minimal indices, and the index-sum identity
    (finite + infinite + left + right == rank * grade) are validated before
    returning; a violation raises InternalInconsistency.
    """
    skew = as_skew(P)
    if grade is not None and grade != skew.grade:
        skew = skew.with_grade(grade)
    grade = skew.grade

    rho = normal_rank(skew)
    paired = skew_smith(skew)
    if 2 * paired.rank != rho:
        raise InternalInconsistency(
            f"rank {rho} by evaluation vs {2 * paired.rank} by reduction"
        )

    finite: dict = {}
    for g in paired.invariant_polynomials:
        for factor, exponent in _factor_rational(g):
            finite.setdefault(factor, []).extend([exponent, exponent])

    infinite = infinite_structure(skew, grade)
    right = minimal_indices(skew)
    left = right  # for skew-symmetric P, -P^T == P

    structure = CompleteEigenstructure.build(
        rows=skew.rows,
        cols=skew.cols,
        grade=grade,
        rank=rho,
        finite=finite,
        infinite=infinite,
        left_minimal=left,
        right_minimal=right,
    )
    _validate_skew_structure(structure)
    return structure


def _validate_skew_structure(structure: CompleteEigenstructure):
    if structure.rank % 2:
        raise InternalInconsistency("odd rank for a skew-symmetric polynomial")
    if structure.left_minimal != structure.right_minimal:
        raise InternalInconsistency("left and right minimal indices differ")
    for label, values in (("infinite", structure.infinite),) + tuple(
        (str(factor), mults) for factor, mults in structure.finite
    ):
        if len(values) % 2:
            raise InternalInconsistency(f"unpaired {label} multiplicity list")
        for a, b in zip(values[::2], values[1::2]):
            if a != b:
                raise InternalInconsistency(f"{label} multiplicities not in pairs")
    fin, inf, left, right = structure.index_sums()
    if fin + inf + left + right != structure.rank * structure.grade:
        raise InternalInconsistency(
            f"index sums {fin}+{inf}+{left}+{right} != rank*grade "
            f"{structure.rank}*{structure.grade}"
        )
