"""Grade padding and the odd-grade skew-symmetric strong linearization.

An m x m skew-symmetric polynomial of odd grade d linearizes into an md x md
skew-symmetric pencil with a fixed block template: odd diagonal block
positions carry x*A_{d-i+1} + A_{d-i}, even diagonal positions are zero, and
consecutive blocks are coupled by -I/+I (odd rows) or -xI/+xI (even rows).
The pencil keeps the finite and infinite elementary divisors of the
polynomial and shifts every minimal index up by (d-1)/2. No such skew
template exists for even grade; even-grade inputs must be padded to grade
d+1 first, which shifts the infinite multiplicities up by one and leaves
everything else alone.
"""

from __future__ import annotations

from dataclasses import dataclass

from .eigenstructure import CompleteEigenstructure, analyze
from .errors import EvenGrade, InternalInconsistency, ParamDomain, ShapeMismatch
from .exact import (
    MatrixPolynomial,
    RationalPolynomial,
    SkewMatrixPolynomial,
    as_skew,
    normal_rank,
)

_X = RationalPolynomial.variable()
_ONE = RationalPolynomial.one()
_ZERO = RationalPolynomial.zero()


def pad_grade(P: SkewMatrixPolynomial) -> SkewMatrixPolynomial:
    """Entrywise identical polynomial with the declared grade raised by one."""
    skew = as_skew(P)
    return skew.with_grade(skew.grade + 1)


@dataclass(frozen=True)
class GsylPencil:
    """A pencil in the image of the odd-grade linearization template."""

    m: int
    d: int
    pencil: SkewMatrixPolynomial
    source: SkewMatrixPolynomial

    @property
    def size(self) -> int:
        return self.m * self.d


def build_linearization(P: SkewMatrixPolynomial, grade: int | None = None) -> GsylPencil:
    """Assemble the (md) x (md) skew strong linearization of an odd-grade P.

    For d == 1 the polynomial is its own linearization. Even grades are a
    hard error: pad first (the grade choice is part of the problem statement,
    so silent padding would silently change the structure at infinity).
    """
    skew = as_skew(P)
    if grade is not None and grade != skew.grade:
        skew = skew.with_grade(grade)
    d = skew.grade
    if d < 1 or d % 2 == 0:
        raise EvenGrade(f"linearization template needs odd grade, got {d}")
    m = skew.rows
    if d == 1:
        return GsylPencil(m=m, d=1, pencil=skew, source=skew)
    coeff = skew.coefficient_matrices()
    n = m * d
    grid = [[_ZERO] * n for _ in range(n)]

    def put(bi, bj, i, j, value):
        grid[bi * m + i][bj * m + j] = value

    for b in range(1, d + 1):  # template block row/column, 1-based
        if b % 2 == 1:
            hi = coeff[d - b + 1]
            lo = coeff[d - b]
            for i in range(m):
                for j in range(m):
                    p = RationalPolynomial((lo[i][j], hi[i][j]))
                    if not p.is_zero():
                        put(b - 1, b - 1, i, j, p)
        if b < d:
            # coupling between block b and b+1
            off = -_ONE if b % 2 == 1 else RationalPolynomial((0, -1))
            for i in range(m):
                put(b - 1, b, i, i, off)
                put(b, b - 1, i, i, -off)
    pencil = SkewMatrixPolynomial(grid, grade=1)
    return GsylPencil(m=m, d=d, pencil=pencil, source=skew)


def gsyl_membership(Q: MatrixPolynomial, m: int, d: int) -> bool:
    """Whether Q matches the linearization template for some coefficients.

    Checks the fixed +-I/+-xI couplings, the zero blocks, and skewness of the
    free diagonal blocks; the template determines the coefficients uniquely,
    so membership plus extraction is exactly an inverse of assembly.
    """
    if d < 1 or d % 2 == 0:
        raise EvenGrade(f"template space is defined for odd grades, got {d}")
    if Q.rows != m * d or Q.cols != m * d:
        raise ShapeMismatch(f"expected {m * d} x {m * d}, got {Q.rows} x {Q.cols}")
    if Q.grade != 1 or not Q.is_skew_symmetric():
        return False
    if d == 1:
        return True

    def block(bi, bj):
        return [[Q.entries[bi * m + i][bj * m + j] for j in range(m)] for i in range(m)]

    for bi in range(d):
        for bj in range(d):
            sub = block(bi, bj)
            if bi == bj:
                if bi % 2 == 1 and any(not e.is_zero() for row in sub for e in row):
                    return False
                # even-position diagonal blocks are free skew pencils, covered
                # by the overall skewness check
            elif abs(bi - bj) == 1:
                lower = min(bi, bj)
                expected_upper = -_ONE if lower % 2 == 0 else RationalPolynomial((0, -1))
                want = expected_upper if bj > bi else -expected_upper
                for i in range(m):
                    for j in range(m):
                        target = want if i == j else _ZERO
                        if sub[i][j] != target:
                            return False
            else:
                if any(not e.is_zero() for row in sub for e in row):
                    return False
    return True


def coefficients_from_gsyl(Q: MatrixPolynomial, m: int, d: int) -> SkewMatrixPolynomial:
    """Recover the source polynomial from a template pencil."""
    if not gsyl_membership(Q, m, d):
        raise ShapeMismatch("pencil does not match the linearization template")
    if d == 1:
        return as_skew(Q).with_grade(1)
    coeff = [[[None] * m for _ in range(m)] for _ in range(d + 1)]
    for b in range(1, d + 1, 2):
        for i in range(m):
            for j in range(m):
                e = Q.entries[(b - 1) * m + i][(b - 1) * m + j]
                coeff[d - b + 1][i][j] = e.coefficient(1)
                coeff[d - b][i][j] = e.coefficient(0)
    return SkewMatrixPolynomial.from_upper(
        m,
        {
            (i, j): RationalPolynomial([coeff[k][i][j] for k in range(d + 1)])
            for i in range(m)
            for j in range(i + 1, m)
        },
        grade=d,
    )


@dataclass(frozen=True)
class ShiftReport:
    """Eigenstructure comparison between a polynomial and its linearization."""

    base: CompleteEigenstructure
    linearized: CompleteEigenstructure
    shift: int
    minimal_ok: bool
    finite_ok: bool
    infinite_ok: bool
    rank_ok: bool

    @property
    def all_ok(self) -> bool:
        return self.minimal_ok and self.finite_ok and self.infinite_ok and self.rank_ok


def verify_shift(P: SkewMatrixPolynomial, grade: int | None = None) -> ShiftReport:
    """Check the strong-linearization contracts on an odd-grade polynomial.

    The linearized pencil must keep the finite elementary divisors and the
    nonzero infinite multiplicities, shift every minimal index by (d-1)/2,
    and satisfy rank(pencil) = rank(P) + m(d-1).
    """
    skew = as_skew(P)
    if (grade if grade is not None else skew.grade) < 3:
        raise ParamDomain("shift verification needs odd grade >= 3")
    lin = build_linearization(skew, grade)
    d, m = lin.d, lin.m
    base = analyze(lin.source)
    linearized = analyze(lin.pencil, 1)
    shift = (d - 1) // 2
    expected_minimal = tuple(sorted(e + shift for e in base.right_minimal))
    rank_expected = base.rank + m * (d - 1)
    # zero multiplicities pad to rank on both sides, so compare nonzero parts
    base_inf = tuple(v for v in base.infinite if v)
    lin_inf = tuple(v for v in linearized.infinite if v)
    report = ShiftReport(
        base=base,
        linearized=linearized,
        shift=shift,
        minimal_ok=(
            linearized.right_minimal == expected_minimal
            and linearized.left_minimal == expected_minimal
        ),
        finite_ok=linearized.finite == base.finite,
        infinite_ok=lin_inf == base_inf,
        rank_ok=linearized.rank == rank_expected,
    )
    if not report.all_ok:
        raise InternalInconsistency(f"linearization contract violated: {report}")
    return report


def linearization_rank(P: SkewMatrixPolynomial, grade: int | None = None) -> tuple:
    """(rank of the linearized pencil, rank of P); differ by m*(d-1)."""
    lin = build_linearization(P, grade)
    return normal_rank(lin.pencil), normal_rank(lin.source)
