"""Generic eigenstructures of bounded-rank skew-symmetric pencils and polynomials.

For pencils: among n x n skew-symmetric pencils of rank at most 2w carrying
exactly r blocks at infinity, the most generic one is a direct sum of M
blocks of two adjacent sizes plus r smallest K blocks; every other such
pencil lies in the closure of its congruence orbit.

For polynomials: among m x m skew-symmetric polynomials of grade d and rank
at most 2r, the generic complete eigenstructure has no elementary divisors
at all and carries m - 2r left (= right) minimal indices as equal as
possible, summing to r*d per side. The same formula serves every grade
parity; evenness only matters downstream, where verification must pad by one
grade before linearizing.

`structure_consistency` checks the arithmetic identities tying the two
pictures together through the grade-(d+1) linearization of the padded
generic polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass

from .blocks import BlockList, GeneralBlock, SkewBlock, skew_to_general
from .eigenstructure import CompleteEigenstructure
from .errors import ParamDomain


@dataclass(frozen=True)
class PencilGenericParams:
    """Validated (n, w, r) with the derived block size alpha and count split s."""

    n: int
    w: int
    r: int
    alpha: int
    s: int

    @classmethod
    def validate(cls, n: int, w: int, r: int) -> "PencilGenericParams":
        if n < 2:
            raise ParamDomain(f"pencil size n={n} must be at least 2")
        if not 2 <= 2 * w <= n - 1:
            raise ParamDomain(f"half-rank w={w} must satisfy 2 <= 2w <= n-1={n - 1}")
        if not 0 <= r <= w:
            raise ParamDomain(f"block count r={r} must satisfy 0 <= r <= w={w}")
        alpha, s = divmod(w - r, n - 2 * w)
        return cls(n=n, w=w, r=r, alpha=alpha, s=s)


@dataclass(frozen=True)
class PolyGenericParams:
    """Validated (m, d, r) with the derived index size beta and count split t."""

    m: int
    d: int
    r: int
    beta: int
    t: int

    @classmethod
    def validate(cls, m: int, d: int, r: int) -> "PolyGenericParams":
        if m < 2:
            raise ParamDomain(f"size m={m} must be at least 2")
        if d < 1:
            raise ParamDomain(f"grade d={d} must be at least 1")
        if not 2 <= 2 * r <= m - 1:
            raise ParamDomain(
                f"half-rank r={r} must satisfy 2 <= 2r <= m-1={m - 1} "
                "(full-rank polynomials have no bounded-rank generic structure)"
            )
        beta, t = divmod(r * d, m - 2 * r)
        return cls(m=m, d=d, r=r, beta=beta, t=t)


def generic_pencil_structure(n: int, w: int, r: int) -> BlockList:
    """Most generic skew pencil: rank 2w, exactly r infinite blocks, size n."""
    p = PencilGenericParams.validate(n, w, r)
    blocks = [SkewBlock.m(p.alpha + 1)] * p.s
    blocks += [SkewBlock.m(p.alpha)] * (n - 2 * w - p.s)
    blocks += [SkewBlock.k(1)] * r
    out = BlockList.skew(blocks)
    assert out.total_rows == n and out.rank == 2 * w
    return out


def generic_poly_structure(m: int, d: int, r: int) -> CompleteEigenstructure:
    """Generic complete eigenstructure at size m, grade d, rank 2r.

    No elementary divisors; t minimal indices equal to beta+1 and m-2r-t
    equal to beta on each side, with beta, t = divmod(r*d, m-2r).
    """
    p = PolyGenericParams.validate(m, d, r)
    minimal = [p.beta + 1] * p.t + [p.beta] * (m - 2 * r - p.t)
    assert sum(minimal) == r * d
    return CompleteEigenstructure.build(
        rows=m,
        cols=m,
        grade=d,
        rank=2 * r,
        finite={},
        infinite=[0] * (2 * r),
        left_minimal=minimal,
        right_minimal=minimal,
    )


def padded_infinite_structure(m: int, d: int, r: int) -> tuple:
    """Infinite multiplicities of the generic polynomial after one grade pad.

    Padding turns the 2r zero multiplicities into 2r ones (the padded leading
    coefficient is zero, so every multiplicity shifts up by one).
    """
    if d % 2:
        raise ParamDomain("padding verification targets even grades")
    PolyGenericParams.validate(m, d, r)
    return (1,) * (2 * r)


@dataclass(frozen=True)
class ConsistencyReport:
    """Arithmetic identities linking polynomial and pencil generic structures."""

    poly: PolyGenericParams
    pencil: PencilGenericParams
    eta: int
    sizes_match: bool  # beta + d/2 == alpha
    counts_match: bool  # t == s
    remainders_match: bool  # m - 2r - t == n - 2w - s
    blocklists_match: bool

    @property
    def all_match(self) -> bool:
        return (
            self.sizes_match
            and self.counts_match
            and self.remainders_match
            and self.blocklists_match
        )


def linearized_generic_blocklist(m: int, d: int, r: int) -> BlockList:
    """KCF expected for the linearized padding of the generic polynomial.

    Shift every minimal index of the generic grade-d structure by eta = d/2
    (once per side) and append 2r infinite blocks of size 1.
    """
    p = PolyGenericParams.validate(m, d, r)
    if d % 2:
        raise ParamDomain("linearized comparison needs even grade")
    eta = d // 2
    structure = generic_poly_structure(m, d, r)
    blocks = [GeneralBlock.right(e + eta) for e in structure.right_minimal]
    blocks += [GeneralBlock.left(e + eta) for e in structure.left_minimal]
    blocks += [GeneralBlock.infinite(1)] * (2 * r)
    return BlockList.general(blocks)


def structure_consistency(m: int, d: int, r: int) -> ConsistencyReport:
    """Verify the identities tying the generic polynomial to the generic pencil.

    With n = m(d+1) and w = (md + 2r)/2, checks beta + d/2 == alpha, t == s,
    m - 2r - t == n - 2w - s, and that unfolding the generic pencil gives
    exactly the shifted-index block list of the linearized padded polynomial.
    """
    if d % 2:
        raise ParamDomain("consistency check applies to even grades")
    poly = PolyGenericParams.validate(m, d, r)
    n = m * (d + 1)
    w = (m * d + 2 * r) // 2
    pencil = PencilGenericParams.validate(n, w, r)
    eta = d // 2
    expected = linearized_generic_blocklist(m, d, r)
    actual = skew_to_general(generic_pencil_structure(n, w, r))
    return ConsistencyReport(
        poly=poly,
        pencil=pencil,
        eta=eta,
        sizes_match=poly.beta + eta == pencil.alpha,
        counts_match=poly.t == pencil.s,
        remainders_match=(m - 2 * r - poly.t) == (n - 2 * w - pencil.s),
        blocklists_match=expected == actual,
    )
