"""Orbit codimensions of skew-symmetric pencils, three independent ways.

The congruence orbit of an n x n skew pencil is a manifold inside the
n(n-1)-dimensional space of skew pencils; its codimension can be computed

* from the block structure (direct sums of M blocks and size-1 K blocks
  only, the fragment the generic structures live in),
* from closed forms in the defining parameters, and
* from the exact rank of the tangent map X -> (X^T A + A X, X^T B + B X),

and the three must agree. For polynomials of even grade the orbit
codimension is defined through the linearization of the one-grade padding,
which fixes the leading coefficient to zero; dropping that coefficient
block accounts for the m(m-1)/2 offset between the template-space and
polynomial-space codimensions.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .blocks import BlockList, assemble_skew
from .errors import (
    FlavorMismatch,
    InternalInconsistency,
    NotSkewSymmetric,
    ParamDomain,
    UnsupportedBlocks,
)
from .exact import MatrixPolynomial, rank_exact
from .generic import PencilGenericParams, PolyGenericParams, generic_pencil_structure


@dataclass(frozen=True)
class CodimReport:
    """One codimension value, tagged with its ambient space and method."""

    space: str  # e.g. "PEN_skew(9)", "GSYL(3,3)", "POL(3,2)"
    value: int
    method: str  # "blocksum" | "closed_form" | "tangent_rank"


def codim_blocksum(blocklist: BlockList) -> int:
    """Codimension of a congruence orbit from its blocks (M and K_1 only).

    Sum of three parts: the K_1 blocks contribute r(2r-1), their interaction
    with the M blocks contributes 2r per M block, and each pair of M blocks
    of sizes a, b contributes 2*max(a, b) plus 2 if a == b else 1. Anything
    beyond this fragment (H blocks, larger K blocks) is unsupported by
    design rather than silently extrapolated.
    """
    if blocklist.flavor != "skew":
        raise FlavorMismatch("codim_blocksum needs a skew block list")
    r = 0
    m_sizes = []
    for b in blocklist.blocks:
        if b.kind == "K":
            if b.index != 1:
                raise UnsupportedBlocks(f"K_{b.index} outside the implemented fragment")
            r += 1
        elif b.kind == "M":
            m_sizes.append(b.index)
        else:
            raise UnsupportedBlocks(f"{b} outside the implemented fragment")
    total = r * (2 * r - 1) + 2 * r * len(m_sizes)
    for i in range(len(m_sizes)):
        for j in range(i + 1, len(m_sizes)):
            a, b = m_sizes[i], m_sizes[j]
            total += 2 * max(a, b) + (2 if a == b else 1)
    return total


def codim_pencil_closed(n: int, w: int, r: int) -> int:
    """Closed-form codimension of the generic rank-2w pencil orbit."""
    PencilGenericParams.validate(n, w, r)
    return (n - 2 * w - 1) * (n - w - r) + 2 * r * (n - 2 * w) + r * (2 * r - 1)


class PolyCodim(NamedTuple):
    """Polynomial-orbit codimension plus the template-space intermediate."""

    value: int
    gsyl: int


def codim_poly_generic(m: int, d: int, r: int) -> PolyCodim:
    """Closed-form codimension of the generic bounded-rank polynomial orbit.

    The value (m - 2r - 1)(md + m - 2r)/2 is grade-parity independent. The
    intermediate is the codimension of the linearized orbit in its pencil
    template space: for even d (linearize the padding) it exceeds the value
    by m(m-1)/2; for odd d (linearize directly) it equals the value. Both
    are cross-checked against the pencil closed form.
    """
    PolyGenericParams.validate(m, d, r)
    value = (m - 2 * r - 1) * (m * d + m - 2 * r) // 2
    if d % 2 == 0:
        gsyl = value + m * (m - 1) // 2
        pencil = codim_pencil_closed(m * (d + 1), (m * d + 2 * r) // 2, r)
    else:
        # odd grades linearize directly; the generic polynomial has degree
        # exactly d, so its linearization carries no blocks at infinity
        gsyl = value
        pencil = codim_pencil_closed(m * d, r + m * (d - 1) // 2, 0)
    if gsyl != pencil:
        raise InternalInconsistency(
            f"template codimension {gsyl} disagrees with pencil closed form {pencil}"
        )
    return PolyCodim(value=value, gsyl=gsyl)


def tangent_map_matrix(pencil: MatrixPolynomial) -> list:
    """Matrix of X -> (X^T C_0 + C_0 X, X^T C_1 + C_1 X) on strict uppers.

    Rows: both skew outputs, upper triangles flattened; columns: the n^2
    entries of X. The orbit dimension is the rank of this map.
    """
    n = pencil.rows
    parts = [pencil.coefficient_matrix(0), pencil.coefficient_matrix(1)]
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    rows = []
    for C in parts:
        for i, j in pairs:
            row = [0] * (n * n)
            for p in range(n):
                # d/dX[p][q] of (X^T C + C X)[i][j] = [q==i] C[p][j] + [q==j] C[i][p]
                row[p * n + i] += C[p][j]
                row[p * n + j] += C[i][p]
            rows.append(row)
    return rows


def codim_tangent(pencil: MatrixPolynomial, size_limit: int | None = 24) -> int:
    """Exact congruence-orbit codimension via the tangent-map rank.

    The representation matrix has n(n-1) x n^2 rational entries, so this is
    a desk-scale verification tool; the default size guard keeps accidental
    large inputs from hanging (pass size_limit=None to override).
    """
    if not pencil.is_skew_symmetric():
        raise NotSkewSymmetric("tangent codimension is defined for skew pencils")
    if pencil.grade > 1:
        raise ParamDomain("tangent codimension applies to pencils (grade 1)")
    n = pencil.rows
    if size_limit is not None and n > size_limit:
        raise ParamDomain(f"pencil size {n} exceeds the tangent-rank guard {size_limit}")
    ambient = n * (n - 1)
    if n == 0:
        return 0
    return ambient - rank_exact(tangent_map_matrix(pencil))


def pencil_codim_reports(n: int, w: int, r: int, via_tangent: bool = False) -> list:
    """Blocksum / closed-form (and optionally tangent) reports for (n, w, r)."""
    structure = generic_pencil_structure(n, w, r)
    space = f"PEN_skew({n})"
    reports = [
        CodimReport(space=space, value=codim_blocksum(structure), method="blocksum"),
        CodimReport(space=space, value=codim_pencil_closed(n, w, r), method="closed_form"),
    ]
    if via_tangent:
        value = codim_tangent(assemble_skew(structure))
        reports.append(CodimReport(space=space, value=value, method="tangent_rank"))
    return reports


def poly_codim_reports(m: int, d: int, r: int) -> list:
    """Polynomial-space and template-space closed-form reports."""
    pc = codim_poly_generic(m, d, r)
    gsyl_grade = d + 1 if d % 2 == 0 else d
    return [
        CodimReport(space=f"POL({m},{d})", value=pc.value, method="closed_form"),
        CodimReport(space=f"GSYL({m},{gsyl_grade})", value=pc.gsyl, method="closed_form"),
    ]


@dataclass(frozen=True)
class TangentBlockReport:
    """Outcome of the leading-block inspection of the linearized tangent space."""

    m: int
    d: int
    r: int
    basis_checked: int
    all_leading_blocks_zero: bool


def gsyl0_tangent_claim(m: int, d: int, r: int, seed: int = 20240817) -> TangentBlockReport:
    """Verify the structural fact behind the even-grade codimension count.

    Linearize the one-grade padding of a sampled generic polynomial and check
    that every tangent-space generator X^T F + F X has an identically zero
    m x m block in the (1,1) position of its leading coefficient: the block
    there is built from the padded (zero) leading coefficient, so the
    tangent space never leaves the zero-leading-block slice.
    """
    if d % 2:
        raise ParamDomain("the padded-linearization claim targets even grades")
    PolyGenericParams.validate(m, d, r)
    from .linearize import build_linearization, pad_grade
    from .sampling import SampleSpec, sample_bounded_rank

    sample = sample_bounded_rank(SampleSpec(m=m, d=d, r=r, seed=seed))
    pencil = build_linearization(pad_grade(sample)).pencil
    n = pencil.rows
    A = pencil.coefficient_matrix(1)
    checked = 0
    for p in range(n):
        for q in range(n):
            # leading block of X^T A + A X for X = E_pq has entries
            # (i, j < m): [i==q] A[p][j] + [j==q] A[i][p]; the (q, q) entry
            # cancels by skewness, every other one is a single term
            if q < m:
                if any(A[p][j] for j in range(m) if j != q) or any(
                    A[i][p] for i in range(m) if i != q
                ):
                    return TangentBlockReport(m, d, r, checked, False)
            checked += 1
    return TangentBlockReport(m, d, r, checked, True)
