"""Canonical blocks of matrix pencils and their skew-symmetric counterparts.

General (strict equivalence) pencils decompose into four block families:
Jordan-type blocks for finite eigenvalues, their reversal for the infinite
eigenvalue, and right/left singular blocks for the minimal indices. Under
congruence, skew-symmetric pencils decompose into paired versions of the
same data: H blocks (a finite eigenvalue, twice), K blocks (the infinite
eigenvalue, twice), and M blocks (one right plus one left minimal index).

Blocks are symbolic objects here; `assemble_general`/`assemble_skew`
materialize a block list into an exact pencil, and
`blocklist_eigenstructure` reads the complete eigenstructure straight off
the list, which is what makes cross-checks against the analysis of the
assembled pencil meaningful.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .eigenstructure import CompleteEigenstructure
from .errors import FlavorMismatch, InternalInconsistency, PairingBroken, ShapeMismatch
from .exact import MatrixPolynomial, RationalPolynomial, SkewMatrixPolynomial
from .points import (
    INFINITY,
    as_eigenvalue,
    eigenvalue_sort_key,
    format_eigenvalue,
    parse_eigenvalue,
)

GENERAL_KINDS = ("E_finite", "E_infinite", "L", "L_T")
SKEW_KINDS = ("H", "K", "M")


@dataclass(frozen=True)
class GeneralBlock:
    """One canonical block of an unstructured pencil."""

    kind: str
    index: int
    eigenvalue: object = None

    def __post_init__(self):
        if self.kind not in GENERAL_KINDS:
            raise ValueError(f"unknown general block kind {self.kind!r}")
        if self.kind in ("E_finite", "E_infinite") and self.index < 1:
            raise ValueError(f"{self.kind} blocks need index >= 1")
        if self.kind in ("L", "L_T") and self.index < 0:
            raise ValueError(f"{self.kind} blocks need index >= 0")
        if self.kind == "E_finite":
            if self.eigenvalue is None:
                raise ValueError("E_finite blocks carry an eigenvalue")
            object.__setattr__(self, "eigenvalue", as_eigenvalue(self.eigenvalue))
            if self.eigenvalue is INFINITY:
                raise ValueError("use E_infinite for the infinite eigenvalue")
        elif self.eigenvalue is not None:
            raise ValueError(f"{self.kind} blocks carry no eigenvalue")

    @classmethod
    def finite(cls, index: int, eigenvalue) -> "GeneralBlock":
        return cls("E_finite", index, eigenvalue)

    @classmethod
    def infinite(cls, index: int) -> "GeneralBlock":
        return cls("E_infinite", index)

    @classmethod
    def right(cls, index: int) -> "GeneralBlock":
        """Right-singular block: index k occupies k x (k+1)."""
        return cls("L", index)

    @classmethod
    def left(cls, index: int) -> "GeneralBlock":
        """Left-singular block: index k occupies (k+1) x k."""
        return cls("L_T", index)

    @classmethod
    def eigen(cls, index: int, point) -> "GeneralBlock":
        """Eigenvalue block for a finite point or INFINITY."""
        point = as_eigenvalue(point)
        if point is INFINITY:
            return cls.infinite(index)
        return cls.finite(index, point)

    @property
    def shape(self) -> tuple:
        k = self.index
        if self.kind == "L":
            return (k, k + 1)
        if self.kind == "L_T":
            return (k + 1, k)
        return (k, k)

    @property
    def rank(self) -> int:
        return self.index

    def sort_key(self):
        ev = self.eigenvalue
        return (
            GENERAL_KINDS.index(self.kind),
            -self.index,
            eigenvalue_sort_key(ev) if ev is not None else (-1,),
        )

    def __str__(self):
        if self.kind == "E_finite":
            return f"E_{self.index}({format_eigenvalue(self.eigenvalue)})"
        if self.kind == "E_infinite":
            return f"E_{self.index}(inf)"
        return ("L_" if self.kind == "L" else "L^T_") + str(self.index)


@dataclass(frozen=True)
class SkewBlock:
    """One canonical block of a skew-symmetric pencil under congruence."""

    kind: str
    index: int
    eigenvalue: object = None

    def __post_init__(self):
        if self.kind not in SKEW_KINDS:
            raise ValueError(f"unknown skew block kind {self.kind!r}")
        if self.kind in ("H", "K") and self.index < 1:
            raise ValueError(f"{self.kind} blocks need index >= 1")
        if self.kind == "M" and self.index < 0:
            raise ValueError("M blocks need index >= 0")
        if self.kind == "H":
            if self.eigenvalue is None:
                raise ValueError("H blocks carry an eigenvalue")
            object.__setattr__(self, "eigenvalue", as_eigenvalue(self.eigenvalue))
            if self.eigenvalue is INFINITY:
                raise ValueError("use K blocks for the infinite eigenvalue")
        elif self.eigenvalue is not None:
            raise ValueError(f"{self.kind} blocks carry no eigenvalue")

    @classmethod
    def h(cls, index: int, eigenvalue) -> "SkewBlock":
        return cls("H", index, eigenvalue)

    @classmethod
    def k(cls, index: int) -> "SkewBlock":
        return cls("K", index)

    @classmethod
    def m(cls, index: int) -> "SkewBlock":
        return cls("M", index)

    @property
    def shape(self) -> tuple:
        n = 2 * self.index + 1 if self.kind == "M" else 2 * self.index
        return (n, n)

    @property
    def rank(self) -> int:
        return 2 * self.index

    def sort_key(self):
        ev = self.eigenvalue
        return (
            SKEW_KINDS.index(self.kind),
            -self.index,
            eigenvalue_sort_key(ev) if ev is not None else (-1,),
        )

    def __str__(self):
        if self.kind == "H":
            return f"H_{self.index}({format_eigenvalue(self.eigenvalue)})"
        return f"{self.kind}_{self.index}"


@dataclass(frozen=True)
class BlockList:
    """Canonically sorted multiset of canonical blocks of one flavor."""

    flavor: str
    blocks: tuple

    def __post_init__(self):
        if self.flavor not in ("general", "skew"):
            raise FlavorMismatch(f"unknown flavor {self.flavor!r}")
        wanted = GeneralBlock if self.flavor == "general" else SkewBlock
        for b in self.blocks:
            if not isinstance(b, wanted):
                raise FlavorMismatch(f"{self.flavor} list holds {type(b).__name__}")
        object.__setattr__(
            self, "blocks", tuple(sorted(self.blocks, key=lambda b: b.sort_key()))
        )

    @classmethod
    def general(cls, blocks) -> "BlockList":
        return cls("general", tuple(blocks))

    @classmethod
    def skew(cls, blocks) -> "BlockList":
        return cls("skew", tuple(blocks))

    @property
    def total_rows(self) -> int:
        return sum(b.shape[0] for b in self.blocks)

    @property
    def total_cols(self) -> int:
        return sum(b.shape[1] for b in self.blocks)

    @property
    def rank(self) -> int:
        return sum(b.rank for b in self.blocks)

    def counts(self) -> dict:
        out: dict = {}
        for b in self.blocks:
            out[b] = out.get(b, 0) + 1
        return out

    def __str__(self):
        if not self.blocks:
            return "(empty)"
        return " + ".join(str(b) for b in self.blocks)

    def to_json_dict(self) -> dict:
        blocks = []
        for b in self.blocks:
            item = {"kind": b.kind, "index": b.index}
            if b.eigenvalue is not None:
                item["eigenvalue"] = format_eigenvalue(b.eigenvalue)
            blocks.append(item)
        return {"flavor": self.flavor, "blocks": blocks}

    @classmethod
    def from_json_dict(cls, data: dict) -> "BlockList":
        flavor = data["flavor"]
        block_cls = GeneralBlock if flavor == "general" else SkewBlock
        blocks = []
        for item in data["blocks"]:
            ev = item.get("eigenvalue")
            blocks.append(
                block_cls(
                    item["kind"],
                    int(item["index"]),
                    parse_eigenvalue(ev) if ev is not None else None,
                )
            )
        return cls(flavor, tuple(blocks))


# ---------------------------------------------------------------------------
# assembly into exact pencils
# ---------------------------------------------------------------------------

_X = RationalPolynomial.variable()
_ONE = RationalPolynomial.one()
_ZERO = RationalPolynomial.zero()


def _general_block_entries(block: GeneralBlock):
    """Entry grid for one general canonical block (pencil entries in x)."""
    k = block.index
    if block.kind == "E_finite":
        mu = block.eigenvalue
        if not isinstance(mu, Fraction):
            raise ValueError(f"cannot materialize symbolic eigenvalue {mu}")
        diag = _X - RationalPolynomial.constant(mu)
        grid = [[_ZERO] * k for _ in range(k)]
        for i in range(k):
            grid[i][i] = diag
            if i + 1 < k:
                grid[i][i + 1] = -_ONE
        return grid
    if block.kind == "E_infinite":
        grid = [[_ZERO] * k for _ in range(k)]
        for i in range(k):
            grid[i][i] = -_ONE
            if i + 1 < k:
                grid[i][i + 1] = _X
        return grid
    if block.kind == "L":
        grid = [[_ZERO] * (k + 1) for _ in range(k)]
        for i in range(k):
            grid[i][i] = _X
            grid[i][i + 1] = -_ONE
        return grid
    grid = [[_ZERO] * k for _ in range(k + 1)]
    for j in range(k):
        grid[j][j] = _X
        grid[j + 1][j] = -_ONE
    return grid


def pencil_parts(P: MatrixPolynomial):
    """Split a grade-1 polynomial into the (A, B) pair with P = x*A - B."""
    if P.grade != 1:
        raise ShapeMismatch(f"expected a pencil (grade 1), got grade {P.grade}")
    A = P.coefficient_matrix(1)
    B = [[-v for v in row] for row in P.coefficient_matrix(0)]
    return A, B


def assemble_general(blocklist: BlockList) -> MatrixPolynomial:
    """Materialize a general block list as the direct sum pencil."""
    if blocklist.flavor != "general":
        raise FlavorMismatch("assemble_general needs a general block list")
    rows, cols = blocklist.total_rows, blocklist.total_cols
    grid = [[_ZERO] * cols for _ in range(rows)]
    r = c = 0
    for block in blocklist.blocks:
        sub = _general_block_entries(block)
        br, bc = block.shape
        for i in range(br):
            grid[r + i][c : c + bc] = sub[i]
        r += br
        c += bc
    return MatrixPolynomial(grid, grade=1, shape=(rows, cols))


def _skew_block_entries(block: SkewBlock):
    """Entry grid for one skew canonical block."""
    k = block.index
    n = block.shape[0]
    grid = [[_ZERO] * n for _ in range(n)]
    if block.kind == "H":
        mu = block.eigenvalue
        if not isinstance(mu, Fraction):
            raise ValueError(f"cannot materialize symbolic eigenvalue {mu}")
        diag = _X - RationalPolynomial.constant(mu)
        # top right block x*I - J_k(mu); bottom left its negated transpose
        for i in range(k):
            grid[i][k + i] = diag
            grid[k + i][i] = -diag
            if i + 1 < k:
                grid[i][k + i + 1] = -_ONE
                grid[k + i + 1][i] = _ONE
    elif block.kind == "K":
        # top right block x*J_k(0) - I_k
        for i in range(k):
            grid[i][k + i] = -_ONE
            grid[k + i][i] = _ONE
            if i + 1 < k:
                grid[i][k + i + 1] = _X
                grid[k + i + 1][i] = -_X
    else:
        # top right block x*G_k - F_k of size k x (k+1)
        for i in range(k):
            grid[i][k + i] = _X
            grid[k + i][i] = -_X
            grid[i][k + i + 1] = -_ONE
            grid[k + i + 1][i] = _ONE
    return grid


def assemble_skew(blocklist: BlockList) -> SkewMatrixPolynomial:
    """Materialize a skew block list as the direct sum skew pencil."""
    if blocklist.flavor != "skew":
        raise FlavorMismatch("assemble_skew needs a skew block list")
    n = blocklist.total_rows
    grid = [[_ZERO] * n for _ in range(n)]
    offset = 0
    for block in blocklist.blocks:
        sub = _skew_block_entries(block)
        size = block.shape[0]
        for i in range(size):
            grid[offset + i][offset : offset + size] = sub[i]
        offset += size
    return SkewMatrixPolynomial(grid, grade=1)


# ---------------------------------------------------------------------------
# flavor conversion and eigenstructure reading
# ---------------------------------------------------------------------------


def skew_to_general(blocklist: BlockList) -> BlockList:
    """Unfold a skew block list into the underlying strict-equivalence blocks.

    H blocks duplicate a finite Jordan block, K blocks duplicate an infinite
    one, M blocks split into one right and one left singular block.
    """
    if blocklist.flavor != "skew":
        raise FlavorMismatch("skew_to_general needs a skew block list")
    out = []
    for b in blocklist.blocks:
        if b.kind == "H":
            out.extend([GeneralBlock.finite(b.index, b.eigenvalue)] * 2)
        elif b.kind == "K":
            out.extend([GeneralBlock.infinite(b.index)] * 2)
        else:
            out.append(GeneralBlock.right(b.index))
            out.append(GeneralBlock.left(b.index))
    return BlockList.general(out)


def general_to_skew(blocklist: BlockList) -> BlockList:
    """Fold a paired general block list back into skew blocks.

    Raises PairingBroken if the list is not the unfolding of a skew one,
    i.e. if eigenvalue blocks do not come in equal pairs or the right and
    left singular index multisets differ.
    """
    if blocklist.flavor != "general":
        raise FlavorMismatch("general_to_skew needs a general block list")
    eigen: dict = {}
    rights: dict = {}
    lefts: dict = {}
    for b in blocklist.blocks:
        if b.kind == "E_finite":
            key = ("fin", b.index, b.eigenvalue)
            eigen[key] = eigen.get(key, 0) + 1
        elif b.kind == "E_infinite":
            key = ("inf", b.index, None)
            eigen[key] = eigen.get(key, 0) + 1
        elif b.kind == "L":
            rights[b.index] = rights.get(b.index, 0) + 1
        else:
            lefts[b.index] = lefts.get(b.index, 0) + 1
    out = []
    for (tag, index, ev), count in eigen.items():
        if count % 2:
            raise PairingBroken(f"unpaired eigenvalue block of index {index}")
        block = SkewBlock.h(index, ev) if tag == "fin" else SkewBlock.k(index)
        out.extend([block] * (count // 2))
    if rights != lefts:
        raise PairingBroken("right and left singular indices do not match up")
    for index, count in rights.items():
        out.extend([SkewBlock.m(index)] * count)
    return BlockList.skew(out)


def structure_to_skew_blocks(structure: CompleteEigenstructure) -> BlockList:
    """Skew block list of a grade-1 complete eigenstructure (inverse reading).

    Works when every finite factor is linear with a rational root (an H block
    needs a concrete eigenvalue; irreducible factors of higher degree stand
    for irrational conjugate pairs, which have no exact-rational block form).
    Multiplicities pair up into H/K blocks, minimal indices become M blocks.
    """
    if structure.grade != 1:
        raise FlavorMismatch("block lists describe pencils (grade 1)")
    if structure.left_minimal != structure.right_minimal:
        raise PairingBroken("left and right minimal indices must coincide")
    blocks = []
    for factor, mults in structure.finite:
        if not isinstance(factor, RationalPolynomial) or factor.degree != 1:
            raise PairingBroken(f"factor {factor} has no rational eigenvalue")
        mu = -factor.coefficient(0) / factor.coefficient(1)
        if len(mults) % 2:
            raise PairingBroken("finite multiplicities do not pair up")
        for a, b in zip(mults[::2], mults[1::2]):
            if a != b:
                raise PairingBroken("finite multiplicities do not pair up")
            blocks.append(SkewBlock.h(a, mu))
    nonzero = [v for v in structure.infinite if v]
    if len(nonzero) % 2:
        raise PairingBroken("infinite multiplicities do not pair up")
    for a, b in zip(nonzero[::2], nonzero[1::2]):
        if a != b:
            raise PairingBroken("infinite multiplicities do not pair up")
        blocks.append(SkewBlock.k(a))
    for index in structure.right_minimal:
        blocks.append(SkewBlock.m(index))
    out = BlockList.skew(blocks)
    if out.total_rows != structure.size or out.rank != structure.rank:
        raise InternalInconsistency("block accounting does not reproduce the structure")
    return out


def blocklist_eigenstructure(blocklist: BlockList) -> CompleteEigenstructure:
    """Read the complete eigenstructure directly off a block list (grade 1)."""
    if blocklist.flavor == "skew":
        blocklist = skew_to_general(blocklist)
    finite: dict = {}
    infinite = []
    right = []
    left = []
    for b in blocklist.blocks:
        if b.kind == "E_finite":
            mu = b.eigenvalue
            key = (_X - RationalPolynomial.constant(mu)) if isinstance(mu, Fraction) else mu
            finite.setdefault(key, []).append(b.index)
        elif b.kind == "E_infinite":
            infinite.append(b.index)
        elif b.kind == "L":
            right.append(b.index)
        else:
            left.append(b.index)
    rank = blocklist.rank
    if rank != blocklist.total_cols - len(right) or rank != blocklist.total_rows - len(left):
        raise InternalInconsistency("block rank bookkeeping is broken")
    infinite.extend([0] * (rank - len(infinite)))
    return CompleteEigenstructure.build(
        rows=blocklist.total_rows,
        cols=blocklist.total_cols,
        grade=1,
        rank=rank,
        finite=finite,
        infinite=infinite,
        left_minimal=left,
        right_minimal=right,
    )
