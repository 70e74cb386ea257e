"""The generic bounded-rank structures, for polynomials and for pencils.

Among m x m skew polynomials of grade d and rank at most 2r, one complete
eigenstructure is generic: no elementary divisors, and m - 2r minimal
indices per side as equal as possible, summing to r*d. The grade-2 grid
below reproduces the reference table of left minimal index lists.
"""

from skewstruct import (
    generic_pencil_structure,
    generic_poly_structure,
    structure_consistency,
)

print("left minimal indices of the generic grade-2 polynomial:")
print(f"{'':>8}" + "".join(f"{f'{m}x{m}':>16}" for m in range(3, 8)))
for rank in (2, 4, 6):
    r = rank // 2
    cells = []
    for m in range(3, 8):
        if 2 * r <= m - 1:
            e = generic_poly_structure(m, 2, r)
            cells.append("{" + ", ".join(str(v) for v in sorted(e.left_minimal, reverse=True)) + "}")
        else:
            cells.append("-")
    print(f"rank {rank:>2} " + "".join(f"{c:>16}" for c in cells))

print()
print("generic pencils with bounded rank and a fixed count of infinite blocks:")
for n, w, r in [(5, 2, 1), (7, 3, 1), (9, 4, 2)]:
    print(f"  (n={n}, w={w}, r={r}): {generic_pencil_structure(n, w, r)}")

print()
print("arithmetic identities tying the two pictures together (m=7, d=2, r=2):")
rep = structure_consistency(7, 2, 2)
print(f"  beta={rep.poly.beta}, t={rep.poly.t}; alpha={rep.pencil.alpha}, s={rep.pencil.s}; "
      f"eta={rep.eta}")
print(f"  beta + d/2 == alpha: {rep.sizes_match}; t == s: {rep.counts_match}; "
      f"block lists match: {rep.blocklists_match}")
