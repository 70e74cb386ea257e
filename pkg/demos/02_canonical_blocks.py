"""Canonical blocks of skew-symmetric pencils and what they encode.

A skew-symmetric pencil is congruent to a direct sum of H blocks (finite
eigenvalues, paired), K blocks (the infinite eigenvalue, paired), and M
blocks (one right plus one left minimal index each). Assembling a block
list and analyzing the result recovers exactly the structure the list
declares -- the round trip that anchors the rest of the library.
"""

from skewstruct import (
    BlockList,
    SkewBlock,
    analyze,
    assemble_skew,
    blocklist_eigenstructure,
    same_orbit,
    skew_to_general,
)

structure = BlockList.skew([SkewBlock.m(1), SkewBlock.k(1), SkewBlock.h(1, 2)])
print(f"block list: {structure}")
print(f"total size: {structure.total_rows}, rank: {structure.rank}")

pencil = assemble_skew(structure)
print()
print("assembled pencil:")
print(pencil.to_string())

declared = blocklist_eigenstructure(structure)
computed = analyze(pencil, 1)
print()
print(f"declared   : rank {declared.rank}, infinite {declared.infinite}, "
      f"minimal {declared.right_minimal}, finite {[(str(f), m) for f, m in declared.finite]}")
print(f"analyzed   : rank {computed.rank}, infinite {computed.infinite}, "
      f"minimal {computed.right_minimal}, finite {[(str(f), m) for f, m in computed.finite]}")
print(f"round trip agrees: {same_orbit(declared, computed)}")

print()
print("unfolding to strict-equivalence blocks:")
print(f"  {skew_to_general(structure)}")
