"""Exact rational polynomial matrices: ranks, Smith forms, skew pairing.

Everything is computed over exact rationals, so statements like "these two
invariant polynomials are equal" are decided, not approximated.
"""

from fractions import Fraction

from skewstruct import (
    MatrixPolynomial,
    RationalPolynomial,
    SkewMatrixPolynomial,
    normal_rank,
    poly_gcd,
    skew_smith,
    smith_form,
)

x = RationalPolynomial.variable()

print("== scalar polynomials ==")
a = x**2 - 1
b = x - 1
print(f"gcd({a}, {b}) = {poly_gcd(a, b)}")
print(f"({a}) evaluated at 1/2 = {a(Fraction(1, 2))}")

print()
print("== a matrix polynomial and its Smith form ==")
m = MatrixPolynomial([[x, RationalPolynomial.zero()], [RationalPolynomial.one(), x * (x - 1)]])
s = smith_form(m)
print(m.to_string())
print(f"rank {s.rank}, invariant polynomials: {[str(g) for g in s.invariant_polynomials]}")

print()
print("== skew-symmetric polynomials pair their invariants ==")
p = SkewMatrixPolynomial.from_upper(4, {(0, 1): x, (2, 3): x**2 * (x - 2)}, grade=3)
full = smith_form(p)
halved = skew_smith(p)
print(f"normal rank: {normal_rank(p)} (always even for skew input)")
print(f"full Smith invariants : {[str(g) for g in full.invariant_polynomials]}")
print(f"paired representatives: {[str(g) for g in halved.invariant_polynomials]}")
