"""Complete eigenstructure of a skew polynomial, and why the grade matters.

The same matrix of polynomials analyzed at two different declared grades has
different structure at infinity: declaring one grade more than the degree
shifts every infinite partial multiplicity up by one while changing nothing
else. The index-sum identity (finite degrees + infinite + left + right
minimal indices = rank * grade) is validated internally on every call.
"""

from skewstruct import RationalPolynomial, SkewMatrixPolynomial, analyze

x = RationalPolynomial.variable()
zero = RationalPolynomial.zero()

p = SkewMatrixPolynomial(
    [
        [zero, x**2, zero],
        [-(x**2), zero, x - 1],
        [zero, -(x - 1), zero],
    ],
    grade=2,
)


def show(e):
    finite = {str(f): list(m) for f, m in e.finite}
    print(f"  grade {e.grade}: rank {e.rank}, finite {finite}, "
          f"infinite {list(e.infinite)}, minimal {list(e.right_minimal)}")
    fin, inf, left, right = e.index_sums()
    print(f"  index sums {fin} + {inf} + {left} + {right} = {e.rank} * {e.grade}")


print("3x3 skew polynomial, degree 2:")
print(p.to_string())
print()
print("analyzed at its own grade:")
show(analyze(p, 2))
print()
print("same entries declared one grade higher:")
show(analyze(p, 3))
