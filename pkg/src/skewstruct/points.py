"""Eigenvalue points: exact rationals, opaque symbolic tags, and infinity.

A finite eigenvalue is normally an exact `Fraction`. A `SymbolicPoint` is an
opaque tag standing for "some fixed complex number, distinct from every other
point in play" -- used by the degeneration search to create fresh eigenvalues
without committing to concrete values, and by tests to avoid accidental
collisions. `INFINITY` tags the eigenvalue at infinity where a unified
treatment is convenient.
"""

from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class SymbolicPoint:
    name: str

    def sort_key(self):
        return (2, self.name)

    def __str__(self):
        return f"@{self.name}"


class _Infinity:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def sort_key(self):
        return (1,)

    def __repr__(self):
        return "INFINITY"

    def __str__(self):
        return "inf"


INFINITY = _Infinity()


@dataclass(frozen=True)
class NumericRoot:
    """Floating eigenvalue annotation produced by the numeric backend."""

    real: float
    imag: float = 0.0

    def sort_key(self):
        return (3, self.real, self.imag)

    def __str__(self):
        return f"root({self.real:+.10g}{self.imag:+.10g}j)"


def as_eigenvalue(value):
    """Normalize a user-supplied eigenvalue to Fraction/SymbolicPoint/INFINITY."""
    if value is INFINITY or isinstance(value, SymbolicPoint):
        return value
    return Fraction(value)


def eigenvalue_sort_key(value):
    if isinstance(value, Fraction):
        return (0, value.numerator, value.denominator)
    return value.sort_key()


def format_eigenvalue(value) -> str:
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    return str(value)


def parse_eigenvalue(text: str):
    if text == "inf":
        return INFINITY
    if text.startswith("@"):
        return SymbolicPoint(text[1:])
    num, _, den = text.partition("/")
    return Fraction(int(num), int(den) if den else 1)
