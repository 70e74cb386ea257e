"""On-disk JSON formats: polynomial files, block lists, reports.

A polynomial file holds an m x m skew-symmetric matrix polynomial as
grade+1 coefficient matrices, lowest degree first, with every entry an
exact rational written "num/den". Skew-symmetry is validated on load and
malformed rationals are rejected. Writing is canonical (sorted keys, fixed
indentation), so read-then-write is byte-identical.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .exact import RationalPolynomial, SkewMatrixPolynomial


class FileFormatError(ValueError):
    """Raised when an input file does not match its documented schema."""


def _parse_rational(text) -> Fraction:
    if not isinstance(text, str):
        raise FileFormatError(f"rational entries must be strings, got {text!r}")
    num, sep, den = text.partition("/")
    try:
        return Fraction(int(num), int(den) if sep else 1)
    except (ValueError, ZeroDivisionError) as exc:
        raise FileFormatError(f"malformed rational {text!r}") from exc


def _format_rational(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


def polynomial_to_dict(P: SkewMatrixPolynomial) -> dict:
    return {
        "m": P.rows,
        "grade": P.grade,
        "coefficients": [
            [[_format_rational(v) for v in row] for row in P.coefficient_matrix(k)]
            for k in range(P.grade + 1)
        ],
    }


def polynomial_from_dict(data: dict) -> SkewMatrixPolynomial:
    try:
        m = int(data["m"])
        grade = int(data["grade"])
        raw = data["coefficients"]
    except (KeyError, TypeError, ValueError) as exc:
        raise FileFormatError(f"missing or malformed field: {exc}") from exc
    if len(raw) != grade + 1:
        raise FileFormatError(f"expected {grade + 1} coefficient matrices, got {len(raw)}")
    mats = []
    for mat in raw:
        if len(mat) != m or any(len(row) != m for row in mat):
            raise FileFormatError(f"coefficient matrices must be {m} x {m}")
        mats.append([[_parse_rational(v) for v in row] for row in mat])
    entries = [
        [RationalPolynomial([mat[i][j] for mat in mats]) for j in range(m)]
        for i in range(m)
    ]
    return SkewMatrixPolynomial(entries, grade=grade, shape=(m, m))


def dump_json(data: dict) -> str:
    """Canonical JSON serialization used by every writer."""
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def write_polynomial(P: SkewMatrixPolynomial, path: str):
    with open(path, "w") as fh:
        fh.write(dump_json(polynomial_to_dict(P)))


def read_polynomial(path: str) -> SkewMatrixPolynomial:
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise FileFormatError(f"not valid JSON: {exc}") from exc
    return polynomial_from_dict(data)
