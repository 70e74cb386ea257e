"""Random bounded-rank samples, rank-raising perturbations, numeric backend.

Sampling parametrizes rank-2r skew polynomials as Q^T [[0, B], [-B^T, 0]] Q
with a random polynomial block B and a random constant nonsingular Q: the
inner form has rank 2*rank(B) and constant congruence preserves the complete
eigenstructure. This realizes the generic structure for generic B; no claim
is made that every bounded-rank polynomial arises this way (the Monte Carlo
experiment validates the generic-structure statement, not coverage).

The perturbation routine adds (1/k) times a constant skew matrix built from
a unitary block-diagonalization of the polynomial evaluated away from its
eigenvalues, raising the rank to an exact target while converging to the
unperturbed polynomial at rate 1/k. It works in floating point (the limit
statement is inherently numeric) and, since the library's inputs are always
rational, only the real orthogonal reduction is implemented.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .eigenstructure import (
    CompleteEigenstructure,
    analyze,
    same_orbit,
)
from .errors import (
    AttemptsExhausted,
    GradeTooSmall,
    ParamDomain,
    RankVerificationFailed,
)
from .exact import (
    NEG_INF,
    FrobeniusDistance,
    MatrixPolynomial,
    RationalPolynomial,
    SkewMatrixPolynomial,
    as_skew,
    frobenius_distance,
    normal_rank,
    rank_exact,
)
from .generic import PolyGenericParams, generic_poly_structure
from .points import NumericRoot

DEFAULT_TOL = 1e-8
DEFAULT_COEFF_RANGE = 9


@dataclass(frozen=True)
class SampleSpec:
    """Parameters of one bounded-rank draw; every bit of randomness is here."""

    m: int
    d: int
    r: int
    coeff_range: int = DEFAULT_COEFF_RANGE
    seed: int = 0

    def __post_init__(self):
        PolyGenericParams.validate(self.m, self.d, self.r)
        if self.coeff_range < 1:
            raise ParamDomain("coefficient range must be at least 1")

    def with_seed(self, seed: int) -> "SampleSpec":
        return SampleSpec(self.m, self.d, self.r, self.coeff_range, seed)


def _random_constant(rng, rows, cols, bound):
    return [[Fraction(rng.randint(-bound, bound)) for _ in range(cols)] for _ in range(rows)]


def sample_bounded_rank(spec: SampleSpec, max_attempts: int = 100) -> SkewMatrixPolynomial:
    """Draw a random skew polynomial of size m, grade d, rank exactly 2r.

    Resamples until the exact rank check passes (rank deficiency of the
    random block is the only failure mode, so retries are rare).
    """
    rng = random.Random(spec.seed)
    m, d, r, c = spec.m, spec.d, spec.r, spec.coeff_range
    zero = RationalPolynomial.zero()
    for _ in range(max_attempts):
        block = [
            [RationalPolynomial([rng.randint(-c, c) for _ in range(d + 1)]) for _ in range(m - r)]
            for _ in range(r)
        ]
        inner = [[zero] * m for _ in range(m)]
        for i in range(r):
            for j in range(m - r):
                inner[i][r + j] = block[i][j]
                inner[r + j][i] = -block[i][j]
        inner_poly = SkewMatrixPolynomial(inner, grade=d)
        congruence = _random_constant(rng, m, m, c)
        if rank_exact(congruence) < m:
            continue
        cm = MatrixPolynomial(congruence, grade=0)
        sample = as_skew((cm.transpose() @ inner_poly @ cm).with_grade(d))
        if normal_rank(sample) == 2 * r:
            return sample
    raise AttemptsExhausted(f"no rank-{2 * r} draw in {max_attempts} attempts")


# ---------------------------------------------------------------------------
# floating-point backend
# ---------------------------------------------------------------------------


def rank_fp(matrix, tol_rel: float = DEFAULT_TOL) -> int:
    """Numerical rank: singular values above tol_rel times the largest."""
    if tol_rel <= 0:
        raise ParamDomain("tol_rel must be positive")
    a = np.asarray(matrix, dtype=complex)
    if a.size == 0:
        return 0
    svals = np.linalg.svd(a, compute_uv=False)
    if svals.size == 0 or svals[0] == 0.0:
        return 0
    return int(np.count_nonzero(svals > tol_rel * svals[0]))


def skew_block_diagonalization(a: np.ndarray, tol_rel: float = DEFAULT_TOL):
    """Orthogonal congruence of a real skew matrix into 2x2 blocks plus zeros.

    Returns (U, values) with U real orthogonal and values the positive block
    entries s_1 >= ... >= s_rho, such that U^T a U is the direct sum of
    blocks [[0, s_i], [-s_i, 0]] followed by a zero block. Real input only:
    every caller in this library evaluates rational data at rational points.
    """
    from scipy.linalg import schur

    a = np.asarray(a)
    if np.iscomplexobj(a) and np.abs(a.imag).max() > 0:
        raise ParamDomain("only real skew matrices are supported")
    a = a.real.astype(float)
    n = a.shape[0]
    if np.abs(a + a.T).max() > tol_rel * max(1.0, np.abs(a).max()):
        raise ParamDomain("input is not skew-symmetric")
    if not np.any(a):
        return np.eye(n), []
    t, z = schur(a, output="real")
    scale = np.abs(a).max()
    pairs = []  # (value, col0, col1) with positive value at t[col0, col1]
    zeros = []
    i = 0
    while i < n:
        if i + 1 < n and abs(t[i, i + 1]) > tol_rel * scale:
            if t[i, i + 1] > 0:
                pairs.append((t[i, i + 1], i, i + 1))
            else:
                pairs.append((-t[i, i + 1], i + 1, i))
            i += 2
        else:
            zeros.append(i)
            i += 1
    pairs.sort(key=lambda item: -item[0])
    order = [c for _, c0, c1 in pairs for c in (c0, c1)] + zeros
    u = z[:, order]
    return u, [value for value, _, _ in pairs]


@dataclass(frozen=True)
class Perturbation:
    """A rank-raising perturbation P = Q + (1/k) E and its bookkeeping."""

    polynomial: SkewMatrixPolynomial
    perturbation: tuple  # the constant skew matrix E, exact entries
    k: int
    distance: FrobeniusDistance
    base_rank: int
    target_rank: int
    point: Fraction


def perturb_rank_increase(
    Q: SkewMatrixPolynomial,
    r: int,
    k: int,
    tol_rel: float = DEFAULT_TOL,
    check_seed: int = 1,
) -> Perturbation:
    """Add (1/k) times a constant skew matrix raising the rank to exactly 2r.

    The constant comes from an orthogonal block-diagonalization of Q at a
    non-eigenvalue point: unit blocks are inserted where the decomposition
    has zeros, so the perturbed polynomial has rank 2r while staying within
    Frobenius distance (1/k) * sqrt(2 (r - rank(Q)/2)) of Q. The resulting
    coefficients are exact dyadic rationals read back from the floats, so
    distances downstream stay exact.
    """
    skew = as_skew(Q)
    m = skew.rows
    if not 2 * r <= m - 1:
        raise ParamDomain(f"target rank 2r={2 * r} must stay below m={m}")
    rank_q = normal_rank(skew)
    r1 = rank_q // 2
    if r <= r1:
        raise ParamDomain(f"target half-rank {r} must exceed current {r1}")

    # a point where the evaluation attains the normal rank (exact check)
    point = None
    deg = skew.degree
    candidates = max(1, (0 if deg is NEG_INF else int(deg)) * m + 1)
    for idx in range(candidates):
        mu = Fraction(idx if idx % 2 == 0 else -(idx + 1) // 2, 1)
        if rank_exact(skew.evaluate(mu)) == rank_q:
            point = mu
            break
    if point is None:
        raise RankVerificationFailed("no evaluation point attains the normal rank")

    a = np.array([[float(v) for v in row] for row in skew.evaluate(point)])
    u, _ = skew_block_diagonalization(a, tol_rel)
    d = np.zeros((m, m))
    for i in range(r - r1):
        lo = 2 * r1 + 2 * i
        d[lo, lo + 1] = 1.0
        d[lo + 1, lo] = -1.0
    e_float = u @ d @ u.T
    e_float = (e_float - e_float.T) / 2.0  # exact skew symmetry in floats
    e_exact = tuple(
        tuple(Fraction(e_float[i, j]) for j in range(m)) for i in range(m)
    )
    scale = Fraction(1, k)
    entries = [
        [
            skew.entries[i][j] + RationalPolynomial((e_exact[i][j] * scale,))
            for j in range(m)
        ]
        for i in range(m)
    ]
    perturbed = SkewMatrixPolynomial(entries, grade=skew.grade)

    rng = random.Random(check_seed)
    extra = Fraction(rng.randint(10, 99), rng.randint(1, 9))
    for mu in (point, extra):
        got = rank_fp([[float(v) for v in row] for row in perturbed.evaluate(mu)], tol_rel)
        if got != 2 * r:
            svals = np.linalg.svd(
                np.array([[float(v) for v in row] for row in perturbed.evaluate(mu)]),
                compute_uv=False,
            )
            raise RankVerificationFailed(
                f"rank {got} != {2 * r} at {mu}; singular values {svals}"
            )

    zero = MatrixPolynomial.zeros(m, m, skew.grade)
    e_poly = MatrixPolynomial(
        [[RationalPolynomial((v,)) for v in row] for row in e_exact], grade=skew.grade
    )
    distance = frobenius_distance(perturbed, skew)
    expected = frobenius_distance(e_poly.scale(scale), zero)
    if distance.squared != expected.squared:
        raise RankVerificationFailed("perturbation distance bookkeeping failed")
    return Perturbation(
        polynomial=perturbed,
        perturbation=e_exact,
        k=k,
        distance=distance,
        base_rank=rank_q,
        target_rank=2 * r,
        point=point,
    )


# ---------------------------------------------------------------------------
# Monte Carlo genericity experiment
# ---------------------------------------------------------------------------


def trial_seed(seed: int, index: int) -> int:
    """Per-trial seed derived from (seed, trial index)."""
    return seed * 1_000_003 + index


@dataclass(frozen=True)
class ExperimentReport:
    """Aggregated Monte Carlo outcome; mismatches keep their replay seeds."""

    spec: SampleSpec
    trials: int
    matches: int
    mismatch_seeds: tuple
    expected: CompleteEigenstructure
    elapsed: float = field(compare=False, default=0.0)

    @property
    def mismatches(self) -> int:
        return self.trials - self.matches

    def to_json_dict(self) -> dict:
        return {
            "trials": self.trials,
            "matches": self.matches,
            "mismatch_seeds": list(self.mismatch_seeds),
            "expected": self.expected.to_json_dict(),
            "elapsed": self.elapsed,
        }


def monte_carlo_genericity(spec: SampleSpec, trials: int) -> ExperimentReport:
    """Draw, analyze exactly, and compare against the generic structure.

    Deterministic given the spec seed: trial i uses trial_seed(seed, i), and
    every mismatch records that derived seed so the draw can be replayed.
    In exact arithmetic a mismatch means the draw hit a proper algebraic
    subset, so the match rate should be overwhelming.
    """
    expected = generic_poly_structure(spec.m, spec.d, spec.r)
    started = time.perf_counter()
    matches = 0
    mismatch_seeds = []
    for i in range(trials):
        derived = trial_seed(spec.seed, i)
        draw = sample_bounded_rank(spec.with_seed(derived))
        structure = analyze(draw, spec.d)
        if same_orbit(structure, expected):
            matches += 1
        else:
            mismatch_seeds.append(derived)
    return ExperimentReport(
        spec=spec,
        trials=trials,
        matches=matches,
        mismatch_seeds=tuple(mismatch_seeds),
        expected=expected,
        elapsed=time.perf_counter() - started,
    )


# ---------------------------------------------------------------------------
# best-effort floating analysis
# ---------------------------------------------------------------------------


def _coeff_arrays(P: MatrixPolynomial):
    return [
        np.array([[float(v) for v in row] for row in P.coefficient_matrix(i)])
        for i in range(P.grade + 1)
    ]


def _rank_fp_normal(coeffs, rows, cols, tol_rel) -> int:
    deg = len(coeffs) - 1
    n_points = min(rows, cols) * max(deg, 1) + 1
    best = 0
    for idx in range(n_points):
        z = 1.1 * np.exp(2j * np.pi * (idx + 0.37) / n_points)
        value = sum(c * z**i for i, c in enumerate(coeffs))
        best = max(best, rank_fp(value, tol_rel))
    return best


def _toeplitz_nullities(coeffs, cols, orders, tol_rel):
    """Nullity of the lower-triangular block Toeplitz truncations."""
    out = []
    rows = coeffs[0].shape[0]
    for k in orders:
        t = np.zeros(((k + 1) * rows, (k + 1) * cols), dtype=complex)
        for b in range(k + 1):
            for d, c in enumerate(coeffs):
                if b + d <= k:
                    t[(b + d) * rows : (b + d + 1) * rows, b * cols : (b + 1) * cols] = c
        out.append((k + 1) * cols - rank_fp(t, tol_rel))
    return out


def _multiplicities_from_nullities(nullities, eta, rho):
    counts = []
    prev = 0
    for n_k in nullities:
        above = n_k - prev - eta
        if above <= 0:
            break
        counts.append(above)
        prev = n_k
    mults = []
    for value in range(1, len(counts) + 1):
        upper = counts[value] if value < len(counts) else 0
        mults.extend([value] * (counts[value - 1] - upper))
    mults.extend([0] * (rho - len(mults)))
    return tuple(sorted(mults))


def _shifted_coeffs(coeffs, z):
    """Taylor coefficient matrices of P at the point z (binomial shift)."""
    deg = len(coeffs) - 1
    out = [np.zeros_like(coeffs[0], dtype=complex) for _ in range(deg + 1)]
    for i, c in enumerate(coeffs):
        for j in range(i + 1):
            out[j] = out[j] + math.comb(i, j) * (z ** (i - j)) * c
    return out


def analyze_float(
    P: MatrixPolynomial, grade: int | None = None, tol_rel: float = DEFAULT_TOL
) -> CompleteEigenstructure:
    """Best-effort floating-point eigenstructure of a skew polynomial.

    Rank and minimal indices come from SVD ranks of evaluations and
    convolution matrices; multiplicities at infinity (and at detected
    eigenvalues) from numeric Toeplitz nullity profiles. Eigenvalue
    candidates are linearization eigenvalues filtered by an evaluation rank
    drop, reported as NumericRoot annotations. Clustered or ill-conditioned
    spectra can defeat it; the exact path is the reference.
    """
    from .eigenstructure import convolution_matrix

    skew = as_skew(P)
    if grade is None:
        grade = skew.grade
    deg = skew.degree
    if deg is not NEG_INF and grade < deg:
        raise GradeTooSmall(f"grade {grade} < degree {deg}")
    skew = skew.with_grade(grade)
    m = skew.rows
    if skew.is_zero():
        return CompleteEigenstructure.build(
            rows=m, cols=m, grade=grade, rank=0, finite={}, infinite=[],
            left_minimal=[0] * m, right_minimal=[0] * m,
        )
    coeffs = _coeff_arrays(skew)
    rho = _rank_fp_normal(coeffs, m, m, tol_rel)
    eta = m - rho

    # minimal indices from convolution nullities
    minimal = []
    prev_dim = prev_diff = 0
    k = 0
    while len(minimal) < eta:
        conv = np.array(
            [[float(v) for v in row] for row in convolution_matrix(skew, k)]
        )
        dim = (k + 1) * m - rank_fp(conv, tol_rel)
        diff = dim - prev_dim
        minimal.extend([k] * (diff - prev_diff))
        prev_dim, prev_diff = dim, diff
        k += 1
        if k > rho * max(grade, 1) + 1:
            raise RankVerificationFailed("numeric minimal-index search diverged")

    # infinity: nullity profile of the reversal at zero
    rev_coeffs = list(reversed(coeffs))
    orders = range(0, rho * max(grade, 1) + 2)
    infinite = _multiplicities_from_nullities(
        _toeplitz_nullities(rev_coeffs, m, orders, tol_rel), eta, rho
    )

    # finite eigenvalues: companion eigenvalues filtered by rank drop
    finite: dict = {}
    candidates = _eigenvalue_candidates(coeffs, tol_rel)
    for z in candidates:
        value = sum(c * z**i for i, c in enumerate(coeffs))
        if rank_fp(value, tol_rel) >= rho:
            continue
        shifted = _shifted_coeffs(coeffs, z)
        mults = _multiplicities_from_nullities(
            _toeplitz_nullities(shifted, m, orders, tol_rel), eta, rho
        )
        positive = tuple(v for v in mults if v)
        if positive:
            finite[NumericRoot(round(z.real, 9), round(z.imag, 9))] = positive
    return CompleteEigenstructure.build(
        rows=m,
        cols=m,
        grade=grade,
        rank=rho,
        finite=finite,
        infinite=infinite,
        left_minimal=minimal,
        right_minimal=list(minimal),
    )


def _eigenvalue_candidates(coeffs, tol_rel):
    """Deduplicated finite eigenvalues of a companion-style linearization."""
    from scipy.linalg import eig

    deg = len(coeffs) - 1
    m = coeffs[0].shape[0]
    if deg == 0:
        return []
    n = m * deg
    a = np.zeros((n, n), dtype=complex)
    b = np.eye(n, dtype=complex)
    a[:m, : m * deg] = np.hstack([-c for c in reversed(coeffs[:-1])])
    for i in range(deg - 1):
        a[m * (i + 1) : m * (i + 2), m * i : m * (i + 1)] = np.eye(m)
    b[:m, :m] = coeffs[-1]
    values = eig(a, b, right=False)
    finite = [z for z in values if np.isfinite(z) and abs(z) < 1e8]
    out = []
    for z in finite:
        if not any(abs(z - w) <= 1e-6 * max(1.0, abs(w)) for w in out):
            out.append(z)
    return out
