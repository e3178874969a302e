"""Circuit detection, exact circuit-number comparison, and zero loci.

A circuit is a form whose monomial-square exponents are exactly the
(affinely independent) Newton-polytope vertices, plus at most one inner
exponent in the relative interior.  Nonnegativity of a circuit reduces to
comparing the inner coefficient magnitude against the circuit number

    theta = prod (f_alpha / lambda_alpha) ** lambda_alpha,

which this module decides exactly by clearing the denominators of the
barycentric exponents -- boundary cases must never flip under rounding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import (
    InternalInvariantViolation,
    MonomialSquareSumHasNoCircuitNumber,
    NotNonnegativeCircuit,
    ZeroCoordinate,
    ZeroFormInput,
)
from .exactlp import matrix_rank
from .forms import Exponent, SparseForm, evaluate, grlex_key
from .geometry import (
    affinely_independent,
    barycentric_coordinates,
    hull_vertices,
    monomial_square_support,
)


class CircuitKind(Enum):
    MONOMIAL_SQUARE_SUM = "MonomialSquareSum"
    PROPER = "ProperCircuit"


@dataclass(frozen=True)
class Circuit:
    """Validated circuit form.

    ``outer`` pairs the vertex exponents with their (positive)
    coefficients in canonical order; ``barycentric`` aligns with ``outer``
    and is empty for sums of monomial squares.
    """

    form: SparseForm
    outer: tuple[tuple[Exponent, Fraction], ...]
    inner: tuple[Exponent, Fraction] | None
    barycentric: tuple[Fraction, ...]
    kind: CircuitKind


@dataclass(frozen=True)
class NotACircuit:
    """Why a form failed circuit detection."""

    reason: str
    detail: str


@dataclass(frozen=True)
class CircuitNumber:
    """The AM-GM threshold ``prod base_i ** exponent_i`` kept in factored
    exact shape; ``float_value`` is display-only and never decides."""

    factor_bases: tuple[Fraction, ...]
    exponents: tuple[Fraction, ...]
    float_value: float


class Comparison(Enum):
    LESS = "Less"
    EQUAL = "Equal"
    GREATER = "Greater"


@dataclass(frozen=True)
class NonnegativityVerdict:
    """Outcome of the circuit nonnegativity decision; ``boundary`` marks
    the AM-GM equality case."""

    is_nonnegative: bool
    boundary: bool


class ZeroLocusStatus(Enum):
    EMPTY_IN_OPEN_ORTHANT = "EmptyInOpenOrthant"
    SIGN_CASE_OUT_OF_SCOPE = "SignCaseOutOfScope"


@dataclass(frozen=True)
class ZeroLocus:
    """Solution set of ``f(exp(y)) = 0`` for a boundary circuit with
    negative inner coefficient, as an affine-linear system in ``y``.

    Row ``i`` of ``matrix`` is ``alpha(i) - alpha(0)``; the matching
    ``rhs_symbolic`` entry ``(a, b)`` denotes the exact right-hand side
    ``log(a) - log(b)`` where ``a = lambda_i / lambda_0`` and
    ``b = f_i / f_0`` (ratios against the base vertex keep the system
    correct for arbitrary outer coefficients).
    """

    matrix: tuple[tuple[int, ...], ...]
    rhs_symbolic: tuple[tuple[Fraction, Fraction], ...]
    dimension: int

    def rhs_floats(self) -> list[float]:
        return [math.log(a) - math.log(b) for a, b in self.rhs_symbolic]

    def sample_solutions(self, count: int, seed: int = 0) -> np.ndarray:
        """Numeric points of the affine solution space (approximate)."""
        matrix = np.array(self.matrix, dtype=float)
        rhs = np.array(self.rhs_floats())
        particular, *_ = np.linalg.lstsq(matrix, rhs, rcond=None)
        _, singular, vh = np.linalg.svd(matrix)
        rank = int(np.sum(singular > 1e-12))
        null_basis = vh[rank:]
        rng = np.random.default_rng(seed)
        coefficients = rng.normal(scale=1.0, size=(count, null_basis.shape[0]))
        return particular[None, :] + coefficients @ null_basis


# ---------------------------------------------------------------------------
# detection
# ---------------------------------------------------------------------------

def detect_circuit(f: SparseForm) -> Circuit | NotACircuit:
    """Check the circuit conditions and assemble the validated circuit."""
    if f.is_zero:
        raise ZeroFormInput("circuit detection needs a nonzero form")
    squares = monomial_square_support(f)
    inner_set = sorted(set(f.terms.keys()) - squares, key=grlex_key)
    if len(inner_set) > 1:
        return NotACircuit(
            reason="multiple_inner_exponents",
            detail=f"{len(inner_set)} exponents are not monomial squares",
        )
    vertices = hull_vertices(f.terms.keys())
    if vertices != squares:
        missing = sorted(squares - vertices, key=grlex_key)
        extra = sorted(vertices - squares, key=grlex_key)
        return NotACircuit(
            reason="vertex_square_mismatch",
            detail=f"squares off the vertex set: {missing}; non-square vertices: {extra}",
        )
    outer_points = sorted(vertices, key=grlex_key, reverse=True)
    if not affinely_independent(outer_points):
        return NotACircuit(
            reason="affinely_dependent_vertices",
            detail=f"vertex set {outer_points} is affinely dependent",
        )
    outer = tuple((e, f.terms[e]) for e in outer_points)
    if not inner_set:
        return Circuit(
            form=f,
            outer=outer,
            inner=None,
            barycentric=(),
            kind=CircuitKind.MONOMIAL_SQUARE_SUM,
        )
    beta = inner_set[0]
    weights = barycentric_coordinates(beta, outer_points)
    if weights is None:
        return NotACircuit(
            reason="inner_not_in_relint",
            detail=f"{beta} is not in the relative interior of the vertex hull",
        )
    return Circuit(
        form=f,
        outer=outer,
        inner=(beta, f.terms[beta]),
        barycentric=weights,
        kind=CircuitKind.PROPER,
    )


# ---------------------------------------------------------------------------
# circuit number
# ---------------------------------------------------------------------------

def circuit_number(c: Circuit) -> CircuitNumber:
    if c.kind is not CircuitKind.PROPER:
        raise MonomialSquareSumHasNoCircuitNumber(
            "sums of monomial squares carry no circuit number"
        )
    bases = tuple(coeff / lam for (_, coeff), lam in zip(c.outer, c.barycentric))
    log_value = sum(
        float(lam) * math.log(float(base)) for base, lam in zip(bases, c.barycentric)
    )
    return CircuitNumber(
        factor_bases=bases,
        exponents=tuple(c.barycentric),
        float_value=math.exp(log_value),
    )


def compare_circuit_number(theta: CircuitNumber, t: Fraction | int) -> Comparison:
    """Exact trichotomy of a nonnegative rational against the circuit
    number, via the least common multiple of the weight denominators."""
    t = Fraction(t)
    if t < 0:
        raise ValueError("comparison is defined for nonnegative t")
    if t == 0:
        return Comparison.LESS  # bases are positive, so theta > 0
    lcm = 1
    for weight in theta.exponents:
        lcm = lcm * weight.denominator // math.gcd(lcm, weight.denominator)
    lhs = t**lcm
    rhs = Fraction(1)
    for base, weight in zip(theta.factor_bases, theta.exponents):
        rhs *= base ** int(weight * lcm)
    if lhs < rhs:
        return Comparison.LESS
    if lhs == rhs:
        return Comparison.EQUAL
    return Comparison.GREATER


def decide_circuit_nonnegativity(c: Circuit) -> NonnegativityVerdict:
    """Nonnegativity is exactly |inner coefficient| <= circuit number."""
    if c.kind is CircuitKind.MONOMIAL_SQUARE_SUM:
        return NonnegativityVerdict(is_nonnegative=True, boundary=False)
    assert c.inner is not None
    comparison = compare_circuit_number(circuit_number(c), abs(c.inner[1]))
    if comparison is Comparison.GREATER:
        return NonnegativityVerdict(is_nonnegative=False, boundary=False)
    return NonnegativityVerdict(
        is_nonnegative=True, boundary=comparison is Comparison.EQUAL
    )


# ---------------------------------------------------------------------------
# zero loci
# ---------------------------------------------------------------------------

def zero_locus(c: Circuit) -> ZeroLocus | ZeroLocusStatus:
    """Zeros of a nonnegative circuit on the open positive orthant.

    Strictly interior circuits have none; boundary circuits with negative
    inner coefficient vanish exactly on an affine subspace in the
    ``y = log x`` coordinates; the positive-inner boundary case is
    surfaced unresolved rather than guessing a sign change of variables.
    """
    if c.kind is not CircuitKind.PROPER:
        raise ValueError("zero locus is defined for proper circuits")
    verdict = decide_circuit_nonnegativity(c)
    if not verdict.is_nonnegative:
        raise NotNonnegativeCircuit("circuit takes negative values")
    if not verdict.boundary:
        return ZeroLocusStatus.EMPTY_IN_OPEN_ORTHANT
    assert c.inner is not None
    if c.inner[1] > 0:
        return ZeroLocusStatus.SIGN_CASE_OUT_OF_SCOPE
    base_point, base_coeff = c.outer[0]
    base_weight = c.barycentric[0]
    rows = tuple(
        tuple(v - b for v, b in zip(point, base_point)) for point, _ in c.outer[1:]
    )
    rhs = tuple(
        (weight / base_weight, coeff / base_coeff)
        for (point, coeff), weight in zip(c.outer[1:], c.barycentric[1:])
    )
    n = len(base_point)
    m = len(c.outer) - 1
    rank = matrix_rank([list(r) for r in rows]) if rows else 0
    if rank != m:
        raise InternalInvariantViolation("vertex differences lost rank")
    return ZeroLocus(matrix=rows, rhs_symbolic=rhs, dimension=n - m)


def logs_affinely_independent(
    points: Sequence[Sequence[float]], tolerance: float = 1e-9
) -> bool:
    """Whether the coordinatewise log-absolute images of the points are
    affinely independent (approximate: singular values vs. tolerance)."""
    if not points:
        return False
    for point in points:
        if any(value == 0 for value in point):
            raise ZeroCoordinate(f"point {tuple(point)} has a zero coordinate")
    logs = np.log(np.abs(np.array(points, dtype=float)))
    if logs.shape[0] == 1:
        return True
    if logs.shape[0] > logs.shape[1] + 1:
        return False
    diffs = logs[1:] - logs[0]
    singular = np.linalg.svd(diffs, compute_uv=False)
    return int(np.sum(singular > tolerance)) == logs.shape[0] - 1


# ---------------------------------------------------------------------------
# witnesses
# ---------------------------------------------------------------------------

def negative_witness(c: Circuit, seed: int = 0) -> tuple[Fraction, ...]:
    """Rational point with exactly negative value, for circuits that fail
    the nonnegativity test.

    The AM-GM equality direction (least-squares solution of the locus-style
    system) is the natural violator; falls back to seeded random search.
    The returned point is verified by exact evaluation.
    """
    if decide_circuit_nonnegativity(c).is_nonnegative:
        raise ValueError("circuit is nonnegative; no negative witness exists")
    assert c.inner is not None and c.kind is CircuitKind.PROPER
    beta, inner_coeff = c.inner
    base_point, base_coeff = c.outer[0]
    base_weight = c.barycentric[0]
    matrix = np.array(
        [[v - b for v, b in zip(point, base_point)] for point, _ in c.outer[1:]],
        dtype=float,
    )
    rhs = np.array(
        [
            math.log(float(weight / base_weight)) - math.log(float(coeff / base_coeff))
            for (point, coeff), weight in zip(c.outer[1:], c.barycentric[1:])
        ]
    )
    candidates: list[np.ndarray] = []
    solution, *_ = np.linalg.lstsq(matrix, rhs, rcond=None)
    candidates.append(solution)
    rng = np.random.default_rng(seed)
    candidates.extend(solution + rng.normal(scale=0.2, size=solution.shape) for _ in range(32))
    candidates.extend(rng.normal(scale=1.0, size=solution.shape) for _ in range(64))
    signs = _sign_pattern_for_negative_inner(beta, inner_coeff)
    for candidate in candidates:
        numeric = np.exp(np.clip(candidate, -12.0, 12.0))
        point = tuple(
            sign * Fraction(float(value)).limit_denominator(10**6)
            for sign, value in zip(signs, numeric)
        )
        if any(value == 0 for value in point):
            continue
        if evaluate(c.form, point) < 0:
            return point
    raise ArithmeticError("no negative witness found; bug")


def _sign_pattern_for_negative_inner(
    beta: Exponent, inner_coeff: Fraction
) -> tuple[int, ...]:
    """Sign flips making the inner term negative on the positive orthant.

    Outer terms are monomial squares, so flips leave them unchanged.  A
    positive inner coefficient forces an odd entry in ``beta`` (else the
    term were itself a square), and flipping that variable works.
    """
    if inner_coeff < 0:
        return tuple(1 for _ in beta)
    odd = next(i for i, e in enumerate(beta) if e % 2 == 1)
    return tuple(-1 if i == odd else 1 for i in range(len(beta)))
