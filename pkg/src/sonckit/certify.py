"""Membership tests for the cone of sums of nonnegative circuit forms.

The exact routes are the coefficient-sum necessary condition

    sum over inner exponents of |f_beta|
        <=  sum over used square exponents of f_alpha,

its equality-case corollary ``f_alpha >= min_k lambda_alpha^k * |f_beta|``,
and exact verification of explicit cancellation-free decompositions.  A
bounded numeric feasibility search over decomposition weights covers small
instances the exact routes leave open; a numeric result never certifies --
feasible weights are rounded to rationals and re-verified exactly, and
infeasibility is only reported with an explicit margin.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Sequence

from .errors import (
    BudgetExceeded,
    PreconditionNotEquality,
    UncoveredInnerExponent,
    ZeroFormInput,
)
from .circuits import (
    Circuit,
    NotACircuit,
    decide_circuit_nonnegativity,
    detect_circuit,
)
from .forms import Exponent, SparseForm, add_forms, grlex_key, make_form
from .geometry import SupportPartition, Simplex

_ZERO = Fraction(0)
_ONE = Fraction(1)


class ConditionVerdict(Enum):
    VIOLATED = "Violated"
    EQUALITY = "Equality"
    STRICTLY_SATISFIED = "StrictlySatisfied"


@dataclass(frozen=True)
class CorollaryViolation:
    alpha: Exponent
    beta: Exponent
    bound: Fraction
    coefficient: Fraction


@dataclass(frozen=True)
class CorollaryReport:
    violations: tuple[CorollaryViolation, ...]

    @property
    def passed(self) -> bool:
        return not self.violations


@dataclass(frozen=True)
class NecessaryConditionReport:
    """Exact inner/outer coefficient sums with the resulting verdict.

    ``uncovered_inner`` lists inner exponents covered by no simplex; any
    such exponent already rules out a cancellation-free decomposition, so
    the verdict is ``VIOLATED`` whenever it is nonempty.  The corollary
    report is attached exactly in the equality case.
    """

    inner_sum: Fraction
    outer_sum: Fraction
    verdict: ConditionVerdict
    uncovered_inner: frozenset[Exponent]
    corollary: CorollaryReport | None


def necessary_condition(
    f: SparseForm, partition: SupportPartition
) -> NecessaryConditionReport:
    if f.is_zero:
        raise ZeroFormInput("necessary condition needs a nonzero form")
    inner_sum = sum((abs(f.terms[b]) for b in partition.i_set), _ZERO)
    outer_sum = sum((f.terms[a] for a in partition.s_set - partition.r_set), _ZERO)
    uncovered = partition.uncovered_inner
    if uncovered or inner_sum > outer_sum:
        verdict = ConditionVerdict.VIOLATED
    elif inner_sum == outer_sum:
        verdict = ConditionVerdict.EQUALITY
    else:
        verdict = ConditionVerdict.STRICTLY_SATISFIED
    corollary = (
        corollary_check(f, partition)
        if verdict is ConditionVerdict.EQUALITY
        else None
    )
    return NecessaryConditionReport(
        inner_sum=inner_sum,
        outer_sum=outer_sum,
        verdict=verdict,
        uncovered_inner=uncovered,
        corollary=corollary,
    )


def per_simplex_weights(
    partition: SupportPartition, alpha: Exponent, beta: Exponent
) -> tuple[Fraction, ...]:
    """Barycentric weight of ``alpha`` in each covering simplex of
    ``beta``; zero where ``alpha`` is not among that simplex's vertices."""
    weights = []
    for simplex in partition.simplex_families.get(tuple(beta), ()):
        try:
            weights.append(simplex.barycentric[simplex.vertices.index(tuple(alpha))])
        except ValueError:
            weights.append(_ZERO)
    return tuple(weights)


def corollary_check(f: SparseForm, partition: SupportPartition) -> CorollaryReport:
    """Equality-case lower bounds on the used square coefficients.

    For every used square exponent and inner exponent, the coefficient
    must reach ``min_k lambda^k * |f_beta|``; strict failures are
    returned as violations.
    """
    inner_sum = sum((abs(f.terms[b]) for b in partition.i_set), _ZERO)
    outer_sum = sum((f.terms[a] for a in partition.s_set - partition.r_set), _ZERO)
    if partition.uncovered_inner or inner_sum != outer_sum:
        raise PreconditionNotEquality(
            "corollary applies only when the inner and outer sums agree"
        )
    violations = []
    used = sorted(partition.s_set - partition.r_set, key=grlex_key, reverse=True)
    inners = sorted(partition.i_set, key=grlex_key, reverse=True)
    for alpha in used:
        for beta in inners:
            weights = per_simplex_weights(partition, alpha, beta)
            bound = min(weights) * abs(f.terms[beta])
            if f.terms[alpha] < bound:
                violations.append(
                    CorollaryViolation(
                        alpha=alpha,
                        beta=beta,
                        bound=bound,
                        coefficient=f.terms[alpha],
                    )
                )
    return CorollaryReport(violations=tuple(violations))


# ---------------------------------------------------------------------------
# explicit decompositions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SoncDecomposition:
    """Candidate decomposition into nonnegative circuits plus a monomial
    square remainder, all supported inside the target's support."""

    circuits: tuple[Circuit, ...]
    monomial_square_remainder: SparseForm


@dataclass(frozen=True)
class VerificationResult:
    valid: bool
    reason: str | None = None


def verify_decomposition(f: SparseForm, d: SoncDecomposition) -> VerificationResult:
    """Exact validity check; names the first failing condition."""
    try:
        total = add_forms(
            *(c.form for c in d.circuits), d.monomial_square_remainder
        ) if d.circuits else d.monomial_square_remainder
    except Exception:
        return VerificationResult(False, "sum_mismatch")
    if total != f:
        return VerificationResult(False, "sum_mismatch")
    for circuit in d.circuits:
        redetected = detect_circuit(circuit.form)
        if isinstance(redetected, NotACircuit):
            return VerificationResult(False, "not_a_circuit")
        if not decide_circuit_nonnegativity(redetected).is_nonnegative:
            return VerificationResult(False, "circuit_not_nonnegative")
    support = set(f.terms.keys())
    for circuit in d.circuits:
        if not set(circuit.form.terms.keys()) <= support:
            return VerificationResult(False, "support_not_contained")
    remainder = d.monomial_square_remainder
    if any(
        coeff < 0 or any(e % 2 for e in exponent)
        for exponent, coeff in remainder.terms.items()
    ):
        return VerificationResult(False, "remainder_not_monomial_squares")
    return VerificationResult(True, None)


# ---------------------------------------------------------------------------
# bounded feasibility search
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SearchBudget:
    max_params: int = 6
    infeasibility_margin: float = 1e-3
    iterations: int = 100_000
    seeds: int = 4


class SearchStatus(Enum):
    FEASIBLE = "Feasible"
    INFEASIBLE = "InfeasibleWithMargin"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class SearchOutcome:
    """Search result; ``exact`` marks conclusions backed by rational
    arithmetic (verified decomposition, or exhausted zero-parameter
    family).  ``margin`` is the best achieved maximum over circuits of
    ``nu * |f_beta| - theta`` in coefficient units."""

    status: SearchStatus
    margin: float | None
    decomposition: SoncDecomposition | None
    exact: bool


@dataclass(frozen=True)
class _CircuitSlot:
    beta: Exponent
    simplex: Simplex
    abs_inner: Fraction


def _search_structure(f: SparseForm, partition: SupportPartition):
    slots: list[_CircuitSlot] = []
    nu_groups: dict[Exponent, list[int]] = {}
    for beta in sorted(partition.i_set, key=grlex_key):
        family = partition.simplex_families.get(beta, ())
        if not family:
            raise UncoveredInnerExponent(
                f"inner exponent {beta} lies in no covering simplex"
            )
        indices = []
        for simplex in family:
            indices.append(len(slots))
            slots.append(
                _CircuitSlot(beta=beta, simplex=simplex, abs_inner=abs(f.terms[beta]))
            )
        nu_groups[beta] = indices
    mu_groups: dict[Exponent, list[int]] = {}
    for alpha in sorted(partition.s_set - partition.r_set, key=grlex_key):
        members = [
            index for index, slot in enumerate(slots) if alpha in slot.simplex.vertices
        ]
        mu_groups[alpha] = members
    return slots, mu_groups, nu_groups


def _build_exact_decomposition(
    f: SparseForm,
    partition: SupportPartition,
    slots: Sequence[_CircuitSlot],
    mu_weights: dict[Exponent, list[Fraction]],
    nu_weights: dict[Exponent, list[Fraction]],
) -> SoncDecomposition | None:
    """Assemble the candidate decomposition from exact weights; ``None``
    when some piece fails to be a circuit (rounding artefacts)."""
    remainder_terms: dict[Exponent, Fraction] = {
        alpha: f.terms[alpha] for alpha in partition.r_set
    }
    mu_of: dict[tuple[Exponent, int], Fraction] = {}
    for alpha, members in mu_weights.items():
        for position, index in enumerate(_mu_members(partition, slots, alpha)):
            mu_of[(alpha, index)] = members[position]
    circuits: list[Circuit] = []
    for beta, weights in nu_weights.items():
        for position, index in enumerate(_nu_members(slots, beta)):
            nu = weights[position]
            slot = slots[index]
            outer_pairs = {
                alpha: mu_of[(alpha, index)] * f.terms[alpha]
                for alpha in slot.simplex.vertices
            }
            if nu == 0:
                for alpha, coeff in outer_pairs.items():
                    if coeff != 0:
                        remainder_terms[alpha] = (
                            remainder_terms.get(alpha, _ZERO) + coeff
                        )
                continue
            if any(coeff == 0 for coeff in outer_pairs.values()):
                return None
            terms = dict(outer_pairs)
            terms[beta] = terms.get(beta, _ZERO) + nu * f.terms[beta]
            piece = make_form(f.num_vars, terms, zero_degree=f.degree)
            detected = detect_circuit(piece)
            if isinstance(detected, NotACircuit):
                return None
            circuits.append(detected)
    remainder = make_form(f.num_vars, remainder_terms, zero_degree=f.degree)
    return SoncDecomposition(
        circuits=tuple(circuits), monomial_square_remainder=remainder
    )


def _mu_members(
    partition: SupportPartition, slots: Sequence[_CircuitSlot], alpha: Exponent
) -> list[int]:
    return [
        index for index, slot in enumerate(slots) if alpha in slot.simplex.vertices
    ]


def _nu_members(slots: Sequence[_CircuitSlot], beta: Exponent) -> list[int]:
    return [index for index, slot in enumerate(slots) if slot.beta == beta]


def _rationalize_group(values: Sequence[float]) -> list[Fraction] | None:
    snapped = []
    for value in values:
        if value < 1e-9:
            snapped.append(_ZERO)
        elif value > 1 - 1e-9:
            snapped.append(_ONE)
        else:
            snapped.append(Fraction(value).limit_denominator(10**6))
    total = sum(snapped, _ZERO)
    if total == 0:
        return None
    return [value / total for value in snapped]


def sonc_feasibility_search(
    f: SparseForm,
    partition: SupportPartition,
    budget: SearchBudget | None = None,
) -> SearchOutcome:
    """Search cancellation-free decomposition weights.

    Square coefficients are split across covering simplices and inner
    coefficients across their circuits (both splits summing to one); a
    choice is feasible when every resulting circuit passes the exact
    nonnegativity test.  The search runs first-order in log coordinates
    with softmax-parameterized splits; any feasible point is rounded to
    rationals and must re-verify exactly.
    """
    budget = budget or SearchBudget()
    if f.is_zero:
        raise ZeroFormInput("feasibility search needs a nonzero form")
    slots, mu_groups, nu_groups = _search_structure(f, partition)
    free_parameters = sum(len(g) - 1 for g in mu_groups.values()) + sum(
        len(g) - 1 for g in nu_groups.values()
    )
    if free_parameters > budget.max_params:
        raise BudgetExceeded(
            f"{free_parameters} free weights exceed the budget of {budget.max_params}"
        )
    if not slots:
        remainder = make_form(
            f.num_vars,
            {alpha: f.terms[alpha] for alpha in partition.r_set},
            zero_degree=f.degree,
        )
        decomposition = SoncDecomposition(circuits=(), monomial_square_remainder=remainder)
        if verify_decomposition(f, decomposition).valid:
            return SearchOutcome(SearchStatus.FEASIBLE, 0.0, decomposition, exact=True)
        raise UncoveredInnerExponent("no circuits and remainder does not reproduce f")

    if free_parameters == 0:
        ones_mu = {alpha: [_ONE] * len(g) for alpha, g in mu_groups.items()}
        ones_nu = {beta: [_ONE] * len(g) for beta, g in nu_groups.items()}
        decomposition = _build_exact_decomposition(f, partition, slots, ones_mu, ones_nu)
        if decomposition is not None and verify_decomposition(f, decomposition).valid:
            return SearchOutcome(SearchStatus.FEASIBLE, 0.0, decomposition, exact=True)
        margin = _exact_weights_margin(f, slots, ones_mu, ones_nu, partition)
        return SearchOutcome(SearchStatus.INFEASIBLE, margin, None, exact=True)

    best_margin, best_theta = _optimize(
        f, partition, slots, mu_groups, nu_groups, budget
    )
    mu_float, nu_float = _SearchProblem(f, slots, mu_groups, nu_groups).weights(
        best_theta
    )
    if best_margin <= 1e-6:
        # Promising enough to try the exact gate; rounding hits boundary
        # optima (weights like 1/2) exactly via continued fractions.
        exact_mu = {a: _rationalize_group(w) for a, w in mu_float.items()}
        exact_nu = {b: _rationalize_group(w) for b, w in nu_float.items()}
        if all(v is not None for v in exact_mu.values()) and all(
            v is not None for v in exact_nu.values()
        ):
            decomposition = _build_exact_decomposition(
                f, partition, slots, exact_mu, exact_nu
            )
            if decomposition is not None and verify_decomposition(f, decomposition).valid:
                return SearchOutcome(
                    SearchStatus.FEASIBLE, best_margin, decomposition, exact=True
                )
    if best_margin <= 1e-9:
        return SearchOutcome(SearchStatus.FEASIBLE, best_margin, None, exact=False)
    if best_margin > budget.infeasibility_margin:
        return SearchOutcome(SearchStatus.INFEASIBLE, best_margin, None, exact=False)
    return SearchOutcome(SearchStatus.INCONCLUSIVE, best_margin, None, exact=False)


class _SearchProblem:
    """Float-side view of the weight-splitting problem with all index
    lookups resolved up front."""

    def __init__(self, f, slots, mu_groups, nu_groups):
        self.mu_keys = list(mu_groups)
        self.nu_keys = list(nu_groups)
        self.mu_sizes = [len(mu_groups[k]) for k in self.mu_keys]
        self.nu_sizes = [len(nu_groups[k]) for k in self.nu_keys]
        self.abs_inner = [float(slot.abs_inner) for slot in slots]
        self.slot_nu = [
            (slot.beta, nu_groups[slot.beta].index(index))
            for index, slot in enumerate(slots)
        ]
        self.slot_terms = []
        for index, slot in enumerate(slots):
            terms = []
            for alpha, lam in zip(slot.simplex.vertices, slot.simplex.barycentric):
                position = mu_groups[alpha].index(index)
                constant = math.log(float(f.terms[alpha])) - math.log(float(lam))
                terms.append((alpha, position, float(lam), constant))
            self.slot_terms.append(terms)

    def weights(self, theta):
        mu_float: dict[Exponent, list[float]] = {}
        nu_float: dict[Exponent, list[float]] = {}
        offset = 0
        for key, size in zip(self.mu_keys, self.mu_sizes):
            mu_float[key], offset = _softmax_slice(theta, offset, size)
        for key, size in zip(self.nu_keys, self.nu_sizes):
            nu_float[key], offset = _softmax_slice(theta, offset, size)
        return mu_float, nu_float

    def margins(self, mu_float, nu_float):
        values = []
        for i, (beta, position) in enumerate(self.slot_nu):
            nu = nu_float[beta][position]
            log_theta = 0.0
            for alpha, mu_position, lam, constant in self.slot_terms[i]:
                mu = max(mu_float[alpha][mu_position], 1e-300)
                log_theta += lam * (math.log(mu) + constant)
            values.append(nu * self.abs_inner[i] - math.exp(log_theta))
        return values


def _softmax_slice(theta, offset, size):
    if size == 1:
        return [1.0], offset
    logits = [0.0] + [theta[offset + i] for i in range(size - 1)]
    peak = max(logits)
    exps = [math.exp(min(v - peak, 50.0)) for v in logits]
    total = sum(exps)
    return [v / total for v in exps], offset + size - 1


def _exact_weights_margin(f, slots, mu_weights, nu_weights, partition) -> float:
    """Max circuit excess for fully determined weights (floats for report
    only; the infeasibility itself is exact)."""
    mu_groups = {alpha: _mu_members(partition, slots, alpha) for alpha in mu_weights}
    nu_groups = {beta: _nu_members(slots, beta) for beta in nu_weights}
    problem = _SearchProblem(f, slots, mu_groups, nu_groups)
    mu_float = {k: [float(v) for v in vs] for k, vs in mu_weights.items()}
    nu_float = {k: [float(v) for v in vs] for k, vs in nu_weights.items()}
    return max(problem.margins(mu_float, nu_float))


def _optimize(f, partition, slots, mu_groups, nu_groups, budget):
    size = sum(len(g) - 1 for g in mu_groups.values()) + sum(
        len(g) - 1 for g in nu_groups.values()
    )
    scale = max(float(slot.abs_inner) for slot in slots)
    problem = _SearchProblem(f, slots, mu_groups, nu_groups)
    starts = max(budget.seeds, 1)
    per_start = max(300, budget.iterations // starts)
    taus = [0.3 * scale, 0.03 * scale, 0.003 * scale, 0.0003 * scale]
    phase = 300

    def hard_margin(theta):
        return max(problem.margins(*problem.weights(theta)))

    def smooth(theta, tau):
        values = problem.margins(*problem.weights(theta))
        peak = max(values)
        return peak + tau * math.log(sum(math.exp((v - peak) / tau) for v in values))

    best_margin = math.inf
    best_theta = [0.0] * size
    for start in range(starts):
        rng = random.Random(1000 + start)
        theta = [rng.uniform(-1.0, 1.0) for _ in range(size)]
        moment = [0.0] * size
        velocity = [0.0] * size
        since_improvement = 0
        for iteration in range(per_start):
            tau = taus[min(iteration // phase, len(taus) - 1)]
            gradient = []
            step = 1e-6
            for i in range(size):
                theta[i] += step
                upper = smooth(theta, tau)
                theta[i] -= 2 * step
                lower = smooth(theta, tau)
                theta[i] += step
                gradient.append((upper - lower) / (2 * step))
            for i in range(size):
                moment[i] = 0.9 * moment[i] + 0.1 * gradient[i]
                velocity[i] = 0.999 * velocity[i] + 0.001 * gradient[i] ** 2
                theta[i] -= 0.1 * moment[i] / (math.sqrt(velocity[i]) + 1e-12)
            current = hard_margin(theta)
            if current < best_margin - 1e-12 * max(1.0, scale):
                best_margin = current
                best_theta = list(theta)
                since_improvement = 0
            else:
                since_improvement += 1
            if best_margin <= 1e-10:
                return best_margin, best_theta
            # Allow one smoothing-phase change before giving up on a start.
            if since_improvement > phase + 60:
                break
    return best_margin, best_theta
