"""Joint-distribution feasibility over the atom simplex, exactly.

A scenario fixes product-moment targets for ±1 variables.  A standard
joint distribution exists for those targets exactly when the linear
system

    p ≥ 0,  Σ p = 1,  (moment row)·p  (=, ≤, ≥)  target

has a solution, which phase-1 simplex decides in exact rational
arithmetic.  Every verdict ships evidence:

* feasible: a witness measure that reproduces every constraint exactly;
* infeasible: a Farkas certificate, i.e. row multipliers that combine
  the constraint rows into an impossibility, re-checkable by direct
  arithmetic (:func:`verify_certificate`), plus the feasibility margin:
  the least uniform relaxation of the targets that restores
  feasibility.

Targets may be intervals (brackets of irrational inputs).  Decisions
are then made at both endpoints; if the endpoints disagree the robust
verdict is honestly "indeterminate" rather than a rounding guess.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import CertificateError, ScenarioError
from .event_space import EventSpace, build_space, moment_coefficients
from .measures import STANDARD, AtomMeasure, validate
from .numerics import ScalarInterval, format_scalar
from . import simplex

FEASIBLE = "feasible"
INFEASIBLE = "infeasible"
INDETERMINATE = "indeterminate"

EQ, LE, GE = "eq", "le", "ge"
_RELATIONS = (EQ, LE, GE)

#: Optional cap on worker processes used by grid sweeps.
WORKERS_ENV_VAR = "CONTEXTUALITY_KIT_THREADS"


@dataclass(frozen=True)
class MomentConstraint:
    """Target for one product moment: subset, relation, interval target."""

    subset: tuple[str, ...]
    relation: str
    target: ScalarInterval

    def __post_init__(self):
        if self.relation not in _RELATIONS:
            raise ScenarioError(f"unknown relation {self.relation!r}")

    @classmethod
    def eq(cls, subset: Sequence[str], value) -> "MomentConstraint":
        return cls(tuple(subset), EQ, _as_interval(value))

    def describe(self) -> str:
        rel = {EQ: "=", LE: "<=", GE: ">="}[self.relation]
        return f"E({''.join(self.subset)}) {rel} {self.target}"


def _as_interval(value) -> ScalarInterval:
    if isinstance(value, ScalarInterval):
        return value
    return ScalarInterval.point(Fraction(value))


@dataclass(frozen=True)
class Scenario:
    """A moment problem: space, constraints, and measure kind."""

    space: EventSpace
    constraints: tuple[MomentConstraint, ...]
    kind: str = STANDARD
    title: str | None = None

    def __post_init__(self):
        seen = set()
        for c in self.constraints:
            moment_coefficients(self.space, c.subset)  # validates the subset
            key = tuple(sorted(c.subset))
            if key in seen:
                raise ScenarioError(f"duplicate moment constraint on {c.subset}")
            seen.add(key)

    @property
    def has_interval_targets(self) -> bool:
        return any(not c.target.is_point for c in self.constraints)


def make_scenario(
    variables: Sequence[str],
    constraints: Iterable[tuple[Sequence[str], str, object]],
    kind: str = STANDARD,
    title: str | None = None,
) -> Scenario:
    """Convenience constructor from (subset, relation, value) triples."""
    space = build_space(variables)
    built = tuple(
        MomentConstraint(tuple(subset), relation, _as_interval(value))
        for subset, relation, value in constraints
    )
    return Scenario(space, built, kind, title)


def ghz_symmetric_scenario(p: Fraction, q: Fraction) -> Scenario:
    """Three-variable scenario with P(single)=p and P(product=1)=q.

    Encoded as moments: E(A)=E(B)=E(C)=2p-1 and E(ABC)=2q-1.
    """
    e = 2 * Fraction(p) - 1
    t = 2 * Fraction(q) - 1
    return make_scenario(
        ["A", "B", "C"],
        [(["A"], EQ, e), (["B"], EQ, e), (["C"], EQ, e), (["A", "B", "C"], EQ, t)],
        title=f"symmetric p={p} q={q}",
    )


@dataclass(frozen=True)
class FeasibilityOutcome:
    verdict: str
    endpoint: str | None = None
    witness: AtomMeasure | None = None
    certificate: tuple[Fraction, ...] | None = None
    margin: Fraction | None = None
    endpoint_outcomes: dict = field(default_factory=dict)


def _standard_rows(scenario: Scenario, endpoint: str):
    """LP rows for the standard-kind polytope at one interval endpoint.

    Row 0 is the normalization Σp = 1; the remaining rows follow the
    scenario's constraint order.  Returns (rows, rhs, relations).
    """
    n = scenario.space.atom_count
    rows = [[1] * n]
    rhs = [Fraction(1)]
    relations = [EQ]
    for c in scenario.constraints:
        rows.append(moment_coefficients(scenario.space, c.subset))
        rhs.append(c.target.endpoint(endpoint))
        relations.append(c.relation)
    return rows, rhs, relations


def _to_standard_form(rows, rhs, relations):
    """Append slack/surplus columns so every row becomes an equality."""
    n = len(rows[0])
    slack_count = sum(1 for r in relations if r != EQ)
    total = n + slack_count
    out_rows = []
    slack_at = n
    for row, rel in zip(rows, relations):
        line = list(row) + [0] * (total - n)
        if rel == LE:
            line[slack_at] = 1
            slack_at += 1
        elif rel == GE:
            line[slack_at] = -1
            slack_at += 1
        out_rows.append(line)
    return out_rows, total


def _feasible_at(scenario: Scenario, endpoint: str):
    """Phase-1 only: returns (feasible, witness values or farkas)."""
    rows, rhs, relations = _standard_rows(scenario, endpoint)
    n = scenario.space.atom_count
    std_rows, total = _to_standard_form(rows, rhs, relations)
    result = simplex.solve_lp(None, std_rows, rhs, n_vars=total)
    if result.status == simplex.INFEASIBLE:
        return False, result.farkas
    return True, result.x[:n]


def solve(scenario: Scenario, endpoint: str = "lo") -> FeasibilityOutcome:
    """Decide feasibility at one interval endpoint, with evidence.

    The witness returned on the feasible side is the first basic
    feasible solution found under Bland's rule, hence deterministic.
    The certificate returned on the infeasible side is verified against
    :func:`verify_certificate` before being released, and the outcome
    carries the exact feasibility margin in both cases.
    """
    if scenario.kind != STANDARD:
        raise ScenarioError(
            f"the LP engine handles standard scenarios; kind {scenario.kind!r}"
            " is served by the dedicated witness solvers"
        )
    feasible, payload = _feasible_at(scenario, endpoint)
    if feasible:
        witness = AtomMeasure(scenario.space, tuple(payload), STANDARD)
        _check_witness(scenario, witness, endpoint)
        return FeasibilityOutcome(
            verdict=FEASIBLE, endpoint=endpoint, witness=witness, margin=Fraction(0)
        )
    certificate = tuple(payload)
    if not verify_certificate(scenario, certificate, endpoint):
        raise AssertionError("simplex produced a certificate that fails verification")
    return FeasibilityOutcome(
        verdict=INFEASIBLE,
        endpoint=endpoint,
        certificate=certificate,
        margin=margin(scenario, endpoint),
    )


def _check_witness(scenario: Scenario, witness: AtomMeasure, endpoint: str) -> None:
    report = validate(witness)
    if not report:
        raise AssertionError(f"witness fails validation: {report.violations}")
    for c in scenario.constraints:
        got = sum(
            (k * v for k, v in zip(moment_coefficients(scenario.space, c.subset), witness.values)),
            Fraction(0),
        )
        want = c.target.endpoint(endpoint)
        ok = (
            got == want
            if c.relation == EQ
            else got <= want if c.relation == LE else got >= want
        )
        if not ok:
            raise AssertionError(f"witness violates {c.describe()}: got {got}")


def solve_robust(scenario: Scenario) -> FeasibilityOutcome:
    """Decide at both interval endpoints; disagreement is indeterminate.

    For all-rational scenarios the endpoints coincide and a single run
    decides.  The reported margin is the smaller of the endpoint
    margins.
    """
    lo = solve(scenario, "lo")
    if not scenario.has_interval_targets:
        return lo
    hi = solve(scenario, "hi")
    margins = [m for m in (lo.margin, hi.margin) if m is not None]
    combined = min(margins) if margins else None
    if lo.verdict == hi.verdict:
        return FeasibilityOutcome(
            verdict=lo.verdict,
            endpoint="lo",
            witness=lo.witness,
            certificate=lo.certificate,
            margin=combined,
            endpoint_outcomes={"lo": lo, "hi": hi},
        )
    return FeasibilityOutcome(
        verdict=INDETERMINATE,
        margin=combined,
        endpoint_outcomes={"lo": lo, "hi": hi},
    )


def margin(scenario: Scenario, endpoint: str = "lo") -> Fraction:
    """Least uniform relaxation t ≥ 0 that makes the scenario feasible.

    Equality targets relax to |moment - target| ≤ t; inequality targets
    relax by t in their own direction.  Computed as an exact LP, so the
    result is an exact rational; it is 0 exactly when the scenario is
    feasible as stated.
    """
    rows, rhs, relations = _standard_rows(scenario, endpoint)
    n = scenario.space.atom_count
    # Variables: p (n), then t, then slacks.  Every relaxed row becomes
    # an inequality; equalities contribute a pair of one-sided rows.
    relaxed_rows, relaxed_rhs, relaxed_rel, t_sign = [], [], [], []
    relaxed_rows.append(rows[0])
    relaxed_rhs.append(rhs[0])
    relaxed_rel.append(EQ)
    t_sign.append(0)
    for row, b, rel in zip(rows[1:], rhs[1:], relations[1:]):
        if rel in (EQ, LE):
            relaxed_rows.append(row)
            relaxed_rhs.append(b)
            relaxed_rel.append(LE)
            t_sign.append(-1)  # row·p - t <= b
        if rel in (EQ, GE):
            relaxed_rows.append(row)
            relaxed_rhs.append(b)
            relaxed_rel.append(GE)
            t_sign.append(1)  # row·p + t >= b
    with_t = []
    for row, s in zip(relaxed_rows, t_sign):
        with_t.append(list(row) + [s])
    std_rows, total = _to_standard_form(with_t, relaxed_rhs, relaxed_rel)
    costs = [0] * total
    costs[n] = 1  # minimize t
    result = simplex.solve_lp(costs, std_rows, relaxed_rhs, n_vars=total)
    if result.status != simplex.OPTIMAL:
        raise AssertionError(f"margin LP ended {result.status}; it is always feasible")
    return result.x[n]


def verify_certificate(
    scenario: Scenario, certificate: Sequence[Fraction], endpoint: str = "lo"
) -> bool:
    """Re-check a Farkas certificate by direct exact arithmetic.

    The certificate has one multiplier per row (normalization row
    first, then the constraints in scenario order).  It proves
    infeasibility when the multipliers respect the row senses
    (nonnegative on ≥ rows, nonpositive on ≤ rows, free on equalities),
    the combined coefficient of every atom is ≤ 0, and the combined
    right-hand side is > 0: any p ≥ 0 would give 0 ≥ combined·p ≥ rhs > 0.
    """
    rows, rhs, relations = _standard_rows(scenario, endpoint)
    if len(certificate) != len(rows):
        raise CertificateError(
            f"certificate has {len(certificate)} entries for {len(rows)} rows"
        )
    y = [Fraction(v) for v in certificate]
    for yi, rel in zip(y, relations):
        if rel == GE and yi < 0:
            return False
        if rel == LE and yi > 0:
            return False
    n = scenario.space.atom_count
    for a in range(n):
        combined = sum((yi * row[a] for yi, row in zip(y, rows)), Fraction(0))
        if combined > 0:
            return False
    combined_rhs = sum((yi * b for yi, b in zip(y, rhs)), Fraction(0))
    return combined_rhs > 0


def certificate_to_json(certificate: Sequence[Fraction]) -> list[str]:
    return [format_scalar(Fraction(v)) for v in certificate]


# --- closed-form cross-check over the symmetric parameter grid -------------


@dataclass(frozen=True)
class GridMismatch:
    p: Fraction
    q: Fraction
    lp_feasible: bool
    closed_form_feasible: bool


@dataclass(frozen=True)
class GridAgreementReport:
    total: int
    mismatches: tuple[GridMismatch, ...]

    @property
    def agree(self) -> bool:
        return not self.mismatches


def uniform_grid(steps: int) -> list[tuple[Fraction, Fraction]]:
    """(steps x steps) rational grid over [0,1]²; includes both endpoints."""
    if steps < 2:
        raise ValueError("grid needs at least 2 steps per axis")
    axis = [Fraction(i, steps - 1) for i in range(steps)]
    return [(p, q) for p in axis for q in axis]


def _grid_point_agrees(point: tuple[Fraction, Fraction]) -> tuple[bool, bool]:
    from .closed_form import GhzMoments, check_ghz_inequalities

    p, q = point
    scenario = ghz_symmetric_scenario(p, q)
    lp_ok, _ = _feasible_at(scenario, "lo")
    cf_ok = check_ghz_inequalities(
        GhzMoments(2 * p - 1, 2 * p - 1, 2 * p - 1, 2 * q - 1)
    ).passed
    return lp_ok, cf_ok


def _worker_count(workers: int | None) -> int:
    if workers is not None:
        return max(1, workers)
    env = os.environ.get(WORKERS_ENV_VAR)
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return 1


def oracle_grid_agreement(
    points: Iterable[tuple[Fraction, Fraction]], workers: int | None = None
) -> GridAgreementReport:
    """Compare the LP verdict with the closed-form inequalities pointwise.

    Each grid point (p, q) builds the symmetric scenario with
    E(A)=E(B)=E(C)=2p-1 and E(ABC)=2q-1.  The report lists every
    mismatch; an empty list is the expected outcome.  Points may be
    partitioned across worker processes; the result order follows the
    input order regardless of scheduling.
    """
    points = list(points)
    workers = _worker_count(workers)
    if workers > 1 and len(points) > 64:
        import multiprocessing

        with multiprocessing.Pool(workers) as pool:
            verdicts = pool.map(_grid_point_agrees, points, chunksize=256)
    else:
        verdicts = [_grid_point_agrees(pt) for pt in points]
    mismatches = [
        GridMismatch(p, q, lp_ok, cf_ok)
        for (p, q), (lp_ok, cf_ok) in zip(points, verdicts)
        if lp_ok != cf_ok
    ]
    return GridAgreementReport(len(points), tuple(mismatches))
