from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

import contextuality_kit as ck


def test_public_surface_importable():
    for name in (
        "build_space",
        "sign_event",
        "moment_coefficients",
        "parse_value",
        "evaluate",
        "validate",
        "expectation",
        "signed_atom_sum",
        "conditional_expectation",
        "check_monotonicity",
        "check_conjugacy",
        "solve",
        "solve_robust",
        "margin",
        "verify_certificate",
        "oracle_grid_agreement",
        "ghz_sum",
        "check_ghz_inequalities",
        "construct_symmetric_joint",
        "check_noise_threshold",
        "mermin_assignment_check",
        "solve_bell_conditionals",
        "solve_upper_bell_conditionals",
        "solve_lower_ghz_witness",
        "solve_upper_ghz_witness",
        "build_operator",
        "expectation_value",
        "singlet_correlation",
    ):
        assert callable(getattr(ck, name)), name
    assert ck.__version__


def test_uniform_grid_needs_two_steps():
    with pytest.raises(ValueError):
        ck.uniform_grid(1)


def test_five_variable_space_scales():
    scenario = ck.make_scenario(
        ["V1", "V2", "V3", "V4", "V5"],
        [
            (["V1"], "eq", Fraction(1, 3)),
            (["V2", "V3"], "eq", Fraction(-1, 2)),
            (["V1", "V4", "V5"], "eq", Fraction(1, 4)),
        ],
    )
    outcome = ck.solve(scenario)
    assert outcome.verdict == "feasible"
    assert ck.signed_atom_sum(outcome.witness, ["V2", "V3"]) == Fraction(-1, 2)


_pair_target = st.fractions(min_value=-1, max_value=1, max_denominator=8)


@settings(deadline=None, max_examples=25)
@given(_pair_target, _pair_target, _pair_target, _pair_target)
def test_four_variable_pairwise_soundness(e11, e12, e21, e22):
    # the CHSH-shaped scenario family on the generic engine
    scenario = ck.make_scenario(
        ["A1", "A2", "B1", "B2"],
        [
            (["A1", "B1"], "eq", e11),
            (["A1", "B2"], "eq", e12),
            (["A2", "B1"], "eq", e21),
            (["A2", "B2"], "eq", e22),
        ],
    )
    outcome = ck.solve(scenario)
    if outcome.verdict == "feasible":
        assert ck.validate(outcome.witness).passed
        for constraint in scenario.constraints:
            got = ck.signed_atom_sum(outcome.witness, constraint.subset)
            assert got == constraint.target.lo
    else:
        assert ck.verify_certificate(scenario, outcome.certificate)
        # CHSH bound: infeasibility implies some signed combination
        # exceeds 2 (complete facet description for this marginal family)
        sums = [
            abs(s1 * e11 + s2 * e12 + s3 * e21 + s4 * e22)
            for s1, s2, s3, s4 in (
                (1, 1, 1, -1),
                (1, 1, -1, 1),
                (1, -1, 1, 1),
                (-1, 1, 1, 1),
            )
        ]
        assert max(sums) > 2
