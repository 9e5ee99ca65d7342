import math

import numpy as np
import pytest

from src.bounds import linear, nonlinear
from src.bounds.invariants import GraphInvariants
from src.bounds.report import (
    AT_LEAST,
    AT_MOST,
    CERTIFIED,
    FAIL,
    INFORMATIONAL,
    NOT_APPLICABLE,
    PASS,
    SKIPPED,
    SOLVER_FLAG,
    SUPPLIED,
    UNCONDITIONAL,
    VACUOUS,
    evaluate,
)
from src.bounds.suite import SuiteOptions, TheoremSuite, certificate_failures
from src.graph import generators
from src.graph.catalog import chorded_heptagon, signed_triangle
from src.utils.errors import HypothesisError


@pytest.fixture
def triangle(config):
    return GraphInvariants(signed_triangle(), config)


class TestReport:
    def test_trusted_hypothesis(self):
        assert evaluate("t", 1.0, 2.0, AT_MOST, CERTIFIED).status == PASS
        assert evaluate("t", 3.0, 2.0, AT_MOST, CERTIFIED).status == FAIL
        assert evaluate("t", 3.0, 2.0, AT_MOST, UNCONDITIONAL, on_failure=SOLVER_FLAG).status == SOLVER_FLAG

    def test_untrusted_hypothesis_is_informational(self):
        assert evaluate("t", 3.0, 2.0, AT_MOST, SUPPLIED).status == INFORMATIONAL
        assert evaluate("t", 1.0, 2.0, AT_MOST, SUPPLIED).status == INFORMATIONAL

    def test_margin_orientation(self):
        assert evaluate("t", 5.0, 2.0, AT_LEAST, CERTIFIED).margin == 3.0
        assert evaluate("t", 5.0, 2.0, AT_MOST, CERTIFIED).margin == -3.0

    def test_tolerance(self):
        report = evaluate("t", 2.0 + 1e-12, 2.0, AT_MOST, CERTIFIED)
        assert report.satisfied
        assert report.status == PASS

    def test_nan_side_fails(self):
        report = evaluate("t", math.nan, 2.0, AT_LEAST, CERTIFIED)
        assert report.margin == -math.inf
        assert report.certificate_failure

    def test_bad_orientation(self):
        with pytest.raises(ValueError):
            evaluate("t", 1.0, 2.0, "<", CERTIFIED)

    def test_as_dict(self):
        report = evaluate("t", 1.0, 2.0, AT_MOST, CERTIFIED, parameters={"epsilon": 2.0})
        record = report.as_dict()
        assert record["theorem"] == "t"
        assert record["satisfied"] is True
        assert record["parameters"] == {"epsilon": 2.0}


class TestClosedForms:
    def test_coefficients(self):
        assert linear.eigenvalue_bound_coefficients(2.0) == pytest.approx((1 / 8, 1 / 2))

    @pytest.mark.parametrize("N", [1.5, 2.0, 10.0, math.inf])
    def test_optimal_epsilon_gives_cd0n_coefficient(self, N):
        c1, _ = linear.eigenvalue_bound_coefficients(linear.optimal_epsilon(N), N)
        assert c1 == pytest.approx(linear.cd0n_coefficient(N))

    def test_coefficient_hypotheses(self):
        with pytest.raises(HypothesisError):
            linear.eigenvalue_bound_coefficients(0.0)
        with pytest.raises(HypothesisError):
            linear.eigenvalue_bound_coefficients(2.0, N=0.2)

    def test_ceil_product(self):
        assert [linear.ceil_product(t) for t in range(1, 6)] == [1, 2, 6, 8, 15]

    def test_diameter_rhs(self):
        assert linear.diameter_rhs(0.5, 0.25, 2) == pytest.approx(1 / 6)
        assert linear.diameter_rhs(1.5, 1.25, 2) == pytest.approx(1 / 14)
        assert linear.diameter_rhs(0.5, 1.0, 2) is None

    def test_lichnerowicz_limit(self):
        assert linear.lichnerowicz_limit(2.0, 0.5) == pytest.approx(1.0)
        assert linear.lichnerowicz_limit(math.inf, 0.5) == 0.5

    def test_hypercube_exclusion_dimension(self):
        assert linear.hypercube_exclusion_dimension() == 7

    def test_hypercube_exclusion_on_generated_graphs(self):
        seven = linear.hypercube_exclusion_check(7)
        assert seven.volume == 7 * 2**7
        assert seven.excluded
        assert not linear.hypercube_exclusion_check(6).excluded


class TestLinearChecks:
    def test_eigenvalue_estimate_on_signed_triangle(self, triangle):
        general, improved = linear.eigenvalue_lower_bound(triangle.graph, invariants=triangle)
        assert general.rhs == pytest.approx(5 / 32)
        assert improved.rhs == pytest.approx(3 / 16)
        assert general.status == improved.status == PASS
        assert general.inputs["K"].value == pytest.approx(0.25)

    @pytest.mark.parametrize("N", [math.inf, 2.0])
    def test_eigenvalue_estimate_holds_over_epsilon_sweep(self, corpus_graphs, config, N):
        for name, g in corpus_graphs.items():
            inv = GraphInvariants(g, config)
            for epsilon in np.linspace(0.05, 10.0, 40):
                for report in linear.eigenvalue_lower_bound(g, epsilon=float(epsilon), N=N, invariants=inv):
                    if report.rhs is not None:
                        assert report.rhs <= report.lhs + 1e-9, (name, epsilon, report.theorem)

    def test_diameter_on_triangles(self, config):
        signed = linear.diameter_lower_bound(signed_triangle(), invariants=GraphInvariants(signed_triangle(), config))
        assert signed[0].rhs == pytest.approx(1 / 6)
        assert signed[0].lhs == 2
        assert signed[1].lhs == 1
        positive = generators.complete(3)
        assert linear.diameter_lower_bound(positive, invariants=GraphInvariants(positive, config))[0].rhs == (
            pytest.approx(1 / 14)
        )

    def test_diameter_vacuous_with_large_supplied_curvature(self, triangle):
        reports = linear.diameter_lower_bound(triangle.graph, K=5.0, invariants=triangle)
        assert [report.status for report in reports] == [VACUOUS, VACUOUS]
        assert reports[0].hypothesis == SUPPLIED

    def test_supplied_curvature_is_not_certified(self, triangle):
        general, _ = linear.eigenvalue_lower_bound(triangle.graph, K=10.0, invariants=triangle)
        assert general.inputs["K"].provenance == SUPPLIED
        assert not general.satisfied
        assert general.status == INFORMATIONAL

    def test_harnack(self, triangle):
        reports = linear.harnack_check(triangle.graph, invariants=triangle)
        # two eigenfunctions times three alphas
        assert len(reports) == 6
        assert all(report.status == PASS for report in reports)
        with pytest.raises(HypothesisError):
            linear.harnack_check(triangle.graph, alphas=(1.0,), invariants=triangle)

    def test_gradient_estimate(self, triangle):
        reports = linear.gradient_estimate_check(triangle.graph, invariants=triangle)
        assert len(reports) == 2 * len(linear.DEFAULT_EPSILONS)
        assert all(report.status == PASS for report in reports)
        with pytest.raises(HypothesisError):
            linear.gradient_estimate_check(triangle.graph, epsilons=(0.0,), invariants=triangle)

    def test_lichnerowicz(self, triangle, config):
        assert linear.lichnerowicz_check(triangle.graph, variant="lemma", invariants=triangle).status == PASS
        assert linear.lichnerowicz_check(triangle.graph, variant="sharp", invariants=triangle).rhs == (
            pytest.approx(0.25)
        )
        pentagon = generators.cycle(5, "unbalanced")
        report = linear.lichnerowicz_check(pentagon, invariants=GraphInvariants(pentagon, config))
        assert report.status == VACUOUS
        with pytest.raises(HypothesisError):
            linear.lichnerowicz_check(triangle.graph, variant="other", invariants=triangle)

    def test_volume(self, triangle, config):
        report = linear.volume_bound(triangle.graph, invariants=triangle)
        assert report.lhs == 6
        assert report.status == PASS
        balanced = generators.cycle(4)
        with pytest.raises(HypothesisError):
            linear.volume_bound(balanced, invariants=GraphInvariants(balanced, config))

    def test_buser(self, triangle, config):
        report = linear.buser_check(triangle.graph, invariants=triangle)
        assert report.inputs["h"].value == pytest.approx(1 / 3)
        assert report.status == PASS
        balanced = generators.cycle(4)
        assert linear.buser_check(balanced, invariants=GraphInvariants(balanced, config)).status == INFORMATIONAL

    def test_all_negative_and_two_sided_on_pentagon(self, config):
        pentagon = generators.cycle(5)
        inv = GraphInvariants(pentagon, config)
        assert linear.all_negative_eigenvalue_bound(pentagon, invariants=inv).status == PASS
        lower, upper = linear.two_sided_liyau(pentagon, invariants=inv)
        assert lower.lhs == pytest.approx(1 - math.cos(2 * math.pi / 5))
        assert upper.parameters["branch"] == "non_bipartite"
        assert (lower.status, upper.status) == (PASS, PASS)

    def test_two_sided_bipartite_branch(self, config):
        square = generators.cycle(6)
        lower, upper = linear.two_sided_liyau(square, invariants=GraphInvariants(square, config))
        assert upper.parameters["index"] == 5
        assert upper.lhs == pytest.approx(1.5)

    def test_structural_hypotheses(self, triangle, config):
        with pytest.raises(HypothesisError):
            linear.two_sided_liyau(triangle.graph, invariants=triangle)
        square = generators.cycle(4)
        with pytest.raises(HypothesisError):
            linear.all_negative_eigenvalue_bound(square, invariants=GraphInvariants(square, config))


class TestNonlinearChecks:
    def test_p2_uses_linear_eigenvalue(self, triangle):
        report = nonlinear.p_diameter_volume_bound(triangle.graph, 2.0, invariants=triangle)
        assert report.lhs == pytest.approx(0.5)
        assert report.rhs == pytest.approx(1 / 12)
        assert report.status == PASS

    def test_volume_only(self, triangle):
        report = nonlinear.p_volume_only_bound(triangle.graph, 2.0, invariants=triangle)
        assert report.rhs == pytest.approx(1 / 72)

    def test_p_lichnerowicz_at_two(self, triangle):
        report = nonlinear.p_lichnerowicz_check(triangle.graph, 2.0, invariants=triangle)
        assert report.hypothesis == CERTIFIED
        assert report.rhs == pytest.approx(0.25)
        assert report.status == PASS

    def test_p_lichnerowicz_hypotheses(self, triangle):
        with pytest.raises(HypothesisError):
            nonlinear.p_lichnerowicz_check(triangle.graph, 1.5, K_p=0.1, invariants=triangle)
        with pytest.raises(HypothesisError):
            nonlinear.p_lichnerowicz_check(triangle.graph, 3.0, invariants=triangle)
        with pytest.raises(HypothesisError):
            nonlinear.p_lichnerowicz_check(triangle.graph, 2.0, N=1.0, invariants=triangle)
        with pytest.raises(ValueError):
            nonlinear.p_diameter_volume_bound(triangle.graph, 1.0, invariants=triangle)

    def test_rhs(self):
        assert nonlinear.p_lichnerowicz_rhs(2.0, 0.5, math.inf, 6) == pytest.approx(0.5)
        assert nonlinear.p_lichnerowicz_rhs(4.0, 0.5, 2.0, 4) == pytest.approx(0.25)

    def test_monotonicity_with_supplied_values(self, triangle):
        reports = nonlinear.monotonicity_check(triangle.graph, [2.0, 3.0], invariants=triangle, eigenvalues={3.0: 0.6})
        assert [report.theorem for report in reports] == ["monotonicity_scaled", "monotonicity_root"]
        assert reports[0].inputs["lambda_q"].provenance == SUPPLIED
        assert all(report.status == PASS for report in reports)

    def test_violated_monotonicity_is_a_solver_flag(self, triangle):
        reports = nonlinear.monotonicity_check(
            triangle.graph, [2.0, 3.0], invariants=triangle, eigenvalues={2.0: 0.5, 3.0: 10.0}
        )
        assert reports[0].status == SOLVER_FLAG
        assert not certificate_failures(reports)

    def test_unconverged_estimate_is_a_solver_flag(self, config):
        starved = config.with_overrides({"P_MAX_ITERATIONS": 1, "P_RESTARTS": 2})
        inv = GraphInvariants(chorded_heptagon(), starved)
        assert not inv.p_eigen(3.0).converged
        reports = [
            nonlinear.p_diameter_volume_bound(inv.graph, 3.0, invariants=inv),
            nonlinear.p_volume_only_bound(inv.graph, 3.0, invariants=inv),
        ]
        assert [report.status for report in reports] == [SOLVER_FLAG, SOLVER_FLAG]
        assert all(report.notes == nonlinear.UNCONVERGED_NOTE for report in reports)
        chain = nonlinear.monotonicity_check(inv.graph, [2.0, 3.0], invariants=inv)
        assert all(report.status == SOLVER_FLAG for report in chain)
        assert not certificate_failures(reports + chain)

    def test_unsorted_grid(self, triangle):
        with pytest.raises(ValueError):
            nonlinear.monotonicity_check(triangle.graph, [3.0, 2.0], invariants=triangle, eigenvalues={})


class TestSuite:
    def test_corpus_has_no_certificate_failures(self, corpus_graphs, config, logger):
        suite = TheoremSuite(config, logger)
        options = SuiteOptions(n_values=(math.inf, 2.0), p_values=nonlinear.DEFAULT_P_VALUES)
        for name, g in corpus_graphs.items():
            reports = suite.run(g, options)
            assert not certificate_failures(reports), name
            estimates = [report for report in reports if report.theorem == "eigenvalue_estimate"]
            assert sorted({report.parameters.get("epsilon") for report in estimates}) == [0.5, 1.0, 2.0, 4.0], name
            p_reports = [report for report in reports if report.theorem == "p_volume_only"]
            assert [report.parameters.get("p") for report in p_reports] == [1.5, 2.0, 3.0], name

    def test_statuses_on_signed_triangle(self, config, logger):
        reports = TheoremSuite(config, logger).run(signed_triangle(), SuiteOptions(p_values=(2.0,)))
        by_theorem = {report.theorem: report for report in reports}
        assert by_theorem["two_sided"].status == NOT_APPLICABLE
        assert by_theorem["volume"].status == PASS
        assert by_theorem["p_lichnerowicz"].status == PASS
        assert "monotonicity_scaled" not in by_theorem

    def test_balanced_bipartite_graph(self, config, logger):
        reports = TheoremSuite(config, logger).run(generators.cycle(4))
        by_theorem = {report.theorem: report for report in reports}
        assert by_theorem["volume"].status == NOT_APPLICABLE
        assert by_theorem["all_negative_eigenvalue"].status == NOT_APPLICABLE
        assert by_theorem["buser"].status == INFORMATIONAL

    def test_hypothesis_errors_become_skipped_reports(self, config, logger):
        reports = TheoremSuite(config, logger).run(signed_triangle(), SuiteOptions(epsilons=(-1.0,)))
        skipped = [report for report in reports if report.status == SKIPPED]
        assert [report.theorem for report in skipped] == ["eigenvalue_estimate"]

    def test_size_limit_becomes_skipped_report(self, config, logger):
        suite = TheoremSuite(config.with_overrides({"CHEEGER_SIZE_LIMIT": 2}), logger)
        reports = suite.run(signed_triangle())
        buser = [report for report in reports if report.theorem == "buser"]
        assert buser[0].status == SKIPPED
        assert "exceeds limit" in buser[0].notes
