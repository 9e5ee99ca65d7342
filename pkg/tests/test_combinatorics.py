import math
from dataclasses import replace
from fractions import Fraction

import numpy as np
import pytest

from src.combinatorics.cheeger import cheeger_constant
from src.combinatorics.frustration import (
    frustration_index,
    induced_frustration,
    min_negative_switching,
    tau_from_code,
)
from src.combinatorics.nodal import is_strong_nodal_walk, path_sign_trace, strong_nodal_decomposition
from src.combinatorics.sign_classes import (
    SignClassScanner,
    best_class_index,
    canonical_representative,
    canonical_signs,
    evaluate_switching_class,
    switching_classes,
)
from src.graph import generators
from src.graph.catalog import chorded_heptagon, from_spec, signed_triangle
from src.graph.signed_graph import SwitchingFunction, Walk, is_balanced, switch
from src.spectral.spectrum import first_nonzero_eigenvalue
from src.utils.errors import SizeLimitError


class TestFrustration:
    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_hypercube_one_negative(self, n):
        assert frustration_index(generators.hypercube_one_negative(n)).iota == 2

    def test_hypercube_one_negative_sweep(self):
        # the sweep itself, without the one-negative-edge shortcut
        cube = generators.hypercube_one_negative(3)
        count, code = min_negative_switching(cube.n, cube.edges)
        assert count == 1
        assert len(switch(cube, tau_from_code(cube.n, code)).negative_edges) == 1

    def test_balanced_corpus_graphs(self, corpus_graphs):
        for name, g in corpus_graphs.items():
            result = frustration_index(g)
            assert (result.iota == 0) == is_balanced(g).balanced, name
            assert result.iota % 2 == 0
            assert 0 <= result.iota <= 2 * g.num_edges

    def test_all_negative_k4(self):
        result = frustration_index(generators.complete(4, "all_negative"))
        assert result.iota == 4
        assert len(result.residual_negative_edges) == 2
        assert result.switchings_checked == 8

    def test_optimal_tau_is_optimal(self):
        g = generators.complete(5, "all_negative")
        result = frustration_index(g)
        switched = switch(g, result.optimal_tau)
        assert 2 * len(switched.negative_edges) == result.iota
        assert frustration_index(switched).iota == result.iota

    def test_switching_invariance(self, rng):
        g = generators.complete(5, "all_negative")
        reference = frustration_index(g).iota
        for _ in range(100):
            assert frustration_index(switch(g, SwitchingFunction.random(g.n, rng))).iota == reference

    def test_worker_count_does_not_change_result(self):
        g = generators.complete(6, "all_negative")
        assert min_negative_switching(g.n, g.edges, workers=1) == min_negative_switching(g.n, g.edges, workers=4)

    def test_size_limit(self):
        with pytest.raises(SizeLimitError) as excinfo:
            frustration_index(generators.complete(5, "all_negative"), limit=4)
        assert (excinfo.value.size, excinfo.value.limit) == (5, 4)

    def test_induced_frustration(self):
        g = generators.complete(4, "all_negative")
        assert induced_frustration(g, [0, 1, 2]) == 2
        assert induced_frustration(g, [0, 1]) == 0
        assert induced_frustration(g, [0]) == 0


class TestCheeger:
    def test_signed_triangle(self):
        result = cheeger_constant(signed_triangle())
        assert result.ratio == Fraction(1, 3)
        assert result.witness == (0, 1, 2)
        assert (result.iota, result.boundary, result.volume) == (2, 0, 6)
        assert result.consistent

    def test_unbalanced_pentagon(self):
        result = cheeger_constant(generators.cycle(5, "unbalanced"))
        assert result.ratio == Fraction(1, 5)
        assert result.h == pytest.approx(0.2)

    def test_balanced_is_zero(self):
        result = cheeger_constant(generators.cycle(6))
        assert result.h == 0.0
        assert result.iota == 0

    def test_bounded_by_frustration_over_volume(self, corpus_graphs):
        for name, g in corpus_graphs.items():
            result = cheeger_constant(g)
            assert result.consistent, name
            assert result.ratio <= Fraction(frustration_index(g).iota, g.volume), name

    @pytest.mark.parametrize("spec", ["signed-triangle", "cycle:5:unbalanced", "chorded-heptagon"])
    def test_eigenvalue_at_most_twice_h(self, spec):
        # the witness ψ is a test function with Rayleigh quotient <= 2h
        g = from_spec(spec)
        assert first_nonzero_eigenvalue(g).value <= 2 * cheeger_constant(g).h + 1e-12

    def test_workers(self):
        g = chorded_heptagon()
        assert cheeger_constant(g, workers=1).ratio == cheeger_constant(g, workers=3).ratio

    def test_size_limit(self):
        with pytest.raises(SizeLimitError):
            cheeger_constant(generators.cycle(9), limit=8)


class TestNodal:
    def test_chorded_heptagon_first_eigenfunction(self):
        g = chorded_heptagon()
        f = first_nonzero_eigenvalue(g).eigenfunction
        decomposition = strong_nodal_decomposition(g, f)
        assert len(decomposition) == 1
        blocked = [(g.label(x), g.label(y)) for x, y, _ in g.edges if not is_strong_nodal_walk(g, f, [x, y])]
        assert blocked == [("4", "5")]

    def test_zeros_split_domains(self):
        g = generators.path(5)
        decomposition = strong_nodal_decomposition(g, [1.0, 2.0, 0.0, -1.0, 1.0])
        assert decomposition.support == (0, 1, 3, 4)
        assert decomposition.domains == ((0, 1), (3,), (4,))
        assert decomposition.domain_of(2) == -1
        assert decomposition.domain_of(4) == 2

    def test_negative_edge_joins_opposite_signs(self):
        g = signed_triangle()
        decomposition = strong_nodal_decomposition(g, [1.0, 1.0, -1.0])
        assert decomposition.domains == ((0, 1, 2),)

    def test_tiny_values_are_zeros(self):
        decomposition = strong_nodal_decomposition(generators.path(3), [1.0, 1e-14, 1.0])
        assert decomposition.domains == ((0,), (2,))

    def test_switching_invariance(self, rng):
        g = chorded_heptagon()
        f = rng.standard_normal(g.n)
        reference = len(strong_nodal_decomposition(g, f))
        for _ in range(100):
            tau = SwitchingFunction.random(g.n, rng)
            assert len(strong_nodal_decomposition(switch(g, tau), tau.as_array() * f)) == reference

    def test_path_sign_trace(self):
        g = signed_triangle()
        f = np.array([1.0, 2.0, 3.0])
        walk = Walk.along(g, [0, 2, 1])
        assert path_sign_trace(g, f, walk) == [1.0, -3.0, -2.0]
        assert path_sign_trace(g, f, [0, 2, 1]) == [1.0, -3.0, -2.0]
        assert not is_strong_nodal_walk(g, f, walk)
        assert is_strong_nodal_walk(g, f, [0, 1])


class TestSignClasses:
    def test_class_count(self):
        assert len(switching_classes(chorded_heptagon())) == 2
        assert len(switching_classes(generators.complete(4))) == 8
        assert len(switching_classes(generators.path(5))) == 1

    def test_canonical_signs_are_switching_invariant(self, rng):
        g = generators.complete(4, "all_negative")
        reference = canonical_signs(g)
        for _ in range(20):
            assert canonical_signs(switch(g, SwitchingFunction.random(g.n, rng))) == reference

    def test_canonical_representative_of_balanced(self):
        g = generators.cycle(6).with_signs([-1, 1, -1, 1, 1, 1])
        assert canonical_representative(g).edge_signs == (1,) * 6

    def test_canonical_is_lexicographically_smallest(self):
        g = generators.cycle(5, "unbalanced")
        assert canonical_signs(g) == (1, 1, 1, 1, -1)

    def test_representatives_are_distinct_classes(self):
        classes = switching_classes(generators.complete(4))
        assert len({canonical_signs(g) for g in classes}) == len(classes)
        assert classes[0].edge_signs == (1,) * 6

    def test_evaluate_triangle(self):
        evaluation = evaluate_switching_class(signed_triangle())
        assert evaluation.eigenvalue == pytest.approx(0.5)
        assert evaluation.curvature == pytest.approx(0.25)
        assert evaluation.bound == pytest.approx(1 / 6)
        assert evaluation.improved
        assert evaluation.negative_edges == 1

    def test_scan_triangle(self, config, logger):
        result = SignClassScanner(config, logger).scan(generators.complete(3))
        bounds = sorted(evaluation.bound for evaluation in result.classes)
        assert bounds == pytest.approx([1 / 14, 1 / 6])
        assert result.best_class.bound == pytest.approx(1 / 6)
        assert result.diameter == 1

    def test_best_class_index_skips_vacuous(self):
        evaluation = evaluate_switching_class(signed_triangle())
        vacuous = replace(evaluation, eigenvalue=0.1, curvature=1.0, bound=None, improved=False)
        assert best_class_index([vacuous, evaluation]) == 1
        assert best_class_index([vacuous]) is None

    def test_edge_limit(self, config, logger):
        with pytest.raises(SizeLimitError):
            SignClassScanner(config.with_overrides({"SIGN_SCAN_EDGE_LIMIT": 5}), logger).scan(generators.complete(4))

    def test_tree_has_one_class(self, config, logger):
        result = SignClassScanner(config, logger).scan(generators.star(3))
        assert len(result.classes) == 1
        assert result.classes[0].balanced
        assert not math.isnan(result.classes[0].eigenvalue)
