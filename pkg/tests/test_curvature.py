import math

import numpy as np
import pytest

from src.curvature.curvature_matrix import (
    check_dimension,
    curvature_matrix_bundle,
    curvature_profile,
    sharpness_check,
    vertex_curvature,
)
from src.curvature.psd_pencil import cd_check_psd
from src.graph import generators
from src.graph.catalog import chorded_heptagon, signed_triangle
from src.graph.signed_graph import SwitchingFunction, small_cycles_positive, switch
from src.operators.laplacian import SignChoice, apply_sign_choice
from src.utils.errors import BracketError


class TestCurvatureMatrix:
    def test_signed_triangle(self):
        profile = curvature_profile(signed_triangle())
        np.testing.assert_allclose(profile.per_vertex[math.inf], [0.25, 0.25, 0.25], atol=1e-9)

    def test_all_positive_triangle(self):
        g = apply_sign_choice(signed_triangle(), SignChoice.ALL_POSITIVE)
        assert curvature_profile(g).minimum() == pytest.approx(1.25, abs=1e-9)

    @pytest.mark.parametrize("N", [1.5, 2.0, 10.0, math.inf])
    def test_k2(self, N):
        expected = 2.0 if math.isinf(N) else 2.0 - 2.0 / N
        assert vertex_curvature(generators.complete_two(), 0, N) == pytest.approx(expected, abs=1e-12)

    @pytest.mark.parametrize("n", [5, 7, 9])
    @pytest.mark.parametrize("sign", ["balanced", "unbalanced"])
    def test_odd_cycles_nonnegative(self, n, sign):
        profile = curvature_profile(generators.cycle(n, sign), (2.0, 10.0, math.inf))
        for N in (2.0, 10.0, math.inf):
            assert profile.minimum(N) >= -1e-9
            assert profile.minimum(N) == pytest.approx(0.0, abs=1e-9)

    def test_cycle_below_dimension_two(self):
        assert curvature_profile(generators.cycle(6), (1.5,)).minimum(1.5) == pytest.approx(1 - 2 / 1.5, abs=1e-9)

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_hypercube_one_negative(self, n):
        g = generators.hypercube_one_negative(n)
        bundle = curvature_matrix_bundle(g, 0)
        expected = sorted([(2 - n) / n] + [2 / n] * (n - 1))
        np.testing.assert_allclose(bundle.eigenvalues(), expected, atol=1e-9)
        assert bundle.curvature() == pytest.approx((2 - n) / n, abs=1e-9)

    @pytest.mark.slow
    def test_hypercube_one_negative_six(self):
        g = generators.hypercube_one_negative(6)
        assert vertex_curvature(g, 0) == pytest.approx(-4 / 6, abs=1e-9)

    def test_hypercube_one_negative_one(self):
        assert vertex_curvature(generators.hypercube_one_negative(1), 0) == pytest.approx(2.0, abs=1e-9)

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_all_positive_hypercube(self, n):
        assert curvature_profile(generators.hypercube(n)).minimum() == pytest.approx(2 / n, abs=1e-9)

    def test_chorded_heptagon_all_positive(self):
        g = chorded_heptagon("all_positive")
        assert curvature_profile(g).minimum() == pytest.approx(-0.194, abs=0.001)

    def test_small_cycle_reduction(self):
        g = chorded_heptagon()
        assert small_cycles_positive(g)
        np.testing.assert_allclose(
            curvature_profile(g).per_vertex[math.inf],
            curvature_profile(chorded_heptagon("all_positive")).per_vertex[math.inf],
            atol=1e-9,
        )

    def test_switching_invariance(self, rng):
        g = generators.hypercube_one_negative(3)
        reference = curvature_profile(g, (2.0, math.inf))
        for _ in range(100):
            switched = curvature_profile(switch(g, SwitchingFunction.random(g.n, rng)), (2.0, math.inf))
            for N in (2.0, math.inf):
                np.testing.assert_allclose(switched.per_vertex[N], reference.per_vertex[N], atol=1e-9)

    def test_curvature_decreases_with_dimension(self):
        profile = curvature_profile(chorded_heptagon(), (2.0, 5.0, math.inf))
        assert np.all(profile.per_vertex[2.0] <= profile.per_vertex[5.0] + 1e-12)
        assert np.all(profile.per_vertex[5.0] <= profile.per_vertex[math.inf] + 1e-12)

    def test_profile_argmin(self):
        profile = curvature_profile(generators.hypercube_one_negative(3))
        assert profile.at(profile.argmin()) == pytest.approx(profile.minimum())

    def test_rejects_wrong_bundle_count(self):
        g = signed_triangle()
        with pytest.raises(ValueError, match="curvature bundles"):
            curvature_profile(g, bundles=[curvature_matrix_bundle(g, 0)])

    @pytest.mark.parametrize("N", [0.0, -1.0, float("nan")])
    def test_check_dimension(self, N):
        with pytest.raises(ValueError, match="dimension N"):
            check_dimension(N)

    def test_sharpness(self, corpus_graphs):
        for name, g in corpus_graphs.items():
            result = sharpness_check(g)
            assert result.holds, name
            assert result.lower_bound == pytest.approx(-1.0 + 2.0 / g.max_degree)


class TestPsdPencil:
    @pytest.mark.parametrize("N", [2.0, 10.0, math.inf])
    def test_agrees_with_curvature_matrix(self, corpus_graphs, N):
        for name, g in corpus_graphs.items():
            profile = curvature_profile(g, (N,))
            for x in range(g.n):
                assert cd_check_psd(g, x, N) == pytest.approx(profile.at(x, N), abs=1e-7), (name, x)

    def test_bracket_error(self):
        g = signed_triangle()
        with pytest.raises(BracketError, match="above"):
            cd_check_psd(g, 0, bracket=(-1.0, 0.1))
        with pytest.raises(BracketError, match="below"):
            cd_check_psd(g, 0, bracket=(1.0, 2.0))
