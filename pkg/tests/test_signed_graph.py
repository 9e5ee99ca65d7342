import numpy as np
import pytest

from src.graph import generators
from src.graph.catalog import CORPUS_SPECS, chorded_heptagon, from_spec, signed_triangle
from src.graph.edge_list_io import (
    natural_key,
    read_edge_list,
    read_vertex_function,
    write_edge_list,
    write_vertex_function,
)
from src.graph.signed_graph import (
    SignedGraph,
    SwitchingFunction,
    Walk,
    ball,
    diameter,
    is_balanced,
    is_bipartite,
    is_triangle_free,
    small_cycles_positive,
    sphere,
    switch,
)
from src.utils.errors import GraphFormatError, GraphValidationError


class TestSignedGraph:
    def test_rejects_self_loop(self):
        with pytest.raises(GraphValidationError, match="self-loop"):
            SignedGraph(["a", "b"], [(0, 1, 1), (1, 1, 1)])

    def test_rejects_duplicate_edge(self):
        with pytest.raises(GraphValidationError, match="duplicate"):
            SignedGraph(["a", "b"], [(0, 1, 1), (1, 0, -1)])

    def test_rejects_bad_sign(self):
        with pytest.raises(GraphValidationError):
            SignedGraph(["a", "b"], [(0, 1, 2)])

    def test_rejects_disconnected(self):
        with pytest.raises(GraphValidationError, match="disconnected"):
            SignedGraph(["a", "b", "c", "d"], [(0, 1, 1), (2, 3, 1)])

    def test_rejects_isolated_vertex(self):
        with pytest.raises(GraphValidationError, match="isolated"):
            SignedGraph(["a", "b", "c"], [(0, 1, 1)])

    def test_degrees_and_volume(self):
        g = chorded_heptagon()
        assert g.n == 7
        assert g.num_edges == 8
        assert g.max_degree == 3
        assert g.volume == 16
        assert g.degree(g.index("2")) == 3
        assert g.sign(g.index("4"), g.index("5")) == -1
        assert g.sign(g.index("5"), g.index("4")) == -1

    def test_walk_path_signs(self):
        g = signed_triangle()
        walk = Walk.from_labels(g, ["1", "2", "3", "1"])
        assert walk.path_sign == (1, 1, 1, -1)
        assert len(walk) == 3

    def test_walk_rejects_non_adjacent_step(self):
        g = generators.path(4)
        with pytest.raises(ValueError, match="non-adjacent"):
            Walk.along(g, [0, 2])


class TestBalance:
    def test_balanced_certificate_switches_to_all_positive(self):
        g = generators.cycle(6).with_signs([-1, 1, -1, 1, 1, 1])
        result = is_balanced(g)
        assert result.balanced
        assert result.certificate(0) == 1
        assert all(s == 1 for s in switch(g, result.certificate).edge_signs)

    def test_unbalanced_returns_negative_closed_walk(self):
        g = from_spec("cycle:5:unbalanced")
        result = is_balanced(g)
        assert not result.balanced
        assert result.certificate is None
        cycle = result.negative_cycle
        assert cycle[0] == cycle[-1]
        assert Walk.along(g, cycle).path_sign[-1] == -1

    def test_switching_preserves_balance(self, rng):
        g = chorded_heptagon()
        for _ in range(10):
            tau = SwitchingFunction.random(g.n, rng)
            assert is_balanced(switch(g, tau)).balanced == is_balanced(g).balanced

    def test_switching_rejects_wrong_length(self):
        with pytest.raises(ValueError, match="switching function"):
            switch(signed_triangle(), SwitchingFunction.identity(2))


class TestStructure:
    def test_ball_and_sphere(self):
        g = generators.cycle(7)
        assert ball(g, 0, 2) == (0, 1, 2, 5, 6)
        assert sphere(g, 0, 2) == (2, 5)
        assert sphere(g, 0, 1) == (1, 6)

    def test_diameter(self):
        assert diameter(generators.cycle(7)) == 3
        assert diameter(generators.hypercube(3)) == 3
        assert diameter(generators.complete(4)) == 1

    def test_triangle_and_bipartite_flags(self):
        assert not is_triangle_free(signed_triangle())
        assert is_triangle_free(generators.cycle(5))
        assert is_bipartite(generators.hypercube(3))
        assert not is_bipartite(generators.cycle(5))

    def test_small_cycles_positive(self):
        assert small_cycles_positive(generators.cycle(5, "unbalanced"))
        assert not small_cycles_positive(signed_triangle())
        assert not small_cycles_positive(generators.hypercube_one_negative(2))


class TestGenerators:
    def test_hypercube_labels_are_bit_strings(self):
        cube = generators.hypercube(3)
        assert cube.labels == ("000", "001", "010", "011", "100", "101", "110", "111")
        assert cube.num_edges == 12
        assert set(cube.degrees.tolist()) == {3}

    def test_hypercube_one_negative_edge(self):
        cube = generators.hypercube_one_negative(3)
        negative = cube.negative_edges
        assert len(negative) == 1
        x, y, _ = negative[0]
        assert (cube.label(x), cube.label(y)) == ("000", "001")

    def test_hypercube_product_negative_edge_count(self):
        assert len(generators.hypercube_product(4).negative_edges) == 4

    def test_cycle_patterns(self):
        assert generators.cycle(5, "all_negative").edge_signs == (-1,) * 5
        unbalanced = generators.cycle(5, "unbalanced")
        assert len(unbalanced.negative_edges) == 1
        with pytest.raises(ValueError, match="sign pattern"):
            generators.cycle(5, "sideways")

    def test_trees(self):
        assert generators.path(5).num_edges == 4
        star = generators.star(4)
        assert star.degree(0) == 4

    @pytest.mark.parametrize("spec", CORPUS_SPECS)
    def test_corpus_specs_build(self, spec):
        g = from_spec(spec)
        assert g.n >= 3

    def test_unknown_spec(self):
        with pytest.raises(ValueError, match="unknown generator"):
            from_spec("petersen:10")

    def test_spec_needs_integer(self):
        with pytest.raises(ValueError, match="integer"):
            from_spec("cycle:five")


class TestEdgeListIO:
    TEXT = "# a comment\n1 2 +1\n2 3 -1\n3 1 +1\n"

    def test_read(self):
        g = read_edge_list(self.TEXT)
        assert g.labels == ("1", "2", "3")
        assert len(g.negative_edges) == 1

    def test_write_is_canonical(self):
        text = write_edge_list(read_edge_list("10 2 -1\n2 1 +1\n1 10 +1\n"))
        assert text == "# signed graph: 3 vertices, 3 edges\n1 2 +1\n1 10 +1\n2 10 -1\n"
        assert write_edge_list(read_edge_list(text)) == text

    def test_reads_path(self, tmp_path):
        path = tmp_path / "triangle.sg"
        path.write_text(self.TEXT)
        assert read_edge_list(path) == read_edge_list(self.TEXT)

    @pytest.mark.parametrize(
        "text, message",
        [
            ("1 2\n", "expected 'u v s'"),
            ("1 2 +2\n", "sign must be"),
            ("1 1 +1\n", "self-loop"),
            ("1 2 +1\n2 1 -1\n", "duplicate edge"),
        ],
    )
    def test_format_errors_carry_line_numbers(self, text, message):
        with pytest.raises(GraphFormatError, match=message) as excinfo:
            read_edge_list(text)
        assert excinfo.value.line_number is not None

    def test_disconnected_input(self):
        with pytest.raises(GraphValidationError, match="disconnected"):
            read_edge_list("1 2 +1\n3 4 +1\n")

    def test_natural_key(self):
        assert sorted(["v10", "v2", "v1"], key=natural_key) == ["v1", "v2", "v10"]

    def test_vertex_function(self):
        g = signed_triangle()
        f = read_vertex_function(g, "3 0.5\n1 1.0\n2 -2\n")
        np.testing.assert_allclose(f, [1.0, -2.0, 0.5])
        np.testing.assert_allclose(read_vertex_function(g, write_vertex_function(g, f)), f)

    def test_vertex_function_missing_vertex(self):
        with pytest.raises(GraphFormatError, match="no value"):
            read_vertex_function(signed_triangle(), "1 1.0\n2 1.0\n")
