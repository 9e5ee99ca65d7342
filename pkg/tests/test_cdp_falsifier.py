import math

import numpy as np
import pytest

from src.curvature.cdp_falsifier import (
    FALSIFIED,
    NOT_FALSIFIED,
    CDpFalsifier,
    cd_p_defect,
    cd_p_falsify,
)
from src.curvature.curvature_matrix import vertex_curvature
from src.graph import generators
from src.graph.catalog import signed_triangle
from src.operators.carre_du_champ import gamma, gamma2


def test_defect_at_two_is_quadratic(rng):
    g = signed_triangle()
    f = rng.standard_normal(g.n)
    expected = gamma2(g, f, 0) - 0.25 * gamma(g, f, f, 0)
    assert cd_p_defect(g, 0, 2.0, 0.25, math.inf, f) == pytest.approx(expected, abs=1e-12)


def test_defect_is_homogeneous(rng):
    g = generators.cycle(5, "unbalanced")
    f = rng.standard_normal(g.n)
    p = 3.0
    scaled = cd_p_defect(g, 0, p, 0.1, 4.0, 2.0 * f)
    # every term scales like |f|^{2p-2}
    assert scaled == pytest.approx(2.0 ** (2 * p - 2) * cd_p_defect(g, 0, p, 0.1, 4.0, f), rel=1e-10)


def test_finds_counterexample_above_curvature(config):
    g = signed_triangle()
    K = vertex_curvature(g, 0) + 0.5
    outcome = CDpFalsifier(config).falsify(g, 0, 2.0, K)
    assert outcome.status == FALSIFIED
    assert outcome.falsified
    assert outcome.counterexample is not None
    assert np.linalg.norm(outcome.counterexample) == pytest.approx(1.0)
    assert cd_p_defect(g, 0, 2.0, K, math.inf, outcome.counterexample) < -1e-9


def test_not_falsified_below_curvature(config):
    g = signed_triangle()
    K = vertex_curvature(g, 0) - 0.5
    outcome = CDpFalsifier(config).falsify(g, 0, 2.0, K)
    assert outcome.status == NOT_FALSIFIED
    assert outcome.counterexample is None
    assert outcome.starts == 3 + config.falsifier_budget


def test_wrapper_uses_budget(config):
    outcome = cd_p_falsify(generators.cycle(5), 0, 3.0, -1.0, budget=2, config=config, seed=1)
    assert outcome.starts <= 3 + 2
    assert outcome.p == 3.0
