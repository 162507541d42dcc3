import math

import numpy as np
import pytest

import conevol

SQUARE = np.array([[1.0, 0.0, -1.0, 0.0], [0.0, 1.0, 0.0, -1.0]])
TRAPEZOID = np.column_stack(
    [[0, 1], np.array([1, 1]) / math.sqrt(2), [0, -1], np.array([-1, 1]) / math.sqrt(2)]
).astype(float)


def test_square_cone_volumes():
    g = conevol.cone_volumes(SQUARE, np.full(4, 0.5))
    assert np.allclose(g, 0.25, atol=1e-12)


def test_polytope_info_shoelace():
    info = conevol.polytope_info(TRAPEZOID, np.ones(4))
    pts = sorted(info["vertices"], key=lambda v: math.atan2(v[1] - info["centroid"][1], v[0] - info["centroid"][0]))
    x = np.array([p[0] for p in pts])
    y = np.array([p[1] for p in pts])
    area = 0.5 * abs(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1)))
    assert info["volume"] == pytest.approx(area, abs=1e-12)
    assert sum(info["gamma"]) == pytest.approx(area, abs=1e-12)


def test_scc_and_inverse_round_trip():
    b = conevol.normalize_to_unit_volume(TRAPEZOID, np.ones(4))
    g = conevol.cone_volumes(TRAPEZOID, b)
    verdict = conevol.scc_check(TRAPEZOID, g)
    assert verdict["kind"] == "ViolatesInequality"
    assert verdict["flat"] == [0, 2]
    assert conevol.scc_check(SQUARE, np.full(4, 0.25))["satisfies"]
    sols = conevol.solve_inverse(TRAPEZOID, g, starts=4)
    assert sols
    assert np.abs(conevol.cone_volumes(TRAPEZOID, sols[0]["b"]) - g).max() <= 1e-9


def test_errors_carry_codes():
    with pytest.raises(conevol.ConevolError, match="NotNormalized"):
        conevol.scc_check(SQUARE, np.full(4, 0.5))


def test_types_and_pscc():
    assert len(conevol.sample_type_cones(TRAPEZOID, 100, 0)) == 2
    assert len(conevol.pscc_vertices(SQUARE)) == 4
    assert len(conevol.irreducible_partition(SQUARE)) == 2
