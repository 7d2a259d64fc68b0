import itertools
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from mifdo.engineering import (
    TSP5,
    AntennaArrayProblem,
    PressureVesselDesign,
    TspInstance,
    aaad_fitness,
    aaad_problem,
    array_factor,
    brute_force_tour,
    decode_random_key,
    load_tsp,
    pvd_constraints,
    pvd_cost,
    pvd_feasible,
    pvd_problem,
    pvd_raw_cost,
    sidelobe_level,
    tour_length,
    tsp_problem,
)

AAA = AntennaArrayProblem()
SPREAD = np.array([0.3, 0.8, 1.3, 1.8])
LITERATURE_PVD = PressureVesselDesign(0.8125, 0.4375, 42.0984, 176.6366)


# -- antenna array ------------------------------------------------------------


def test_af_main_beam_is_element_count():
    assert array_factor(AAA, SPREAD, AAA.steering_angle) == pytest.approx(5.0)


def test_af_closed_form_plug_in():
    # cos(0) - cos(pi/2) = 1
    x = (0.5, 1.0, 1.5, 2.0)
    expected = sum(math.cos(2 * math.pi * v) for v in x) + math.cos(4.5 * math.pi)
    assert array_factor(AAA, x, 0.0) == pytest.approx(expected, abs=1e-12)


@given(st.lists(st.floats(0.0, 2.25), min_size=4, max_size=4), st.floats(0.0, math.pi))
def test_af_bounded_by_element_count(x, theta):
    assert abs(array_factor(AAA, x, theta)) <= 5.0 + 1e-9


def test_af_vectorized_matches_scalar():
    thetas = np.linspace(0, math.pi, 7)
    vec = array_factor(AAA, SPREAD, thetas)
    np.testing.assert_allclose(vec, [array_factor(AAA, SPREAD, t) for t in thetas])


def test_sidelobe_negative_and_main_peak_global():
    dense = np.linspace(0, math.pi, 200001)
    for x in (SPREAD, np.array([0.2, 0.7, 1.25, 1.95]), np.array([0.5, 1.0, 1.5, 2.0])):
        sll = sidelobe_level(AAA, x)
        assert sll < 0.0
        assert np.max(np.abs(array_factor(AAA, x, dense))) <= abs(array_factor(AAA, x, AAA.steering_angle)) + 1e-12


def test_feasible_fitness_equals_sidelobe():
    assert aaad_fitness(AAA, SPREAD) == sidelobe_level(AAA, SPREAD)


def test_close_elements_penalized():
    close = np.array([0.3, 0.4, 1.3, 1.8])  # 0.1 apart
    assert aaad_fitness(AAA, close) > aaad_fitness(AAA, SPREAD)
    assert aaad_fitness(AAA, close) - sidelobe_level(AAA, close) == pytest.approx(0.15 * AAA.penalty_coeff)


def test_element_beyond_max_penalized():
    x = np.array([0.3, 0.8, 1.3, 2.4])
    assert aaad_fitness(AAA, x) - sidelobe_level(AAA, x) == pytest.approx(0.4 * AAA.penalty_coeff + 0.15 * AAA.penalty_coeff)


def test_aaad_problem_shape():
    p = aaad_problem()
    assert p.dimension == 4 and len(p.constraints) == 22
    assert p.fitness(SPREAD) == pytest.approx(aaad_fitness(AAA, SPREAD))


def test_theta_grid_resolution_guard():
    with pytest.raises(ValueError):
        AntennaArrayProblem(n_theta=100)


# -- pressure vessel ----------------------------------------------------------


def test_literature_design_cost():
    ts, th, r, l = 0.8125, 0.4375, 42.0984, 176.6366
    oracle = 0.6224 * ts * r * l + 1.7781 * th * r * r + 3.1661 * ts * ts * l + 19.84 * ts * ts * r
    assert pvd_raw_cost(LITERATURE_PVD) == pytest.approx(oracle, rel=1e-15)
    assert pvd_raw_cost(LITERATURE_PVD) == pytest.approx(6059.71, abs=0.01)


def test_literature_design_nearly_feasible():
    # the published design is rounded to four decimals; the volume constraint
    # is missed by about 3 cubic inches out of 1.296e6
    g = [c(LITERATURE_PVD.as_array()) for c in pvd_constraints]
    assert g[0] <= 1e-5 and g[1] <= 0.0 and g[3] <= 0.0
    assert 0.0 < g[2] < 1296000.0 * 1e-5


def test_feasible_design_cost_is_raw():
    d = PressureVesselDesign(1.0, 0.5, 50.0, 100.0)
    assert pvd_feasible(d)
    assert pvd_cost(d) == pvd_raw_cost(d)


def test_long_vessel_violates_length():
    d = PressureVesselDesign(1.0, 0.5, 50.0, 250.0)
    assert not pvd_feasible(d)
    assert pvd_cost(d) == pytest.approx(pvd_raw_cost(d) + 10.0 * 1e6)


def test_doubling_shell_increases_cost():
    d = np.array([0.8, 0.5, 45.0, 150.0])
    d2 = d.copy()
    d2[0] *= 2
    assert pvd_raw_cost(d2) > pvd_raw_cost(d)


def test_pvd_problem_matches_cost():
    p = pvd_problem()
    x = np.array([1.0, 0.5, 50.0, 250.0])
    assert p.fitness(x) == pvd_cost(x)


# -- TSP ----------------------------------------------------------------------


def test_decode_sort_order():
    assert decode_random_key([0.3, 0.1, 0.2]) == [1, 2, 0]


def test_decode_ties_identity():
    assert decode_random_key([0.5] * 6) == list(range(6))


@given(st.lists(st.floats(0, 1), min_size=1, max_size=12))
def test_decode_is_permutation(keys):
    assert sorted(decode_random_key(keys)) == list(range(len(keys)))


@given(st.lists(st.floats(0, 1), min_size=1, max_size=8, unique=True))
def test_decode_monotone_invariance(keys):
    k = np.array(keys)
    assert decode_random_key(k) == decode_random_key(8.0 * k)


def test_decode_length_checked():
    with pytest.raises(ValueError):
        decode_random_key([0.1, 0.2], TSP5)


def test_unit_triangle_every_tour_three():
    tri = TspInstance([(0, 0), (1, 0), (0.5, math.sqrt(3) / 2)])
    for perm in itertools.permutations(range(3)):
        assert tour_length(perm, tri) == pytest.approx(3.0)


def test_single_city_zero():
    assert tour_length([0], TspInstance([(1, 1)])) == 0.0


@given(st.permutations(range(5)), st.integers(0, 4))
def test_tour_rotation_and_reversal_invariant(perm, k):
    base = tour_length(perm, TSP5)
    rotated = list(perm[k:]) + list(perm[:k])
    assert tour_length(rotated, TSP5) == pytest.approx(base)
    assert tour_length(list(reversed(perm)), TSP5) == pytest.approx(base)


def test_brute_force_matches_full_enumeration():
    full = min(tour_length(p, TSP5) for p in itertools.permutations(range(5)))
    tour, length = brute_force_tour(TSP5)
    assert length == pytest.approx(full)
    assert tour_length(tour, TSP5) == length
    assert length == pytest.approx(19.669786085164866)


def test_tsp5_identity_order_is_not_optimal():
    # all-equal keys decode to the identity; it must not solve the instance for free
    assert tour_length(range(5), TSP5) > brute_force_tour(TSP5)[1] + 1.0


def test_tsp_problem_objective():
    p = tsp_problem(TSP5)
    keys = np.array([0.3, 0.1, 0.2, 0.9, 0.5])
    assert p.fitness(keys) == tour_length([1, 2, 0, 4, 3], TSP5)


def test_load_tsp(tmp_path):
    f = tmp_path / "five.tsp"
    f.write_text("5\n0 0\n5 4\n3 1\n1 5\n6 0\n")
    inst = load_tsp(f)
    np.testing.assert_array_equal(inst.coords, TSP5.coords)
    bad = tmp_path / "bad.tsp"
    bad.write_text("3\n0 0\n1 1\n")
    with pytest.raises(ValueError):
        load_tsp(bad)
