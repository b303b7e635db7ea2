import numpy as np
import pytest
from hypothesis import given, settings

import oracles
from conftest import instances, layered
from netinspect.disjoint import disjoint_equilibrium, game_value_disjoint
from netinspect.errors import SizeCapError
from netinspect.game import GameInstance, MixedStrategy, payoff
from netinspect.exact import (best_pure_inspection, count_plans, count_positionings, enumerate_actions,
                              greedy_pure_inspection, iter_positionings, minimax, solve_column_generation,
                              solve_exact, solve_matrix_game, verify_equilibrium)
from netinspect.generate import generate_instance


def test_action_counts():
    assert count_positionings(3, 1) == 4
    assert count_plans(4, 2) == 11
    assert count_positionings(5, 2) == 26
    inst = generate_instance(1, 5, 6, 2, 2, overlap="random", p=0.4)
    assert len(list(iter_positionings(inst))) == 26
    game = enumerate_actions(inst)
    assert game.shape == (26, count_plans(6, 2))


def test_cap_error_names_both_sizes():
    inst = generate_instance(1, 8, 20, 4, 5, overlap="random", p=0.3)
    with pytest.raises(SizeCapError) as info:
        enumerate_actions(inst, cap=1000)
    msg = str(info.value)
    assert str(count_positionings(8, 4)) in msg and str(count_plans(20, 5)) in msg
    assert info.value.exit_code == 3


def test_matching_pennies():
    x, y, v, _ = minimax(np.array([[1.0, 0.0], [0.0, 1.0]]))
    assert v == pytest.approx(0.5)
    np.testing.assert_allclose(x, [0.5, 0.5])
    np.testing.assert_allclose(y, [0.5, 0.5])


@pytest.mark.parametrize("seed", range(15))
def test_minimax_matches_scipy(seed):
    M = np.random.default_rng(seed).random((4 + seed % 5, 3 + seed % 4))
    _, _, v, _ = minimax(M)
    assert v == pytest.approx(oracles.scipy_minimax(M), abs=1e-9)


def test_reduced_disjoint_instance():
    inst = layered((2, 1), [1.0], 1)
    res = solve_exact(inst)
    assert res.value == pytest.approx(0.5, abs=1e-12)
    assert res.certificate.certified


def test_figure1_against_fictitious_play(figure1):
    inst = figure1.with_sensors([1.0]).with_budget(1)
    res = solve_exact(inst)
    lo, hi = oracles.fictitious_play(enumerate_actions(inst).payoff_matrix, 20000)
    assert lo - 1e-9 <= res.value <= hi + 1e-9
    assert hi - lo < 0.02
    assert res.value == pytest.approx(oracles.scipy_minimax(enumerate_actions(inst).payoff_matrix), abs=1e-9)


def test_figure1_value(figure1):
    res = solve_exact(figure1.with_budget(1))
    assert res.value == pytest.approx(0.65, abs=1e-9)
    assert res.certificate.certified


def test_prefix_enumeration_loses_nothing():
    # against any attack mix, the best response over all positionings is a prefix one
    rng = np.random.default_rng(5)
    for seed in range(10):
        inst = generate_instance(seed, 4, 6, 3, 2, overlap="random", p=0.4)
        p = rng.random(inst.n_components)
        best, _ = best_pure_inspection(inst, p)
        from netinspect.game import undetection_vector
        full = min(float(undetection_vector(inst, s) @ p) for s in oracles.all_positionings(inst))
        assert best == pytest.approx(full, abs=1e-12)


def test_value_invariant_under_reordering():
    inst = generate_instance(11, 4, 6, 2, 2, overlap="random", p=0.4)
    rev = GameInstance(inst.nodes[::-1], inst.components[::-1], tuple(inst.monitoring[::-1]),
                       inst.sensor_accuracies, inst.b2)
    assert solve_exact(inst).value == pytest.approx(solve_exact(rev).value, abs=1e-9)


@settings(max_examples=30, deadline=None)
@given(instances(max_nodes=4, max_components=5, max_budget=2))
def test_lp_equilibrium_certified_by_oracles(inst):
    res = solve_exact(inst)
    assert res.certificate.certified
    assert oracles.worst_case(inst, res.inspection) == pytest.approx(res.value, abs=1e-9)
    assert oracles.best_inspection(inst, res.attack) == pytest.approx(res.value, abs=1e-9)


@settings(max_examples=30, deadline=None)
@given(instances(max_nodes=4, max_components=6, max_budget=3))
def test_column_generation_matches_matrix_game(inst):
    a = solve_exact(inst)
    b = solve_column_generation(inst)
    assert b.value == pytest.approx(a.value, abs=1e-9)
    assert b.certificate.certified


def test_column_generation_seeded_with_equilibrium_adds_nothing(example2):
    small = layered((3, 2, 2), [0.9, 0.5], 3)
    sigma1, _, value, _ = disjoint_equilibrium(small)
    res = solve_column_generation(small, seed=sigma1)
    assert res.info["columns_added"] == 0
    assert res.value == pytest.approx(value, abs=1e-12)


def test_column_generation_closed_form_single_sensor():
    for seed in range(5):
        inst = generate_instance(seed, 5, 9, 1, 3)
        res = solve_column_generation(inst)
        assert res.value == pytest.approx(game_value_disjoint(inst), abs=1e-9)


def test_greedy_pricing_is_an_upper_bound():
    rng = np.random.default_rng(0)
    inst = generate_instance(2, 5, 8, 3, 2, overlap="random", p=0.4)
    for _ in range(10):
        p = rng.random(inst.n_components)
        assert greedy_pure_inspection(inst, p)[0] >= best_pure_inspection(inst, p)[0] - 1e-12
    res = solve_column_generation(inst, pricing_mode="greedy")
    assert res.certificate.partial
    assert res.value >= solve_exact(inst).value - 1e-9


def test_verify_detects_dominated_attack(figure1):
    inst = figure1.with_budget(1)
    sigma1 = MixedStrategy.uniform([inst.positioning("v1", "v4"), inst.positioning("v4", "v1")])
    sigma2 = MixedStrategy.pure(inst.plan("e1"))
    cert = verify_equilibrium(inst, sigma1, sigma2)
    assert cert.attacker_gap > 0
    assert not cert.certified


def test_verify_full_budget_attack_has_zero_attacker_gap():
    inst = GameInstance.from_sets({"v1": ["e1", "e2"], "v2": ["e2", "e3"]}, [0.6], 3)
    sigma1 = MixedStrategy.pure(inst.positioning("v1"))
    sigma2 = MixedStrategy.pure(inst.plan("e1", "e2", "e3"))
    assert verify_equilibrium(inst, sigma1, sigma2).attacker_gap == pytest.approx(0.0, abs=1e-15)


def test_verify_partial_above_cap(figure1):
    sigma1, sigma2 = MixedStrategy.pure(figure1.positioning("v1")), MixedStrategy.pure(figure1.plan("e1"))
    cert = verify_equilibrium(figure1, sigma1, sigma2, defender_cap=3)
    assert cert.partial and cert.defender_gap is None and not cert.certified


def test_lp_payoff_consistent(figure1):
    res = solve_exact(figure1)
    assert payoff(figure1, res.inspection, res.attack) == pytest.approx(res.value, abs=1e-9)
