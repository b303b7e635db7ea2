from fractions import Fraction

import pytest
from hypothesis import given, settings

import oracles
from conftest import instances
from netinspect.disjoint import verify_theorem1_conditions
from netinspect.exact import solve_exact
from netinspect.game import MixedStrategy
from netinspect.heuristic import optimality_gap, solve_heuristic, worst_case_evaluation


def test_all_unplaced_worst_case_is_budget(figure1):
    inst = figure1.with_budget(3)
    sigma = MixedStrategy.pure(inst.positioning())
    value, plan = worst_case_evaluation(inst, sigma)
    assert value == 3.0
    assert plan.sorted() == (0, 1, 2)


def test_figure1_heuristic(figure1):
    inst = figure1.with_budget(1)
    out = solve_heuristic(inst)
    assert out.surrogate.k_star == 4
    assert [inst.nodes[v] for v in out.surrogate.ordered_nodes] == ["v1", "v4", "v3", "v2"]
    assert all(p == Fraction(1, 4) for _, p in out.strategy)
    assert out.worst_case == pytest.approx(oracles.worst_case(inst, out.strategy), abs=1e-12)
    assert out.worst_case >= solve_exact(inst).value - 1e-9
    assert set(out.timings) == {"cover", "partition", "construct", "evaluate", "total"}


def test_gap_report():
    assert optimality_gap(1.1, 1.0).gap == pytest.approx(0.1)
    assert optimality_gap(1.0 - 1e-12, 1.0).gap == 0.0
    zero = optimality_gap(0.25, 0.0)
    assert zero.gap == 0.25 and not zero.relative


@settings(max_examples=60, deadline=None)
@given(instances(max_nodes=5, max_components=7, max_budget=4))
def test_worst_case_matches_enumeration(inst):
    sigma = solve_heuristic(inst).strategy
    value, plan = worst_case_evaluation(inst, sigma)
    assert abs(value - oracles.worst_case(inst, sigma)) <= 1e-12
    assert len(plan) == inst.b2


@settings(max_examples=40, deadline=None)
@given(instances(max_nodes=4, max_components=6, max_budget=3))
def test_heuristic_is_feasible_upper_bound(inst):
    out = solve_heuristic(inst)
    assert out.worst_case >= solve_exact(inst).value - 1e-9
    report = verify_theorem1_conditions(inst, out.strategy, profile=out.surrogate)
    assert report.cond1_deviation == 0


def test_idle_sensors_counted():
    from netinspect.game import GameInstance
    inst = GameInstance.from_sets({"v1": ["e1", "e2"], "v2": ["e1"], "v3": ["e2"]}, [0.9, 0.8, 0.7], 1)
    out = solve_heuristic(inst)
    assert out.cover.size == 1
    assert out.idle_sensors == 2
