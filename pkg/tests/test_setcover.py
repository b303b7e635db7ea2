import time

import pytest
from hypothesis import given, settings

import oracles
from conftest import instances
from netinspect.errors import ValidationError
from netinspect.game import GameInstance
from netinspect.generate import generate_instance
from netinspect.setcover import (CoverResult, default_time_budget, exact_cover, greedy_cover,
                                 greedy_partition, min_set_cover)


def test_figure1_cover(figure1):
    res = min_set_cover(figure1)
    assert res.optimal
    assert res.size == 4
    assert [figure1.nodes[v] for v in res.cover_nodes] == ["v1", "v2", "v3", "v4"]


def test_figure1_partition(figure1):
    part = greedy_partition(figure1, min_set_cover(figure1))
    named = [(figure1.nodes[v], sorted(figure1.components[e] for e in b)) for v, b in part.ordered_blocks]
    assert named == [("v1", ["e1", "e2", "e3"]), ("v4", ["e7", "e8", "e9"]),
                     ("v3", ["e4", "e5"]), ("v2", ["e6"])]


def test_identical_sets_leave_an_empty_block():
    inst = GameInstance.from_sets({"v1": ["e1", "e2"], "v2": ["e1", "e2"]}, [0.5], 1)
    part = greedy_partition(inst, CoverResult((0, 1), optimal=False))
    assert part.blocks == {0: frozenset({0, 1}), 1: frozenset()}


def test_partition_rejects_non_cover(figure1):
    with pytest.raises(ValidationError):
        greedy_partition(figure1, CoverResult((0,), optimal=False))


def test_greedy_picks_largest_uncovered():
    masks = [0b0111, 0b1100, 0b0011, 0b1000]
    assert sorted(greedy_cover(masks, 0b1111)) == [0, 1]


@pytest.mark.parametrize("seed", range(30))
def test_exact_cover_matches_brute_force(seed):
    n = 6 + seed % 10
    inst = generate_instance(seed, n, 2 * n, 1, 1, overlap="random", p=0.2)
    res = min_set_cover(inst)
    assert res.optimal
    assert res.size == oracles.min_cover_size(inst)
    covered = set().union(*(inst.monitoring[v] for v in res.cover_nodes))
    assert covered == set(range(inst.n_components))


@settings(max_examples=50, deadline=None)
@given(instances(max_nodes=7, max_components=10))
def test_partition_invariants(inst):
    cover = min_set_cover(inst)
    part = greedy_partition(inst, cover)
    assert set(part.assignment) == set(range(inst.n_components))
    for e, v in part.assignment.items():
        assert e in inst.monitoring[v] and e in part.blocks[v]
    blocks = list(part.blocks.values())
    assert sum(len(b) for b in blocks) == inst.n_components
    assert cover.size <= len(greedy_cover(list(inst.masks), (1 << inst.n_components) - 1))


def test_timeout_falls_back_to_greedy():
    inst = generate_instance(3, 120, 200, 1, 1, overlap="random", p=0.05)
    t0 = time.perf_counter()
    cover, certified, _ = exact_cover(list(inst.masks), (1 << inst.n_components) - 1, 0.0)
    assert time.perf_counter() - t0 < 2.0
    assert not certified
    assert sorted(cover) == sorted(greedy_cover(list(inst.masks), (1 << inst.n_components) - 1))


def test_time_budget_from_environment(monkeypatch):
    monkeypatch.setenv("NETINSPECT_TIME_BUDGET", "2.5")
    assert default_time_budget() == 2.5
    monkeypatch.delenv("NETINSPECT_TIME_BUDGET")
    assert default_time_budget() == 10.0
