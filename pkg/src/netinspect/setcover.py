"""Minimum set cover by monitoring sets, and the greedy component partition.

Set operations run on Python int bitsets: ``masks[v]`` has bit ``e`` set when
node ``v`` monitors component ``e``.
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass, field

from .errors import ValidationError
from .game import GameInstance

DEFAULT_TIME_BUDGET = 10.0
TIME_BUDGET_ENV = "NETINSPECT_TIME_BUDGET"


def default_time_budget() -> float:
    raw = os.environ.get(TIME_BUDGET_ENV)
    if raw is None:
        return DEFAULT_TIME_BUDGET
    try:
        return float(raw)
    except ValueError:
        raise ValidationError(f"{TIME_BUDGET_ENV}={raw!r} is not a number", code="bad-env")


@dataclass(frozen=True)
class CoverResult:
    cover_nodes: tuple[int, ...]
    optimal: bool
    explored: int = 0
    seconds: float = 0.0

    @property
    def size(self) -> int:
        return len(self.cover_nodes)


@dataclass(frozen=True)
class Partition:
    assignment: dict[int, int]
    blocks: dict[int, frozenset[int]]
    ordered_blocks: tuple[tuple[int, frozenset[int]], ...] = field(default=())

    @property
    def nodes(self) -> tuple[int, ...]:
        return tuple(v for v, _ in self.ordered_blocks)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(b) for _, b in self.ordered_blocks)


def _bits(x: int):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def greedy_cover(masks: list[int], universe: int) -> list[int]:
    """Largest-uncovered-gain first; ties to the lowest index."""
    uncovered = universe
    chosen = []
    while uncovered:
        best, gain = -1, 0
        for v, m in enumerate(masks):
            g = (m & uncovered).bit_count()
            if g > gain:
                best, gain = v, g
        if best < 0:
            raise ValidationError("components cannot be covered", code="uncovered-component")
        chosen.append(best)
        uncovered &= ~masks[best]
    return chosen


class _Timeout(Exception):
    pass


class _CoverSearch:
    """Depth-first branch and bound over which set covers the hardest component."""

    def __init__(self, masks: list[int], universe: int, deadline: float):
        self.masks = masks
        self.deadline = deadline
        self.explored = 0
        n_comp = universe.bit_length()
        # covering-node bitset for each component
        self.covers = [0] * n_comp
        for v, m in enumerate(masks):
            for e in _bits(m):
                self.covers[e] |= 1 << v
        self.best: list[int] | None = None

    def lower_bound(self, uncovered: int, avail: int) -> int:
        gains = [(self.masks[v] & uncovered).bit_count() for v in _bits(avail)]
        largest = max(gains, default=0)
        if largest == 0:
            return 1 << 30
        by_size = -(-uncovered.bit_count() // largest)
        # components pairwise sharing no available cover each need their own set
        used = 0
        packing = 0
        comps = sorted(_bits(uncovered), key=lambda e: ((self.covers[e] & avail).bit_count(), e))
        for e in comps:
            c = self.covers[e] & avail
            if not c & used:
                used |= c
                packing += 1
        return max(by_size, packing)

    def search(self, chosen: list[int], uncovered: int, avail: int) -> None:
        self.explored += 1
        if self.explored % 256 == 0 and time.perf_counter() > self.deadline:
            raise _Timeout
        chosen = list(chosen)
        # forced picks: components with a single remaining covering set
        changed = True
        while changed and uncovered:
            changed = False
            for e in _bits(uncovered):
                c = self.covers[e] & avail
                if c == 0:
                    return
                if c & (c - 1) == 0:
                    v = c.bit_length() - 1
                    chosen.append(v)
                    avail &= ~c
                    uncovered &= ~self.masks[v]
                    changed = True
                    break
        if self.best is not None and len(chosen) >= len(self.best):
            return
        if not uncovered:
            self.best = sorted(chosen)
            return
        if self.best is not None and len(chosen) + self.lower_bound(uncovered, avail) >= len(self.best):
            return
        pivot = min(_bits(uncovered), key=lambda e: ((self.covers[e] & avail).bit_count(), e))
        options = sorted(_bits(self.covers[pivot] & avail),
                         key=lambda v: (-(self.masks[v] & uncovered).bit_count(), v))
        for v in options:
            self.search(chosen + [v], uncovered & ~self.masks[v], avail & ~(1 << v))
            avail &= ~(1 << v)


def _undominated(masks: list[int]) -> int:
    """Bitset of nodes whose set is not contained in another (identical sets keep the lowest index)."""
    keep = 0
    for v, m in enumerate(masks):
        dominated = False
        for w, o in enumerate(masks):
            if w != v and m & o == m and (o != m or w < v):
                dominated = True
                break
        if not dominated:
            keep |= 1 << v
    return keep


def exact_cover(masks: list[int], universe: int, time_budget: float) -> tuple[list[int], bool, int]:
    """Returns (cover, certified, nodes explored). Falls back to greedy on timeout."""
    incumbent = greedy_cover(masks, universe)
    search = _CoverSearch(masks, universe, time.perf_counter() + time_budget)
    search.best = sorted(incumbent)
    try:
        search.search([], universe, _undominated(masks))
    except _Timeout:
        return sorted(incumbent), False, search.explored
    return search.best, True, search.explored


def min_set_cover(instance: GameInstance, mode: str = "exact", time_budget: float | None = None) -> CoverResult:
    masks = list(instance.masks)
    universe = (1 << instance.n_components) - 1
    union = 0
    for m in masks:
        union |= m
    if union != universe:
        raise ValidationError("some component is not monitored by any node", code="uncovered-component")
    t0 = time.perf_counter()
    if mode == "greedy":
        cover = sorted(greedy_cover(masks, universe))
        return CoverResult(tuple(cover), optimal=False, seconds=time.perf_counter() - t0)
    if mode != "exact":
        raise ValueError(f"unknown cover mode {mode!r}")
    if time_budget is None:
        time_budget = default_time_budget()
    cover, certified, explored = exact_cover(masks, universe, time_budget)
    return CoverResult(tuple(cover), optimal=certified, explored=explored, seconds=time.perf_counter() - t0)


def greedy_partition(instance: GameInstance, cover: CoverResult) -> Partition:
    """Freeze the largest remaining cover set, strip its components from the rest, repeat."""
    remaining = {v: instance.masks[v] for v in cover.cover_nodes}
    union = 0
    for m in remaining.values():
        union |= m
    if union != (1 << instance.n_components) - 1:
        raise ValidationError("cover does not cover every component", code="invalid-cover")
    frozen: dict[int, int] = {}
    while remaining:
        v = min(remaining, key=lambda w: (-remaining[w].bit_count(), w))
        block = remaining.pop(v)
        frozen[v] = block
        for w in remaining:
            remaining[w] &= ~block
    blocks = {v: frozenset(_bits(m)) for v, m in frozen.items()}
    assignment = {e: v for v, b in blocks.items() for e in b}
    ordered = tuple(sorted(blocks.items(), key=lambda item: (-len(item[1]), item[0])))
    return Partition(assignment=assignment, blocks=blocks, ordered_blocks=ordered)
