"""Game data model and exact payoff machinery.

Nodes and components are identified by string ids at the boundary and by
dense integer indices internally. A sensor positioning is a tuple with one
entry per sensor (in descending-accuracy order); an entry is a node index or
``None`` for an unplaced sensor. An attack plan is a frozenset of component
indices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Generic, Hashable, Iterable, Iterator, Mapping, Sequence, TypeVar

import numpy as np

from .errors import ValidationError

UNPLACED = None

PROB_TOL = 1e-12
RENORMALIZE_TOL = 1e-9

A = TypeVar("A", bound=Hashable)


@dataclass(frozen=True)
class SensorPositioning:
    placements: tuple[int | None, ...]

    def __post_init__(self):
        placements = tuple(None if p is None else int(p) for p in self.placements)
        object.__setattr__(self, "placements", placements)
        placed = [p for p in placements if p is not None]
        if len(set(placed)) != len(placed):
            raise ValidationError(f"two sensors share a node in {placements}", code="duplicate-placement")

    def placed(self) -> list[tuple[int, int]]:
        """(sensor index, node index) pairs for placed sensors."""
        return [(k, v) for k, v in enumerate(self.placements) if v is not None]

    def n_placed(self) -> int:
        return sum(p is not None for p in self.placements)

    def __len__(self) -> int:
        return len(self.placements)

    def sort_key(self):
        return tuple(-1 if p is None else p for p in self.placements)


@dataclass(frozen=True)
class AttackPlan:
    targets: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "targets", frozenset(int(e) for e in self.targets))

    def __len__(self) -> int:
        return len(self.targets)

    def __contains__(self, e) -> bool:
        return e in self.targets

    def sorted(self) -> tuple[int, ...]:
        return tuple(sorted(self.targets))

    def sort_key(self):
        return (len(self.targets), self.sorted())


@dataclass(frozen=True)
class MixedStrategy(Generic[A]):
    """Finite-support distribution over pure actions.

    Probabilities may be floats or exact ``Fraction`` values; constructions
    with rational weights keep them exact so marginal conditions can be checked
    without rounding.
    """

    actions: tuple
    probs: tuple

    def __post_init__(self):
        actions = tuple(self.actions)
        probs = tuple(self.probs)
        if len(actions) != len(probs):
            raise ValidationError("actions and probabilities differ in length")
        if not actions:
            raise ValidationError("empty support", code="empty-support")
        if len(set(actions)) != len(actions):
            raise ValidationError("support actions are not pairwise distinct", code="duplicate-action")
        for p in probs:
            if not p >= 0:
                raise ValidationError(f"negative or NaN probability {p!r}", code="probability-range")
        total = sum(probs)
        err = abs(float(total) - 1.0)
        if err > RENORMALIZE_TOL:
            raise ValidationError(f"probabilities sum to {float(total)!r}", code="probability-sum")
        if total != 1 and err > PROB_TOL:
            probs = tuple(p / total for p in probs)
        object.__setattr__(self, "actions", actions)
        object.__setattr__(self, "probs", probs)

    @classmethod
    def pure(cls, action) -> "MixedStrategy":
        return cls((action,), (1,))

    @classmethod
    def uniform(cls, actions: Sequence) -> "MixedStrategy":
        return cls(tuple(actions), (Fraction(1, len(actions)),) * len(actions))

    @classmethod
    def from_pairs(cls, pairs: Iterable, merge: bool = False) -> "MixedStrategy":
        if not merge:
            pairs = list(pairs)
            return cls(tuple(a for a, _ in pairs), tuple(p for _, p in pairs))
        acc: dict = {}
        for a, p in pairs:
            acc[a] = acc.get(a, 0) + p
        return cls(tuple(acc), tuple(acc.values()))

    def __iter__(self) -> Iterator[tuple]:
        return iter(zip(self.actions, self.probs))

    def __len__(self) -> int:
        return len(self.actions)

    def prob_of(self, action) -> float | Fraction:
        for a, p in self:
            if a == action:
                return p
        return 0

    def support(self, tol: float = 0.0) -> list[tuple]:
        return [(a, p) for a, p in self if p > tol]

    def as_float(self) -> "MixedStrategy":
        return MixedStrategy(self.actions, tuple(float(p) for p in self.probs))


@dataclass(frozen=True)
class GameInstance:
    """A network inspection game.

    ``monitoring[v]`` holds the component indices monitored from node ``v``.
    Sensor accuracies are canonicalized to descending order.
    """

    nodes: tuple[str, ...]
    components: tuple[str, ...]
    monitoring: tuple[frozenset[int], ...]
    sensor_accuracies: tuple[float, ...]
    attack_budget: int
    name: str = field(default="", compare=False)

    def __post_init__(self):
        nodes = tuple(str(v) for v in self.nodes)
        comps = tuple(str(e) for e in self.components)
        mon = tuple(frozenset(int(e) for e in s) for s in self.monitoring)
        raw = tuple(float(x) for x in self.sensor_accuracies)
        for k, lam in enumerate(raw, start=1):
            if not 0.0 < lam <= 1.0:
                raise ValidationError(f"sensor {k} accuracy {lam!r} outside (0, 1]",
                                      code="accuracy-range", location=f"sensors[{k - 1}]")
        acc = tuple(sorted(raw, reverse=True))
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "components", comps)
        object.__setattr__(self, "monitoring", mon)
        object.__setattr__(self, "sensor_accuracies", acc)

        if not comps:
            raise ValidationError("component list is empty", code="empty-components", location="components")
        if not nodes:
            raise ValidationError("node list is empty", code="empty-nodes", location="nodes")
        if len(set(nodes)) != len(nodes):
            raise ValidationError("duplicate node id", code="duplicate-id", location="nodes")
        if len(set(comps)) != len(comps):
            raise ValidationError("duplicate component id", code="duplicate-id", location="components")
        if len(mon) != len(nodes):
            raise ValidationError("one monitoring set per node required", code="malformed")
        covered: set[int] = set()
        for i, s in enumerate(mon):
            if not s:
                raise ValidationError(f"monitoring set of node {nodes[i]!r} is empty",
                                      code="empty-monitoring-set", location=f"nodes[{i}].monitors")
            if min(s) < 0 or max(s) >= len(comps):
                raise ValidationError(f"node {nodes[i]!r} monitors an unknown component",
                                      code="unknown-component", location=f"nodes[{i}].monitors")
            covered |= s
        if len(covered) != len(comps):
            missing = [comps[e] for e in range(len(comps)) if e not in covered]
            raise ValidationError(f"components not monitored by any node: {missing}",
                                  code="uncovered-component", location="components")
        if len(acc) > len(nodes):
            raise ValidationError(f"{len(acc)} sensors but only {len(nodes)} nodes",
                                  code="too-many-sensors", location="sensors")
        b2 = self.attack_budget
        if isinstance(b2, bool) or not isinstance(b2, (int, np.integer)) or not 1 <= b2 <= len(comps):
            raise ValidationError(f"attack budget {b2!r} outside [1, {len(comps)}]",
                                  code="budget-range", location="attack_budget")
        object.__setattr__(self, "attack_budget", int(b2))

    @classmethod
    def from_sets(
        cls,
        monitoring: Mapping[str, Iterable[str]],
        sensor_accuracies: Sequence[float],
        attack_budget: int,
        components: Sequence[str] | None = None,
        name: str = "",
    ) -> "GameInstance":
        """Build from id-keyed monitoring sets. Node order follows the mapping."""
        if components is None:
            seen: dict[str, None] = {}
            for s in monitoring.values():
                for e in s:
                    seen.setdefault(str(e), None)
            components = list(seen)
        comp_index = {str(e): i for i, e in enumerate(components)}
        mon = []
        for v, s in monitoring.items():
            idx = set()
            for e in s:
                if str(e) not in comp_index:
                    raise ValidationError(f"node {v!r} monitors unknown component {e!r}", code="unknown-component")
                idx.add(comp_index[str(e)])
            mon.append(frozenset(idx))
        return cls(tuple(monitoring), tuple(components), tuple(mon), tuple(sensor_accuracies),
                   attack_budget, name=name)

    # sizes and lookups

    @property
    def n(self) -> int:
        return len(self.nodes)

    @property
    def n_components(self) -> int:
        return len(self.components)

    @property
    def b1(self) -> int:
        return len(self.sensor_accuracies)

    @property
    def b2(self) -> int:
        return self.attack_budget

    @cached_property
    def _node_index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.nodes)}

    @cached_property
    def _component_index(self) -> dict[str, int]:
        return {e: i for i, e in enumerate(self.components)}

    def node_index(self, v: str | int) -> int:
        if isinstance(v, (int, np.integer)) and not isinstance(v, bool):
            if 0 <= v < self.n:
                return int(v)
        elif v in self._node_index:
            return self._node_index[v]
        raise ValidationError(f"unknown node {v!r}", code="unknown-node")

    def component_index(self, e: str | int) -> int:
        if isinstance(e, (int, np.integer)) and not isinstance(e, bool):
            if 0 <= e < self.n_components:
                return int(e)
        elif e in self._component_index:
            return self._component_index[e]
        raise ValidationError(f"unknown component {e!r}", code="unknown-component")

    @cached_property
    def masks(self) -> tuple[int, ...]:
        """Monitoring sets as bitsets over component indices."""
        out = []
        for s in self.monitoring:
            m = 0
            for e in s:
                m |= 1 << e
            out.append(m)
        return tuple(out)

    @cached_property
    def incidence(self) -> np.ndarray:
        inc = np.zeros((self.n, self.n_components), dtype=bool)
        for v, s in enumerate(self.monitoring):
            inc[v, list(s)] = True
        inc.setflags(write=False)
        return inc

    @cached_property
    def accuracies(self) -> np.ndarray:
        lam = np.array(self.sensor_accuracies, dtype=float)
        lam.setflags(write=False)
        return lam

    def is_disjoint(self) -> bool:
        seen = 0
        for m in self.masks:
            if seen & m:
                return False
            seen |= m
        return True

    # builders

    def positioning(self, *nodes: str | int | None) -> SensorPositioning:
        """Positioning from node ids (or indices); missing trailing sensors are unplaced."""
        if len(nodes) > self.b1:
            raise ValidationError(f"{len(nodes)} placements for {self.b1} sensors")
        placements = [None if v is None else self.node_index(v) for v in nodes]
        placements += [None] * (self.b1 - len(placements))
        return SensorPositioning(tuple(placements))

    def plan(self, *components: str | int) -> AttackPlan:
        plan = AttackPlan(frozenset(self.component_index(e) for e in components))
        self.check_plan(plan)
        return plan

    def with_sensors(self, accuracies: Sequence[float]) -> "GameInstance":
        return GameInstance(self.nodes, self.components, self.monitoring, tuple(accuracies),
                            self.attack_budget, name=self.name)

    def with_budget(self, b2: int) -> "GameInstance":
        return GameInstance(self.nodes, self.components, self.monitoring, self.sensor_accuracies,
                            b2, name=self.name)

    # validation of actions

    def check_positioning(self, s: SensorPositioning) -> None:
        if not isinstance(s, SensorPositioning):
            raise ValidationError(f"not a sensor positioning: {s!r}")
        if len(s) != self.b1:
            raise ValidationError(f"positioning has {len(s)} entries, instance has {self.b1} sensors")
        for v in s.placements:
            if v is not None and not 0 <= v < self.n:
                raise ValidationError(f"positioning references unknown node index {v}", code="unknown-node")

    def check_plan(self, plan: AttackPlan) -> None:
        if not isinstance(plan, AttackPlan):
            raise ValidationError(f"not an attack plan: {plan!r}")
        if len(plan) > self.b2:
            raise ValidationError(f"attack plan of size {len(plan)} exceeds budget {self.b2}",
                                  code="budget-exceeded")
        for e in plan.targets:
            if not 0 <= e < self.n_components:
                raise ValidationError(f"attack plan references unknown component index {e}",
                                      code="unknown-component")

    def check_inspection(self, sigma1: MixedStrategy) -> None:
        for s in sigma1.actions:
            self.check_positioning(s)

    def check_attack(self, sigma2: MixedStrategy) -> None:
        for t in sigma2.actions:
            self.check_plan(t)


# payoff machinery


def undetection_probability(instance: GameInstance, s: SensorPositioning, e: str | int) -> float:
    """Probability that an attack on ``e`` goes undetected under pure positioning ``s``."""
    instance.check_positioning(s)
    ei = instance.component_index(e)
    u = 1.0
    for k, v in s.placed():
        if ei in instance.monitoring[v]:
            u *= 1.0 - instance.sensor_accuracies[k]
    return u


def undetection_vector(instance: GameInstance, s: SensorPositioning) -> np.ndarray:
    u = np.ones(instance.n_components)
    inc = instance.incidence
    for k, v in s.placed():
        u *= 1.0 - instance.sensor_accuracies[k] * inc[v]
    return u


def undetection_rows(instance: GameInstance, placements: np.ndarray) -> np.ndarray:
    """Vectorized undetection vectors for a batch of positionings.

    ``placements`` is an int array of shape (batch, b1) with -1 for unplaced.
    Returns shape (batch, n_components).
    """
    placements = np.asarray(placements, dtype=np.int64).reshape(len(placements), -1)
    u = np.ones((placements.shape[0], instance.n_components))
    inc = instance.incidence
    for k in range(placements.shape[1]):
        col = placements[:, k]
        placed = col >= 0
        if not placed.any():
            continue
        factor = 1.0 - instance.sensor_accuracies[k] * inc[np.where(placed, col, 0)]
        factor[~placed] = 1.0
        u *= factor
    return u


def pure_payoff(instance: GameInstance, s: SensorPositioning, plan: AttackPlan) -> float:
    instance.check_positioning(s)
    instance.check_plan(plan)
    if not plan.targets:
        return 0.0
    return float(undetection_vector(instance, s)[list(plan.sorted())].sum())


def attack_marginals(instance: GameInstance, sigma2: MixedStrategy) -> np.ndarray:
    """p(e): probability that each component is targeted."""
    instance.check_attack(sigma2)
    p = np.zeros(instance.n_components)
    for plan, prob in sigma2:
        if plan.targets:
            p[list(plan.targets)] += float(prob)
    return p


def undetection_marginals(instance: GameInstance, sigma1: MixedStrategy) -> np.ndarray:
    """u(e): probability that an attack on each component goes undetected."""
    instance.check_inspection(sigma1)
    u = np.zeros(instance.n_components)
    for s, prob in sigma1:
        u += float(prob) * undetection_vector(instance, s)
    return u


def payoff(instance: GameInstance, sigma1: MixedStrategy, sigma2: MixedStrategy) -> float:
    """Expected number of undetected attacks."""
    u = undetection_marginals(instance, sigma1)
    p = attack_marginals(instance, sigma2)
    return float(u @ p)


def detection_probability(instance: GameInstance, sigma1: MixedStrategy, v: str | int,
                          exact: bool = False) -> float | Fraction:
    """Sum over sensors of accuracy times the probability the sensor sits at ``v``."""
    instance.check_inspection(sigma1)
    vi = instance.node_index(v)
    lam = instance.sensor_accuracies
    total = Fraction(0) if exact else 0.0
    for s, prob in sigma1:
        for k, node in s.placed():
            if node == vi:
                total += Fraction(lam[k]) * Fraction(prob) if exact else lam[k] * float(prob)
    return total


def detection_marginals(instance: GameInstance, sigma1: MixedStrategy) -> np.ndarray:
    instance.check_inspection(sigma1)
    p = np.zeros(instance.n)
    for s, prob in sigma1:
        for k, node in s.placed():
            p[node] += instance.sensor_accuracies[k] * float(prob)
    return p


def attack_probability(instance: GameInstance, sigma2: MixedStrategy, e: str | int,
                       exact: bool = False) -> float | Fraction:
    instance.check_attack(sigma2)
    ei = instance.component_index(e)
    total = Fraction(0) if exact else 0.0
    for plan, prob in sigma2:
        if ei in plan.targets:
            total += Fraction(prob) if exact else float(prob)
    return total
