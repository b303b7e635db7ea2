"""Closed-form equilibria when monitoring sets are mutually disjoint.

Nodes are ordered by monitoring-set size, largest first, ties by node index.
``k_star`` is the number of leading sets the attacker does not saturate when
spreading attacks; every quantity here (the value, the cycling strategies) is a
function of the ordered sizes, the accuracies and the attack budget.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor
from typing import Sequence

from .errors import DomainError, ValidationError
from .game import AttackPlan, GameInstance, MixedStrategy, SensorPositioning, attack_marginals

MARGINAL_TOL = 1e-12


@dataclass(frozen=True)
class DisjointProfile:
    ordered_nodes: tuple[int, ...]
    blocks: tuple[frozenset[int], ...]
    sizes: tuple[int, ...]
    b2: int
    k_star: int
    tail_total: int
    uniform_mass: Fraction
    b2_prime: int
    residual: int

    @property
    def per_set_floor(self) -> int:
        return self.b2_prime // self.k_star


def compute_k_star(sizes: Sequence[int], b2: int) -> int:
    """Smallest k with (b2 - sum(sizes[k:])) / k >= sizes[k] (sizes past the end are 0)."""
    sizes = [int(s) for s in sizes]
    if not sizes:
        raise ValidationError("sizes must be nonempty")
    if any(a < b for a, b in zip(sizes, sizes[1:])) or sizes[-1] < 0:
        raise ValidationError(f"sizes must be nonnegative and descending, got {sizes}")
    if not 1 <= b2 <= sum(sizes):
        raise ValidationError(f"budget {b2} outside [1, {sum(sizes)}]")
    n = len(sizes)
    tail = sum(sizes)
    for k in range(1, n + 1):
        tail -= sizes[k - 1]
        nxt = sizes[k] if k < n else 0
        if b2 - tail >= k * nxt:
            return k
    raise AssertionError("unreachable: inequality holds at k = n")


def profile_from_blocks(nodes: Sequence[int], blocks: Sequence[frozenset[int]], b2: int) -> DisjointProfile:
    """Profile of pairwise-disjoint ``blocks`` owned by ``nodes`` (node indices)."""
    order = sorted(range(len(nodes)), key=lambda i: (-len(blocks[i]), nodes[i]))
    ordered_nodes = tuple(int(nodes[i]) for i in order)
    ordered_blocks = tuple(frozenset(blocks[i]) for i in order)
    sizes = tuple(len(b) for b in ordered_blocks)
    k = compute_k_star(sizes, b2)
    tail = sum(sizes[k:])
    mass = Fraction(b2 - tail, k)
    b2_prime = k * floor(mass)
    return DisjointProfile(
        ordered_nodes=ordered_nodes,
        blocks=ordered_blocks,
        sizes=sizes,
        b2=b2,
        k_star=k,
        tail_total=tail,
        uniform_mass=mass,
        b2_prime=b2_prime,
        residual=b2 - tail - b2_prime,
    )


def _require_disjoint(instance: GameInstance) -> None:
    if not instance.is_disjoint():
        raise DomainError("monitoring sets are not mutually disjoint")


def disjoint_profile(instance: GameInstance) -> DisjointProfile:
    _require_disjoint(instance)
    return profile_from_blocks(range(instance.n), instance.monitoring, instance.b2)


def value_from_profile(accuracies: Sequence[float], profile: DisjointProfile) -> float:
    total = 0.0
    for i, lam in enumerate(accuracies):
        size = profile.sizes[i] if i < len(profile.sizes) else 0
        total += lam * float(min(Fraction(size), profile.uniform_mass))
    return profile.b2 - total


def game_value_disjoint(instance: GameInstance, profile: DisjointProfile | None = None) -> float:
    """Equilibrium expected number of undetected attacks for a disjoint instance."""
    _require_disjoint(instance)
    if profile is None:
        profile = disjoint_profile(instance)
    return value_from_profile(instance.sensor_accuracies, profile)


def cycling_inspection(b1: int, profile: DisjointProfile) -> MixedStrategy:
    """Uniform mixture over k* rotations of the best sensors across the top k* nodes.

    Sensors beyond k* sit deterministically on the next nodes in order; sensors
    beyond the number of profile nodes stay unplaced.
    """
    k = profile.k_star
    nodes = profile.ordered_nodes
    cyc = min(b1, k)
    pairs = []
    for l in range(k):
        placements: list[int | None] = [None] * b1
        for j in range(cyc):
            placements[j] = nodes[(l + j) % k]
        for j in range(k, b1):
            placements[j] = nodes[j] if j < len(nodes) else None
        pairs.append((SensorPositioning(tuple(placements)), Fraction(1, k)))
    return MixedStrategy.from_pairs(pairs, merge=True)


def cycling_attack(profile: DisjointProfile) -> MixedStrategy:
    """Uniform mixture over k* plans: tails saturated, floor share fixed, residual cycled."""
    k = profile.k_star
    q = profile.per_set_floor
    r = profile.residual
    base: set[int] = set()
    heads = [sorted(b) for b in profile.blocks[:k]]
    for members in heads:
        base.update(members[:q])
    for b in profile.blocks[k:]:
        base.update(b)
    pairs = []
    for l in range(k):
        targets = set(base)
        for t in range(r):
            targets.add(heads[(l + t) % k][q])
        pairs.append((AttackPlan(frozenset(targets)), Fraction(1, k)))
    return MixedStrategy.from_pairs(pairs, merge=True)


def build_cycling_inspection(instance: GameInstance, profile: DisjointProfile | None = None) -> MixedStrategy:
    _require_disjoint(instance)
    if profile is None:
        profile = disjoint_profile(instance)
    return cycling_inspection(instance.b1, profile)


def build_cycling_attack(instance: GameInstance, profile: DisjointProfile | None = None) -> MixedStrategy:
    _require_disjoint(instance)
    if profile is None:
        profile = disjoint_profile(instance)
    return cycling_attack(profile)


@dataclass(frozen=True)
class MarginalReport:
    cond1_ok: bool
    cond2_ok: bool | None
    max_abs_deviation: float
    cond1_deviation: Fraction
    cond2_deviation: Fraction | None

    @property
    def exact(self) -> bool:
        """True when every checked marginal matches with zero rational error."""
        return self.cond1_deviation == 0 and (self.cond2_deviation in (None, 0))


def detection_targets(accuracies: Sequence[float], profile: DisjointProfile) -> list[Fraction]:
    lam = [Fraction(x) for x in accuracies]
    b1 = len(lam)
    k = profile.k_star
    shared = sum(lam[:min(b1, k)], Fraction(0)) / k
    out = []
    for i in range(len(profile.ordered_nodes)):
        if i < k:
            out.append(shared)
        elif i < b1:
            out.append(lam[i])
        else:
            out.append(Fraction(0))
    return out


def verify_theorem1_conditions(
    instance: GameInstance,
    sigma1: MixedStrategy,
    sigma2: MixedStrategy | None = None,
    profile: DisjointProfile | None = None,
    tol: float = MARGINAL_TOL,
) -> MarginalReport:
    """Check the detection and attack marginal conditions in exact rational arithmetic.

    Pass ``profile`` to check against a disjoint surrogate of an overlapping
    instance; detection marginals depend only on sensor placement, so condition
    (1) is meaningful there. ``sigma2=None`` skips condition (2).
    """
    if profile is None:
        profile = disjoint_profile(instance)
    instance.check_inspection(sigma1)
    lam = [Fraction(x) for x in instance.sensor_accuracies]
    detect = {v: Fraction(0) for v in profile.ordered_nodes}
    for s, prob in sigma1:
        for kk, v in s.placed():
            if v in detect:
                detect[v] += lam[kk] * Fraction(prob)
    targets = detection_targets(instance.sensor_accuracies, profile)
    dev1 = max((abs(detect[v] - t) for v, t in zip(profile.ordered_nodes, targets)), default=Fraction(0))
    # sensors placed outside the profile's nodes also violate condition (1)
    for s, prob in sigma1:
        for kk, v in s.placed():
            if v not in detect:
                dev1 = max(dev1, lam[kk] * Fraction(prob))

    dev2 = None
    if sigma2 is not None:
        instance.check_attack(sigma2)
        pe: dict[int, Fraction] = {}
        for plan, prob in sigma2:
            for e in plan.targets:
                pe[e] = pe.get(e, Fraction(0)) + Fraction(prob)
        dev2 = Fraction(0)
        for i, block in enumerate(profile.blocks):
            got = sum((pe.get(e, Fraction(0)) for e in block), Fraction(0))
            want = profile.uniform_mass if i < profile.k_star else Fraction(profile.sizes[i])
            dev2 = max(dev2, abs(got - want))
    worst = max(float(dev1), float(dev2) if dev2 is not None else 0.0)
    return MarginalReport(
        cond1_ok=float(dev1) <= tol,
        cond2_ok=None if dev2 is None else float(dev2) <= tol,
        max_abs_deviation=worst,
        cond1_deviation=dev1,
        cond2_deviation=dev2,
    )


def corollary_regime_bound(instance: GameInstance) -> int:
    """n * |smallest monitoring set|: below this budget k* = n and the inspection side is budget-free."""
    _require_disjoint(instance)
    return instance.n * min(len(s) for s in instance.monitoring)


def proposition1_attack(instance: GameInstance, profile: DisjointProfile | None = None) -> AttackPlan | None:
    """Budget-saving pure equilibrium attack when the top k* sensors are perfect.

    Returns None when the preconditions fail; equilibrium attacks then use the
    full budget.
    """
    _require_disjoint(instance)
    if profile is None:
        profile = disjoint_profile(instance)
    k = profile.k_star
    lam = instance.sensor_accuracies
    if k >= len(profile.sizes) or instance.b1 < k or any(x != 1.0 for x in lam[:k]):
        return None
    cap = profile.sizes[k]
    needed = k * cap + profile.tail_total
    if instance.b2 <= needed:
        return None
    targets: set[int] = set()
    for block in profile.blocks:
        targets.update(sorted(block)[:min(len(block), cap)])
    return AttackPlan(frozenset(targets))


def disjoint_equilibrium(instance: GameInstance) -> tuple[MixedStrategy, MixedStrategy, float, DisjointProfile]:
    """Convenience: (inspection, attack, value, profile) for a disjoint instance."""
    profile = disjoint_profile(instance)
    return (cycling_inspection(instance.b1, profile), cycling_attack(profile),
            value_from_profile(instance.sensor_accuracies, profile), profile)


def attack_set_totals(instance: GameInstance, sigma2: MixedStrategy, profile: DisjointProfile) -> list[float]:
    """Expected number of attacks in each profile block (float)."""
    p = attack_marginals(instance, sigma2)
    return [float(sum(p[e] for e in b)) for b in profile.blocks]
