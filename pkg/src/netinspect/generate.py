"""Seeded random instance generator."""

from __future__ import annotations

import re

import numpy as np

from .errors import ValidationError
from .game import GameInstance

_RANDOM_RE = re.compile(r"^random[(:]\s*([0-9.eE+-]+)\s*\)?$")


def parse_overlap(text: str) -> tuple[str, float]:
    """``"disjoint"``, ``"random(0.3)"`` or ``"random:0.3"``."""
    text = text.strip()
    if text == "disjoint":
        return "disjoint", 0.0
    m = _RANDOM_RE.match(text)
    if not m:
        raise ValidationError(f"overlap must be 'disjoint' or 'random(p)', got {text!r}", code="bad-overlap")
    p = float(m.group(1))
    if not 0.0 <= p <= 1.0:
        raise ValidationError(f"overlap probability {p} outside [0, 1]", code="bad-overlap")
    return "random", p


def generate_instance(seed: int, n: int, components: int, b1: int, b2: int,
                      overlap: str = "disjoint", p: float = 0.3,
                      accuracy_range: tuple[float, float] = (0.5, 1.0),
                      accuracies: list[float] | None = None) -> GameInstance:
    """Random instance; identical output for identical arguments.

    ``disjoint`` splits the components into ``n`` nonempty sets. ``random``
    includes each (node, component) pair independently with probability ``p``,
    then gives every orphan component a random node and every empty node a
    random component.
    """
    if overlap.startswith("random") and overlap != "random":
        overlap, p = parse_overlap(overlap)
    if n < 1 or components < 1:
        raise ValidationError("need at least one node and one component", code="infeasible-parameters")
    if not 0 <= b1 <= n:
        raise ValidationError(f"b1 = {b1} must lie in [0, n = {n}]", code="infeasible-parameters")
    if not 1 <= b2 <= components:
        raise ValidationError(f"b2 = {b2} must lie in [1, {components}]", code="infeasible-parameters")
    lo, hi = accuracy_range
    if not 0.0 < lo <= hi <= 1.0:
        raise ValidationError(f"accuracy range {accuracy_range} not inside (0, 1]", code="infeasible-parameters")

    rng = np.random.default_rng(seed)
    inc = np.zeros((n, components), dtype=bool)
    if overlap == "disjoint":
        if components < n:
            raise ValidationError("disjoint mode needs at least as many components as nodes",
                                  code="infeasible-parameters")
        order = rng.permutation(components)
        owner = np.empty(components, dtype=np.int64)
        owner[order[:n]] = np.arange(n)
        owner[order[n:]] = rng.integers(0, n, size=components - n)
        inc[owner, np.arange(components)] = True
    elif overlap == "random":
        inc = rng.random((n, components)) < p
        for e in np.flatnonzero(~inc.any(axis=0)):
            inc[rng.integers(0, n), e] = True
        for v in np.flatnonzero(~inc.any(axis=1)):
            inc[v, rng.integers(0, components)] = True
    else:
        raise ValidationError(f"unknown overlap mode {overlap!r}", code="bad-overlap")

    if accuracies is None:
        accuracies = [round(float(x), 4) for x in rng.uniform(lo, hi, size=b1)]
        accuracies = [min(max(x, lo), hi) for x in accuracies]
    nodes = tuple(f"v{i + 1}" for i in range(n))
    comps = tuple(f"e{j + 1}" for j in range(components))
    mon = tuple(frozenset(int(e) for e in np.flatnonzero(row)) for row in inc)
    return GameInstance(nodes, comps, mon, tuple(accuracies), b2, name=f"gen-{seed}")
