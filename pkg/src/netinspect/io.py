"""JSON instance and strategy files.

Instance document::

    {"components": ["e1", ...],
     "nodes": [{"id": "v1", "monitors": ["e1", "e2"]}, ...],
     "sensors": [0.9, 0.5],
     "attack_budget": 2}

Strategy document::

    {"player": "defender",
     "support": [{"action": [[1, "v4"], [2, "v3"]], "probability": 0.4}, ...]}

Defender actions list (sensor number, node id) pairs with sensors numbered
from 1 in descending-accuracy order; unplaced sensors are omitted. Attacker
actions are lists of component ids.
"""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path
from typing import Any

from .errors import ValidationError
from .game import AttackPlan, GameInstance, MixedStrategy, SensorPositioning

BUNDLED = ("figure1.json", "example2.json")


def bundled_path(name: str) -> Path:
    return Path(str(resources.files("netinspect") / "data" / name))


def resolve_path(path: str | Path) -> Path:
    """Existing path as given, else a bundled instance with the same file name."""
    p = Path(path)
    if p.exists():
        return p
    if p.name in BUNDLED:
        return bundled_path(p.name)
    raise ValidationError(f"no such file: {path}", code="missing-file", location=str(path))


def _load_json(path: str | Path) -> Any:
    p = resolve_path(path)
    text = p.read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{p}: malformed JSON: {exc.msg}", code="malformed",
                              location=f"line {exc.lineno}, column {exc.colno}") from None


def _expect(cond: bool, message: str, location: str, code: str = "malformed") -> None:
    if not cond:
        raise ValidationError(message, code=code, location=location)


def instance_from_dict(doc: Any, name: str = "") -> GameInstance:
    _expect(isinstance(doc, dict), "instance document must be an object", "$")
    for key in ("components", "nodes", "sensors", "attack_budget"):
        _expect(key in doc, f"missing field {key!r}", key)
    comps = doc["components"]
    _expect(isinstance(comps, list), "components must be a list", "components")
    if not comps:
        raise ValidationError("component list is empty", code="empty-components", location="components")
    for i, e in enumerate(comps):
        _expect(isinstance(e, str), "component ids must be strings", f"components[{i}]")
    comp_index = {e: i for i, e in enumerate(comps)}
    _expect(len(comp_index) == len(comps), "duplicate component id", "components", code="duplicate-id")

    nodes = doc["nodes"]
    _expect(isinstance(nodes, list), "nodes must be a list", "nodes")
    ids, mon = [], []
    for i, node in enumerate(nodes):
        loc = f"nodes[{i}]"
        _expect(isinstance(node, dict) and "id" in node and "monitors" in node,
                "node entries need 'id' and 'monitors'", loc)
        _expect(isinstance(node["id"], str), "node id must be a string", f"{loc}.id")
        _expect(isinstance(node["monitors"], list), "monitors must be a list", f"{loc}.monitors")
        s = set()
        for j, e in enumerate(node["monitors"]):
            if e not in comp_index:
                raise ValidationError(f"node {node['id']!r} monitors unknown component {e!r}",
                                      code="unknown-component", location=f"{loc}.monitors[{j}]")
            s.add(comp_index[e])
        ids.append(node["id"])
        mon.append(frozenset(s))

    sensors = doc["sensors"]
    _expect(isinstance(sensors, list), "sensors must be a list", "sensors")
    for k, lam in enumerate(sensors):
        _expect(isinstance(lam, (int, float)) and not isinstance(lam, bool),
                f"sensor {k + 1} accuracy must be a number", f"sensors[{k}]")
    b2 = doc["attack_budget"]
    if isinstance(b2, bool) or not isinstance(b2, int):
        raise ValidationError("attack_budget must be an integer", code="budget-range", location="attack_budget")
    return GameInstance(tuple(ids), tuple(comps), tuple(mon), tuple(sensors), b2, name=name)


def instance_to_dict(instance: GameInstance) -> dict:
    return {
        "components": list(instance.components),
        "nodes": [{"id": v, "monitors": [instance.components[e] for e in sorted(s)]}
                  for v, s in zip(instance.nodes, instance.monitoring)],
        "sensors": list(instance.sensor_accuracies),
        "attack_budget": instance.attack_budget,
    }


def parse_instance(path: str | Path) -> GameInstance:
    p = resolve_path(path)
    try:
        return instance_from_dict(_load_json(p), name=p.stem)
    except ValidationError as exc:
        if not str(exc).startswith(str(p)):
            exc.args = (f"{p}: {exc}",)
        raise


def dumps(doc: Any) -> str:
    return json.dumps(doc, indent=2) + "\n"


def serialize_instance(instance: GameInstance) -> str:
    return dumps(instance_to_dict(instance))


def write_instance(instance: GameInstance, path: str | Path) -> None:
    Path(path).write_text(serialize_instance(instance))


def strategy_to_dict(instance: GameInstance, sigma: MixedStrategy, player: str) -> dict:
    if player not in ("defender", "attacker"):
        raise ValueError(f"unknown player {player!r}")
    support = []
    for action, prob in sigma:
        if player == "defender":
            act = [[k + 1, instance.nodes[v]] for k, v in action.placed()]
        else:
            act = [instance.components[e] for e in action.sorted()]
        support.append({"action": act, "probability": float(prob)})
    return {"player": player, "support": support}


def strategy_from_dict(doc: Any, instance: GameInstance) -> tuple[str, MixedStrategy]:
    _expect(isinstance(doc, dict), "strategy document must be an object", "$")
    player = doc.get("player")
    _expect(player in ("defender", "attacker"), "player must be 'defender' or 'attacker'", "player")
    support = doc.get("support")
    _expect(isinstance(support, list) and support, "support must be a nonempty list", "support")
    actions, probs = [], []
    for i, entry in enumerate(support):
        loc = f"support[{i}]"
        _expect(isinstance(entry, dict) and "action" in entry and "probability" in entry,
                "support entries need 'action' and 'probability'", loc)
        prob = entry["probability"]
        _expect(isinstance(prob, (int, float)) and not isinstance(prob, bool),
                "probability must be a number", f"{loc}.probability")
        act = entry["action"]
        _expect(isinstance(act, list), "action must be a list", f"{loc}.action")
        try:
            if player == "defender":
                placements: list[int | None] = [None] * instance.b1
                for j, pair in enumerate(act):
                    _expect(isinstance(pair, list) and len(pair) == 2 and isinstance(pair[0], int),
                            "placements are [sensor number, node id] pairs", f"{loc}.action[{j}]")
                    k, v = pair
                    _expect(1 <= k <= instance.b1, f"sensor number {k} outside [1, {instance.b1}]",
                            f"{loc}.action[{j}]", code="unknown-sensor")
                    _expect(placements[k - 1] is None, f"sensor {k} placed twice", f"{loc}.action[{j}]")
                    placements[k - 1] = instance.node_index(v)
                action = SensorPositioning(tuple(placements))
            else:
                action = AttackPlan(frozenset(instance.component_index(e) for e in act))
                instance.check_plan(action)
        except ValidationError as exc:
            if exc.location is None:
                exc.location = f"{loc}.action"
            raise
        actions.append(action)
        probs.append(float(prob))
    try:
        sigma = MixedStrategy(tuple(actions), tuple(probs))
    except ValidationError as exc:
        exc.location = exc.location or "support"
        raise
    return player, sigma


def parse_strategy(path: str | Path, instance: GameInstance) -> tuple[str, MixedStrategy]:
    return strategy_from_dict(_load_json(path), instance)


def serialize_strategy(instance: GameInstance, sigma: MixedStrategy, player: str) -> str:
    return dumps(strategy_to_dict(instance, sigma, player))
