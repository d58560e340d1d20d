"""Instance files: JSON describing ``B(G, H_0, H_1; S_0, S_1)``.

Example::

    {
      "group": {"kind": "cyclic", "n": 15},
      "H0": [3], "H1": [5],
      "S0": "all", "S1": "empty",
      "close": false
    }

``H0``/``H1`` are generator lists (default: trivial subgroup). ``S0``/``S1``
are element-id lists or the keywords ``"all"``/``"empty"``. Element ids index
the group's canonical element order.
"""

from __future__ import annotations

import json
from pathlib import Path

from .constructions import BicosetInstance, make_instance
from .errors import InstanceError
from .groups import FiniteGroup, make_group, subgroup_generated


def _element_list(G: FiniteGroup, value, key: str) -> list:
    if not isinstance(value, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in value):
        raise InstanceError(key, "expected a list of element ids")
    bad = [x for x in value if not 0 <= x < G.order]
    if bad:
        raise InstanceError(key, f"element id {bad[0]} out of range 0..{G.order - 1}")
    return value


def _connection_set(G: FiniteGroup, value, key: str) -> frozenset:
    if value == "all":
        return frozenset(G.elements)
    if value == "empty":
        return frozenset()
    return frozenset(_element_list(G, value, key))


def parse_instance(data: dict, close: bool | None = None) -> BicosetInstance:
    """Build an instance; ``close`` overrides the file's ``close`` option when given."""
    if not isinstance(data, dict):
        raise InstanceError("<root>", "expected a JSON object")
    if "group" not in data:
        raise InstanceError("group", "missing")
    G = make_group(data["group"])
    H = []
    for i in (0, 1):
        key = f"H{i}"
        H.append(subgroup_generated(G, _element_list(G, data.get(key, []), key)))
    S = []
    for i in (0, 1):
        key = f"S{i}"
        if key not in data:
            raise InstanceError(key, "missing")
        S.append(_connection_set(G, data[key], key))
    do_close = bool(data.get("close", False)) if close is None else close
    return make_instance(G, H[0], H[1], S[0], S[1], close=do_close)


def load_instance(path, close: bool | None = None) -> BicosetInstance:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as e:
        raise InstanceError("<file>", f"invalid JSON: {e}") from None
    return parse_instance(data, close=close)


def instance_to_dict(inst: BicosetInstance) -> dict:
    """Serialisable description; subgroups as full element lists (also valid generator lists)."""
    G = inst.G
    group = G.spec if G.spec is not None else {"kind": "table", "table": G.table.tolist(), "labels": list(G.labels)}
    return {
        "group": group,
        "H0": sorted(inst.H[0].elements),
        "H1": sorted(inst.H[1].elements),
        "S0": sorted(inst.S[0]),
        "S1": sorted(inst.S[1]),
        "close": False,
    }
