"""Model-based exercisers shared by the container tests and the
acceptance gate.

Each runner drives one instrumented container through an op stream,
comparing every result against a plain Python model (list or dict) and
replaying each op's event script onto the previous snapshot to prove
the events fully describe the change.
"""

from __future__ import annotations

import random

from steptrace.ast import TypeTag
from steptrace.containers import (
    AccessEvent, ContainerError, apply_events, bucket_of, make_container,
)

INT = TypeTag("int")

SEQUENCE_OP_NAMES = {
    "vector": ("push_back", "pop_back", "get", "set"),
    "stack": ("push", "pop", "top"),
    "queue": ("push", "pop", "front", "back"),
    "deque": ("push_back", "push_front", "pop_back", "pop_front",
              "front", "back", "get"),
}

MAP_OP_NAMES = ("set", "get", "insert", "find", "count", "erase")


def random_sequence_ops(kind: str, n: int, seed: int) -> list[tuple]:
    """(name, index-or-value, value) triples; indexes stray out of
    bounds on purpose."""
    rng = random.Random(seed)
    names = SEQUENCE_OP_NAMES[kind]
    return [(rng.choice(names), rng.randint(-2, 12), rng.randint(0, 999))
            for _ in range(n)]


def random_map_ops(n: int, seed: int, key_range: int = 25) -> list[tuple]:
    rng = random.Random(seed)
    return [(rng.choice(MAP_OP_NAMES), rng.randrange(key_range),
             rng.randrange(1000)) for _ in range(n)]


def _check_events(events: list[AccessEvent], target_keys: set, stepped: bool) -> None:
    for i, event in enumerate(events):
        assert event.kind in ("read", "write", "delete")
        assert set(event.target) == target_keys
        assert event.step == (i if stepped else None)
        assert (event.edit is None) == (event.kind == "read")


def _checked(state, snap: dict, events, stepped: bool, target_keys: set) -> dict:
    _check_events(events, target_keys, stepped)
    after = state.snapshot()
    assert apply_events(snap, events) == after
    return after


# --- sequences vs. a plain list ---


def _sequence_should_fail(name: str, arg: int, model: list) -> bool:
    if name in ("pop_back", "pop_front", "pop", "top", "front", "back"):
        return not model
    if name in ("get", "set"):
        return not 0 <= arg < len(model)
    return False


def _sequence_model(kind: str, name: str, arg: int, value: int, model: list):
    """Mutate the list model the way the op should; return the result."""
    if name in ("push_back", "push"):
        model.append(arg)
    elif name == "push_front":
        model.insert(0, arg)
    elif name == "pop_back":
        model.pop()
    elif name == "pop_front":
        model.pop(0)
    elif name == "pop":
        model.pop(0) if kind == "queue" else model.pop()
    elif name == "top" or name == "back":
        return model[-1]
    elif name == "front":
        return model[0]
    elif name == "get":
        return model[arg]
    elif name == "set":
        model[arg] = value
    else:
        raise AssertionError(name)
    return None


def run_sequence_ops(kind: str, ops: list[tuple]):
    state = make_container("c0", "c", TypeTag(kind, elem=INT), 6)
    model: list = []
    snap = state.snapshot()
    for name, arg, value in ops:
        call = {
            "get": lambda: state.index_get(arg),
            "set": lambda: state.index_set(arg, value),
        }.get(name, lambda: getattr(state, name)(arg)
              if name.startswith("push") else getattr(state, name)())
        try:
            result, events = call()
        except ContainerError as err:
            assert _sequence_should_fail(name, arg, model), (name, arg)
            assert err.kind in ("EmptyContainerAccess", "IndexOutOfBounds")
            assert state.snapshot() == snap  # failed ops leave no trace
            continue
        assert not _sequence_should_fail(name, arg, model), (name, arg)
        expected = _sequence_model(kind, name, arg, value, model)
        assert result == expected, name
        snap = _checked(state, snap, events, False, {"index"})
        assert snap["values"] == model
    return state, model


# --- maps vs. a plain dict ---


def _inorder_keys(snap: dict) -> list:
    nodes = {n["id"]: n for n in snap["nodes"]}
    out, stack, cur = [], [], snap["root"]
    while cur is not None or stack:
        while cur is not None:
            stack.append(cur)
            cur = nodes[cur]["left"]
        cur = stack.pop()
        out.append(nodes[cur]["key"])
        cur = nodes[cur]["right"]
    return out


def _check_bst_shape(snap: dict, model: dict, id_key: dict, dead: set) -> None:
    nodes = {n["id"]: n for n in snap["nodes"]}
    assert {n["key"]: n["value"] for n in nodes.values()} == model
    assert _inorder_keys(snap) == sorted(model)
    assert (snap["root"] is None) == (not model)
    children = [c for n in nodes.values()
                for c in (n["left"], n["right"]) if c is not None]
    assert len(children) == len(set(children))  # single parent each
    assert all(c in nodes for c in children)
    if nodes:
        assert snap["root"] in nodes and snap["root"] not in children
    for nid, node in nodes.items():
        assert nid not in dead  # ids are never recycled
        assert id_key.setdefault(nid, node["key"]) == node["key"]
    dead.update(set(id_key) - set(nodes))


def _check_hash_shape(snap: dict, model: dict, bucket_count: int) -> None:
    entries = [entry for chain in snap["buckets"] for entry in chain]
    assert {k: v for k, v in entries} == model
    assert len(entries) == len(model)  # no duplicate keys
    for b, chain in enumerate(snap["buckets"]):
        assert all(bucket_of(k, bucket_count) == b for k, _ in chain)


def run_map_ops(kind: str, ops: list[tuple], bucket_count: int = 6):
    tag = TypeTag(kind, key=INT, elem=INT)
    state = make_container("c0", "m", tag, bucket_count)
    model: dict = {}
    snap = state.snapshot()
    id_key: dict = {}
    dead: set = set()
    target_keys = {"node"} if kind == "map" else {"bucket", "pos"}
    for name, key, value in ops:
        if name in ("set", "insert"):
            result, events = (state.index_set(key, value) if name == "set"
                              else state.insert((key, value)))
            model[key] = value
            expected = None
        elif name == "get":
            result, events = state.index_get(key)
            expected = model.setdefault(key, 0)  # misses default-insert
        elif name == "find":
            result, events = state.find(key)
            expected = key in model
        elif name == "count":
            result, events = state.count(key)
            expected = 1 if key in model else 0
        elif name == "erase":
            result, events = state.erase(key)
            expected = 1 if key in model else 0
            model.pop(key, None)
        else:
            raise AssertionError(name)
        assert result == expected, (name, key)
        snap = _checked(state, snap, events, True, target_keys)
        if kind == "map":
            _check_bst_shape(snap, model, id_key, dead)
        else:
            _check_hash_shape(snap, model, bucket_count)
    return state, model
