"""Instrumented container models.

Each container mirrors the observable behavior of its C++ counterpart
while recording every element the operation touched as an access
event.  Events double as an edit script: replaying the write/delete
edits of an operation onto the previous snapshot must reproduce the
next snapshot exactly (apply_events), which keeps renderers honest.

Event targets by kind:
  sequences      {"index": i}
  map (BST)      {"node": node_id}
  unordered_map  {"bucket": b, "pos": p}

Map operations number their events with ``step`` starting at 0;
sequence events carry ``step: None``.
"""

from __future__ import annotations

import copy
from dataclasses import dataclass
from typing import Optional

from .ast import TypeTag


@dataclass(frozen=True)
class AccessEvent:
    container: str  # container id, e.g. "c0"
    kind: str  # "read" | "write" | "delete"
    target: dict
    step: Optional[int] = None
    edit: Optional[dict] = None

    def to_wire(self) -> dict:
        return {
            "container": self.container,
            "kind": self.kind,
            "target": self.target,
            "step": self.step,
            "edit": self.edit,
        }

    @staticmethod
    def from_wire(raw: dict) -> "AccessEvent":
        return AccessEvent(raw["container"], raw["kind"], raw["target"],
                           raw.get("step"), raw.get("edit"))


class ContainerError(Exception):
    """A container operation the subset defines as a runtime error."""

    def __init__(self, kind: str, message: str):
        super().__init__(message)
        self.kind = kind


def default_value(type_tag: TypeTag) -> object:
    """Value-initialized element, as written by map operator[] misses."""
    return {"int": 0, "double": 0.0, "bool": False, "char": "\0", "string": ""}[type_tag.kind]


# === Sequence containers ===


class SequenceState:
    """Shared storage for vector, stack, queue, and deque.

    ``values`` is ordered front to back; a stack keeps its top at the
    highest index.
    """

    def __init__(self, cid: str, name: str, kind: str, elem_type: TypeTag):
        self.cid = cid
        self.name = name
        self.kind = kind
        self.elem_type = elem_type
        self.values: list[object] = []

    def size(self) -> int:
        return len(self.values)

    def snapshot(self) -> dict:
        return {
            "id": self.cid,
            "name": self.name,
            "kind": self.kind,
            "elemType": self.elem_type.render(),
            "values": list(self.values),
        }

    # --- event helpers ---

    def _read(self, index: int) -> AccessEvent:
        return AccessEvent(self.cid, "read", {"index": index})

    def _insert(self, index: int, value: object) -> AccessEvent:
        self.values.insert(index, value)
        return AccessEvent(self.cid, "write", {"index": index},
                           edit={"op": "insert", "index": index, "value": value})

    def _set(self, index: int, value: object) -> AccessEvent:
        self.values[index] = value
        return AccessEvent(self.cid, "write", {"index": index},
                           edit={"op": "set", "index": index, "value": value})

    def _remove(self, index: int) -> AccessEvent:
        del self.values[index]
        return AccessEvent(self.cid, "delete", {"index": index},
                           edit={"op": "remove", "index": index})

    def _require_nonempty(self, what: str) -> None:
        if not self.values:
            raise ContainerError(
                "EmptyContainerAccess", "%s on empty %s '%s'" % (what, self.kind, self.name))

    def _require_index(self, index: int) -> None:
        if not isinstance(index, int) or not 0 <= index < len(self.values):
            raise ContainerError(
                "IndexOutOfBounds",
                "index %s is out of bounds for %s '%s' of size %d"
                % (index, self.kind, self.name, len(self.values)))

    # --- subset methods ---

    def push_back(self, value: object):
        return None, [self._insert(len(self.values), value)]

    def push_front(self, value: object):
        return None, [self._insert(0, value)]

    def pop_back(self):
        self._require_nonempty("pop_back")
        return None, [self._remove(len(self.values) - 1)]

    def pop_front(self):
        self._require_nonempty("pop_front")
        return None, [self._remove(0)]

    def push(self, value: object):
        # stack and queue both grow at the back
        return None, [self._insert(len(self.values), value)]

    def pop(self):
        self._require_nonempty("pop")
        if self.kind == "queue":
            return None, [self._remove(0)]
        return None, [self._remove(len(self.values) - 1)]

    def top(self):
        self._require_nonempty("top")
        i = len(self.values) - 1
        return self.values[i], [self._read(i)]

    def front(self):
        self._require_nonempty("front")
        return self.values[0], [self._read(0)]

    def back(self):
        self._require_nonempty("back")
        i = len(self.values) - 1
        return self.values[i], [self._read(i)]

    def index_get(self, index: object):
        self._require_index(index)
        return self.values[index], [self._read(index)]

    def index_set(self, index: object, value: object):
        self._require_index(index)
        return None, [self._set(index, value)]


# === Binary search tree map ===


class BstMapState:
    """std::map stand-in: unbalanced binary search tree.

    Nodes never migrate keys; erase relinks the successor node in
    place of the removed one, so a node id means one key for the whole
    container lifetime.
    """

    def __init__(self, cid: str, name: str, key_type: TypeTag, elem_type: TypeTag):
        self.cid = cid
        self.name = name
        self.kind = "map"
        self.key_type = key_type
        self.elem_type = elem_type
        self.nodes: dict[int, dict] = {}  # id -> {key, value, left, right}
        self.root: Optional[int] = None
        self.next_id = 0

    def size(self) -> int:
        return len(self.nodes)

    def snapshot(self) -> dict:
        return {
            "id": self.cid,
            "name": self.name,
            "kind": self.kind,
            "keyType": self.key_type.render(),
            "valueType": self.elem_type.render(),
            "root": self.root,
            "nodes": [
                {"id": nid, "key": n["key"], "value": n["value"],
                 "left": n["left"], "right": n["right"]}
                for nid, n in sorted(self.nodes.items())
            ],
        }

    # --- event helpers ---

    def _read(self, nid: int, step: int) -> AccessEvent:
        return AccessEvent(self.cid, "read", {"node": nid}, step=step)

    def _write(self, nid: int, step: int, parent: Optional[int], side: Optional[str]) -> AccessEvent:
        n = self.nodes[nid]
        record = {"id": nid, "key": n["key"], "value": n["value"],
                  "left": n["left"], "right": n["right"]}
        return AccessEvent(self.cid, "write", {"node": nid}, step=step,
                           edit={"node": record, "parent": parent, "side": side,
                                 "root": self.root})

    def _delete(self, nid: int, step: int) -> AccessEvent:
        return AccessEvent(self.cid, "delete", {"node": nid}, step=step,
                           edit={"remove": nid, "root": self.root})

    def _new_node(self, key: object, value: object) -> int:
        nid = self.next_id
        self.next_id += 1
        self.nodes[nid] = {"key": key, "value": value, "left": None, "right": None}
        return nid

    def _search(self, key: object, events: list[AccessEvent]) -> tuple[Optional[int], Optional[int], Optional[str]]:
        """Walk from the root comparing keys.

        Returns (node, parent, side): the matching node or None, plus
        where the search fell off the tree.  Every compared node is
        recorded as a read.
        """
        parent = None
        side = None
        cur = self.root
        while cur is not None:
            events.append(self._read(cur, len(events)))
            node = self.nodes[cur]
            if key == node["key"]:
                return cur, parent, side
            parent = cur
            side = "left" if key < node["key"] else "right"
            cur = node[side]
        return None, parent, side

    # --- subset methods ---

    def index_set(self, key: object, value: object):
        """Insert or assign; both insert(pair) and m[k] = v land here."""
        events: list[AccessEvent] = []
        hit, parent, side = self._search(key, events)
        if hit is not None:
            self.nodes[hit]["value"] = value
            events.append(self._write(hit, len(events), None, None))
            return None, events
        nid = self._new_node(key, value)
        if parent is None:
            self.root = nid
        else:
            self.nodes[parent][side] = nid
        events.append(self._write(nid, len(events), parent, side))
        return None, events

    def insert(self, pair: tuple):
        return self.index_set(pair[0], pair[1])

    def index_get(self, key: object):
        """operator[]: a miss inserts a value-initialized element."""
        events: list[AccessEvent] = []
        hit, parent, side = self._search(key, events)
        if hit is not None:
            return self.nodes[hit]["value"], events
        value = default_value(self.elem_type)
        nid = self._new_node(key, value)
        if parent is None:
            self.root = nid
        else:
            self.nodes[parent][side] = nid
        events.append(self._write(nid, len(events), parent, side))
        return value, events

    def find(self, key: object):
        events: list[AccessEvent] = []
        hit, _, _ = self._search(key, events)
        return hit is not None, events

    def count(self, key: object):
        events: list[AccessEvent] = []
        hit, _, _ = self._search(key, events)
        return (1 if hit is not None else 0), events

    def erase(self, key: object):
        events: list[AccessEvent] = []
        hit, parent, side = self._search(key, events)
        if hit is None:
            return 0, events
        node = self.nodes[hit]
        if node["left"] is not None and node["right"] is not None:
            self._erase_two_children(hit, parent, side, events)
        else:
            child = node["left"] if node["left"] is not None else node["right"]
            del self.nodes[hit]
            if parent is None:
                self.root = child
            else:
                self.nodes[parent][side] = child
            events.append(self._delete(hit, len(events)))
            if parent is not None:
                events.append(self._write(parent, len(events), None, None))
        return 1, events

    def _erase_two_children(self, hit: int, parent: Optional[int],
                            side: Optional[str], events: list[AccessEvent]) -> None:
        """Relink the in-order successor into the removed node's place."""
        node = self.nodes[hit]
        sp = hit
        succ = node["right"]
        events.append(self._read(succ, len(events)))
        while self.nodes[succ]["left"] is not None:
            sp = succ
            succ = self.nodes[succ]["left"]
            events.append(self._read(succ, len(events)))
        succ_node = self.nodes[succ]
        if sp is not hit:
            self.nodes[sp]["left"] = succ_node["right"]
            succ_node["right"] = node["right"]
        succ_node["left"] = node["left"]
        del self.nodes[hit]
        if parent is None:
            self.root = succ
        else:
            self.nodes[parent][side] = succ
        events.append(self._delete(hit, len(events)))
        events.append(self._write(succ, len(events), None, None))
        if sp is not hit:
            events.append(self._write(sp, len(events), None, None))
        if parent is not None:
            events.append(self._write(parent, len(events), None, None))


# === Hash map with separate chaining ===


def bucket_of(key: object, bucket_count: int) -> int:
    """Bucket index for a key.

    Integers hash as key mod bucket count (mathematical mod, so -1
    with 6 buckets lands in bucket 5).  Other scalars reduce to an
    integer first: chars by code point, bools as 0/1, doubles by
    truncation, strings by summing code points.
    """
    if isinstance(key, bool):
        k = int(key)
    elif isinstance(key, int):
        k = key
    elif isinstance(key, float):
        k = int(key)
    elif isinstance(key, str) and len(key) == 1:
        k = ord(key)
    elif isinstance(key, str):
        k = sum(ord(ch) for ch in key)
    else:
        raise AssertionError("unhashable key %r" % (key,))
    return k % bucket_count


class HashMapState:
    """std::unordered_map stand-in: closed addressing, separate chaining.

    The bucket count is fixed at construction; chains keep insertion
    order and never rehash.
    """

    def __init__(self, cid: str, name: str, key_type: TypeTag, elem_type: TypeTag,
                 bucket_count: int = 6):
        assert bucket_count >= 1
        self.cid = cid
        self.name = name
        self.kind = "unordered_map"
        self.key_type = key_type
        self.elem_type = elem_type
        self.bucket_count = bucket_count
        self.buckets: list[list[list]] = [[] for _ in range(bucket_count)]

    def size(self) -> int:
        return sum(len(chain) for chain in self.buckets)

    def snapshot(self) -> dict:
        return {
            "id": self.cid,
            "name": self.name,
            "kind": self.kind,
            "keyType": self.key_type.render(),
            "valueType": self.elem_type.render(),
            "buckets": [[list(entry) for entry in chain] for chain in self.buckets],
        }

    # --- event helpers ---

    def _read(self, b: int, pos: int, step: int) -> AccessEvent:
        return AccessEvent(self.cid, "read", {"bucket": b, "pos": pos}, step=step)

    def _write(self, b: int, pos: int, step: int, op: str) -> AccessEvent:
        entry = self.buckets[b][pos]
        return AccessEvent(self.cid, "write", {"bucket": b, "pos": pos}, step=step,
                           edit={"op": op, "bucket": b, "pos": pos,
                                 "entry": [entry[0], entry[1]]})

    def _delete(self, b: int, pos: int, step: int) -> AccessEvent:
        return AccessEvent(self.cid, "delete", {"bucket": b, "pos": pos}, step=step,
                           edit={"op": "remove", "bucket": b, "pos": pos})

    def _probe(self, key: object, events: list[AccessEvent]) -> tuple[int, Optional[int]]:
        """Compare the key against its chain; every comparison is a read."""
        b = bucket_of(key, self.bucket_count)
        for pos, entry in enumerate(self.buckets[b]):
            events.append(self._read(b, pos, len(events)))
            if entry[0] == key:
                return b, pos
        return b, None

    # --- subset methods ---

    def index_set(self, key: object, value: object):
        events: list[AccessEvent] = []
        b, pos = self._probe(key, events)
        if pos is not None:
            self.buckets[b][pos][1] = value
            events.append(self._write(b, pos, len(events), "set"))
            return None, events
        self.buckets[b].append([key, value])
        events.append(self._write(b, len(self.buckets[b]) - 1, len(events), "append"))
        return None, events

    def insert(self, pair: tuple):
        return self.index_set(pair[0], pair[1])

    def index_get(self, key: object):
        events: list[AccessEvent] = []
        b, pos = self._probe(key, events)
        if pos is not None:
            return self.buckets[b][pos][1], events
        value = default_value(self.elem_type)
        self.buckets[b].append([key, value])
        events.append(self._write(b, len(self.buckets[b]) - 1, len(events), "append"))
        return value, events

    def find(self, key: object):
        events: list[AccessEvent] = []
        _, pos = self._probe(key, events)
        return pos is not None, events

    def count(self, key: object):
        events: list[AccessEvent] = []
        _, pos = self._probe(key, events)
        return (1 if pos is not None else 0), events

    def erase(self, key: object):
        events: list[AccessEvent] = []
        b, pos = self._probe(key, events)
        if pos is None:
            return 0, events
        event = self._delete(b, pos, len(events))
        del self.buckets[b][pos]
        events.append(event)
        return 1, events


# === Method tables shared with the validator ===

# method -> (argument kinds, result kind); argument/result kinds are
# "elem", "key", "pair", "int", "bool", or "void".
SEQUENCE_METHODS = {
    "vector": {
        "push_back": (("elem",), "void"),
        "pop_back": ((), "void"),
        "size": ((), "int"),
        "empty": ((), "bool"),
    },
    "stack": {
        "push": (("elem",), "void"),
        "pop": ((), "void"),
        "top": ((), "elem"),
        "size": ((), "int"),
        "empty": ((), "bool"),
    },
    "queue": {
        "push": (("elem",), "void"),
        "pop": ((), "void"),
        "front": ((), "elem"),
        "back": ((), "elem"),
        "size": ((), "int"),
        "empty": ((), "bool"),
    },
    "deque": {
        "push_back": (("elem",), "void"),
        "push_front": (("elem",), "void"),
        "pop_back": ((), "void"),
        "pop_front": ((), "void"),
        "front": ((), "elem"),
        "back": ((), "elem"),
        "size": ((), "int"),
        "empty": ((), "bool"),
    },
}

MAP_METHODS = {
    "insert": (("pair",), "void"),
    "erase": (("key",), "int"),
    "find": (("key",), "bool"),
    "count": (("key",), "int"),
    "size": ((), "int"),
    "empty": ((), "bool"),
}

METHODS = dict(SEQUENCE_METHODS)
METHODS["map"] = MAP_METHODS
METHODS["unordered_map"] = MAP_METHODS

# index expression capabilities
INDEX_GET = {"vector", "deque", "map", "unordered_map"}
INDEX_SET = {"vector", "map", "unordered_map"}


def make_container(cid: str, name: str, type_tag: TypeTag, bucket_count: int):
    if type_tag.kind == "map":
        return BstMapState(cid, name, type_tag.key, type_tag.elem)
    if type_tag.kind == "unordered_map":
        return HashMapState(cid, name, type_tag.key, type_tag.elem, bucket_count)
    return SequenceState(cid, name, type_tag.kind, type_tag.elem)


def call_method(state, method: str, args: list):
    """Dispatch a subset method call.  Returns (result, events)."""
    if method == "size":
        return state.size(), []
    if method == "empty":
        return state.size() == 0, []
    return getattr(state, method)(*args)


# === Event replay ===


def apply_events(snapshot: dict, events: list[AccessEvent]) -> dict:
    """Replay the edits of ``events`` onto a snapshot payload.

    Reads are ignored.  The result must equal the snapshot taken after
    the operation that produced the events; tests lean on this to show
    the event stream is a complete edit script.
    """
    state = copy.deepcopy(snapshot)
    for event in events:
        if event.kind == "read":
            continue
        edit = event.edit
        assert edit is not None, "write/delete events must carry an edit"
        if state["kind"] in ("vector", "stack", "queue", "deque"):
            _apply_sequence_edit(state, event.kind, edit)
        elif state["kind"] == "map":
            _apply_bst_edit(state, event.kind, edit)
        else:
            _apply_hash_edit(state, event.kind, edit)
    return state


def _apply_sequence_edit(state: dict, kind: str, edit: dict) -> None:
    values = state["values"]
    if kind == "delete":
        del values[edit["index"]]
    elif edit["op"] == "insert":
        values.insert(edit["index"], edit["value"])
    else:
        values[edit["index"]] = edit["value"]


def _apply_bst_edit(state: dict, kind: str, edit: dict) -> None:
    nodes = {n["id"]: n for n in state["nodes"]}
    if kind == "delete":
        del nodes[edit["remove"]]
    else:
        record = dict(edit["node"])
        nodes[record["id"]] = record
        if edit["parent"] is not None:
            nodes[edit["parent"]][edit["side"]] = record["id"]
    state["root"] = edit["root"]
    state["nodes"] = [nodes[nid] for nid in sorted(nodes)]


def _apply_hash_edit(state: dict, kind: str, edit: dict) -> None:
    chain = state["buckets"][edit["bucket"]]
    if kind == "delete":
        del chain[edit["pos"]]
    elif edit["op"] == "append":
        chain.append(list(edit["entry"]))
    else:
        chain[edit["pos"]] = list(edit["entry"])
