"""The acceptance gate: one test per release criterion, each printing a
single PASS/FAIL line through the ``acceptance`` fixture.

Criteria checks are wrapped so a failure still produces its FAIL line
(with the failed assertion in the detail) instead of a bare error.
"""

import json
import time
from pathlib import Path

from steptrace import compile_source, run, serialize, stream_run
from steptrace.ast import TypeTag
from steptrace.cli import main
from steptrace.containers import make_container
from steptrace.interpreter import InterpreterOptions
from steptrace.trace import deserialize, serialize_stream, validate_document

from conftest import GOLDEN_DIR, corpus_programs, stdin_for
from oracles import (
    SEQUENCE_OP_NAMES, random_map_ops, random_sequence_ops, run_map_ops,
    run_sequence_ops,
)

ORACLE_SEED = 977231


def guarded(check):
    """Run one criterion body; report (passed, detail) either way."""
    try:
        return True, check()
    except AssertionError as exc:
        return False, "failed: %s" % (str(exc).splitlines()[0] if str(exc) else "assertion")


def test_differential_execution(acceptance, native_oracle):
    natives, native_elapsed = native_oracle

    def check():
        programs = corpus_programs()
        assert len(programs) >= 20, "corpus holds %d programs, need 20" % len(programs)
        sources = "\n".join(p.read_text(encoding="utf-8") for p in programs)
        for feature in ("vector<", "stack<", "queue<", "deque<", "map<",
                        "unordered_map<", "if", "while", "for", "cin", "cout"):
            assert feature in sources, "corpus never uses %s" % feature
        start = time.monotonic()
        for path in programs:
            native = natives[path.name]
            doc = run(compile_source(path.read_text(encoding="utf-8")),
                      InterpreterOptions(stdin_text=stdin_for(path)))
            term = doc.frames[-1].termination
            assert term["status"] == "finished", "%s: %s" % (path.name, term)
            assert doc.frames[-1].stdout == native.stdout, "%s: stdout differs" % path.name
            assert term["exitCode"] == native.returncode, "%s: exit code differs" % path.name
        elapsed = native_elapsed + (time.monotonic() - start)
        assert elapsed < 60, "took %.1fs, budget 60s" % elapsed
        return "%d programs byte-exact vs g++, %.1fs" % (len(programs), elapsed)

    passed, detail = guarded(check)
    acceptance("differential-execution", passed, detail)


def test_container_oracles(acceptance):
    def check():
        start = time.monotonic()
        for kind in sorted(SEQUENCE_OP_NAMES):
            run_sequence_ops(kind, random_sequence_ops(kind, 10_000, ORACLE_SEED))
        for kind in ("map", "unordered_map"):
            run_map_ops(kind, random_map_ops(10_000, ORACLE_SEED + 1))
        elapsed = time.monotonic() - start
        assert elapsed < 30, "took %.1fs, budget 30s" % elapsed
        return "6 kinds x 10000 ops vs reference models, %.1fs" % elapsed

    passed, detail = guarded(check)
    acceptance("container-oracles", passed, detail)


def test_map_probe_golden(acceptance):
    def check():
        m = make_container("c0", "t",
                           TypeTag("map", key=TypeTag("int"), elem=TypeTag("int")), 6)
        m.index_set(5, 50)
        m.index_set(8, 80)
        key_of = {nid: node["key"] for nid, node in m.nodes.items()}
        _, insert_events = m.index_set(6, 60)
        key_of[2] = 6
        probe = [(e.kind, key_of[e.target["node"]]) for e in insert_events]
        assert probe == [("read", 5), ("read", 8), ("write", 6)], probe
        _, erase_events = m.erase(6)
        tail = [(e.kind, key_of[e.target["node"]]) for e in erase_events[-2:]]
        assert tail == [("delete", 6), ("write", 8)], tail
        fresh = json.dumps(
            {"insert": [e.to_wire() for e in insert_events],
             "erase": [e.to_wire() for e in erase_events]},
            separators=(",", ":"), ensure_ascii=False)
        frozen = (GOLDEN_DIR / "bst_events.json").read_text(encoding="utf-8").strip()
        assert fresh == frozen, "event bytes drifted from the reviewed golden"
        return "probe scripts match the reviewed golden byte-for-byte"

    passed, detail = guarded(check)
    acceptance("map-probe-golden", passed, detail)


def test_hash_bucket_placement(acceptance):
    def check():
        source = ("int main() {\n"
                  "    unordered_map<int, int> h;\n"
                  "    h[8] = 80;\n"
                  "    h[14] = 140;\n"
                  "    h[-1] = 10;\n"
                  "    return 0;\n}\n")
        doc = run(compile_source(source), InterpreterOptions(hash_buckets=6))
        final = doc.frames[-2]  # last frame with the container alive
        (snap,) = final.containers
        chains = [[entry[0] for entry in chain] for chain in snap["buckets"]]
        assert chains[2] == [8, 14], chains
        assert chains[5] == [-1], chains
        assert sum(map(len, chains)) == 3
        return "keys 8 and 14 chain in bucket 2 as [8, 14]; -1 in bucket 5"

    passed, detail = guarded(check)
    acceptance("hash-bucket-placement", passed, detail)


def test_trace_format_closure(acceptance):
    def check():
        start = time.monotonic()
        options = InterpreterOptions(stream_chunk=5)
        for path in corpus_programs():
            source = path.read_text(encoding="utf-8")
            options = InterpreterOptions(stream_chunk=5,
                                         stdin_text=stdin_for(path))
            program = compile_source(source)
            doc = run(program, options)
            issues = validate_document(doc)
            assert issues == [], "%s: %s" % (path.name, issues[:1])
            data = serialize(doc)
            assert serialize(deserialize(data)) == data, path.name
            assert serialize(run(program, options)) == data, "%s: nondeterministic" % path.name
            streamed = b"".join(serialize_stream(
                source, options.to_wire(), stream_run(program, options)))
            assert streamed == data, "%s: streamed bytes differ" % path.name
        frozen = (GOLDEN_DIR / "map_scenario.trace.json").read_bytes().strip()
        scenario = next(p for p in corpus_programs() if p.stem == "17_map_tree_shape")
        fresh = serialize(run(compile_source(scenario.read_text(encoding="utf-8")),
                              InterpreterOptions()))
        assert fresh == frozen, "scenario trace drifted from the reviewed golden"
        return "all corpus traces: valid, round-trip, streamed and repeated " \
               "runs byte-identical, %.1fs" % (time.monotonic() - start)

    passed, detail = guarded(check)
    acceptance("trace-format-closure", passed, detail)


def test_truncation(acceptance, tmp_path):
    def check():
        src = tmp_path / "spin.cpp"
        src.write_text("int main() {\n    int i = 0;\n    while (true) {\n"
                       "        i = i + 1;\n    }\n    return 0;\n}\n",
                       encoding="utf-8")
        out = tmp_path / "spin.trace.json"
        code = main(["trace", str(src), "--out", str(out), "--max-frames", "100"])
        assert code == 4, "cmd_trace exit code %d, wanted 4" % code
        doc = deserialize(out.read_bytes())
        assert len(doc.frames) == 100, "wrote %d frames" % len(doc.frames)
        assert doc.frames[-1].termination == {"status": "truncated"}
        assert validate_document(doc) == []
        return "exactly 100 frames, truncated terminal, exit code 4"

    passed, detail = guarded(check)
    acceptance("truncation", passed, detail)


def test_scope_semantics(acceptance):
    def check():
        source = ("int main() {\n"
                  "    int x = 1;\n"
                  "    {\n"
                  "        int x = 10;\n"
                  "        x = x + 1;\n"
                  "    }\n"
                  "    {\n"
                  "    }\n"
                  "    return 0;\n}\n")
        doc = run(compile_source(source), InterpreterOptions())
        inner = next(f for f in doc.frames if f.explanation == "Assigning 11 to x")
        (stack,) = inner.stacks
        assert stack["active"]
        blocks_with_x = [scope for scope in stack["scopes"]
                         if any(v["name"] == "x" for v in scope)]
        assert len(blocks_with_x) == 2, "x bound in %d scope blocks" % len(blocks_with_x)
        values = [v["value"] for scope in blocks_with_x for v in scope
                  if v["name"] == "x"]
        assert values == [1, 11], values  # the write landed on the inner binding
        empty = next(f for f in doc.frames if f.explanation == "Entering a new scope"
                     and f.index > inner.index)
        assert empty.stacks[0]["scopes"][-1] == [], "empty block must show an empty scope"
        return "two scope blocks each binding x, inner wins; empty block visible"

    passed, detail = guarded(check)
    acceptance("scope-semantics", passed, detail)
