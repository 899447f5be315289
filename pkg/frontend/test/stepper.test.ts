/** Stepper contract: loading, clamped stepping, highlight tracking,
 * and the default event colors.
 */

import { readFileSync } from "node:fs";
import { describe, expect, it } from "vitest";

import { DisplayTree, MapView, TreeNodeView } from "../src/render.js";
import { DEFAULT_STYLE, Span, TraceDocument } from "../src/types.js";
import { load, render, stepNext, stepPrev, ViewerState } from "../src/viewer.js";

const mapTrace = readFileSync(
  new URL("../../tests/golden/map_scenario.trace.json", import.meta.url),
  "utf8"
);
const mixedTrace = readFileSync(
  new URL("./fixtures/mixed.trace.json", import.meta.url),
  "utf8"
);

/** Rebuild the highlighted span from the rendered source pane. */
function highlightedSpan(tree: DisplayTree): Span {
  const hits: Array<{ line: number; from: number; to: number }> = [];
  for (const line of tree.source) {
    let col = 1;
    for (const seg of line.segments) {
      if (seg.current && seg.text.length > 0) {
        hits.push({ line: line.number, from: col, to: col + seg.text.length - 1 });
      }
      col += seg.text.length;
    }
  }
  const first = hits[0];
  const last = hits[hits.length - 1];
  if (!first || !last) throw new Error("no highlighted source");
  return [first.line, first.from, last.line, last.to];
}

function stepTo(state: ViewerState, k: number): ViewerState {
  let s = state;
  for (let i = 0; i < k; i++) s = stepNext(s);
  return s;
}

function treeNodes(view: MapView): TreeNodeView[] {
  const out: TreeNodeView[] = [];
  const walk = (n: TreeNodeView | null) => {
    if (!n) return;
    out.push(n);
    walk(n.left);
    walk(n.right);
  };
  walk(view.root);
  return out;
}

describe("loading", () => {
  it("renders the first frame of a freshly loaded trace", () => {
    const state = load(mapTrace);
    expect(state.cursor).toBe(0);
    const tree = render(state);
    const doc: TraceDocument = JSON.parse(mapTrace);
    expect(tree.explanation).toBe(doc.frames[0]!.explanation);
    expect(tree.controls.frame).toBe(0);
    expect(highlightedSpan(tree)).toEqual(doc.frames[0]!.span);
    expect(tree.source.map((l) => l.segments.map((s) => s.text).join("")).join("\n")).toBe(
      doc.source
    );
  });
});

describe("stepping", () => {
  it("prev at the first frame is a no-op", () => {
    const state = load(mapTrace);
    expect(stepPrev(state)).toBe(state);
  });

  it("next at the last frame is a no-op", () => {
    const doc: TraceDocument = JSON.parse(mapTrace);
    const last = stepTo(load(mapTrace), doc.frames.length - 1);
    expect(last.cursor).toBe(doc.frames.length - 1);
    expect(stepNext(last)).toBe(last);
    expect(render(last).controls.canNext).toBe(false);
  });

  it("keeps the highlight in lockstep with the frame spans", () => {
    const doc: TraceDocument = JSON.parse(mapTrace);
    const state = load(mapTrace);
    for (const k of [1, 2, 7, 19, 33, doc.frames.length - 1]) {
      const tree = render(stepTo(state, k));
      expect(tree.controls.frame).toBe(k);
      expect(highlightedSpan(tree)).toEqual(doc.frames[k]!.span);
    }
  });

  it("walks forward and back across the whole document without drift", () => {
    const doc: TraceDocument = JSON.parse(mapTrace);
    let s = load(mapTrace);
    for (let k = 1; k < doc.frames.length; k++) s = stepNext(s);
    for (let k = doc.frames.length - 2; k >= 0; k--) {
      s = stepPrev(s);
      expect(s.cursor).toBe(k);
    }
    expect(stepPrev(s)).toBe(s);
  });
});

describe("event colors", () => {
  /** Substep frames carry exactly one event, making color checks sharp. */
  function substepFrame(doc: TraceDocument, kind: string): number {
    const frame = doc.frames.find(
      (f) => f.events.length === 1 && f.events[0]!.kind === kind
    );
    if (!frame) throw new Error(`fixture has no 1-event ${kind} frame`);
    return frame.index;
  }

  it("renders read targets light blue on the tree", () => {
    const doc: TraceDocument = JSON.parse(mapTrace);
    const k = substepFrame(doc, "read");
    const tree = render(stepTo(load(mapTrace), k));
    const target = doc.frames[k]!.events[0]!.target as { node: number };
    const colored = treeNodes(tree.containers[0] as MapView).filter((n) => n.color !== null);
    expect(colored.map((n) => n.id)).toEqual([target.node]);
    expect(colored[0]!.color).toBe(DEFAULT_STYLE.read);
  });

  it("renders write targets blue on the tree", () => {
    const doc: TraceDocument = JSON.parse(mapTrace);
    const k = substepFrame(doc, "write");
    const tree = render(stepTo(load(mapTrace), k));
    const target = doc.frames[k]!.events[0]!.target as { node: number };
    const colored = treeNodes(tree.containers[0] as MapView).filter((n) => n.color !== null);
    expect(colored.map((n) => n.id)).toEqual([target.node]);
    expect(colored[0]!.color).toBe(DEFAULT_STYLE.write);
  });

  it("renders delete targets red while the node is still drawn", () => {
    const doc: TraceDocument = JSON.parse(mapTrace);
    const k = substepFrame(doc, "delete");
    const tree = render(stepTo(load(mapTrace), k));
    const target = doc.frames[k]!.events[0]!.target as { node: number };
    const colored = treeNodes(tree.containers[0] as MapView).filter((n) => n.color !== null);
    expect(colored.map((n) => n.id)).toEqual([target.node]);
    expect(colored[0]!.color).toBe(DEFAULT_STYLE.delete);
  });

  it("colors sequence cells by index target", () => {
    const doc: TraceDocument = JSON.parse(mixedTrace);
    // first index write is the push_back statement frame
    const k = doc.frames.findIndex((f) =>
      f.events.some((e) => e.kind === "write" && "index" in e.target)
    );
    const tree = render(stepTo(load(mixedTrace), k));
    const frame = doc.frames[k]!;
    const seq = tree.containers.find((c) => c.kind === "sequence");
    if (!seq || seq.kind !== "sequence") throw new Error("no sequence view");
    for (const e of frame.events) {
      const idx = (e.target as { index: number }).index;
      expect(seq.cells[idx]!.color).toBe(DEFAULT_STYLE[e.kind]);
    }
  });

  it("colors hash entries by bucket and position", () => {
    const doc: TraceDocument = JSON.parse(mixedTrace);
    const k = doc.frames.findIndex(
      (f) => f.events.length === 1 && f.events[0]!.kind === "delete" && "bucket" in f.events[0]!.target
    );
    expect(k).toBeGreaterThan(0);
    const tree = render(stepTo(load(mixedTrace), k));
    const target = doc.frames[k]!.events[0]!.target as { bucket: number; pos: number };
    const hash = tree.containers.find((c) => c.kind === "hash");
    if (!hash || hash.kind !== "hash") throw new Error("no hash view");
    expect(hash.buckets[target.bucket]!.entries[target.pos]!.color).toBe(DEFAULT_STYLE.delete);
  });

  it("applies a custom style map without any other change", () => {
    const style = { read: "#111111", write: "#222222", delete: "#333333" };
    const doc: TraceDocument = JSON.parse(mapTrace);
    const k = doc.frames.findIndex((f) => f.events.length === 1 && f.events[0]!.kind === "read");
    const tree = render(stepTo(load(mapTrace, style), k));
    const colored = treeNodes(tree.containers[0] as MapView).filter((n) => n.color !== null);
    expect(colored[0]!.color).toBe("#111111");
  });
});
