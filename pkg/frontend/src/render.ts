/** Pure rendering: (document, cursor, style) -> display tree.
 *
 * The display tree is plain data so tests can assert on it without a
 * browser; the DOM layer just transcribes it. Rendering the same
 * inputs twice must yield structurally identical trees.
 */

import {
  AccessTarget,
  Binding,
  BstNode,
  ContainerSnapshot,
  EventKind,
  Scalar,
  StyleMap,
  TraceDocument,
  TraceFrame,
  Value,
} from "./types.js";

export interface SourceSegment {
  text: string;
  current: boolean;
}

export interface SourceLine {
  number: number;
  segments: SourceSegment[];
}

export interface VarView {
  name: string;
  type: string;
  shown: string;
}

export interface StackView {
  functionName: string;
  active: boolean;
  scopes: VarView[][];
}

export interface CellView {
  label: string | null;
  text: string;
  color: string | null;
}

export interface SequenceView {
  kind: "sequence";
  name: string;
  header: string;
  cells: CellView[];
  frontMarker: string | null;
  backMarker: string | null;
}

export interface TreeNodeView {
  id: number;
  key: string;
  value: string;
  color: string | null;
  left: TreeNodeView | null;
  right: TreeNodeView | null;
}

export interface MapView {
  kind: "map";
  name: string;
  header: string;
  root: TreeNodeView | null;
}

export interface BucketView {
  index: number;
  entries: CellView[];
}

export interface HashView {
  kind: "hash";
  name: string;
  header: string;
  buckets: BucketView[];
}

export type ContainerView = SequenceView | MapView | HashView;

export interface ControlsView {
  frame: number;
  lastFrame: number;
  canPrev: boolean;
  canNext: boolean;
}

export interface StatusView {
  tone: "running" | "finished" | "error" | "truncated";
  text: string;
}

export interface DisplayTree {
  explanation: string;
  source: SourceLine[];
  stacks: StackView[];
  containers: ContainerView[];
  stdout: string;
  controls: ControlsView;
  status: StatusView;
}

function targetKey(target: AccessTarget): string {
  if ("index" in target) return `i${target.index}`;
  if ("node" in target) return `n${target.node}`;
  return `b${target.bucket}.${target.pos}`;
}

/** Latest event per touched cell wins, matching the backend's touch order. */
function eventColors(frame: TraceFrame, style: StyleMap): Map<string, string> {
  const kinds = new Map<string, EventKind>();
  for (const event of frame.events) {
    kinds.set(`${event.container}/${targetKey(event.target)}`, event.kind);
  }
  const colors = new Map<string, string>();
  for (const [key, kind] of kinds) colors.set(key, style[kind]);
  return colors;
}

function showScalar(value: Scalar, type: string): string {
  if (type === "char") return `'${value}'`;
  if (type === "string") return JSON.stringify(value);
  if (typeof value === "boolean") return value ? "true" : "false";
  return String(value);
}

function showBinding(binding: Binding, frame: TraceFrame): string {
  const v: Value = binding.value;
  if (typeof v === "object") {
    const c = frame.containers.find((c) => c.id === v.ref);
    return c ? `→ ${c.name}` : `→ ${v.ref}`;
  }
  return showScalar(v, binding.type);
}

function renderSource(source: string, frame: TraceFrame): SourceLine[] {
  const [sl, sc, el, ec] = frame.span;
  return source.split("\n").map((text, idx) => {
    const line = idx + 1;
    if (line < sl || line > el) {
      return { number: line, segments: [{ text, current: false }] };
    }
    const from = line === sl ? sc - 1 : 0;
    const to = line === el ? ec : text.length;
    const segments: SourceSegment[] = [];
    if (from > 0) segments.push({ text: text.slice(0, from), current: false });
    segments.push({ text: text.slice(from, to), current: true });
    if (to < text.length) segments.push({ text: text.slice(to), current: false });
    return { number: line, segments };
  });
}

function renderStacks(frame: TraceFrame): StackView[] {
  return frame.stacks.map((entry) => ({
    functionName: entry.function,
    active: entry.active,
    scopes: entry.scopes.map((scope) =>
      scope.map((b) => ({ name: b.name, type: b.type, shown: showBinding(b, frame) }))
    ),
  }));
}

function renderTree(
  nodes: BstNode[],
  rootId: number | null,
  keyType: string,
  valueType: string,
  color: (key: string) => string | null
): TreeNodeView | null {
  const byId = new Map(nodes.map((n) => [n.id, n]));
  const seen = new Set<number>();
  const build = (id: number | null): TreeNodeView | null => {
    if (id === null) return null;
    const node = byId.get(id);
    if (!node || seen.has(id)) return null; // malformed links: draw what we can
    seen.add(id);
    return {
      id,
      key: showScalar(node.key, keyType),
      value: showScalar(node.value, valueType),
      color: color(`n${id}`),
      left: build(node.left),
      right: build(node.right),
    };
  };
  return build(rootId);
}

function renderContainer(
  snapshot: ContainerSnapshot,
  colors: Map<string, string>
): ContainerView {
  const color = (key: string) => colors.get(`${snapshot.id}/${key}`) ?? null;
  if (snapshot.kind === "map") {
    return {
      kind: "map",
      name: snapshot.name,
      header: `map<${snapshot.keyType}, ${snapshot.valueType}> ${snapshot.name}`,
      root: renderTree(snapshot.nodes, snapshot.root, snapshot.keyType, snapshot.valueType, color),
    };
  }
  if (snapshot.kind === "unordered_map") {
    return {
      kind: "hash",
      name: snapshot.name,
      header: `unordered_map<${snapshot.keyType}, ${snapshot.valueType}> ${snapshot.name}`,
      buckets: snapshot.buckets.map((chain, b) => ({
        index: b,
        entries: chain.map(([k, v], pos) => ({
          label: null,
          text: `${showScalar(k, snapshot.keyType)}: ${showScalar(v, snapshot.valueType)}`,
          color: color(`b${b}.${pos}`),
        })),
      })),
    };
  }
  const n = snapshot.values.length;
  return {
    kind: "sequence",
    name: snapshot.name,
    header: `${snapshot.kind}<${snapshot.elemType}> ${snapshot.name}`,
    cells: snapshot.values.map((v, i) => ({
      label: snapshot.kind === "vector" ? String(i) : null,
      text: showScalar(v, snapshot.elemType),
      color: color(`i${i}`),
    })),
    frontMarker:
      n === 0 ? null : snapshot.kind === "queue" || snapshot.kind === "deque" ? "front" : null,
    backMarker:
      n === 0
        ? null
        : snapshot.kind === "stack"
          ? "top"
          : snapshot.kind === "queue" || snapshot.kind === "deque"
            ? "back"
            : null,
  };
}

function renderStatus(frame: TraceFrame, cursor: number, lastFrame: number): StatusView {
  const t = frame.termination;
  if (t === null) return { tone: "running", text: `step ${cursor} of ${lastFrame}` };
  if (t.status === "finished") return { tone: "finished", text: `finished with exit code ${t.exitCode}` };
  if (t.status === "truncated") return { tone: "truncated", text: "trace truncated at the frame limit" };
  return { tone: "error", text: `${t.kind}: ${t.message}` };
}

export function renderFrame(doc: TraceDocument, cursor: number, style: StyleMap): DisplayTree {
  const frame = doc.frames[cursor];
  if (!frame) throw new RangeError(`frame ${cursor} outside document of ${doc.frames.length}`);
  const colors = eventColors(frame, style);
  const lastFrame = doc.frames.length - 1;
  return {
    explanation: frame.explanation,
    source: renderSource(doc.source, frame),
    stacks: renderStacks(frame),
    containers: frame.containers.map((c) => renderContainer(c, colors)),
    stdout: frame.stdout,
    controls: {
      frame: cursor,
      lastFrame,
      canPrev: cursor > 0,
      canNext: cursor < lastFrame,
    },
    status: renderStatus(frame, cursor, lastFrame),
  };
}
