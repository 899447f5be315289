/** Wire types for trace documents, mirroring docs/trace-format.md. */

export type Span = [number, number, number, number];

export type Scalar = number | boolean | string;
export type Value = Scalar | { ref: string };

export interface Binding {
  name: string;
  type: string;
  value: Value;
}

export interface StackEntry {
  function: string;
  callSite: Span | null;
  active: boolean;
  scopes: Binding[][];
}

export type SequenceKind = "vector" | "stack" | "queue" | "deque";

export interface SequenceSnapshot {
  id: string;
  name: string;
  kind: SequenceKind;
  elemType: string;
  values: Scalar[];
}

export interface BstNode {
  id: number;
  key: Scalar;
  value: Scalar;
  left: number | null;
  right: number | null;
}

export interface MapSnapshot {
  id: string;
  name: string;
  kind: "map";
  keyType: string;
  valueType: string;
  root: number | null;
  nodes: BstNode[];
}

export interface HashSnapshot {
  id: string;
  name: string;
  kind: "unordered_map";
  keyType: string;
  valueType: string;
  buckets: [Scalar, Scalar][][];
}

export type ContainerSnapshot = SequenceSnapshot | MapSnapshot | HashSnapshot;

export type EventKind = "read" | "write" | "delete";

export type AccessTarget =
  | { index: number }
  | { node: number }
  | { bucket: number; pos: number };

export interface AccessEvent {
  container: string;
  kind: EventKind;
  target: AccessTarget;
  step: number | null;
  edit: unknown;
}

export type Termination =
  | { status: "finished"; exitCode: number }
  | { status: "runtimeError"; kind: string; message: string }
  | { status: "truncated" };

export interface TraceFrame {
  index: number;
  span: Span;
  explanation: string;
  stacks: StackEntry[];
  containers: ContainerSnapshot[];
  events: AccessEvent[];
  stdout: string;
  termination: Termination | null;
}

export interface TraceDocument {
  formatVersion: string;
  source: string;
  options: Record<string, unknown>;
  frames: TraceFrame[];
}

/** Colors per event kind; overridable without touching any render code. */
export interface StyleMap {
  read: string;
  write: string;
  delete: string;
}

export const DEFAULT_STYLE: StyleMap = {
  read: "#cfe8ff",
  write: "#2f6fd0",
  delete: "#e05050",
};

export const SUPPORTED_MAJOR = 1;
