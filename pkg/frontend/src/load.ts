/** Parsing and checking of trace bytes fetched from the backend.
 *
 * The checks mirror the backend's own document validation closely
 * enough to refuse anything the renderer cannot draw; they are not a
 * full re-implementation.
 */

import { SUPPORTED_MAJOR, Span, TraceDocument, TraceFrame } from "./types.js";

export class TraceLoadError extends Error {}

function fail(reason: string): never {
  throw new TraceLoadError(reason);
}

function isObject(x: unknown): x is Record<string, unknown> {
  return typeof x === "object" && x !== null && !Array.isArray(x);
}

function checkSpan(raw: unknown, where: string, lineCount: number): Span {
  if (!Array.isArray(raw) || raw.length !== 4 || !raw.every((n) => typeof n === "number")) {
    fail(`${where}: span must be four numbers`);
  }
  const span = raw as Span;
  if (span[0] < 1 || span[2] > lineCount || span[0] > span[2]) {
    fail(`${where}: span lines ${span[0]}..${span[2]} outside the source`);
  }
  return span;
}

function checkFrame(raw: unknown, i: number, lineCount: number): TraceFrame {
  const where = `frame ${i}`;
  if (!isObject(raw)) fail(`${where}: not an object`);
  if (raw.index !== i) fail(`${where}: index ${raw.index} out of order`);
  checkSpan(raw.span, where, lineCount);
  if (typeof raw.explanation !== "string") fail(`${where}: explanation missing`);
  if (typeof raw.stdout !== "string") fail(`${where}: stdout missing`);
  if (!Array.isArray(raw.stacks) || !Array.isArray(raw.containers) || !Array.isArray(raw.events)) {
    fail(`${where}: stacks, containers and events must be arrays`);
  }
  const active = raw.stacks.filter((s) => isObject(s) && s.active === true);
  if (raw.stacks.length > 0 && (active.length !== 1 || raw.stacks[raw.stacks.length - 1].active !== true)) {
    fail(`${where}: exactly the innermost call must be active`);
  }
  for (const s of raw.stacks) {
    if (!isObject(s) || typeof s.function !== "string" || !Array.isArray(s.scopes)) {
      fail(`${where}: malformed stack entry`);
    }
  }
  return raw as unknown as TraceFrame;
}

export function parseDocument(text: string): TraceDocument {
  let raw: unknown;
  try {
    raw = JSON.parse(text);
  } catch (e) {
    fail(`not a JSON document (${(e as Error).message})`);
  }
  if (!isObject(raw)) fail("top level is not an object");
  const version = raw.formatVersion;
  if (typeof version !== "string" || !/^\d+\.\d+\.\d+$/.test(version)) {
    fail("formatVersion missing or malformed");
  }
  const major = Number(version.split(".")[0]);
  if (major !== SUPPORTED_MAJOR) {
    fail(`unsupported format version ${version} (this viewer reads major ${SUPPORTED_MAJOR})`);
  }
  if (typeof raw.source !== "string") fail("source text missing");
  if (!isObject(raw.options)) fail("options missing");
  const frames = raw.frames;
  if (!Array.isArray(frames) || frames.length === 0) fail("frames missing or empty");

  const lineCount = raw.source.split("\n").length;
  frames.forEach((f, i) => checkFrame(f, i, lineCount));
  frames.forEach((f: { termination: unknown }, i) => {
    const last = i === frames.length - 1;
    if (last && !isObject(f.termination)) fail("last frame carries no termination");
    if (!last && f.termination !== null) fail(`frame ${i}: termination before the last frame`);
  });
  return raw as unknown as TraceDocument;
}
