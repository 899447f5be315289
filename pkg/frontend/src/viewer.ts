/** Stepper state: a loaded document, a cursor, and the event colors. */

import { parseDocument } from "./load.js";
import { DisplayTree, renderFrame } from "./render.js";
import { DEFAULT_STYLE, StyleMap, TraceDocument } from "./types.js";

export interface ViewerState {
  doc: TraceDocument;
  cursor: number;
  style: StyleMap;
}

export function load(text: string, style: StyleMap = DEFAULT_STYLE): ViewerState {
  return { doc: parseDocument(text), cursor: 0, style };
}

/** Stepping clamps at the ends: the same state comes back unchanged. */
export function stepNext(state: ViewerState): ViewerState {
  if (state.cursor >= state.doc.frames.length - 1) return state;
  return { ...state, cursor: state.cursor + 1 };
}

export function stepPrev(state: ViewerState): ViewerState {
  if (state.cursor <= 0) return state;
  return { ...state, cursor: state.cursor - 1 };
}

export function render(state: ViewerState): DisplayTree {
  return renderFrame(state.doc, state.cursor, state.style);
}
