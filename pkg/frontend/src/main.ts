/** Browser entry point: fetch the trace, then step through it. */

import { bindKeys, mount, mountError } from "./dom.js";
import { TraceLoadError } from "./load.js";
import { load, render, stepNext, stepPrev, ViewerState } from "./viewer.js";

async function start(): Promise<void> {
  const root = document.getElementById("app");
  if (!root) throw new Error("missing #app element");

  let text: string;
  try {
    const response = await fetch("/trace");
    if (!response.ok) throw new Error(`GET /trace returned ${response.status}`);
    text = await response.text();
  } catch (e) {
    mountError((e as Error).message, root);
    return;
  }

  let state: ViewerState;
  try {
    state = load(text);
  } catch (e) {
    if (e instanceof TraceLoadError) {
      mountError(e.message, root);
      return;
    }
    throw e;
  }

  const handlers = {
    onPrev: () => update(stepPrev(state)),
    onNext: () => update(stepNext(state)),
  };
  const update = (next: ViewerState) => {
    state = next;
    mount(render(state), root, handlers);
  };
  bindKeys(document, handlers);
  update(state);
}

start();
