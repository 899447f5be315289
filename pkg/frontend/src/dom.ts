/** Transcribes a display tree into DOM nodes. No state of its own. */

import {
  CellView,
  ContainerView,
  DisplayTree,
  TreeNodeView,
} from "./render.js";

export interface Handlers {
  onPrev: () => void;
  onNext: () => void;
}

function el(tag: string, className?: string, text?: string): HTMLElement {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function cellEl(cell: CellView): HTMLElement {
  const box = el("span", "cell", cell.text);
  if (cell.color) box.style.background = cell.color;
  if (cell.label !== null) box.dataset.label = cell.label;
  return box;
}

function treeEl(node: TreeNodeView | null): HTMLElement {
  if (node === null) return el("span", "leaf", "∅");
  const box = el("div", "tree-node");
  const head = el("span", "cell", `${node.key}: ${node.value}`);
  if (node.color) head.style.background = node.color;
  box.appendChild(head);
  if (node.left || node.right) {
    const kids = el("div", "tree-children");
    kids.appendChild(treeEl(node.left));
    kids.appendChild(treeEl(node.right));
    box.appendChild(kids);
  }
  return box;
}

function containerEl(view: ContainerView): HTMLElement {
  const panel = el("div", "container-box");
  panel.appendChild(el("div", "container-header", view.header));
  if (view.kind === "map") {
    panel.appendChild(treeEl(view.root));
    return panel;
  }
  if (view.kind === "hash") {
    for (const bucket of view.buckets) {
      const row = el("div", "bucket");
      row.appendChild(el("span", "bucket-label", String(bucket.index)));
      for (const entry of bucket.entries) row.appendChild(cellEl(entry));
      panel.appendChild(row);
    }
    return panel;
  }
  const row = el("div", "cells");
  if (view.frontMarker) row.appendChild(el("span", "marker", view.frontMarker));
  for (const cell of view.cells) row.appendChild(cellEl(cell));
  if (view.backMarker) row.appendChild(el("span", "marker", view.backMarker));
  panel.appendChild(row);
  return panel;
}

export function mount(tree: DisplayTree, root: HTMLElement, handlers: Handlers): void {
  root.replaceChildren();

  const explanation = el("div", "explanation", tree.explanation);
  explanation.id = "explanation";
  root.appendChild(explanation);

  const layout = el("div", "layout");
  root.appendChild(layout);

  const code = el("pre", "code");
  code.id = "code";
  for (const line of tree.source) {
    code.appendChild(el("span", "lineno", String(line.number).padStart(3) + "  "));
    for (const seg of line.segments) {
      code.appendChild(el("span", seg.current ? "current" : "plain", seg.text));
    }
    code.appendChild(document.createTextNode("\n"));
  }
  layout.appendChild(code);

  const right = el("div", "right");
  layout.appendChild(right);

  const stacks = el("div", "panel");
  stacks.id = "stacks";
  stacks.appendChild(el("h2", undefined, "Execution stack"));
  for (const stack of tree.stacks) {
    const frameBox = el("div", stack.active ? "stack-frame active" : "stack-frame");
    frameBox.appendChild(el("div", "fn-name", stack.functionName));
    for (const scope of stack.scopes) {
      const scopeBox = el("div", "scope");
      for (const v of scope) {
        scopeBox.appendChild(el("div", "var", `${v.type} ${v.name} = ${v.shown}`));
      }
      frameBox.appendChild(scopeBox);
    }
    stacks.appendChild(frameBox);
  }
  right.appendChild(stacks);

  const containers = el("div", "panel");
  containers.id = "containers";
  containers.appendChild(el("h2", undefined, "Containers"));
  for (const view of tree.containers) containers.appendChild(containerEl(view));
  right.appendChild(containers);

  const stdout = el("pre", "stdout", tree.stdout);
  stdout.id = "stdout";
  right.appendChild(stdout);

  const controls = el("div", "controls");
  controls.id = "controls";
  const prev = el("button", undefined, "◀ prev") as HTMLButtonElement;
  prev.disabled = !tree.controls.canPrev;
  prev.addEventListener("click", handlers.onPrev);
  const counter = el("span", "counter", `${tree.controls.frame} / ${tree.controls.lastFrame}`);
  const next = el("button", undefined, "next ▶") as HTMLButtonElement;
  next.disabled = !tree.controls.canNext;
  next.addEventListener("click", handlers.onNext);
  controls.append(prev, counter, next);
  const status = el("span", `status ${tree.status.tone}`, tree.status.text);
  controls.appendChild(status);
  root.appendChild(controls);
}

/** Arrow keys mirror the buttons. Returns the detach function. */
export function bindKeys(target: EventTarget, handlers: Handlers): () => void {
  const onKey = (event: Event) => {
    const key = (event as KeyboardEvent).key;
    if (key === "ArrowRight") handlers.onNext();
    else if (key === "ArrowLeft") handlers.onPrev();
  };
  target.addEventListener("keydown", onKey);
  return () => target.removeEventListener("keydown", onKey);
}

export function mountError(message: string, root: HTMLElement): void {
  root.replaceChildren();
  const panel = el("div", "error-panel");
  panel.appendChild(el("h2", undefined, "Could not load the trace"));
  panel.appendChild(el("p", undefined, message));
  root.appendChild(panel);
}
