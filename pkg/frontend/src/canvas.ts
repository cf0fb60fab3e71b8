/**
 * The three canvases: Source, Target, Output.
 *
 * Each pane injects the element markup strings from the session view into an
 * <svg> container, so the canvas and the downloadable output cannot diverge.
 * Selection and hover are pure client concepts rendered as CSS classes.
 *
 * Interactions:
 *   click        select one element (shift-click toggles)
 *   dblclick     Target/Output: grow the selection via the similarity service
 *   dblclick     Source: select all Target elements matched to it
 */

import { expandSelection, matchedTargets } from "./api.js";
import {
  getState,
  pushToast,
  setHover,
  setSourceSelection,
  setTargetSelection,
  subscribe,
  toggleTargetSelected,
} from "./state.js";
import { isReady, type DocumentView, type Pane, type SessionView } from "./types.js";

const PANES: { pane: Pane; title: string }[] = [
  { pane: "source", title: "Source" },
  { pane: "target", title: "Target" },
  { pane: "output", title: "Output" },
];

/** Selection as it stood before the click that may begin a double-click. */
let preClickSelection = new Set<string>();

export function initCanvases(root: HTMLElement): void {
  root.innerHTML = "";
  root.classList.add("canvases");

  const svgs = new Map<Pane, SVGSVGElement>();
  const notes = new Map<Pane, HTMLElement>();
  for (const { pane, title } of PANES) {
    const column = document.createElement("div");
    column.className = "canvas-col";
    column.dataset.pane = pane;

    const heading = document.createElement("h2");
    heading.textContent = title;
    column.appendChild(heading);

    const note = document.createElement("p");
    note.className = "canvas-note";
    column.appendChild(note);
    notes.set(pane, note);

    const svg = document.createElementNS("http://www.w3.org/2000/svg", "svg");
    svg.setAttribute("class", "canvas");
    attachInteractions(svg, pane);
    column.appendChild(svg);
    svgs.set(pane, svg);

    root.appendChild(column);
  }

  let renderedView: SessionView | null = null;

  function render(): void {
    const { view } = getState();
    if (view !== renderedView) {
      renderedView = view;
      for (const { pane } of PANES) {
        renderDocument(svgs.get(pane)!, notes.get(pane)!, view, pane);
      }
    }
    applyHighlights(svgs);
  }

  subscribe(render);
  render();
}

function documentFor(view: SessionView, pane: Pane): DocumentView | undefined {
  if (pane === "source") return view.source;
  if (pane === "target") return view.target;
  return view.output;
}

function renderDocument(
  svg: SVGSVGElement,
  note: HTMLElement,
  view: SessionView | null,
  pane: Pane,
): void {
  if (view === null) {
    svg.innerHTML = "";
    svg.removeAttribute("viewBox");
    note.textContent = "No session loaded.";
    return;
  }
  if (view.status === "matching") {
    svg.innerHTML = "";
    note.textContent = `Matching... ${Math.round(view.progress * 100)}%`;
    return;
  }
  if (view.status === "failed") {
    svg.innerHTML = "";
    note.textContent = `Matching failed: ${view.error ?? "unknown error"}`;
    return;
  }
  const doc = documentFor(view, pane);
  if (!doc) return;
  const box = doc.viewBox;
  svg.setAttribute("viewBox", `${box.x} ${box.y} ${box.width} ${box.height}`);
  svg.innerHTML = doc.elements.map((e) => e.markup).join("");
  note.textContent = `${doc.elements.length} elements`;
}

/** Resolve the direct child of the pane svg that a DOM event landed on. */
function elementIdFrom(svg: SVGSVGElement, eventTarget: EventTarget | null): string | null {
  let node = eventTarget instanceof Element ? eventTarget : null;
  while (node && node.parentNode !== svg) {
    node = node.parentNode instanceof Element ? node.parentNode : null;
  }
  const id = node?.getAttribute("id");
  return id || null;
}

function attachInteractions(svg: SVGSVGElement, pane: Pane): void {
  svg.addEventListener("click", (event) => {
    const id = elementIdFrom(svg, event.target);
    // detail > 1 means this click is part of a double-click; the dblclick
    // handler owns selection then, so iterative expansion is not reset.
    if (event.detail > 1) return;
    if (pane === "source") {
      if (id === null) setSourceSelection([]);
      else if (event.shiftKey) toggleIn(getState().sourceSelection, id, setSourceSelection);
      else setSourceSelection([id]);
      return;
    }
    preClickSelection = new Set(getState().targetSelection);
    if (id === null) setTargetSelection([]);
    else if (event.shiftKey) toggleTargetSelected(id);
    else setTargetSelection([id]);
  });

  svg.addEventListener("dblclick", (event) => {
    const id = elementIdFrom(svg, event.target);
    if (id === null) return;
    if (pane === "source") void selectMatchedTargets(id);
    else void growSelection(id);
  });

  svg.addEventListener("mouseover", (event) => {
    const id = elementIdFrom(svg, event.target);
    if (id !== null) setHover(id, pane);
  });

  svg.addEventListener("mouseout", () => setHover(null, null));
}

function toggleIn(
  selection: Set<string>,
  id: string,
  apply: (ids: Iterable<string>) => void,
): void {
  const next = new Set(selection);
  if (next.has(id)) next.delete(id);
  else next.add(id);
  apply(next);
}

/** Grow the Target selection one similarity step from its pre-click state. */
async function growSelection(id: string): Promise<void> {
  const { view } = getState();
  if (!isReady(view)) return;
  const base = preClickSelection.has(id)
    ? new Set([...preClickSelection, id])
    : new Set([id]);
  setTargetSelection(base);
  try {
    const grown = await expandSelection(view.sessionId, [...base].sort());
    setTargetSelection(grown);
    preClickSelection = new Set(grown);
  } catch (error) {
    pushToast(`Selection expansion failed: ${String(error)}`);
  }
}

/** Select every Target element currently matched to this Source element. */
async function selectMatchedTargets(sourceId: string): Promise<void> {
  const { view } = getState();
  if (!isReady(view)) return;
  setSourceSelection([sourceId]);
  try {
    setTargetSelection(await matchedTargets(view.sessionId, sourceId));
  } catch (error) {
    pushToast(`Lookup of matched targets failed: ${String(error)}`);
  }
}

function applyHighlights(svgs: Map<Pane, SVGSVGElement>): void {
  const { targetSelection, sourceSelection, previewSelection, hoverId, hoverPane, view } =
    getState();
  const matchedSource =
    hoverId && hoverPane !== "source" && isReady(view) ? view.match[hoverId] : undefined;
  for (const [pane, svg] of svgs) {
    const selection = pane === "source" ? sourceSelection : targetSelection;
    for (const child of svg.children) {
      const id = child.getAttribute("id");
      if (!id) continue;
      const classes: string[] = [];
      if (selection.has(id)) classes.push("sel");
      if (pane !== "source" && previewSelection.has(id)) classes.push("preview");
      const hovered =
        hoverId === id &&
        (pane === hoverPane ||
          // Target and Output share ids, so hover mirrors across them.
          (pane !== "source" && hoverPane !== null && hoverPane !== "source"));
      if (hovered || (pane === "source" && id === matchedSource)) classes.push("hover");
      if (classes.length) child.setAttribute("class", classes.join(" "));
      else child.removeAttribute("class");
    }
  }
}
