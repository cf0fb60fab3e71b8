/**
 * Client-side application state.
 *
 * The UI is stateless beyond what lives here: the session view fetched from
 * the service, the active selections, and the pane view filters. Reloading
 * the page and re-fetching the session reproduces the same screen.
 *
 * Mutations are serialized: at most one request is in flight, later actions
 * queue behind it so their order on the service matches the order the user
 * issued them.
 */

import { fetchSession, ServiceError } from "./api.js";
import { isReady, type Pane, type SessionView } from "./types.js";

export interface Toast {
  id: number;
  message: string;
}

export interface AppState {
  view: SessionView | null;
  /** Selection on the Target/Output canvases (they mirror each other). */
  targetSelection: Set<string>;
  /** Selection on the Source canvas. */
  sourceSelection: Set<string>;
  /** Similarity-threshold preview, shown in the secondary highlight color. */
  previewSelection: Set<string>;
  hoverId: string | null;
  hoverPane: Pane | null;
  tau: number;
  filterBySelection: boolean;
  modifiedOnly: boolean;
  busy: boolean;
  toasts: Toast[];
}

const state: AppState = {
  view: null,
  targetSelection: new Set(),
  sourceSelection: new Set(),
  previewSelection: new Set(),
  hoverId: null,
  hoverPane: null,
  tau: 0.8,
  filterBySelection: false,
  modifiedOnly: false,
  busy: false,
  toasts: [],
};

type Listener = () => void;
const listeners: Listener[] = [];
let toastCounter = 0;

export function getState(): AppState {
  return state;
}

export function subscribe(listener: Listener): () => void {
  listeners.push(listener);
  return () => {
    const index = listeners.indexOf(listener);
    if (index >= 0) listeners.splice(index, 1);
  };
}

function notify(): void {
  for (const listener of [...listeners]) listener();
}

/** Reset to the initial state; used when starting a fresh session. */
export function resetState(): void {
  state.view = null;
  state.targetSelection = new Set();
  state.sourceSelection = new Set();
  state.previewSelection = new Set();
  state.hoverId = null;
  state.hoverPane = null;
  state.tau = 0.8;
  state.filterBySelection = false;
  state.modifiedOnly = false;
  state.busy = false;
  state.toasts = [];
  notify();
}

/** Adopt a fresh view; selections are pruned to ids that still exist. */
export function setView(view: SessionView | null): void {
  state.view = view;
  if (isReady(view)) {
    const targetIds = new Set(view.target.elements.map((e) => e.id));
    const sourceIds = new Set(view.source.elements.map((e) => e.id));
    state.targetSelection = intersect(state.targetSelection, targetIds);
    state.previewSelection = intersect(state.previewSelection, targetIds);
    state.sourceSelection = intersect(state.sourceSelection, sourceIds);
  } else {
    state.targetSelection = new Set();
    state.sourceSelection = new Set();
    state.previewSelection = new Set();
  }
  notify();
}

function intersect(selection: Set<string>, ids: Set<string>): Set<string> {
  return new Set([...selection].filter((id) => ids.has(id)));
}

export function setTargetSelection(ids: Iterable<string>): void {
  state.targetSelection = new Set(ids);
  notify();
}

export function toggleTargetSelected(id: string): void {
  if (state.targetSelection.has(id)) state.targetSelection.delete(id);
  else state.targetSelection.add(id);
  notify();
}

export function setSourceSelection(ids: Iterable<string>): void {
  state.sourceSelection = new Set(ids);
  notify();
}

export function setPreviewSelection(ids: Iterable<string>): void {
  state.previewSelection = new Set(ids);
  notify();
}

export function setHover(id: string | null, pane: Pane | null): void {
  state.hoverId = id;
  state.hoverPane = pane;
  notify();
}

/** Clamp tau to [0, 1]; the similarity controls step it by 0.05. */
export function setTau(tau: number): void {
  state.tau = Math.min(1, Math.max(0, Math.round(tau * 100) / 100));
  notify();
}

export function stepTau(direction: -1 | 1): void {
  setTau(state.tau + direction * 0.05);
}

export function setFilterBySelection(on: boolean): void {
  state.filterBySelection = on;
  notify();
}

export function setModifiedOnly(on: boolean): void {
  state.modifiedOnly = on;
  notify();
}

export function pushToast(message: string): number {
  const id = ++toastCounter;
  state.toasts.push({ id, message });
  notify();
  return id;
}

export function dismissToast(id: number): void {
  const index = state.toasts.findIndex((t) => t.id === id);
  if (index >= 0) {
    state.toasts.splice(index, 1);
    notify();
  }
}

function sleep(ms: number): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, ms));
}

/** Poll the session until matching finishes, updating the view as it goes. */
export async function pollUntilReady(
  sessionId: string,
  intervalMs = 250,
): Promise<SessionView> {
  for (;;) {
    const view = await fetchSession(sessionId);
    setView(view);
    if (view.status !== "matching") return view;
    await sleep(intervalMs);
  }
}

let mutationChain: Promise<void> = Promise.resolve();

/**
 * Run a mutation after all previously queued ones settle.
 *
 * On success the returned view replaces the current one (read-your-writes).
 * A 409 means the session is not ready on the service side: re-poll instead
 * of retrying so the mutation is never applied twice. Other service errors
 * surface as toasts.
 */
export function enqueueMutation(
  mutation: () => Promise<SessionView>,
): Promise<void> {
  const run = async () => {
    state.busy = true;
    notify();
    try {
      setView(await mutation());
    } catch (error) {
      if (error instanceof ServiceError && error.status === 409) {
        pushToast("Session is busy; refreshing.");
        const sessionId = state.view?.sessionId;
        if (sessionId) setView(await pollUntilReady(sessionId));
      } else if (error instanceof ServiceError) {
        pushToast(`Request failed: ${error.message}`);
      } else {
        pushToast(`Request failed: ${String(error)}`);
      }
    } finally {
      state.busy = false;
      notify();
    }
  };
  mutationChain = mutationChain.then(run);
  return mutationChain;
}

/** Resolves once every mutation queued so far has settled. */
export function mutationsSettled(): Promise<void> {
  return mutationChain;
}
