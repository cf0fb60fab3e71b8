/**
 * Top toolbar: document upload, similarity controls, the Transfer Source
 * Style button, and output download.
 */

import {
  createSession,
  fetchOutputSvg,
  retarget,
  thresholdSelection,
} from "./api.js";
import {
  enqueueMutation,
  getState,
  pollUntilReady,
  pushToast,
  resetState,
  setPreviewSelection,
  setTargetSelection,
  setTau,
  setView,
  stepTau,
  subscribe,
} from "./state.js";
import { isReady } from "./types.js";

/** Upload a document pair and poll until matching finishes. */
export async function uploadPair(source: Blob, target: Blob): Promise<void> {
  resetState();
  try {
    const pending = await createSession(source, target);
    setView(pending);
    window.location.hash = `s=${pending.sessionId}`;
    await pollUntilReady(pending.sessionId);
  } catch (error) {
    pushToast(`Upload failed: ${String(error)}`);
  }
}

/** Remap the selected Target elements to the single selected Source element. */
export function transferSourceStyle(): Promise<void> | null {
  const { view, sourceSelection, targetSelection } = getState();
  if (!isReady(view)) return null;
  if (sourceSelection.size !== 1 || targetSelection.size === 0) {
    pushToast("Select one Source element and at least one Target element.");
    return null;
  }
  const [source] = [...sourceSelection];
  const targets = [...targetSelection].sort();
  const sessionId = view.sessionId;
  return enqueueMutation(() => retarget(sessionId, targets, source!));
}

/** Preview which elements a similarity threshold would select. */
export async function previewSimilar(): Promise<void> {
  const { view, targetSelection, tau } = getState();
  if (!isReady(view)) return;
  if (targetSelection.size === 0) {
    pushToast("Select seed elements on the Target first.");
    return;
  }
  try {
    const selected = await thresholdSelection(
      view.sessionId,
      [...targetSelection].sort(),
      tau,
    );
    setPreviewSelection(selected);
  } catch (error) {
    pushToast(`Similarity preview failed: ${String(error)}`);
  }
}

/** Fetch the resolved output document and hand it to the browser as a file. */
export async function downloadOutput(): Promise<string | null> {
  const { view } = getState();
  if (!isReady(view)) return null;
  try {
    const svg = await fetchOutputSvg(view.sessionId);
    if (typeof URL.createObjectURL === "function") {
      const url = URL.createObjectURL(new Blob([svg], { type: "image/svg+xml" }));
      const anchor = document.createElement("a");
      anchor.href = url;
      anchor.download = "output.svg";
      anchor.click();
      URL.revokeObjectURL(url);
    }
    return svg;
  } catch (error) {
    pushToast(`Download failed: ${String(error)}`);
    return null;
  }
}

export function initControls(root: HTMLElement): void {
  root.innerHTML = "";
  root.classList.add("controls");

  const form = document.createElement("form");
  form.className = "upload-form";
  const sourceInput = fileInput("source");
  const targetInput = fileInput("target");
  form.appendChild(labelled("Source", sourceInput));
  form.appendChild(labelled("Target", targetInput));
  const submit = document.createElement("button");
  submit.type = "submit";
  submit.textContent = "Match";
  form.appendChild(submit);
  form.addEventListener("submit", (event) => {
    event.preventDefault();
    const source = sourceInput.files?.[0];
    const target = targetInput.files?.[0];
    if (!source || !target) {
      pushToast("Choose both a Source and a Target SVG.");
      return;
    }
    void uploadPair(source, target);
  });
  root.appendChild(form);

  const tools = document.createElement("div");
  tools.className = "session-tools";

  const transferBtn = document.createElement("button");
  transferBtn.textContent = "Transfer Source Style";
  transferBtn.dataset.action = "transfer";
  transferBtn.addEventListener("click", () => void transferSourceStyle());
  tools.appendChild(transferBtn);

  const sim = document.createElement("span");
  sim.className = "sim-controls";
  const minus = document.createElement("button");
  minus.textContent = "-";
  minus.dataset.action = "tau-minus";
  minus.addEventListener("click", () => stepTau(-1));
  const tauInput = document.createElement("input");
  tauInput.type = "number";
  tauInput.className = "tau";
  tauInput.min = "0";
  tauInput.max = "1";
  tauInput.step = "0.05";
  tauInput.addEventListener("change", () => setTau(Number(tauInput.value)));
  const plus = document.createElement("button");
  plus.textContent = "+";
  plus.dataset.action = "tau-plus";
  plus.addEventListener("click", () => stepTau(1));
  const preview = document.createElement("button");
  preview.textContent = "Preview similar";
  preview.dataset.action = "preview";
  preview.addEventListener("click", () => void previewSimilar());
  const adopt = document.createElement("button");
  adopt.textContent = "Select preview";
  adopt.dataset.action = "adopt";
  adopt.addEventListener("click", () => {
    setTargetSelection(getState().previewSelection);
    setPreviewSelection([]);
  });
  sim.append(minus, tauInput, plus, preview, adopt);
  tools.appendChild(sim);

  const download = document.createElement("button");
  download.textContent = "Download Output";
  download.dataset.action = "download";
  download.addEventListener("click", () => void downloadOutput());
  tools.appendChild(download);

  const status = document.createElement("span");
  status.className = "session-status";
  tools.appendChild(status);

  root.appendChild(tools);

  function render(): void {
    const { view, tau, busy } = getState();
    tools.hidden = view === null;
    if (document.activeElement !== tauInput) tauInput.value = String(tau);
    const ready = isReady(view);
    transferBtn.disabled = !ready || busy;
    download.disabled = !ready;
    preview.disabled = !ready;
    if (view === null) status.textContent = "";
    else if (view.status === "matching") status.textContent = "matching...";
    else if (view.status === "failed") status.textContent = "failed";
    else status.textContent = busy ? "applying..." : `session ${view.sessionId}`;
  }

  subscribe(render);
  render();
}

function fileInput(name: string): HTMLInputElement {
  const input = document.createElement("input");
  input.type = "file";
  input.name = name;
  input.accept = ".svg,image/svg+xml";
  return input;
}

function labelled(text: string, control: HTMLElement): HTMLElement {
  const label = document.createElement("label");
  label.append(`${text} `);
  label.appendChild(control);
  return label;
}
