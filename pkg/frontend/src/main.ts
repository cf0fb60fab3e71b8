/**
 * Application shell: fixed three-column layout with the toolbar on top and
 * the customization pane on the right. The session id lives in the URL hash
 * so a reload re-fetches the same session and reproduces the same screen.
 */

import { initCanvases } from "./canvas.js";
import { initControls } from "./controls.js";
import { initPanel } from "./panel.js";
import { dismissToast, getState, pollUntilReady, pushToast, subscribe } from "./state.js";

const TOAST_LIFETIME_MS = 4000;

export function initApp(root: HTMLElement): void {
  root.innerHTML = "";
  root.className = "app";

  const header = document.createElement("header");
  const workspace = document.createElement("div");
  workspace.className = "workspace";
  const canvases = document.createElement("main");
  const panel = document.createElement("aside");
  workspace.appendChild(canvases);
  workspace.appendChild(panel);
  const toasts = document.createElement("div");
  toasts.className = "toasts";

  root.appendChild(header);
  root.appendChild(workspace);
  root.appendChild(toasts);

  initControls(header);
  initCanvases(canvases);
  initPanel(panel);
  initToasts(toasts);

  const sessionId = sessionIdFromHash();
  if (sessionId) {
    pollUntilReady(sessionId).catch((error) =>
      pushToast(`Could not restore session: ${String(error)}`),
    );
  }
}

export function sessionIdFromHash(): string | null {
  const match = /^#s=([0-9A-Za-z]+)$/.exec(window.location.hash);
  return match ? match[1]! : null;
}

function initToasts(root: HTMLElement): void {
  const scheduled = new Set<number>();

  function render(): void {
    const { toasts } = getState();
    root.innerHTML = "";
    for (const toast of toasts) {
      const item = document.createElement("div");
      item.className = "toast";
      item.textContent = toast.message;
      item.addEventListener("click", () => dismissToast(toast.id));
      root.appendChild(item);
      if (!scheduled.has(toast.id)) {
        scheduled.add(toast.id);
        setTimeout(() => {
          dismissToast(toast.id);
          scheduled.delete(toast.id);
        }, TOAST_LIFETIME_MS);
      }
    }
  }

  subscribe(render);
  render();
}

const appRoot = typeof document !== "undefined" ? document.getElementById("app") : null;
if (appRoot) initApp(appRoot);
