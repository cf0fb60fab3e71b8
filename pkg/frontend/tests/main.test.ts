import { beforeEach, describe, expect, it, vi } from "vitest";

import { initApp, sessionIdFromHash } from "../src/main.js";
import { getState, pushToast, resetState } from "../src/state.js";

beforeEach(() => {
  resetState();
  document.body.innerHTML = "";
  window.location.hash = "";
});

describe("session id in the url", () => {
  it("parses #s=<id> and rejects other fragments", () => {
    window.location.hash = "#s=0f3a9b";
    expect(sessionIdFromHash()).toBe("0f3a9b");
    window.location.hash = "#other";
    expect(sessionIdFromHash()).toBeNull();
    window.location.hash = "";
    expect(sessionIdFromHash()).toBeNull();
  });
});

describe("layout", () => {
  it("builds toolbar, three canvases, pane, and toast area", () => {
    const root = document.createElement("div");
    document.body.appendChild(root);
    initApp(root);
    expect(root.querySelector("header.controls")).not.toBeNull();
    expect(root.querySelectorAll("main .canvas-col").length).toBe(3);
    expect(root.querySelector("aside.panel")).not.toBeNull();
    expect(root.querySelector(".toasts")).not.toBeNull();
  });
});

describe("toasts", () => {
  it("renders each toast and auto-dismisses it after a few seconds", () => {
    vi.useFakeTimers();
    try {
      const root = document.createElement("div");
      document.body.appendChild(root);
      initApp(root);
      pushToast("heads up");
      expect(root.querySelectorAll(".toast").length).toBe(1);
      expect(root.querySelector(".toast")!.textContent).toBe("heads up");
      vi.advanceTimersByTime(4100);
      expect(getState().toasts.length).toBe(0);
      expect(root.querySelectorAll(".toast").length).toBe(0);
    } finally {
      vi.useRealTimers();
    }
  });

  it("dismisses a toast on click", () => {
    const root = document.createElement("div");
    document.body.appendChild(root);
    initApp(root);
    pushToast("tap me");
    (root.querySelector(".toast") as HTMLElement).click();
    expect(getState().toasts.length).toBe(0);
  });
});
