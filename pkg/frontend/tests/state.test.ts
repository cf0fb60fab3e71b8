import { afterEach, beforeEach, describe, expect, it } from "vitest";

import { ServiceError } from "../src/api.js";
import {
  enqueueMutation,
  getState,
  mutationsSettled,
  pushToast,
  dismissToast,
  resetState,
  setTargetSelection,
  setSourceSelection,
  setTau,
  setView,
  stepTau,
  subscribe,
  toggleTargetSelected,
} from "../src/state.js";
import type { SessionView } from "../src/types.js";
import viewText from "./fixtures/session-view.json?raw";

const readyView = JSON.parse(viewText) as SessionView;

const realFetch = globalThis.fetch;

function fakeResponse(status: number, text: string): Response {
  return {
    ok: status >= 200 && status < 300,
    status,
    statusText: String(status),
    json: async () => JSON.parse(text),
    text: async () => text,
  } as unknown as Response;
}

beforeEach(() => resetState());
afterEach(() => {
  globalThis.fetch = realFetch;
});

describe("selections", () => {
  it("prunes selection ids that no longer exist when a view arrives", () => {
    setView(readyView);
    setTargetSelection(["promoTitle", "ghost"]);
    setSourceSelection(["headline", "phantom"]);
    setView(structuredClone(readyView));
    expect([...getState().targetSelection]).toEqual(["promoTitle"]);
    expect([...getState().sourceSelection]).toEqual(["headline"]);
  });

  it("clears all selections when the view is not ready", () => {
    setView(readyView);
    setTargetSelection(["promoTitle"]);
    setView({ sessionId: "s1", status: "matching", progress: 0.5 });
    expect(getState().targetSelection.size).toBe(0);
  });

  it("toggles membership per element", () => {
    setView(readyView);
    toggleTargetSelected("promoTitle");
    toggleTargetSelected("promoDates");
    expect(getState().targetSelection).toEqual(new Set(["promoTitle", "promoDates"]));
    toggleTargetSelected("promoTitle");
    expect(getState().targetSelection).toEqual(new Set(["promoDates"]));
  });
});

describe("similarity threshold", () => {
  it("steps by 0.05 and clamps to [0, 1]", () => {
    setTau(0.8);
    stepTau(1);
    expect(getState().tau).toBeCloseTo(0.85, 10);
    setTau(0.97);
    stepTau(1);
    expect(getState().tau).toBe(1);
    setTau(0.03);
    stepTau(-1);
    expect(getState().tau).toBe(0);
    stepTau(-1);
    expect(getState().tau).toBe(0);
  });

  it("rejects values outside [0, 1] by clamping", () => {
    setTau(7);
    expect(getState().tau).toBe(1);
    setTau(-2);
    expect(getState().tau).toBe(0);
  });
});

describe("subscriptions", () => {
  it("notifies subscribers until they unsubscribe", () => {
    let calls = 0;
    const unsubscribe = subscribe(() => calls++);
    pushToast("one");
    expect(calls).toBe(1);
    unsubscribe();
    pushToast("two");
    expect(calls).toBe(1);
  });
});

describe("toasts", () => {
  it("pushes and dismisses by id", () => {
    const id = pushToast("hello");
    expect(getState().toasts.map((t) => t.message)).toContain("hello");
    dismissToast(id);
    expect(getState().toasts.find((t) => t.id === id)).toBeUndefined();
  });
});

describe("mutation queue", () => {
  it("runs mutations strictly in enqueue order", async () => {
    const order: number[] = [];
    let releaseFirst!: () => void;
    const gate = new Promise<void>((resolve) => (releaseFirst = resolve));

    void enqueueMutation(async () => {
      await gate;
      order.push(1);
      return structuredClone(readyView);
    });
    void enqueueMutation(async () => {
      order.push(2);
      return structuredClone(readyView);
    });

    expect(order).toEqual([]);
    releaseFirst();
    await mutationsSettled();
    expect(order).toEqual([1, 2]);
    expect(getState().view?.status).toBe("ready");
    expect(getState().busy).toBe(false);
  });

  it("re-polls instead of retrying when the service answers 409", async () => {
    setView(readyView);
    let polled = 0;
    globalThis.fetch = (async (input: RequestInfo | URL) => {
      expect(String(input)).toBe("/sessions/s1");
      polled++;
      return fakeResponse(200, JSON.stringify(readyView));
    }) as typeof fetch;

    let attempts = 0;
    await enqueueMutation(async () => {
      attempts++;
      throw new ServiceError(409, "session status is matching");
    });

    expect(attempts).toBe(1);
    expect(polled).toBe(1);
    expect(getState().toasts.some((t) => t.message.includes("busy"))).toBe(true);
    expect(getState().view?.status).toBe("ready");
  });

  it("surfaces other service errors as toasts and keeps the view", async () => {
    setView(readyView);
    await enqueueMutation(async () => {
      throw new ServiceError(422, "unknown element id nope");
    });
    expect(getState().view).toBe(readyView);
    expect(
      getState().toasts.some((t) => t.message.includes("unknown element id")),
    ).toBe(true);
    expect(getState().busy).toBe(false);
  });
});
