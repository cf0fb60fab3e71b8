/**
 * Typed fetch wrappers for the style transfer service.
 *
 * One function per endpoint; every pane action in the UI maps to exactly one
 * of these calls. Errors carry the HTTP status so callers can distinguish
 * "session not ready yet" (409) from real failures.
 */

import type { ScriptOp, SessionView } from "./types.js";

const config = { baseUrl: "" };

/** Point the client at a service origin ("" means same-origin). */
export function setBaseUrl(url: string): void {
  config.baseUrl = url.replace(/\/$/, "");
}

export class ServiceError extends Error {
  readonly status: number;
  readonly detail: unknown;

  constructor(status: number, detail: unknown) {
    super(typeof detail === "string" ? detail : JSON.stringify(detail));
    this.name = "ServiceError";
    this.status = status;
    this.detail = detail;
  }
}

async function raiseForStatus(response: Response): Promise<void> {
  if (response.ok) return;
  let detail: unknown = response.statusText;
  try {
    const body = (await response.json()) as { detail?: unknown };
    if (body && body.detail !== undefined) detail = body.detail;
  } catch {
    // Non-JSON error body; keep the status text.
  }
  throw new ServiceError(response.status, detail);
}

async function getJson<T>(path: string): Promise<T> {
  const response = await fetch(config.baseUrl + path);
  await raiseForStatus(response);
  return (await response.json()) as T;
}

async function postJson<T>(path: string, body: unknown): Promise<T> {
  const response = await fetch(config.baseUrl + path, {
    method: "POST",
    headers: { "content-type": "application/json" },
    body: JSON.stringify(body),
  });
  await raiseForStatus(response);
  return (await response.json()) as T;
}

/** Upload a source/target pair; returns the initial "matching" view. */
export async function createSession(
  source: Blob,
  target: Blob,
  options: { weights?: Record<string, number>; config?: object } = {},
): Promise<SessionView> {
  const form = new FormData();
  form.append("source", source, "source.svg");
  form.append("target", target, "target.svg");
  if (options.weights) form.append("weights", JSON.stringify(options.weights));
  if (options.config) form.append("config", JSON.stringify(options.config));
  const response = await fetch(config.baseUrl + "/sessions", {
    method: "POST",
    body: form,
  });
  await raiseForStatus(response);
  return (await response.json()) as SessionView;
}

/** Restore a saved session file together with its two documents. */
export async function openSession(
  sessionFile: Blob,
  source: Blob,
  target: Blob,
): Promise<SessionView> {
  const form = new FormData();
  form.append("session", sessionFile, "session.json");
  form.append("source", source, "source.svg");
  form.append("target", target, "target.svg");
  const response = await fetch(config.baseUrl + "/sessions/open", {
    method: "POST",
    body: form,
  });
  await raiseForStatus(response);
  return (await response.json()) as SessionView;
}

export function fetchSession(sessionId: string): Promise<SessionView> {
  return getJson(`/sessions/${sessionId}`);
}

/** Remap targets to a chosen source element and copy its style onto them. */
export function retarget(
  sessionId: string,
  targets: string[],
  source: string,
): Promise<SessionView> {
  return postJson(`/sessions/${sessionId}/retarget`, { targets, source });
}

export async function expandSelection(
  sessionId: string,
  current: string[],
): Promise<string[]> {
  const body = await postJson<{ selection: string[] }>(
    `/sessions/${sessionId}/selection/expand`,
    { current },
  );
  return body.selection;
}

export async function thresholdSelection(
  sessionId: string,
  seed: string[],
  tau: number,
): Promise<string[]> {
  const body = await postJson<{ selection: string[] }>(
    `/sessions/${sessionId}/selection/threshold`,
    { seed, tau },
  );
  return body.selection;
}

export function runScript(
  sessionId: string,
  ops: ScriptOp[],
): Promise<SessionView> {
  return postJson(`/sessions/${sessionId}/script`, { ops });
}

export async function fetchOutputSvg(sessionId: string): Promise<string> {
  const response = await fetch(
    config.baseUrl + `/sessions/${sessionId}/output.svg`,
  );
  await raiseForStatus(response);
  return response.text();
}

export async function fetchSessionFile(sessionId: string): Promise<string> {
  const response = await fetch(
    config.baseUrl + `/sessions/${sessionId}/session.json`,
  );
  await raiseForStatus(response);
  return response.text();
}

export async function matchedTargets(
  sessionId: string,
  source: string,
): Promise<string[]> {
  const body = await getJson<{ targets: string[] }>(
    `/sessions/${sessionId}/matched_targets?source=${encodeURIComponent(source)}`,
  );
  return body.targets;
}
