/**
 * Shapes of the service's JSON responses.
 *
 * These mirror the session view emitted by the HTTP API verbatim; the client
 * never derives style values itself, it only displays what the service sends.
 */

export interface BBox {
  x: number;
  y: number;
  width: number;
  height: number;
}

export interface ElementView {
  id: string;
  kind: string;
  bbox: BBox;
  /** Formatted display strings per applicable attribute; "unset" when absent. */
  style: Record<string, string>;
  /** Canonical SVG markup for this one element, ready to inject. */
  markup: string;
}

export interface DocumentView {
  viewBox: BBox;
  elements: ElementView[];
}

export interface ScriptEntry {
  target: string;
  attribute: string;
  state: "copied" | "original" | "custom";
  value?: string;
}

export interface AttributeGroup {
  attribute: string;
  value: string;
  elementIds: string[];
  stateSummary: string;
}

export interface WarningView {
  locator: string;
  code: string;
}

export type SessionStatus = "matching" | "ready" | "failed";

export interface SessionView {
  sessionId: string;
  status: SessionStatus;
  progress: number;
  error?: string;
  source?: DocumentView;
  target?: DocumentView;
  output?: DocumentView;
  match?: Record<string, string>;
  baseMatch?: Record<string, string>;
  overrides?: [string, string][];
  scores?: Record<string, Record<string, number>>;
  script?: ScriptEntry[];
  groups?: AttributeGroup[];
  warnings?: WarningView[];
}

/** A session view whose matching has finished; all panes can render. */
export interface ReadySessionView extends SessionView {
  status: "ready";
  source: DocumentView;
  target: DocumentView;
  output: DocumentView;
  match: Record<string, string>;
  baseMatch: Record<string, string>;
  overrides: [string, string][];
  scores: Record<string, Record<string, number>>;
  script: ScriptEntry[];
  groups: AttributeGroup[];
  warnings: WarningView[];
}

export function isReady(view: SessionView | null): view is ReadySessionView {
  // A create response can say "ready" before the full view was fetched, so
  // renderability requires the document payload, not just the status.
  return view !== null && view.status === "ready" && view.source !== undefined;
}

export type ScriptOp =
  | { op: "copy_all" }
  | { op: "copy_none" }
  | {
      op: "set_state";
      state: "copied" | "original";
      attribute: string;
      targets: string[];
    }
  | {
      op: "set_state";
      state: "custom";
      attribute: string;
      targets: string[];
      value: string;
    };

export type Pane = "source" | "target" | "output";
