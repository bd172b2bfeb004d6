import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import type { FetchLike } from "../src/client.js";
import type {
  CreateSessionResponse,
  LexiconDocument,
  StepResponse,
  WireEntry,
} from "../src/types.js";

export const REPO_ROOT = join(dirname(fileURLToPath(import.meta.url)), "..", "..");

/** The 13 training inputs of the two-mode walkthrough ("" = silence). */
export const TRAINING_INPUTS = [
  "",
  "I go to grandma now",
  "",
  "I go to grandma now",
  "no!",
  "",
  "heat!",
  "I go to grandma now",
  "I go to grandma now",
  "",
  "good boy!",
  "I go to grandma now",
  "I go to grandma now",
];

export function goldenRecordLines(): string[] {
  const text = readFileSync(join(REPO_ROOT, "tests", "golden", "scenario1.records"), "utf-8");
  return text.trimEnd().split("\n").slice(1); // drop the header
}

/** Rebuild the service's step responses from the golden record stream. */
export function stepsFromGolden(): StepResponse[] {
  const steps: StepResponse[] = [];
  for (const line of goldenRecordLines()) {
    const [t, k, shown, antecedent, consequent, rule] = line.split("\t");
    const entry: WireEntry = {
      t: Number(t),
      k: k === "" ? null : Number(k),
      utterance: shown === "<silence>" ? "" : shown,
      antecedent,
      consequent,
      rule,
    };
    if (rule !== "R3") {
      steps.push({
        session: "fake",
        iteration: entry.k as number,
        utterance: entry.utterance,
        antecedent,
        consequent,
        rule,
        state: consequent,
        entries: [entry],
        lexicon_changes: [],
      });
    } else {
      const current = steps[steps.length - 1];
      current.entries.push(entry);
    }
  }
  return steps;
}

function jsonResponse(status: number, body: unknown): Response {
  const text = typeof body === "string" ? body : JSON.stringify(body);
  return {
    ok: status >= 200 && status < 300,
    status,
    statusText: String(status),
    json: async () => JSON.parse(text),
    text: async () => text,
  } as unknown as Response;
}

export interface RecordedRequest {
  method: string;
  path: string;
  body: unknown;
}

/** A scripted stand-in for the session service, one canned step at a time. */
export class FakeService {
  requests: RecordedRequest[] = [];
  stepQueue: Array<StepResponse | Error | Promise<StepResponse>> = [];
  lexicon: LexiconDocument = { version: 1, states: ["NoHeat", "Heat"], entries: [] };
  created: CreateSessionResponse = {
    session: "fake",
    state: "Heat",
    states: ["NoHeat", "Heat"],
    iteration: 0,
  };

  readonly fetch: FetchLike = async (url, init) => {
    const path = url.replace(/^https?:\/\/[^/]+/, "");
    const method = init?.method ?? "GET";
    const body = init?.body ? JSON.parse(String(init.body)) : undefined;
    this.requests.push({ method, path, body });

    if (method === "POST" && path === "/sessions") {
      return jsonResponse(201, this.created);
    }
    if (method === "POST" && path.endsWith("/utterances")) {
      const next = this.stepQueue.shift();
      if (!next) {
        return jsonResponse(500, { detail: "fake service ran out of scripted steps" });
      }
      if (next instanceof Error) {
        throw next;
      }
      return jsonResponse(200, await next);
    }
    if (method === "GET" && path.endsWith("/lexicon/export")) {
      return jsonResponse(200, JSON.stringify(this.lexicon, null, 2));
    }
    if (method === "GET" && path.endsWith("/lexicon")) {
      return jsonResponse(200, this.lexicon);
    }
    return jsonResponse(404, { detail: `no fake route for ${method} ${path}` });
  };
}

export function historyRows(root: HTMLElement): string[] {
  const rows = Array.from(root.querySelectorAll<HTMLTableRowElement>("table.history tbody tr"));
  return rows.map((row) =>
    Array.from(row.cells)
      .slice(0, 6)
      .map((cell) => cell.textContent ?? "")
      .join("\t"),
  );
}
