import type {
  CreateSessionResponse,
  LexiconDocument,
  StateSnapshot,
  StepResponse,
} from "./types.js";

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ServiceError extends Error {
  constructor(
    readonly status: number,
    message: string,
    readonly retryable = false,
  ) {
    super(message);
    this.name = "ServiceError";
  }
}

async function errorMessage(resp: Response): Promise<string> {
  try {
    const body = await resp.json();
    if (typeof body?.detail === "string") return body.detail;
    if (typeof body?.detail?.error === "string") return body.detail.error;
    return JSON.stringify(body);
  } catch {
    return `${resp.status} ${resp.statusText}`;
  }
}

/** Thin typed client for the session service; carries no session logic. */
export class ServiceClient {
  constructor(
    readonly baseUrl: string,
    private readonly fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const resp = await this.fetchFn(this.baseUrl + path, init);
    if (!resp.ok) {
      throw new ServiceError(resp.status, await errorMessage(resp), resp.status === 409);
    }
    return (await resp.json()) as T;
  }

  private post<T>(path: string, body: unknown): Promise<T> {
    return this.request<T>(path, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  createSession(states: string[], initial: string, selector: string): Promise<CreateSessionResponse> {
    return this.post("/sessions", { states, initial, selector });
  }

  sendText(session: string, text: string): Promise<StepResponse> {
    return this.post(`/sessions/${session}/utterances`, { text });
  }

  sendSilence(session: string): Promise<StepResponse> {
    return this.post(`/sessions/${session}/utterances`, { silence: true });
  }

  getState(session: string): Promise<StateSnapshot> {
    return this.request(`/sessions/${session}/state`);
  }

  getLexicon(session: string): Promise<LexiconDocument> {
    return this.request(`/sessions/${session}/lexicon`);
  }

  async exportLexicon(session: string): Promise<string> {
    const resp = await this.fetchFn(`${this.baseUrl}/sessions/${session}/lexicon/export`);
    if (!resp.ok) {
      throw new ServiceError(resp.status, await errorMessage(resp));
    }
    return resp.text();
  }

  deleteSession(session: string): Promise<{ deleted: boolean }> {
    return this.request(`/sessions/${session}`, { method: "DELETE" });
  }
}
