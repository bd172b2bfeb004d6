import { ServiceClient } from "./client.js";
import type { StepResponse, WireEntry } from "./types.js";

const SILENCE_TOKEN = "<silence>";

export type ClientFactory = (baseUrl: string) => ServiceClient;

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className = "",
  text = "",
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text) node.textContent = text;
  return node;
}

function showUtterance(utterance: string): string {
  return utterance === "" ? SILENCE_TOKEN : utterance;
}

/**
 * Mounts the trainer console.
 *
 * The console holds no rule logic at all: every state, transition, rule
 * label and revision it shows is copied verbatim out of service
 * responses.  Its one piece of knowledge is that silence is sacred, so
 * consent is a dedicated button and never an empty text submit.
 */
export function mountTrainer(root: HTMLElement, makeClient: ClientFactory): void {
  root.innerHTML = "";

  // --- session form ---------------------------------------------------
  const setup = el("section", "setup");
  const form = el("form", "session-form");
  const urlInput = el("input", "service-url");
  urlInput.value = "http://127.0.0.1:8000";
  const statesInput = el("input", "states-input");
  statesInput.placeholder = "NoHeat, Semi, Heat";
  const initialInput = el("input", "initial-input");
  initialInput.placeholder = "Heat";
  const selectorInput = el("input", "selector-input");
  selectorInput.value = "cyclic";
  const startButton = el("button", "start", "Start session");
  startButton.type = "submit";
  const formError = el("div", "form-error");
  formError.hidden = true;

  for (const [label, input] of [
    ["Service", urlInput],
    ["States", statesInput],
    ["Initial", initialInput],
    ["Selector", selectorInput],
  ] as const) {
    const row = el("label", "form-row", label + " ");
    row.appendChild(input);
    form.appendChild(row);
  }
  form.appendChild(startButton);
  form.appendChild(formError);
  setup.appendChild(el("h2", "", "New training session"));
  setup.appendChild(form);

  // --- live session view ----------------------------------------------
  const live = el("section", "live");
  live.hidden = true;

  const spaceLine = el("div", "space-line");
  const stateIndicator = el("div", "state-indicator");
  const utteranceInput = el("input", "utterance-input");
  utteranceInput.placeholder = "say something...";
  const sendButton = el("button", "send", "Send");
  const silenceButton = el("button", "silence", "Silence");
  const exportButton = el("button", "export", "Export lexicon");

  const errorBanner = el("div", "error-banner");
  errorBanner.hidden = true;
  const errorText = el("span", "error-text");
  const retryButton = el("button", "retry", "Retry");
  errorBanner.appendChild(errorText);
  errorBanner.appendChild(retryButton);

  const historyTable = el("table", "history");
  const historyHead = el("thead");
  const headRow = el("tr");
  for (const column of ["t", "k", "utterance", "antecedent", "consequent", "rule", ""]) {
    headRow.appendChild(el("th", "", column));
  }
  historyHead.appendChild(headRow);
  const historyBody = el("tbody");
  historyTable.appendChild(historyHead);
  historyTable.appendChild(historyBody);

  const lexiconTable = el("table", "lexicon");
  const lexiconBody = el("tbody");
  lexiconTable.appendChild(lexiconBody);

  const controls = el("div", "controls");
  for (const node of [utteranceInput, sendButton, silenceButton, exportButton]) {
    controls.appendChild(node);
  }
  live.appendChild(stateIndicator);
  live.appendChild(spaceLine);
  live.appendChild(controls);
  live.appendChild(errorBanner);
  live.appendChild(el("h3", "", "History"));
  live.appendChild(historyTable);
  live.appendChild(el("h3", "", "Lexicon"));
  live.appendChild(lexiconTable);

  root.appendChild(setup);
  root.appendChild(live);

  // --- behaviour --------------------------------------------------------
  let client: ServiceClient | null = null;
  let sessionId = "";
  let retryAction: (() => void) | null = null;

  function setBusy(busy: boolean): void {
    utteranceInput.disabled = busy;
    sendButton.disabled = busy;
    silenceButton.disabled = busy;
    exportButton.disabled = busy;
  }

  function showError(message: string, retry: (() => void) | null): void {
    errorText.textContent = message;
    retryAction = retry;
    retryButton.hidden = retry === null;
    errorBanner.hidden = false;
  }

  function clearError(): void {
    errorBanner.hidden = true;
    retryAction = null;
  }

  function appendEntries(entries: WireEntry[]): void {
    for (const entry of entries) {
      const row = el("tr", entry.rule === "R3" ? "revised" : "");
      row.appendChild(el("td", "", String(entry.t)));
      row.appendChild(el("td", "", entry.k === null ? "" : String(entry.k)));
      row.appendChild(el("td", "", showUtterance(entry.utterance)));
      row.appendChild(el("td", "", entry.antecedent));
      row.appendChild(el("td", "", entry.consequent));
      row.appendChild(el("td", "", entry.rule));
      const badgeCell = el("td");
      if (entry.rule === "R3") {
        badgeCell.appendChild(el("span", "badge", "revised"));
      }
      row.appendChild(badgeCell);
      historyBody.appendChild(row);
    }
  }

  async function refreshLexicon(): Promise<void> {
    if (!client) return;
    const document_ = await client.getLexicon(sessionId);
    lexiconBody.innerHTML = "";
    for (const entry of document_.entries) {
      const row = el("tr");
      row.appendChild(el("td", "", showUtterance(entry.utterance)));
      row.appendChild(el("td", "", entry.pairs.map((p) => `${p.a} -> ${p.c}`).join(", ")));
      lexiconBody.appendChild(row);
    }
  }

  async function runStep(post: () => Promise<StepResponse>, retry: () => void): Promise<void> {
    if (!client || sendButton.disabled) return;
    clearError();
    setBusy(true);
    try {
      const step = await post();
      appendEntries(step.entries);
      stateIndicator.textContent = step.state;
      await refreshLexicon();
    } catch (err) {
      showError(err instanceof Error ? err.message : String(err), retry);
    } finally {
      setBusy(false);
    }
  }

  function sendUtterance(): void {
    const text = utteranceInput.value;
    if (text.trim() === "") {
      showError("empty text is not sent; use the Silence button to consent", null);
      return;
    }
    const action = () => {
      void runStep(() => client!.sendText(sessionId, text), action);
    };
    utteranceInput.value = "";
    action();
  }

  function sendSilence(): void {
    const action = () => {
      void runStep(() => client!.sendSilence(sessionId), action);
    };
    action();
  }

  async function exportLexicon(): Promise<void> {
    if (!client) return;
    try {
      const text = await client.exportLexicon(sessionId);
      const url = URL.createObjectURL(new Blob([text], { type: "application/json" }));
      const anchor = el("a");
      anchor.href = url;
      anchor.download = "lexicon.json";
      root.appendChild(anchor);
      anchor.click();
      anchor.remove();
      URL.revokeObjectURL(url);
    } catch (err) {
      showError(err instanceof Error ? err.message : String(err), null);
    }
  }

  async function startSession(): Promise<void> {
    formError.hidden = true;
    const labels = statesInput.value
      .split(",")
      .map((s) => s.trim())
      .filter((s) => s !== "");
    const failForm = (message: string) => {
      formError.textContent = message;
      formError.hidden = false;
    };
    if (labels.length < 2) {
      failForm("need at least 2 state labels");
      return;
    }
    const seen = new Set<string>();
    for (const label of labels) {
      if (seen.has(label)) {
        failForm(`duplicate state label: ${label}`);
        return;
      }
      seen.add(label);
    }
    const initial = initialInput.value.trim();
    if (!labels.includes(initial)) {
      failForm(`initial state ${initial || "(empty)"} is not among the labels`);
      return;
    }
    try {
      client = makeClient(urlInput.value.trim().replace(/\/$/, ""));
      const created = await client.createSession(labels, initial, selectorInput.value.trim());
      sessionId = created.session;
      stateIndicator.textContent = created.state;
      spaceLine.textContent = `modes: ${created.states.join(" | ")}`;
      historyBody.innerHTML = "";
      live.hidden = false;
      clearError();
      await refreshLexicon();
    } catch (err) {
      failForm(err instanceof Error ? err.message : String(err));
    }
  }

  form.addEventListener("submit", (event) => {
    event.preventDefault();
    void startSession();
  });
  sendButton.addEventListener("click", (event) => {
    event.preventDefault();
    sendUtterance();
  });
  utteranceInput.addEventListener("keydown", (event) => {
    if (event.key === "Enter") {
      event.preventDefault();
      sendUtterance();
    }
  });
  silenceButton.addEventListener("click", (event) => {
    event.preventDefault();
    sendSilence();
  });
  exportButton.addEventListener("click", (event) => {
    event.preventDefault();
    void exportLexicon();
  });
  retryButton.addEventListener("click", (event) => {
    event.preventDefault();
    const action = retryAction;
    clearError();
    action?.();
  });
}
