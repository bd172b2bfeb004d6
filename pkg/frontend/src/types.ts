/** Wire types of the session service. The UI renders these verbatim. */

export interface CreateSessionResponse {
  session: string;
  state: string;
  states: string[];
  iteration: number;
}

export interface WireEntry {
  t: number;
  k: number | null;
  utterance: string;
  antecedent: string;
  consequent: string;
  rule: string;
}

export interface WirePair {
  a: string;
  c: string;
}

export interface WireLexiconChange {
  utterance: string;
  old: WirePair | null;
  new: WirePair;
}

export interface StepResponse {
  session: string;
  iteration: number;
  utterance: string;
  antecedent: string;
  consequent: string;
  rule: string;
  state: string;
  entries: WireEntry[];
  lexicon_changes: WireLexiconChange[];
}

export interface LexiconEntry {
  utterance: string;
  pairs: WirePair[];
}

export interface LexiconDocument {
  version: number;
  states: string[];
  entries: LexiconEntry[];
}

export interface StateSnapshot {
  session: string;
  state: string;
  iteration: number;
  history_length: number;
}
