"""Save and restore lexicons (and, optionally, histories) as JSON text.

The document layout is deliberately plain so trained lexicons can be
shipped with a device and inspected by hand::

    {
      "version": 1,
      "states": ["NoHeat", "Heat"],
      "entries": [
        {"utterance": "", "pairs": [{"a": "Heat", "c": "Heat"}]}
      ]
    }

Entry order is sorted by utterance so equal lexicons serialize to
byte-identical documents; pair order inside an entry is the meaning's own
acquisition order and is preserved exactly, because it determines which
pair counts as the latest update.  Silence is encoded as the empty
utterance text.
"""

from __future__ import annotations

import json
from typing import Any

from .engine import History, Rule
from .semantics import (
    AcPair,
    ActionSpace,
    Lexicon,
    Meaning,
    MeaningError,
    UnknownStateError,
    normalize_utterance,
)

FORMAT_VERSION = 1


class LexiconFormatError(ValueError):
    """A document that cannot be decoded into a valid lexicon or history."""


def lexicon_to_document(lexicon: Lexicon, space: ActionSpace) -> dict[str, Any]:
    """The JSON-compatible document for a lexicon, with deterministic order."""
    entries = []
    for utterance in sorted(lexicon):
        pairs = [{"a": p.antecedent, "c": p.consequent} for p in lexicon[utterance]]
        entries.append({"utterance": utterance, "pairs": pairs})
    return {"version": FORMAT_VERSION, "states": list(space.states), "entries": entries}


def export_lexicon(lexicon: Lexicon, space: ActionSpace) -> str:
    return json.dumps(lexicon_to_document(lexicon, space), indent=2, ensure_ascii=False) + "\n"


def _decode_states(doc: dict[str, Any]) -> ActionSpace:
    states = doc.get("states")
    if not isinstance(states, list) or not all(isinstance(s, str) for s in states):
        raise LexiconFormatError("field 'states' must be a list of state labels")
    try:
        return ActionSpace(states)
    except ValueError as exc:
        raise LexiconFormatError(f"bad state list: {exc}") from exc


def _check_version(doc: Any) -> dict[str, Any]:
    if not isinstance(doc, dict):
        raise LexiconFormatError("document must be a JSON object")
    version = doc.get("version")
    if version != FORMAT_VERSION:
        raise LexiconFormatError(f"unsupported format version {version!r}, expected {FORMAT_VERSION}")
    return doc


def _load(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise LexiconFormatError(f"not valid JSON: {exc}") from exc


def document_to_lexicon(doc: Any) -> tuple[Lexicon, ActionSpace]:
    """Decode and fully re-validate a lexicon document."""
    doc = _check_version(doc)
    space = _decode_states(doc)
    entries = doc.get("entries")
    if not isinstance(entries, list):
        raise LexiconFormatError("field 'entries' must be a list")

    lexicon = Lexicon()
    for entry in entries:
        if not isinstance(entry, dict) or not isinstance(entry.get("utterance"), str):
            raise LexiconFormatError(f"malformed entry: {entry!r}")
        try:
            utterance = normalize_utterance(entry["utterance"])
        except ValueError as exc:
            raise LexiconFormatError(str(exc)) from exc
        if utterance in lexicon:
            raise LexiconFormatError(f"duplicate entry for utterance {utterance!r}")
        raw_pairs = entry.get("pairs")
        if not isinstance(raw_pairs, list):
            raise LexiconFormatError(f"entry for {utterance!r} needs a 'pairs' list")
        pairs = []
        for rp in raw_pairs:
            if not isinstance(rp, dict) or "a" not in rp or "c" not in rp:
                raise LexiconFormatError(f"malformed pair {rp!r} in entry for {utterance!r}")
            try:
                pairs.append(AcPair(space.require(rp["a"]), space.require(rp["c"])))
            except UnknownStateError as exc:
                raise LexiconFormatError(f"entry for {utterance!r}: {exc}") from exc
        try:
            meaning = Meaning(pairs)
        except MeaningError as exc:
            raise LexiconFormatError(f"entry for {utterance!r} is not a partial function: {exc}") from exc
        lexicon = lexicon.upsert(utterance, meaning)
    return lexicon, space


def import_lexicon(text: str) -> tuple[Lexicon, ActionSpace]:
    """Inverse of :func:`export_lexicon` on valid documents."""
    return document_to_lexicon(_load(text))


def history_to_document(history: History, space: ActionSpace) -> dict[str, Any]:
    entries = [
        {
            "t": e.t,
            "utterance": e.utterance,
            "antecedent": e.pair.antecedent,
            "consequent": e.pair.consequent,
            "rule": e.rule.value,
        }
        for e in history
    ]
    return {"version": FORMAT_VERSION, "states": list(space.states), "entries": entries}


def export_history(history: History, space: ActionSpace) -> str:
    """Optional companion document: the full training history of a session."""
    return json.dumps(history_to_document(history, space), indent=2, ensure_ascii=False) + "\n"


def import_history(text: str) -> tuple[History, ActionSpace]:
    doc = _check_version(_load(text))
    space = _decode_states(doc)
    entries = doc.get("entries")
    if not isinstance(entries, list):
        raise LexiconFormatError("field 'entries' must be a list")

    history = History()
    for i, entry in enumerate(entries):
        if not isinstance(entry, dict):
            raise LexiconFormatError(f"malformed history entry: {entry!r}")
        try:
            utterance = normalize_utterance(entry["utterance"])
            pair = AcPair(space.require(entry["antecedent"]), space.require(entry["consequent"]))
            rule = Rule.from_label(entry["rule"])
            if entry["t"] != i:
                raise ValueError(f"time stamps must run 0..{len(entries) - 1}, got {entry['t']} at position {i}")
            history.append(utterance, pair, rule)
        except (KeyError, ValueError) as exc:
            raise LexiconFormatError(f"history entry {i}: {exc}") from exc
    return history, space
