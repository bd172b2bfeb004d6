"""HTTP session service for interactive training.

Each session wraps one engine session behind an opaque handle.  Steps on a
session are serialized: if a step is already in flight, a concurrent step
request is rejected with 409 and may simply be retried.  Read endpoints
take the same per-session lock, so they only ever observe step boundaries.

Endpoints
---------
- ``POST   /sessions``                    create a session
- ``GET    /sessions/{sid}/state``        current state snapshot
- ``POST   /sessions/{sid}/utterances``   one training step
- ``GET    /sessions/{sid}/history``      full history, record fields
- ``GET    /sessions/{sid}/lexicon``      lexicon document (JSON object)
- ``GET    /sessions/{sid}/lexicon/export``  lexicon document as plain text
- ``POST   /sessions/{sid}/lexicon``      import a lexicon document
- ``DELETE /sessions/{sid}``              drop the session
- ``GET    /sessions/{sid}/events``       server-sent events mirroring each step

Silence over the wire is always an explicit ``"silence": true`` field; an
empty or missing text is rejected so a lost request body can never be
mistaken for consent.
"""

from __future__ import annotations

import json
import queue
import threading
import uuid
from typing import Any

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import PlainTextResponse, StreamingResponse
from pydantic import BaseModel

from .engine import HistoryEntry, Session, StepReport
from .persistence import LexiconFormatError, document_to_lexicon, export_lexicon, lexicon_to_document
from .scenario import iteration_numbers
from .selectors import SelectorError, SelectorSpec
from .semantics import SILENCE, ActionSpace, normalize_utterance


class CreateSessionRequest(BaseModel):
    states: list[str]
    initial: str
    selector: str = "cyclic"
    lexicon: dict[str, Any] | None = None


class UtteranceRequest(BaseModel):
    text: str | None = None
    silence: bool = False


class _Slot:
    """One live session plus its step lock and event subscribers."""

    def __init__(self, session: Session, config: dict[str, Any]) -> None:
        self.session = session
        self.config = config
        self.lock = threading.Lock()
        self.subscribers: list[queue.Queue] = []

    def publish(self, payload: dict[str, Any] | None) -> None:
        for q in list(self.subscribers):
            q.put(payload)


class SessionStore:
    """In-memory session registry; handles are unique per service instance."""

    def __init__(self) -> None:
        self._slots: dict[str, _Slot] = {}
        self._lock = threading.Lock()

    def create(self, session: Session, config: dict[str, Any]) -> str:
        sid = uuid.uuid4().hex
        with self._lock:
            self._slots[sid] = _Slot(session, config)
        return sid

    def get(self, sid: str) -> _Slot:
        with self._lock:
            slot = self._slots.get(sid)
        if slot is None:
            raise HTTPException(status_code=404, detail=f"unknown session {sid!r}")
        return slot

    def delete(self, sid: str) -> None:
        with self._lock:
            slot = self._slots.pop(sid, None)
        if slot is None:
            raise HTTPException(status_code=404, detail=f"unknown session {sid!r}")
        with slot.lock:
            slot.publish(None)


def _entry_wire(entry: HistoryEntry, k: int | None) -> dict[str, Any]:
    return {
        "t": entry.t,
        "k": k,
        "utterance": entry.utterance,
        "antecedent": entry.pair.antecedent,
        "consequent": entry.pair.consequent,
        "rule": entry.rule.value,
    }


def _report_wire(sid: str, report: StepReport, state: str) -> dict[str, Any]:
    entries = [
        _entry_wire(e, report.iteration if i == 0 else None)
        for i, e in enumerate(report.appended)
    ]
    changes = [
        {
            "utterance": ch.utterance,
            "old": None if ch.old is None else {"a": ch.old.antecedent, "c": ch.old.consequent},
            "new": {"a": ch.new.antecedent, "c": ch.new.consequent},
        }
        for ch in report.lexicon_changes
    ]
    return {
        "session": sid,
        "iteration": report.iteration,
        "utterance": report.utterance,
        "antecedent": report.antecedent,
        "consequent": report.consequent,
        "rule": report.fired_rule.value,
        "state": state,
        "entries": entries,
        "lexicon_changes": changes,
    }


def create_app(store: SessionStore | None = None) -> FastAPI:
    app = FastAPI(title="umplex session service")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    sessions = store if store is not None else SessionStore()
    app.state.sessions = sessions

    @app.post("/sessions", status_code=201)
    def create_session(req: CreateSessionRequest) -> dict[str, Any]:
        try:
            space = ActionSpace(req.states)
            selector = SelectorSpec.parse(req.selector)
            for s in selector.script:
                space.require(s)
            session = Session(space, req.initial, selector.build(space))
            if req.lexicon is not None:
                lexicon, lex_space = document_to_lexicon(req.lexicon)
                if lex_space.states != space.states:
                    raise ValueError(
                        f"lexicon states {list(lex_space.states)} do not match session states {list(space.states)}"
                    )
                session.lexicon = lexicon
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        config = {"states": list(space.states), "initial": req.initial, "selector": selector.render()}
        sid = sessions.create(session, config)
        return {"session": sid, "state": session.current, "states": list(space.states), "iteration": 0}

    @app.get("/sessions/{sid}/state")
    def get_state(sid: str) -> dict[str, Any]:
        slot = sessions.get(sid)
        with slot.lock:
            return {
                "session": sid,
                "state": slot.session.current,
                "iteration": slot.session.iteration,
                "history_length": len(slot.session.history),
            }

    @app.post("/sessions/{sid}/utterances")
    def post_utterance(sid: str, req: UtteranceRequest) -> dict[str, Any]:
        slot = sessions.get(sid)
        if req.silence:
            if req.text:
                raise HTTPException(status_code=400, detail="a silence request must not carry text")
            utterance = SILENCE
        else:
            if req.text is None:
                raise HTTPException(status_code=400, detail="provide 'text' or set 'silence': true")
            try:
                utterance = normalize_utterance(req.text)
            except ValueError as exc:
                raise HTTPException(status_code=400, detail=str(exc)) from exc
            if utterance == SILENCE:
                raise HTTPException(
                    status_code=400,
                    detail="empty text is not accepted; set 'silence': true to consent explicitly",
                )
        if not slot.lock.acquire(blocking=False):
            raise HTTPException(
                status_code=409,
                detail={"error": "a step is already in flight for this session", "retry": True},
            )
        try:
            try:
                report = slot.session.step(utterance)
            except SelectorError as exc:
                raise HTTPException(status_code=400, detail=str(exc)) from exc
            payload = _report_wire(sid, report, slot.session.current)
            # publish before releasing so mirrored events keep step order
            slot.publish(payload)
        finally:
            slot.lock.release()
        return payload

    @app.get("/sessions/{sid}/history")
    def get_history(sid: str) -> dict[str, Any]:
        slot = sessions.get(sid)
        with slot.lock:
            entries = slot.session.history.snapshot()
        ks = iteration_numbers(entries)
        return {"session": sid, "entries": [_entry_wire(e, k) for e, k in zip(entries, ks)]}

    @app.get("/sessions/{sid}/lexicon")
    def get_lexicon(sid: str) -> dict[str, Any]:
        slot = sessions.get(sid)
        with slot.lock:
            return lexicon_to_document(slot.session.lexicon, slot.session.space)

    @app.get("/sessions/{sid}/lexicon/export", response_class=PlainTextResponse)
    def export_session_lexicon(sid: str) -> str:
        slot = sessions.get(sid)
        with slot.lock:
            return export_lexicon(slot.session.lexicon, slot.session.space)

    @app.post("/sessions/{sid}/lexicon")
    def import_session_lexicon(sid: str, document: dict[str, Any]) -> dict[str, Any]:
        slot = sessions.get(sid)
        try:
            lexicon, lex_space = document_to_lexicon(document)
        except LexiconFormatError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        with slot.lock:
            if lex_space.states != slot.session.space.states:
                raise HTTPException(
                    status_code=400,
                    detail=(
                        f"lexicon states {list(lex_space.states)} do not match "
                        f"session states {list(slot.session.space.states)}"
                    ),
                )
            slot.session.lexicon = lexicon
            return {"session": sid, "entries": len(lexicon)}

    @app.delete("/sessions/{sid}")
    def delete_session(sid: str) -> dict[str, Any]:
        sessions.delete(sid)
        return {"session": sid, "deleted": True}

    @app.get("/sessions/{sid}/events")
    def events(sid: str) -> StreamingResponse:
        slot = sessions.get(sid)

        def stream():
            q: queue.Queue = queue.Queue()
            slot.subscribers.append(q)
            try:
                yield ": connected\n\n"
                while True:
                    try:
                        item = q.get(timeout=15.0)
                    except queue.Empty:
                        yield ": keep-alive\n\n"
                        continue
                    if item is None:
                        return
                    yield f"data: {json.dumps(item, ensure_ascii=False)}\n\n"
            finally:
                if q in slot.subscribers:
                    slot.subscribers.remove(q)

        return StreamingResponse(stream(), media_type="text/event-stream")

    return app
