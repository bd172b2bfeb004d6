"""Step-by-step training engine: rule dispatch, history, and revision.

One session holds the device's action space, its growing lexicon, an
append-only history of everything learned, applied or revised, and the
current operation mode.  Each call to :meth:`Session.step` consumes one
utterance and fires exactly one of six rules:

============  =========================================================
``R1a``       unknown silence: consent, stay, learn ``(a, a)``
``R1b``       unknown utterance: dissent, move to a selected state,
              learn ``(a, c)``
``R2a``       known utterance whose meaning covers the current state:
              apply the stored transition, lexicon unchanged
``R2bi``      known silence, current state uncovered: consent, extend
              the meaning by ``(a, a)``
``R2bii``     known utterance, current state uncovered: dissent, extend
              the meaning by ``(a, c)``
``R3``        revision entry: a consequent rewritten in the wake of an
              unaccepted transition (appended by the engine, never fired
              directly by an utterance)
============  =========================================================

Whenever a step ends in a state other than the one it started from, the
transition was not accepted and the revision procedure rewrites every
meaning touched since the most recently accepted state so that those
antecedents map to the currently desired consequent.
"""

from __future__ import annotations

import enum
from bisect import bisect_right
from collections.abc import Iterator
from dataclasses import dataclass
from typing import NamedTuple

from .semantics import (
    SILENCE,
    AcPair,
    ActionSpace,
    Lexicon,
    Meaning,
    normalize_utterance,
)


class Rule(enum.Enum):
    """Label of the engine rule that produced a history entry."""

    R1A = "R1a"
    R1B = "R1b"
    R2A = "R2a"
    R2BI = "R2bi"
    R2BII = "R2bii"
    R3 = "R3"

    def __str__(self) -> str:
        return self.value

    @classmethod
    def from_label(cls, label: str) -> "Rule":
        for rule in cls:
            if rule.value == label:
                return rule
        raise ValueError(f"unknown rule label {label!r}")


#: Rules whose entry pair is a fixed point by construction (consent).
_CONSENT_RULES = frozenset({Rule.R1A, Rule.R2BI})
#: Rules whose entry pair is never a fixed point (dissent).
_DISSENT_RULES = frozenset({Rule.R1B, Rule.R2BII})


@dataclass(frozen=True, slots=True)
class HistoryEntry:
    """One learned, applied or revised pair, stamped with its time index."""

    t: int
    utterance: str
    pair: AcPair
    rule: Rule

    def __post_init__(self) -> None:
        if self.t < 0:
            raise ValueError("time stamps start at 0")
        if self.rule in _CONSENT_RULES and not self.pair.is_fixed_point:
            raise ValueError(f"{self.rule} entries must be fixed-point pairs: {self.pair}")
        if self.rule in _DISSENT_RULES and self.pair.is_fixed_point:
            raise ValueError(f"{self.rule} entries must not be fixed-point pairs: {self.pair}")


class History:
    """Append-only log of history entries; position equals time stamp."""

    __slots__ = ("_entries", "_accepted")

    def __init__(self) -> None:
        self._entries: list[HistoryEntry] = []
        # positions of accepted entries (non-revision fixed points), for mras
        self._accepted: list[int] = []

    def __len__(self) -> int:
        return len(self._entries)

    def __iter__(self) -> Iterator[HistoryEntry]:
        return iter(self._entries)

    def __getitem__(self, t: int) -> HistoryEntry:
        return self._entries[t]

    def snapshot(self) -> tuple[HistoryEntry, ...]:
        return tuple(self._entries)

    def append(self, utterance: str, pair: AcPair, rule: Rule) -> HistoryEntry:
        entry = HistoryEntry(t=len(self._entries), utterance=utterance, pair=pair, rule=rule)
        self._entries.append(entry)
        if rule is not Rule.R3 and pair.is_fixed_point:
            self._accepted.append(entry.t)
        return entry

    def mras(self, t0: int) -> int | None:
        """Time of the most recently accepted state at or before ``t0``.

        An accepted entry is a non-revision entry whose pair is a fixed
        point.  Returns None when no state has been accepted yet, in which
        case the revision range reaches back to the very first entry.
        """
        if t0 > len(self._entries):
            raise IndexError(f"t0={t0} is beyond the history (length {len(self._entries)})")
        i = bisect_right(self._accepted, min(t0, len(self._entries) - 1))
        return self._accepted[i - 1] if i else None

    def last_update(self, utterance: str, before: int) -> AcPair | None:
        """The pair of the most recent entry for ``utterance`` at time <= ``before``."""
        for t in range(min(before, len(self._entries) - 1), -1, -1):
            if self._entries[t].utterance == utterance:
                return self._entries[t].pair
        return None


class LexiconChange(NamedTuple):
    """One lexicon effect of a step: a pair learned or rewritten."""

    utterance: str
    old: AcPair | None
    new: AcPair


@dataclass(frozen=True, slots=True)
class StepReport:
    """Everything observable about one engine step.

    ``appended`` lists the history entries the step produced, in append
    order: first the entry for the fired rule, then any revision entries.
    """

    iteration: int
    utterance: str
    antecedent: str
    consequent: str
    fired_rule: Rule
    appended: tuple[HistoryEntry, ...]
    lexicon_changes: tuple[LexiconChange, ...]

    def __post_init__(self) -> None:
        if not self.appended:
            raise ValueError("a step always appends at least one history entry")
        if self.appended[0].rule is Rule.R3:
            raise ValueError("the first appended entry carries the fired rule, never R3")
        if any(e.rule is not Rule.R3 for e in self.appended[1:]):
            raise ValueError("all entries after the first must be revision entries")


class Session:
    """A training session: strictly sequential steps over one lexicon.

    Sessions are independent of each other; a single session must not be
    stepped concurrently.
    """

    def __init__(self, space: ActionSpace, initial: str, selector) -> None:
        self.space = space
        self.initial = space.require(initial)
        self.selector = selector
        self.lexicon = Lexicon()
        self.history = History()
        self.current = self.initial
        self.iteration = 0

    def step(self, utterance: str) -> StepReport:
        """Process one utterance and return the full outcome.

        Dispatch: an unknown utterance is learned from scratch (silence
        consents and keeps the state, anything else moves it); a known
        utterance is applied if its meaning covers the current state and
        extended otherwise.  If the step leaves the state, the revision
        procedure runs afterwards.
        """
        u = normalize_utterance(utterance)
        a = self.current
        changes: list[LexiconChange] = []

        known = self.lexicon.get(u)
        if known is None:
            if u == SILENCE:
                c, rule = a, Rule.R1A
            else:
                c, rule = self.selector.choose(a), Rule.R1B
            pair = AcPair(a, c)
            self.lexicon = self.lexicon.upsert(u, Meaning((pair,)))
            changes.append(LexiconChange(u, None, pair))
        else:
            applied = known.apply(a)
            if applied is not None:
                c, rule = applied, Rule.R2A
                pair = AcPair(a, c)
            else:
                if u == SILENCE:
                    c, rule = a, Rule.R2BI
                else:
                    c, rule = self.selector.choose(a), Rule.R2BII
                pair = AcPair(a, c)
                self.lexicon = self.lexicon.upsert(u, known.extend(pair))
                changes.append(LexiconChange(u, None, pair))

        trigger = self.history.append(u, pair, rule)
        appended = [trigger]
        if c != a:
            appended.extend(self.revise(trigger.t, c, changes))

        self.current = c
        report = StepReport(
            iteration=self.iteration,
            utterance=u,
            antecedent=a,
            consequent=c,
            fired_rule=rule,
            appended=tuple(appended),
            lexicon_changes=tuple(changes),
        )
        self.iteration += 1
        return report

    def revise(
        self,
        tau: int,
        c_k: str,
        changes: list[LexiconChange] | None = None,
    ) -> list[HistoryEntry]:
        """Rewrite every meaning touched since the last accepted state.

        ``tau`` is the time of the triggering entry (an unaccepted
        transition) and ``c_k`` its consequent, taken to be the state the
        user actually wants.  All history entries after the most recently
        accepted state, up to and including ``tau``, are grouped by
        (utterance, antecedent); each group's antecedent is remapped to
        ``c_k`` unless it already points there.  Groups are processed in
        order of their latest occurrence, which also fixes the order of
        the appended revision entries.
        """
        trigger = self.history[tau]
        if trigger.pair.is_fixed_point:
            raise ValueError(f"entry {tau} is an accepted transition, nothing to revise")

        start = self.history.mras(tau)
        latest: dict[tuple[str, str], int] = {}
        for p in range(0 if start is None else start + 1, tau + 1):
            entry = self.history[p]
            latest[(entry.utterance, entry.pair.antecedent)] = p

        appended: list[HistoryEntry] = []
        for (utterance, antecedent), _q in sorted(latest.items(), key=lambda kv: kv[1]):
            meaning = self.lexicon.get(utterance)
            assert meaning is not None, f"history names {utterance!r} but the lexicon lost it"
            c_p = meaning.apply(antecedent)
            assert c_p is not None, f"{utterance!r} lost antecedent {antecedent!r}"
            if c_p == c_k:
                continue
            self.lexicon = self.lexicon.upsert(utterance, meaning.revise(antecedent, c_k))
            entry = self.history.append(utterance, AcPair(antecedent, c_k), Rule.R3)
            appended.append(entry)
            if changes is not None:
                changes.append(
                    LexiconChange(utterance, AcPair(antecedent, c_p), AcPair(antecedent, c_k))
                )
        return appended
