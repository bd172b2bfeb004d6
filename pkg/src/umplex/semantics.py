"""Core value types: action spaces, utterances, meanings, and lexicons.

A device's entire semantic universe is a finite, ordered set of operation
modes (the action space).  The meaning of an utterance is a partial function
over that space, stored as an ordered list of antecedent-consequent pairs.
A lexicon maps each known utterance to exactly one meaning.

All types in this module are immutable values; update operations return new
objects and never mutate their inputs.
"""

from __future__ import annotations

import unicodedata
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass
from typing import NamedTuple

#: The distinguished silence utterance: the empty text.
SILENCE = ""


class UtteranceError(ValueError):
    """Raw utterance text that cannot be normalized (control characters)."""


class UnknownStateError(ValueError):
    """A state label that is not a member of the action space at hand."""


class MeaningError(ValueError):
    """An update that would break a meaning's partial-function property."""


def normalize_utterance(text: str) -> str:
    """Normalize raw utterance text: trim surrounding whitespace.

    The empty result is the silence utterance.  Matching is exact and
    case-sensitive after normalization; no further linguistic processing
    is applied.  Control characters anywhere in the text are rejected,
    they cannot occur in transcribed speech and would corrupt the
    tab-separated trace format.
    """
    stripped = text.strip()
    for ch in stripped:
        if unicodedata.category(ch) == "Cc":
            raise UtteranceError(f"utterance contains control character {ch!r}")
    return stripped


def is_silence(utterance: str) -> bool:
    return utterance == SILENCE


def _validate_label(label: str) -> str:
    cleaned = label.strip()
    if not cleaned:
        raise ValueError("state labels must be non-empty")
    for ch in cleaned:
        if unicodedata.category(ch) == "Cc":
            raise ValueError(f"state label contains control character {ch!r}")
    if "," in cleaned:
        # labels appear in comma-separated config lists (scenario files,
        # scripted selectors), so a comma would be unparseable
        raise ValueError(f"state label must not contain a comma: {cleaned!r}")
    return cleaned


@dataclass(frozen=True, slots=True)
class ActionSpace:
    """The finite, ordered set of operation modes a device can be in.

    The order is significant: it defines the cyclic successor dynamics used
    by the cyclic consequent selector.
    """

    states: tuple[str, ...]

    def __init__(self, states: Iterable[str]) -> None:
        labels = tuple(_validate_label(s) for s in states)
        if len(labels) < 2:
            raise ValueError("an action space needs at least 2 states")
        if len(set(labels)) != len(labels):
            raise ValueError(f"duplicate state labels in {labels!r}")
        object.__setattr__(self, "states", labels)

    def __contains__(self, label: object) -> bool:
        return label in self.states

    def __iter__(self) -> Iterator[str]:
        return iter(self.states)

    def __len__(self) -> int:
        return len(self.states)

    def require(self, label: str) -> str:
        """Return ``label`` if it is a member, raise UnknownStateError otherwise."""
        if label not in self.states:
            raise UnknownStateError(
                f"unknown state {label!r}, expected one of {', '.join(self.states)}"
            )
        return label

    def successor(self, label: str) -> str:
        """The next state in declaration order, wrapping at the end."""
        i = self.states.index(self.require(label))
        return self.states[(i + 1) % len(self.states)]


class AcPair(NamedTuple):
    """One antecedent-consequent pair: in state ``antecedent``, go to ``consequent``."""

    antecedent: str
    consequent: str

    @property
    def is_fixed_point(self) -> bool:
        return self.antecedent == self.consequent


@dataclass(frozen=True, slots=True)
class Meaning:
    """An ordered, functional list of antecedent-consequent pairs.

    Functional: no two pairs share an antecedent, so the meaning is a
    well-defined partial function on states.  The pair order records
    acquisition order; revision replaces a consequent in place and never
    reorders.
    """

    pairs: tuple[AcPair, ...]

    def __init__(self, pairs: Iterable[AcPair] = ()) -> None:
        pairs = tuple(AcPair(*p) for p in pairs)
        seen: set[str] = set()
        for p in pairs:
            if p.antecedent in seen:
                raise MeaningError(f"duplicate antecedent {p.antecedent!r} in meaning")
            seen.add(p.antecedent)
        object.__setattr__(self, "pairs", pairs)

    def __iter__(self) -> Iterator[AcPair]:
        return iter(self.pairs)

    def __len__(self) -> int:
        return len(self.pairs)

    def __contains__(self, pair: object) -> bool:
        return pair in self.pairs

    def antecedents(self) -> tuple[str, ...]:
        return tuple(p.antecedent for p in self.pairs)

    def apply(self, state: str) -> str | None:
        """The consequent this meaning assigns to ``state``, or None if undefined."""
        for p in self.pairs:
            if p.antecedent == state:
                return p.consequent
        return None

    def accepts(self, state: str) -> bool:
        """True iff ``state`` is a fixed point: apply(state) == state."""
        return self.apply(state) == state

    def extend(self, pair: AcPair) -> "Meaning":
        """Append ``pair`` as the newest entry.

        The antecedent must be fresh; a duplicate would make the meaning
        assign two consequents to one state.
        """
        pair = AcPair(*pair)
        if self.apply(pair.antecedent) is not None:
            raise MeaningError(
                f"antecedent {pair.antecedent!r} already present, cannot extend"
            )
        return Meaning(self.pairs + (pair,))

    def revise(self, antecedent: str, new_consequent: str) -> "Meaning":
        """Replace the consequent stored for ``antecedent``, keeping its position."""
        for i, p in enumerate(self.pairs):
            if p.antecedent == antecedent:
                revised = AcPair(antecedent, new_consequent)
                return Meaning(self.pairs[:i] + (revised,) + self.pairs[i + 1 :])
        raise MeaningError(f"no pair with antecedent {antecedent!r} to revise")


class UMP(NamedTuple):
    """An utterance paired with its learned meaning."""

    utterance: str
    meaning: Meaning


class Lexicon(Mapping[str, Meaning]):
    """Maps each known utterance to exactly one meaning.

    Immutable; ``upsert`` returns a new lexicon sharing unchanged entries.
    """

    __slots__ = ("_entries",)

    def __init__(self, entries: Iterable[tuple[str, Meaning]] | Mapping[str, Meaning] = ()) -> None:
        self._entries: dict[str, Meaning] = dict(entries)

    def __getitem__(self, utterance: str) -> Meaning:
        return self._entries[utterance]

    def __iter__(self) -> Iterator[str]:
        return iter(self._entries)

    def __len__(self) -> int:
        return len(self._entries)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Lexicon):
            return self._entries == other._entries
        return NotImplemented

    def __repr__(self) -> str:
        return f"Lexicon({self._entries!r})"

    def contains_utterance(self, utterance: str) -> bool:
        return utterance in self._entries

    def contains_meaning(self, meaning: Meaning) -> bool:
        """True iff some entry's meaning equals ``meaning`` as an ordered list."""
        return any(m == meaning for m in self._entries.values())

    def contains_pair(self, pair: AcPair) -> bool:
        """True iff some entry's meaning contains ``pair``."""
        return any(pair in m for m in self._entries.values())

    def upsert(self, utterance: str, meaning: Meaning) -> "Lexicon":
        """A new lexicon in which ``utterance`` maps to ``meaning``."""
        updated = dict(self._entries)
        updated[utterance] = meaning
        return Lexicon(updated)

    def umps(self) -> Iterator[UMP]:
        for utterance, meaning in self._entries.items():
            yield UMP(utterance, meaning)
