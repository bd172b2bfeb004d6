"""Strategies for picking the consequent state on user dissent.

When the user objects to the current operation mode (any non-silent
utterance the device cannot yet apply), the device must move to some other
state.  The selector decides which one; it must never return the state it
was given.

Three kinds are provided and named in scenario files and service/CLI
config as ``cyclic``, ``random <seed>`` and ``scripted <state,...>``.
The cyclic kind steps to the successor in action-space order (for a
two-state space this is plain complementation).  Further strategies, such
as value-driven decision processes, can be added behind the same seam.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .semantics import ActionSpace


class SelectorError(ValueError):
    """Bad selector configuration or an unusable selector state."""


class CyclicSelector:
    """Deterministic: always the successor of the current state, wrapping."""

    kind = "cyclic"

    def __init__(self, space: ActionSpace) -> None:
        if len(space) < 2:
            raise SelectorError("selector needs an action space with at least 2 states")
        self.space = space

    def choose(self, state: str) -> str:
        return self.space.successor(state)


class RandomSelector:
    """Uniform draw from all states except the current one, seeded.

    The same seed reproduces the same sequence of choices, so runs stay
    replayable.  Carries generator state: confine one instance to one
    session.
    """

    kind = "random"

    def __init__(self, space: ActionSpace, seed: int) -> None:
        if len(space) < 2:
            raise SelectorError("selector needs an action space with at least 2 states")
        self.space = space
        self.seed = seed
        self._rng = random.Random(seed)

    def choose(self, state: str) -> str:
        candidates = [s for s in self.space if s != self.space.require(state)]
        return self._rng.choice(candidates)


class ScriptedSelector:
    """Replays a fixed list of consequents, one per dissent, in order."""

    kind = "scripted"

    def __init__(self, space: ActionSpace, script: list[str] | tuple[str, ...]) -> None:
        if len(space) < 2:
            raise SelectorError("selector needs an action space with at least 2 states")
        self.space = space
        self.script = tuple(space.require(s) for s in script)
        self._next = 0

    def choose(self, state: str) -> str:
        if self._next >= len(self.script):
            raise SelectorError(f"scripted selector exhausted after {len(self.script)} choices")
        chosen = self.script[self._next]
        self._next += 1
        if chosen == state:
            raise SelectorError(
                f"scripted selector would repeat the current state {state!r} at position {self._next - 1}"
            )
        return chosen


@dataclass(frozen=True, slots=True)
class SelectorSpec:
    """Parsed selector configuration, buildable against any action space."""

    kind: str
    seed: int | None = None
    script: tuple[str, ...] = ()

    @classmethod
    def parse(cls, text: str) -> "SelectorSpec":
        """Parse ``cyclic`` | ``random <seed>`` | ``scripted <state,...>``."""
        parts = text.strip().split(None, 1)
        if not parts:
            raise SelectorError("empty selector spec")
        kind, arg = parts[0], (parts[1].strip() if len(parts) > 1 else "")
        if kind == "cyclic":
            if arg:
                raise SelectorError("cyclic selector takes no argument")
            return cls("cyclic")
        if kind == "random":
            if not arg:
                raise SelectorError("random selector needs a seed, e.g. 'random 42'")
            try:
                seed = int(arg)
            except ValueError:
                raise SelectorError(f"random selector seed must be an integer, got {arg!r}") from None
            return cls("random", seed=seed)
        if kind == "scripted":
            states = tuple(s.strip() for s in arg.split(",") if s.strip())
            if not states:
                raise SelectorError("scripted selector needs a comma-separated state list")
            return cls("scripted", script=states)
        raise SelectorError(f"unknown selector kind {kind!r}")

    def render(self) -> str:
        if self.kind == "cyclic":
            return "cyclic"
        if self.kind == "random":
            return f"random {self.seed}"
        return "scripted " + ",".join(self.script)

    def build(self, space: ActionSpace) -> CyclicSelector | RandomSelector | ScriptedSelector:
        if self.kind == "cyclic":
            return CyclicSelector(space)
        if self.kind == "random":
            if self.seed is None:
                raise SelectorError("random selector needs a seed")
            return RandomSelector(space, self.seed)
        if self.kind == "scripted":
            return ScriptedSelector(space, self.script)
        raise SelectorError(f"unknown selector kind {self.kind!r}")
