"""Scenario files: parse, replay, and render training runs.

A scenario file fixes an action space, an initial state, a consequent
selector and a sequence of utterances::

    # two operation modes, heater starts hot
    states: NoHeat, Heat
    initial: Heat
    selector: cyclic
    steps:
    <silence>
    I go to grandma now

One utterance per line after ``steps:``.  The literal token ``<silence>``
stands for the empty utterance; blank lines and lines starting with ``#``
are ignored.  Replaying a scenario is fully deterministic, including for
seeded random selectors.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass

from .engine import HistoryEntry, Rule, Session, StepReport
from .selectors import SelectorError, SelectorSpec
from .semantics import SILENCE, ActionSpace, Lexicon, normalize_utterance

#: Spelled-out stand-in for the empty utterance in files and on terminals.
SILENCE_TOKEN = "<silence>"

RECORD_FIELDS = ("t", "k", "utterance", "antecedent", "consequent", "rule")


class ScenarioError(ValueError):
    """A scenario file problem, located by line number."""

    def __init__(self, line: int, message: str) -> None:
        super().__init__(f"line {line}: {message}")
        self.line = line
        self.message = message


def display_utterance(utterance: str) -> str:
    return SILENCE_TOKEN if utterance == SILENCE else utterance


@dataclass(frozen=True, slots=True)
class Scenario:
    states: tuple[str, ...]
    initial: str
    selector: SelectorSpec
    utterances: tuple[str, ...]

    def space(self) -> ActionSpace:
        return ActionSpace(self.states)


@dataclass(frozen=True, slots=True)
class Trace:
    """The outcome of replaying a scenario."""

    states: tuple[str, ...]
    reports: tuple[StepReport, ...]
    lexicon: Lexicon
    final_state: str

    @property
    def entries(self) -> tuple[HistoryEntry, ...]:
        return tuple(e for report in self.reports for e in report.appended)


def parse_scenario(text: str) -> Scenario:
    """Parse scenario text, reporting problems with their line number."""
    headers: dict[str, tuple[int, str]] = {}
    utterances: list[str] = []
    in_steps = False
    steps_seen = False

    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if not in_steps:
            if stripped == "steps:":
                in_steps = True
                steps_seen = True
                continue
            key, sep, value = stripped.partition(":")
            key = key.strip()
            if not sep or key not in ("states", "initial", "selector"):
                raise ScenarioError(lineno, f"expected a header or 'steps:', got {stripped!r}")
            if key in headers:
                raise ScenarioError(lineno, f"duplicate header {key!r}")
            headers[key] = (lineno, value.strip())
        else:
            if stripped == SILENCE_TOKEN:
                utterances.append(SILENCE)
            else:
                try:
                    utterances.append(normalize_utterance(raw))
                except ValueError as exc:
                    raise ScenarioError(lineno, str(exc)) from exc

    last_line = text.count("\n") + 1
    for key in ("states", "initial", "selector"):
        if key not in headers:
            raise ScenarioError(last_line, f"missing header {key!r}")
    if not steps_seen:
        raise ScenarioError(last_line, "missing 'steps:' section")

    states_line, states_value = headers["states"]
    labels = tuple(s.strip() for s in states_value.split(",") if s.strip())
    try:
        space = ActionSpace(labels)
    except ValueError as exc:
        raise ScenarioError(states_line, str(exc)) from exc

    initial_line, initial = headers["initial"]
    if initial not in space:
        raise ScenarioError(initial_line, f"unknown state {initial!r}")

    selector_line, selector_value = headers["selector"]
    try:
        selector = SelectorSpec.parse(selector_value)
        for s in selector.script:
            if s not in space:
                raise SelectorError(f"unknown state {s!r} in scripted selector")
    except SelectorError as exc:
        raise ScenarioError(selector_line, str(exc)) from exc

    return Scenario(states=space.states, initial=initial, selector=selector, utterances=tuple(utterances))


def format_scenario(scenario: Scenario) -> str:
    """Render a scenario in the file format; parse(format(s)) == s."""
    lines = [
        "states: " + ", ".join(scenario.states),
        f"initial: {scenario.initial}",
        f"selector: {scenario.selector.render()}",
        "steps:",
    ]
    lines.extend(display_utterance(u) for u in scenario.utterances)
    return "\n".join(lines) + "\n"


def replay(scenario: Scenario) -> Trace:
    """Run a fresh session through the scenario's utterances."""
    space = scenario.space()
    session = Session(space, scenario.initial, scenario.selector.build(space))
    reports = tuple(session.step(u) for u in scenario.utterances)
    return Trace(
        states=space.states,
        reports=reports,
        lexicon=session.lexicon,
        final_state=session.current,
    )


def iteration_numbers(entries: Iterable[HistoryEntry]) -> list[int | None]:
    """Iteration number per entry, None on revision entries.

    Every non-revision entry opens one iteration, so its number is the
    count of non-revision entries before it.
    """
    numbers: list[int | None] = []
    k = 0
    for e in entries:
        if e.rule is Rule.R3:
            numbers.append(None)
        else:
            numbers.append(k)
            k += 1
    return numbers


def record_rows(entries: Iterable[HistoryEntry]) -> list[tuple[str, str, str, str, str, str]]:
    """Flatten history entries into record cells (t, k, utterance, a, c, rule)."""
    entries = list(entries)
    rows = []
    for e, k in zip(entries, iteration_numbers(entries)):
        rows.append(
            (
                str(e.t),
                "" if k is None else str(k),
                display_utterance(e.utterance),
                e.pair.antecedent,
                e.pair.consequent,
                e.rule.value,
            )
        )
    return rows


def format_records(entries: Iterable[HistoryEntry]) -> str:
    """Machine-readable record stream: one tab-separated line per entry."""
    lines = ["\t".join(RECORD_FIELDS)]
    lines.extend("\t".join(row) for row in record_rows(entries))
    return "\n".join(lines) + "\n"


def _format_table(trace: Trace) -> str:
    header = ("k", "t", "a", "b", "c", "UMP", "rule")
    rows: list[tuple[str, ...]] = []
    for report in trace.reports:
        for e in report.appended:
            ump = f"({display_utterance(e.utterance)}, {{({e.pair.antecedent}, {e.pair.consequent})}})"
            if e.rule is Rule.R3:
                rows.append(("", str(e.t), "", "", "", ump, e.rule.value))
            else:
                rows.append(
                    (
                        str(report.iteration),
                        str(e.t),
                        report.antecedent,
                        display_utterance(report.utterance),
                        report.consequent,
                        ump,
                        e.rule.value,
                    )
                )
    widths = [max(len(header[i]), *(len(r[i]) for r in rows)) if rows else len(header[i]) for i in range(7)]
    def fmt(cells: Sequence[str]) -> str:
        padded = [
            cells[i].rjust(widths[i]) if i < 2 else cells[i].ljust(widths[i])
            for i in range(7)
        ]
        return "  ".join(padded).rstrip()
    return "\n".join([fmt(header)] + [fmt(r) for r in rows]) + "\n"


def format_trace(trace: Trace, style: str = "table") -> str:
    """Render a trace either as an aligned table or as tab-separated records."""
    if style == "records":
        return format_records(trace.entries)
    if style == "table":
        return _format_table(trace)
    raise ValueError(f"unknown trace style {style!r}, expected 'table' or 'records'")
