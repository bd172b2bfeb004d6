"""Acceptance suite: one test per release criterion, at its stated tolerance.

All comparisons are exact (symbolic equality / byte equality); the
behavioural criteria run a shared randomized audit of 1,000 sessions with
200 steps each, checking invariants after every step.
"""

from __future__ import annotations

import random

import pytest
from fastapi.testclient import TestClient

from umplex import (
    AcPair,
    ActionSpace,
    Lexicon,
    Meaning,
    RandomSelector,
    Rule,
    Session,
    export_lexicon,
    format_trace,
    import_lexicon,
    parse_scenario,
    replay,
)
from umplex.service import create_app

from conftest import SEQUENCE_1

GRANDMA = "I go to grandma now"


def check(name: str, ok: bool, detail: str = "") -> None:
    print(f"[acceptance] {name}: {'PASS' if ok else 'FAIL'}" + (f" ({detail})" if detail else ""))
    assert ok, f"{name}: {detail}"


# -- golden traces ------------------------------------------------------------

EXPECTED_RULES_1 = [
    "R1a", "R1b", "R2bi", "R2bii", "R1b", "R3", "R2a", "R1b",
    "R2a", "R3", "R2a", "R2a", "R1b", "R2a", "R3", "R2a",
]


def test_golden_trace_scenario1(trace1, golden1):
    rules = [e.rule.value for e in trace1.entries]
    ok = (
        len(trace1.entries) == 16
        and rules == EXPECTED_RULES_1
        and format_trace(trace1, "records") == golden1
    )
    check("golden-trace-scenario1", ok, f"rules={rules}")


def pairs_of(meaning: Meaning) -> set[tuple[str, str]]:
    return {(p.antecedent, p.consequent) for p in meaning}


def test_golden_trace_scenario2(trace2, golden2):
    entries = trace2.entries
    revision_times = [e.t for e in entries if e.rule is Rule.R3]
    final = trace2.lexicon
    expected_final = {
        "": {("Heat", "Heat"), ("NoHeat", "NoHeat")},
        GRANDMA: {("Heat", "NoHeat"), ("NoHeat", "NoHeat"), ("Semi", "NoHeat")},
        "no!": {("Heat", "NoHeat"), ("Semi", "NoHeat")},
        "heat!": {("NoHeat", "NoHeat")},
        "good boy!": {("NoHeat", "NoHeat")},
    }
    ok = (
        len(entries) == 21
        and [e.t for e in entries] == list(range(21))
        and revision_times == [5, 7, 8, 12, 14, 15, 19]
        and format_trace(trace2, "records") == golden2
        and set(final) == set(expected_final)
        and all(pairs_of(final[u]) == expected_final[u] for u in expected_final)
    )
    check("golden-trace-scenario2", ok, f"revisions at {revision_times}")


def test_mras_oracle_points(trace2):
    from umplex import History

    history = History()
    for e in trace2.entries:
        history.append(e.utterance, e.pair, e.rule)
    ok = history.mras(6) == 2 and history.mras(13) == 9
    check("mras-oracle-points", ok, f"mras(h,6)={history.mras(6)}, mras(h,13)={history.mras(13)}")


# -- randomized behavioural audit ---------------------------------------------

N_SESSIONS = 1000
N_STEPS = 200
WORD_POOL = ["up", "down", "off", "on", "warm", "cool", "stop", "go", "more", "less"]


@pytest.fixture(scope="module")
def audit() -> dict[str, list[str]]:
    """Run the randomized suite once, recording every invariant violation."""
    violations: dict[str, list[str]] = {"soundness": [], "silence": [], "revision": []}
    rng = random.Random(0xA11CE)
    pool = WORD_POOL + [""]

    for session_index in range(N_SESSIONS):
        n_states = rng.randint(2, 6)
        space = ActionSpace([f"s{i}" for i in range(n_states)])
        session = Session(space, rng.choice(space.states), RandomSelector(space, rng.getrandbits(32)))
        for step_index in range(N_STEPS):
            utterance = rng.choice(pool)
            where = f"session {session_index} step {step_index}"

            silence_meaning = session.lexicon.get("")
            silence_covers_current = (
                silence_meaning is not None and silence_meaning.apply(session.current) == session.current
            )
            pair_count_before = sum(len(m) for m in session.lexicon.values())

            report = session.step(utterance)

            for m in session.lexicon.values():
                antecedents = m.antecedents()
                if len(set(antecedents)) != len(antecedents):
                    violations["soundness"].append(f"{where}: duplicate antecedent in {m}")

            silence_meaning = session.lexicon.get("")
            if silence_meaning is not None and not all(p.is_fixed_point for p in silence_meaning):
                violations["silence"].append(f"{where}: non-identity pair in silence meaning")
            if utterance == "" and silence_covers_current:
                if report.fired_rule is not Rule.R2A or report.consequent != report.antecedent:
                    violations["silence"].append(f"{where}: covered silence did not apply in place")

            revisions = [e for e in report.appended if e.rule is Rule.R3]
            pair_count_after = sum(len(m) for m in session.lexicon.values())
            learned = 0 if report.fired_rule is Rule.R2A else 1
            if pair_count_after != pair_count_before + learned:
                violations["revision"].append(f"{where}: pair count changed by revision")
            if revisions:
                c_k = report.consequent
                tau = report.appended[0].t
                s = session.history.mras(tau)
                window = {
                    (session.history[p].utterance, session.history[p].pair.antecedent)
                    for p in range(0 if s is None else s + 1, tau + 1)
                }
                for e in revisions:
                    if (e.utterance, e.pair.antecedent) not in window:
                        violations["revision"].append(f"{where}: revised a pair from before mras")
                    if e.pair.consequent != c_k:
                        violations["revision"].append(f"{where}: revision target is not c_k")
                    if session.lexicon[e.utterance].apply(e.pair.antecedent) != c_k:
                        violations["revision"].append(f"{where}: lexicon does not map to c_k")
    return violations


def test_soundness_property(audit):
    bad = audit["soundness"]
    check(
        "soundness-randomized",
        not bad,
        bad[0] if bad else f"{N_SESSIONS} sessions x {N_STEPS} steps, no duplicate antecedents",
    )


def test_silence_identity_property(audit):
    bad = audit["silence"]
    check(
        "silence-identity-randomized",
        not bad,
        bad[0] if bad else "silence meaning stayed inside the identity throughout",
    )


def test_revision_postcondition_property(audit):
    bad = audit["revision"]
    check(
        "revision-postcondition-randomized",
        not bad,
        bad[0] if bad else "all revisions rewrote to c_k inside the mras window",
    )


# -- determinism ---------------------------------------------------------------

RANDOM_SCENARIO = """\
states: off, low, mid, high
initial: off
selector: random 99
steps:
""" + "\n".join(
    ["warmer", "<silence>", "colder", "warmer", "warmer", "<silence>", "stop", "colder"] * 6
) + "\n"


def test_determinism(scenario1, scenario2):
    scenarios = [scenario1, scenario2, parse_scenario(RANDOM_SCENARIO)]
    ok = all(
        format_trace(replay(sc), "records") == format_trace(replay(sc), "records") for sc in scenarios
    )
    check("determinism-byte-identical-replays", ok)


# -- persistence ----------------------------------------------------------------

def random_lexicon(rng: random.Random, space: ActionSpace) -> Lexicon:
    lex = Lexicon()
    words = [""] + [f"w{i}" for i in range(8)]
    for u in rng.sample(words, rng.randint(0, len(words))):
        antecedents = rng.sample(space.states, rng.randint(1, len(space)))
        lex = lex.upsert(u, Meaning(AcPair(a, rng.choice(space.states)) for a in antecedents))
    return lex


def test_persistence_round_trip(trace2):
    failures = []
    space2 = ActionSpace(trace2.states)
    restored, _ = import_lexicon(export_lexicon(trace2.lexicon, space2))
    if restored != trace2.lexicon or any(
        restored[u].pairs != trace2.lexicon[u].pairs for u in trace2.lexicon
    ):
        failures.append("trained three-state lexicon")

    rng = random.Random(0xF00D)
    for i in range(100):
        space = ActionSpace([f"s{j}" for j in range(rng.randint(2, 6))])
        lex = random_lexicon(rng, space)
        restored, restored_space = import_lexicon(export_lexicon(lex, space))
        if restored != lex or restored_space != space or any(
            restored[u].pairs != lex[u].pairs for u in lex
        ):
            failures.append(f"random lexicon {i}")
    check("persistence-round-trip", not failures, failures[0] if failures else "101 lexicons")


# -- service conformance ---------------------------------------------------------

def test_service_conformance(golden1):
    client = TestClient(create_app())
    sid = client.post(
        "/sessions", json={"states": ["NoHeat", "Heat"], "initial": "Heat", "selector": "cyclic"}
    ).json()["session"]

    collected = []
    for u in SEQUENCE_1:
        body = {"silence": True} if u == "" else {"text": u}
        resp = client.post(f"/sessions/{sid}/utterances", json=body)
        assert resp.status_code == 200
        collected.extend(resp.json()["entries"])

    lines = ["t\tk\tutterance\tantecedent\tconsequent\trule"]
    for e in collected:
        utterance = "<silence>" if e["utterance"] == "" else e["utterance"]
        k = "" if e["k"] is None else str(e["k"])
        lines.append("\t".join([str(e["t"]), k, utterance, e["antecedent"], e["consequent"], e["rule"]]))
    rendered = "\n".join(lines) + "\n"
    check("service-conformance", rendered == golden1)
