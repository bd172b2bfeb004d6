from __future__ import annotations

from pathlib import Path

import pytest

from umplex import parse_scenario, replay

REPO_ROOT = Path(__file__).resolve().parent.parent
FIXTURES = REPO_ROOT / "fixtures"
GOLDEN = Path(__file__).resolve().parent / "golden"

#: Training sequence of the two-mode walkthrough (13 utterances, "" is silence).
SEQUENCE_1 = (
    "",
    "I go to grandma now",
    "",
    "I go to grandma now",
    "no!",
    "",
    "heat!",
    "I go to grandma now",
    "I go to grandma now",
    "",
    "good boy!",
    "I go to grandma now",
    "I go to grandma now",
)

#: Same run with "no!" repeated once (14 utterances), for the three-mode space.
SEQUENCE_2 = SEQUENCE_1[:5] + ("no!",) + SEQUENCE_1[5:]


@pytest.fixture(scope="session")
def scenario1():
    return parse_scenario((FIXTURES / "scenario1.scn").read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def scenario2():
    return parse_scenario((FIXTURES / "scenario2.scn").read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def trace1(scenario1):
    return replay(scenario1)


@pytest.fixture(scope="session")
def trace2(scenario2):
    return replay(scenario2)


@pytest.fixture(scope="session")
def golden1() -> str:
    return (GOLDEN / "scenario1.records").read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def golden2() -> str:
    return (GOLDEN / "scenario2.records").read_text(encoding="utf-8")
