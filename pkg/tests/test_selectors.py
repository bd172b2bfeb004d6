from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from umplex import (
    ActionSpace,
    CyclicSelector,
    RandomSelector,
    ScriptedSelector,
    SelectorError,
    SelectorSpec,
)

THREE = ActionSpace(["NoHeat", "Semi", "Heat"])
TWO = ActionSpace(["NoHeat", "Heat"])


class TestCyclic:
    def test_three_state_circulation(self):
        sel = CyclicSelector(THREE)
        assert sel.choose("NoHeat") == "Semi"
        assert sel.choose("Semi") == "Heat"
        assert sel.choose("Heat") == "NoHeat"

    def test_two_state_complement(self):
        sel = CyclicSelector(TWO)
        assert sel.choose("Heat") == "NoHeat"
        assert sel.choose("NoHeat") == "Heat"

    def test_visits_every_state_once(self):
        sel = CyclicSelector(THREE)
        for start in THREE:
            seen = [start]
            for _ in range(len(THREE) - 1):
                seen.append(sel.choose(seen[-1]))
            assert sorted(seen) == sorted(THREE.states)

    def test_unknown_state(self):
        with pytest.raises(ValueError):
            CyclicSelector(TWO).choose("Semi")


class TestRandom:
    def test_same_seed_same_sequence(self):
        a = RandomSelector(THREE, seed=7)
        b = RandomSelector(THREE, seed=7)
        state_a = state_b = "Heat"
        for _ in range(50):
            state_a, state_b = a.choose(state_a), b.choose(state_b)
            assert state_a == state_b

    @given(st.integers(min_value=0, max_value=2**32 - 1), st.sampled_from(THREE.states))
    def test_never_returns_current_state(self, seed: int, start: str):
        sel = RandomSelector(THREE, seed=seed)
        state = start
        for _ in range(20):
            nxt = sel.choose(state)
            assert nxt != state
            assert nxt in THREE
            state = nxt


class TestScripted:
    def test_replays_script(self):
        sel = ScriptedSelector(THREE, ["Semi", "NoHeat"])
        assert sel.choose("Heat") == "Semi"
        assert sel.choose("Semi") == "NoHeat"

    def test_exhausted_script(self):
        sel = ScriptedSelector(THREE, ["Semi"])
        sel.choose("Heat")
        with pytest.raises(SelectorError, match="exhausted"):
            sel.choose("Semi")

    def test_script_must_not_repeat_current_state(self):
        sel = ScriptedSelector(THREE, ["Heat"])
        with pytest.raises(SelectorError):
            sel.choose("Heat")

    def test_script_states_validated_up_front(self):
        with pytest.raises(ValueError):
            ScriptedSelector(THREE, ["Hot"])


class TestSpec:
    def test_parse_cyclic(self):
        assert SelectorSpec.parse("cyclic") == SelectorSpec("cyclic")

    def test_parse_random_with_seed(self):
        assert SelectorSpec.parse("random 42") == SelectorSpec("random", seed=42)

    def test_parse_scripted(self):
        spec = SelectorSpec.parse("scripted Semi, NoHeat")
        assert spec.script == ("Semi", "NoHeat")

    @pytest.mark.parametrize("bad", ["", "random", "random x", "scripted", "mdp", "cyclic 3"])
    def test_parse_rejects(self, bad: str):
        with pytest.raises(SelectorError):
            SelectorSpec.parse(bad)

    @pytest.mark.parametrize("text", ["cyclic", "random 42", "scripted Semi,NoHeat"])
    def test_render_round_trip(self, text: str):
        assert SelectorSpec.parse(text).render() == text

    def test_build_kinds(self):
        assert isinstance(SelectorSpec.parse("cyclic").build(THREE), CyclicSelector)
        assert isinstance(SelectorSpec.parse("random 1").build(THREE), RandomSelector)
        assert isinstance(SelectorSpec.parse("scripted Semi").build(THREE), ScriptedSelector)
