"""Watch a pile of misunderstandings get cleared in one sweep.

With three modes (NoHeat, Semi, Heat) the device can no longer fix a wrong
guess by flipping to "the other" state: dissent walks the cycle
NoHeat -> Semi -> Heat -> NoHeat, so it may take several objections before
the device lands where the user wants it.  Once it does, every meaning
touched since the last state the user accepted is rewritten to the
consequent the user finally approved of.

Run with:  python3 demos/cascading_revision.py
"""

from umplex import ActionSpace, CyclicSelector, Rule, Session

space = ActionSpace(["NoHeat", "Semi", "Heat"])
session = Session(space, "Heat", CyclicSelector(space))

prefix = ["", "I go to grandma now", "", "I go to grandma now", "no!"]
print("Setting the stage:")
for u in prefix:
    report = session.step(u)
    shown = "<silence>" if report.utterance == "" else report.utterance
    print(f"  k={report.iteration} {shown!r}: {report.antecedent} -> {report.consequent} ({report.fired_rule})")

print()
print("State is now", session.current, "and the user is still unhappy, so: 'no!' again.")
print()

report = session.step("no!")
trigger = report.appended[0]
s = session.history.mras(trigger.t)
print(f"The step lands at t={trigger.t}; the last accepted state was at t={s}.")
print(f"Everything in between is suspect and gets remapped to {report.consequent!r}:\n")
for e in report.appended:
    tag = "correction" if e.rule is Rule.R3 else str(e.rule)
    print(f"  t={e.t}  {tag:10s} {e.utterance!r}: {e.pair.antecedent} -> {e.pair.consequent}")

print()
print("Two different phrases were fixed by a single objection. The lexicon now says:")
for utterance in sorted(session.lexicon):
    shown = "<silence>" if utterance == "" else utterance
    pairs = ", ".join(f"{p.antecedent}->{p.consequent}" for p in session.lexicon[utterance])
    print(f"  {shown:24s} {pairs}")
