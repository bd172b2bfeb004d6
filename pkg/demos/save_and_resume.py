"""Ship a trained lexicon: train, save, restore, keep going.

A lexicon document is plain JSON, so a device can be delivered pre-trained
and a user's corrections survive restarts.  Pair order is preserved
exactly; it records what was learned first.

Run with:  python3 demos/save_and_resume.py
"""

from umplex import ActionSpace, CyclicSelector, Session, export_lexicon, import_lexicon

space = ActionSpace(["NoHeat", "Heat"])
trainer = Session(space, "Heat", CyclicSelector(space))
for u in ["", "I go to grandma now", "", "I go to grandma now", "no!", ""]:
    trainer.step(u)

document = export_lexicon(trainer.lexicon, space)
print("Saved lexicon document:\n")
print(document)

lexicon, restored_space = import_lexicon(document)
assert lexicon == trainer.lexicon

resumed = Session(restored_space, "Heat", CyclicSelector(restored_space))
resumed.lexicon = lexicon

report = resumed.step("I go to grandma now")
print(f"Fresh session, restored knowledge: {report.utterance!r} fires {report.fired_rule}")
print(f"({report.antecedent} -> {report.consequent}; nothing had to be learned again)")
