"""A heater with two modes learns what its user's phrases mean to it.

The device can heat or not heat, nothing else, so every utterance can only
ever mean "stay" or "switch".  Silence counts as approval of whatever the
device is doing; any other phrase counts as an objection.  Wrong guesses
get corrected in bulk the moment the user shows what they actually wanted.

Run with:  python3 demos/two_mode_walkthrough.py
"""

from umplex import ActionSpace, CyclicSelector, Session, Trace, format_trace

space = ActionSpace(["NoHeat", "Heat"])
session = Session(space, "Heat", CyclicSelector(space))

# The user first approves the heating, then announces a departure (twice,
# which backfires), scolds the machine, plays a confused round with
# "heat!", and finally teaches it that "good boy!" is pure approval.
training = [
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
]

reports = [session.step(u) for u in training]

print("Full training trace (R3 rows are bulk corrections):\n")
trace = Trace(space.states, tuple(reports), session.lexicon, session.current)
print(format_trace(trace, "table"))

print("\nWhat the heater ended up believing:")
for utterance in sorted(session.lexicon):
    shown = "<silence>" if utterance == "" else utterance
    pairs = ", ".join(f"{p.antecedent}->{p.consequent}" for p in session.lexicon[utterance])
    print(f"  {shown:24s} {pairs}")

print(f"\nFinal operation mode: {session.current}")
print("Note how 'I go to grandma now' means 'switch off, whatever you are doing',")
print("and 'good boy!' ended up as approval of NoHeat only, because that is the")
print("only situation it was ever uttered in.")
