"""umplex: utterance-meaning-pair lexicons for devices with finite action spaces.

A device whose whole world is a handful of operation modes can learn what
user utterances mean to *it*: silence consents to the current mode, any
other utterance asks for a change, and meanings that turn out wrong are
revised in bulk once the user shows what they actually wanted.
"""

from .engine import History, HistoryEntry, LexiconChange, Rule, Session, StepReport
from .persistence import (
    LexiconFormatError,
    export_history,
    export_lexicon,
    import_history,
    import_lexicon,
)
from .scenario import (
    SILENCE_TOKEN,
    Scenario,
    ScenarioError,
    Trace,
    format_scenario,
    format_trace,
    parse_scenario,
    replay,
)
from .selectors import (
    CyclicSelector,
    RandomSelector,
    ScriptedSelector,
    SelectorError,
    SelectorSpec,
)
from .semantics import (
    SILENCE,
    AcPair,
    ActionSpace,
    Lexicon,
    Meaning,
    MeaningError,
    UMP,
    UnknownStateError,
    UtteranceError,
    is_silence,
    normalize_utterance,
)

__version__ = "0.1.0"

__all__ = [
    "AcPair",
    "ActionSpace",
    "CyclicSelector",
    "History",
    "HistoryEntry",
    "Lexicon",
    "LexiconChange",
    "LexiconFormatError",
    "Meaning",
    "MeaningError",
    "RandomSelector",
    "Rule",
    "SILENCE",
    "SILENCE_TOKEN",
    "Scenario",
    "ScenarioError",
    "ScriptedSelector",
    "SelectorError",
    "SelectorSpec",
    "Session",
    "StepReport",
    "Trace",
    "UMP",
    "UnknownStateError",
    "UtteranceError",
    "export_history",
    "export_lexicon",
    "format_scenario",
    "format_trace",
    "import_history",
    "import_lexicon",
    "is_silence",
    "normalize_utterance",
    "parse_scenario",
    "replay",
    "__version__",
]
