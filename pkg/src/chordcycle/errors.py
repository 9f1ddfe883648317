"""Exception types shared across the package."""

from __future__ import annotations


class ChordCycleError(Exception):
    """Base class for errors raised by this package."""


class Graph6Error(ChordCycleError, ValueError):
    """Malformed graph6 text."""


class ResourceCapExceeded(ChordCycleError):
    """An exhaustive search ran out of budget before reaching a verdict.

    This is never a negative answer: the object searched for may or may not
    exist.
    """

    def __init__(self, budget: int, explored: int, what: str = "search"):
        super().__init__(f"{what} exceeded budget of {budget} partial paths")
        self.budget = budget
        self.explored = explored


class SizeCapExceeded(ChordCycleError):
    """Graph too large for an exact algorithm."""


class DisconnectedGraphError(ChordCycleError, ValueError):
    """Operation requires a connected graph."""


class NotInClassError(ChordCycleError):
    """Input graph violates the hypothesis of a colorer.

    ``witness`` is a JSON-ready dict exhibiting the forbidden structure.
    """

    def __init__(self, message: str, witness: dict):
        super().__init__(message)
        self.witness = witness


class FalsificationError(ChordCycleError):
    """A structural guarantee failed on an input that satisfied its hypotheses.

    Carries a :class:`chordcycle.coloring.FalsificationReport`. Either the
    implementation is wrong or the graph is a counterexample; both deserve a
    look.
    """

    def __init__(self, report):
        super().__init__(f"falsification of {report.theorem_id}: {report.witness}")
        self.report = report
