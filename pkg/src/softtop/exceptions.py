"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class SoftTopologyError(Exception):
    """Base class for all errors raised by softtop."""


class UnknownLabelError(SoftTopologyError, KeyError):
    """A point or parameter label does not belong to the universe."""

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else ""


class IncompatibleUniverseError(SoftTopologyError, ValueError):
    """Operands live over different universes."""


class TopologyAxiomError(SoftTopologyError, ValueError):
    """A family of soft sets is not a soft topology.

    ``axiom`` names the violated axiom (``"null"``, ``"absolute"``,
    ``"intersection"`` or ``"union"``) and ``witness`` holds the offending
    soft sets.
    """

    def __init__(self, message: str, axiom: str, witness: tuple = ()):
        super().__init__(message)
        self.axiom = axiom
        self.witness = witness


class NotT0UError(SoftTopologyError, ValueError):
    """The reflection was requested for a space that is not soft T0U."""


class NotContinuousError(SoftTopologyError, ValueError):
    """A soft mapping fails to be soft continuous where continuity is required."""


class NotT0Error(SoftTopologyError, ValueError):
    """A target space that must be soft T0 is not."""


class ConsistencyError(SoftTopologyError, AssertionError):
    """An internal invariant failed. This signals a bug, never bad input."""
