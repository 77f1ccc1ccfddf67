"""Exception hierarchy shared by the package."""


class TomonoidError(Exception):
    """Base class for all errors raised by this package."""


class TableShapeError(TomonoidError, ValueError):
    """A table is not square or holds entries outside the chain."""


class PartitionStructureError(TomonoidError, ValueError):
    """A partition references unknown class identifiers or has the wrong shape."""


class PreconditionError(TomonoidError, ValueError):
    """An operation was called on input outside its domain."""


class AxiomError(TomonoidError, ValueError):
    """Input failed an axiom check; ``report`` holds the verifier output."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class ObstructedError(TomonoidError):
    """The ramification identifies the new bottom with the new atom.

    No one-element coextension exists for the chosen idempotent pair.
    """


class InternalSoundnessError(TomonoidError, AssertionError):
    """A constructed table failed a postcondition; indicates an engine bug."""


class OracleCapError(TomonoidError, ValueError):
    """Brute-force enumeration requested above the configured size cap."""
