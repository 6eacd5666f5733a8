"""Exception hierarchy shared by all cordalg modules."""

from __future__ import annotations


class CordalgError(Exception):
    """Base class for every error raised by cordalg."""


class InputError(CordalgError):
    """Bad user input: malformed documents, invalid diagrams, bad descriptors."""


class MalformedDocument(InputError):
    pass


class InvalidDiagram(InputError):
    pass


class InvalidPdCode(InputError):
    pass


class MultiComponent(InputError):
    pass


class EmptyBraidOnMultipleStrands(InputError):
    pass


class EvenCableOrder(InputError):
    pass


class UnknownTag(InputError):
    pass


class DisconnectedSummand(InputError):
    pass


class InvalidPassWord(InputError):
    pass


class EndpointMismatch(InputError):
    pass


class NotABasedLoop(InputError):
    pass


class IncompleteAssignment(InputError):
    pass


class NonInvertibleSymbol(InputError):
    pass


class MissingImage(InputError):
    pass


class NonInvertibleImage(InputError):
    pass


class SingularImage(InputError):
    pass


class InvalidAction(InputError):
    pass


class ResourceBudgetExceeded(CordalgError):
    """Raised when a Groebner computation outgrows its pair or monomial budget."""
