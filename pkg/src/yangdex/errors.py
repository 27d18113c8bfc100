"""Exception hierarchy shared by every yangdex module."""

from __future__ import annotations

import json


class YangdexError(ValueError):
    """Base class for all library errors."""


# --- complexes, involutions, maps ---------------------------------------


class EmptyInputError(YangdexError):
    pass


class MalformedFacetError(YangdexError):
    pass


class IncompleteMapError(YangdexError):
    """A vertex map is not defined on every vertex it must cover."""


class NotOrder2Error(YangdexError):
    pass


class NotSimplicialError(YangdexError):
    def __init__(self, message: str, simplex=None):
        super().__init__(message)
        self.simplex = simplex


class NotFreeError(YangdexError):
    def __init__(self, message: str, simplex=None):
        super().__init__(message)
        self.simplex = simplex


class NotEquivariantError(YangdexError):
    def __init__(self, message: str, vertex=None):
        super().__init__(message)
        self.vertex = vertex


class NotPseudomanifoldLikeError(YangdexError):
    pass


class NotClosedPseudomanifoldError(YangdexError):
    pass


# --- linear algebra / cohomology ------------------------------------------


class DimensionMismatchError(YangdexError):
    pass


class NotCocycleError(YangdexError):
    pass


class OrderMismatchError(YangdexError):
    """Cochains live on different complexes (different vertex orders)."""


class InternalInconsistencyError(YangdexError):
    pass


# --- constructions -------------------------------------------------------


class NotFreeOnXError(YangdexError):
    pass


class XNotFullSubcomplexError(YangdexError):
    pass


# --- combinatorial lemmas ------------------------------------------------


class NotAntipodalError(YangdexError):
    def __init__(self, message: str, vertex=None):
        super().__init__(message)
        self.vertex = vertex


class HasComplementaryEdgeError(YangdexError):
    def __init__(self, message: str, edge=None):
        super().__init__(message)
        self.edge = edge


class WrongAlphabetError(YangdexError):
    pass


class NoWitnessError(YangdexError):
    """No witness exists; on a claimed BUT input this is a property violation."""


class NotACoverError(YangdexError):
    pass


class BadPairingError(YangdexError):
    pass


# --- degree ---------------------------------------------------------------


class NotClosedError(YangdexError):
    pass


class NonOrientableError(YangdexError):
    pass


class IllDefinedError(YangdexError):
    pass


class NotTransversalError(YangdexError):
    def __init__(self, message: str, simplex=None):
        super().__init__(message)
        self.simplex = simplex


# --- input files ----------------------------------------------------------


class ParseError(YangdexError):
    def __init__(self, message: str, path=None, line=None, token=None):
        loc = []
        if path is not None:
            loc.append(str(path))
        if line is not None:
            loc.append(f"line {line}")
        if token is not None:
            shown = token if isinstance(token, str) else json.dumps(token, default=str)
            loc.append(f"token {shown!r}" if isinstance(token, str) else f"token {shown}")
        full = f"{', '.join(loc)}: {message}" if loc else message
        super().__init__(full)
        self.path = path
        self.line = line
        self.token = token
