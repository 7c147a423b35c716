"""Exception hierarchy shared by every foldwidth module."""


class FoldDiagramError(ValueError):
    """Base class for structural problems with a fold diagram.

    ``where`` optionally names the offending location (a document path such as
    ``components[0].vertices[2]``) so that the CLI can point at it.
    """

    def __init__(self, message, where=None):
        super().__init__(message)
        self.where = where

    def __str__(self):
        msg = super().__str__()
        if self.where:
            return f"{self.where}: {msg}"
        return msg


class UnpairedDart(FoldDiagramError):
    pass


class BadDegree(FoldDiagramError):
    pass


class InvalidVertex(FoldDiagramError):
    pass


class DisconnectedComponent(FoldDiagramError):
    pass


class EulerFailure(FoldDiagramError):
    pass


class CyclicPlacement(FoldDiagramError):
    pass


class DanglingPlacementFace(FoldDiagramError):
    pass


class EmptyDiagram(FoldDiagramError):
    pass


class LabelingMismatch(FoldDiagramError):
    pass


class InvalidLabeling(FoldDiagramError):
    pass


class BoundExceeded(RuntimeError):
    pass


class InconsistentAssembly(FoldDiagramError):
    pass


class RealizationMismatch(FoldDiagramError):
    pass


class RealizationUnavailable(RuntimeError):
    pass


class NotSplittable(FoldDiagramError):
    pass


class NoOutermostEdge(FoldDiagramError):
    pass


class InvalidNesting(FoldDiagramError):
    pass


class DisconnectedSpec(FoldDiagramError):
    pass


class DocumentSyntaxError(FoldDiagramError):
    """Malformed document text; carries 1-based ``line`` and ``column``."""

    def __init__(self, message, line=None, column=None):
        where = f"line {line}, column {column}" if line is not None else None
        super().__init__(message, where)
        self.line = line
        self.column = column
