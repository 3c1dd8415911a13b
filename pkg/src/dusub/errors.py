"""Exception and warning types raised across the package."""

from __future__ import annotations


class DusubError(Exception):
    """Base class for every error raised by dusub."""


class GraphError(DusubError):
    """A flow graph failed validation."""


class NodeRangeError(GraphError):
    def __init__(self, what: str, node: int, count: int):
        super().__init__(f"{what} {node} out of range [0, {count})")
        self.node = node


class SelfLoopError(GraphError):
    def __init__(self, edge: tuple[int, int]):
        super().__init__(f"self-loop edge {edge}")
        self.edge = edge


class DuplicateEdgeError(GraphError):
    def __init__(self, edge: tuple[int, int]):
        super().__init__(f"duplicate edge {edge}")
        self.edge = edge


class EmptyExitsError(GraphError):
    def __init__(self) -> None:
        super().__init__("graph has no exit node")


class UnreachableNodeError(GraphError):
    def __init__(self, node: int):
        super().__init__(f"node {node} is not reachable from the start node")
        self.node = node


class NoPathToExitError(GraphError):
    def __init__(self, node: int):
        super().__init__(f"node {node} cannot reach any exit node")
        self.node = node


class ExitHasSuccessorsError(GraphError):
    def __init__(self, node: int):
        super().__init__(f"exit node {node} has outgoing edges")
        self.node = node


class AnnotationError(DusubError):
    """Def/use annotations reference something the graph does not have."""


class VarNotDefinedAtError(DusubError):
    def __init__(self, node: int, var: str):
        super().__init__(f"variable {var!r} is not defined at node {node}")
        self.node = node
        self.var = var


class UniverseMismatchError(DusubError):
    def __init__(self, left: int, right: int):
        super().__init__(f"DUA sets over different universes ({left} vs {right})")


class NoPredecessorsError(DusubError):
    def __init__(self, node: int):
        super().__init__(f"node {node} has no predecessors")
        self.node = node


class InvalidPathError(DusubError):
    pass


class BoundTooSmallError(DusubError):
    def __init__(self, node: int, bound: int):
        super().__init__(f"no path reaches node {node} within edge bound {bound}")
        self.node = node
        self.bound = bound


class ParseError(DusubError):
    """Malformed input text. ``line``/``col`` are 1-based."""

    def __init__(self, message: str, line: int, col: int = 1):
        super().__init__(f"line {line}, col {col}: {message}")
        self.message = message
        self.line = line
        self.col = col


class SchemaError(DusubError):
    """Well-formed input that violates the graph document schema."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path
        self.message = message


class UndefinedVariableWarning(UserWarning):
    """A variable is used somewhere but never defined."""


class ClosedFormMismatchWarning(UserWarning):
    """The closed-form composition disagrees with sequential application."""
