"""Exception hierarchy.

Everything raised for bad input derives from :class:`UltrametricError`
(a ``ValueError``).  :class:`EquivalenceViolation` is deliberately kept
outside that hierarchy: it signals a bug in this library, never bad input.
"""


class UltrametricError(ValueError):
    pass


# -- matrices and spaces ---------------------------------------------------

class NotSquare(UltrametricError):
    pass


class NegativeDistance(UltrametricError):
    pass


class AsymmetricMatrix(UltrametricError):
    def __init__(self, i, j):
        super().__init__(f"d({i},{j}) != d({j},{i})")
        self.i, self.j = i, j


class NonzeroDiagonal(UltrametricError):
    def __init__(self, i):
        super().__init__(f"d({i},{i}) != 0")
        self.i = i


class ZeroOffDiagonal(UltrametricError):
    def __init__(self, i, j):
        super().__init__(f"distinct points {i} and {j} at distance 0")
        self.i, self.j = i, j


class StrongTriangleViolation(UltrametricError):
    def __init__(self, i, j, k):
        super().__init__(f"d({i},{j}) > max(d({i},{k}), d({k},{j}))")
        self.i, self.j, self.k = i, j, k


class EmptySubset(UltrametricError):
    pass


# -- graphs ------------------------------------------------------------------

class TooSmall(UltrametricError):
    pass


class TooLarge(UltrametricError):
    pass


class NotInSpectrum(UltrametricError):
    pass


class ZeroLevel(UltrametricError):
    pass


class NotCompleteMultipartite(UltrametricError):
    pass


class TooFewParts(UltrametricError):
    pass


# -- trees -------------------------------------------------------------------

class InvalidTree(UltrametricError):
    pass


class NotALeaf(UltrametricError):
    pass


class UnaryNode(UltrametricError):
    def __init__(self, node):
        super().__init__(f"node {node} has exactly one child")
        self.node = node


class NonzeroLeaf(UltrametricError):
    pass


class ZeroInternal(UltrametricError):
    pass


class NonDecreasingLabels(UltrametricError):
    def __init__(self, parent, child):
        super().__init__(f"label of child {child} is not below label of parent {parent}")
        self.parent, self.child = parent, child


class SizeCapExceeded(UltrametricError):
    def __init__(self, message, prefix):
        super().__init__(message)
        self.prefix = prefix


class NoChildren(UltrametricError):
    pass


class Infeasible(UltrametricError):
    pass


# -- morphisms / extremal ------------------------------------------------------

class DanglingReference(UltrametricError):
    pass


class OracleTooLarge(UltrametricError):
    pass


# -- text formats --------------------------------------------------------------

class ParseError(UltrametricError):
    def __init__(self, message, line=None, col=None):
        where = f"{line}:{col}: " if line is not None else ""
        super().__init__(where + message)
        self.line, self.col = line, col


class MixedLabeling(ParseError):
    pass


class EquivalenceViolation(RuntimeError):
    """Independent evaluations of an equivalence disagreed."""

    def __init__(self, name, values):
        super().__init__(f"{name}: conditions disagree: {values}")
        self.name = name
        self.values = values
