"""Exception hierarchy.

Every error raised on bad input derives from :class:`SemiTSPError`, which the
command-line front end maps to exit code 2.
"""


class SemiTSPError(Exception):
    """Base class for all domain errors of this package."""


class InvalidGraph(SemiTSPError, ValueError):
    """A weight matrix does not describe a complete semimetric graph."""

    def __init__(self, message, pair=None):
        super().__init__(message)
        self.pair = pair


class TooFewVertices(InvalidGraph):
    pass


class NonzeroDiagonal(InvalidGraph):
    pass


class AsymmetricWeights(InvalidGraph):
    pass


class NonpositiveWeight(InvalidGraph):
    pass


class IndexOutOfRange(SemiTSPError, IndexError):
    pass


class NotAPermutation(SemiTSPError, ValueError):
    pass


class InstanceTooLarge(SemiTSPError, ValueError):
    def __init__(self, n, cap):
        super().__init__(f"instance with n={n} exceeds the cap of {cap} vertices")
        self.n = n
        self.cap = cap


class NotSpanning(SemiTSPError, ValueError):
    pass


class RootNotInTree(SemiTSPError, ValueError):
    pass


class MalformedTraversal(SemiTSPError, ValueError):
    pass


class EdgeNotInTree(SemiTSPError, ValueError):
    pass


class TreeTooSmall(SemiTSPError, ValueError):
    pass


class OddVertexCount(SemiTSPError, ValueError):
    pass


class OddCardinality(OddVertexCount):
    pass


class SubsetTooLarge(SemiTSPError, ValueError):
    pass


class NotCycleFree(SemiTSPError, ValueError):
    pass


class OddDegreeVertex(SemiTSPError, ValueError):
    pass


class DisconnectedMultigraph(SemiTSPError, ValueError):
    pass


class BadStartVertex(SemiTSPError, ValueError):
    pass


class BadConfig(SemiTSPError, ValueError):
    pass


class EmptyRecords(SemiTSPError, ValueError):
    pass
