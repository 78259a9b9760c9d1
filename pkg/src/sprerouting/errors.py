"""Exception hierarchy.

Errors fall in two groups: ``InputError`` (the instance or request is
malformed, CLI exit code 2) and ``ResourceError`` (a configured cap was hit,
CLI exit code 3).  ``InvariantViolation`` signals an internal bug.
"""


class SprError(Exception):
    """Base class for every error raised by this package."""


class InputError(SprError):
    pass


class ResourceError(SprError):
    pass


class InvariantViolation(SprError, AssertionError):
    """A proven structural property failed to hold at runtime."""


class ParseError(InputError):
    pass


class GraphError(InputError):
    pass


class UnreachableTerminals(InputError):
    pass


class NoEmbedding(InputError):
    pass


class EmbeddingInvalid(InputError):
    pass


class NotACycle(InputError):
    pass


class TerminalOnCycle(InputError):
    pass


class InvalidTarget(InputError):
    pass


class NotReduced(InputError):
    pass


class ExtremaNotUnique(InputError):
    pass


class NotASwitchPair(InputError):
    pass


class SwitchVerticesNotOnP(InputError):
    pass


class LowDegreeViolated(InputError):
    pass


class MissingChildWitness(SprError):
    pass


class BadParameters(InputError):
    pass


class EncodingCapExceeded(ResourceError):
    def __init__(self, layer: int, nodes: int, cap: int):
        super().__init__(f"encoding layer {layer} has {nodes} nodes, cap is {cap}")
        self.layer = layer
        self.nodes = nodes
        self.cap = cap


class PathBudgetExceeded(ResourceError):
    def __init__(self, budget: int):
        super().__init__(f"more than {budget} S-paths")
        self.budget = budget
