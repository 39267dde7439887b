"""Exception types shared across the package."""


class TreeHashError(Exception):
    """Base class for all parashake errors."""


class BlockAlignmentError(TreeHashError, ValueError):
    """An f-input is not a positive multiple of the rate."""


class OutputLengthError(TreeHashError, ValueError):
    """A requested digest length is not positive."""


class TooManyChainingValues(TreeHashError, ValueError):
    """A chaining hop holds more than 255 chaining values."""


class GrammarError(TreeHashError, ValueError):
    """A hop chain or node layout does not follow the tree coding rules."""


class NodeCapacityError(TreeHashError, ValueError):
    """A message slice does not fit the node or subtree it was given."""


class MessageTooShortError(TreeHashError, ValueError):
    """The message is below the minimum size of the requested planner."""


class DependencyCycleError(TreeHashError, ValueError):
    """Chaining-value references do not form a topologically ordered DAG."""


class SliceRangeError(TreeHashError, IndexError):
    """A message slice lies outside the message."""
