"""Exception types shared across the counting pipeline."""


class InputError(ValueError):
    """Malformed arguments: unknown vertices, bad weights, out-of-range sizes."""


class NotInClass(Exception):
    """The input was shown not to belong to the graph class a driver handles.

    Raised instead of ever returning an unverified count.
    """


class NotLineGraphOfBipartite(NotInClass):
    """Root recovery failed: the graph is not L(B) for a bipartite B."""


class CapExceeded(ValueError):
    """A brute-force routine was asked to work beyond its configured size cap."""


class BudgetExceeded(RuntimeError):
    """The Markov chain engine could not reach the requested accuracy within budget."""
