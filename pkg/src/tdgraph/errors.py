"""Exception hierarchy for tdgraph.

Everything raised on purpose by this package derives from TDGraphError, so
callers (and the CLI) can catch one base class.
"""


class TDGraphError(Exception):
    """Base class for all tdgraph errors."""


class ShapeError(TDGraphError, ValueError):
    """Invalid triangle angles (ordering, positivity, or angle sum)."""


class DegenerateInputError(TDGraphError, ValueError):
    """Coincident points or another degenerate query."""


class GeneralPositionError(TDGraphError, ValueError):
    """A direction coincides with a cone boundary (within tolerance), or an
    exact scale tie was detected during construction."""


class NotValidatedError(TDGraphError, ValueError):
    """A builder was handed a point set that has not passed general-position
    validation for the given triangle shape."""


class PerturbationError(TDGraphError, RuntimeError):
    """perturb() failed to reach general position within the retry budget."""


class GraphIntegrityError(TDGraphError, RuntimeError):
    """A structural invariant of a TD graph does not hold (disconnected,
    duplicate cone edge, missing expected neighbour, ...)."""


class RoutingCaseError(TDGraphError, ValueError):
    """A region query was made for a vertex pair in the wrong cone case."""


class RouteVerificationError(TDGraphError, RuntimeError):
    """The runtime potential verifier found a step that does not pay for
    itself, or an impossible case transition."""


class ConstructionError(TDGraphError, RuntimeError):
    """An adversarial instance generator could not certify the edge structure
    it is required to produce."""


class PointsParseError(TDGraphError, ValueError):
    """Malformed points file."""


class GraphFormatError(TDGraphError, ValueError):
    """Malformed or wrong-version graph file."""
