"""Exception hierarchy.

DataError covers everything traceable to user input (files, flags, domain
violations); SolverError covers internal faults that should never happen on
valid data.  The CLI maps them to exit codes 1 and 2 respectively.
"""


class FacetBenchError(Exception):
    """Base class for all package errors."""


class DataError(FacetBenchError):
    """Invalid input data, file, or argument."""


class SolverError(FacetBenchError):
    """Internal solver fault (bad problem construction, iteration limit,
    or an LP outcome that valid inputs cannot produce)."""


class FacetInfeasibleError(FacetBenchError):
    """A facet admits no point with the requested input vector."""
