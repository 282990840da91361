"""Exception hierarchy shared by services and the command line"""


class WflagError(Exception):
    """Base error; exit_code is what the CLI returns for it"""
    exit_code = 1


class InputValidationError(WflagError, ValueError):
    """Input data violates a documented precondition"""
    exit_code = 1


class IntegralityError(InputValidationError):
    """An ambient weight or coefficient is not an integer"""


class IllPosedSeriesError(InputValidationError):
    """A Hilbert series expands to a negative or fractional coefficient"""


class DimensionMismatchError(InputValidationError):
    """The pole order of a series disagrees with the tracked dimension"""


class ConventionError(InputValidationError):
    """A derived invariant does not satisfy its defining convention"""


class PeriodTooSmallError(InputValidationError):
    """A quasi-polynomial fit failed to validate for the chosen period"""


class ResourceLimitError(WflagError):
    """A configured cap (group order, reduction steps, search size) was exceeded"""
    exit_code = 1


class InternalAssertionError(WflagError, AssertionError):
    """An exactness invariant failed; indicates a bug, not bad input"""
    exit_code = 2
