#
# License: BSD
#
##############################################################################
# Documentation
##############################################################################

"""
Custom exception types for twophoton. Each maps onto one of the
command line exit codes (see :mod:`twophoton.cli`).
"""

##############################################################################
# Imports
##############################################################################

import typing

##############################################################################
# Exceptions
##############################################################################


class TwoPhotonError(Exception):
    """
    Base class for every error raised deliberately by this package.
    """
    exit_code = 3


class ValidationError(TwoPhotonError, ValueError):
    """
    Inputs violate a precondition or a type invariant.

    Args:
        message: what went wrong
        field: optional path of the offending configuration field,
            e.g. ``[source] pump_duration_ps``
    """
    exit_code = 1

    def __init__(self, message: str, field: typing.Optional[str]=None):
        self.field = field
        if field is not None:
            message = "{}: {}".format(field, message)
        super().__init__(message)


class ArtifactError(TwoPhotonError, IOError):
    """
    A scenario file could not be read or an artifact could not be written.
    """
    exit_code = 2


class InvariantError(TwoPhotonError, RuntimeError):
    """
    An internal cross-check failed, e.g. the fock oracle disagrees with
    the closed form rates.
    """
    exit_code = 3
