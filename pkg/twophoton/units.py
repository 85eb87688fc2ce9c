#
# License: BSD
#
##############################################################################
# Documentation
##############################################################################

"""
Frequency unit handling.

Internally every frequency is an angular frequency in rad/ps and every time
is in ps. Scenario files quote frequencies on a GHz scale, either as an
ordinary frequency (GHz, multiplied by 2π) or as an angular frequency
(Grad/s). Both scale by 1e-3 on the way to rad/ps.
"""

##############################################################################
# Imports
##############################################################################

import enum
import math

from . import exceptions

##############################################################################
# Units
##############################################################################

GIGA_PER_TERA = 1.0e-3


class FrequencyQuote(enum.Enum):
    """How quoted frequencies are to be read."""

    ORDINARY = "ordinary"
    """Quoted values are ordinary frequencies in GHz."""
    ANGULAR = "angular"
    """Quoted values are angular frequencies in Grad/s."""

    @classmethod
    def parse(cls, text: str) -> 'FrequencyQuote':
        try:
            return cls(text.strip().lower())
        except ValueError as e:
            raise exceptions.ValidationError(
                "unknown frequency quote '{}', expected one of {}".format(
                    text, [q.value for q in cls]
                )
            ) from e


def to_angular(value: float, quote: FrequencyQuote) -> float:
    """
    Convert a quoted frequency into rad/ps.

    Args:
        value: quoted value (GHz or Grad/s)
        quote: how the value is quoted

    Returns:
        the angular frequency in rad/ps
    """
    if quote == FrequencyQuote.ORDINARY:
        return 2.0 * math.pi * value * GIGA_PER_TERA
    return value * GIGA_PER_TERA


def from_angular(value: float, quote: FrequencyQuote) -> float:
    """
    Inverse of :func:`to_angular`.
    """
    if quote == FrequencyQuote.ORDINARY:
        return value / (2.0 * math.pi * GIGA_PER_TERA)
    return value / GIGA_PER_TERA
