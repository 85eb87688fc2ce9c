#
# License: BSD
#
##############################################################################
# Documentation
##############################################################################

"""
The sample (and the detection optics) as amplitude filters acting on the
joint spectral amplitude.

* ``two_photon``: entangled two photon absorption, a notch on the sum
  frequency, :math:`1 - \\exp[-(\\nu_s+\\nu_i)^2 / 2\\sigma^2]`
* ``single_signal``/``single_idler``: linear loss of one photon,
  :math:`1 - \\exp[-(\\nu-\\nu^0)^2 / 2\\sigma^2]`
* ``bandpass``: the Gaussian collection window of the detectors, applied to
  both photons, :math:`\\exp[-(\\nu_s^2+\\nu_i^2) / 4\\sigma^2]`

Filters multiply the amplitude, there is no renormalisation afterwards.
The fraction of pairs that survive is reported alongside the result.
"""

##############################################################################
# Imports
##############################################################################

import dataclasses
import enum
import math
import typing

import numpy as np
import py_trees

from . import exceptions
from . import spectral

##############################################################################
# Filters
##############################################################################

logger = py_trees.logging.Logger("filters")


class FilterKind(enum.Enum):
    """Which photon(s) a filter acts on."""

    TWO_PHOTON = "two_photon"
    """Notch on the two photon resonance (eTPA)."""
    SINGLE_SIGNAL = "single_signal"
    """Notch on the signal photon alone."""
    SINGLE_IDLER = "single_idler"
    """Notch on the idler photon alone."""
    BANDPASS = "bandpass"
    """Gaussian detection window on both photons."""


@dataclasses.dataclass(frozen=True)
class FilterSpec(object):
    """
    Args:
        kind: filter kind
        bandwidth: notch (or window) width :math:`\\sigma` (rad/ps)
        center: notch center :math:`\\nu^0` (rad/ps), single photon notches only
    """
    kind: FilterKind
    bandwidth: float
    center: float = 0.0

    def __post_init__(self):
        if not isinstance(self.kind, FilterKind):
            raise exceptions.ValidationError("unknown filter kind [{}]".format(self.kind))
        if not math.isfinite(self.bandwidth) or self.bandwidth <= 0.0:
            raise exceptions.ValidationError(
                "filter bandwidth must be positive and finite [{}]".format(self.bandwidth)
            )
        if not math.isfinite(self.center):
            raise exceptions.ValidationError("filter center must be finite [{}]".format(self.center))
        if self.kind in (FilterKind.TWO_PHOTON, FilterKind.BANDPASS) and self.center != 0.0:
            raise exceptions.ValidationError(
                "{} filters are centred on zero [{}]".format(self.kind.value, self.center)
            )

    def sort_key(self) -> typing.Tuple[str, float, float]:
        return (self.kind.value, self.bandwidth, self.center)

    def describe(self) -> str:
        if self.kind in (FilterKind.SINGLE_SIGNAL, FilterKind.SINGLE_IDLER) and self.center != 0.0:
            return "{}(σ={:.4g}, ν0={:.4g})".format(self.kind.value, self.bandwidth, self.center)
        return "{}(σ={:.4g})".format(self.kind.value, self.bandwidth)


@dataclasses.dataclass(frozen=True)
class FilterOutcome(object):
    """
    A filtered amplitude together with the probability that a pair survives
    the filters.
    """
    jsa: spectral.JointAmplitude
    survival: float


def filter_value(spec: FilterSpec, nu_s, nu_i):
    """
    Amplitude transmission of a filter at the given detunings. Broadcasts over
    arrays.

    Args:
        spec: the filter
        nu_s: signal detuning(s) (rad/ps)
        nu_i: idler detuning(s) (rad/ps)

    Returns:
        transmission in [0, 1]
    """
    two_sigma_squared = 2.0 * spec.bandwidth ** 2
    if spec.kind == FilterKind.TWO_PHOTON:
        value = -np.expm1(-np.add(nu_s, nu_i) ** 2 / two_sigma_squared)
    elif spec.kind == FilterKind.SINGLE_SIGNAL:
        value = -np.expm1(-np.subtract(nu_s, spec.center) ** 2 / two_sigma_squared)
        value = value + np.zeros_like(np.asarray(nu_i, dtype=float))
    elif spec.kind == FilterKind.SINGLE_IDLER:
        value = -np.expm1(-np.subtract(nu_i, spec.center) ** 2 / two_sigma_squared)
        value = value + np.zeros_like(np.asarray(nu_s, dtype=float))
    else:
        value = np.exp(-(np.square(nu_s) + np.square(nu_i)) / (2.0 * two_sigma_squared))
    if np.ndim(value) == 0:
        return float(value)
    return value


def apply_filters(
    jsa: spectral.JointAmplitude,
    specs: typing.Sequence[FilterSpec]
) -> FilterOutcome:
    """
    Multiply the amplitude by every filter in ``specs``. Filters are combined
    in a canonical order, so permuting ``specs`` gives a bit identical
    result.

    Args:
        jsa: input amplitude
        specs: filters, possibly empty

    Returns:
        the filtered amplitude (unnormalized) and its survival probability
    """
    if not specs:
        return FilterOutcome(jsa=jsa, survival=1.0)
    nu_s, nu_i = jsa.grid.mesh()
    transmission = np.ones((jsa.grid.n_points, jsa.grid.n_points))
    for spec in sorted(specs, key=FilterSpec.sort_key):
        transmission = transmission * filter_value(spec, nu_s, nu_i)
    filtered = spectral.JointAmplitude(
        grid=jsa.grid,
        values=jsa.values * transmission,
        norm_convention=spectral.NormConvention.UNNORMALIZED
    )
    before = jsa.total_probability()
    survival = filtered.total_probability() / before if before > 0.0 else 0.0
    logger.debug("apply_filters: [{}] survival {:.6g}".format(describe_filters(specs), survival))
    return FilterOutcome(jsa=filtered, survival=survival)


def describe_filters(specs: typing.Sequence[FilterSpec]) -> str:
    if not specs:
        return "none"
    return " ".join(spec.describe() for spec in sorted(specs, key=FilterSpec.sort_key))
