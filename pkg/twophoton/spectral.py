#
# License: BSD
#
##############################################################################
# Documentation
##############################################################################

"""
The SPDC joint spectral amplitude on a discrete frequency grid.

.. math::

   \\Phi(\\nu_s, \\nu_i) = E_p(\\nu_s + \\nu_i)\\,
       \\mathrm{sinc}(x)\\,e^{-ix}, \\qquad
   x = \\frac{\\eta_s L \\nu_s + \\eta_i L \\nu_i}{2}

with the Gaussian pump envelope
:math:`E_p = \\exp[-2 T_p^2 (\\nu_s + \\nu_i)^2]`. Detunings are angular
frequencies in rad/ps measured from the degenerate frequency, times are in ps.
Only the products :math:`\\eta_{s,i} L` enter, so those are what a
:class:`SourceParams` stores.
"""

##############################################################################
# Imports
##############################################################################

import dataclasses
import enum
import functools
import math
import typing

import numpy as np
import py_trees

from . import exceptions

##############################################################################
# Constants
##############################################################################

DEFAULT_GRID_POINTS = 513
MINIMUM_GRID_POINTS = 8
HALF_WIDTH_FACTOR = 6.0
SINC_SERIES_THRESHOLD = 1.0e-4

logger = py_trees.logging.Logger("spectral")

##############################################################################
# Grid
##############################################################################


@dataclasses.dataclass(frozen=True)
class FrequencyGrid(object):
    """
    Uniform, square grid of signal/idler detunings, symmetric about zero.

    Args:
        n_points: samples per axis (odd, at least eight so zero is on the grid)
        half_width: extent of each axis either side of zero (rad/ps)

    Raises:
        :class:`~twophoton.exceptions.ValidationError`: on an even or too small
            point count, or a non-positive half width
    """
    n_points: int
    half_width: float

    def __post_init__(self):
        if isinstance(self.n_points, bool) or not isinstance(self.n_points, (int, np.integer)):
            raise exceptions.ValidationError("grid points must be an integer [{}]".format(self.n_points))
        if self.n_points < MINIMUM_GRID_POINTS:
            raise exceptions.ValidationError(
                "grid needs at least {} points per axis [{}]".format(MINIMUM_GRID_POINTS, self.n_points)
            )
        if self.n_points % 2 == 0:
            raise exceptions.ValidationError(
                "grid points must be odd so that zero detuning is sampled [{}]".format(self.n_points)
            )
        if not math.isfinite(self.half_width) or self.half_width <= 0.0:
            raise exceptions.ValidationError(
                "grid half width must be positive and finite [{}]".format(self.half_width)
            )

    @property
    def spacing(self) -> float:
        return 2.0 * self.half_width / (self.n_points - 1)

    @property
    def cell_area(self) -> float:
        return self.spacing ** 2

    @functools.cached_property
    def axis(self) -> np.ndarray:
        """
        Detunings, built from integer offsets so that the axis is exactly
        antisymmetric: ``axis[k] == -axis[n - 1 - k]``.
        """
        centre = (self.n_points - 1) // 2
        values = (np.arange(self.n_points, dtype=float) - centre) * self.spacing
        values.setflags(write=False)
        return values

    def mesh(self) -> typing.Tuple[np.ndarray, np.ndarray]:
        """
        Signal detunings along the first index, idler along the second.
        """
        return self.axis[:, None], self.axis[None, :]


def build_grid(n_points: int, half_width: float) -> FrequencyGrid:
    """
    Convenience constructor, see :class:`FrequencyGrid`.
    """
    return FrequencyGrid(n_points=n_points, half_width=float(half_width))

##############################################################################
# Source
##############################################################################


@dataclasses.dataclass(frozen=True)
class SourceParams(object):
    """
    Parameters of the down conversion source.

    Args:
        pump_duration: pump pulse duration :math:`T_p` (ps)
        eta_s_length: group velocity mismatch times crystal length for the signal (ps)
        eta_i_length: the same for the idler (ps)
        central_frequency: degenerate frequency :math:`\\omega_0` (rad/ps), metadata only
    """
    pump_duration: float
    eta_s_length: float
    eta_i_length: float
    central_frequency: float = 0.0

    def __post_init__(self):
        if not math.isfinite(self.pump_duration) or self.pump_duration <= 0.0:
            raise exceptions.ValidationError(
                "pump duration must be positive and finite [{}]".format(self.pump_duration)
            )
        for name in ("eta_s_length", "eta_i_length", "central_frequency"):
            if not math.isfinite(getattr(self, name)):
                raise exceptions.ValidationError("{} must be finite [{}]".format(name, getattr(self, name)))

    @property
    def exchange_symmetric(self) -> bool:
        return self.eta_s_length == self.eta_i_length

    def describe(self) -> str:
        return "Tp={:g}ps etaL=({:g},{:g})ps".format(
            self.pump_duration, self.eta_s_length, self.eta_i_length
        )

##############################################################################
# Amplitude
##############################################################################


class NormConvention(enum.Enum):
    """Normalisation state of a :class:`JointAmplitude`."""

    UNNORMALIZED = "unnormalized"
    UNIT_L2 = "unit_l2"


@dataclasses.dataclass(frozen=True, eq=False)
class JointAmplitude(object):
    """
    Complex two photon amplitude sampled on a :class:`FrequencyGrid`.
    The first index runs over the signal, the second over the idler. The
    values array is made read only on construction.
    """
    grid: FrequencyGrid
    values: np.ndarray
    norm_convention: NormConvention = NormConvention.UNNORMALIZED

    def __post_init__(self):
        values = np.asarray(self.values, dtype=complex)
        expected = (self.grid.n_points, self.grid.n_points)
        if values.shape != expected:
            raise exceptions.ValidationError(
                "amplitude shape {} does not match the grid {}".format(values.shape, expected)
            )
        if not np.all(np.isfinite(values)):
            raise exceptions.ValidationError("amplitude contains non-finite values")
        if values is self.values and values.flags.writeable:
            values = values.copy()
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    def intensity(self) -> np.ndarray:
        """The joint spectral intensity :math:`|\\phi|^2`."""
        return np.abs(self.values) ** 2

    def total_probability(self) -> float:
        """:math:`\\sum |\\phi|^2 \\Delta^2`"""
        return float(np.sum(self.intensity()) * self.grid.cell_area)

    def swapped(self) -> np.ndarray:
        """Amplitude with the photons exchanged, :math:`\\phi(\\nu_i, \\nu_s)`."""
        return self.values.T

    def is_exchange_symmetric(self, rtol: float=1.0e-14) -> bool:
        scale = float(np.max(np.abs(self.values))) if self.values.size else 0.0
        return bool(np.max(np.abs(self.values - self.values.T)) <= rtol * scale)

    def normalized(self) -> 'JointAmplitude':
        """
        Rescale to unit L2 norm on the grid.

        Raises:
            :class:`~twophoton.exceptions.ValidationError`: if the amplitude vanishes
        """
        total = self.total_probability()
        if total <= 0.0:
            raise exceptions.ValidationError("cannot normalise a vanishing amplitude")
        return JointAmplitude(
            grid=self.grid,
            values=self.values / math.sqrt(total),
            norm_convention=NormConvention.UNIT_L2
        )

##############################################################################
# Model
##############################################################################


def pump_envelope(nu_s, nu_i, pump_duration: float):
    """
    Gaussian pump envelope :math:`\\exp[-2 T_p^2 (\\nu_s+\\nu_i)^2]`.

    Works on scalars and broadcasts over arrays.
    """
    if pump_duration <= 0.0:
        raise exceptions.ValidationError("pump duration must be positive [{}]".format(pump_duration))
    nu_plus = np.add(nu_s, nu_i)
    return np.exp(-2.0 * pump_duration ** 2 * nu_plus ** 2)


def sinc(x):
    """
    Unnormalised :math:`\\sin(x)/x`, switching to its Taylor series close to
    the removable singularity.
    """
    x = np.asarray(x, dtype=float)
    small = np.abs(x) < SINC_SERIES_THRESHOLD
    safe = np.where(small, 1.0, x)
    x2 = x * x
    result = np.where(small, 1.0 - x2 / 6.0 + x2 * x2 / 120.0, np.sin(safe) / safe)
    if result.ndim == 0:
        return float(result)
    return result


def phase_matching(nu_s, nu_i, eta_s_length: float, eta_i_length: float):
    """
    Phase matching amplitude :math:`\\mathrm{sinc}(x) e^{-ix}`.

    Both terms of :math:`x` are formed symmetrically, so swapping the
    arguments together with the coefficients reproduces the value bit for
    bit.
    """
    x = (eta_s_length * np.asarray(nu_s, dtype=float) + eta_i_length * np.asarray(nu_i, dtype=float)) / 2.0
    result = sinc(x) * np.exp(-1j * x)
    if np.ndim(result) == 0:
        return complex(result)
    return result


def build_jsa(
    grid: FrequencyGrid,
    source: SourceParams,
    normalize: bool=True
) -> JointAmplitude:
    """
    Sample the joint spectral amplitude on the grid.

    Args:
        grid: frequency grid
        source: source parameters
        normalize: rescale to unit L2 on the grid

    Returns:
        the sampled amplitude
    """
    nu_s, nu_i = grid.mesh()
    values = pump_envelope(nu_s, nu_i, source.pump_duration) * phase_matching(
        nu_s, nu_i, source.eta_s_length, source.eta_i_length
    )
    jsa = JointAmplitude(grid=grid, values=values)
    logger.debug("build_jsa: {} on {} points, half width {:.6g} rad/ps".format(
        source.describe(), grid.n_points, grid.half_width)
    )
    return jsa.normalized() if normalize else jsa


def default_half_width(
    source: SourceParams,
    filter_bandwidths: typing.Iterable[float]=(),
    detection_bandwidth: typing.Optional[float]=None
) -> float:
    """
    Grid extent covering the pump bandwidth, the sinc lobes, any filter
    notches and the detection window.

    Args:
        source: source parameters
        filter_bandwidths: notch widths (rad/ps)
        detection_bandwidth: width of the detection window (rad/ps), if any

    Returns:
        the half width (rad/ps)
    """
    scales = [1.0 / source.pump_duration]
    scales.extend(float(sigma) for sigma in filter_bandwidths)
    scales.append(
        2.0 * math.pi / (abs(source.eta_s_length) + abs(source.eta_i_length) + np.finfo(float).eps)
    )
    if detection_bandwidth is not None:
        scales.append(1.5 * detection_bandwidth)
    return HALF_WIDTH_FACTOR * max(scales)


def resample_distance(coarse: JointAmplitude, fine: JointAmplitude) -> float:
    """
    L2 distance between a coarse amplitude and a refined one restricted to
    the coarse sample points, both unit normalised on their own grids.

    Args:
        coarse: amplitude on ``n`` points
        fine: amplitude on ``2n - 1`` points over the same extent

    Raises:
        :class:`~twophoton.exceptions.ValidationError`: if the grids are not nested
    """
    if fine.grid.n_points != 2 * coarse.grid.n_points - 1 or fine.grid.half_width != coarse.grid.half_width:
        raise exceptions.ValidationError(
            "grids are not nested [{} vs {}]".format(coarse.grid, fine.grid)
        )
    a = coarse.normalized().values
    b = fine.normalized().values[::2, ::2]
    return float(math.sqrt(np.sum(np.abs(a - b) ** 2) * coarse.grid.cell_area))
