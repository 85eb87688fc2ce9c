#
# License: BSD
#
##############################################################################
# Documentation
##############################################################################

"""
Coincidence rates behind a (possibly lossy) beamsplitter for the three
interferometer configurations:

* ``single_port``: both photons enter one port, the signal delayed by
  :math:`\\tau`, giving a coincidence peak :math:`R_+(\\tau)`
* ``two_port``: the Hong-Ou-Mandel arrangement, one photon per port, giving
  a coincidence dip :math:`R_-(\\tau)`
* ``noon``: a superposition of both photons in either arm, giving
  :math:`R_N(\\tau)`, which oscillates with the sum frequency

The beamsplitter maps creation operators as
:math:`a^\\dagger \\to t a^\\dagger + r b^\\dagger`,
:math:`b^\\dagger \\to r a^\\dagger + t b^\\dagger`, with constant complex
coefficients and :math:`|t|^2 + |r|^2 \\leq 1`. Loss enters only through that
inequality: the noise operators of a lossy splitter annihilate the vacuum
and add nothing to normally ordered coincidences.

All integrals are plain Riemann sums over the frequency grid. The delay acts
on the signal photon.
"""

##############################################################################
# Imports
##############################################################################

import concurrent.futures
import dataclasses
import enum
import math
import typing

import numpy as np
import py_trees

from . import exceptions
from . import spectral

##############################################################################
# Constants
##############################################################################

MINIMUM_DELAY_POINTS = 3
LOSSLESS_TOLERANCE = 1.0e-12

logger = py_trees.logging.Logger("interferometry")

##############################################################################
# Types
##############################################################################


class Configuration(enum.Enum):
    """Interferometer configuration, i.e. how the photons are injected."""

    SINGLE_PORT = "single_port"
    TWO_PORT = "two_port"
    NOON = "noon"


@dataclasses.dataclass(frozen=True)
class BeamSplitterSpec(object):
    """
    Constant beamsplitter coefficients.

    Args:
        t: transmission coefficient
        r: reflection coefficient

    Raises:
        :class:`~twophoton.exceptions.ValidationError`: if the splitter would
            amplify, i.e. :math:`|t|^2+|r|^2 > 1` or the transfer matrix
            :math:`[[t, r], [r, t]]` is not a contraction
    """
    t: complex
    r: complex

    def __post_init__(self):
        t, r = complex(self.t), complex(self.r)
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "r", r)
        if not all(math.isfinite(v) for v in (t.real, t.imag, r.real, r.imag)):
            raise exceptions.ValidationError("beamsplitter coefficients must be finite [t={}, r={}]".format(t, r))
        power = abs(t) ** 2 + abs(r) ** 2
        if power > 1.0 + LOSSLESS_TOLERANCE:
            raise exceptions.ValidationError(
                "beamsplitter is not passive, |t|^2 + |r|^2 = {:.12g} > 1".format(power)
            )
        # largest singular value squared of [[t, r], [r, t]]
        if power + 2.0 * abs((t * r.conjugate()).real) > 1.0 + LOSSLESS_TOLERANCE:
            raise exceptions.ValidationError(
                "beamsplitter transfer matrix amplifies [t={}, r={}]".format(t, r)
            )

    @classmethod
    def lossless_5050(cls) -> 'BeamSplitterSpec':
        """Balanced lossless preset, :math:`t = i r = i/\\sqrt{2}`."""
        return cls(t=1j / math.sqrt(2.0), r=1.0 / math.sqrt(2.0))

    @property
    def power(self) -> float:
        return abs(self.t) ** 2 + abs(self.r) ** 2

    @property
    def is_lossless(self) -> bool:
        return abs(self.power - 1.0) <= LOSSLESS_TOLERANCE

    @property
    def is_balanced_lossless(self) -> bool:
        return self.is_lossless and abs(abs(self.t) ** 2 - 0.5) <= LOSSLESS_TOLERANCE

    def scaled(self, factor: float) -> 'BeamSplitterSpec':
        """Same phases and ratio, amplitudes multiplied by ``factor``."""
        return BeamSplitterSpec(t=self.t * factor, r=self.r * factor)

    def matrix(self) -> np.ndarray:
        return np.array([[self.t, self.r], [self.r, self.t]], dtype=complex)

    def describe(self) -> str:
        if self == BeamSplitterSpec.lossless_5050():
            return "lossless-5050"
        return "t={:.6g} r={:.6g}".format(self.t, self.r)


@dataclasses.dataclass(frozen=True)
class DelayAxis(object):
    """
    Uniform delays symmetric about zero.

    Args:
        span: largest delay (ps), the axis runs over [-span, span]
        count: number of delays, odd so that zero is sampled
    """
    span: float
    count: int

    def __post_init__(self):
        if isinstance(self.count, bool) or not isinstance(self.count, (int, np.integer)):
            raise exceptions.ValidationError("delay count must be an integer [{}]".format(self.count))
        if self.count < MINIMUM_DELAY_POINTS or self.count % 2 == 0:
            raise exceptions.ValidationError(
                "delay count must be odd and at least {} [{}]".format(MINIMUM_DELAY_POINTS, self.count)
            )
        if not math.isfinite(self.span) or self.span <= 0.0:
            raise exceptions.ValidationError("delay span must be positive [{}]".format(self.span))

    @classmethod
    def from_span(cls, span: float, count: int) -> 'DelayAxis':
        return cls(span=float(span), count=count)

    @property
    def step(self) -> float:
        return 2.0 * self.span / (self.count - 1)

    @property
    def values(self) -> np.ndarray:
        centre = (self.count - 1) // 2
        return (np.arange(self.count, dtype=float) - centre) * self.step


@dataclasses.dataclass(frozen=True)
class Provenance(object):
    """Where a trace came from, used for labels and metrics keys."""
    source: str = ""
    filters: str = "none"
    beamsplitter: str = "lossless-5050"
    label: str = ""
    detection: str = "none"


@dataclasses.dataclass(frozen=True, eq=False)
class Trace(object):
    """
    Coincidence rate sampled over a delay axis.

    Raises:
        :class:`~twophoton.exceptions.InvariantError`: on a negative rate
        :class:`~twophoton.exceptions.ValidationError`: on a length mismatch
    """
    delays: DelayAxis
    rates: np.ndarray
    configuration: Configuration
    provenance: Provenance = Provenance()

    def __post_init__(self):
        rates = np.array(self.rates, dtype=float)
        if rates.shape != (self.delays.count,):
            raise exceptions.ValidationError(
                "trace has {} rates for {} delays".format(rates.shape, self.delays.count)
            )
        if np.any(rates < 0.0) or not np.all(np.isfinite(rates)):
            raise exceptions.InvariantError("coincidence rates must be finite and non-negative")
        rates.setflags(write=False)
        object.__setattr__(self, "rates", rates)

    @property
    def label(self) -> str:
        return self.provenance.label or "{} {}".format(self.configuration.value, self.provenance.filters)

    def reversed(self) -> 'Trace':
        """The same trace read with the delay axis flipped."""
        return Trace(
            delays=self.delays,
            rates=self.rates[::-1],
            configuration=self.configuration,
            provenance=self.provenance
        )

##############################################################################
# Rates
##############################################################################


def _difference_phase(grid: spectral.FrequencyGrid, tau: float) -> np.ndarray:
    nu_s, nu_i = grid.mesh()
    return np.exp(1j * (nu_s - nu_i) * tau)


def _sum_fringe(grid: spectral.FrequencyGrid, tau: float) -> np.ndarray:
    """:math:`|1 + e^{i(\\nu_s+\\nu_i)\\tau}|^2`, written with a cosine so it is even in tau."""
    nu_s, nu_i = grid.mesh()
    return 2.0 * (1.0 + np.cos((nu_s + nu_i) * tau))


def rate_single_port(
    jsa: spectral.JointAmplitude,
    tau: float,
    bs: typing.Optional[BeamSplitterSpec]=None
) -> float:
    """
    :math:`R_+(\\tau) = |t|^2|r|^2 \\sum |\\phi(s,i) e^{i(s-i)\\tau} + \\phi(i,s)|^2 \\Delta^2`

    Args:
        jsa: joint amplitude
        tau: delay on the signal photon (ps)
        bs: beamsplitter, lossless 50:50 if not given
    """
    bs = bs or BeamSplitterSpec.lossless_5050()
    total = np.sum(np.abs(jsa.values * _difference_phase(jsa.grid, tau) + jsa.swapped()) ** 2)
    return float(abs(bs.t) ** 2 * abs(bs.r) ** 2 * total * jsa.grid.cell_area)


def rate_two_port(
    jsa: spectral.JointAmplitude,
    tau: float,
    bs: typing.Optional[BeamSplitterSpec]=None
) -> float:
    """
    Coincidences for one photon per input port. Expanded, the summand is
    :math:`|t|^4|\\phi|^2 + |r|^4|\\phi^T|^2 + 2\\,\\mathrm{Re}[t^2 r^{*2}
    \\phi\\,\\phi^{T*} e^{i(s-i)\\tau}]`, which for the 50:50 preset is the
    familiar :math:`R_-(\\tau)`.

    Args:
        jsa: joint amplitude
        tau: delay on the signal photon (ps)
        bs: beamsplitter, lossless 50:50 if not given
    """
    bs = bs or BeamSplitterSpec.lossless_5050()
    amplitude = bs.t ** 2 * jsa.values * _difference_phase(jsa.grid, tau) + bs.r ** 2 * jsa.swapped()
    return float(np.sum(np.abs(amplitude) ** 2) * jsa.grid.cell_area)


def rate_noon(
    jsa: spectral.JointAmplitude,
    tau: float,
    bs: typing.Optional[BeamSplitterSpec]=None
) -> float:
    """
    :math:`R_N(\\tau) = \\tfrac{1}{2}|t|^2|r|^2 \\sum |\\phi + \\phi^T|^2
    |1 + e^{i(s+i)\\tau}|^2 \\Delta^2`

    Only detunings enter the fringe, the optical carrier at twice the
    central frequency is dropped.

    Args:
        jsa: joint amplitude
        tau: delay on the signal photon (ps)
        bs: beamsplitter, lossless 50:50 if not given
    """
    bs = bs or BeamSplitterSpec.lossless_5050()
    symmetric = np.abs(jsa.values + jsa.swapped()) ** 2
    total = np.sum(symmetric * _sum_fringe(jsa.grid, tau))
    return float(0.5 * abs(bs.t) ** 2 * abs(bs.r) ** 2 * total * jsa.grid.cell_area)


RATES = {
    Configuration.SINGLE_PORT: rate_single_port,
    Configuration.TWO_PORT: rate_two_port,
    Configuration.NOON: rate_noon,
}


def rate(
    configuration: Configuration,
    jsa: spectral.JointAmplitude,
    tau: float,
    bs: typing.Optional[BeamSplitterSpec]=None
) -> float:
    """Dispatch to the rate of the given configuration."""
    return RATES[configuration](jsa, tau, bs)


def incoherent_baseline(
    configuration: Configuration,
    jsa: spectral.JointAmplitude,
    bs: typing.Optional[BeamSplitterSpec]=None
) -> float:
    """
    Large delay limit of a rate, i.e. the rate with the interference term
    dropped.
    """
    bs = bs or BeamSplitterSpec.lossless_5050()
    intensity = jsa.intensity()
    swapped = intensity.T
    if configuration == Configuration.SINGLE_PORT:
        total = abs(bs.t) ** 2 * abs(bs.r) ** 2 * np.sum(intensity + swapped)
    elif configuration == Configuration.TWO_PORT:
        total = np.sum(abs(bs.t) ** 4 * intensity + abs(bs.r) ** 4 * swapped)
    else:
        total = abs(bs.t) ** 2 * abs(bs.r) ** 2 * np.sum(np.abs(jsa.values + jsa.swapped()) ** 2)
    return float(total * jsa.grid.cell_area)


def scan_trace(
    configuration: Configuration,
    jsa: spectral.JointAmplitude,
    delays: DelayAxis,
    bs: typing.Optional[BeamSplitterSpec]=None,
    provenance: typing.Optional[Provenance]=None,
    workers: int=1
) -> Trace:
    """
    Evaluate a rate at every delay of the axis.

    Args:
        configuration: interferometer configuration
        jsa: joint amplitude, shared read only between workers
        delays: delay axis
        bs: beamsplitter, lossless 50:50 if not given
        provenance: descriptors carried by the trace
        workers: size of the thread pool, 1 evaluates in the calling thread

    Returns:
        the trace, rates ordered as the delays
    """
    bs = bs or BeamSplitterSpec.lossless_5050()
    taus = [float(tau) for tau in delays.values]
    function = RATES[configuration]
    if workers > 1:
        with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as executor:
            rates = list(executor.map(lambda tau: function(jsa, tau, bs), taus))
    else:
        rates = [function(jsa, tau, bs) for tau in taus]
    logger.debug("scan_trace: {} over {} delays".format(configuration.value, delays.count))
    return Trace(
        delays=delays,
        rates=np.array(rates),
        configuration=configuration,
        provenance=provenance or Provenance(beamsplitter=bs.describe())
    )

##############################################################################
# Sum Frequency Marginal
##############################################################################


def sum_frequency_marginal(jsa: spectral.JointAmplitude) -> typing.Tuple[np.ndarray, np.ndarray]:
    """
    Marginal of the symmetrised intensity along the sum frequency,
    :math:`M(\\nu_+) = \\sum_{\\nu_s+\\nu_i=\\nu_+} \\tfrac14 |\\phi+\\phi^T|^2 \\Delta`,
    one value per grid anti-diagonal.

    Returns:
        the sum frequencies (2n - 1 values) and the marginal
    """
    n = jsa.grid.n_points
    weights = 0.25 * np.abs(jsa.values + jsa.swapped()) ** 2
    index = np.add.outer(np.arange(n), np.arange(n))
    marginal = np.bincount(index.ravel(), weights=weights.ravel(), minlength=2 * n - 1)
    nu_plus = (np.arange(2 * n - 1, dtype=float) - (n - 1)) * jsa.grid.spacing
    return nu_plus, marginal * jsa.grid.spacing


def noon_via_sum_marginal(
    jsa: spectral.JointAmplitude,
    delays: DelayAxis,
    bs: typing.Optional[BeamSplitterSpec]=None,
    provenance: typing.Optional[Provenance]=None
) -> Trace:
    """
    The N00N trace as a cosine transform of the sum frequency marginal,
    :math:`R_N(\\tau) = \\sum M(\\nu_+)(1 + \\cos \\nu_+\\tau) \\Delta`.

    Raises:
        :class:`~twophoton.exceptions.ValidationError`: unless the splitter is lossless 50:50
    """
    bs = bs or BeamSplitterSpec.lossless_5050()
    if not bs.is_balanced_lossless:
        raise exceptions.ValidationError(
            "the sum frequency form needs a lossless 50:50 beamsplitter [{}]".format(bs.describe())
        )
    nu_plus, marginal = sum_frequency_marginal(jsa)
    taus = delays.values
    fringe = 1.0 + np.cos(np.outer(taus, nu_plus))
    rates = fringe @ marginal * jsa.grid.spacing
    return Trace(
        delays=delays,
        rates=rates,
        configuration=Configuration.NOON,
        provenance=provenance or Provenance(beamsplitter=bs.describe())
    )
