#
# License: BSD
#
##############################################################################
# Documentation
##############################################################################

"""
A brute force validator for :mod:`twophoton.interferometry`.

The biphoton is held as an explicit tensor of creation operator amplitudes,
:math:`\\psi[p_1, m_1, p_2, m_2]`, over two ports and the frequency bins of
the grid. The beamsplitter is applied slot by slot to the operator labels
and coincidences are counted by summing probabilities of finding one photon
in each output port. No closed form rate expression is used along the way.

The tensor has :math:`4 n^2` entries and the coincidence sum is
quadratic in them, so grids are capped at :data:`MAXIMUM_MODES` bins per axis.
"""

##############################################################################
# Imports
##############################################################################

import dataclasses
import math
import typing

import numpy as np
import py_trees

from . import exceptions
from . import interferometry
from . import spectral

##############################################################################
# Constants
##############################################################################

PORT_A = 0
PORT_B = 1
MAXIMUM_MODES = 65

logger = py_trees.logging.Logger("oracle")

##############################################################################
# State
##############################################################################


def _symmetrise(tensor: np.ndarray) -> np.ndarray:
    return 0.5 * (tensor + tensor.transpose(2, 3, 0, 1))


@dataclasses.dataclass(frozen=True, eq=False)
class DiscreteBiphoton(object):
    """
    Two photons in two ports and ``n_modes`` frequency bins per port.

    The state is :math:`\\sum \\psi[p_1,m_1,p_2,m_2]\\,
    c^\\dagger_{p_1 m_1} c^\\dagger_{p_2 m_2} |0\\rangle` with the amplitude
    symmetric under exchange of the two operator slots.
    """
    amplitudes: np.ndarray

    def __post_init__(self):
        amplitudes = np.array(self.amplitudes, dtype=complex)
        if amplitudes.ndim != 4 or amplitudes.shape[0] != 2 or amplitudes.shape[2] != 2 \
                or amplitudes.shape[1] != amplitudes.shape[3]:
            raise exceptions.ValidationError("biphoton tensor must be (2, n, 2, n) [{}]".format(amplitudes.shape))
        amplitudes.setflags(write=False)
        object.__setattr__(self, "amplitudes", amplitudes)

    @property
    def n_modes(self) -> int:
        return self.amplitudes.shape[1]

    def is_exchange_symmetric(self, atol: float=0.0) -> bool:
        return bool(np.max(np.abs(self.amplitudes - self.amplitudes.transpose(2, 3, 0, 1))) <= atol)

    def norm(self) -> float:
        """
        Squared norm of the state. Every ordered slot pair contributes twice,
        once directly and once through the exchanged pair.
        """
        return float(2.0 * np.sum(np.abs(self.amplitudes) ** 2))

    def normalized(self) -> 'DiscreteBiphoton':
        norm = self.norm()
        if norm <= 0.0:
            raise exceptions.ValidationError("cannot normalise an empty biphoton")
        return DiscreteBiphoton(self.amplitudes / math.sqrt(norm))

##############################################################################
# Operations
##############################################################################


def prepare_input(
    configuration: interferometry.Configuration,
    jsa: spectral.JointAmplitude,
    tau: float
) -> DiscreteBiphoton:
    """
    Load a joint amplitude into the input ports, the first operator slot
    carrying the signal photon. Each bin amplitude is scaled by the grid
    spacing so that tensor probabilities are the grid integrals.

    * ``single_port``: :math:`a^\\dagger_s a^\\dagger_i`, signal phase :math:`e^{i\\nu_s\\tau}`
    * ``two_port``: :math:`a^\\dagger_s b^\\dagger_i`, signal phase :math:`e^{i\\nu_s\\tau}`
    * ``noon``: :math:`(a^\\dagger_s a^\\dagger_i e^{i(\\nu_s+\\nu_i)\\tau} + b^\\dagger_s b^\\dagger_i)/\\sqrt{2}`

    Raises:
        :class:`~twophoton.exceptions.ValidationError`: if the grid exceeds :data:`MAXIMUM_MODES`
    """
    n = jsa.grid.n_points
    if n > MAXIMUM_MODES:
        raise exceptions.ValidationError(
            "oracle grids are limited to {} points per axis [{}]".format(MAXIMUM_MODES, n)
        )
    nu = jsa.grid.axis
    amplitude = jsa.values * jsa.grid.spacing
    raw = np.zeros((2, n, 2, n), dtype=complex)
    if configuration == interferometry.Configuration.SINGLE_PORT:
        raw[PORT_A, :, PORT_A, :] = amplitude * np.exp(1j * nu * tau)[:, None]
    elif configuration == interferometry.Configuration.TWO_PORT:
        raw[PORT_A, :, PORT_B, :] = amplitude * np.exp(1j * nu * tau)[:, None]
    else:
        phase = np.exp(1j * np.add.outer(nu, nu) * tau)
        raw[PORT_A, :, PORT_A, :] = amplitude * phase / math.sqrt(2.0)
        raw[PORT_B, :, PORT_B, :] = amplitude / math.sqrt(2.0)
    return DiscreteBiphoton(_symmetrise(raw))


def apply_bs(state: DiscreteBiphoton, bs: interferometry.BeamSplitterSpec) -> DiscreteBiphoton:
    """
    Transform every creation operator slot with
    :math:`a^\\dagger \\to t a^\\dagger + r b^\\dagger`,
    :math:`b^\\dagger \\to r a^\\dagger + t b^\\dagger`. Amplitude lost by a
    lossy splitter goes to unobserved sink modes, which are traced out.
    """
    transfer = np.array([[bs.t, bs.r], [bs.r, bs.t]], dtype=complex)
    # transfer[input port, output port]
    amplitudes = np.einsum('pa,qb,pmqn->ambn', transfer, transfer, state.amplitudes)
    return DiscreteBiphoton(_symmetrise(amplitudes))


def coincidence_probability(state: DiscreteBiphoton) -> float:
    """
    Probability of one photon in port a and one in port b, summed over
    every pair of bins. The amplitude of :math:`a^\\dagger_x b^\\dagger_y`
    collects both slot orderings.
    """
    a_then_b = state.amplitudes[PORT_A, :, PORT_B, :]
    b_then_a = state.amplitudes[PORT_B, :, PORT_A, :].T
    return float(np.sum(np.abs(a_then_b + b_then_a) ** 2))


def oracle_rate(
    configuration: interferometry.Configuration,
    jsa: spectral.JointAmplitude,
    tau: float,
    bs: typing.Optional[interferometry.BeamSplitterSpec]=None
) -> float:
    """
    Coincidence probability for a configuration, built from the operator
    algebra alone. The input state is not renormalised, so the value is
    directly comparable with the closed form rates.
    """
    bs = bs or interferometry.BeamSplitterSpec.lossless_5050()
    state = apply_bs(prepare_input(configuration, jsa, tau), bs)
    return coincidence_probability(state)
