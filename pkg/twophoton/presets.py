#
# License: BSD
#
##############################################################################
# Documentation
##############################################################################

"""
Built in scenarios: filtered spectra and the coincidence trace studies.

Common parameters: pump duration 5 ps, all notches 20 GHz wide and centred
on the degenerate frequency. Symmetric sources use
:math:`\\eta_s L = \\eta_i L = T_p`, asymmetric ones
:math:`\\eta_s L = \\eta_i L / 2 = T_p`.

* ``fig2a``-``fig2d``: filtered joint spectral intensities (JSI dumps on)
* ``fig3-symmetric``, ``fig3-asymmetric``: the nine coincidence traces
  (three configurations times no filter, eTPA and one photon loss) with the
  comparisons that quantify which traces overlap

No preset sets a detection window. The difference frequency extent of a
symmetric source is bounded by the grid half width alone.
"""

##############################################################################
# Imports
##############################################################################

import typing

from . import exceptions
from . import filters
from . import interferometry
from . import scenario
from . import spectral
from . import units

##############################################################################
# Parameters
##############################################################################

PUMP_DURATION_PS = 5.0
NOTCH_BANDWIDTH_GHZ = 20.0

ALL_CONFIGURATIONS = (
    interferometry.Configuration.SINGLE_PORT,
    interferometry.Configuration.TWO_PORT,
    interferometry.Configuration.NOON,
)


def _source(symmetric: bool) -> spectral.SourceParams:
    return spectral.SourceParams(
        pump_duration=PUMP_DURATION_PS,
        eta_s_length=PUMP_DURATION_PS,
        eta_i_length=PUMP_DURATION_PS if symmetric else 2.0 * PUMP_DURATION_PS
    )


def _notches() -> typing.Tuple[typing.Tuple[str, filters.FilterSpec], ...]:
    sigma = units.to_angular(NOTCH_BANDWIDTH_GHZ, units.FrequencyQuote.ORDINARY)
    return (
        ("tpa", filters.FilterSpec(kind=filters.FilterKind.TWO_PHOTON, bandwidth=sigma)),
        ("signal", filters.FilterSpec(kind=filters.FilterKind.SINGLE_SIGNAL, bandwidth=sigma)),
        ("idler", filters.FilterSpec(kind=filters.FilterKind.SINGLE_IDLER, bandwidth=sigma)),
    )


def _key(configuration: interferometry.Configuration, filter_set: str) -> scenario.TraceKey:
    return scenario.TraceKey(configuration=configuration, filter_set=filter_set)

##############################################################################
# Presets
##############################################################################


def _spectra(name: str, symmetric: bool, filter_set: typing.Tuple[str, typing.Tuple[str, ...]]) -> scenario.Scenario:
    noon = interferometry.Configuration.NOON
    return scenario.Scenario(
        name=name,
        source=_source(symmetric),
        configurations=ALL_CONFIGURATIONS,
        named_filters=_notches(),
        filter_sets=((scenario.NO_FILTERS, ()), filter_set),
        comparisons=(
            scenario.Comparison(
                kind=scenario.ComparisonKind.DISTANCE,
                name="noon_{}".format(filter_set[0]),
                first=_key(noon, scenario.NO_FILTERS),
                second=_key(noon, filter_set[0])
            ),
        ),
        outputs=scenario.OutputSettings(directory=name, jsi=True)
    )


def fig2a() -> scenario.Scenario:
    """Symmetric source, eTPA notch: a groove along the anti-diagonal."""
    return _spectra("fig2a", symmetric=True, filter_set=("etpa", ("tpa",)))


def fig2b() -> scenario.Scenario:
    """Symmetric source, loss on the signal photon: a vertical groove."""
    return _spectra("fig2b", symmetric=True, filter_set=("single", ("signal",)))


def fig2c() -> scenario.Scenario:
    """Asymmetric source, loss on both photons: horizontal and vertical grooves."""
    return _spectra("fig2c", symmetric=False, filter_set=("pair", ("signal", "idler")))


def fig2d() -> scenario.Scenario:
    """Asymmetric source, every notch at once."""
    return _spectra("fig2d", symmetric=False, filter_set=("all", ("tpa", "signal", "idler")))


def _traces(name: str, symmetric: bool) -> scenario.Scenario:
    single_port = interferometry.Configuration.SINGLE_PORT
    two_port = interferometry.Configuration.TWO_PORT
    noon = interferometry.Configuration.NOON
    distance = scenario.ComparisonKind.DISTANCE
    return scenario.Scenario(
        name=name,
        source=_source(symmetric),
        configurations=ALL_CONFIGURATIONS,
        named_filters=_notches()[:2],
        filter_sets=(
            (scenario.NO_FILTERS, ()),
            ("etpa", ("tpa",)),
            ("single", ("signal",)),
        ),
        comparisons=(
            scenario.Comparison(distance, "single_port_etpa", _key(single_port, "none"), _key(single_port, "etpa")),
            scenario.Comparison(distance, "two_port_etpa", _key(two_port, "none"), _key(two_port, "etpa")),
            scenario.Comparison(distance, "noon_single", _key(noon, "none"), _key(noon, "single")),
            scenario.Comparison(distance, "noon_etpa", _key(noon, "none"), _key(noon, "etpa")),
            scenario.Comparison(
                scenario.ComparisonKind.TAIL_RATIO,
                "noon_etpa_vs_single_port_single",
                _key(noon, "etpa"),
                _key(single_port, "single")
            ),
        ),
        outputs=scenario.OutputSettings(directory=name)
    )


def fig3_symmetric() -> scenario.Scenario:
    """Nine traces from a symmetric source."""
    return _traces("fig3-symmetric", symmetric=True)


def fig3_asymmetric() -> scenario.Scenario:
    """Nine traces from an asymmetric source, features shifted by -2.5 ps."""
    return _traces("fig3-asymmetric", symmetric=False)


PRESETS = {
    "fig2a": fig2a,
    "fig2b": fig2b,
    "fig2c": fig2c,
    "fig2d": fig2d,
    "fig3-symmetric": fig3_symmetric,
    "fig3-asymmetric": fig3_asymmetric,
}


def names() -> typing.List[str]:
    return list(PRESETS.keys())


def preset(name: str) -> scenario.Scenario:
    """
    Look up a preset by name.

    Raises:
        :class:`~twophoton.exceptions.ValidationError`: for an unknown name
    """
    try:
        return PRESETS[name]()
    except KeyError as e:
        raise exceptions.ValidationError(
            "unknown preset '{}', expected one of {}".format(name, names())
        ) from e
