#
# License: BSD
#
##############################################################################
# Documentation
##############################################################################

"""
Features of coincidence traces: baseline, extremum (peak or dip), visibility,
half and tail widths, plus shape comparisons between traces.

All features other than the baseline and extremum value are invariant under
an affine rescaling of the rates with a positive factor.
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
from . import interferometry

##############################################################################
# Constants
##############################################################################

BASELINE_FRACTION = 0.1
HALF_LEVEL = 0.5
TAIL_LEVEL = 0.1
FEATURELESS_TOLERANCE = 1.0e-9
MINIMUM_SAMPLES = 21

logger = py_trees.logging.Logger("analysis")

##############################################################################
# Metrics
##############################################################################


class FeatureKind(enum.Enum):
    PEAK = "peak"
    DIP = "dip"
    FEATURELESS = "featureless"


@dataclasses.dataclass(frozen=True)
class TraceMetrics(object):
    """
    Quantitative features of a trace.

    Args:
        baseline: median of the outer samples on both sides
        extremum_value: refined rate at the extremum
        extremum_delay: refined delay of the extremum (ps)
        visibility: height of the feature relative to extremum plus baseline
        width_half: full width at half the feature height (ps)
        tail_width: full width at the tail level of the feature height (ps)
        kind: peak, dip or featureless
        resolved: both crossings were found inside the axis and the span
            covers at least four half widths
    """
    baseline: float
    extremum_value: float
    extremum_delay: float
    visibility: float
    width_half: float
    tail_width: float
    kind: FeatureKind
    resolved: bool

    @property
    def featureless(self) -> bool:
        return self.kind == FeatureKind.FEATURELESS

    def as_dict(self) -> typing.Dict[str, typing.Union[float, str, bool]]:
        return {
            "baseline": self.baseline,
            "extremum_value": self.extremum_value,
            "extremum_delay_ps": self.extremum_delay,
            "visibility": self.visibility,
            "width_half_ps": self.width_half,
            "tail_width_ps": self.tail_width,
            "kind": self.kind.value,
            "resolved": self.resolved,
        }

##############################################################################
# Helpers
##############################################################################


def _baseline(rates: np.ndarray) -> float:
    k = max(1, int(round(BASELINE_FRACTION * rates.size)))
    return float(np.median(np.concatenate([rates[:k], rates[-k:]])))


def _grid_extremum(rates: np.ndarray, baseline: float) -> typing.Tuple[int, float]:
    deviation = rates - baseline
    index = int(np.argmax(np.abs(deviation)))
    return index, float(deviation[index])


def _is_featureless(rates: np.ndarray, baseline: float, height: float) -> bool:
    scale = max(abs(baseline), float(np.max(np.abs(rates))))
    return scale == 0.0 or abs(height) <= FEATURELESS_TOLERANCE * scale


def _parabolic_refinement(deviation: np.ndarray, index: int) -> typing.Tuple[float, float]:
    """
    Vertex of the parabola through the extremum and its neighbours.

    Returns:
        offset in samples (within half a sample) and the deviation at the vertex
    """
    if index == 0 or index == deviation.size - 1:
        return 0.0, float(deviation[index])
    y0, y1, y2 = deviation[index - 1], deviation[index], deviation[index + 1]
    curvature = y0 - 2.0 * y1 + y2
    if curvature == 0.0:
        return 0.0, float(y1)
    offset = min(0.5, max(-0.5, 0.5 * (y0 - y2) / curvature))
    return float(offset), float(y1 - 0.25 * (y0 - y2) * offset)


def _crossing(
    delays: np.ndarray,
    fraction: np.ndarray,
    index: int,
    level: float,
    direction: int
) -> typing.Tuple[float, bool]:
    """
    Walk from the extremum until the normalised deviation drops below the
    level, then interpolate linearly between the straddling samples.
    """
    i = index
    while 0 <= i + direction < fraction.size and fraction[i + direction] >= level:
        i += direction
    j = i + direction
    if not 0 <= j < fraction.size:
        return float(delays[i]), False
    weight = (fraction[i] - level) / (fraction[i] - fraction[j])
    return float(delays[i] + weight * (delays[j] - delays[i])), True


def _width(delays, fraction, index, level) -> typing.Tuple[float, bool]:
    left, left_found = _crossing(delays, fraction, index, level, -1)
    right, right_found = _crossing(delays, fraction, index, level, +1)
    return right - left, left_found and right_found

##############################################################################
# Operations
##############################################################################


def trace_metrics(trace: interferometry.Trace, tail_level: float=TAIL_LEVEL) -> TraceMetrics:
    """
    Extract the features of a trace. The extremum is the sample farthest
    from the baseline, refined with a three point parabola; widths come from
    linearly interpolated level crossings.

    Args:
        trace: the trace to analyse
        tail_level: fraction of the feature height defining the tail width

    Returns:
        the metrics, with kind ``featureless`` when nothing stands out from the baseline

    Raises:
        :class:`~twophoton.exceptions.ValidationError`: on too short a trace or a bad tail level
    """
    if trace.delays.count < MINIMUM_SAMPLES:
        raise exceptions.ValidationError(
            "need at least {} delays to analyse a trace [{}]".format(MINIMUM_SAMPLES, trace.delays.count)
        )
    if not 0.0 < tail_level < HALF_LEVEL:
        raise exceptions.ValidationError("tail level must lie in (0, 0.5) [{}]".format(tail_level))
    rates = trace.rates
    delays = trace.delays.values
    baseline = _baseline(rates)
    index, height = _grid_extremum(rates, baseline)
    if _is_featureless(rates, baseline, height):
        logger.debug("trace_metrics: {} is featureless".format(trace.label))
        return TraceMetrics(
            baseline=baseline,
            extremum_value=baseline,
            extremum_delay=0.0,
            visibility=0.0,
            width_half=0.0,
            tail_width=0.0,
            kind=FeatureKind.FEATURELESS,
            resolved=False
        )
    deviation = rates - baseline
    offset, refined = _parabolic_refinement(deviation, index)
    extremum_value = baseline + refined
    kind = FeatureKind.PEAK if height > 0.0 else FeatureKind.DIP
    denominator = extremum_value + baseline
    visibility = abs(refined) / denominator if denominator > 0.0 else 0.0
    fraction = deviation / height
    width_half, half_found = _width(delays, fraction, index, HALF_LEVEL)
    tail_width, tail_found = _width(delays, fraction, index, tail_level)
    resolved = half_found and tail_found and 2.0 * trace.delays.span >= 4.0 * width_half
    return TraceMetrics(
        baseline=baseline,
        extremum_value=extremum_value,
        extremum_delay=float(delays[index] + offset * trace.delays.step),
        visibility=float(min(1.0, visibility)),
        width_half=width_half,
        tail_width=tail_width,
        kind=kind,
        resolved=resolved
    )


def normalized_rates(trace: interferometry.Trace) -> np.ndarray:
    """
    Affinely map the rates so the baseline goes to zero and the (sampled)
    extremum to one.

    Raises:
        :class:`~twophoton.exceptions.ValidationError`: for a featureless trace
    """
    baseline = _baseline(trace.rates)
    index, height = _grid_extremum(trace.rates, baseline)
    if _is_featureless(trace.rates, baseline, height):
        raise exceptions.ValidationError("cannot normalise featureless trace '{}'".format(trace.label))
    return (trace.rates - baseline) / height


def normalized_distance(first: interferometry.Trace, second: interferometry.Trace) -> float:
    """
    Largest point wise difference between two normalised traces.

    Raises:
        :class:`~twophoton.exceptions.ValidationError`: if the delay axes differ
            or either trace is featureless
    """
    if first.delays != second.delays:
        raise exceptions.ValidationError(
            "delay axes differ [{} vs {}]".format(first.delays, second.delays)
        )
    return float(np.max(np.abs(normalized_rates(first) - normalized_rates(second))))


def tail_ratio(
    first: interferometry.Trace,
    second: interferometry.Trace,
    tail_level: float=TAIL_LEVEL
) -> float:
    """
    Ratio of the tail widths of two traces.

    Raises:
        :class:`~twophoton.exceptions.ValidationError`: if either trace is featureless
    """
    widths = []
    for trace in (first, second):
        metrics = trace_metrics(trace, tail_level=tail_level)
        if metrics.featureless or metrics.tail_width <= 0.0:
            raise exceptions.ValidationError("trace '{}' has no feature to measure".format(trace.label))
        widths.append(metrics.tail_width)
    ratio = widths[0] / widths[1]
    if not math.isfinite(ratio):
        raise exceptions.ValidationError("tail ratio is not finite")
    return ratio
