#
# License: BSD
#
##############################################################################
# Documentation
##############################################################################

"""
Files written by a scenario run.

* trace CSV: ``tau_ps, rate, rate_normalized``, one row per delay
* JSI CSV: a matrix of :math:`|\\phi|^2`, idler detunings along the header
  row and signal detunings down the first column
* metrics: ``key = value`` lines in a stable order
* SVG: normalised traces overlaid on a shared delay axis

Floating point values are written with 17 significant digits so files
round trip exactly and repeated runs are byte identical.
"""

##############################################################################
# Imports
##############################################################################

import contextlib
import csv
import math
import typing

import numpy as np
import py_trees

from . import analysis
from . import exceptions
from . import interferometry
from . import spectral
from . import svg

##############################################################################
# Helpers
##############################################################################

logger = py_trees.logging.Logger("artifacts")

JSI_CORNER = "nu_s\\nu_i"
TRACE_COLUMNS = ("tau_ps", "rate", "rate_normalized")
PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b")


def format_number(value: float) -> str:
    return "%.17g" % value


@contextlib.contextmanager
def _writing(path: str) -> typing.Iterator[typing.TextIO]:
    """Open a file for writing. Failures while opening or writing become artifact errors."""
    try:
        with open(path, "w", encoding="utf-8", newline="") as handle:
            yield handle
    except OSError as e:
        raise exceptions.ArtifactError("unable to write '{}' [{}]".format(path, e)) from e

##############################################################################
# CSV
##############################################################################


def emit_trace_csv(trace: interferometry.Trace, path: str):
    """
    Write a trace. The normalised column is ``nan`` for a featureless trace.

    Raises:
        :class:`~twophoton.exceptions.ArtifactError`: on I/O failure
    """
    try:
        normalized = analysis.normalized_rates(trace)
    except exceptions.ValidationError:
        normalized = np.full(trace.delays.count, math.nan)
    with _writing(path) as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(TRACE_COLUMNS)
        for tau, rate, scaled in zip(trace.delays.values, trace.rates, normalized):
            writer.writerow([format_number(tau), format_number(rate), format_number(scaled)])
    logger.debug("emit_trace_csv: {}".format(path))


def emit_jsi_csv(jsa: spectral.JointAmplitude, path: str):
    """
    Write the joint spectral intensity as a matrix with its axes.

    Raises:
        :class:`~twophoton.exceptions.ArtifactError`: on I/O failure
    """
    axis = [format_number(nu) for nu in jsa.grid.axis]
    intensity = jsa.intensity()
    with _writing(path) as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow([JSI_CORNER] + axis)
        for label, row in zip(axis, intensity):
            writer.writerow([label] + [format_number(value) for value in row])
    logger.debug("emit_jsi_csv: {}".format(path))


def read_jsi_csv(path: str) -> typing.Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Parse a file written by :func:`emit_jsi_csv`.

    Returns:
        signal axis, idler axis and the intensity matrix

    Raises:
        :class:`~twophoton.exceptions.ArtifactError`: if the file can't be read or parsed
    """
    try:
        with open(path, "r", encoding="utf-8", newline="") as handle:
            rows = list(csv.reader(handle))
        header, body = rows[0], rows[1:]
        nu_i = np.array([float(cell) for cell in header[1:]])
        nu_s = np.array([float(row[0]) for row in body])
        matrix = np.array([[float(cell) for cell in row[1:]] for row in body])
    except (OSError, IndexError, ValueError) as e:
        raise exceptions.ArtifactError("unable to read JSI '{}' [{}]".format(path, e)) from e
    if header[0] != JSI_CORNER or matrix.shape != (nu_s.size, nu_i.size):
        raise exceptions.ArtifactError("'{}' is not a JSI matrix".format(path))
    return nu_s, nu_i, matrix

##############################################################################
# Metrics
##############################################################################


def metrics_lines(entries: typing.Iterable[typing.Tuple[str, typing.Any]]) -> typing.List[str]:
    lines = []
    for key, value in entries:
        if isinstance(value, bool):
            text = "true" if value else "false"
        elif isinstance(value, (float, np.floating)):
            text = format_number(float(value))
        else:
            text = str(value)
        lines.append("{} = {}".format(key, text))
    return lines


def emit_metrics(path: str, entries: typing.Iterable[typing.Tuple[str, typing.Any]], title: str=""):
    """
    Write ``key = value`` lines in the order given.

    Raises:
        :class:`~twophoton.exceptions.ArtifactError`: on I/O failure
    """
    with _writing(path) as handle:
        if title:
            handle.write("# {}\n".format(title))
        for line in metrics_lines(entries):
            handle.write(line + "\n")
    logger.debug("emit_metrics: {}".format(path))

##############################################################################
# Plots
##############################################################################

WIDTH = 720
HEIGHT = 480
MARGIN_LEFT = 80
MARGIN_RIGHT = 200
MARGIN_TOP = 40
MARGIN_BOTTOM = 60
TICKS = 5


def _shape(trace: interferometry.Trace) -> np.ndarray:
    try:
        return analysis.normalized_rates(trace)
    except exceptions.ValidationError:
        return np.zeros(trace.delays.count)


def render_plot_svg(traces: typing.Sequence[interferometry.Trace], title: str="") -> str:
    """
    Render normalised traces as an SVG document.

    Raises:
        :class:`~twophoton.exceptions.ValidationError`: with no traces or mismatched delay axes
    """
    if not traces:
        raise exceptions.ValidationError("nothing to plot")
    delays = traces[0].delays
    for trace in traces[1:]:
        if trace.delays != delays:
            raise exceptions.ValidationError(
                "traces do not share a delay axis [{} vs {}]".format(delays, trace.delays)
            )
    shapes = [_shape(trace) for trace in traces]
    low = min(0.0, min(float(np.min(shape)) for shape in shapes))
    high = max(1.0, max(float(np.max(shape)) for shape in shapes))
    pad = 0.05 * (high - low)
    low, high = low - pad, high + pad
    plot_width = WIDTH - MARGIN_LEFT - MARGIN_RIGHT
    plot_height = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM
    taus = delays.values

    def x_of(tau: float) -> float:
        return MARGIN_LEFT + (tau + delays.span) / (2.0 * delays.span) * plot_width

    def y_of(value: float) -> float:
        return MARGIN_TOP + (high - value) / (high - low) * plot_height

    document = svg.SVG(WIDTH, HEIGHT)
    document.rect(MARGIN_LEFT, MARGIN_TOP, plot_width, plot_height)
    for k in range(TICKS):
        tau = -delays.span + k * 2.0 * delays.span / (TICKS - 1)
        document.line((x_of(tau), MARGIN_TOP + plot_height), (x_of(tau), MARGIN_TOP + plot_height + 5))
        document.text(x_of(tau), MARGIN_TOP + plot_height + 20, "{:g}".format(tau), anchor="middle")
        value = low + k * (high - low) / (TICKS - 1)
        document.line((MARGIN_LEFT - 5, y_of(value)), (MARGIN_LEFT, y_of(value)))
        document.text(MARGIN_LEFT - 8, y_of(value) + 4, "{:.2f}".format(value), anchor="end")
    document.text(MARGIN_LEFT + plot_width / 2.0, HEIGHT - 15, "τ (ps)", anchor="middle", size=14)
    document.text(
        20, MARGIN_TOP + plot_height / 2.0, "normalized coincidence rate",
        anchor="middle", size=14, rotate=-90.0
    )
    if title:
        document.text(MARGIN_LEFT + plot_width / 2.0, 24, title, anchor="middle", size=16)
    for index, (trace, shape) in enumerate(zip(traces, shapes)):
        colour = PALETTE[index % len(PALETTE)]
        dashed = index >= len(PALETTE)
        document.polyline(
            [(x_of(tau), y_of(value)) for tau, value in zip(taus, shape)],
            colour=colour,
            dashed=dashed
        )
        legend_y = MARGIN_TOP + 10 + 20 * index
        legend_x = MARGIN_LEFT + plot_width + 15
        document.line((legend_x, legend_y), (legend_x + 25, legend_y), colour=colour, width=2.0)
        document.text(legend_x + 32, legend_y + 4, trace.label)
    return document.render()


def emit_plot_svg(traces: typing.Sequence[interferometry.Trace], path: str, title: str=""):
    """
    Write :func:`render_plot_svg` output to a file.

    Raises:
        :class:`~twophoton.exceptions.ValidationError`: with no traces or mismatched delay axes
        :class:`~twophoton.exceptions.ArtifactError`: on I/O failure
    """
    content = render_plot_svg(traces, title=title)
    with _writing(path) as handle:
        handle.write(content)
    logger.debug("emit_plot_svg: {}".format(path))
