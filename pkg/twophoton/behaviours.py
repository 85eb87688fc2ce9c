#
# License: BSD
#
##############################################################################
# Documentation
##############################################################################

"""
Behaviours for the scenario pipeline. Each stage does its work in a single
tick, reading its inputs from and writing its results to the blackboard
under the ``/twophoton`` namespace.

A stage that fails stores the error on the blackboard
(``/twophoton/error``), reports it as the feedback message and returns
:attr:`~py_trees.common.Status.FAILURE`. Anything other than a
:class:`~twophoton.exceptions.TwoPhotonError` is wrapped in an
:class:`~twophoton.exceptions.InvariantError` first. Nothing is raised out of
a tick.
"""

##############################################################################
# Imports
##############################################################################

import os
import typing

import numpy as np
import py_trees

from . import analysis
from . import artifacts
from . import exceptions
from . import filters
from . import interferometry
from . import scenario as scenarios
from . import spectral

##############################################################################
# Blackboard
##############################################################################

NAMESPACE = "twophoton"
MARGINAL_TOLERANCE = 1.0e-10


def traces_key(configuration: interferometry.Configuration) -> str:
    return "traces_{}".format(configuration.value)

##############################################################################
# Behaviours
##############################################################################


class Stage(py_trees.behaviour.Behaviour):
    """
    Base for the pipeline stages. Subclasses implement :meth:`run` and
    register the keys they need on ``self.blackboard``.

    Args:
        name: name of the behaviour
        scenario: the scenario being run
    """
    def __init__(self, name: str, scenario: scenarios.Scenario):
        super(Stage, self).__init__(name=name)
        self.scenario = scenario
        self.blackboard = self.attach_blackboard_client(name=self.name, namespace=NAMESPACE)
        self.blackboard.register_key(key="error", access=py_trees.common.Access.WRITE)

    def run(self) -> str:
        """
        Do the work of the stage.

        Returns:
            a feedback message
        """
        raise NotImplementedError()

    def update(self) -> py_trees.common.Status:
        self.logger.debug("{}.update()".format(self.qualified_name))
        try:
            self.feedback_message = self.run()
        except Exception as e:
            if not isinstance(e, exceptions.TwoPhotonError):
                error = exceptions.InvariantError("{} failed unexpectedly [{}: {}]".format(
                    self.name, type(e).__name__, e
                ))
                error.__cause__ = e
                e = error
            self.blackboard.error = e
            self.feedback_message = "{}".format(e)
            self.logger.debug("{}.update() failed [{}]".format(self.qualified_name, e))
            return py_trees.common.Status.FAILURE
        return py_trees.common.Status.SUCCESS


class BuildSource(Stage):
    """
    Sample the source amplitude, behind the detection window when one is set.

    Blackboard Variables:
        * **/twophoton/jsa** (:class:`~twophoton.spectral.JointAmplitude`)[w]

          * the unfiltered amplitude seen by the detectors
    """
    def __init__(self, name: str, scenario: scenarios.Scenario):
        super(BuildSource, self).__init__(name=name, scenario=scenario)
        self.blackboard.register_key(key="jsa", access=py_trees.common.Access.WRITE)

    def run(self) -> str:
        grid = self.scenario.frequency_grid()
        jsa = spectral.build_jsa(grid, self.scenario.source, normalize=self.scenario.normalize)
        window = self.scenario.detection_filter()
        if window is not None:
            jsa = filters.apply_filters(jsa, [window]).jsa
        self.blackboard.jsa = jsa
        return "sampled {} on {} points".format(self.scenario.source.describe(), grid.n_points)


class ApplyFilterSets(Stage):
    """
    Apply every filter set of the scenario to the source amplitude.

    Blackboard Variables:
        * **/twophoton/jsa** (:class:`~twophoton.spectral.JointAmplitude`)[r]
        * **/twophoton/filtered** (:obj:`dict`)[w]

          * filter set name to :class:`~twophoton.filters.FilterOutcome`
    """
    def __init__(self, name: str, scenario: scenarios.Scenario):
        super(ApplyFilterSets, self).__init__(name=name, scenario=scenario)
        self.blackboard.register_key(key="jsa", access=py_trees.common.Access.READ)
        self.blackboard.register_key(key="filtered", access=py_trees.common.Access.WRITE)

    def run(self) -> str:
        self.blackboard.filtered = {
            name: filters.apply_filters(self.blackboard.jsa, self.scenario.filter_set(name))
            for name in self.scenario.filter_set_names()
        }
        return "applied {} filter sets".format(len(self.scenario.filter_sets))


class ScanTraces(Stage):
    """
    Scan one configuration over the delay axis for every filter set. N00N
    traces behind a balanced lossless splitter are cross checked against the
    sum frequency marginal form.

    Blackboard Variables:
        * **/twophoton/filtered** (:obj:`dict`)[r]
        * **/twophoton/traces_<configuration>** (:obj:`dict`)[w]

          * filter set name to :class:`~twophoton.interferometry.Trace`

    Args:
        name: name of the behaviour
        scenario: the scenario being run
        configuration: the interferometer configuration to scan
        workers: thread pool size for the delay scan
    """
    def __init__(
            self,
            name: str,
            scenario: scenarios.Scenario,
            configuration: interferometry.Configuration,
            workers: int=1
    ):
        super(ScanTraces, self).__init__(name=name, scenario=scenario)
        self.configuration = configuration
        self.workers = workers
        self.key = traces_key(configuration)
        self.blackboard.register_key(key="filtered", access=py_trees.common.Access.READ)
        self.blackboard.register_key(key=self.key, access=py_trees.common.Access.WRITE)

    def run(self) -> str:
        delays = self.scenario.delays.axis()
        bs = self.scenario.beamsplitter
        window = self.scenario.detection_filter()
        detection = "none" if window is None else window.describe()
        traces = {}
        for set_name, outcome in self.blackboard.filtered.items():
            provenance = interferometry.Provenance(
                source=self.scenario.source.describe(),
                filters=filters.describe_filters(self.scenario.filter_set(set_name)),
                beamsplitter=bs.describe(),
                label=str(scenarios.TraceKey(self.configuration, set_name)),
                detection=detection
            )
            trace = interferometry.scan_trace(
                self.configuration, outcome.jsa, delays, bs, provenance=provenance, workers=self.workers
            )
            if self.configuration == interferometry.Configuration.NOON and bs.is_balanced_lossless:
                check = interferometry.noon_via_sum_marginal(outcome.jsa, delays, bs)
                deviation = relative_deviation(trace.rates, check.rates)
                if deviation > MARGINAL_TOLERANCE:
                    raise exceptions.InvariantError(
                        "noon trace '{}' disagrees with its sum frequency form [{:.3g}]".format(
                            provenance.label, deviation
                        )
                    )
            traces[set_name] = trace
        self.blackboard.set(self.key, traces)
        return "scanned {} traces over {} delays".format(len(traces), delays.count)


class ComputeMetrics(Stage):
    """
    Analyse every trace and evaluate the declared comparisons.

    Blackboard Variables:
        * **/twophoton/jsa** (:class:`~twophoton.spectral.JointAmplitude`)[r]
        * **/twophoton/filtered** (:obj:`dict`)[r]
        * **/twophoton/traces_<configuration>** (:obj:`dict`)[r]
        * **/twophoton/metrics** (:obj:`list`)[w]

          * ordered ``(key, value)`` pairs
    """
    def __init__(self, name: str, scenario: scenarios.Scenario):
        super(ComputeMetrics, self).__init__(name=name, scenario=scenario)
        self.blackboard.register_key(key="jsa", access=py_trees.common.Access.READ)
        self.blackboard.register_key(key="filtered", access=py_trees.common.Access.READ)
        for configuration in scenario.configurations:
            self.blackboard.register_key(key=traces_key(configuration), access=py_trees.common.Access.READ)
        self.blackboard.register_key(key="metrics", access=py_trees.common.Access.WRITE)

    def trace(self, key: scenarios.TraceKey) -> interferometry.Trace:
        return self.blackboard.get(traces_key(key.configuration))[key.filter_set]

    def run(self) -> str:
        grid = self.blackboard.jsa.grid
        window = self.scenario.detection_filter()
        entries = [
            ("scenario", self.scenario.name),
            ("grid.points", grid.n_points),
            ("grid.half_width", grid.half_width),
            ("grid.spacing", grid.spacing),
            ("instrument.detection_window", "none" if window is None else window.describe()),
            ("delays.span_ps", self.scenario.delays.span),
            ("delays.points", self.scenario.delays.points),
            ("source.total_probability", self.blackboard.jsa.total_probability()),
        ]
        for set_name, outcome in self.blackboard.filtered.items():
            entries.append(("filterset.{}.survival".format(set_name), outcome.survival))
        for key in self.scenario.trace_keys():
            trace = self.trace(key)
            metrics = analysis.trace_metrics(trace)
            for name, value in metrics.as_dict().items():
                entries.append(("{}.{}".format(key, name), value))
            entries.append((
                "{}.incoherent_baseline".format(key),
                interferometry.incoherent_baseline(
                    key.configuration, self.blackboard.filtered[key.filter_set].jsa, self.scenario.beamsplitter
                )
            ))
        for comparison in self.scenario.comparisons:
            entries.append((comparison.key, self.compare(comparison)))
        self.blackboard.metrics = entries
        return "computed {} metrics".format(len(entries))

    def compare(self, comparison: scenarios.Comparison) -> typing.Union[float, str]:
        first, second = self.trace(comparison.first), self.trace(comparison.second)
        try:
            if comparison.kind == scenarios.ComparisonKind.DISTANCE:
                return analysis.normalized_distance(first, second)
            return analysis.tail_ratio(first, second)
        except exceptions.ValidationError as e:
            self.logger.warning("{} is undefined [{}]".format(comparison.key, e))
            return "undefined"


class WriteArtifacts(Stage):
    """
    Write trace CSVs, optional JSI CSVs and SVG plots, and the metrics file.

    Blackboard Variables:
        * **/twophoton/filtered** (:obj:`dict`)[r]
        * **/twophoton/traces_<configuration>** (:obj:`dict`)[r]
        * **/twophoton/metrics** (:obj:`list`)[r]
        * **/twophoton/written** (:obj:`list`)[w]

          * paths of the files written, in order

    Args:
        name: name of the behaviour
        scenario: the scenario being run
        directory: output directory, already resolved
    """
    def __init__(self, name: str, scenario: scenarios.Scenario, directory: str):
        super(WriteArtifacts, self).__init__(name=name, scenario=scenario)
        self.directory = directory
        self.blackboard.register_key(key="filtered", access=py_trees.common.Access.READ)
        for configuration in scenario.configurations:
            self.blackboard.register_key(key=traces_key(configuration), access=py_trees.common.Access.READ)
        self.blackboard.register_key(key="metrics", access=py_trees.common.Access.READ)
        self.blackboard.register_key(key="written", access=py_trees.common.Access.WRITE)

    def run(self) -> str:
        try:
            os.makedirs(self.directory, exist_ok=True)
        except OSError as e:
            raise exceptions.ArtifactError(
                "unable to create output directory '{}' [{}]".format(self.directory, e)
            ) from e
        written = []

        def path(filename: str) -> str:
            written.append(os.path.join(self.directory, filename))
            return written[-1]

        for configuration in self.scenario.configurations:
            traces = self.blackboard.get(traces_key(configuration))
            for set_name in self.scenario.filter_set_names():
                key = scenarios.TraceKey(configuration, set_name)
                artifacts.emit_trace_csv(traces[set_name], path("{}.csv".format(key.slug)))
            if self.scenario.outputs.svg:
                artifacts.emit_plot_svg(
                    [traces[set_name] for set_name in self.scenario.filter_set_names()],
                    path("{}.svg".format(configuration.value)),
                    title="{}: {}".format(self.scenario.name, configuration.value)
                )
        if self.scenario.outputs.jsi:
            for set_name, outcome in self.blackboard.filtered.items():
                artifacts.emit_jsi_csv(outcome.jsa, path("jsi_{}.csv".format(set_name)))
        artifacts.emit_metrics(
            path(self.scenario.outputs.metrics),
            self.blackboard.metrics,
            title="twophoton metrics: {}".format(self.scenario.name)
        )
        self.blackboard.written = written
        return "wrote {} files to {}".format(len(written), self.directory)

##############################################################################
# Helpers
##############################################################################


def relative_deviation(first: np.ndarray, second: np.ndarray) -> float:
    """Largest point wise difference relative to the larger of the two traces."""
    scale = max(float(np.max(np.abs(first))), float(np.max(np.abs(second))))
    if scale == 0.0:
        return 0.0
    return float(np.max(np.abs(first - second)) / scale)
