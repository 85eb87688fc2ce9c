#
# License: BSD
#
##############################################################################
# Documentation
##############################################################################

"""
Assemble and run the scenario pipeline, plus the oracle cross check.

.. code-block:: text

   Scenario (Sequence)
   ├── Build Source
   ├── Apply Filter Sets
   ├── Scan (Parallel, success on all)
   │   ├── Scan single_port
   │   ├── Scan two_port
   │   └── Scan noon
   ├── Compute Metrics
   └── Write Artifacts

The tree is ticked until the root stops running, which for these one shot
stages is a single tick.
"""

##############################################################################
# Imports
##############################################################################

import dataclasses
import os
import typing

import numpy as np
import py_trees

from . import behaviours
from . import exceptions
from . import filters
from . import interferometry
from . import oracle
from . import scenario as scenarios
from . import spectral

##############################################################################
# Constants
##############################################################################

ORACLE_POINTS = 33
ORACLE_DELAYS = (-10.0, -2.5, 0.0, 2.5, 10.0)
ORACLE_TOLERANCE = 1.0e-10
DEVIATION_FLOOR = 1.0e-6
MAXIMUM_TICKS = 10

logger = py_trees.logging.Logger("pipeline")

##############################################################################
# Tree
##############################################################################


def create_root(
    scenario: scenarios.Scenario,
    directory: str,
    workers: int=1
) -> py_trees.behaviour.Behaviour:
    """
    Create the pipeline tree for a scenario.

    Args:
        scenario: the scenario to run
        directory: resolved output directory
        workers: thread pool size for each delay scan

    Returns:
        the root of the tree
    """
    root = py_trees.composites.Sequence(name="Scenario", memory=True)
    scan = py_trees.composites.Parallel(
        name="Scan",
        policy=py_trees.common.ParallelPolicy.SuccessOnAll(
            synchronise=False
        )
    )
    for configuration in scenario.configurations:
        scan.add_child(
            behaviours.ScanTraces(
                name="Scan {}".format(configuration.value),
                scenario=scenario,
                configuration=configuration,
                workers=workers
            )
        )
    root.add_children([
        behaviours.BuildSource(name="Build Source", scenario=scenario),
        behaviours.ApplyFilterSets(name="Apply Filter Sets", scenario=scenario),
        scan,
        behaviours.ComputeMetrics(name="Compute Metrics", scenario=scenario),
        behaviours.WriteArtifacts(name="Write Artifacts", scenario=scenario, directory=directory),
    ])
    return root


@dataclasses.dataclass
class RunResult(object):
    """
    What a scenario run produced.

    Args:
        traces: every trace, keyed by configuration and filter set
        metrics: the metrics file entries, in order
        written: paths of the files written
    """
    traces: typing.Dict[scenarios.TraceKey, interferometry.Trace]
    metrics: typing.List[typing.Tuple[str, typing.Any]]
    written: typing.List[str]

    def metric(self, key: str) -> typing.Any:
        return dict(self.metrics)[key]


def run_scenario(
    scenario: scenarios.Scenario,
    directory: typing.Optional[str]=None,
    workers: int=1
) -> RunResult:
    """
    Run a scenario end to end and write its artifacts.

    Args:
        scenario: the scenario to run
        directory: output directory, defaults to the scenario's own
        workers: thread pool size for each delay scan

    Raises:
        :class:`~twophoton.exceptions.TwoPhotonError`: the error that stopped the pipeline
    """
    directory = directory or scenario.outputs.directory
    py_trees.blackboard.Blackboard.clear()
    root = create_root(scenario, directory, workers=workers)
    tree = py_trees.trees.BehaviourTree(root=root)
    tree.setup(timeout=15.0)
    for unused_tick in range(MAXIMUM_TICKS):
        tree.tick()
        if root.status != py_trees.common.Status.RUNNING:
            break
    results = py_trees.blackboard.Client(name="Pipeline", namespace=behaviours.NAMESPACE)
    results.register_key(key="error", access=py_trees.common.Access.READ)
    if root.status != py_trees.common.Status.SUCCESS:
        if results.exists("error"):
            raise results.error
        raise exceptions.InvariantError("pipeline finished with status {}".format(root.status))
    for configuration in scenario.configurations:
        results.register_key(key=behaviours.traces_key(configuration), access=py_trees.common.Access.READ)
    results.register_key(key="metrics", access=py_trees.common.Access.READ)
    results.register_key(key="written", access=py_trees.common.Access.READ)
    traces = {}
    for key in scenario.trace_keys():
        traces[key] = results.get(behaviours.traces_key(key.configuration))[key.filter_set]
    logger.debug("run_scenario: '{}' wrote {} files".format(scenario.name, len(results.written)))
    return RunResult(traces=traces, metrics=list(results.metrics), written=list(results.written))


def resolve_directory(scenario: scenarios.Scenario, base: str) -> str:
    """Resolve a relative output directory against ``base``."""
    if os.path.isabs(scenario.outputs.directory):
        return scenario.outputs.directory
    return os.path.normpath(os.path.join(base, scenario.outputs.directory))

##############################################################################
# Oracle
##############################################################################


@dataclasses.dataclass(frozen=True)
class OracleComparison(object):
    configuration: interferometry.Configuration
    filter_set: str
    tau: float
    closed_form: float
    oracle: float
    deviation: float


@dataclasses.dataclass
class OracleReport(object):
    points: int
    comparisons: typing.List[OracleComparison]
    tolerance: float = ORACLE_TOLERANCE

    @property
    def worst(self) -> float:
        return max((c.deviation for c in self.comparisons), default=0.0)

    @property
    def passed(self) -> bool:
        return self.worst <= self.tolerance


def relative_error(closed_form: float, oracle_value: float, scale: float) -> float:
    """
    Deviation relative to the closed form. Near zero rates (the bottom of a
    dip) are compared against a small fraction of the rate scale instead.
    """
    floor = max(abs(scale) * DEVIATION_FLOOR, np.finfo(float).tiny)
    return abs(oracle_value - closed_form) / max(abs(closed_form), floor)


def oracle_check(
    scenario: scenarios.Scenario,
    points: int=ORACLE_POINTS,
    delays: typing.Sequence[float]=ORACLE_DELAYS
) -> OracleReport:
    """
    Compare the closed form rates against the fock oracle for every
    configuration and filter set of a scenario on a coarse grid with the
    scenario's extent.

    Args:
        scenario: the scenario to check
        points: grid points per axis, at most :data:`twophoton.oracle.MAXIMUM_MODES`
        delays: delays to compare at (ps)
    """
    half_width = scenario.frequency_grid().half_width
    grid = spectral.build_grid(points, half_width)
    jsa = spectral.build_jsa(grid, scenario.source, normalize=scenario.normalize)
    window = scenario.detection_filter()
    if window is not None:
        jsa = filters.apply_filters(jsa, [window]).jsa
    bs = scenario.beamsplitter
    comparisons = []
    for set_name in scenario.filter_set_names():
        filtered = filters.apply_filters(jsa, scenario.filter_set(set_name)).jsa
        for configuration in scenario.configurations:
            scale = interferometry.incoherent_baseline(configuration, filtered, bs)
            for tau in delays:
                closed_form = interferometry.rate(configuration, filtered, tau, bs)
                oracle_value = oracle.oracle_rate(configuration, filtered, tau, bs)
                comparisons.append(OracleComparison(
                    configuration=configuration,
                    filter_set=set_name,
                    tau=float(tau),
                    closed_form=closed_form,
                    oracle=oracle_value,
                    deviation=relative_error(closed_form, oracle_value, scale)
                ))
    report = OracleReport(points=points, comparisons=comparisons)
    logger.debug("oracle_check: '{}' worst deviation {:.3g}".format(scenario.name, report.worst))
    return report
