#!/usr/bin/env python3
# -*- coding: utf-8 -*-
#
# License: BSD
#
##############################################################################
# Documentation
##############################################################################

"""
Command line front end.

.. code-block:: bash

   # run a scenario file, artifacts land relative to the file
   $ twophoton run scenarios/mine.ini
   # run a built in scenario
   $ twophoton preset fig3-asymmetric --out results/
   $ twophoton preset --list
   # cross check the closed form rates against the fock oracle
   $ twophoton oracle-check scenarios/mine.ini --oracle-points 33

Exit codes: 0 success, 1 validation failure, 2 I/O failure, 3 internal
invariant failure or any other unexpected error.
"""

##############################################################################
# Imports
##############################################################################

import argparse
import os
import sys
import typing

import py_trees
import py_trees.console as console

from . import exceptions
from . import pipeline
from . import presets
from . import scenario as scenarios
from . import version

##############################################################################
# Exit Codes
##############################################################################

EXIT_SUCCESS = 0
EXIT_VALIDATION = exceptions.ValidationError.exit_code
EXIT_IO = exceptions.ArtifactError.exit_code
EXIT_INVARIANT = exceptions.InvariantError.exit_code

##############################################################################
# Argument Parsing
##############################################################################


def _add_overrides(parser: argparse.ArgumentParser):
    parser.add_argument('--grid-points', type=int, default=None, help='frequency grid points per axis (odd)')
    parser.add_argument('--delay-span-ps', type=float, default=None, help='delay axis runs over [-span, span] ps')
    parser.add_argument('--delay-points', type=int, default=None, help='number of delays (odd)')


def command_line_argument_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description="Simulate and analyse two photon interference traces",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="Exit codes: 0 success, 1 validation, 2 I/O, 3 internal or unexpected failure"
    )
    parser.add_argument('--version', action='version', version='%(prog)s ' + version.__version__)
    parser.add_argument('-v', '--verbose', action='store_true', default=False, help='debug logging')
    subparsers = parser.add_subparsers(dest='command', metavar='<command>')
    subparsers.required = True

    run = subparsers.add_parser('run', help='run a scenario file')
    run.add_argument('scenario_file', help='path to the scenario file')
    run.add_argument('--workers', type=int, default=1, help='threads per delay scan')
    _add_overrides(run)

    preset = subparsers.add_parser('preset', help='run a built in scenario')
    preset.add_argument('name', nargs='?', default=None, help='preset name, see --list')
    preset.add_argument('--out', default='.', help='directory the preset output directory is created in')
    preset.add_argument('--list', action='store_true', default=False, help='list the presets and exit')
    preset.add_argument('--workers', type=int, default=1, help='threads per delay scan')
    _add_overrides(preset)

    check = subparsers.add_parser('oracle-check', help='cross check closed form rates against the fock oracle')
    check.add_argument('scenario_file', help='path to the scenario file')
    check.add_argument(
        '--oracle-points', type=int, default=pipeline.ORACLE_POINTS,
        help='oracle grid points per axis (odd, at most 65)'
    )
    _add_overrides(check)
    return parser

##############################################################################
# Commands
##############################################################################


def _overridden(scenario: scenarios.Scenario, args: argparse.Namespace) -> scenarios.Scenario:
    return scenario.with_overrides(
        grid_points=args.grid_points,
        delay_span=args.delay_span_ps,
        delay_points=args.delay_points
    )


def _run(scenario: scenarios.Scenario, directory: str, workers: int):
    console.loginfo("running scenario '{}' [{}]".format(scenario.name, directory))
    result = pipeline.run_scenario(scenario, directory=directory, workers=workers)
    for path in result.written:
        console.loginfo("  wrote {}".format(path))


def run_command(args: argparse.Namespace):
    scenario = _overridden(scenarios.load_scenario(args.scenario_file), args)
    base = os.path.dirname(os.path.abspath(args.scenario_file))
    _run(scenario, pipeline.resolve_directory(scenario, base), args.workers)


def preset_command(args: argparse.Namespace):
    if args.list:
        for name in presets.names():
            print(name)
        return
    if args.name is None:
        raise exceptions.ValidationError("a preset name is required (see --list)")
    scenario = _overridden(presets.preset(args.name), args)
    _run(scenario, pipeline.resolve_directory(scenario, args.out), args.workers)


def oracle_check_command(args: argparse.Namespace):
    scenario = _overridden(scenarios.load_scenario(args.scenario_file), args)
    report = pipeline.oracle_check(scenario, points=args.oracle_points)
    for comparison in report.comparisons:
        console.loginfo("{:12s} {:10s} τ={:+7.2f} ps  closed {:.12e}  oracle {:.12e}  Δ {:.2e}".format(
            comparison.configuration.value, comparison.filter_set, comparison.tau,
            comparison.closed_form, comparison.oracle, comparison.deviation
        ))
    if not report.passed:
        raise exceptions.InvariantError(
            "oracle disagrees with the closed form rates [worst {:.3g} > {:.3g}]".format(
                report.worst, report.tolerance
            )
        )
    console.loginfo(console.green + "oracle agrees [worst {:.3g}]".format(report.worst) + console.reset)


COMMANDS = {
    'run': run_command,
    'preset': preset_command,
    'oracle-check': oracle_check_command,
}

##############################################################################
# Entry Point
##############################################################################


def main(command_line_args: typing.Optional[typing.List[str]]=None) -> int:
    """
    Entry point for the ``twophoton`` script.

    Returns:
        the exit code, also passed to :func:`sys.exit` when run as a script
    """
    parser = command_line_argument_parser()
    args = parser.parse_args(sys.argv[1:] if command_line_args is None else command_line_args)
    if args.verbose:
        py_trees.logging.level = py_trees.logging.Level.DEBUG
    try:
        COMMANDS[args.command](args)
    except exceptions.TwoPhotonError as e:
        console.logerror(console.red + "{} [{}]".format(type(e).__name__, str(e)) + console.reset)
        return e.exit_code
    except Exception as e:
        console.logerror(console.red + "unexpected failure [{}: {}]".format(type(e).__name__, e) + console.reset)
        return EXIT_INVARIANT
    except KeyboardInterrupt:
        console.logerror("interrupted")
        return EXIT_INVARIANT
    return EXIT_SUCCESS


if __name__ == '__main__':
    sys.exit(main())
