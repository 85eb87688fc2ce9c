#!/usr/bin/env python3
# -*- coding: utf-8 -*-
#
# License: BSD
#

##############################################################################
# Imports
##############################################################################

import dataclasses
import errno
import io
import os

import py_trees
import py_trees.console as console
import pytest

import twophoton.artifacts as artifacts
import twophoton.cli as cli
import twophoton.exceptions as exceptions
import twophoton.interferometry as interferometry
import twophoton.pipeline as pipeline
import twophoton.scenario as scenarios

##############################################################################
# Helpers
##############################################################################

SCENARIO = """
[scenario]
name = small
configurations = single_port, two_port, noon

[source]
pump_duration_ps = 5.0
eta_s_length_ps = 5.0
eta_i_length_ps = 10.0

[grid]
points = 65

[delays]
span_ps = 20
points = 41

[instrument]
detection_bandwidth = 16.0

[filter.tpa]
kind = two_photon
bandwidth = 20.0

[filtersets]
none =
etpa = tpa

[comparisons]
distance.noon_etpa = noon/none, noon/etpa
tail_ratio.noon = noon/etpa, noon/none

[outputs]
directory = out
jsi = true
"""

EXPECTED_FILES = [
    "single_port_none.csv", "single_port_etpa.csv", "single_port.svg",
    "two_port_none.csv", "two_port_etpa.csv", "two_port.svg",
    "noon_none.csv", "noon_etpa.csv", "noon.svg",
    "jsi_none.csv", "jsi_etpa.csv",
    "metrics.txt",
]


def assert_banner():
    print(console.green + "----- Asserts -----" + console.reset)


def assert_details(text, expected, result):
    print(console.green + text +
          "." * (40 - len(text)) +
          console.cyan + "{}".format(expected) +
          console.yellow + " [{}]".format(result) +
          console.reset)


def small_scenario():
    return scenarios.parse_scenario(SCENARIO)


def write_scenario(directory, text=SCENARIO):
    path = os.path.join(str(directory), "small.ini")
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(text)
    return path

##############################################################################
# Tree
##############################################################################


def test_create_root(tmp_path):
    console.banner("Pipeline Tree")
    root = pipeline.create_root(small_scenario(), str(tmp_path))
    print(py_trees.display.unicode_tree(root))
    assert_banner()
    names = [child.name for child in root.children]
    assert_details("stages", 5, len(names))
    assert(names == ["Build Source", "Apply Filter Sets", "Scan", "Compute Metrics", "Write Artifacts"])
    assert(isinstance(root.children[2], py_trees.composites.Parallel))
    assert([child.name for child in root.children[2].children] == [
        "Scan single_port", "Scan two_port", "Scan noon"
    ])

##############################################################################
# Runs
##############################################################################


def test_run_scenario(tmp_path):
    console.banner("Run Scenario")
    scenario = small_scenario()
    result = pipeline.run_scenario(scenario, directory=str(tmp_path / "first"))
    assert_banner()
    assert_details("traces", 6, len(result.traces))
    assert(set(result.traces.keys()) == set(scenario.trace_keys()))
    assert([os.path.basename(path) for path in result.written] == EXPECTED_FILES)
    for path in result.written:
        assert(os.path.isfile(path))
    two_port = result.traces[scenarios.TraceKey(interferometry.Configuration.TWO_PORT, "none")]
    assert(two_port.provenance.label == "two_port/none")
    assert(result.metric("scenario") == "small")
    assert(result.metric("grid.points") == 65)
    assert(result.metric("filterset.none.survival") == 1.0)
    assert(0.0 < result.metric("filterset.etpa.survival") < 1.0)
    assert_details("two_port/none.kind", "dip", result.metric("two_port/none.kind"))
    assert(result.metric("two_port/none.kind") == "dip")
    assert(result.metric("single_port/none.kind") == "peak")
    assert(result.metric("noon/none.kind") == "peak")
    assert(result.metric("distance.noon_etpa") > 0.0)
    assert(result.metric("tail_ratio.noon") > 0.0)
    metrics = (tmp_path / "first" / "metrics.txt").read_text(encoding="utf-8")
    assert(metrics.startswith("# twophoton metrics: small\n"))
    assert("noon/etpa.incoherent_baseline = " in metrics)


def test_run_is_deterministic(tmp_path):
    console.banner("Deterministic Runs")
    scenario = small_scenario()
    first = pipeline.run_scenario(scenario, directory=str(tmp_path / "first"))
    second = pipeline.run_scenario(scenario, directory=str(tmp_path / "second"), workers=3)
    assert_banner()
    for one, two in zip(first.written, second.written):
        with open(one, "rb") as a, open(two, "rb") as b:
            assert a.read() == b.read(), os.path.basename(one)
    assert_details("files", "byte identical", len(first.written))


def test_run_failure(tmp_path):
    console.banner("Run Failure")
    blocker = tmp_path / "blocker"
    blocker.write_text("not a directory", encoding="utf-8")
    assert_banner()
    with pytest.raises(exceptions.ArtifactError):
        pipeline.run_scenario(small_scenario(), directory=str(blocker))
    assert_details("error", "ArtifactError", "raised")


def test_run_unexpected_failure(tmp_path, monkeypatch):
    console.banner("Run Unexpected Failure")

    def broken(*args, **kwargs):
        raise ZeroDivisionError("broken scan")

    monkeypatch.setattr(interferometry, "scan_trace", broken)
    assert_banner()
    with pytest.raises(exceptions.InvariantError) as info:
        pipeline.run_scenario(small_scenario(), directory=str(tmp_path))
    assert_details("cause", "ZeroDivisionError", type(info.value.__cause__).__name__)
    assert(isinstance(info.value.__cause__, ZeroDivisionError))
    assert("broken scan" in str(info.value))


def test_detection_window_is_reported(tmp_path):
    console.banner("Detection Window Reporting")
    windowed = pipeline.run_scenario(small_scenario(), directory=str(tmp_path / "windowed"))
    bare = pipeline.run_scenario(
        dataclasses.replace(small_scenario(), detection_bandwidth=None), directory=str(tmp_path / "bare")
    )
    key = scenarios.TraceKey(interferometry.Configuration.NOON, "none")
    assert_banner()
    assert_details("windowed", "bandpass(...)", windowed.metric("instrument.detection_window"))
    assert(windowed.metric("instrument.detection_window").startswith("bandpass("))
    assert(windowed.traces[key].provenance.detection.startswith("bandpass("))
    assert_details("bare", "none", bare.metric("instrument.detection_window"))
    assert(bare.metric("instrument.detection_window") == "none")
    assert(bare.traces[key].provenance.detection == "none")
    metrics = (tmp_path / "windowed" / "metrics.txt").read_text(encoding="utf-8")
    assert("instrument.detection_window = bandpass(" in metrics)


def test_resolve_directory():
    console.banner("Resolve Directory")
    scenario = small_scenario()
    assert_banner()
    assert(pipeline.resolve_directory(scenario, "/data") == os.path.normpath("/data/out"))
    absolute = scenario.with_overrides(directory=os.path.abspath("/tmp/results"))
    assert(pipeline.resolve_directory(absolute, "/data") == os.path.abspath("/tmp/results"))

##############################################################################
# Oracle
##############################################################################


def test_oracle_check():
    console.banner("Oracle Check")
    report = pipeline.oracle_check(small_scenario())
    assert_banner()
    assert_details("comparisons", 3 * 2 * len(pipeline.ORACLE_DELAYS), len(report.comparisons))
    assert(len(report.comparisons) == 3 * 2 * len(pipeline.ORACLE_DELAYS))
    assert_details("worst", "<= 1e-10", report.worst)
    assert(report.passed)
    assert(report.points == pipeline.ORACLE_POINTS)


def test_relative_error():
    console.banner("Relative Error")
    assert_banner()
    assert(pipeline.relative_error(2.0, 2.0, 1.0) == 0.0)
    assert(pipeline.relative_error(2.0, 2.2, 1.0) == pytest.approx(0.1))
    # a zero rate is compared against the rate scale
    assert(pipeline.relative_error(0.0, 1e-18, 1.0) == pytest.approx(1e-12))
    assert_details("relative", "ok", "ok")

##############################################################################
# Command Line
##############################################################################


def test_cli_list(capsys):
    console.banner("CLI Preset List")
    code = cli.main(["preset", "--list"])
    out = capsys.readouterr().out.split()
    assert_banner()
    assert_details("exit code", 0, code)
    assert(code == 0)
    assert("fig3-symmetric" in out)
    assert(cli.main(["preset"]) == cli.EXIT_VALIDATION)
    assert(cli.main(["preset", "fig4"]) == cli.EXIT_VALIDATION)


def test_cli_run(tmp_path):
    console.banner("CLI Run")
    path = write_scenario(tmp_path)
    code = cli.main(["run", path, "--delay-points", "21"])
    assert_banner()
    assert_details("exit code", 0, code)
    assert(code == 0)
    # the output directory resolves against the scenario file
    assert(sorted(os.listdir(str(tmp_path / "out"))) == sorted(EXPECTED_FILES))
    with open(str(tmp_path / "out" / "noon_none.csv"), encoding="utf-8") as handle:
        assert(len(handle.read().splitlines()) == 22)


def test_cli_preset(tmp_path):
    console.banner("CLI Preset")
    code = cli.main([
        "preset", "fig2a", "--out", str(tmp_path),
        "--grid-points", "65", "--delay-span-ps", "20", "--delay-points", "41"
    ])
    assert_banner()
    assert_details("exit code", 0, code)
    assert(code == 0)
    assert(os.path.isfile(str(tmp_path / "fig2a" / "jsi_etpa.csv")))
    assert(os.path.isfile(str(tmp_path / "fig2a" / "noon.svg")))


def test_cli_exit_codes(tmp_path):
    console.banner("CLI Exit Codes")
    bad = write_scenario(tmp_path, SCENARIO.replace("points = 65", "points = 64"))
    assert_banner()
    assert_details("missing file", cli.EXIT_IO, cli.main(["run", str(tmp_path / "absent.ini")]))
    assert(cli.main(["run", str(tmp_path / "absent.ini")]) == 2)
    assert_details("invalid scenario", cli.EXIT_VALIDATION, cli.main(["run", bad]))
    assert(cli.main(["run", bad]) == 1)
    with pytest.raises(SystemExit) as info:
        cli.main(["transmogrify"])
    assert(info.value.code == 2)


def test_cli_unexpected_exit_codes(tmp_path, monkeypatch):
    console.banner("CLI Unexpected Failures")
    path = write_scenario(tmp_path)

    class FullDisk(io.StringIO):
        def write(self, text):
            raise OSError(errno.ENOSPC, "No space left on device")

    def broken(*args, **kwargs):
        raise ZeroDivisionError("broken scan")

    assert_banner()
    with monkeypatch.context() as patch:
        patch.setattr(artifacts, "open", lambda *args, **kwargs: FullDisk(), raising=False)
        code = cli.main(["run", path, "--delay-points", "21"])
        assert_details("disk full", cli.EXIT_IO, code)
        assert(code == cli.EXIT_IO)
    with monkeypatch.context() as patch:
        patch.setattr(interferometry, "scan_trace", broken)
        code = cli.main(["run", path, "--delay-points", "21"])
        assert_details("broken stage", cli.EXIT_INVARIANT, code)
        assert(code == cli.EXIT_INVARIANT)
    with monkeypatch.context() as patch:
        patch.setitem(cli.COMMANDS, "run", broken)
        code = cli.main(["run", path])
        assert_details("broken command", cli.EXIT_INVARIANT, code)
        assert(code == cli.EXIT_INVARIANT)


def test_cli_oracle_check(tmp_path):
    console.banner("CLI Oracle Check")
    path = write_scenario(tmp_path)
    assert_banner()
    code = cli.main(["oracle-check", path, "--oracle-points", "17"])
    assert_details("exit code", 0, code)
    assert(code == 0)
    assert(cli.main(["oracle-check", path, "--oracle-points", "67"]) == cli.EXIT_VALIDATION)
