#!/usr/bin/env python3
# -*- coding: utf-8 -*-
#
# License: BSD
#

##############################################################################
# Imports
##############################################################################

import math

import numpy as np
import py_trees.console as console
import pytest

import twophoton.exceptions as exceptions
import twophoton.filters as filters
import twophoton.interferometry as interferometry
import twophoton.spectral as spectral
import twophoton.units as units

##############################################################################
# Helpers
##############################################################################

Configuration = interferometry.Configuration
TWENTY_GHZ = units.to_angular(20.0, units.FrequencyQuote.ORDINARY)


def assert_banner():
    print(console.green + "----- Asserts -----" + console.reset)


def assert_details(text, expected, result):
    print(console.green + text +
          "." * (40 - len(text)) +
          console.cyan + "{}".format(expected) +
          console.yellow + " [{}]".format(result) +
          console.reset)


def source(eta_i_length=5.0):
    return spectral.SourceParams(pump_duration=5.0, eta_s_length=5.0, eta_i_length=eta_i_length)


def windowed_jsa(eta_i_length=5.0, n_points=129, half_width=3.0):
    """A source amplitude seen through a narrow detection window."""
    jsa = spectral.build_jsa(spectral.build_grid(n_points, half_width), source(eta_i_length))
    window = filters.FilterSpec(kind=filters.FilterKind.BANDPASS, bandwidth=0.1)
    return filters.apply_filters(jsa, [window]).jsa.normalized()


def symmetric_jsa(n_points=129, half_width=3.0):
    return spectral.build_jsa(spectral.build_grid(n_points, half_width), source())

##############################################################################
# Beamsplitters
##############################################################################


def test_beamsplitter_presets():
    console.banner("Beamsplitter Presets")
    bs = interferometry.BeamSplitterSpec.lossless_5050()
    assert_banner()
    assert_details("power", 1.0, bs.power)
    assert(bs.is_lossless)
    assert(bs.is_balanced_lossless)
    assert(bs.describe() == "lossless-5050")
    matrix = bs.matrix()
    assert_details("unitary", True, np.allclose(matrix @ matrix.conj().T, np.eye(2)))
    assert(np.allclose(matrix @ matrix.conj().T, np.eye(2), atol=1e-15))
    lossy = bs.scaled(math.sqrt(0.5))
    assert_details("scaled power", 0.5, lossy.power)
    assert(math.isclose(lossy.power, 0.5, rel_tol=1e-12))
    assert(not lossy.is_lossless)
    assert(lossy.describe() != "lossless-5050")


def test_beamsplitter_validation():
    console.banner("Beamsplitter Validation")
    assert_banner()
    for t, r in [(1.0, 1.0), (0.7, 0.7), (1.0, float('nan')), (1.1, 0.0)]:
        assert_details("t={} r={}".format(t, r), "ValidationError", "raised")
        with pytest.raises(exceptions.ValidationError):
            interferometry.BeamSplitterSpec(t=t, r=r)
    # a quadrature phase between t and r keeps an unbalanced splitter passive
    unbalanced = interferometry.BeamSplitterSpec(t=1j * math.sqrt(0.9), r=math.sqrt(0.1))
    assert(unbalanced.is_lossless)
    assert(not unbalanced.is_balanced_lossless)
    identity = interferometry.BeamSplitterSpec(t=1.0, r=0.0)
    assert(identity.is_lossless)

##############################################################################
# Delays and Traces
##############################################################################


def test_delay_axis():
    console.banner("Delay Axis")
    delays = interferometry.DelayAxis.from_span(40, 201)
    assert_banner()
    assert_details("step", 0.4, delays.step)
    assert(math.isclose(delays.step, 0.4, rel_tol=1e-15))
    assert(delays.values[100] == 0.0)
    assert(np.array_equal(delays.values, -delays.values[::-1]))
    assert(math.isclose(delays.values[-1], 40.0, rel_tol=1e-15))
    for span, count in [(40.0, 200), (40.0, 1), (0.0, 201), (-1.0, 201), (40.0, 20.0)]:
        with pytest.raises(exceptions.ValidationError):
            interferometry.DelayAxis(span=span, count=count)


def test_trace_validation():
    console.banner("Trace Validation")
    delays = interferometry.DelayAxis(span=1.0, count=3)
    assert_banner()
    with pytest.raises(exceptions.ValidationError):
        interferometry.Trace(delays=delays, rates=[1.0, 2.0], configuration=Configuration.NOON)
    with pytest.raises(exceptions.InvariantError):
        interferometry.Trace(delays=delays, rates=[1.0, -1e-3, 1.0], configuration=Configuration.NOON)
    with pytest.raises(exceptions.InvariantError):
        interferometry.Trace(delays=delays, rates=[1.0, float('nan'), 1.0], configuration=Configuration.NOON)
    trace = interferometry.Trace(delays=delays, rates=[1.0, 2.0, 3.0], configuration=Configuration.TWO_PORT)
    assert_details("reversed", [3.0, 2.0, 1.0], list(trace.reversed().rates))
    assert(list(trace.reversed().rates) == [3.0, 2.0, 1.0])
    assert(not trace.rates.flags.writeable)
    assert(trace.label == "two_port none")

##############################################################################
# Rates
##############################################################################


def test_single_port_peak():
    console.banner("Single Port Peak")
    jsa = symmetric_jsa()
    peak = interferometry.rate_single_port(jsa, 0.0)
    baseline = interferometry.incoherent_baseline(Configuration.SINGLE_PORT, jsa)
    assert_banner()
    assert_details("peak / baseline", 2.0, peak / baseline)
    assert(math.isclose(peak / baseline, 2.0, rel_tol=1e-12))
    assert(math.isclose(peak, jsa.total_probability(), rel_tol=1e-12))


def test_single_port_large_delay():
    console.banner("Single Port Large Delay")
    jsa = windowed_jsa()
    baseline = interferometry.incoherent_baseline(Configuration.SINGLE_PORT, jsa)
    far = interferometry.rate_single_port(jsa, 40.0)
    assert_banner()
    assert_details("rate / baseline", 1.0, far / baseline)
    assert(abs(far / baseline - 1.0) < 1e-6)


def test_two_port_dip():
    console.banner("Hong-Ou-Mandel Dip")
    jsa = symmetric_jsa()
    assert_banner()
    dip = interferometry.rate_two_port(jsa, 0.0)
    assert_details("tau = 0", 0.0, dip)
    assert(dip < 1e-15)
    # the dip floor of an unbalanced splitter
    unbalanced = interferometry.BeamSplitterSpec(t=1j * math.sqrt(0.9), r=math.sqrt(0.1))
    floor = interferometry.rate_two_port(jsa, 0.0, unbalanced)
    assert_details("unbalanced floor", 0.64, floor)
    assert(math.isclose(floor, 0.64 * jsa.total_probability(), rel_tol=1e-12))


def test_lossy_scaling():
    console.banner("Lossy Scaling")
    jsa = windowed_jsa(eta_i_length=10.0)
    bs = interferometry.BeamSplitterSpec.lossless_5050()
    lossy = bs.scaled(math.sqrt(0.5))
    assert_banner()
    for configuration in Configuration:
        for tau in [-3.0, 0.0, 1.5]:
            lossless_rate = interferometry.rate(configuration, jsa, tau, bs)
            lossy_rate = interferometry.rate(configuration, jsa, tau, lossy)
            assert(math.isclose(lossy_rate, 0.25 * lossless_rate, rel_tol=1e-12))
        assert_details(configuration.value, "x 0.25", "ok")


def test_peak_plus_dip_is_constant():
    console.banner("Peak Plus Dip")
    jsa = windowed_jsa(eta_i_length=10.0)
    expected = 2.0 * interferometry.incoherent_baseline(Configuration.SINGLE_PORT, jsa)
    assert_banner()
    for tau in [-8.0, -2.5, 0.0, 0.7, 4.0]:
        total = interferometry.rate_single_port(jsa, tau) + interferometry.rate_two_port(jsa, tau)
        assert_details("tau = {}".format(tau), expected, total)
        assert(math.isclose(total, expected, rel_tol=1e-12))


def test_noon_is_even():
    console.banner("N00N Is Even")
    jsa = windowed_jsa(eta_i_length=10.0)
    delays = interferometry.DelayAxis(span=40.0, count=201)
    trace = interferometry.scan_trace(Configuration.NOON, jsa, delays)
    assert_banner()
    assert_details("peak at", 0.0, delays.values[int(np.argmax(trace.rates))])
    assert(int(np.argmax(trace.rates)) == 100)
    assert(np.allclose(trace.rates, trace.rates[::-1], rtol=1e-10, atol=0.0))
    baseline = interferometry.incoherent_baseline(Configuration.NOON, jsa)
    assert_details("peak / baseline", 2.0, trace.rates[100] / baseline)
    assert(math.isclose(trace.rates[100] / baseline, 2.0, rel_tol=1e-12))


def test_noon_antisymmetric_amplitude():
    console.banner("N00N Antisymmetric Amplitude")
    grid = spectral.build_grid(33, 2.0)
    rng = np.random.default_rng(7)
    raw = rng.normal(size=(33, 33)) + 1j * rng.normal(size=(33, 33))
    jsa = spectral.JointAmplitude(grid=grid, values=raw - raw.T)
    assert_banner()
    for tau in [-5.0, 0.0, 2.0]:
        value = interferometry.rate_noon(jsa, tau)
        assert_details("tau = {}".format(tau), 0.0, value)
        assert(value == 0.0)


def test_delay_reversal():
    console.banner("Delay Reversal")
    jsa = windowed_jsa(eta_i_length=10.0)
    transposed = spectral.JointAmplitude(grid=jsa.grid, values=jsa.values.T)
    assert_banner()
    for configuration in [Configuration.SINGLE_PORT, Configuration.TWO_PORT]:
        for tau in [-3.0, 1.0, 6.0]:
            assert(math.isclose(
                interferometry.rate(configuration, transposed, tau),
                interferometry.rate(configuration, jsa, -tau),
                rel_tol=1e-12
            ))
        assert_details(configuration.value, "R[phi^T](tau) = R[phi](-tau)", "ok")


def test_workers():
    console.banner("Workers")
    jsa = windowed_jsa(eta_i_length=10.0)
    delays = interferometry.DelayAxis(span=20.0, count=41)
    assert_banner()
    for configuration in Configuration:
        serial = interferometry.scan_trace(configuration, jsa, delays)
        threaded = interferometry.scan_trace(configuration, jsa, delays, workers=4)
        assert_details(configuration.value, "identical", np.array_equal(serial.rates, threaded.rates))
        assert(np.array_equal(serial.rates, threaded.rates))
        assert(threaded.configuration == configuration)

##############################################################################
# Sum Frequency Marginal
##############################################################################


def test_sum_frequency_marginal():
    console.banner("Sum Frequency Marginal")
    delays = interferometry.DelayAxis(span=40.0, count=101)
    etpa = filters.FilterSpec(kind=filters.FilterKind.TWO_PHOTON, bandwidth=TWENTY_GHZ)
    assert_banner()
    for jsa in [windowed_jsa(), windowed_jsa(eta_i_length=10.0)]:
        filtered = filters.apply_filters(jsa, [etpa]).jsa
        for amplitude in [jsa, filtered]:
            direct = interferometry.scan_trace(Configuration.NOON, amplitude, delays)
            marginal = interferometry.noon_via_sum_marginal(amplitude, delays)
            deviation = np.max(np.abs(direct.rates - marginal.rates)) / np.max(direct.rates)
            assert_details("deviation", "<= 1e-10", deviation)
            assert(deviation <= 1e-10)
        nu_plus, values = interferometry.sum_frequency_marginal(filtered)
        centre = jsa.grid.n_points - 1
        assert(nu_plus.size == 2 * jsa.grid.n_points - 1)
        assert(nu_plus[centre] == 0.0)
        assert_details("M(0) with eTPA", 0.0, values[centre])
        assert(values[centre] == 0.0)
        assert(values[centre + 3] > 0.0)


def test_equal_marginals_give_equal_noon_traces():
    console.banner("Equal Marginals, Equal N00N Traces")
    jsa = windowed_jsa(eta_i_length=10.0)
    n = jsa.grid.n_points
    # a real symmetric amplitude, flat along every anti-diagonal, carrying
    # the same symmetrised weight per anti-diagonal as the source
    index = np.add.outer(np.arange(n), np.arange(n))
    weights = np.abs(jsa.values + jsa.swapped()) ** 2
    totals = np.bincount(index.ravel(), weights=weights.ravel(), minlength=2 * n - 1)
    counts = np.bincount(index.ravel(), minlength=2 * n - 1)
    flattened = spectral.JointAmplitude(grid=jsa.grid, values=np.sqrt(totals[index] / counts[index] / 4.0))
    delays = interferometry.DelayAxis(span=30.0, count=61)
    assert_banner()
    difference = np.max(np.abs(flattened.values - jsa.values)) / np.max(np.abs(jsa.values))
    assert_details("amplitudes differ", "> 0.1", difference)
    assert(difference > 0.1)
    unused_nu_plus, first = interferometry.sum_frequency_marginal(jsa)
    unused_nu_plus, second = interferometry.sum_frequency_marginal(flattened)
    assert(np.max(np.abs(first - second)) <= 1e-12 * np.max(first))
    original = interferometry.scan_trace(Configuration.NOON, jsa, delays).rates
    replaced = interferometry.scan_trace(Configuration.NOON, flattened, delays).rates
    deviation = np.max(np.abs(original - replaced)) / np.max(original)
    assert_details("noon deviation", "<= 1e-12", deviation)
    assert(deviation <= 1e-12)
    # the single port trace sees more than the marginal
    single = interferometry.scan_trace(Configuration.SINGLE_PORT, jsa, delays).rates
    single_flat = interferometry.scan_trace(Configuration.SINGLE_PORT, flattened, delays).rates
    assert(np.max(np.abs(single - single_flat)) > 1e-3 * np.max(single))


def test_sum_frequency_marginal_needs_balanced_splitter():
    console.banner("Sum Frequency Marginal Splitter")
    jsa = windowed_jsa()
    delays = interferometry.DelayAxis(span=10.0, count=21)
    lossy = interferometry.BeamSplitterSpec.lossless_5050().scaled(0.9)
    assert_banner()
    with pytest.raises(exceptions.ValidationError):
        interferometry.noon_via_sum_marginal(jsa, delays, lossy)
    with pytest.raises(exceptions.ValidationError):
        interferometry.noon_via_sum_marginal(
            jsa, delays, interferometry.BeamSplitterSpec(t=1j * math.sqrt(0.9), r=math.sqrt(0.1))
        )
    assert_details("rejected", "ValidationError", "raised")
