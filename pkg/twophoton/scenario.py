#
# License: BSD
#
##############################################################################
# Documentation
##############################################################################

"""
Scenarios: everything needed to reproduce a batch of traces, read from and
written to INI style text files.

.. code-block:: ini

   [scenario]
   name = fig3-symmetric
   configurations = single_port, two_port, noon
   frequency_quote = ordinary
   normalize = true

   [source]
   pump_duration_ps = 5.0
   eta_s_length_ps = 5.0
   eta_i_length_ps = 5.0

   [grid]
   points = 513

   [delays]
   span_ps = 80.0
   points = 201

   [beamsplitter]
   preset = lossless-5050

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

   [outputs]
   directory = fig3-symmetric

Frequencies (bandwidths, centers, half widths) are quoted on a GHz scale and
converted according to ``frequency_quote``, see :mod:`twophoton.units`.
Times are in ps. See ``doc/scenarios.rst`` for the full schema.
"""

##############################################################################
# Imports
##############################################################################

import configparser
import dataclasses
import enum
import io
import math
import typing

from . import exceptions
from . import filters
from . import interferometry
from . import spectral
from . import units

##############################################################################
# Constants
##############################################################################

BEAMSPLITTER_PRESET = "lossless-5050"
NO_FILTERS = "none"
FILTER_SECTION_PREFIX = "filter."

##############################################################################
# Types
##############################################################################


@dataclasses.dataclass(frozen=True)
class GridSettings(object):
    """
    Args:
        points: samples per frequency axis
        half_width: axis extent (rad/ps), chosen automatically when not given
    """
    points: int = spectral.DEFAULT_GRID_POINTS
    half_width: typing.Optional[float] = None


@dataclasses.dataclass(frozen=True)
class DelaySettings(object):
    span: float = 80.0
    points: int = 201

    def axis(self) -> interferometry.DelayAxis:
        return interferometry.DelayAxis.from_span(self.span, self.points)


@dataclasses.dataclass(frozen=True)
class TraceKey(object):
    """Identifies a trace by configuration and filter set, written ``noon/etpa``."""
    configuration: interferometry.Configuration
    filter_set: str

    def __str__(self) -> str:
        return "{}/{}".format(self.configuration.value, self.filter_set)

    @property
    def slug(self) -> str:
        return "{}_{}".format(self.configuration.value, self.filter_set)

    @classmethod
    def parse(cls, text: str, field: str) -> 'TraceKey':
        configuration, _, filter_set = text.strip().partition("/")
        if not filter_set:
            raise exceptions.ValidationError(
                "expected '<configuration>/<filter set>' [{}]".format(text), field=field
            )
        return cls(configuration=_parse_configuration(configuration, field), filter_set=filter_set.strip())


class ComparisonKind(enum.Enum):
    DISTANCE = "distance"
    TAIL_RATIO = "tail_ratio"


@dataclasses.dataclass(frozen=True)
class Comparison(object):
    """A pairwise trace comparison reported in the metrics file."""
    kind: ComparisonKind
    name: str
    first: TraceKey
    second: TraceKey

    @property
    def key(self) -> str:
        return "{}.{}".format(self.kind.value, self.name)


@dataclasses.dataclass(frozen=True)
class OutputSettings(object):
    """
    Args:
        directory: where artifacts go, relative paths resolve against the scenario file
        metrics: name of the metrics file inside the directory
        svg: emit one SVG per configuration
        jsi: emit one JSI CSV per filter set
    """
    directory: str = "."
    metrics: str = "metrics.txt"
    svg: bool = True
    jsi: bool = False


@dataclasses.dataclass(frozen=True)
class Scenario(object):
    """
    A complete, validated batch description. Frequencies are held in rad/ps.
    """
    name: str
    source: spectral.SourceParams
    configurations: typing.Tuple[interferometry.Configuration, ...]
    grid: GridSettings = GridSettings()
    delays: DelaySettings = DelaySettings()
    beamsplitter: interferometry.BeamSplitterSpec = dataclasses.field(
        default_factory=interferometry.BeamSplitterSpec.lossless_5050
    )
    named_filters: typing.Tuple[typing.Tuple[str, filters.FilterSpec], ...] = ()
    filter_sets: typing.Tuple[typing.Tuple[str, typing.Tuple[str, ...]], ...] = ((NO_FILTERS, ()),)
    detection_bandwidth: typing.Optional[float] = None
    comparisons: typing.Tuple[Comparison, ...] = ()
    outputs: OutputSettings = OutputSettings()
    frequency_quote: units.FrequencyQuote = units.FrequencyQuote.ORDINARY
    normalize: bool = True

    def __post_init__(self):
        validate(self)

    def filter_set_names(self) -> typing.List[str]:
        return [name for name, unused_members in self.filter_sets]

    def filter_set(self, name: str) -> typing.Tuple[filters.FilterSpec, ...]:
        named = dict(self.named_filters)
        for set_name, members in self.filter_sets:
            if set_name == name:
                return tuple(named[member] for member in members)
        raise exceptions.ValidationError("unknown filter set '{}'".format(name))

    def detection_filter(self) -> typing.Optional[filters.FilterSpec]:
        if self.detection_bandwidth is None:
            return None
        return filters.FilterSpec(kind=filters.FilterKind.BANDPASS, bandwidth=self.detection_bandwidth)

    def frequency_grid(self) -> spectral.FrequencyGrid:
        half_width = self.grid.half_width
        if half_width is None:
            half_width = spectral.default_half_width(
                self.source,
                filter_bandwidths=[spec.bandwidth for unused_name, spec in self.named_filters],
                detection_bandwidth=self.detection_bandwidth
            )
        return spectral.build_grid(self.grid.points, half_width)

    def trace_keys(self) -> typing.List[TraceKey]:
        return [
            TraceKey(configuration=configuration, filter_set=name)
            for configuration in self.configurations
            for name in self.filter_set_names()
        ]

    def with_overrides(
        self,
        grid_points: typing.Optional[int]=None,
        delay_span: typing.Optional[float]=None,
        delay_points: typing.Optional[int]=None,
        directory: typing.Optional[str]=None
    ) -> 'Scenario':
        """
        Copy with command line overrides applied, see :mod:`twophoton.cli`.
        """
        grid = self.grid if grid_points is None else dataclasses.replace(self.grid, points=grid_points)
        delays = self.delays
        if delay_span is not None:
            delays = dataclasses.replace(delays, span=delay_span)
        if delay_points is not None:
            delays = dataclasses.replace(delays, points=delay_points)
        outputs = self.outputs if directory is None else dataclasses.replace(self.outputs, directory=directory)
        return dataclasses.replace(self, grid=grid, delays=delays, outputs=outputs)

##############################################################################
# Validation
##############################################################################


def _parse_configuration(text: str, field: str) -> interferometry.Configuration:
    try:
        return interferometry.Configuration(text.strip())
    except ValueError as e:
        raise exceptions.ValidationError(
            "unknown configuration '{}', expected one of {}".format(
                text.strip(), [c.value for c in interferometry.Configuration]
            ),
            field=field
        ) from e


def validate(scenario: Scenario):
    """
    Check cross references and the invariants of every component.

    Raises:
        :class:`~twophoton.exceptions.ValidationError`: naming the offending field
    """
    if not scenario.name:
        raise exceptions.ValidationError("scenario needs a name", field="[scenario] name")
    if not scenario.configurations:
        raise exceptions.ValidationError("at least one configuration is required", field="[scenario] configurations")
    if len(set(scenario.configurations)) != len(scenario.configurations):
        raise exceptions.ValidationError("configurations repeat", field="[scenario] configurations")
    try:
        spectral.build_grid(scenario.grid.points, scenario.grid.half_width or 1.0)
    except exceptions.ValidationError as e:
        raise exceptions.ValidationError(str(e), field="[grid]") from e
    try:
        scenario.delays.axis()
    except exceptions.ValidationError as e:
        raise exceptions.ValidationError(str(e), field="[delays]") from e
    if scenario.detection_bandwidth is not None and not scenario.detection_bandwidth > 0.0:
        raise exceptions.ValidationError(
            "must be positive [{}]".format(scenario.detection_bandwidth),
            field="[instrument] detection_bandwidth"
        )
    names = [name for name, unused_spec in scenario.named_filters]
    if len(set(names)) != len(names):
        raise exceptions.ValidationError("filter names repeat", field="[filter.*]")
    set_names = scenario.filter_set_names()
    if not set_names:
        raise exceptions.ValidationError("at least one filter set is required", field="[filtersets]")
    if len(set(set_names)) != len(set_names):
        raise exceptions.ValidationError("filter set names repeat", field="[filtersets]")
    for set_name, members in scenario.filter_sets:
        for member in members:
            if member not in names:
                raise exceptions.ValidationError(
                    "unknown filter '{}'".format(member), field="[filtersets] {}".format(set_name)
                )
    for comparison in scenario.comparisons:
        for key in (comparison.first, comparison.second):
            if key.configuration not in scenario.configurations or key.filter_set not in set_names:
                raise exceptions.ValidationError(
                    "trace '{}' is not produced by this scenario".format(key),
                    field="[comparisons] {}".format(comparison.key)
                )

##############################################################################
# Parsing
##############################################################################


class _Section(object):
    """Typed access to a config section with field paths in every error."""

    def __init__(self, parser: configparser.ConfigParser, name: str, required: bool=True):
        if not parser.has_section(name):
            if required:
                raise exceptions.ValidationError("missing section", field="[{}]".format(name))
            self.values = {}
        else:
            self.values = dict(parser.items(name))
        self.name = name

    def field(self, key: str) -> str:
        return "[{}] {}".format(self.name, key)

    def text(self, key: str, default: typing.Optional[str]=None) -> typing.Optional[str]:
        value = self.values.get(key)
        if value is None or value.strip() == "":
            return default
        return value.strip()

    def required_text(self, key: str) -> str:
        value = self.text(key)
        if value is None:
            raise exceptions.ValidationError("missing value", field=self.field(key))
        return value

    def number(self, key: str, default: typing.Optional[float]=None, required: bool=False) -> typing.Optional[float]:
        value = self.required_text(key) if required else self.text(key)
        if value is None:
            return default
        try:
            number = float(value)
        except ValueError as e:
            raise exceptions.ValidationError("not a number [{}]".format(value), field=self.field(key)) from e
        if not math.isfinite(number):
            raise exceptions.ValidationError("not finite [{}]".format(value), field=self.field(key))
        return number

    def integer(self, key: str, default: int) -> int:
        value = self.text(key)
        if value is None:
            return default
        try:
            return int(value)
        except ValueError as e:
            raise exceptions.ValidationError("not an integer [{}]".format(value), field=self.field(key)) from e

    def boolean(self, key: str, default: bool) -> bool:
        value = self.text(key)
        if value is None:
            return default
        lowered = value.lower()
        if lowered in configparser.ConfigParser.BOOLEAN_STATES:
            return configparser.ConfigParser.BOOLEAN_STATES[lowered]
        raise exceptions.ValidationError("not a boolean [{}]".format(value), field=self.field(key))

    def complex_number(self, key: str) -> complex:
        value = self.required_text(key)
        try:
            return complex(value.replace(" ", ""))
        except ValueError as e:
            raise exceptions.ValidationError("not a complex number [{}]".format(value), field=self.field(key)) from e

    def names(self, key: str) -> typing.List[str]:
        value = self.text(key, default="")
        return [item.strip() for item in value.split(",") if item.strip()]


def _new_parser() -> configparser.ConfigParser:
    parser = configparser.ConfigParser(
        inline_comment_prefixes=(";", "#"),
        interpolation=None,
        default_section="__defaults__"
    )
    # filter names are case sensitive
    parser.optionxform = str
    return parser


def parse_scenario(text: str, origin: str="<string>") -> Scenario:
    """
    Parse a scenario from INI text.

    Args:
        text: file contents
        origin: where the text came from, for error messages

    Raises:
        :class:`~twophoton.exceptions.ValidationError`: on malformed content
    """
    parser = _new_parser()
    try:
        parser.read_string(text, source=origin)
    except configparser.Error as e:
        raise exceptions.ValidationError("malformed scenario {} [{}]".format(origin, e)) from e

    header = _Section(parser, "scenario")
    quote = units.FrequencyQuote.parse(header.text("frequency_quote", default="ordinary"))

    def frequency(section: _Section, key: str, required: bool=False) -> typing.Optional[float]:
        value = section.number(key, required=required)
        return None if value is None else units.to_angular(value, quote)

    configurations = tuple(
        _parse_configuration(name, header.field("configurations"))
        for name in header.names("configurations")
    )

    source_section = _Section(parser, "source")
    try:
        source = spectral.SourceParams(
            pump_duration=source_section.number("pump_duration_ps", required=True),
            eta_s_length=source_section.number("eta_s_length_ps", required=True),
            eta_i_length=source_section.number("eta_i_length_ps", required=True),
            central_frequency=frequency(source_section, "central_frequency") or 0.0
        )
    except exceptions.ValidationError as e:
        if e.field is not None:
            raise
        raise exceptions.ValidationError(str(e), field="[source]") from e

    grid_section = _Section(parser, "grid", required=False)
    grid = GridSettings(
        points=grid_section.integer("points", spectral.DEFAULT_GRID_POINTS),
        half_width=frequency(grid_section, "half_width")
    )
    if grid.half_width is not None and grid.half_width <= 0.0:
        raise exceptions.ValidationError("must be positive", field=grid_section.field("half_width"))

    delay_section = _Section(parser, "delays", required=False)
    delays = DelaySettings(
        span=delay_section.number("span_ps", default=DelaySettings.span),
        points=delay_section.integer("points", DelaySettings.points)
    )

    bs_section = _Section(parser, "beamsplitter", required=False)
    preset = bs_section.text("preset")
    try:
        if preset is None and "t" not in bs_section.values:
            beamsplitter = interferometry.BeamSplitterSpec.lossless_5050()
        elif preset is not None:
            if preset != BEAMSPLITTER_PRESET:
                raise exceptions.ValidationError(
                    "unknown preset '{}'".format(preset), field=bs_section.field("preset")
                )
            beamsplitter = interferometry.BeamSplitterSpec.lossless_5050()
        else:
            beamsplitter = interferometry.BeamSplitterSpec(
                t=bs_section.complex_number("t"), r=bs_section.complex_number("r")
            )
    except exceptions.ValidationError as e:
        if e.field is not None:
            raise
        raise exceptions.ValidationError(str(e), field="[beamsplitter]") from e

    instrument = _Section(parser, "instrument", required=False)
    detection_bandwidth = frequency(instrument, "detection_bandwidth")

    named_filters = []
    for section_name in parser.sections():
        if not section_name.startswith(FILTER_SECTION_PREFIX):
            continue
        section = _Section(parser, section_name)
        kind_name = section.required_text("kind")
        try:
            kind = filters.FilterKind(kind_name)
        except ValueError as e:
            raise exceptions.ValidationError(
                "unknown filter kind '{}'".format(kind_name), field=section.field("kind")
            ) from e
        try:
            spec = filters.FilterSpec(
                kind=kind,
                bandwidth=frequency(section, "bandwidth", required=True),
                center=frequency(section, "center") or 0.0
            )
        except exceptions.ValidationError as e:
            if e.field is not None:
                raise
            raise exceptions.ValidationError(str(e), field="[{}]".format(section_name)) from e
        named_filters.append((section_name[len(FILTER_SECTION_PREFIX):], spec))

    if parser.has_section("filtersets"):
        sets_section = _Section(parser, "filtersets")
        filter_sets = tuple(
            (name, tuple(sets_section.names(name))) for name in parser.options("filtersets")
        )
    else:
        filter_sets = ((NO_FILTERS, ()),)

    comparisons = []
    comparison_section = _Section(parser, "comparisons", required=False)
    for key in comparison_section.values:
        kind_name, _, name = key.partition(".")
        field = comparison_section.field(key)
        try:
            kind = ComparisonKind(kind_name)
        except ValueError as e:
            raise exceptions.ValidationError(
                "comparisons are 'distance.<name>' or 'tail_ratio.<name>'", field=field
            ) from e
        members = comparison_section.names(key)
        if not name or len(members) != 2:
            raise exceptions.ValidationError("expected '<trace>, <trace>'", field=field)
        comparisons.append(Comparison(
            kind=kind,
            name=name,
            first=TraceKey.parse(members[0], field),
            second=TraceKey.parse(members[1], field)
        ))

    output_section = _Section(parser, "outputs", required=False)
    outputs = OutputSettings(
        directory=output_section.text("directory", default=OutputSettings.directory),
        metrics=output_section.text("metrics", default=OutputSettings.metrics),
        svg=output_section.boolean("svg", OutputSettings.svg),
        jsi=output_section.boolean("jsi", OutputSettings.jsi)
    )

    return Scenario(
        name=header.required_text("name"),
        source=source,
        configurations=configurations,
        grid=grid,
        delays=delays,
        beamsplitter=beamsplitter,
        named_filters=tuple(named_filters),
        filter_sets=filter_sets,
        detection_bandwidth=detection_bandwidth,
        comparisons=tuple(comparisons),
        outputs=outputs,
        frequency_quote=quote,
        normalize=header.boolean("normalize", True)
    )


def load_scenario(path: str) -> Scenario:
    """
    Read and parse a scenario file.

    Raises:
        :class:`~twophoton.exceptions.ArtifactError`: if the file can't be read
        :class:`~twophoton.exceptions.ValidationError`: on malformed content
    """
    try:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as e:
        raise exceptions.ArtifactError("unable to read scenario file '{}' [{}]".format(path, e)) from e
    return parse_scenario(text, origin=path)

##############################################################################
# Serialisation
##############################################################################


def serialize_scenario(scenario: Scenario) -> str:
    """
    Render a scenario as INI text that :func:`parse_scenario` reads back into
    an equivalent scenario.
    """
    quote = scenario.frequency_quote

    def frequency(value: float) -> str:
        return repr(units.from_angular(value, quote))

    parser = _new_parser()
    parser["scenario"] = {
        "name": scenario.name,
        "configurations": ", ".join(c.value for c in scenario.configurations),
        "frequency_quote": quote.value,
        "normalize": "true" if scenario.normalize else "false",
    }
    parser["source"] = {
        "pump_duration_ps": repr(scenario.source.pump_duration),
        "eta_s_length_ps": repr(scenario.source.eta_s_length),
        "eta_i_length_ps": repr(scenario.source.eta_i_length),
        "central_frequency": frequency(scenario.source.central_frequency),
    }
    parser["grid"] = {"points": str(scenario.grid.points)}
    if scenario.grid.half_width is not None:
        parser["grid"]["half_width"] = frequency(scenario.grid.half_width)
    parser["delays"] = {
        "span_ps": repr(scenario.delays.span),
        "points": str(scenario.delays.points),
    }
    if scenario.beamsplitter == interferometry.BeamSplitterSpec.lossless_5050():
        parser["beamsplitter"] = {"preset": BEAMSPLITTER_PRESET}
    else:
        parser["beamsplitter"] = {
            "t": repr(scenario.beamsplitter.t),
            "r": repr(scenario.beamsplitter.r),
        }
    parser["instrument"] = {}
    if scenario.detection_bandwidth is not None:
        parser["instrument"]["detection_bandwidth"] = frequency(scenario.detection_bandwidth)
    for name, spec in scenario.named_filters:
        section = {"kind": spec.kind.value, "bandwidth": frequency(spec.bandwidth)}
        if spec.center != 0.0:
            section["center"] = frequency(spec.center)
        parser[FILTER_SECTION_PREFIX + name] = section
    parser["filtersets"] = {name: ", ".join(members) for name, members in scenario.filter_sets}
    parser["comparisons"] = {
        comparison.key: "{}, {}".format(comparison.first, comparison.second)
        for comparison in scenario.comparisons
    }
    parser["outputs"] = {
        "directory": scenario.outputs.directory,
        "metrics": scenario.outputs.metrics,
        "svg": "true" if scenario.outputs.svg else "false",
        "jsi": "true" if scenario.outputs.jsi else "false",
    }
    stream = io.StringIO()
    parser.write(stream)
    return stream.getvalue()


def _close(first, second, rel_tol: float) -> bool:
    if dataclasses.is_dataclass(first) and dataclasses.is_dataclass(second):
        if type(first) is not type(second):
            return False
        return all(
            _close(getattr(first, f.name), getattr(second, f.name), rel_tol)
            for f in dataclasses.fields(first)
        )
    if isinstance(first, tuple) and isinstance(second, tuple):
        return len(first) == len(second) and all(_close(a, b, rel_tol) for a, b in zip(first, second))
    if isinstance(first, (float, complex)) and isinstance(second, (float, complex)):
        return abs(first - second) <= rel_tol * max(abs(first), abs(second))
    return first == second


def equivalent(first: Scenario, second: Scenario, rel_tol: float=1.0e-12) -> bool:
    """
    Field by field comparison with a relative tolerance on numbers, which
    absorbs the rounding of unit conversions.
    """
    return _close(first, second, rel_tol)
