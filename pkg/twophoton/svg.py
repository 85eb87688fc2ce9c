#
# License: BSD
#
##############################################################################
# Documentation
##############################################################################

"""
A minimal SVG document builder. Elements are collected as text commands in
user coordinates (pixels, y pointing down) and wrapped in a fixed size
document on rendering. Numbers are printed with a fixed precision so that
the output is byte for byte reproducible.
"""

##############################################################################
# Imports
##############################################################################

import typing
import xml.sax.saxutils

##############################################################################
# Document
##############################################################################

PREAMBLE = """\
<?xml version="1.0" encoding="UTF-8" standalone="no"?>
<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:d}" height="{height:d}" viewBox="0 0 {width:d} {height:d}">
<rect x="0" y="0" width="{width:d}" height="{height:d}" style="fill:#ffffff"/>
"""

POSTAMBLE = """\
</svg>
"""

Point = typing.Tuple[float, float]


def _points(points: typing.Iterable[Point]) -> str:
    return " ".join("{:.2f},{:.2f}".format(x, y) for x, y in points)


class SVG(object):
    """
    Args:
        width: document width (px)
        height: document height (px)
    """
    def __init__(self, width: int, height: int):
        self.width = width
        self.height = height
        self.commands = []

    def polyline(self, points: typing.Sequence[Point], colour: str="#000000", width: float=1.5, dashed: bool=False):
        dash = ";stroke-dasharray:6,3" if dashed else ""
        self.commands.append(
            '<polyline points="{}" style="fill:none;stroke:{};stroke-width:{:.2f}{}"/>'.format(
                _points(points), colour, width, dash
            )
        )

    def line(self, start: Point, end: Point, colour: str="#000000", width: float=1.0):
        self.commands.append(
            '<line x1="{:.2f}" y1="{:.2f}" x2="{:.2f}" y2="{:.2f}" style="stroke:{};stroke-width:{:.2f}"/>'.format(
                start[0], start[1], end[0], end[1], colour, width
            )
        )

    def rect(self, x: float, y: float, width: float, height: float, stroke: str="#000000"):
        self.commands.append(
            '<rect x="{:.2f}" y="{:.2f}" width="{:.2f}" height="{:.2f}" style="fill:none;stroke:{};stroke-width:1"/>'.format(
                x, y, width, height, stroke
            )
        )

    def text(
        self,
        x: float,
        y: float,
        text: str,
        colour: str="#333333",
        size: int=12,
        anchor: str="start",
        rotate: typing.Optional[float]=None
    ):
        transform = ' transform="rotate({:.1f} {:.2f} {:.2f})"'.format(rotate, x, y) if rotate is not None else ""
        self.commands.append(
            '<text x="{:.2f}" y="{:.2f}" fill="{}" font-size="{:d}" font-family="sans-serif" text-anchor="{}"{}>{}</text>'.format(
                x, y, colour, size, anchor, transform, xml.sax.saxutils.escape(text)
            )
        )

    def render(self) -> str:
        return PREAMBLE.format(width=self.width, height=self.height) + "".join(
            command + "\n" for command in self.commands
        ) + POSTAMBLE
