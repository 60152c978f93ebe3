"""The fixed 55-token semantic vocabulary."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class SemanticToken:
    id: int
    surface: str       # exact bracketed marker, e.g. "[<|svg_path|>]"
    category: str      # container | geometry | gradient | path_command | attribute
    description: str   # descriptive text used for embedding initialization


def _surface(name: str) -> str:
    return f"[<|{name}|>]"


_CONTAINER = (
    ("START_OF_SVG", "start of svg"),
    ("END_OF_SVG", "end of svg"),
    ("start_of_g", "start of svg group"),
    ("end_of_g", "end of svg group"),
)

_GEOMETRY = (
    ("svg_path", "svg path element"),
    ("svg_circle", "svg circle element"),
    ("svg_rect", "svg rectangle element"),
    ("svg_ellipse", "svg ellipse element"),
    ("svg_polygon", "svg polygon element"),
    ("svg_line", "svg line element"),
    ("svg_polyline", "svg polyline element"),
    ("svg_text", "svg text element"),
)

_GRADIENT = (
    ("svg_linearGradient", "svg linear gradient element"),
    ("svg_radialGradient", "svg radial gradient element"),
    ("svg_stop", "svg stop element"),
)

_PATH_COMMANDS = (
    ("moveto", "svg path command, move to"),
    ("lineto", "svg path command, line to"),
    ("horizontal_lineto", "svg path command, horizontal line to"),
    ("vertical_lineto", "svg path command, vertical line to"),
    ("curveto", "svg path command, curve to"),
    ("smooth_curveto", "svg path command, smooth curve to"),
    ("quadratic_bezier_curve", "svg path command, quadratic bezier curve"),
    ("smooth_quadratic_bezier_curveto",
     "svg path command, smooth quadratic bezier curve"),
    ("elliptical_Arc", "svg path command, elliptical arc"),
    ("close_the_path", "svg path command, close the path, close-form"),
)

_ATTRIBUTES = (
    ("id", "svg element attribute id"),
    ("d", "svg element attribute define the path"),
    ("fill", "svg element attribute fill"),
    ("stroke-width", "svg element attribute stroke-width"),
    ("stroke-linecap", "svg element attribute stroke-linecap"),
    ("stroke", "svg element attribute stroke"),
    ("opacity", "svg element attribute opacity"),
    ("transform", "svg element attribute transform"),
    ("gradientTransform", "svg element attribute gradient transform"),
    ("offset", "svg element attribute offset"),
    ("width", "svg element attribute width"),
    ("height", "svg element attribute height"),
    ("cx", "svg element attribute x coordinate of circle center"),
    ("cy", "svg element attribute y coordinate of circle center"),
    ("rx", "svg element attribute x radius of ellipse"),
    ("ry", "svg element attribute y radius of ellipse"),
    ("r", "svg element attribute radius of circle"),
    ("points", "svg element attribute points"),
    ("x1", "svg element attribute x1 coordinate"),
    ("y1", "svg element attribute y1 coordinate"),
    ("x2", "svg element attribute x2 coordinate"),
    ("y2", "svg element attribute y2 coordinate"),
    ("x", "svg element attribute x coordinate"),
    ("y", "svg element attribute y coordinate"),
    ("fr", "svg element attribute fr"),
    ("fx", "svg element attribute fx"),
    ("fy", "svg element attribute fy"),
    ("href", "svg element attribute href"),
    ("rotate", "svg element attribute rotate"),
    ("font-size", "svg element attribute font-size"),
)


def _build():
    tokens = []
    for category, listing in (
        ("container", _CONTAINER),
        ("geometry", _GEOMETRY),
        ("gradient", _GRADIENT),
        ("path_command", _PATH_COMMANDS),
        ("attribute", _ATTRIBUTES),
    ):
        for name, desc in listing:
            tokens.append(SemanticToken(len(tokens), _surface(name), category, desc))
    return tuple(tokens)


_VOCAB = _build()
_BY_NAME = {t.surface[3:-3]: t for t in _VOCAB}
_BY_SURFACE = {t.surface: t for t in _VOCAB}

# Path op -> command token name.
PATH_OP_TOKEN = {
    "MoveTo": "moveto",
    "LineTo": "lineto",
    "HLineTo": "horizontal_lineto",
    "VLineTo": "vertical_lineto",
    "CurveTo": "curveto",
    "SmoothCurveTo": "smooth_curveto",
    "QuadTo": "quadratic_bezier_curve",
    "SmoothQuadTo": "smooth_quadratic_bezier_curveto",
    "Arc": "elliptical_Arc",
    "ClosePath": "close_the_path",
}

TOKEN_PATH_OP = {v: k for k, v in PATH_OP_TOKEN.items()}

# Element kind -> tag token name.
KIND_TOKEN = {
    "path": "svg_path",
    "circle": "svg_circle",
    "rect": "svg_rect",
    "ellipse": "svg_ellipse",
    "polygon": "svg_polygon",
    "line": "svg_line",
    "polyline": "svg_polyline",
    "text": "svg_text",
    "linearGradient": "svg_linearGradient",
    "radialGradient": "svg_radialGradient",
    "stop": "svg_stop",
}

TOKEN_KIND = {v: k for k, v in KIND_TOKEN.items()}


def vocab() -> tuple:
    """All 55 tokens in table order, ids 0..54."""
    return _VOCAB


def token(name: str) -> SemanticToken:
    """Look up by bare name, e.g. 'svg_circle' or 'START_OF_SVG'."""
    return _BY_NAME[name]


def by_surface(surface: str):
    return _BY_SURFACE.get(surface)
