"""Typed intermediate representation of an SVG document.

Values are held as `decimal.Decimal` so that normalization arithmetic
(relative conversion, canvas rescaling) stays exact and serialization is
byte-deterministic.
"""

from __future__ import annotations

import decimal
from dataclasses import dataclass, field
from decimal import Decimal
from typing import Optional, Union

# Enough headroom that delta/rescale arithmetic on real-world coordinates
# never rounds.
CTX = decimal.Context(prec=50)

ELEMENT_KINDS = (
    "path", "circle", "rect", "ellipse", "polygon", "line", "polyline",
    "text", "linearGradient", "radialGradient", "stop", "group",
)

GEOMETRY_KINDS = (
    "path", "circle", "rect", "ellipse", "polygon", "line", "polyline", "text",
)

GRADIENT_KINDS = ("linearGradient", "radialGradient", "stop")

CONTAINER_KINDS = ("group", "linearGradient", "radialGradient")

# Canonical attribute order of the 30 attribute tokens.
ATTR_ORDER = (
    "id", "d", "fill", "stroke-width", "stroke-linecap", "stroke",
    "opacity", "transform", "gradientTransform", "offset", "width",
    "height", "cx", "cy", "rx", "ry", "r", "points", "x1", "y1",
    "x2", "y2", "x", "y", "fr", "fx", "fy", "href", "rotate", "font-size",
)

_ATTR_RANK = {name: i for i, name in enumerate(ATTR_ORDER)}

# IR attribute name -> XML attribute name, where they differ.  `stop-color`
# has no token of its own; stop color lives in `fill` inside the IR.
_XML_ATTR_NAME = {"fill": {"stop": "stop-color"}}

NUMERIC_ATTRS = frozenset({
    "stroke-width", "opacity", "offset", "width", "height", "cx", "cy",
    "rx", "ry", "r", "x1", "y1", "x2", "y2", "x", "y", "fr", "fx", "fy",
    "rotate", "font-size",
})

PAINT_ATTRS = frozenset({"fill", "stroke"})

# Path command letter -> (op name, argument arity).
PATH_OPS = {
    "M": ("MoveTo", 2),
    "L": ("LineTo", 2),
    "H": ("HLineTo", 1),
    "V": ("VLineTo", 1),
    "C": ("CurveTo", 6),
    "S": ("SmoothCurveTo", 4),
    "Q": ("QuadTo", 4),
    "T": ("SmoothQuadTo", 2),
    "A": ("Arc", 7),
    "Z": ("ClosePath", 0),
}

OP_LETTER = {op: letter for letter, (op, _) in PATH_OPS.items()}
OP_ARITY = {op: arity for _, (op, arity) in PATH_OPS.items()}


def num(value) -> Decimal:
    """Coerce a string/int/float into a context-bound Decimal."""
    if isinstance(value, Decimal):
        return value
    if isinstance(value, float):
        return CTX.create_decimal(repr(value))
    return CTX.create_decimal(str(value))


def fmt_num(d: Decimal) -> str:
    """Minimal decimal text: no trailing zeros, no exponent, no '-0'."""
    if d == 0:
        return "0"
    s = format(d.normalize(CTX), "f")
    if "." in s:
        s = s.rstrip("0").rstrip(".")
    return s


@dataclass(frozen=True)
class PathCmd:
    op: str
    relative: bool
    args: tuple

    def __post_init__(self):
        if self.op not in OP_ARITY:
            raise ValueError(f"unknown path op {self.op!r}")
        if len(self.args) != OP_ARITY[self.op]:
            raise ValueError(
                f"{self.op} takes {OP_ARITY[self.op]} args, got {len(self.args)}")

    @property
    def letter(self) -> str:
        c = OP_LETTER[self.op]
        return c.lower() if self.relative else c


# ---------------------------------------------------------------------------
# Attribute values

@dataclass(frozen=True)
class Number:
    value: Decimal

    def to_svg(self) -> str:
        return fmt_num(self.value)


@dataclass(frozen=True)
class Color:
    value: str  # "#rrggbb" or "none"

    def to_svg(self) -> str:
        return self.value


@dataclass(frozen=True)
class PathData:
    commands: tuple  # of PathCmd

    def to_svg(self) -> str:
        parts = []
        for cmd in self.commands:
            parts.append(cmd.letter + " ".join(fmt_num(a) for a in cmd.args))
        return "".join(parts)


@dataclass(frozen=True)
class Points:
    pairs: tuple  # of (Decimal, Decimal)

    def to_svg(self) -> str:
        return " ".join(f"{fmt_num(x)},{fmt_num(y)}" for x, y in self.pairs)


@dataclass(frozen=True)
class Text:
    value: str

    def to_svg(self) -> str:
        return self.value


@dataclass(frozen=True)
class Reference:
    target: str  # bare id, no '#'

    def to_svg(self, attr: str = "href") -> str:
        if attr in PAINT_ATTRS:
            return f"url(#{self.target})"
        return f"#{self.target}"


@dataclass(frozen=True)
class Transform:
    """Ordered transform function list, e.g. translate/scale/rotate/matrix."""
    functions: tuple  # of (name, tuple of Decimal)

    def to_svg(self) -> str:
        return " ".join(
            f"{name}({' '.join(fmt_num(a) for a in args)})"
            for name, args in self.functions)


AttrValue = Union[Number, Color, PathData, Points, Text, Reference, Transform]


# ---------------------------------------------------------------------------
# Nodes and documents

@dataclass
class Node:
    kind: str
    attrs: list = field(default_factory=list)  # of (name, AttrValue)
    children: list = field(default_factory=list)
    text: Optional[str] = None  # character data, <text> only

    def __post_init__(self):
        if self.kind not in ELEMENT_KINDS:
            raise ValueError(f"unsupported element kind {self.kind!r}")

    def get(self, name):
        for n, v in self.attrs:
            if n == name:
                return v
        return None

    def set(self, name, value):
        for i, (n, _) in enumerate(self.attrs):
            if n == name:
                self.attrs[i] = (name, value)
                return
        self.attrs.append((name, value))

    def drop(self, name):
        self.attrs = [(n, v) for n, v in self.attrs if n != name]


@dataclass
class SvgDocument:
    view_box: tuple  # (min_x, min_y, width, height) as Decimals
    elements: list = field(default_factory=list)

    def __post_init__(self):
        _, _, w, h = self.view_box
        if w <= 0 or h <= 0:
            raise ValueError("viewBox width and height must be positive")

    def walk(self):
        """Yield every node in document order."""
        stack = list(reversed(self.elements))
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.children))


# ---------------------------------------------------------------------------
# Canonical serialization

_TAG_NAME = {"group": "g"}


def _escape(text: str, quote: bool = True) -> str:
    text = text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
    if quote:
        text = text.replace('"', "&quot;")
    return text


def _attr_text(node: Node) -> str:
    parts = []
    for name, value in sorted(node.attrs, key=lambda kv: _ATTR_RANK[kv[0]]):
        if isinstance(value, Reference):
            text = value.to_svg(name)
        else:
            text = value.to_svg()
        xml_name = _XML_ATTR_NAME.get(name, {}).get(node.kind, name)
        parts.append(f' {xml_name}="{_escape(text)}"')
    return "".join(parts)


def _serialize_node(node: Node, out: list):
    tag = _TAG_NAME.get(node.kind, node.kind)
    attrs = _attr_text(node)
    if node.children:
        out.append(f"<{tag}{attrs}>")
        for child in node.children:
            _serialize_node(child, out)
        out.append(f"</{tag}>")
    elif node.text is not None:
        out.append(f"<{tag}{attrs}>{_escape(node.text, quote=False)}</{tag}>")
    elif node.kind in CONTAINER_KINDS:
        out.append(f"<{tag}{attrs}></{tag}>")
    else:
        out.append(f"<{tag}{attrs}/>")


def canonical_serialize(doc: SvgDocument) -> str:
    """Single-line deterministic XML text for a document."""
    vb = " ".join(fmt_num(n) for n in doc.view_box)
    out = [f'<svg viewBox="{vb}">']
    for node in doc.elements:
        _serialize_node(node, out)
    out.append("</svg>")
    return "".join(out)
