"""Parse real-world SVG XML into the typed IR.

Constructs the IR cannot model (editor metadata, style sheets, unsupported
tags, comments, declarations) are classified as ForeignNode entries for the
normalizer's ledger instead of failing the parse.
"""

from __future__ import annotations

import re
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from typing import Optional

from .errors import MalformedXml, NoCanvasSize, NoRootSvg
from .ir import (
    ATTR_ORDER,
    NUMERIC_ATTRS,
    PAINT_ATTRS,
    Color,
    Node,
    Number,
    PathData,
    Points,
    Reference,
    SvgDocument,
    Text,
    Transform,
    num,
)
from .pathdata import parse_path_data

_TAG_TO_KIND = {
    "path": "path", "circle": "circle", "rect": "rect", "ellipse": "ellipse",
    "polygon": "polygon", "line": "line", "polyline": "polyline",
    "text": "text", "linearGradient": "linearGradient",
    "radialGradient": "radialGradient", "stop": "stop", "g": "group",
}

_EDITOR_NS_HINTS = ("inkscape", "sodipodi", "adobe", "sketch", "figma")

_DECL_RE = re.compile(r"<\?xml[^?]*\?>")
_DOCTYPE_RE = re.compile(r"<!DOCTYPE[^>]*>", re.IGNORECASE)
_COMMENT_RE = re.compile(r"<!--.*?-->", re.DOTALL)
_PI_RE = re.compile(r"<\?(?!xml\b).*?\?>", re.DOTALL)

_STYLE_PROPS = {
    "fill": "fill", "stroke": "stroke", "stroke-width": "stroke-width",
    "stroke-linecap": "stroke-linecap", "opacity": "opacity",
    "font-size": "font-size", "stop-color": "fill",
}

_HEX3_RE = re.compile(r"^#([0-9a-fA-F]{3})$")
_HEX6_RE = re.compile(r"^#([0-9a-fA-F]{6})$")
_RGB_RE = re.compile(r"^rgb\(\s*([^)]*)\)$", re.IGNORECASE)
_URL_RE = re.compile(r"^url\(\s*['\"]?#([^)'\"]+)['\"]?\s*\)$")
_TRANSFORM_RE = re.compile(r"([a-zA-Z]+)\s*\(([^)]*)\)")
_NUM_LIST_RE = re.compile(r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?")


@dataclass(frozen=True)
class RawSvg:
    xml_text: str
    source_path: Optional[str] = None


@dataclass(frozen=True)
class ForeignNode:
    tag_name: str
    reason: str  # unsupported_tag | editor_metadata | style_sheet |
                 # declaration | comment | doctype


@dataclass
class ParsedSvg:
    document: SvgDocument
    foreign: list = field(default_factory=list)
    dropped_attrs: list = field(default_factory=list)  # attribute names


def _local(tag: str) -> tuple:
    """Split an ET tag into (namespace, local name)."""
    if tag.startswith("{"):
        uri, _, name = tag[1:].partition("}")
        return uri, name
    return "", tag


def normalize_color(text: str) -> Optional[str]:
    """Coerce a CSS color into lowercase #rrggbb, 'none', or None."""
    text = text.strip()
    if text == "none":
        return "none"
    if text in ("currentColor", "currentcolor"):
        return "#000000"
    m = _HEX6_RE.match(text)
    if m:
        return "#" + m.group(1).lower()
    m = _HEX3_RE.match(text)
    if m:
        return "#" + "".join(c * 2 for c in m.group(1).lower())
    m = _RGB_RE.match(text)
    if m:
        parts = [p.strip() for p in m.group(1).split(",")]
        if len(parts) == 3:
            vals = []
            for p in parts:
                if p.endswith("%"):
                    v = round(float(p[:-1]) * 255 / 100)
                else:
                    v = round(float(p))
                vals.append(max(0, min(255, int(v))))
            return "#{:02x}{:02x}{:02x}".format(*vals)
        return None
    # Named CSS colors; matplotlib ships the full CSS4 table.
    from matplotlib.colors import CSS4_COLORS
    hexval = CSS4_COLORS.get(text.lower())
    if hexval:
        return hexval.lower()
    return None


def _parse_number(text: str) -> Optional[Number]:
    text = text.strip()
    if text.endswith("px"):
        text = text[:-2]
    percent = text.endswith("%")
    if percent:
        text = text[:-1]
    try:
        value = num(text)
    except Exception:
        return None
    if percent:
        value = value / num(100)
    return Number(value)


def _parse_transform(text: str) -> Optional[Transform]:
    functions = []
    for m in _TRANSFORM_RE.finditer(text):
        name = m.group(1)
        args = tuple(num(a) for a in _NUM_LIST_RE.findall(m.group(2)))
        functions.append((name, args))
    if not functions:
        return None
    return Transform(tuple(functions))


def _parse_points(text: str):
    nums = [num(t) for t in _NUM_LIST_RE.findall(text)]
    pairs = tuple(
        (nums[i], nums[i + 1]) for i in range(0, len(nums) - 1, 2))
    if not pairs:
        return None
    return Points(pairs)


def coerce_attr(name: str, text: str):
    """Build the AttrValue for a Table-listed attribute, or None to drop."""
    if name == "d":
        return PathData(parse_path_data(text))
    if name == "points":
        return _parse_points(text)
    if name in PAINT_ATTRS:
        m = _URL_RE.match(text.strip())
        if m:
            return Reference(m.group(1))
        color = normalize_color(text)
        return Color(color) if color else None
    if name == "href":
        target = text.strip()
        return Reference(target[1:]) if target.startswith("#") else None
    if name in ("transform", "gradientTransform"):
        return _parse_transform(text)
    if name in ("id", "stroke-linecap"):
        return Text(text.strip())
    if name in NUMERIC_ATTRS:
        return _parse_number(text)
    return None


class _Builder:
    def __init__(self):
        self.foreign = []
        self.dropped_attrs = []

    def element_attrs(self, elem, kind: str) -> list:
        attrs = []
        seen = set()

        def put(name, text):
            if name in seen:
                return
            value = coerce_attr(name, text)
            if value is None:
                self.dropped_attrs.append(name)
                return
            seen.add(name)
            attrs.append((name, value))

        for raw_name, text in elem.attrib.items():
            _, name = _local(raw_name)
            if name == "stop-color" and kind == "stop":
                name = "fill"
            if name == "style":
                for decl in text.split(";"):
                    prop, _, val = decl.partition(":")
                    prop = prop.strip()
                    mapped = _STYLE_PROPS.get(prop)
                    if mapped and val.strip():
                        put(mapped, val.strip())
                    elif prop:
                        self.dropped_attrs.append(f"style:{prop}")
                continue
            if name in ATTR_ORDER:
                put(name, text)
            else:
                self.dropped_attrs.append(name)
        return attrs

    def record_foreign_tree(self, elem):
        """Record an unsupported element and its whole subtree."""
        uri, name = _local(elem.tag)
        if name == "style":
            reason = "style_sheet"
        elif any(h in uri.lower() for h in _EDITOR_NS_HINTS):
            reason = "editor_metadata"
        else:
            reason = "unsupported_tag"
        self.foreign.append(ForeignNode(name, reason))
        for child in elem:
            self.record_foreign_tree(child)

    def build_children(self, elem) -> list:
        nodes = []
        for child in elem:
            _, name = _local(child.tag)
            kind = _TAG_TO_KIND.get(name)
            if kind is None:
                if name == "defs":
                    # Keep gradient definitions; they are hoisted to the
                    # position of the <defs> wrapper.
                    self.foreign.append(ForeignNode("defs", "unsupported_tag"))
                    nodes.extend(self.build_children(child))
                else:
                    self.record_foreign_tree(child)
                continue
            node = Node(kind, self.element_attrs(child, kind))
            if kind == "text":
                node.text = child.text or ""
            if kind in ("group", "linearGradient", "radialGradient"):
                node.children = self.build_children(child)
            else:
                for grandchild in child:
                    self.record_foreign_tree(grandchild)
            nodes.append(node)
        return nodes


def _view_box(root) -> tuple:
    vb = root.get("viewBox")
    if vb:
        nums = [num(t) for t in _NUM_LIST_RE.findall(vb)]
        if len(nums) == 4 and nums[2] > 0 and nums[3] > 0:
            return tuple(nums)
    width = _parse_number(root.get("width", ""))
    height = _parse_number(root.get("height", ""))
    if width and height and width.value > 0 and height.value > 0:
        return (num(0), num(0), width.value, height.value)
    raise NoCanvasSize("document has no viewBox and no width/height")


def parse_svg_full(raw: RawSvg) -> ParsedSvg:
    """Parse, returning the document plus foreign-node and dropped-attr lists."""
    text = raw.xml_text
    builder = _Builder()
    if _DECL_RE.search(text):
        builder.foreign.append(ForeignNode("xml", "declaration"))
        text = _DECL_RE.sub("", text)
    if _DOCTYPE_RE.search(text):
        builder.foreign.append(ForeignNode("DOCTYPE", "doctype"))
        text = _DOCTYPE_RE.sub("", text)
    for _ in _COMMENT_RE.findall(text):
        builder.foreign.append(ForeignNode("comment", "comment"))
    text = _COMMENT_RE.sub("", text)
    for _ in _PI_RE.findall(text):
        builder.foreign.append(ForeignNode("pi", "declaration"))
    text = _PI_RE.sub("", text)

    try:
        root = ET.fromstring(text)
    except ET.ParseError as exc:
        raise MalformedXml(str(exc)) from exc

    _, root_name = _local(root.tag)
    if root_name != "svg":
        raise NoRootSvg(f"root element is <{root_name}>, not <svg>")

    view_box = _view_box(root)
    elements = builder.build_children(root)
    doc = SvgDocument(view_box, elements)
    return ParsedSvg(doc, builder.foreign, builder.dropped_attrs)


def parse_svg(raw: RawSvg):
    """Parse into (SvgDocument, foreign nodes)."""
    parsed = parse_svg_full(raw)
    return parsed.document, parsed.foreign
