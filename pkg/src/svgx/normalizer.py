"""Lossless preprocessing pipeline.

Strip redundancy, hoist gradients out of <defs>, rescale onto a square
canvas, convert path data to relative commands, and quantize numbers.
"""

from __future__ import annotations

import decimal
from collections import Counter
from dataclasses import dataclass, field
from decimal import Decimal
from typing import Optional

from .errors import DanglingReference
from .ir import (
    CTX,
    GEOMETRY_KINDS,
    GRADIENT_KINDS,
    Color,
    Node,
    Number,
    PathCmd,
    PathData,
    Points,
    Reference,
    SvgDocument,
    Transform,
    canonical_serialize,
    num,
)
from .parser import RawSvg, parse_svg_full


@dataclass
class NormalizeOptions:
    decimal_places: Optional[int] = 2  # None disables rounding
    canvas_size: int = 128
    unwrap_groups: bool = True


@dataclass
class NormalizationReport:
    removed: Counter = field(default_factory=Counter)
    counts_before: Counter = field(default_factory=Counter)
    counts_after: Counter = field(default_factory=Counter)
    bytes_before: int = 0
    bytes_after: int = 0

    def to_dict(self) -> dict:
        return {
            "removed": dict(sorted(self.removed.items())),
            "counts_before": dict(sorted(self.counts_before.items())),
            "counts_after": dict(sorted(self.counts_after.items())),
            "bytes_before": self.bytes_before,
            "bytes_after": self.bytes_after,
        }


_BARE_REASONS = ("declaration", "comment", "doctype")


def _foreign_key(fn) -> str:
    if fn.reason in _BARE_REASONS:
        return fn.reason
    return f"{fn.reason}:{fn.tag_name}"


def _count_kinds(doc: SvgDocument) -> Counter:
    counts = Counter()
    for node in doc.walk():
        counts[node.kind] += 1
    return counts


def _unwrap_groups(nodes: list, removed: Counter) -> list:
    out = []
    for node in nodes:
        node.children = _unwrap_groups(node.children, removed)
        if node.kind == "group" and not node.attrs:
            removed["group"] += 1
            out.extend(node.children)
        else:
            out.append(node)
    return out


def _is_invisible(node: Node) -> bool:
    opacity = node.get("opacity")
    if isinstance(opacity, Number) and opacity.value == 0:
        return True
    if node.kind in GEOMETRY_KINDS:
        fill = node.get("fill")
        stroke = node.get("stroke")
        no_stroke = stroke is None or stroke == Color("none")
        if fill == Color("none") and no_stroke:
            return True
    return False


def _remove_invisible(nodes: list, removed: Counter) -> list:
    out = []
    for node in nodes:
        if node.kind in GRADIENT_KINDS:
            out.append(node)
            continue
        if _is_invisible(node):
            removed[node.kind] += 1
            continue
        node.children = _remove_invisible(node.children, removed)
        out.append(node)
    return out


def _collect_refs(doc: SvgDocument) -> set:
    refs = set()
    for node in doc.walk():
        for name, value in node.attrs:
            if isinstance(value, Reference) and name in ("fill", "stroke"):
                refs.add(value.target)
    # Gradients referenced via href by referenced gradients (transitive).
    by_id = {}
    for node in doc.walk():
        ident = node.get("id")
        if ident is not None and node.kind in GRADIENT_KINDS:
            by_id[ident.value] = node
    frontier = list(refs)
    while frontier:
        target = frontier.pop()
        node = by_id.get(target)
        if node is None:
            continue
        href = node.get("href")
        if isinstance(href, Reference) and href.target not in refs:
            refs.add(href.target)
            frontier.append(href.target)
    return refs


def strip_redundant(doc: SvgDocument, foreign: list,
                    unwrap_groups: bool = True):
    """Remove non-rendering machinery; returns (doc, NormalizationReport)."""
    report = NormalizationReport()
    report.counts_before = _count_kinds(doc)
    for fn in foreign:
        report.removed[_foreign_key(fn)] += 1
        if fn.reason in ("unsupported_tag", "editor_metadata", "style_sheet"):
            report.counts_before[fn.tag_name] += 1
    report.bytes_before = len(canonical_serialize(doc).encode("utf-8"))

    elements = doc.elements
    if unwrap_groups:
        elements = _unwrap_groups(elements, report.removed)
    elements = _remove_invisible(elements, report.removed)

    # Hoist gradients to the document top level, in document order.
    gradients, rest = [], []

    def split(nodes):
        for node in nodes:
            if node.kind in ("linearGradient", "radialGradient"):
                gradients.append(node)
            else:
                node.children = list(split_children(node.children))
                rest.append(node)

    def split_children(nodes):
        for node in nodes:
            if node.kind in ("linearGradient", "radialGradient"):
                gradients.append(node)
            else:
                node.children = list(split_children(node.children))
                yield node

    split(elements)

    stripped = SvgDocument(doc.view_box, gradients + rest)
    refs = _collect_refs(stripped)

    kept = []
    ids_seen = set()
    for node in stripped.elements:
        if node.kind in ("linearGradient", "radialGradient"):
            ident = node.get("id")
            if ident is None or ident.value not in refs:
                report.removed[node.kind] += 1
                continue
            ids_seen.add(ident.value)
        kept.append(node)
    stripped.elements = kept

    missing = refs - ids_seen
    if missing:
        raise DanglingReference(
            "reference to undefined id(s): " + ", ".join(sorted(missing)))

    report.counts_after = _count_kinds(stripped)
    report.bytes_after = len(canonical_serialize(stripped).encode("utf-8"))
    return stripped, report


# ---------------------------------------------------------------------------
# Relative path conversion

def _to_relative(commands: tuple) -> tuple:
    out = []
    cx = cy = Decimal(0)
    sx = sy = Decimal(0)
    for i, cmd in enumerate(commands):
        op, args = cmd.op, cmd.args
        if i == 0:
            # Anchor: the first move-to stays absolute.
            out.append(PathCmd("MoveTo", False, args))
            cx, cy = args
            sx, sy = args
            continue
        if cmd.relative:
            out.append(cmd)
            if op == "HLineTo":
                cx += args[0]
            elif op == "VLineTo":
                cy += args[0]
            elif op == "ClosePath":
                cx, cy = sx, sy
            elif op == "Arc":
                cx += args[5]
                cy += args[6]
            else:
                cx += args[-2]
                cy += args[-1]
            if op == "MoveTo":
                sx, sy = cx, cy
            continue
        # Absolute: subtract the running point.
        if op == "ClosePath":
            out.append(PathCmd(op, True, ()))
            cx, cy = sx, sy
        elif op == "HLineTo":
            out.append(PathCmd(op, True, (args[0] - cx,)))
            cx = args[0]
        elif op == "VLineTo":
            out.append(PathCmd(op, True, (args[0] - cy,)))
            cy = args[0]
        elif op == "Arc":
            rel = args[:5] + (args[5] - cx, args[6] - cy)
            out.append(PathCmd(op, True, rel))
            cx, cy = args[5], args[6]
        else:
            rel = tuple(
                a - (cx if j % 2 == 0 else cy) for j, a in enumerate(args))
            out.append(PathCmd(op, True, rel))
            cx, cy = args[-2], args[-1]
            if op == "MoveTo":
                sx, sy = cx, cy
    return tuple(out)


def to_relative_paths(doc: SvgDocument) -> SvgDocument:
    for node in doc.walk():
        d = node.get("d")
        if isinstance(d, PathData) and d.commands:
            node.set("d", PathData(_to_relative(d.commands)))
    return doc


# ---------------------------------------------------------------------------
# Number quantization

def _quantize(value: Decimal, places: int) -> Decimal:
    exp = Decimal(1).scaleb(-places)
    return value.quantize(exp, rounding=decimal.ROUND_HALF_UP, context=CTX)


def round_numbers(doc: SvgDocument, places: int) -> SvgDocument:
    def q(v):
        return _quantize(v, places)

    for node in doc.walk():
        for i, (name, value) in enumerate(node.attrs):
            if isinstance(value, Number):
                node.attrs[i] = (name, Number(q(value.value)))
            elif isinstance(value, PathData):
                cmds = tuple(
                    PathCmd(c.op, c.relative, tuple(q(a) for a in c.args))
                    for c in value.commands)
                node.attrs[i] = (name, PathData(cmds))
            elif isinstance(value, Points):
                pairs = tuple((q(x), q(y)) for x, y in value.pairs)
                node.attrs[i] = (name, Points(pairs))
            elif isinstance(value, Transform):
                fns = tuple(
                    (fn, tuple(q(a) for a in args))
                    for fn, args in value.functions)
                node.attrs[i] = (name, Transform(fns))
    return doc


# ---------------------------------------------------------------------------
# Canvas rescale

_SCALE_ONLY_ATTRS = ("r", "rx", "ry", "width", "height",
                     "stroke-width", "font-size")
_X_ATTRS = ("cx", "x", "x1", "x2")
_Y_ATTRS = ("cy", "y", "y1", "y2")


def _rescale_path(commands: tuple, s: Decimal, ox: Decimal, oy: Decimal):
    out = []
    for cmd in commands:
        op, args = cmd.op, cmd.args
        tx = Decimal(0) if cmd.relative else ox
        ty = Decimal(0) if cmd.relative else oy
        if op == "ClosePath":
            out.append(cmd)
        elif op == "HLineTo":
            out.append(PathCmd(op, cmd.relative, (args[0] * s + tx,)))
        elif op == "VLineTo":
            out.append(PathCmd(op, cmd.relative, (args[0] * s + ty,)))
        elif op == "Arc":
            new = (args[0] * s, args[1] * s, args[2], args[3], args[4],
                   args[5] * s + tx, args[6] * s + ty)
            out.append(PathCmd(op, cmd.relative, new))
        else:
            new = tuple(
                a * s + (tx if j % 2 == 0 else ty)
                for j, a in enumerate(args))
            out.append(PathCmd(op, cmd.relative, new))
    return tuple(out)


def _rescale_node(node: Node, s: Decimal, ox: Decimal, oy: Decimal):
    if node.kind in GRADIENT_KINDS:
        # Gradient geometry is in bounding-box fractions; leave it alone.
        return
    if node.get("transform") is not None:
        # The subtree renders through its own transform; compose the canvas
        # map in front of it instead of rewriting coordinates.
        t = node.get("transform")
        prefix = ("matrix", (s, num(0), num(0), s, ox, oy))
        node.set("transform", Transform((prefix,) + t.functions))
        return
    for i, (name, value) in enumerate(node.attrs):
        if isinstance(value, Number):
            if name in _SCALE_ONLY_ATTRS:
                node.attrs[i] = (name, Number(value.value * s))
            elif name in _X_ATTRS:
                node.attrs[i] = (name, Number(value.value * s + ox))
            elif name in _Y_ATTRS:
                node.attrs[i] = (name, Number(value.value * s + oy))
        elif isinstance(value, PathData):
            node.attrs[i] = (name, PathData(
                _rescale_path(value.commands, s, ox, oy)))
        elif isinstance(value, Points):
            pairs = tuple(
                (x * s + ox, y * s + oy) for x, y in value.pairs)
            node.attrs[i] = (name, Points(pairs))
    for child in node.children:
        _rescale_node(child, s, ox, oy)


def rescale_canvas(doc: SvgDocument, size) -> SvgDocument:
    size = num(size)
    min_x, min_y, w, h = doc.view_box
    s = CTX.divide(size, max(w, h))
    ox = (size - w * s) / 2 - min_x * s
    oy = (size - h * s) / 2 - min_y * s
    if s == 1 and ox == 0 and oy == 0:
        doc.view_box = (num(0), num(0), size, size)
        return doc
    for node in doc.elements:
        _rescale_node(node, s, ox, oy)
    doc.view_box = (num(0), num(0), size, size)
    return doc


# ---------------------------------------------------------------------------
# Full pipeline

def normalize(raw: RawSvg, opts: Optional[NormalizeOptions] = None):
    """parse -> strip -> rescale -> relative paths -> rounding."""
    opts = opts or NormalizeOptions()
    parsed = parse_svg_full(raw)
    doc, report = strip_redundant(
        parsed.document, parsed.foreign, unwrap_groups=opts.unwrap_groups)
    for name in parsed.dropped_attrs:
        report.removed[f"attribute:{name}"] += 1
    doc = rescale_canvas(doc, opts.canvas_size)
    doc = to_relative_paths(doc)
    if opts.decimal_places is not None:
        doc = round_numbers(doc, opts.decimal_places)
    report.bytes_before = len(raw.xml_text.encode("utf-8"))
    report.bytes_after = len(canonical_serialize(doc).encode("utf-8"))
    return doc, report
