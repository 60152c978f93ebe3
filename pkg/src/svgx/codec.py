"""Bidirectional SVG document <-> semantic token sequence conversion."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Callable, Optional

from .errors import EmptySequence, UnsupportedNode
from .ir import (
    Node,
    PathCmd,
    PathData,
    Reference,
    SvgDocument,
    _ATTR_RANK,
    OP_ARITY,
    fmt_num,
    num,
)
from . import parser as _parser
from .vocab import (
    KIND_TOKEN,
    PATH_OP_TOKEN,
    TOKEN_KIND,
    TOKEN_PATH_OP,
    SemanticToken,
    by_surface,
    token,
    vocab,
)


@dataclass(frozen=True)
class Semantic:
    token: SemanticToken


@dataclass(frozen=True)
class Literal:
    text: str


@dataclass(frozen=True)
class TokenSeq:
    items: tuple

    def __len__(self):
        return len(self.items)

    def __iter__(self):
        return iter(self.items)


@dataclass
class DecodeReport:
    recoveries: list = field(default_factory=list)

    def note(self, message: str):
        self.recoveries.append(message)


TokenCounter = Callable[[object], int]


def _sem(name: str) -> Semantic:
    return Semantic(token(name))


# ---------------------------------------------------------------------------
# Encoding

def _attr_value_text(name: str, value) -> str:
    if isinstance(value, Reference):
        return value.to_svg(name)
    return value.to_svg()


def _encode_attrs(node: Node, items: list):
    for name, value in sorted(node.attrs, key=lambda kv: _ATTR_RANK[kv[0]]):
        items.append(_sem(name))
        if name == "d":
            for cmd in value.commands:
                items.append(_sem(PATH_OP_TOKEN[cmd.op]))
                if cmd.args:
                    items.append(Literal(" ".join(fmt_num(a) for a in cmd.args)))
        else:
            items.append(Literal(_attr_value_text(name, value)))


def _encode_node(node: Node, items: list):
    if node.kind == "group":
        items.append(_sem("start_of_g"))
        _encode_attrs(node, items)
        for child in node.children:
            _encode_node(child, items)
        items.append(_sem("end_of_g"))
        return
    tag = KIND_TOKEN.get(node.kind)
    if tag is None:
        raise UnsupportedNode(node.kind)
    items.append(_sem(tag))
    # Text content directly follows the tag token so that no two Literals
    # are ever adjacent (the text wire form merges adjacent literals).
    if node.kind == "text" and node.text:
        items.append(Literal(node.text))
    _encode_attrs(node, items)
    for child in node.children:
        _encode_node(child, items)


def encode(doc: SvgDocument) -> TokenSeq:
    items = [_sem("START_OF_SVG")]
    for node in doc.elements:
        _encode_node(node, items)
    items.append(_sem("END_OF_SVG"))
    return TokenSeq(tuple(items))


# ---------------------------------------------------------------------------
# Decoding (defensive: input may be arbitrary model output)

_GRADIENT_KINDS = ("linearGradient", "radialGradient")


class _Decoder:
    def __init__(self):
        self.report = DecodeReport()
        self.top = []          # finished top-level nodes
        self.group_stack = []  # open groups
        self.element = None    # element collecting attributes
        self.gradient = None   # gradient collecting stops
        self.pending_attr = None
        self.in_d = None       # list of PathCmd while reading d
        self.pending_cmd = None

    def _sink(self) -> list:
        if self.group_stack:
            return self.group_stack[-1].children
        return self.top

    def _flush_attr(self):
        if self.pending_cmd is not None:
            op = self.pending_cmd
            if OP_ARITY[op] == 0:
                self.in_d.append(PathCmd(op, True, ()))
            else:
                self.report.note(f"path command {op} missing coordinates; dropped")
            self.pending_cmd = None
        if self.in_d is not None:
            cmds = self.in_d
            if cmds and cmds[0].op == "MoveTo":
                cmds[0] = PathCmd("MoveTo", False, cmds[0].args)
                self.element.set("d", PathData(tuple(cmds)))
            elif cmds:
                self.report.note("path data does not start with move-to; dropped")
            else:
                self.report.note("attribute d has no commands; dropped")
            self.in_d = None
            self.pending_attr = None
            return
        if self.pending_attr is not None:
            self.report.note(
                f"attribute {self.pending_attr} has no value; dropped")
            self.pending_attr = None

    def _finish_element(self):
        self._flush_attr()
        self.element = None

    def start_element(self, kind: str):
        self._finish_element()
        node = Node(kind)
        if kind == "stop" and self.gradient is not None:
            self.gradient.children.append(node)
        else:
            if kind == "stop":
                self.report.note("stop outside a gradient; kept at top level")
            self._sink().append(node)
            self.gradient = node if kind in _GRADIENT_KINDS else None
        self.element = node

    def start_group(self):
        self._finish_element()
        self.gradient = None
        group = Node("group")
        self._sink().append(group)
        self.group_stack.append(group)
        self.element = group

    def end_group(self):
        self._finish_element()
        self.gradient = None
        if self.group_stack:
            self.group_stack.pop()
        else:
            self.report.note("unmatched end-of-group; ignored")

    def attribute(self, name: str):
        self._flush_attr()
        if self.element is None:
            self.report.note(f"attribute {name} with no element; dropped")
            return
        if name == "d":
            if self.element.kind != "path":
                self.report.note(
                    f"attribute d on <{self.element.kind}>; dropped")
                return
            self.in_d = []
        else:
            self.pending_attr = name

    def path_command(self, op: str):
        if self.in_d is None:
            self.report.note(f"path command {op} outside d; dropped")
            return
        if self.pending_cmd is not None:
            if OP_ARITY[self.pending_cmd] == 0:
                self.in_d.append(PathCmd(self.pending_cmd, True, ()))
            else:
                self.report.note(
                    f"path command {self.pending_cmd} missing coordinates; dropped")
        self.pending_cmd = op

    def literal(self, text: str):
        if self.pending_cmd is not None:
            op = self.pending_cmd
            self.pending_cmd = None
            arity = OP_ARITY[op]
            try:
                args = tuple(num(t) for t in text.split())
            except Exception:
                args = None
            if args is None or len(args) != arity:
                self.report.note(f"bad coordinates for {op}: {text!r}; dropped")
                return
            self.in_d.append(PathCmd(op, True, args))
            return
        if self.pending_attr is not None:
            name = self.pending_attr
            self.pending_attr = None
            try:
                value = _parser.coerce_attr(name, text)
            except Exception:
                value = None
            if value is None:
                self.report.note(f"unparseable value for {name}: {text!r}; dropped")
            else:
                self.element.set(name, value)
            return
        if self.element is not None and self.element.kind == "text":
            self.element.text = (self.element.text or "") + text
            return
        self.report.note(f"stray literal {text!r}; dropped")

    def finish(self, saw_end: bool) -> SvgDocument:
        self._finish_element()
        if not saw_end:
            self.report.note("missing END_OF_SVG; implied at end of input")
        while self.group_stack:
            self.group_stack.pop()
            self.report.note("unclosed group; closed at document end")
        side = num(128)
        return SvgDocument((num(0), num(0), side, side), self.top)


def decode(seq: TokenSeq):
    """Best-effort reconstruction; returns (SvgDocument, DecodeReport)."""
    items = list(seq.items)
    start = None
    for i, item in enumerate(items):
        if isinstance(item, Semantic) and item.token.surface == token("START_OF_SVG").surface:
            start = i
            break
    if start is None:
        raise EmptySequence("no START_OF_SVG in sequence")

    dec = _Decoder()
    if start > 0:
        dec.report.note(f"{start} item(s) before START_OF_SVG; skipped")
    saw_end = False
    for item in items[start + 1:]:
        if isinstance(item, Literal):
            dec.literal(item.text)
            continue
        name = item.token.surface[3:-3]
        if name == "END_OF_SVG":
            saw_end = True
            break
        if name == "START_OF_SVG":
            dec.report.note("duplicate START_OF_SVG; ignored")
        elif name == "start_of_g":
            dec.start_group()
        elif name == "end_of_g":
            dec.end_group()
        elif name in TOKEN_KIND:
            dec.start_element(TOKEN_KIND[name])
        elif name in TOKEN_PATH_OP:
            dec.path_command(TOKEN_PATH_OP[name])
        else:  # attribute token
            dec.attribute(name)
    return dec.finish(saw_end), dec.report


# ---------------------------------------------------------------------------
# Text wire form

def to_text(seq: TokenSeq) -> str:
    parts = []
    for item in seq:
        parts.append(item.token.surface if isinstance(item, Semantic) else item.text)
    return " ".join(parts)


_SURFACE_RE = re.compile(
    "|".join(re.escape(t.surface) for t in
             sorted(vocab(), key=lambda t: -len(t.surface))))


def from_text(text: str) -> TokenSeq:
    items = []
    pos = 0
    for m in _SURFACE_RE.finditer(text):
        between = text[pos:m.start()].strip()
        if between:
            items.append(Literal(between))
        items.append(Semantic(by_surface(m.group())))
        pos = m.end()
    tail = text[pos:].strip()
    if tail:
        items.append(Literal(tail))
    return TokenSeq(tuple(items))


# ---------------------------------------------------------------------------
# Truncation

def truncate(seq: TokenSeq, max_len: int = 4096,
             unit_counter: Optional[TokenCounter] = None) -> TokenSeq:
    if max_len <= 0:
        raise ValueError("max_len must be positive")
    counter = unit_counter or (lambda item: 1)
    total = 0
    kept = []
    for item in seq:
        cost = counter(item)
        if total + cost > max_len:
            break
        total += cost
        kept.append(item)
    if len(kept) == len(seq.items):
        return seq
    return TokenSeq(tuple(kept))
