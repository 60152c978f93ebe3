"""SVG path `d` attribute grammar.

Accepts comma/whitespace separators, implicit command repetition, crammed
arc flags, and scientific notation.  Errors report the byte offset of the
offending character.
"""

from __future__ import annotations

import re

from .errors import BadPathData
from .ir import PATH_OPS, PathCmd, num

_WSP = " \t\r\n,"
_NUMBER_RE = re.compile(
    r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?")
_FLAG_RE = re.compile(r"[01]")

# Arc arguments: rx ry x-rotation large-arc-flag sweep-flag x y.
_ARC_FLAG_POSITIONS = (3, 4)


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_sep(self):
        while self.pos < len(self.text) and self.text[self.pos] in _WSP:
            self.pos += 1

    def at_end(self) -> bool:
        self.skip_sep()
        return self.pos >= len(self.text)

    def peek(self) -> str:
        return self.text[self.pos]

    def number(self):
        self.skip_sep()
        m = _NUMBER_RE.match(self.text, self.pos)
        if not m:
            raise BadPathData("expected number", self.pos)
        self.pos = m.end()
        return num(m.group())

    def flag(self):
        self.skip_sep()
        m = _FLAG_RE.match(self.text, self.pos)
        if not m:
            raise BadPathData("expected arc flag (0 or 1)", self.pos)
        self.pos = m.end()
        return num(m.group())


def parse_path_data(d: str) -> tuple:
    """Parse a `d` string into a tuple of PathCmd."""
    scanner = _Scanner(d)
    commands = []
    letter = None

    while not scanner.at_end():
        ch = scanner.peek()
        if ch.upper() in PATH_OPS:
            letter = ch
            scanner.pos += 1
        elif letter is None:
            raise BadPathData(f"expected command letter, got {ch!r}", scanner.pos)

        op, arity = PATH_OPS[letter.upper()]
        relative = letter.islower()
        if arity == 0:
            commands.append(PathCmd(op, relative, ()))
            # Z repeats only with an explicit letter.
            letter = None
            continue

        args = []
        for i in range(arity):
            if op == "Arc" and i in _ARC_FLAG_POSITIONS:
                args.append(scanner.flag())
            else:
                args.append(scanner.number())
        commands.append(PathCmd(op, relative, tuple(args)))

        # Implicit repetition of MoveTo continues as LineTo.
        if op == "MoveTo":
            letter = "l" if relative else "L"

    if commands and commands[0].op != "MoveTo":
        raise BadPathData("path must start with a move-to", 0)
    return tuple(commands)
