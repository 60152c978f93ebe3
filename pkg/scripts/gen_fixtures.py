"""Generate the SVG fixture corpus.

Writes two directories:

  tests/fixtures/raw/    110 hand-shaped-but-seeded raw SVG files, including
                         XML junk (declarations, doctypes, comments, PIs),
                         defs blocks, unsupported tags, style/class attributes,
                         absolute path data, and varied viewBoxes.
  tests/fixtures/clean/  the normalized form of each raw file (the corpus the
                         codec roundtrip tests run against).

The corpus is split into families:

  exact_*    viewBox 0 0 128 128, integer coordinates, nothing invisible.
             Normalization is value-preserving on these, so original and
             normalized files must rasterize pixel-identically.
  gen_*      varied viewBoxes and fractional coordinates; may contain
             invisible elements and every flavour of junk.
  subunit_*  geometry with sub-unit features so that quantizing to zero
             decimals visibly distorts the image (strict ordering case).

Deterministic: a fixed seed drives every random choice. Re-running the
script reproduces the corpus byte-for-byte.
"""

import pathlib
import random
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from svgx.normalizer import NormalizeOptions, normalize  # noqa: E402
from svgx.parser import RawSvg  # noqa: E402
from svgx.ir import canonical_serialize  # noqa: E402

ROOT = pathlib.Path(__file__).resolve().parents[1]
RAW = ROOT / "tests" / "fixtures" / "raw"
CLEAN = ROOT / "tests" / "fixtures" / "clean"

PALETTE = [
    "#ff0000", "#00ff00", "#0000ff", "#ffcc00", "#663399",
    "#008080", "#c0c0c0", "#111111", "#fa8072", "#4682b4",
]

VIEWBOXES = [(0, 0, 16, 16), (0, 0, 20, 20), (0, 0, 32, 32), (0, 0, 40, 40),
             (0, 0, 50, 50), (0, 0, 64, 64), (0, 0, 100, 100), (0, 0, 128, 128),
             (0, 0, 256, 256), (0, 0, 512, 512), (0, 0, 64, 32), (0, 0, 25, 40)]


def fnum(rnd, lo, hi, step):
    """A random multiple of `step` in [lo, hi]."""
    n = int((hi - lo) / step)
    v = lo + step * rnd.randint(0, n)
    txt = f"{v:.4f}".rstrip("0").rstrip(".")
    return txt or "0"


def color(rnd):
    return rnd.choice(PALETTE)


def circle(rnd, w, h, step):
    return (f'<circle cx="{fnum(rnd, 1, w - 1, step)}" cy="{fnum(rnd, 1, h - 1, step)}" '
            f'r="{fnum(rnd, max(step, w / 16), w / 4, step)}" fill="{color(rnd)}"/>')


def rect(rnd, w, h, step):
    return (f'<rect x="{fnum(rnd, 0, w / 2, step)}" y="{fnum(rnd, 0, h / 2, step)}" '
            f'width="{fnum(rnd, max(step, w / 8), w / 2, step)}" '
            f'height="{fnum(rnd, max(step, h / 8), h / 2, step)}" fill="{color(rnd)}"/>')


def ellipse(rnd, w, h, step):
    return (f'<ellipse cx="{fnum(rnd, 2, w - 2, step)}" cy="{fnum(rnd, 2, h - 2, step)}" '
            f'rx="{fnum(rnd, max(step, w / 16), w / 4, step)}" '
            f'ry="{fnum(rnd, max(step, h / 16), h / 4, step)}" fill="{color(rnd)}"/>')


def line(rnd, w, h, step):
    return (f'<line x1="{fnum(rnd, 0, w, step)}" y1="{fnum(rnd, 0, h, step)}" '
            f'x2="{fnum(rnd, 0, w, step)}" y2="{fnum(rnd, 0, h, step)}" '
            f'stroke="{color(rnd)}" stroke-width="{fnum(rnd, step, max(step, w / 32), step)}"/>')


def points(rnd, w, h, step, n):
    return " ".join(f"{fnum(rnd, 0, w, step)},{fnum(rnd, 0, h, step)}" for _ in range(n))


def polygon(rnd, w, h, step):
    return f'<polygon points="{points(rnd, w, h, step, rnd.randint(3, 6))}" fill="{color(rnd)}"/>'


def polyline(rnd, w, h, step):
    return (f'<polyline points="{points(rnd, w, h, step, rnd.randint(3, 6))}" fill="none" '
            f'stroke="{color(rnd)}" stroke-width="{fnum(rnd, step, max(step, w / 32), step)}"/>')


def text(rnd, w, h, step):
    word = rnd.choice(["sun", "moon", "leaf", "ox", "arc", "bee"])
    return (f'<text x="{fnum(rnd, 1, w / 2, step)}" y="{fnum(rnd, h / 4, h - 1, step)}" '
            f'font-size="{fnum(rnd, max(step, h / 16), h / 6, step)}" '
            f'fill="{color(rnd)}">{word}</text>')


def path_all_commands(rnd, w, h, step):
    """A path exercising every command letter, in absolute form."""
    g = lambda lo, hi: fnum(rnd, lo, hi, step)  # noqa: E731
    q = w / 4
    d = (f"M {g(1, q)} {g(1, q)} "
         f"L {g(q, 2 * q)} {g(1, q)} "
         f"H {g(2 * q, 3 * q)} "
         f"V {g(q, 2 * q)} "
         f"C {g(0, w)} {g(0, h)} {g(0, w)} {g(0, h)} {g(q, 3 * q)} {g(q, 3 * q)} "
         f"S {g(0, w)} {g(0, h)} {g(q, 3 * q)} {g(q, 3 * q)} "
         f"Q {g(0, w)} {g(0, h)} {g(q, 3 * q)} {g(q, 3 * q)} "
         f"T {g(q, 3 * q)} {g(q, 3 * q)} "
         f"A {g(1, q)} {g(1, q)} 0 0 1 {g(q, 3 * q)} {g(q, 3 * q)} "
         f"Z")
    return f'<path d="{d}" fill="{color(rnd)}"/>'


def path_mixed(rnd, w, h, step):
    """A path mixing absolute and relative commands."""
    g = lambda lo, hi: fnum(rnd, lo, hi, step)  # noqa: E731
    s = w / 8
    pieces = [f"M {g(s, w - s)} {g(s, h - s)}"]
    for _ in range(rnd.randint(2, 5)):
        pieces.append(rnd.choice([
            f"l {g(-s, s)} {g(-s, s)}",
            f"L {g(1, w - 1)} {g(1, h - 1)}",
            f"h {g(-s, s)}",
            f"v {g(-s, s)}",
            f"c {g(-s, s)} {g(-s, s)} {g(-s, s)} {g(-s, s)} {g(-s, s)} {g(-s, s)}",
            f"q {g(-s, s)} {g(-s, s)} {g(-s, s)} {g(-s, s)}",
            f"t {g(-s, s)} {g(-s, s)}",
            f"a {g(1, s)} {g(1, s)} 0 0 0 {g(-s, s)} {g(-s, s)}",
        ]))
    if rnd.random() < 0.7:
        pieces.append("Z")
    return f'<path d="{" ".join(pieces)}" fill="{color(rnd)}"/>'


def gradient(rnd, gid, radial=False):
    stops = "".join(
        f'<stop offset="{o}" stop-color="{color(rnd)}"/>'
        for o in ("0", "0.5", "1")[: rnd.randint(2, 3)])
    if radial:
        return (f'<radialGradient id="{gid}" cx="0.5" cy="0.5" r="0.5">'
                f"{stops}</radialGradient>")
    return (f'<linearGradient id="{gid}" x1="0" y1="0" x2="1" y2="0">'
            f"{stops}</linearGradient>")


SHAPE_FNS = [circle, rect, ellipse, line, polygon, polyline, text,
             path_all_commands, path_mixed]

JUNK_HEADERS = [
    '<?xml version="1.0" encoding="UTF-8"?>\n',
    '<?xml version="1.0" encoding="UTF-8" standalone="no"?>\n'
    '<!DOCTYPE svg PUBLIC "-//W3C//DTD SVG 1.1//EN" '
    '"http://www.w3.org/Graphics/SVG/1.1/DTD/svg11.dtd">\n',
    "",
]


def build_exact(rnd, idx):
    """128x128 canvas, integer coordinates, nothing invisible."""
    w = h = 128
    body = []
    grads = []
    if idx % 3 == 0:
        grads.append(gradient(rnd, f"eg{idx}", radial=(idx % 2 == 0)))
    n = rnd.randint(3, 6)
    for _ in range(n):
        body.append(rnd.choice(SHAPE_FNS)(rnd, w, h, 1))
    kind = f"url(#eg{idx})" if grads else color(rnd)
    body.append(f'<rect x="8" y="8" width="24" height="24" fill="{kind}"/>')
    if idx % 2 == 0:
        inner = circle(rnd, w, h, 1) + rect(rnd, w, h, 1)
        body.insert(rnd.randrange(len(body)), f"<g>{inner}</g>")
    defs = f"<defs>{''.join(grads)}</defs>" if grads else ""
    header = rnd.choice(JUNK_HEADERS)
    comment = "<!-- exact fixture -->" if idx % 2 else ""
    return (f'{header}<svg xmlns="http://www.w3.org/2000/svg" '
            f'viewBox="0 0 {w} {h}">{comment}{defs}{"".join(body)}</svg>')


def build_general(rnd, idx):
    vb = rnd.choice(VIEWBOXES)
    w, h = vb[2], vb[3]
    step = rnd.choice([0.05, 0.1, 0.25, 0.5, 1])
    body = []
    grads = []
    if rnd.random() < 0.5:
        grads.append(gradient(rnd, f"gg{idx}", radial=rnd.random() < 0.5))
    for _ in range(rnd.randint(2, 7)):
        body.append(rnd.choice(SHAPE_FNS)(rnd, w, h, step))
    if grads:
        body.append(f'<circle cx="{w / 2}" cy="{h / 2}" r="{w / 4}" fill="url(#gg{idx})"/>')
    if rnd.random() < 0.4:
        inner = "".join(rnd.choice(SHAPE_FNS)(rnd, w, h, step) for _ in range(2))
        body.append(f"<g>{inner}</g>")
    if rnd.random() < 0.3:
        body.append(f'<g opacity="0.5">{circle(rnd, w, h, step)}</g>')
    # Invisible junk: removed by normalization without changing the render.
    if rnd.random() < 0.3:
        body.append(f'<circle cx="1" cy="1" r="1" fill="{color(rnd)}" opacity="0"/>')
    if rnd.random() < 0.3:
        body.append('<rect x="0" y="0" width="2" height="2" fill="none"/>')
    # Unsupported subtrees and attribute junk.
    if rnd.random() < 0.4:
        body.insert(0, "<title>generated fixture</title>")
    if rnd.random() < 0.25:
        body.insert(0, "<metadata><x/></metadata>")
    if rnd.random() < 0.3:
        body.append(f'<rect class="decor" x="1" y="1" width="{w / 8}" '
                    f'height="{h / 8}" style="fill:{color(rnd)};opacity:0.8"/>')
    defs = f"<defs>{''.join(grads)}</defs>" if grads else ""
    header = rnd.choice(JUNK_HEADERS)
    junk = ""
    if rnd.random() < 0.5:
        junk += "<!-- generator junk -->"
    if rnd.random() < 0.2:
        junk += '<?keep nothing?>'
    size_attrs = (f'width="{w}" height="{h}" ' if rnd.random() < 0.3 else "")
    return (f'{header}{junk}<svg xmlns="http://www.w3.org/2000/svg" {size_attrs}'
            f'viewBox="0 0 {w} {h}">{defs}{"".join(body)}</svg>')


def build_subunit(rnd, idx):
    """Sub-unit geometry on the 128 canvas; quantizing to integers distorts."""
    body = []
    for i in range(12):
        x = 10 + i * 9 + rnd.randint(0, 3) * 0.25
        body.append(f'<circle cx="{x}" cy="{30 + (i % 3) * 0.4}" r="0.6" fill="{color(rnd)}"/>')
        body.append(f'<rect x="{x}" y="60.3" width="0.7" height="8.45" fill="{color(rnd)}"/>')
    body.append('<path d="M 10.25 100.5 l 0.4 0.4 h 0.45 v -0.35 c 0.2 0.1 0.3 0.2 0.45 0.3 Z" '
                'fill="#111111" stroke="#ff0000" stroke-width="0.15"/>')
    body.append('<polyline points="10.2,110.4 40.7,110.9 70.3,110.1" fill="none" '
                'stroke="#0000ff" stroke-width="0.3"/>')
    return ('<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 128 128">'
            + "".join(body) + "</svg>")


def main():
    rnd = random.Random(20260826)
    RAW.mkdir(parents=True, exist_ok=True)
    CLEAN.mkdir(parents=True, exist_ok=True)
    for old in list(RAW.glob("*.svg")) + list(CLEAN.glob("*.svg")):
        old.unlink()

    names = []
    for i in range(20):
        name = f"exact_{i:03d}.svg"
        (RAW / name).write_text(build_exact(rnd, i), encoding="utf-8")
        names.append(name)
    for i in range(88):
        name = f"gen_{i:03d}.svg"
        (RAW / name).write_text(build_general(rnd, i), encoding="utf-8")
        names.append(name)
    for i in range(2):
        name = f"subunit_{i:03d}.svg"
        (RAW / name).write_text(build_subunit(rnd, i), encoding="utf-8")
        names.append(name)

    opts = NormalizeOptions()
    seen_kinds = set()
    seen_ops = set()
    for name in names:
        raw = RawSvg((RAW / name).read_text(encoding="utf-8"), source_path=str(RAW / name))
        doc, _ = normalize(raw, opts)
        (CLEAN / name).write_text(canonical_serialize(doc), encoding="utf-8")
        for node in doc.walk():
            seen_kinds.add(node.kind)
            d = node.get("d")
            if d is not None:
                for cmd in d.commands:
                    seen_ops.add(cmd.op)

    missing_kinds = set(("path", "circle", "rect", "ellipse", "polygon", "line",
                         "polyline", "text", "linearGradient", "radialGradient",
                         "stop", "group")) - seen_kinds
    all_ops = {"MoveTo", "LineTo", "HLineTo", "VLineTo", "CurveTo",
               "SmoothCurveTo", "QuadTo", "SmoothQuadTo", "Arc", "ClosePath"}
    missing_ops = all_ops - seen_ops
    if missing_kinds or missing_ops:
        raise SystemExit(f"coverage gap: kinds={missing_kinds} ops={missing_ops}")
    print(f"wrote {len(names)} fixtures; kinds and path commands fully covered")


if __name__ == "__main__":
    main()
