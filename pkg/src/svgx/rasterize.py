"""Reference rasterizer: SVG file in, PNG over white out.

Bundled so the render-equivalence oracle works without a system SVG
renderer; any conformant external rasterizer can be swapped in through
RendererConfig. Geometry is resolved in Decimal before float conversion so
exact IR transformations rasterize identically before and after.

Usage: python -m svgx.rasterize IN.svg OUT.png SIZE
"""

from __future__ import annotations

import math
import sys
from decimal import Decimal

import numpy as np

from .ir import (
    Color,
    Node,
    Number,
    PathData,
    Points,
    Reference,
    SvgDocument,
    Text,
    Transform,
)
from .parser import RawSvg, parse_svg_full

# Cubic-bezier circle approximation constant.
_KAPPA = 0.5522847498307936

_MOVETO, _LINETO, _CURVE3, _CURVE4, _CLOSEPOLY = 1, 2, 3, 4, 79


def _f(value) -> float:
    return float(value)


# ---------------------------------------------------------------------------
# Path resolution: PathCmd list -> matplotlib vertex/code arrays

def _arc_to_cubics(x1, y1, rx, ry, phi_deg, large, sweep, x2, y2):
    """Endpoint-parameterized elliptical arc -> cubic segments."""
    if rx == 0 or ry == 0:
        return [("L", x2, y2)]
    rx, ry = abs(rx), abs(ry)
    phi = math.radians(phi_deg % 360)
    cphi, sphi = math.cos(phi), math.sin(phi)
    dx, dy = (x1 - x2) / 2, (y1 - y2) / 2
    x1p = cphi * dx + sphi * dy
    y1p = -sphi * dx + cphi * dy
    lam = (x1p / rx) ** 2 + (y1p / ry) ** 2
    if lam > 1:
        scale = math.sqrt(lam)
        rx *= scale
        ry *= scale
    num = rx**2 * ry**2 - rx**2 * y1p**2 - ry**2 * x1p**2
    den = rx**2 * y1p**2 + ry**2 * x1p**2
    if den == 0:
        return [("L", x2, y2)]
    coef = math.sqrt(max(0.0, num / den))
    if large == sweep:
        coef = -coef
    cxp = coef * rx * y1p / ry
    cyp = -coef * ry * x1p / rx
    cx = cphi * cxp - sphi * cyp + (x1 + x2) / 2
    cy = sphi * cxp + cphi * cyp + (y1 + y2) / 2

    def angle(ux, uy, vx, vy):
        dot = ux * vx + uy * vy
        norm = math.hypot(ux, uy) * math.hypot(vx, vy)
        a = math.acos(max(-1.0, min(1.0, dot / norm)))
        if ux * vy - uy * vx < 0:
            a = -a
        return a

    theta1 = angle(1, 0, (x1p - cxp) / rx, (y1p - cyp) / ry)
    dtheta = angle((x1p - cxp) / rx, (y1p - cyp) / ry,
                   (-x1p - cxp) / rx, (-y1p - cyp) / ry)
    if not sweep and dtheta > 0:
        dtheta -= 2 * math.pi
    elif sweep and dtheta < 0:
        dtheta += 2 * math.pi

    segments = []
    n = max(1, int(math.ceil(abs(dtheta) / (math.pi / 2))))
    delta = dtheta / n
    alpha = 4 / 3 * math.tan(delta / 4)
    t = theta1
    for _ in range(n):
        cos1, sin1 = math.cos(t), math.sin(t)
        cos2, sin2 = math.cos(t + delta), math.sin(t + delta)

        def point(c, s):
            return (cx + rx * cphi * c - ry * sphi * s,
                    cy + rx * sphi * c + ry * cphi * s)

        def deriv(c, s):
            return (-rx * cphi * s - ry * sphi * c,
                    -rx * sphi * s + ry * cphi * c)

        p1 = point(cos1, sin1)
        p2 = point(cos2, sin2)
        d1 = deriv(cos1, sin1)
        d2 = deriv(cos2, sin2)
        segments.append((
            "C",
            p1[0] + alpha * d1[0], p1[1] + alpha * d1[1],
            p2[0] - alpha * d2[0], p2[1] - alpha * d2[1],
            p2[0], p2[1]))
        t += delta
    # Land exactly on the endpoint.
    if segments and segments[-1][0] == "C":
        last = segments[-1]
        segments[-1] = ("C", last[1], last[2], last[3], last[4], x2, y2)
    return segments


def path_to_vertices(commands):
    """Resolve a PathCmd tuple to (vertices, codes) float arrays."""
    verts, codes = [], []
    zero = Decimal(0)
    cx = cy = zero          # current point
    sx = sy = zero          # subpath start
    prev_cubic_ctrl = None  # for S reflection
    prev_quad_ctrl = None   # for T reflection

    for cmd in commands:
        op, rel, args = cmd.op, cmd.relative, cmd.args
        ox = cx if rel else zero
        oy = cy if rel else zero
        new_cubic = None
        new_quad = None
        if op == "MoveTo":
            cx, cy = args[0] + ox, args[1] + oy
            sx, sy = cx, cy
            verts.append((_f(cx), _f(cy)))
            codes.append(_MOVETO)
        elif op == "LineTo":
            cx, cy = args[0] + ox, args[1] + oy
            verts.append((_f(cx), _f(cy)))
            codes.append(_LINETO)
        elif op == "HLineTo":
            cx = args[0] + ox
            verts.append((_f(cx), _f(cy)))
            codes.append(_LINETO)
        elif op == "VLineTo":
            cy = args[0] + oy
            verts.append((_f(cx), _f(cy)))
            codes.append(_LINETO)
        elif op in ("CurveTo", "SmoothCurveTo"):
            if op == "CurveTo":
                c1 = (args[0] + ox, args[1] + oy)
                c2 = (args[2] + ox, args[3] + oy)
                end = (args[4] + ox, args[5] + oy)
            else:
                if prev_cubic_ctrl is not None:
                    c1 = (2 * cx - prev_cubic_ctrl[0],
                          2 * cy - prev_cubic_ctrl[1])
                else:
                    c1 = (cx, cy)
                c2 = (args[0] + ox, args[1] + oy)
                end = (args[2] + ox, args[3] + oy)
            verts.extend([(_f(c1[0]), _f(c1[1])), (_f(c2[0]), _f(c2[1])),
                          (_f(end[0]), _f(end[1]))])
            codes.extend([_CURVE4] * 3)
            cx, cy = end
            new_cubic = c2
        elif op in ("QuadTo", "SmoothQuadTo"):
            if op == "QuadTo":
                c = (args[0] + ox, args[1] + oy)
                end = (args[2] + ox, args[3] + oy)
            else:
                if prev_quad_ctrl is not None:
                    c = (2 * cx - prev_quad_ctrl[0],
                         2 * cy - prev_quad_ctrl[1])
                else:
                    c = (cx, cy)
                end = (args[0] + ox, args[1] + oy)
            verts.extend([(_f(c[0]), _f(c[1])), (_f(end[0]), _f(end[1]))])
            codes.extend([_CURVE3] * 2)
            cx, cy = end
            new_quad = c
        elif op == "Arc":
            ex, ey = args[5] + ox, args[6] + oy
            segs = _arc_to_cubics(
                _f(cx), _f(cy), _f(args[0]), _f(args[1]), _f(args[2]),
                args[3] != 0, args[4] != 0, _f(ex), _f(ey))
            for seg in segs:
                if seg[0] == "L":
                    verts.append((seg[1], seg[2]))
                    codes.append(_LINETO)
                else:
                    verts.extend([(seg[1], seg[2]), (seg[3], seg[4]),
                                  (seg[5], seg[6])])
                    codes.extend([_CURVE4] * 3)
            cx, cy = ex, ey
        elif op == "ClosePath":
            verts.append((_f(sx), _f(sy)))
            codes.append(_CLOSEPOLY)
            cx, cy = sx, sy
        prev_cubic_ctrl = new_cubic
        prev_quad_ctrl = new_quad
    return np.array(verts, dtype=float).reshape(-1, 2), codes


# ---------------------------------------------------------------------------
# Shape outlines as path data

def _ellipse_path(cx, cy, rx, ry):
    k_x, k_y = rx * _KAPPA, ry * _KAPPA
    verts = [
        (cx + rx, cy),
        (cx + rx, cy + k_y), (cx + k_x, cy + ry), (cx, cy + ry),
        (cx - k_x, cy + ry), (cx - rx, cy + k_y), (cx - rx, cy),
        (cx - rx, cy - k_y), (cx - k_x, cy - ry), (cx, cy - ry),
        (cx + k_x, cy - ry), (cx + rx, cy - k_y), (cx + rx, cy),
        (cx + rx, cy),
    ]
    codes = [_MOVETO] + [_CURVE4] * 12 + [_CLOSEPOLY]
    return np.array(verts, dtype=float), codes


# ---------------------------------------------------------------------------
# Transforms

def transform_matrix(t: Transform) -> np.ndarray:
    m = np.eye(3)
    for name, args in t.functions:
        a = [float(v) for v in args]
        if name == "translate":
            tx = a[0]
            ty = a[1] if len(a) > 1 else 0.0
            f = np.array([[1, 0, tx], [0, 1, ty], [0, 0, 1]], dtype=float)
        elif name == "scale":
            sx = a[0]
            sy = a[1] if len(a) > 1 else sx
            f = np.array([[sx, 0, 0], [0, sy, 0], [0, 0, 1]], dtype=float)
        elif name == "rotate":
            th = math.radians(a[0])
            c, s = math.cos(th), math.sin(th)
            f = np.array([[c, -s, 0], [s, c, 0], [0, 0, 1]], dtype=float)
            if len(a) == 3:
                pre = np.array([[1, 0, a[1]], [0, 1, a[2]], [0, 0, 1]], dtype=float)
                post = np.array([[1, 0, -a[1]], [0, 1, -a[2]], [0, 0, 1]], dtype=float)
                f = pre @ f @ post
        elif name == "matrix" and len(a) == 6:
            f = np.array([[a[0], a[2], a[4]], [a[1], a[3], a[5]], [0, 0, 1]],
                         dtype=float)
        elif name == "skewX":
            f = np.array([[1, math.tan(math.radians(a[0])), 0],
                          [0, 1, 0], [0, 0, 1]], dtype=float)
        elif name == "skewY":
            f = np.array([[1, 0, 0],
                          [math.tan(math.radians(a[0])), 1, 0], [0, 0, 1]],
                         dtype=float)
        else:
            continue
        m = m @ f
    return m


# ---------------------------------------------------------------------------
# Paint resolution

def _gradient_mean_color(doc: SvgDocument, target: str):
    by_id = {}
    for node in doc.walk():
        ident = node.get("id")
        if isinstance(ident, Text):
            by_id[ident.value] = node

    seen = set()
    name = target
    while name and name not in seen:
        seen.add(name)
        node = by_id.get(name)
        if node is None:
            return None
        stops = [c for c in node.children if c.kind == "stop"]
        if stops:
            colors = []
            for stop in stops:
                fill = stop.get("fill")
                if isinstance(fill, Color) and fill.value.startswith("#"):
                    colors.append(fill.value)
            if colors:
                rgb = np.zeros(3)
                for c in colors:
                    rgb += [int(c[i:i + 2], 16) for i in (1, 3, 5)]
                rgb = (rgb / len(colors)).round().astype(int)
                return "#{:02x}{:02x}{:02x}".format(*rgb)
            return None
        href = node.get("href")
        name = href.target if isinstance(href, Reference) else None
    return None


def resolve_paint(doc: SvgDocument, value):
    """AttrValue -> '#rrggbb' or None (not painted)."""
    if isinstance(value, Color):
        return None if value.value == "none" else value.value
    if isinstance(value, Reference):
        return _gradient_mean_color(doc, value.target)
    return None


# ---------------------------------------------------------------------------
# Scene walk

def render_document(doc: SvgDocument, size: int) -> np.ndarray:
    """Rasterize over white; returns (size, size, 3) uint8 RGB."""
    from matplotlib.figure import Figure
    from matplotlib.backends.backend_agg import FigureCanvasAgg
    from matplotlib.path import Path as MplPath
    from matplotlib.patches import PathPatch
    from matplotlib.transforms import Affine2D

    min_x, min_y, w, h = (float(v) for v in doc.view_box)
    side = max(w, h)
    x0 = min_x - (side - w) / 2
    y0 = min_y - (side - h) / 2
    px_per_unit = size / side
    dpi = 100.0

    fig = Figure(figsize=(size / dpi, size / dpi), dpi=dpi, facecolor="white")
    canvas = FigureCanvasAgg(fig)
    ax = fig.add_axes((0.0, 0.0, 1.0, 1.0), facecolor="white")
    ax.set_axis_off()
    ax.set_xlim(x0, x0 + side)
    ax.set_ylim(y0 + side, y0)  # SVG y grows downward

    zorder = [0]

    def lw_points(units: float) -> float:
        return units * px_per_unit * 72.0 / dpi

    def draw(node: Node, inherited: dict, matrix: np.ndarray):
        state = dict(inherited)
        for name in ("fill", "stroke", "stroke-width",
                     "stroke-linecap", "font-size"):
            v = node.get(name)
            if v is not None:
                state[name] = v
        opacity = node.get("opacity")
        if isinstance(opacity, Number):
            state["opacity"] = state.get("opacity", 1.0) * float(opacity.value)

        t = node.get("transform")
        if isinstance(t, Transform):
            matrix = matrix @ transform_matrix(t)

        if node.kind == "group":
            for child in node.children:
                draw(child, state, matrix)
            return
        if node.kind in ("linearGradient", "radialGradient", "stop"):
            return

        verts = codes = None
        fill_default = True
        if node.kind == "path":
            d = node.get("d")
            if isinstance(d, PathData) and d.commands:
                verts, codes = path_to_vertices(d.commands)
        elif node.kind in ("circle", "ellipse"):
            cx = node.get("cx")
            cy = node.get("cy")
            cxf = float(cx.value) if isinstance(cx, Number) else 0.0
            cyf = float(cy.value) if isinstance(cy, Number) else 0.0
            if node.kind == "circle":
                r = node.get("r")
                rxf = ryf = float(r.value) if isinstance(r, Number) else 0.0
            else:
                rx = node.get("rx")
                ry = node.get("ry")
                rxf = float(rx.value) if isinstance(rx, Number) else 0.0
                ryf = float(ry.value) if isinstance(ry, Number) else 0.0
            if rxf > 0 and ryf > 0:
                verts, codes = _ellipse_path(cxf, cyf, rxf, ryf)
        elif node.kind == "rect":
            x = node.get("x")
            y = node.get("y")
            wv = node.get("width")
            hv = node.get("height")
            xf = float(x.value) if isinstance(x, Number) else 0.0
            yf = float(y.value) if isinstance(y, Number) else 0.0
            wf = float(wv.value) if isinstance(wv, Number) else 0.0
            hf = float(hv.value) if isinstance(hv, Number) else 0.0
            if wf > 0 and hf > 0:
                verts = np.array([(xf, yf), (xf + wf, yf), (xf + wf, yf + hf),
                                  (xf, yf + hf), (xf, yf)], dtype=float)
                codes = [_MOVETO, _LINETO, _LINETO, _LINETO, _CLOSEPOLY]
        elif node.kind in ("polygon", "polyline"):
            pts = node.get("points")
            if isinstance(pts, Points) and len(pts.pairs) >= 2:
                verts = np.array([(float(x), float(y)) for x, y in pts.pairs],
                                 dtype=float)
                codes = [_MOVETO] + [_LINETO] * (len(verts) - 1)
                if node.kind == "polygon":
                    verts = np.vstack([verts, verts[:1]])
                    codes.append(_CLOSEPOLY)
        elif node.kind == "line":
            vals = []
            for name in ("x1", "y1", "x2", "y2"):
                v = node.get(name)
                vals.append(float(v.value) if isinstance(v, Number) else 0.0)
            verts = np.array([(vals[0], vals[1]), (vals[2], vals[3])],
                             dtype=float)
            codes = [_MOVETO, _LINETO]
            fill_default = False
        elif node.kind == "text":
            fill = state.get("fill")
            color = resolve_paint(doc, fill) if fill is not None else "#000000"
            if node.text and color:
                fs = state.get("font-size")
                fs_units = float(fs.value) if isinstance(fs, Number) else 16.0
                xv = node.get("x")
                yv = node.get("y")
                xf = float(xv.value) if isinstance(xv, Number) else 0.0
                yf = float(yv.value) if isinstance(yv, Number) else 0.0
                zorder[0] += 1
                tr = Affine2D(matrix) + ax.transData
                ax.text(xf, yf, node.text, color=color,
                        fontsize=lw_points(fs_units),
                        alpha=state.get("opacity", 1.0),
                        transform=tr, zorder=zorder[0])
            return

        if verts is None or len(verts) == 0:
            return

        fill = state.get("fill")
        if fill is None:
            facecolor = "#000000" if fill_default else None
        else:
            facecolor = resolve_paint(doc, fill)
        stroke = state.get("stroke")
        edgecolor = resolve_paint(doc, stroke) if stroke is not None else None
        sw = state.get("stroke-width")
        sw_units = float(sw.value) if isinstance(sw, Number) else 1.0
        if facecolor is None and edgecolor is None:
            return

        zorder[0] += 1
        patch = PathPatch(
            MplPath(verts, codes),
            facecolor=facecolor if facecolor else "none",
            edgecolor=edgecolor if edgecolor else "none",
            linewidth=lw_points(sw_units) if edgecolor else 0.0,
            alpha=state.get("opacity", 1.0),
            zorder=zorder[0])
        cap = state.get("stroke-linecap")
        if isinstance(cap, Text) and cap.value in ("butt", "round"):
            patch.set_capstyle(cap.value)
        elif isinstance(cap, Text) and cap.value == "square":
            patch.set_capstyle("projecting")
        patch.set_transform(Affine2D(matrix) + ax.transData)
        ax.add_patch(patch)

    for element in doc.elements:
        draw(element, {}, np.eye(3))

    canvas.draw()
    rgba = np.asarray(canvas.buffer_rgba())
    rgb = rgba[:, :, :3].astype(np.float64)
    alpha = rgba[:, :, 3:4].astype(np.float64) / 255.0
    over_white = rgb * alpha + 255.0 * (1.0 - alpha)
    return over_white.round().astype(np.uint8)


def rasterize_file(svg_path: str, png_path: str, size: int):
    with open(svg_path, "r", encoding="utf-8") as fh:
        raw = RawSvg(fh.read(), source_path=svg_path)
    doc = parse_svg_full(raw).document
    image = render_document(doc, size)
    from PIL import Image
    Image.fromarray(image, mode="RGB").save(png_path)


def main(argv=None):
    argv = argv if argv is not None else sys.argv[1:]
    if len(argv) != 3:
        print("usage: python -m svgx.rasterize IN.svg OUT.png SIZE",
              file=sys.stderr)
        return 2
    rasterize_file(argv[0], argv[1], int(argv[2]))
    return 0


if __name__ == "__main__":
    sys.exit(main())
