"""External-rasterizer harness certifying render equivalence.

The renderer is any command turning an SVG file into a size x size PNG over
white. Configure via RendererConfig, the SVGX_RENDERER environment
variable, or fall back to the bundled rasterizer.
"""

from __future__ import annotations

import os
import shlex
import subprocess
import sys
import tempfile
from dataclasses import dataclass

import numpy as np

from .errors import RendererFailed
from .ir import SvgDocument, canonical_serialize
from .normalizer import round_numbers

DEFAULT_SIZE = 512

_BUNDLED_TEMPLATE = f"{sys.executable} -m svgx.rasterize {{in}} {{out}} {{size}}"


@dataclass(frozen=True)
class RendererConfig:
    command_template: str = _BUNDLED_TEMPLATE
    size: int = DEFAULT_SIZE


def default_renderer() -> RendererConfig:
    template = os.environ.get("SVGX_RENDERER", _BUNDLED_TEMPLATE)
    return RendererConfig(template)


@dataclass(frozen=True)
class DiffResult:
    mean_abs: float
    max_abs: float
    differing_pixels: int


def render_to_array(doc: SvgDocument, cfg: RendererConfig) -> np.ndarray:
    from PIL import Image

    with tempfile.TemporaryDirectory(prefix="svgx-render-") as tmp:
        svg_path = os.path.join(tmp, "in.svg")
        png_path = os.path.join(tmp, "out.png")
        with open(svg_path, "w", encoding="utf-8") as fh:
            fh.write(canonical_serialize(doc))
        fields = {"in": svg_path, "out": png_path, "size": str(cfg.size)}
        argv = [arg.format_map(fields)
                for arg in shlex.split(cfg.command_template)]
        proc = subprocess.run(argv, capture_output=True, text=True)
        if proc.returncode != 0:
            raise RendererFailed(
                f"renderer exited {proc.returncode}", proc.stderr)
        if not os.path.exists(png_path):
            raise RendererFailed("renderer produced no output", proc.stderr)
        with Image.open(png_path) as img:
            rgba = np.asarray(img.convert("RGBA"), dtype=np.float64)
    rgb = rgba[:, :, :3]
    alpha = rgba[:, :, 3:4] / 255.0
    return rgb * alpha + 255.0 * (1.0 - alpha)  # composite over white


def pixel_diff(a: SvgDocument, b: SvgDocument,
               cfg: RendererConfig | None = None) -> DiffResult:
    cfg = cfg or default_renderer()
    img_a = render_to_array(a, cfg)
    img_b = render_to_array(b, cfg)
    diff = np.abs(img_a - img_b) / 255.0
    per_pixel = diff.max(axis=2)
    return DiffResult(
        mean_abs=float(diff.mean()),
        max_abs=float(diff.max()),
        differing_pixels=int((per_pixel > 0).sum()))


def quantization_sweep(doc: SvgDocument, places_list,
                       cfg: RendererConfig | None = None) -> dict:
    """Render-diff of rounded copies against the full-precision document."""
    import copy

    cfg = cfg or default_renderer()
    base = render_to_array(doc, cfg)
    results = {}
    for places in places_list:
        rounded = round_numbers(copy.deepcopy(doc), places)
        diff = np.abs(base - render_to_array(rounded, cfg)) / 255.0
        per_pixel = diff.max(axis=2)
        results[places] = DiffResult(
            mean_abs=float(diff.mean()),
            max_abs=float(diff.max()),
            differing_pixels=int((per_pixel > 0).sum()))
    return results
