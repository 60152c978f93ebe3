"""Batch command-line interface.

Exit codes: 0 success, 1 per-file processing errors, 2 usage errors.
"""

from __future__ import annotations

import glob
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor

import click

from .codec import decode, encode, from_text, to_text
from .embed import extend_matrix, load_description_ids, read_matrix, write_matrix
from .errors import SvgxError
from .instruct import GroupImage, SampleInputs, build_corpus
from .ir import canonical_serialize
from .normalizer import NormalizeOptions, normalize
from .parser import RawSvg, parse_svg_full
from .render import RendererConfig, default_renderer, pixel_diff
from .stats import corpus_stats


def _discover(inputs, suffix=".svg"):
    """Expand paths/globs/directories into a sorted file list."""
    files = []
    for item in inputs:
        if os.path.isdir(item):
            files.extend(
                os.path.join(root, name)
                for root, _, names in os.walk(item)
                for name in names if name.endswith(suffix))
        elif any(ch in item for ch in "*?["):
            files.extend(glob.glob(item, recursive=True))
        elif os.path.exists(item) or item == "-":
            files.append(item)
        else:
            raise click.UsageError(f"no such file: {item}")
    return sorted(set(files))


def _load_config(path):
    if not path:
        return {}
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _cfg(value, config, key, default):
    """Flags beat the config file, which beats defaults."""
    if value is not None:
        return value
    if key in config:
        return config[key]
    return default


def _read(path) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


@click.group()
def main():
    """Lossless SVG normalization, semantic-token codec, and dataset tools."""


def _clean_one(args):
    path, places, size, unwrap = args
    try:
        raw = RawSvg(_read(path), source_path=path)
        opts = NormalizeOptions(places, size, unwrap)
        doc, report = normalize(raw, opts)
        return path, canonical_serialize(doc), report.to_dict(), None
    except Exception as exc:  # per-file failures are collected, not fatal
        return path, None, None, str(exc)


@main.command()
@click.option("--in", "inputs", multiple=True, required=True,
              help="Input files, globs, or directories.")
@click.option("--out", "out_dir", required=True, type=click.Path())
@click.option("--places", type=int, default=None,
              help="Decimal places (default 2); -1 disables rounding.")
@click.option("--size", type=int, default=None, help="Canvas size (default 128).")
@click.option("--keep-groups", is_flag=True, help="Do not unwrap bare groups.")
@click.option("--jobs", type=int, default=1)
@click.option("--config", "config_path", type=click.Path(exists=True), default=None)
def clean(inputs, out_dir, places, size, keep_groups, jobs, config_path):
    """Normalize SVG files; write cleaned SVGs plus JSON reports."""
    config = _load_config(config_path)
    places = int(_cfg(places, config, "places", 2))
    size = int(_cfg(size, config, "size", 128))
    unwrap = not keep_groups and _cfg(None, config, "unwrap_groups", True)
    places_opt = None if places < 0 else places

    files = _discover(inputs)
    if not files:
        raise click.UsageError("no input files found")
    os.makedirs(out_dir, exist_ok=True)

    tasks = [(f, places_opt, size, unwrap) for f in files]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_clean_one, tasks))
    else:
        results = [_clean_one(t) for t in tasks]

    failures = []
    summary = {"files": 0, "failures": 0, "bytes_before": 0, "bytes_after": 0}
    for path, text, report, error in results:
        name = os.path.splitext(os.path.basename(path))[0]
        if error is not None:
            failures.append((path, error))
            continue
        with open(os.path.join(out_dir, f"{name}.svg"), "w",
                  encoding="utf-8") as fh:
            fh.write(text)
        with open(os.path.join(out_dir, f"{name}.report.json"), "w",
                  encoding="utf-8") as fh:
            json.dump(report, fh, indent=2, sort_keys=True)
        summary["files"] += 1
        summary["bytes_before"] += report["bytes_before"]
        summary["bytes_after"] += report["bytes_after"]
    summary["failures"] = len(failures)
    with open(os.path.join(out_dir, "summary.json"), "w", encoding="utf-8") as fh:
        json.dump(summary, fh, indent=2, sort_keys=True)

    for path, error in failures:
        click.echo(f"error: {path}: {error}", err=True)
    if failures:
        sys.exit(1)


@main.command("encode")
@click.option("--in", "inputs", multiple=True, required=True)
@click.option("--out", "out_dir", default=None, type=click.Path())
def encode_cmd(inputs, out_dir):
    """SVG files -> semantic-token text files (.tokens)."""
    files = _discover(inputs)
    if not files:
        raise click.UsageError("no input files found")
    errors = 0
    for path in files:
        try:
            doc, _ = normalize(RawSvg(_read(path), source_path=path))
            text = to_text(encode(doc))
        except SvgxError as exc:
            click.echo(f"error: {path}: {exc}", err=True)
            errors += 1
            continue
        if out_dir:
            os.makedirs(out_dir, exist_ok=True)
            name = os.path.splitext(os.path.basename(path))[0]
            with open(os.path.join(out_dir, f"{name}.tokens"), "w",
                      encoding="utf-8") as fh:
                fh.write(text + "\n")
        else:
            click.echo(text)
    if errors:
        sys.exit(1)


@main.command("decode")
@click.option("--in", "inputs", multiple=True, required=True)
@click.option("--out", "out_dir", default=None, type=click.Path())
def decode_cmd(inputs, out_dir):
    """Semantic-token text files -> SVG files (with recovery reports)."""
    files = _discover(inputs, suffix=".tokens")
    if not files:
        raise click.UsageError("no input files found")
    errors = 0
    for path in files:
        try:
            doc, report = decode(from_text(_read(path).strip()))
            text = canonical_serialize(doc)
        except SvgxError as exc:
            click.echo(f"error: {path}: {exc}", err=True)
            errors += 1
            continue
        if out_dir:
            os.makedirs(out_dir, exist_ok=True)
            name = os.path.splitext(os.path.basename(path))[0]
            with open(os.path.join(out_dir, f"{name}.svg"), "w",
                      encoding="utf-8") as fh:
                fh.write(text)
            if report.recoveries:
                with open(os.path.join(out_dir, f"{name}.recovery.json"), "w",
                          encoding="utf-8") as fh:
                    json.dump(report.recoveries, fh, indent=2)
        else:
            click.echo(text)
            for note in report.recoveries:
                click.echo(f"recovery: {note}", err=True)
    if errors:
        sys.exit(1)


def _parse_mix(text: str) -> dict:
    mix = {}
    for part in text.split(","):
        key, _, value = part.partition("=")
        mix[int(key)] = int(value)
    return mix


def _load_sample(entry: dict, base_dir: str) -> SampleInputs:
    svg_ref = entry["svg"]
    if svg_ref.lstrip().startswith("<"):
        raw = RawSvg(svg_ref)
    else:
        path = os.path.join(base_dir, svg_ref)
        raw = RawSvg(_read(path), source_path=path)
    doc, _ = normalize(raw)
    groups = [
        GroupImage(g["index"], g["image"], g.get("desc", ""))
        for g in entry.get("groups", [])]
    return SampleInputs(
        svg=doc,
        prompt=entry.get("prompt", ""),
        desc=entry.get("desc", ""),
        image_path=entry.get("image"),
        group_images=groups)


@main.command()
@click.option("--samples", "samples_path", required=True,
              type=click.Path(exists=True),
              help="JSONL of {svg, prompt, desc, image, groups} objects.")
@click.option("--mix", "mix_text", required=True,
              help="Per-template counts, e.g. 1=250,2=250,3=60.")
@click.option("--seed", type=int, default=0)
@click.option("--out", "out_path", required=True, type=click.Path())
def dataset(samples_path, mix_text, seed, out_path):
    """Build an instruction-following JSONL corpus plus manifest."""
    base_dir = os.path.dirname(os.path.abspath(samples_path))
    samples = []
    with open(samples_path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line:
                samples.append(_load_sample(json.loads(line), base_dir))
    mix = _parse_mix(mix_text)
    lines, manifest = build_corpus(samples, mix, seed)
    with open(out_path, "w", encoding="utf-8") as fh:
        for line in lines:
            fh.write(line + "\n")
    manifest_path = os.path.splitext(out_path)[0] + ".manifest.json"
    with open(manifest_path, "w", encoding="utf-8") as fh:
        json.dump({str(k): v for k, v in sorted(manifest.items())}, fh,
                  indent=2)
    click.echo(f"wrote {sum(manifest.values())} records to {out_path}")


@main.command("embed-init")
@click.option("--matrix", "matrix_path", required=True,
              type=click.Path(exists=True))
@click.option("--desc-ids", "ids_path", required=True,
              type=click.Path(exists=True),
              help="JSON map of token surface -> description id list.")
@click.option("--out", "out_path", required=True, type=click.Path())
def embed_init(matrix_path, ids_path, out_path):
    """Extend an embedding matrix with 55 semantic-average rows."""
    matrix = read_matrix(matrix_path)
    descs = load_description_ids(ids_path)
    extended = extend_matrix(matrix, descs)
    write_matrix(out_path, extended)
    click.echo(f"{matrix.shape[0]} -> {extended.shape[0]} rows ({out_path})")


@main.command("stats")
@click.option("--in", "inputs", multiple=True, required=True)
@click.option("--meta", "meta_path", type=click.Path(exists=True),
              default=None,
              help="JSONL of {file, prompt, desc} for word frequencies.")
@click.option("--out", "out_path", default=None, type=click.Path())
@click.option("--csv", "csv_path", default=None, type=click.Path())
def stats_cmd(inputs, meta_path, out_path, csv_path):
    """Corpus statistics as JSON (and optional CSV tables)."""
    meta = {}
    if meta_path:
        with open(meta_path, "r", encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if line:
                    entry = json.loads(line)
                    meta[entry["file"]] = entry

    def triples():
        for path in _discover(inputs):
            entry = meta.get(os.path.basename(path), {})
            yield (RawSvg(_read(path), source_path=path),
                   entry.get("prompt", ""), entry.get("desc", ""))

    result = corpus_stats(triples())
    payload = json.dumps(result.to_dict(), indent=2)
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(payload + "\n")
    else:
        click.echo(payload)
    if csv_path:
        with open(csv_path, "w", encoding="utf-8") as fh:
            fh.write("kind,before,after\n")
            kinds = sorted(set(result.element_counts_before)
                           | set(result.element_counts_after))
            for kind in kinds:
                fh.write(f"{kind},{result.element_counts_before.get(kind, 0)},"
                         f"{result.element_counts_after.get(kind, 0)}\n")
    if result.failures:
        for failure in result.failures:
            click.echo(f"error: {failure}", err=True)
        sys.exit(1)


@main.command()
@click.option("--in", "inputs", multiple=True, required=True)
@click.option("--renderer", default=None,
              help="Command template with {in} {out} {size} placeholders.")
@click.option("--size", type=int, default=512)
@click.option("--tolerance", type=float, default=0.02)
@click.option("--skip-render", is_flag=True,
              help="Only run roundtrip and idempotence checks.")
def verify(inputs, renderer, size, tolerance, skip_render):
    """Roundtrip + render-equivalence checks; nonzero exit on violation."""
    files = _discover(inputs)
    if not files:
        raise click.UsageError("no input files found")
    cfg = (RendererConfig(renderer, size) if renderer
           else RendererConfig(default_renderer().command_template, size))
    violations = 0
    for path in files:
        problems = []
        try:
            raw = RawSvg(_read(path), source_path=path)
            doc, _ = normalize(raw)
            text = canonical_serialize(doc)

            doc2, _ = normalize(RawSvg(text))
            if canonical_serialize(doc2) != text:
                problems.append("normalize not idempotent")

            decoded, report = decode(encode(doc))
            if canonical_serialize(decoded) != text:
                problems.append("codec roundtrip mismatch")
            elif report.recoveries:
                problems.append("codec roundtrip needed recovery")

        except SvgxError as exc:
            problems.append(str(exc))
        if not skip_render and not problems:
            try:
                original_doc = parse_svg_full(raw).document
                diff = pixel_diff(original_doc, doc, cfg)
                if diff.mean_abs > tolerance:
                    problems.append(
                        f"render diff {diff.mean_abs:.4f} > {tolerance}")
            except SvgxError as exc:
                problems.append(f"render check failed: {exc}")
        status = "ok" if not problems else "FAIL"
        click.echo(f"{status}: {path}" +
                   ("" if not problems else " (" + "; ".join(problems) + ")"))
        violations += bool(problems)
    if violations:
        sys.exit(1)


if __name__ == "__main__":
    main()
