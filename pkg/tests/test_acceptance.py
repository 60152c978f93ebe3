"""Acceptance suite: one test per shipped guarantee.

Each test is independent and names the guarantee it certifies; `pytest -v`
prints one pass/fail line per criterion. The render-backed criteria (3 and
5) go through the external-renderer subprocess path and are parallelized
across worker threads to stay inside their time budgets.
"""

import json
import random
from concurrent.futures import ThreadPoolExecutor

import numpy as np
from click.testing import CliRunner

from svgx.cli import main as cli_main
from svgx.codec import Literal, TokenSeq, decode, encode, truncate
from svgx.embed import DescriptionIds, extend_matrix
from svgx.instruct import build_record, GroupImage, SampleInputs
from svgx.ir import canonical_serialize
from svgx.normalizer import NormalizeOptions, normalize
from svgx.parser import RawSvg, parse_svg_full
from svgx.render import default_renderer, pixel_diff, quantization_sweep
from svgx.stats import avg_tok, corpus_stats
from svgx.vocab import vocab

# ---------------------------------------------------------------------------
# Expected vocabulary: (surface, category) for all 55 tokens, in table order.

EXPECTED_VOCAB = [
    ("[<|START_OF_SVG|>]", "container"),
    ("[<|END_OF_SVG|>]", "container"),
    ("[<|start_of_g|>]", "container"),
    ("[<|end_of_g|>]", "container"),
    ("[<|svg_path|>]", "geometry"),
    ("[<|svg_circle|>]", "geometry"),
    ("[<|svg_rect|>]", "geometry"),
    ("[<|svg_ellipse|>]", "geometry"),
    ("[<|svg_polygon|>]", "geometry"),
    ("[<|svg_line|>]", "geometry"),
    ("[<|svg_polyline|>]", "geometry"),
    ("[<|svg_text|>]", "geometry"),
    ("[<|svg_linearGradient|>]", "gradient"),
    ("[<|svg_radialGradient|>]", "gradient"),
    ("[<|svg_stop|>]", "gradient"),
    ("[<|moveto|>]", "path_command"),
    ("[<|lineto|>]", "path_command"),
    ("[<|horizontal_lineto|>]", "path_command"),
    ("[<|vertical_lineto|>]", "path_command"),
    ("[<|curveto|>]", "path_command"),
    ("[<|smooth_curveto|>]", "path_command"),
    ("[<|quadratic_bezier_curve|>]", "path_command"),
    ("[<|smooth_quadratic_bezier_curveto|>]", "path_command"),
    ("[<|elliptical_Arc|>]", "path_command"),
    ("[<|close_the_path|>]", "path_command"),
    ("[<|id|>]", "attribute"),
    ("[<|d|>]", "attribute"),
    ("[<|fill|>]", "attribute"),
    ("[<|stroke-width|>]", "attribute"),
    ("[<|stroke-linecap|>]", "attribute"),
    ("[<|stroke|>]", "attribute"),
    ("[<|opacity|>]", "attribute"),
    ("[<|transform|>]", "attribute"),
    ("[<|gradientTransform|>]", "attribute"),
    ("[<|offset|>]", "attribute"),
    ("[<|width|>]", "attribute"),
    ("[<|height|>]", "attribute"),
    ("[<|cx|>]", "attribute"),
    ("[<|cy|>]", "attribute"),
    ("[<|rx|>]", "attribute"),
    ("[<|ry|>]", "attribute"),
    ("[<|r|>]", "attribute"),
    ("[<|points|>]", "attribute"),
    ("[<|x1|>]", "attribute"),
    ("[<|y1|>]", "attribute"),
    ("[<|x2|>]", "attribute"),
    ("[<|y2|>]", "attribute"),
    ("[<|x|>]", "attribute"),
    ("[<|y|>]", "attribute"),
    ("[<|fr|>]", "attribute"),
    ("[<|fx|>]", "attribute"),
    ("[<|fy|>]", "attribute"),
    ("[<|href|>]", "attribute"),
    ("[<|rotate|>]", "attribute"),
    ("[<|font-size|>]", "attribute"),
]

ALL_KINDS = {"path", "circle", "rect", "ellipse", "polygon", "line",
             "polyline", "text", "linearGradient", "radialGradient",
             "stop", "group"}
ALL_OPS = {"MoveTo", "LineTo", "HLineTo", "VLineTo", "CurveTo",
           "SmoothCurveTo", "QuadTo", "SmoothQuadTo", "Arc", "ClosePath"}

TEMPLATE_SVG = ('<svg viewBox="0 0 64 64"><g opacity="0.9">'
                '<circle cx="8" cy="8" r="4" fill="#ff0000"/>'
                '<rect x="20" y="20" width="8" height="8" fill="#00ff00"/></g>'
                '</svg>')


def pmap(fn, items, workers=8):
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def test_criterion_01_vocabulary_exactness():
    tokens = vocab()
    assert len(tokens) == 55
    assert [(t.surface, t.category) for t in tokens] == EXPECTED_VOCAB
    counts = {}
    for t in tokens:
        counts[t.category] = counts.get(t.category, 0) + 1
    assert counts == {"container": 4, "geometry": 8, "gradient": 3,
                      "path_command": 10, "attribute": 30}


def test_criterion_02_codec_roundtrip_over_corpus(clean_files):
    assert len(clean_files) >= 100
    seen_kinds, seen_ops = set(), set()
    for path in clean_files:
        text = path.read_text()
        doc, _ = normalize(RawSvg(text))
        for node in doc.walk():
            seen_kinds.add(node.kind)
            d = node.get("d")
            if d is not None:
                seen_ops.update(cmd.op for cmd in d.commands)
        decoded, report = decode(encode(doc))
        assert canonical_serialize(decoded) == text, path.name
        assert report.recoveries == [], path.name
    # The corpus must exercise every tag and every path command.
    assert seen_kinds == ALL_KINDS
    assert seen_ops == ALL_OPS


def test_criterion_03_normalization_render_losslessness(raw_files):
    cfg = default_renderer()

    def check(path):
        raw = RawSvg(path.read_text(), source_path=str(path))
        original = parse_svg_full(raw).document
        normalized, _ = normalize(raw)
        diff = pixel_diff(original, normalized, cfg)
        exact = None
        if path.name.startswith("exact_"):
            # No rounding, no invisible content: the render must be
            # bit-identical.
            unrounded, _ = normalize(raw, NormalizeOptions(decimal_places=None))
            exact = pixel_diff(original, unrounded, cfg)
        return path.name, diff, exact

    for name, diff, exact in pmap(check, raw_files):
        assert diff.mean_abs <= 0.02, (name, diff)
        if exact is not None:
            assert exact.mean_abs == 0.0, (name, exact)
            assert exact.differing_pixels == 0, (name, exact)


def test_criterion_04_normalize_idempotence(clean_files, raw_files):
    for path in clean_files:
        text = path.read_text()
        doc, _ = normalize(RawSvg(text))
        assert canonical_serialize(doc) == text, path.name
    for path in raw_files:
        once, _ = normalize(RawSvg(path.read_text()))
        twice, _ = normalize(RawSvg(canonical_serialize(once)))
        assert canonical_serialize(twice) == canonical_serialize(once), path.name


def test_criterion_05_quantization_ordering(raw_files):
    cfg = default_renderer()

    def sweep(path):
        doc, _ = normalize(RawSvg(path.read_text()),
                           NormalizeOptions(decimal_places=None))
        return path.name, quantization_sweep(doc, [0, 2], cfg)

    strict = False
    for name, results in pmap(sweep, raw_files):
        assert results[0].mean_abs >= results[2].mean_abs, (name, results)
        if name.startswith("subunit_") and results[0].mean_abs > results[2].mean_abs:
            strict = True
    # Sub-unit geometry must show genuine degradation at integer precision.
    assert strict


def test_criterion_06_embedding_average_oracle():
    rng = np.random.default_rng(12345)
    matrix = rng.standard_normal((1000, 64)).astype(np.float32)
    descs = [
        DescriptionIds(tok, tuple(int(i) for i in
                                  rng.integers(0, 1000, int(rng.integers(1, 12)))))
        for tok in vocab()]
    extended = extend_matrix(matrix, descs)
    assert extended.shape == (1055, 64)
    assert np.array_equal(extended[:1000], matrix)  # bit-identical originals
    for desc in descs:
        row = extended[1000 + desc.token.id]
        for c in range(64):
            # Brute-force per-component mean, independent of numpy reductions.
            total = 0.0
            for i in desc.ids:
                total += float(matrix[i, c])
            assert abs(float(row[c]) - total / len(desc.ids)) <= 1e-6


def test_criterion_07_truncation_rule():
    rnd = random.Random(99)
    for _ in range(200):
        n = rnd.randint(1, 12000)
        seq = TokenSeq(tuple(Literal(str(i)) for i in range(n)))
        out = truncate(seq, 4096)
        assert len(out) <= 4096
        if n > 4096:
            assert len(out) == 4096
        else:
            assert out.items == seq.items
        assert out.items == seq.items[:len(out)]  # direct head truncation


def test_criterion_08_template_fidelity_and_mix(tmp_path):
    doc, _ = normalize(RawSvg(TEMPLATE_SVG))
    inputs = SampleInputs(
        svg=doc, prompt="PROMPTVAL", desc="DESCVAL", image_path="img.png",
        group_images=[GroupImage(0, "g.png", "GROUPDESC")])

    def strip(record):
        """Remove every substituted value, leaving the template skeleton."""
        out = []
        for role, content in record.messages:
            for needle in ("PROMPTVAL", "DESCVAL", "GROUPDESC"):
                content = content.replace(needle, "{}")
            start = content.find("[<|START_OF_SVG|>]")
            while start != -1:
                end = content.find("[<|END_OF_SVG|>]", start)
                content = content[:start] + "{}" + content[end + len("[<|END_OF_SVG|>]"):]
                start = content.find("[<|START_OF_SVG|>]")
            start = content.find("[<|start_of_g|>]")
            while start != -1:
                end = content.find("[<|end_of_g|>]", start)
                content = content[:start] + "{}" + content[end + len("[<|end_of_g|>]"):]
                start = content.find("[<|start_of_g|>]")
            out.append((role, content))
        return out

    skeletons = {
        1: [("system", "You are a helpful assistant, please help me generate SVG </s>"),
            ("user", "Generate an SVG illustration from the given description: {} </s>"),
            ("assistant", "{} </s>")],
        2: [("system", "You are a helpful assistant, please help me generate "
                       "an SVG from this image and description. </s>"),
            ("user", "Refer to rendering image: <image> and generate SVG "
                     "from the given description: {} </s>"),
            ("assistant", "{} </s>")],
        3: [("system", "Attempt to identify this SVG </s>"),
            ("user", "The following is an SVG illustration: {}"),
            ("assistant", "Text description of this SVG: {} </s>")],
        4: [("system", "Describe this SVG based on its image representation </s>"),
            ("user", "The following is an SVG illustration: {} "
                     "rendering result: <image>"),
            ("assistant", "Text description of this SVG: {}. "
                          "This SVG contains 2 primitives. </s>")],
        5: [("system", "Describe this SVG based on its image representation </s>"),
            ("user", "SVG group 1: {} rendering result: <image> </s>"),
            ("assistant", "Text description of this SVG: {}\n"
                          "The 1st SVG group contains 2 primitives "
                          "representing {} </s>")],
    }
    for template_id, expected in skeletons.items():
        record = build_record(template_id, inputs)
        assert strip(record) == expected, f"template #{template_id}"
        # Loss spans cover exactly the assistant content, byte-addressed.
        assert record.loss_spans, f"template #{template_id}"
        for idx, start, end in record.loss_spans:
            role, content = record.messages[idx]
            assert role == "assistant"
            assert (start, end) == (0, len(content.encode("utf-8")))
        covered = {i for i, _, _ in record.loss_spans}
        uncovered_roles = {record.messages[i][0]
                           for i in range(len(record.messages)) if i not in covered}
        assert "assistant" not in uncovered_roles

    # Production template mix, realized exactly by the `dataset` command.
    samples_path = tmp_path / "samples.jsonl"
    with open(samples_path, "w", encoding="utf-8") as fh:
        for i in range(260):
            fh.write(json.dumps({
                "svg": TEMPLATE_SVG,
                "prompt": f"prompt {i}",
                "desc": f"desc {i}",
                "image": f"img/{i}.png",
                "groups": [{"index": 0, "image": f"img/{i}-g.png", "desc": "g"}],
            }) + "\n")
    out_path = tmp_path / "corpus.jsonl"
    result = CliRunner().invoke(cli_main, [
        "dataset", "--samples", str(samples_path),
        "--mix", "1=250,2=250,3=60,4=60,5=20", "--seed", "0",
        "--out", str(out_path)])
    assert result.exit_code == 0, result.output
    realized = {}
    with open(out_path, "r", encoding="utf-8") as fh:
        for line in fh:
            tid = json.loads(line)["template"]
            realized[tid] = realized.get(tid, 0) + 1
    assert realized == {1: 250, 2: 250, 3: 60, 4: 60, 5: 20}
    manifest = json.loads((tmp_path / "corpus.manifest.json").read_text())
    assert manifest == {"1": 250, "2": 250, "3": 60, "4": 60, "5": 20}


def test_criterion_09_stats_monotone_and_avg_tok_oracle(raw_files):
    triples = [(RawSvg(p.read_text(), source_path=str(p)), "", "")
               for p in raw_files]
    stats = corpus_stats(iter(triples))
    assert stats.documents == len(raw_files)
    assert stats.failures == []
    for kind, after in stats.element_counts_after.items():
        assert after <= stats.element_counts_before.get(kind, 0), kind

    # Independent strip-and-count oracle: scan out comments, count
    # non-whitespace bytes.
    def oracle(text):
        total, i = 0, 0
        while i < len(text):
            if text.startswith("<!--", i):
                end = text.find("-->", i + 4)
                i = len(text) if end == -1 else end + 3
                continue
            if not text[i].isspace():
                total += len(text[i].encode("utf-8"))
            i += 1
        return total

    for path in raw_files:
        text = path.read_text()
        assert avg_tok(text) == oracle(text), path.name


def test_criterion_10_decode_robustness_on_random_prefixes(clean_files):
    rnd = random.Random(2026)
    seqs = []
    for path in clean_files:
        doc, _ = normalize(RawSvg(path.read_text()))
        seqs.append(encode(doc))
    for _ in range(1000):
        seq = rnd.choice(seqs)
        cut = rnd.randint(1, len(seq))
        doc, report = decode(TokenSeq(seq.items[:cut]))
        assert doc is not None
        assert isinstance(report.recoveries, list)
        canonical_serialize(doc)  # the recovered document must serialize
