from decimal import Decimal

import pytest

from svgx.errors import MalformedXml, NoCanvasSize, NoRootSvg
from svgx.ir import Color, Number, PathData, Points, Reference, Text, Transform
from svgx.parser import RawSvg, coerce_attr, normalize_color, parse_svg, parse_svg_full


def parse(text):
    return parse_svg(RawSvg(text))


class TestBasics:
    def test_minimal_document(self):
        doc, foreign = parse(
            '<svg viewBox="0 0 10 10"><circle cx="5" cy="5" r="2"/></svg>')
        assert [n.kind for n in doc.walk()] == ["circle"]
        assert foreign == []
        assert doc.view_box == (Decimal(0), Decimal(0), Decimal(10), Decimal(10))

    def test_namespaced_root(self):
        doc, _ = parse('<svg xmlns="http://www.w3.org/2000/svg" '
                       'viewBox="0 0 4 4"><rect width="1" height="1"/></svg>')
        assert [n.kind for n in doc.walk()] == ["rect"]

    def test_viewbox_from_width_height(self):
        doc, _ = parse('<svg width="30" height="20"><circle r="1"/></svg>')
        assert doc.view_box == (Decimal(0), Decimal(0), Decimal(30), Decimal(20))

    def test_no_canvas_size(self):
        with pytest.raises(NoCanvasSize):
            parse('<svg><path d="M0 0"/></svg>')

    def test_malformed_xml(self):
        with pytest.raises(MalformedXml):
            parse('<svg viewBox="0 0 1 1"><circle</svg>')

    def test_no_root_svg(self):
        with pytest.raises(NoRootSvg):
            parse('<html viewBox="0 0 1 1"></html>')


class TestForeignNodes:
    def test_declaration_comment_and_metadata(self):
        _, foreign = parse(
            '<?xml version="1.0"?><!-- c --><svg viewBox="0 0 10 10">'
            '<metadata/><path d="M0 0L10 10"/></svg>')
        assert [(f.reason, f.tag_name) for f in foreign] == [
            ("declaration", "xml"),
            ("comment", "comment"),
            ("unsupported_tag", "metadata"),
        ]

    def test_doctype(self):
        _, foreign = parse(
            '<!DOCTYPE svg PUBLIC "-//W3C//DTD SVG 1.1//EN" "x.dtd">'
            '<svg viewBox="0 0 1 1"></svg>')
        assert [f.reason for f in foreign] == ["doctype"]

    def test_editor_metadata_namespace(self):
        _, foreign = parse(
            '<svg viewBox="0 0 1 1" xmlns:sodipodi="http://sodipodi.sourceforge.net/DTD/sodipodi-0.0.dtd">'
            "<sodipodi:namedview/></svg>")
        assert foreign and foreign[0].reason == "editor_metadata"

    def test_style_sheet_block(self):
        _, foreign = parse(
            '<svg viewBox="0 0 1 1"><style>.a{fill:red}</style></svg>')
        assert [f.reason for f in foreign] == ["style_sheet"]

    def test_nested_unsupported_subtree_recorded(self):
        _, foreign = parse(
            '<svg viewBox="0 0 1 1"><title>t<b>x</b></title></svg>')
        reasons = [(f.reason, f.tag_name) for f in foreign]
        assert ("unsupported_tag", "title") in reasons
        assert ("unsupported_tag", "b") in reasons


class TestColorNormalization:
    @pytest.mark.parametrize("raw,expected", [
        ("#abc", "#aabbcc"),
        ("#AABBCC", "#aabbcc"),
        ("rgb(255, 0, 0)", "#ff0000"),
        ("rgb(100%,0%,0%)", "#ff0000"),
        ("red", "#ff0000"),
        ("black", "#000000"),
        ("currentColor", "#000000"),
        ("none", "none"),
    ])
    def test_normalize_color(self, raw, expected):
        assert normalize_color(raw) == expected

    def test_fill_coerced_to_hex(self):
        doc, _ = parse('<svg viewBox="0 0 4 4">'
                       '<rect width="1" height="1" fill="Red"/></svg>')
        assert doc.elements[0].get("fill") == Color("#ff0000")


class TestAttributeCoercion:
    def test_numeric_attr(self):
        assert coerce_attr("cx", "1.5") == Number(Decimal("1.5"))

    def test_points_attr(self):
        value = coerce_attr("points", "1,2 3,4")
        assert isinstance(value, Points)
        assert value.pairs == ((Decimal(1), Decimal(2)), (Decimal(3), Decimal(4)))

    def test_path_attr(self):
        value = coerce_attr("d", "M0 0l1 1")
        assert isinstance(value, PathData)

    def test_paint_reference(self):
        assert coerce_attr("fill", "url(#grad)") == Reference("grad")

    def test_href_reference(self):
        assert coerce_attr("href", "#grad") == Reference("grad")

    def test_transform(self):
        value = coerce_attr("transform", "translate(3 4) scale(2)")
        assert isinstance(value, Transform)
        assert value.functions[0][0] == "translate"

    def test_id_is_text(self):
        assert coerce_attr("id", "shape") == Text("shape")


class TestAttributeHandling:
    def test_unknown_attribute_dropped_and_recorded(self):
        parsed = parse_svg_full(RawSvg(
            '<svg viewBox="0 0 4 4">'
            '<rect width="1" height="1" data-name="x" class="big"/></svg>'))
        assert "data-name" in parsed.dropped_attrs
        assert "class" in parsed.dropped_attrs
        rect = parsed.document.elements[0]
        assert rect.get("width") is not None

    def test_style_attribute_split(self):
        doc, _ = parse('<svg viewBox="0 0 4 4">'
                       '<rect width="1" height="1" style="fill:#ff0000;opacity:0.5"/></svg>')
        rect = doc.elements[0]
        assert rect.get("fill") == Color("#ff0000")
        assert rect.get("opacity") == Number(Decimal("0.5"))

    def test_xlink_href_maps_to_href(self):
        doc, _ = parse(
            '<svg viewBox="0 0 4 4" xmlns:xlink="http://www.w3.org/1999/xlink">'
            '<linearGradient id="a"/>'
            '<linearGradient id="b" xlink:href="#a"/></svg>')
        grad_b = doc.elements[1]
        assert grad_b.get("href") == Reference("a")

    def test_stop_color_maps_to_fill(self):
        doc, _ = parse('<svg viewBox="0 0 4 4"><linearGradient id="g">'
                       '<stop offset="0" stop-color="#010203"/>'
                       "</linearGradient></svg>")
        stop = doc.elements[0].children[0]
        assert stop.get("fill") == Color("#010203")


class TestDefsHoisting:
    def test_defs_children_surface(self):
        doc, foreign = parse(
            '<svg viewBox="0 0 4 4"><defs><linearGradient id="g">'
            '<stop offset="0" stop-color="#fff"/></linearGradient></defs>'
            '<rect width="1" height="1" fill="url(#g)"/></svg>')
        kinds = [n.kind for n in doc.elements]
        assert kinds == ["linearGradient", "rect"]

    def test_precision_not_mutated(self):
        doc, _ = parse('<svg viewBox="0 0 4 4">'
                       '<circle cx="1.23456" cy="0" r="1"/></svg>')
        assert doc.elements[0].get("cx") == Number(Decimal("1.23456"))
