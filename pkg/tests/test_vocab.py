import pytest

from svgx.vocab import (
    KIND_TOKEN,
    PATH_OP_TOKEN,
    TOKEN_KIND,
    TOKEN_PATH_OP,
    by_surface,
    token,
    vocab,
)


class TestVocab:
    def test_ids_are_dense_and_ordered(self):
        assert [t.id for t in vocab()] == list(range(55))

    def test_surfaces_unique(self):
        surfaces = [t.surface for t in vocab()]
        assert len(set(surfaces)) == 55

    def test_by_surface_inverse_of_token(self):
        for t in vocab():
            assert by_surface(t.surface) is t
            assert token(t.surface[3:-3]) is t

    def test_descriptions_nonempty(self):
        assert all(t.description for t in vocab())

    def test_unknown_name_raises(self):
        with pytest.raises(KeyError):
            token("no_such_token")


class TestMaps:
    def test_kind_map_covers_element_kinds(self):
        from svgx.ir import ELEMENT_KINDS
        for kind in ELEMENT_KINDS:
            if kind == "group":
                continue  # group uses the start_of_g/end_of_g pair
            assert kind in KIND_TOKEN
            assert TOKEN_KIND[KIND_TOKEN[kind]] == kind

    def test_path_op_map_covers_ten_ops(self):
        from svgx.ir import OP_ARITY
        assert set(PATH_OP_TOKEN) == set(OP_ARITY)
        for op, name in PATH_OP_TOKEN.items():
            assert TOKEN_PATH_OP[name] == op

    def test_attribute_tokens_match_canonical_order(self):
        from svgx.ir import ATTR_ORDER
        attr_tokens = [t for t in vocab() if t.category == "attribute"]
        assert tuple(t.surface[3:-3] for t in attr_tokens) == ATTR_ORDER
