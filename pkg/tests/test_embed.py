import json
import struct

import numpy as np
import pytest

from svgx.embed import (
    MAGIC,
    DescriptionIds,
    extend_matrix,
    init_embedding,
    load_description_ids,
    read_matrix,
    write_matrix,
)
from svgx.errors import IdOutOfRange, WrongCount
from svgx.vocab import vocab


def brute_force_mean(matrix, ids):
    """Independent oracle: per-component arithmetic mean in pure Python."""
    cols = matrix.shape[1]
    out = []
    for c in range(cols):
        total = 0.0
        for i in ids:
            total += float(matrix[i, c])
        out.append(total / len(ids))
    return out


class TestMatrixFile:
    def test_header_layout(self, tmp_path):
        path = tmp_path / "m.embm"
        write_matrix(path, np.zeros((3, 4), dtype=np.float32))
        blob = path.read_bytes()
        magic, version, rows, cols = struct.unpack("<4sIII", blob[:16])
        assert magic == MAGIC == b"EMBM"
        assert (version, rows, cols) == (1, 3, 4)
        assert len(blob) == 16 + 3 * 4 * 4

    def test_roundtrip(self, tmp_path):
        rng = np.random.default_rng(3)
        matrix = rng.standard_normal((17, 9)).astype(np.float32)
        path = tmp_path / "m.embm"
        write_matrix(path, matrix)
        out = read_matrix(path)
        assert out.dtype == np.float32
        assert np.array_equal(out, matrix)

    def test_bad_magic(self, tmp_path):
        path = tmp_path / "bad.embm"
        path.write_bytes(b"NOPE" + b"\x00" * 20)
        with pytest.raises(ValueError):
            read_matrix(path)

    def test_truncated_payload(self, tmp_path):
        path = tmp_path / "short.embm"
        path.write_bytes(struct.pack("<4sIII", b"EMBM", 1, 2, 2) + b"\x00" * 4)
        with pytest.raises(ValueError):
            read_matrix(path)


class TestInitEmbedding:
    def test_matches_brute_force(self):
        rng = np.random.default_rng(11)
        matrix = rng.standard_normal((50, 8)).astype(np.float32)
        desc = DescriptionIds(vocab()[0], (3, 7, 7, 21))
        got = init_embedding(desc, matrix)
        expected = brute_force_mean(matrix, desc.ids)
        assert got.dtype == np.float32
        assert np.allclose(got, expected, atol=1e-6)

    def test_single_id_is_row_copy(self):
        matrix = np.arange(20, dtype=np.float32).reshape(4, 5)
        got = init_embedding(DescriptionIds(vocab()[0], (2,)), matrix)
        assert np.array_equal(got, matrix[2])

    def test_id_out_of_range(self):
        matrix = np.zeros((4, 5), dtype=np.float32)
        with pytest.raises(IdOutOfRange):
            init_embedding(DescriptionIds(vocab()[0], (4,)), matrix)

    def test_empty_ids_rejected(self):
        with pytest.raises(ValueError):
            init_embedding(DescriptionIds(vocab()[0], ()), np.zeros((4, 5)))


class TestExtendMatrix:
    def make_descs(self, rows, rng):
        return [
            DescriptionIds(tok, tuple(int(i) for i in
                                      rng.integers(0, rows, rng.integers(1, 9))))
            for tok in vocab()]

    def test_appends_55_rows_originals_bit_identical(self):
        rng = np.random.default_rng(5)
        matrix = rng.standard_normal((100, 16)).astype(np.float32)
        out = extend_matrix(matrix, self.make_descs(100, rng))
        assert out.shape == (155, 16)
        assert np.array_equal(out[:100], matrix)

    def test_new_rows_sorted_by_token_id(self):
        rng = np.random.default_rng(6)
        matrix = rng.standard_normal((40, 4)).astype(np.float32)
        descs = self.make_descs(40, rng)
        shuffled = list(reversed(descs))
        assert np.array_equal(extend_matrix(matrix, descs),
                              extend_matrix(matrix, shuffled))

    def test_wrong_count(self):
        matrix = np.zeros((10, 4), dtype=np.float32)
        with pytest.raises(WrongCount):
            extend_matrix(matrix, [DescriptionIds(vocab()[0], (1,))])


class TestLoadDescriptionIds:
    def test_loads_by_surface(self, tmp_path):
        mapping = {tok.surface: [tok.id % 5, 1] for tok in vocab()}
        path = tmp_path / "ids.json"
        path.write_text(json.dumps(mapping))
        descs = load_description_ids(path)
        assert len(descs) == 55
        assert descs[0].token is vocab()[0]
        assert descs[0].ids == (0, 1)

    def test_missing_surface(self, tmp_path):
        mapping = {tok.surface: [1] for tok in vocab()[1:]}
        path = tmp_path / "ids.json"
        path.write_text(json.dumps(mapping))
        with pytest.raises(WrongCount):
            load_description_ids(path)
