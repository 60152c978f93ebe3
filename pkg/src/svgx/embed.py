"""Semantic-average embedding initialization for the 55 new tokens.

Matrix file format: 16-byte little-endian header (magic "EMBM", u32
version=1, u32 rows, u32 cols) followed by a row-major float32 payload.
"""

from __future__ import annotations

import json
import struct
from dataclasses import dataclass

import numpy as np

from .errors import IdOutOfRange, WrongCount
from .vocab import SemanticToken, vocab

MAGIC = b"EMBM"
VERSION = 1
_HEADER = struct.Struct("<4sIII")


@dataclass(frozen=True)
class DescriptionIds:
    token: SemanticToken
    ids: tuple  # subword ids of the token's description string


def write_matrix(path, matrix: np.ndarray):
    matrix = np.ascontiguousarray(matrix, dtype="<f4")
    if matrix.ndim != 2:
        raise ValueError("embedding matrix must be 2-D")
    with open(path, "wb") as fh:
        fh.write(_HEADER.pack(MAGIC, VERSION, matrix.shape[0], matrix.shape[1]))
        fh.write(matrix.tobytes())


def read_matrix(path) -> np.ndarray:
    with open(path, "rb") as fh:
        header = fh.read(_HEADER.size)
        magic, version, rows, cols = _HEADER.unpack(header)
        if magic != MAGIC:
            raise ValueError(f"bad magic {magic!r}")
        if version != VERSION:
            raise ValueError(f"unsupported version {version}")
        payload = fh.read(rows * cols * 4)
    data = np.frombuffer(payload, dtype="<f4")
    if data.size != rows * cols:
        raise ValueError("truncated matrix payload")
    return data.reshape(rows, cols).copy()


def init_embedding(desc: DescriptionIds, matrix: np.ndarray) -> np.ndarray:
    """Mean of the description-token rows, 64-bit accumulation."""
    if not desc.ids:
        raise ValueError("description ids must be non-empty")
    for i in desc.ids:
        if not 0 <= i < matrix.shape[0]:
            raise IdOutOfRange(f"id {i} outside matrix rows {matrix.shape[0]}")
    acc = np.zeros(matrix.shape[1], dtype=np.float64)
    for i in desc.ids:
        acc += matrix[i].astype(np.float64)
    return (acc / len(desc.ids)).astype(np.float32)


def extend_matrix(matrix: np.ndarray, descs) -> np.ndarray:
    """Append the 55 semantic-average rows; original rows untouched."""
    descs = list(descs)
    if len(descs) != len(vocab()):
        raise WrongCount(f"expected {len(vocab())} descriptions, got {len(descs)}")
    descs = sorted(descs, key=lambda d: d.token.id)
    new_rows = [init_embedding(d, matrix) for d in descs]
    return np.vstack([matrix.astype(np.float32, copy=False),
                      np.stack(new_rows)])


def load_description_ids(path) -> list:
    """JSON map of token surface -> id list, one entry per vocab token."""
    with open(path, "r", encoding="utf-8") as fh:
        mapping = json.load(fh)
    out = []
    for tok in vocab():
        ids = mapping.get(tok.surface)
        if not ids:
            raise WrongCount(f"missing description ids for {tok.surface}")
        out.append(DescriptionIds(tok, tuple(int(i) for i in ids)))
    return out
