"""svgx: lossless SVG normalization, semantic-token codec, instruction
dataset construction, and embedding initialization."""

from .codec import (
    DecodeReport,
    Literal,
    Semantic,
    TokenSeq,
    decode,
    encode,
    from_text,
    to_text,
    truncate,
)
from .embed import DescriptionIds, extend_matrix, init_embedding
from .instruct import (
    GroupImage,
    InstructionRecord,
    SampleInputs,
    build_corpus,
    build_record,
    loss_mask,
)
from .ir import Node, SvgDocument, canonical_serialize
from .normalizer import (
    NormalizationReport,
    NormalizeOptions,
    normalize,
    rescale_canvas,
    round_numbers,
    strip_redundant,
    to_relative_paths,
)
from .parser import ForeignNode, RawSvg, parse_svg
from .render import DiffResult, RendererConfig, pixel_diff, quantization_sweep
from .stats import CorpusStats, avg_tok, corpus_stats
from .vocab import SemanticToken, vocab

__version__ = "0.1.0"

__all__ = [
    "CorpusStats", "DecodeReport", "DescriptionIds", "DiffResult",
    "ForeignNode", "GroupImage", "InstructionRecord", "Literal", "Node",
    "NormalizationReport", "NormalizeOptions", "RawSvg", "RendererConfig",
    "SampleInputs", "Semantic", "SemanticToken", "SvgDocument", "TokenSeq",
    "avg_tok", "build_corpus", "build_record", "canonical_serialize",
    "corpus_stats", "decode", "encode", "extend_matrix", "from_text",
    "init_embedding", "loss_mask", "normalize", "parse_svg", "pixel_diff",
    "quantization_sweep", "rescale_canvas", "round_numbers",
    "strip_redundant", "to_relative_paths", "to_text", "truncate", "vocab",
]
