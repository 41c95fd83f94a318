"""Recursive coding based on grouping of symbols, with AC/Huffman baselines."""

from .codec import (
    EncodedContainer,
    EncoderConfig,
    LevelHeader,
    decode,
    encode,
    encode_levels,
    encoded_bits_per_symbol,
)
from .errors import BitstreamExhausted, ContainerError, GroupingError, RCGSError
from .grouping import GroupingTable, SuperLetter, form_super_letters, group_redundancy
from .model import FrequencyTable, count_frequencies, entropy_bits_per_symbol

__version__ = "0.1.0"

__all__ = [
    "BitstreamExhausted", "ContainerError", "EncodedContainer", "EncoderConfig",
    "FrequencyTable", "GroupingError", "GroupingTable", "LevelHeader", "RCGSError",
    "SuperLetter", "count_frequencies", "decode", "encode", "encode_levels",
    "encoded_bits_per_symbol", "entropy_bits_per_symbol", "form_super_letters",
    "group_redundancy",
]
