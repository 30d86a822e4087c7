from .aes import aes_expand, aes_recover, aes_round_constants
from .key_expansion import (
    InitialKey,
    KeySchedule,
    RoundKey,
    expand_keys,
    hamming_distance,
    hamming_stats,
)
from .sm4 import sm4_expand, sm4_recover

__all__ = [
    "InitialKey",
    "KeySchedule",
    "RoundKey",
    "aes_expand",
    "aes_recover",
    "aes_round_constants",
    "expand_keys",
    "hamming_distance",
    "hamming_stats",
    "sm4_expand",
    "sm4_recover",
]
