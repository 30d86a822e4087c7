"""
Irreversible chaotic key expansion.

The 32-byte initial key seeds the 2D-ECM (seed_from_key). After the usual
transient, every state pair (x, y) becomes 12 hex digits, 6 from
floor(x * 16^6) followed by 6 from floor(y * 16^6), of which only digits
3..10 are kept. A 32-byte round key takes 8 pairs. The chaotic state runs
on across rounds without reseeding, and the dropped digits make the step
from state to round key many-to-one.
"""

import logging
import math
from collections.abc import Iterator
from dataclasses import dataclass

import numpy as np

from sboxlab.chaos.chaos_core import INITIAL_KEY_BYTES, TRANSIENT, iter_ecm, seed_from_key
from sboxlab.errors import InvalidInputError
from sboxlab.sbox.construction import construct_sbox
from sboxlab.utils.output_helpers import parse_hex_key

logger = logging.getLogger(__name__)

ROUND_KEY_WIDTHS = (32, 64, 128)
HEX_PER_COORD = 6
_COORD_SCALE = 16**HEX_PER_COORD
# 0-based slice of the 12-digit group: digits 3..10 counting from 1.
_KEEP = slice(2, 10)
BYTES_PER_PAIR = 4


@dataclass(frozen=True)
class InitialKey:
    data: bytes

    def __post_init__(self) -> None:
        if len(self.data) != INITIAL_KEY_BYTES:
            raise InvalidInputError(
                f"initial key must be {INITIAL_KEY_BYTES} bytes, got {len(self.data)}"
            )

    @classmethod
    def from_hex(cls, text: str) -> "InitialKey":
        return cls(parse_hex_key(text, INITIAL_KEY_BYTES))

    @property
    def hex(self) -> str:
        return self.data.hex().upper()


@dataclass(frozen=True)
class RoundKey:
    index: int
    data: bytes

    @property
    def hex(self) -> str:
        return self.data.hex().upper()


@dataclass(frozen=True)
class KeySchedule:
    round_keys: tuple[RoundKey, ...]
    rounds: int
    width_bytes: int
    keyed_sbox: bool

    def __post_init__(self) -> None:
        if len(self.round_keys) != self.rounds:
            raise InvalidInputError("round key count does not match rounds")
        if any(len(rk.data) != self.width_bytes for rk in self.round_keys):
            raise InvalidInputError("round keys must all have the configured width")

    def __iter__(self) -> Iterator[RoundKey]:
        return iter(self.round_keys)

    def __len__(self) -> int:
        return self.rounds


def _as_key_bytes(ik: InitialKey | bytes) -> bytes:
    return ik.data if isinstance(ik, InitialKey) else InitialKey(bytes(ik)).data


def pair_digits(x: float, y: float) -> str:
    """The 8 hex digits a state pair contributes to a round key."""
    group = f"{math.floor(x * _COORD_SCALE):06X}{math.floor(y * _COORD_SCALE):06X}"
    return group[_KEEP]


def expand_keys(
    ik: InitialKey | bytes,
    rounds: int,
    width_bytes: int = 32,
    keyed_sbox: bool = False,
) -> KeySchedule:
    """
    Derive `rounds` round keys of width_bytes each from a 32-byte initial key.

    With keyed_sbox, every output byte is substituted through a strong S-Box
    constructed from the same key.
    """
    key = _as_key_bytes(ik)
    if rounds < 1:
        raise InvalidInputError(f"rounds must be >= 1, got {rounds}")
    if width_bytes not in ROUND_KEY_WIDTHS:
        raise InvalidInputError(
            f"width must be one of {ROUND_KEY_WIDTHS} bytes, got {width_bytes}"
        )

    params, s0 = seed_from_key(key)
    sbox = construct_sbox(params, s0)[0] if keyed_sbox else None
    pairs = iter_ecm(params, s0, TRANSIENT)
    per_round = width_bytes // BYTES_PER_PAIR

    round_keys = []
    for r in range(1, rounds + 1):
        digits = "".join(pair_digits(*next(pairs)) for _ in range(per_round))
        data = bytes.fromhex(digits)
        if sbox is not None:
            data = sbox.apply(data)
        round_keys.append(RoundKey(r, data))

    logger.info(
        "expanded %d round keys of %d bytes (keyed=%s, gamma=%.6f, k=%d)",
        rounds,
        width_bytes,
        keyed_sbox,
        params.gamma,
        params.k,
    )
    return KeySchedule(tuple(round_keys), rounds, width_bytes, keyed_sbox)


# ---------------------------------------------------------------------------
# Hamming statistics
# ---------------------------------------------------------------------------


def hamming_distance(a: bytes, b: bytes) -> int:
    if len(a) != len(b):
        raise InvalidInputError(f"length mismatch: {len(a)} vs {len(b)} bytes")
    return (int.from_bytes(a, "big") ^ int.from_bytes(b, "big")).bit_count()


@dataclass(frozen=True)
class HammingStats:
    distances: tuple[int, ...]
    mean: float


def hamming_stats(
    ik: InitialKey | bytes, rounds: int, keyed_sbox: bool = False
) -> HammingStats:
    """Distance of each 32-byte round key to the initial key, and the mean."""
    key = _as_key_bytes(ik)
    schedule = expand_keys(key, rounds, INITIAL_KEY_BYTES, keyed_sbox)
    distances = tuple(hamming_distance(rk.data, key) for rk in schedule)
    return HammingStats(distances, sum(distances) / len(distances))


def cross_distances(a: KeySchedule, b: KeySchedule) -> list[int]:
    """Per-round distances between two schedules of equal shape."""
    if a.rounds != b.rounds or a.width_bytes != b.width_bytes:
        raise InvalidInputError("schedules differ in rounds or width")
    return [hamming_distance(x.data, y.data) for x, y in zip(a, b)]


def pairwise_hamming_mean(schedule: KeySchedule) -> float:
    """Mean distance over all pairs of distinct round keys."""
    if schedule.rounds < 2:
        raise InvalidInputError("need at least 2 round keys")
    raw = np.frombuffer(b"".join(rk.data for rk in schedule), dtype=np.uint8)
    bits = np.unpackbits(raw.reshape(schedule.rounds, -1), axis=1).astype(np.int64)
    # d(i, j) = |b_i| + |b_j| - 2 <b_i, b_j>
    weights = bits.sum(axis=1)
    dist = weights[:, None] + weights[None, :] - 2 * (bits @ bits.T)
    upper = np.triu_indices(schedule.rounds, k=1)
    return float(dist[upper].mean())


def render_schedule(schedule: KeySchedule, ik: InitialKey | bytes | None = None) -> str:
    """One line per round: index, hex key and, given the initial key, its Hamming distance."""
    key = _as_key_bytes(ik) if ik is not None else None
    width = len(str(schedule.rounds))
    lines = []
    for rk in schedule:
        line = f"{rk.index:>{width}}  {rk.hex}"
        if key is not None and len(key) == len(rk.data):
            line += f"  {hamming_distance(rk.data, key)}"
        lines.append(line)
    return "\n".join(lines) + "\n"


def find_group_collision(
    samples: int = 100_000, rng_seed: int | None = 0
) -> tuple[tuple[float, float], tuple[float, float]] | None:
    """
    Search random states for two distinct pairs that emit the same 8 hex digits.

    Each random pair is mirrored by a partner that differs only in the
    dropped digits, so a collision exists whenever a sample lands on one.
    """
    rng = np.random.default_rng(rng_seed)
    seen: dict[str, tuple[float, float]] = {}
    for x, y in rng.random((samples, 2)):
        state = (float(x), float(y))
        group = pair_digits(*state)
        other = seen.get(group)
        if other is not None and other != state:
            return other, state
        seen[group] = state
        # same kept digits, different leading hex digit of x
        partner = ((state[0] + 1 / 16) % 1.0, state[1])
        if pair_digits(*partner) == group and partner != state:
            return state, partner
    return None

