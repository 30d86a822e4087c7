"""AES-128 key schedule and its inversion from any single round key."""

from sboxlab.errors import InvalidInputError
from sboxlab.keys.base_schedule import BaseKeySchedule
from sboxlab.sbox.tables import BuiltinSBox, builtin_sbox

AES_ROUNDS = 10
_SBOX = builtin_sbox(BuiltinSBox.AES).table


def _xtime(b: int) -> int:
    b <<= 1
    return (b ^ 0x11B) if b & 0x100 else b


def aes_round_constants() -> list[int]:
    """RC[1] = 01, RC[i] = 02 * RC[i-1] in GF(2^8): 01 02 04 08 10 20 40 80 1B 36."""
    rc = [1]
    for _ in range(AES_ROUNDS - 1):
        rc.append(_xtime(rc[-1]))
    return rc


_RCON = aes_round_constants()


def _word_transform(word: bytes, round_no: int) -> bytes:
    """SubWord(RotWord(word)) xor Rcon[round_no]."""
    rotated = word[1:] + word[:1]
    out = bytearray(_SBOX[b] for b in rotated)
    out[0] ^= _RCON[round_no - 1]
    return bytes(out)


def _xor(a: bytes, b: bytes) -> bytes:
    return bytes(x ^ y for x, y in zip(a, b))


class AesKeySchedule(BaseKeySchedule):
    """11 round keys of 16 bytes; round key 0 is the cipher key itself."""

    def __init__(self) -> None:
        super().__init__(
            name="aes128",
            key_bytes=16,
            round_key_bytes=16,
            round_key_count=AES_ROUNDS + 1,
            window_size=1,
        )

    def _expand(self, key: bytes) -> list[bytes]:
        words = [key[i : i + 4] for i in range(0, 16, 4)]
        for j in range(4, 4 * (AES_ROUNDS + 1)):
            temp = words[j - 1]
            if j % 4 == 0:
                temp = _word_transform(temp, j // 4)
            words.append(_xor(words[j - 4], temp))
        return [b"".join(words[4 * r : 4 * r + 4]) for r in range(AES_ROUNDS + 1)]

    def _recover(self, start: int, window: list[bytes]) -> bytes:
        rk = window[0]
        # words[j] for j in 4*start .. 4*start+3, walked back one word at a time
        words = {4 * start + i: rk[4 * i : 4 * i + 4] for i in range(4)}
        for j in range(4 * start + 3, 3, -1):
            temp = words[j - 1]
            if j % 4 == 0:
                temp = _word_transform(temp, j // 4)
            words[j - 4] = _xor(words[j], temp)
        return b"".join(words[i] for i in range(4))


AES128 = AesKeySchedule()


def aes_expand(key: bytes) -> list[bytes]:
    return AES128.expand(key)


def aes_recover(round_key: bytes, round_index: int) -> bytes:
    """Initial key from the round key at round_index (0..10)."""
    if isinstance(round_index, bool) or not isinstance(round_index, int):
        raise InvalidInputError(f"round index must be an integer, got {round_index!r}")
    return AES128.recover({round_index: round_key})
