"""SM4 key schedule and its inversion from four consecutive round keys."""

from collections.abc import Mapping, Sequence

from sboxlab.errors import InvalidInputError
from sboxlab.keys.base_schedule import BaseKeySchedule
from sboxlab.sbox.tables import BuiltinSBox, builtin_sbox

SM4_ROUNDS = 32
_SBOX = builtin_sbox(BuiltinSBox.SM4).table
_MASK32 = 0xFFFFFFFF

FK = (0xA3B1BAC6, 0x56AA3350, 0x677D9197, 0xB27022DC)
# ck[i] byte j = (4i + j) * 7 mod 256
CK = tuple(
    int.from_bytes(bytes(((4 * i + j) * 7) % 256 for j in range(4)), "big")
    for i in range(SM4_ROUNDS)
)


def _rotl(x: int, n: int) -> int:
    return ((x << n) | (x >> (32 - n))) & _MASK32


def _t_prime(word: int) -> int:
    """T'(A) = L'(tau(A)) with L'(B) = B ^ (B <<< 13) ^ (B <<< 23)."""
    b = int.from_bytes(bytes(_SBOX[v] for v in word.to_bytes(4, "big")), "big")
    return b ^ _rotl(b, 13) ^ _rotl(b, 23)


class Sm4KeySchedule(BaseKeySchedule):
    """32 round keys of 4 bytes, rk_i = K_{i+4}."""

    def __init__(self) -> None:
        super().__init__(
            name="sm4",
            key_bytes=16,
            round_key_bytes=4,
            round_key_count=SM4_ROUNDS,
            window_size=4,
        )

    def _expand(self, key: bytes) -> list[bytes]:
        k = [int.from_bytes(key[4 * i : 4 * i + 4], "big") ^ FK[i] for i in range(4)]
        for i in range(SM4_ROUNDS):
            k.append(k[i] ^ _t_prime(k[i + 1] ^ k[i + 2] ^ k[i + 3] ^ CK[i]))
        return [w.to_bytes(4, "big") for w in k[4:]]

    def _recover(self, start: int, window: list[bytes]) -> bytes:
        k = {start + 4 + j: int.from_bytes(rk, "big") for j, rk in enumerate(window)}
        for i in range(start + 3, -1, -1):
            k[i] = k[i + 4] ^ _t_prime(k[i + 1] ^ k[i + 2] ^ k[i + 3] ^ CK[i])
        return b"".join((k[i] ^ FK[i]).to_bytes(4, "big") for i in range(4))


SM4 = Sm4KeySchedule()


def sm4_expand(mk: bytes) -> list[bytes]:
    return SM4.expand(mk)


def sm4_recover(
    rk_window: Sequence[bytes] | Mapping[int, bytes],
    start_index: int | None = None,
) -> bytes:
    """
    Master key from 4 consecutive round keys.

    Pass either a sequence plus start_index, or a mapping {round index: key}.
    """
    if isinstance(rk_window, Mapping):
        if start_index is not None:
            raise InvalidInputError("start_index is implied by a mapping window")
        return SM4.recover(rk_window)
    if start_index is None:
        raise InvalidInputError("start_index is required with a sequence window")
    return SM4.recover({start_index + j: rk for j, rk in enumerate(rk_window)})
