"""Abstract base class for the reversible reference key schedules."""

import logging
from abc import ABC, abstractmethod
from collections.abc import Mapping

from sboxlab.errors import InvalidInputError


class BaseKeySchedule(ABC):
    """
    Abstract base class that AES and SM4 schedules extend.

    Provides:
    - Length checks on master keys and round keys
    - Validation of recovery windows (consecutive round indices in range)
    - A round-trip check: recover(expand(K)) == K from every valid window
    """

    def __init__(
        self,
        name: str,
        key_bytes: int,
        round_key_bytes: int,
        round_key_count: int,
        window_size: int,
    ) -> None:
        """
        Parameters
        ----------
        name:
            Used in logs and error messages.
        key_bytes:
            Master key length.
        round_key_bytes:
            Width of one round key.
        round_key_count:
            Number of round keys expand() returns (indices 0..count-1).
        window_size:
            Consecutive round keys needed to run the schedule backwards.
        """
        self.name = name
        self.key_bytes = key_bytes
        self.round_key_bytes = round_key_bytes
        self.round_key_count = round_key_count
        self.window_size = window_size
        self.logger: logging.Logger = logging.getLogger(f"{__name__}.{name}")

    # ------------------------------------------------------------------
    # Abstract interface
    # ------------------------------------------------------------------

    @abstractmethod
    def _expand(self, key: bytes) -> list[bytes]:
        """Return round_key_count round keys for a validated master key."""

    @abstractmethod
    def _recover(self, start: int, window: list[bytes]) -> bytes:
        """Run the schedule backwards from a validated window starting at `start`."""

    # ------------------------------------------------------------------
    # Public API
    # ------------------------------------------------------------------

    @property
    def max_start(self) -> int:
        return self.round_key_count - self.window_size

    def expand(self, key: bytes) -> list[bytes]:
        if len(key) != self.key_bytes:
            raise InvalidInputError(
                f"{self.name} key must be {self.key_bytes} bytes, got {len(key)}"
            )
        return self._expand(bytes(key))

    def recover(self, round_keys: Mapping[int, bytes]) -> bytes:
        """
        Recover the master key from window_size round keys with consecutive indices.

        round_keys maps round index to round key.
        """
        indices = sorted(round_keys)
        if len(indices) != self.window_size:
            raise InvalidInputError(
                f"{self.name} recovery needs {self.window_size} round keys, got {len(indices)}"
            )
        start = indices[0]
        if indices != list(range(start, start + self.window_size)):
            raise InvalidInputError(f"{self.name} round keys are not consecutive: {indices}")
        if not 0 <= start <= self.max_start:
            raise InvalidInputError(
                f"{self.name} window must start in [0, {self.max_start}], got {start}"
            )
        window = [bytes(round_keys[i]) for i in indices]
        for i, rk in zip(indices, window):
            if len(rk) != self.round_key_bytes:
                raise InvalidInputError(
                    f"{self.name} round key {i} must be {self.round_key_bytes} bytes, "
                    f"got {len(rk)}"
                )
        key = self._recover(start, window)
        self.logger.debug("recovered master key from rounds %d..%d", start, indices[-1])
        return key

    def round_trip(self, key: bytes) -> bool:
        """True when every valid window of expand(key) recovers key."""
        round_keys = self.expand(key)
        return all(
            self.recover(
                {i: round_keys[i] for i in range(start, start + self.window_size)}
            )
            == key
            for start in range(self.max_start + 1)
        )
