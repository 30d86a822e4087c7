"""The SBox type and its structural analysis: fixed points, reverse fixed points, period rings."""

import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

from sboxlab.errors import DuplicateValueError, MalformedTokenError, WrongCountError

logger = logging.getLogger(__name__)

SBOX_SIZE = 256
_LAST = SBOX_SIZE - 1


@dataclass(frozen=True)
class SBox:
    """An 8x8 S-Box. Bijectivity is checked on construction."""

    table: tuple[int, ...]
    name: str = ""

    def __post_init__(self) -> None:
        if len(self.table) != SBOX_SIZE:
            raise WrongCountError(f"S-Box needs {SBOX_SIZE} entries, got {len(self.table)}")
        for i, v in enumerate(self.table):
            if isinstance(v, bool) or not isinstance(v, int) or not 0 <= v <= _LAST:
                raise MalformedTokenError(f"entry {i} is not a byte value: {v!r}")
        seen = set()
        for v in self.table:
            if v in seen:
                missing = sorted(set(range(SBOX_SIZE)) - set(self.table))
                raise DuplicateValueError(v, missing)
            seen.add(v)

    @classmethod
    def of(cls, values: Iterable[int], name: str = "") -> "SBox":
        return cls(tuple(int(v) for v in values), name)

    @classmethod
    def identity(cls) -> "SBox":
        return cls(tuple(range(SBOX_SIZE)), "identity")

    def __getitem__(self, x: int) -> int:
        return self.table[x]

    def __len__(self) -> int:
        return SBOX_SIZE

    def inverse(self) -> "SBox":
        inv = [0] * SBOX_SIZE
        for i, v in enumerate(self.table):
            inv[v] = i
        return SBox(tuple(inv), f"{self.name}^-1" if self.name else "")

    def apply(self, data: bytes) -> bytes:
        """Substitute every byte of data."""
        return bytes(self.table[b] for b in data)


@dataclass(frozen=True)
class Cycle:
    length: int
    members: tuple[int, ...]


@dataclass(frozen=True)
class CycleStructure:
    """
    Cycle decomposition of an S-Box.

    Cycles are sorted by length, then by head; each cycle starts at its
    smallest member and lists members in S-order.
    """

    cycles: tuple[Cycle, ...]

    @property
    def lengths(self) -> list[int]:
        return [c.length for c in self.cycles]

    def __len__(self) -> int:
        return len(self.cycles)


@dataclass(frozen=True)
class StructuralReport:
    fixed_points: list[int]
    reverse_fixed_points: list[int]
    cycles: CycleStructure

    def as_dict(self) -> dict:
        return {
            "fixed_points": [f"{v:02X}" for v in self.fixed_points],
            "reverse_fixed_points": [f"{v:02X}" for v in self.reverse_fixed_points],
            "cycle_lengths": self.cycles.lengths,
            "cycles": [[f"{v:02X}" for v in c.members] for c in self.cycles.cycles],
        }


def cycle_of(s: SBox, start: int) -> tuple[int, ...]:
    """Members of the ring through `start`, beginning at `start`."""
    members = [start]
    x = s[start]
    while x != start:
        members.append(x)
        x = s[x]
    return tuple(members)


def cycle_structure(s: SBox) -> CycleStructure:
    seen = [False] * SBOX_SIZE
    cycles: list[Cycle] = []
    for head in range(SBOX_SIZE):
        if seen[head]:
            continue
        members = cycle_of(s, head)
        for m in members:
            seen[m] = True
        cycles.append(Cycle(len(members), members))
    cycles.sort(key=lambda c: (c.length, c.members[0]))
    return CycleStructure(tuple(cycles))


def structural_report(s: SBox) -> StructuralReport:
    """Fixed points S(i) = i, reverse fixed points S(i) = 255 - i, and every cycle."""
    fixed = [i for i in range(SBOX_SIZE) if s[i] == i]
    reverse = [i for i in range(SBOX_SIZE) if s[i] == _LAST - i]
    return StructuralReport(fixed, reverse, cycle_structure(s))


def is_strong(s: SBox) -> bool:
    """No fixed point, no reverse fixed point, and a single 256-cycle."""
    if any(s[i] == i or s[i] == _LAST - i for i in range(SBOX_SIZE)):
        return False
    return len(cycle_of(s, 0)) == SBOX_SIZE


def format_ring(members: Sequence[int]) -> str:
    """Render a ring as "73 → 8F → 73"."""
    return " → ".join(f"{v:02X}" for v in (*members, members[0]))
