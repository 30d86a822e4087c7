"""1D seed maps, the 2D exponential chaotic map (2D-ECM), orbits and key-to-seed derivation."""

import logging
import math
from dataclasses import dataclass
from enum import Enum

from sboxlab.errors import InvalidInputError

logger = logging.getLogger(__name__)

TRANSIENT = 300
INITIAL_KEY_BYTES = 32

_GAMMA_MAX = 18.0
_K_MIN, _K_MAX = 3, 17

# Key words are folded to these widths so every key bit survives the
# conversion to a double (53-bit mantissa).
_STATE_BITS = 53
_GAMMA_BITS = 47


class MapKind(Enum):
    LOGISTIC = "logistic"
    QUADRATIC = "quadratic"


@dataclass(frozen=True)
class SeedMapParams:
    """Control parameter of a 1D seed map: mu for Logistic, gamma1d for Quadratic."""

    map_kind: MapKind
    mu: float = 4.0
    gamma1d: float = 2.0

    def __post_init__(self) -> None:
        if self.map_kind is MapKind.LOGISTIC:
            if not 0.0 <= self.mu <= 4.0:
                raise InvalidInputError(f"Logistic mu must lie in [0, 4], got {self.mu}")
        elif not 0.0 <= self.gamma1d <= 2.0:
            raise InvalidInputError(f"Quadratic gamma must lie in [0, 2], got {self.gamma1d}")

    @property
    def control(self) -> float:
        return self.mu if self.map_kind is MapKind.LOGISTIC else self.gamma1d

    @property
    def domain(self) -> tuple[float, float]:
        return (0.0, 1.0) if self.map_kind is MapKind.LOGISTIC else (-2.0, 2.0)


@dataclass(frozen=True)
class EcmParams:
    gamma: float
    k: int

    def __post_init__(self) -> None:
        if not (0.0 < self.gamma <= _GAMMA_MAX) or not math.isfinite(self.gamma):
            raise InvalidInputError(f"gamma must lie in (0, 18], got {self.gamma}")
        if isinstance(self.k, bool) or not isinstance(self.k, int):
            raise InvalidInputError(f"k must be an integer, got {self.k!r}")
        if not _K_MIN <= self.k <= _K_MAX:
            raise InvalidInputError(f"k must lie in [3, 17], got {self.k}")

    @property
    def x_gain(self) -> float:
        """2^k * gamma, the x-update multiplier."""
        return (2**self.k) * self.gamma

    @property
    def y_gain(self) -> float:
        """3^k * gamma, the y-update multiplier."""
        return (3**self.k) * self.gamma


@dataclass(frozen=True)
class State2D:
    x: float
    y: float

    def __post_init__(self) -> None:
        for name, value in (("x", self.x), ("y", self.y)):
            if not math.isfinite(value) or not 0.0 <= value < 1.0:
                raise InvalidInputError(f"state {name} must lie in [0, 1), got {value}")

    @property
    def is_origin(self) -> bool:
        return self.x == 0.0 and self.y == 0.0


@dataclass(frozen=True)
class Orbit:
    samples: tuple[State2D, ...]
    transient_dropped: int

    def __len__(self) -> int:
        return len(self.samples)

    def channel(self, name: str) -> list[float]:
        """Return the x or y coordinate sequence."""
        if name not in ("x", "y"):
            raise InvalidInputError(f"channel must be 'x' or 'y', got {name!r}")
        return [getattr(s, name) for s in self.samples]


def frac(value: float) -> float:
    """value mod 1 as value - floor(value), clamped into [0, 1) for negative rounding."""
    result = value - math.floor(value)
    # -1e-20 - floor(-1e-20) rounds to exactly 1.0
    return 0.0 if result >= 1.0 else result


# ---------------------------------------------------------------------------
# Seed maps
# ---------------------------------------------------------------------------


def seed_map_step(params: SeedMapParams, x: float) -> float:
    """One step of the Logistic map mu(x - x^2) or the Quadratic map gamma - x^2."""
    lo, hi = params.domain
    if not math.isfinite(x) or not lo <= x <= hi:
        raise InvalidInputError(
            f"{params.map_kind.value} state must lie in [{lo}, {hi}], got {x}"
        )
    if params.map_kind is MapKind.LOGISTIC:
        return params.mu * (x - x * x)
    return params.gamma1d - x * x


def seed_map_orbit(
    params: SeedMapParams,
    x0: float,
    transient: int,
    n: int,
) -> list[float]:
    """Iterate a seed map, drop `transient` iterates, return the next n states."""
    if transient < 0 or n < 1:
        raise InvalidInputError(f"need transient >= 0 and n >= 1, got {transient}, {n}")
    x = x0
    for _ in range(transient):
        x = seed_map_step(params, x)
    out: list[float] = []
    for _ in range(n):
        x = seed_map_step(params, x)
        out.append(x)
    return out


# ---------------------------------------------------------------------------
# 2D-ECM
# ---------------------------------------------------------------------------


def ecm_step(params: EcmParams, s: State2D) -> State2D:
    """
    One step of the 2D-ECM.

    x' = 2^k γ (x + y²) mod 1
    y' = 3^k γ (y − x'²) mod 1   (uses the new x')
    """
    x_next = frac(params.x_gain * (s.x + s.y * s.y))
    y_next = frac(params.y_gain * (s.y - x_next * x_next))
    return State2D(x_next, y_next)


def iter_ecm(params: EcmParams, s0: State2D, transient: int = 0):
    """
    Yield (x, y) float pairs of the orbit after dropping `transient` iterates.

    Hot loop for construction, bitstreams and key expansion; skips the
    per-step State2D validation that ecm_step performs.
    """
    a, b = params.x_gain, params.y_gain
    floor = math.floor
    x, y = s0.x, s0.y
    i = 0
    while True:
        v = a * (x + y * y)
        x = v - floor(v)
        if x >= 1.0:
            x = 0.0
        v = b * (y - x * x)
        y = v - floor(v)
        if y >= 1.0:
            y = 0.0
        i += 1
        if i > transient:
            yield x, y


def ecm_orbit(params: EcmParams, s0: State2D, transient: int, n: int) -> Orbit:
    """Apply ecm_step `transient` times discarding output, then collect n states."""
    if transient < 0 or n < 1:
        raise InvalidInputError(f"need transient >= 0 and n >= 1, got {transient}, {n}")
    samples: list[State2D] = []
    state = s0
    for _ in range(transient):
        state = ecm_step(params, state)
    for _ in range(n):
        state = ecm_step(params, state)
        samples.append(state)
    return Orbit(tuple(samples), transient)


# ---------------------------------------------------------------------------
# Key → seed
# ---------------------------------------------------------------------------


def _fold(word: int, bits: int) -> int:
    """Fold a 64-bit word into `bits` bits; distinct single-bit flips stay distinct."""
    low_width = 64 - bits
    return (word >> low_width) ^ (word & ((1 << low_width) - 1))


def seed_from_key(ik: bytes) -> tuple[EcmParams, State2D]:
    """
    Derive 2D-ECM parameters and initial state from a 32-byte key.

    The key is split into four big-endian 64-bit words u1..u4:
      x0    = fold53(u1) / 2^53
      y0    = fold53(u2) / 2^53
      gamma = (2^47 + 17 * fold47(u3)) / 2^47      in [1, 18)
      k     = 3 + (u4 mod 15)                      in [3, 17]
    A zero coordinate is replaced with 2^-53. All divisions are exact in
    double precision, so every key bit reaches the returned values.
    """
    if len(ik) != INITIAL_KEY_BYTES:
        raise InvalidInputError(f"initial key must be 32 bytes, got {len(ik)}")
    u1, u2, u3, u4 = (int.from_bytes(ik[i : i + 8], "big") for i in range(0, 32, 8))

    scale = float(1 << _STATE_BITS)
    x0 = _fold(u1, _STATE_BITS) / scale
    y0 = _fold(u2, _STATE_BITS) / scale
    if x0 == 0.0:
        x0 = 1.0 / scale
    if y0 == 0.0:
        y0 = 1.0 / scale

    gamma = ((1 << _GAMMA_BITS) + 17 * _fold(u3, _GAMMA_BITS)) / float(1 << _GAMMA_BITS)
    k = _K_MIN + (u4 % 15)
    return EcmParams(gamma=gamma, k=k), State2D(x0, y0)
