"""
Strong S-Box construction from 2D-ECM orbits.

1. Drop TRANSIENT iterates, then draw up to N x-samples, each mapped to
   floor(x * 10^16) mod 256, keeping first occurrences only.
2. Fewer than 256 distinct bytes: ctr += 1, N = N0 + 100 * ctr, and
   regenerate from the same seed. After SHORTFALL_RUN shortfalls in a row
   the orbit is treated as collapsed and step 3 perturbs the seed.
3. Fixed point, reverse fixed point or a ring shorter than 256: ctr += 1,
   N = N0 + 100 * ctr, x0 = (x0 + ctr * y0) mod 1, restart.
4. Otherwise the table is strong.

Restarts are capped by restart_cap and shortfalls by SHORTFALL_CAP; hitting
either raises ConstructionFailedError.
"""

import logging
import math
from collections.abc import Iterator, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import islice

import numpy as np

from sboxlab.chaos.chaos_core import TRANSIENT, EcmParams, State2D, frac, iter_ecm
from sboxlab.errors import ConstructionFailedError, DegenerateOrbitError, InvalidInputError
from sboxlab.sbox.sbox import SBOX_SIZE, SBox, is_strong

logger = logging.getLogger(__name__)

N_MIN = 560
N_STEP = 100
RESTART_CAP = 20_000
SHORTFALL_RUN = 32
SHORTFALL_CAP = 256
SAMPLE_GAIN = 1e16
@dataclass(frozen=True)
class ConstructionTrace:
    ctr: int
    N: int
    restarts: int
    shortfalls: int
    final_seed: State2D

    def as_dict(self) -> dict:
        return {
            "ctr": self.ctr,
            "N": self.N,
            "restarts": self.restarts,
            "shortfalls": self.shortfalls,
            "final_seed": {"x": self.final_seed.x, "y": self.final_seed.y},
        }




def _draw_table(params: EcmParams, x: float, y: float, n: int) -> list[int]:
    """Distinct sample bytes in order of first appearance, stopping at 256."""
    floor = math.floor
    seen = bytearray(SBOX_SIZE)
    table: list[int] = []
    for xi, _ in islice(iter_ecm(params, State2D(x, y), TRANSIENT), n):
        byte = floor(xi * SAMPLE_GAIN) % SBOX_SIZE
        if not seen[byte]:
            seen[byte] = 1
            table.append(byte)
            if len(table) == SBOX_SIZE:
                break
    return table


def _restart_shift(params: EcmParams, s0: State2D) -> float:
    """y0, or the first nonzero y of the orbit when the seed lies on y = 0."""
    if s0.y != 0.0:
        return s0.y
    for _, y in islice(iter_ecm(params, s0), TRANSIENT):
        if y != 0.0:
            logger.debug("seed has y = 0; restarts shift x by ctr * %r", y)
            return y
    raise DegenerateOrbitError(f"orbit of {s0} falls into the all-zero fixed point")


def construct_sbox(
    params: EcmParams,
    s0: State2D,
    n0: int = N_MIN,
    restart_cap: int = RESTART_CAP,
    shortfall_cap: int = SHORTFALL_CAP,
) -> tuple[SBox, ConstructionTrace]:
    """
    Build a strong S-Box (see module docstring) from a 2D-ECM seed.

    Args:
        params: map parameters (gamma, k)
        s0: initial state, not the all-zero state
        n0: initial sample count N0 (at least 560)
        restart_cap: maximum number of seed perturbations before giving up
        shortfall_cap: maximum number of draws with fewer than 256 distinct bytes

    Returns:
        The S-Box and a trace of the retries.

    Raises:
        ConstructionFailedError: when either budget runs out without a strong table
        DegenerateOrbitError: when a seed with y = 0 falls into the all-zero state
    """
    if s0.is_origin:
        raise InvalidInputError("seed must not be the all-zero state")
    if n0 < N_MIN:
        raise InvalidInputError(f"N0 must be >= {N_MIN}, got {n0}")

    shift = _restart_shift(params, s0)
    x0, y0 = s0.x, s0.y
    ctr = restarts = shortfalls = run = 0
    n = n0
    while True:
        table = _draw_table(params, x0, y0, n)
        if len(table) < SBOX_SIZE:
            shortfalls += 1
            run += 1
            ctr += 1
            n = n0 + N_STEP * ctr
            logger.debug("shortfall: %d distinct bytes, ctr=%d, N=%d", len(table), ctr, n)
            if shortfalls >= shortfall_cap:
                trace = ConstructionTrace(ctr, n, restarts, shortfalls, State2D(x0, y0))
                raise ConstructionFailedError(
                    f"sampling fell short of 256 distinct bytes {shortfalls} times",
                    trace=trace,
                )
            if run < SHORTFALL_RUN:
                continue
            logger.debug("orbit collapsed after %d shortfalls in a row", run)
        else:
            sbox = SBox(tuple(table))
            if is_strong(sbox):
                trace = ConstructionTrace(ctr, n, restarts, shortfalls, State2D(x0, y0))
                logger.debug(
                    "strong S-Box after %d restarts (ctr=%d, N=%d)", restarts, ctr, n
                )
                return sbox, trace

        if restarts >= restart_cap:
            trace = ConstructionTrace(ctr, n, restarts, shortfalls, State2D(x0, y0))
            raise ConstructionFailedError(
                f"no strong S-Box within {restart_cap} restarts", trace=trace
            )
        run = 0
        restarts += 1
        ctr += 1
        n = n0 + N_STEP * ctr
        x0 = frac(x0 + ctr * shift)


def _construct_job(seed: tuple[EcmParams, State2D]) -> tuple[SBox, ConstructionTrace]:
    return construct_sbox(*seed)


def construct_many(
    seeds: Sequence[tuple[EcmParams, State2D]],
    workers: int = 1,
) -> list[tuple[SBox, ConstructionTrace]]:
    """Construct one S-Box per seed; results keep the seed order."""
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_construct_job, seeds))
    return [_construct_job(seed) for seed in seeds]


def random_seeds(rng_seed: int | None = None) -> Iterator[tuple[EcmParams, State2D]]:
    """Endless stream of valid seeds: x, y in (0, 1), gamma in [1, 18), k in [3, 17]."""
    rng = np.random.default_rng(rng_seed)
    while True:
        x, y = rng.random(2)
        if x == 0.0 or y == 0.0:
            continue
        gamma = 1.0 + 17.0 * float(rng.random())
        k = int(rng.integers(3, 18))
        yield EcmParams(gamma, k), State2D(float(x), float(y))
