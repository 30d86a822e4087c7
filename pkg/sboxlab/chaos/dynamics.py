"""Dynamics estimators for the seed maps and the 2D-ECM.

Lyapunov spectrum (QR re-orthonormalisation every step), sample entropy,
Grassberger–Procaccia correlation dimension and K2 entropy, bifurcation
scans and raw bitstream export for external randomness batteries.
"""

import logging
import math
from collections.abc import Iterator, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import Enum
from itertools import islice

import numpy as np
from scipy.spatial import cKDTree
from scipy.spatial.distance import pdist

from sboxlab.chaos.chaos_core import (
    TRANSIENT,
    EcmParams,
    MapKind,
    SeedMapParams,
    State2D,
    iter_ecm,
    seed_map_orbit,
)
from sboxlab.errors import (
    DegenerateOrbitError,
    InsufficientDataError,
    InvalidInputError,
    UndefinedEntropyError,
)

logger = logging.getLogger(__name__)

SE_DEFAULT_M = 2
SE_DEFAULT_R_FACTOR = 0.2
# Tolerance used when a series has zero standard deviation.
CONSTANT_SERIES_R = 1e-12

DEFAULT_GAIN_EXPONENT = 16
GAIN_EXPONENTS = (13, 14, 15, 16)

CD_RADII = 20
CD_LOW_PERCENTILE = 0.1
CD_HIGH_PERCENTILE = 5.0
_CD_SUBSAMPLE = 2000


class Channel(Enum):
    X = "x"
    Y = "y"


@dataclass(frozen=True)
class TimeSeries:
    values: tuple[float, ...]
    source_tag: str = ""

    def __post_init__(self) -> None:
        if len(self.values) < 2:
            raise InvalidInputError("a time series needs at least 2 values")
        if not all(math.isfinite(v) for v in self.values):
            raise InvalidInputError("time series values must be finite")

    @classmethod
    def of(cls, values: Sequence[float], source_tag: str = "") -> "TimeSeries":
        return cls(tuple(float(v) for v in values), source_tag)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.values, dtype=np.float64)


def ecm_series(
    params: EcmParams,
    s0: State2D,
    n: int,
    channel: Channel | str = Channel.X,
    transient: int = TRANSIENT,
) -> TimeSeries:
    """One channel of a 2D-ECM orbit as a TimeSeries."""
    chan = Channel(channel)
    index = 0 if chan is Channel.X else 1
    values = [pair[index] for pair in islice(iter_ecm(params, s0, transient), n)]
    return TimeSeries.of(values, f"ecm(gamma={params.gamma}, k={params.k}).{chan.value}")


def seed_map_series(
    params: SeedMapParams, x0: float, n: int, transient: int = TRANSIENT
) -> TimeSeries:
    return TimeSeries.of(
        seed_map_orbit(params, x0, transient, n),
        f"{params.map_kind.value}({params.control})",
    )


@dataclass(frozen=True)
class SeConfig:
    m: int = SE_DEFAULT_M
    r_factor: float = SE_DEFAULT_R_FACTOR

    def __post_init__(self) -> None:
        if self.m < 1:
            raise InvalidInputError(f"embedding dimension m must be >= 1, got {self.m}")
        if not self.r_factor > 0:
            raise InvalidInputError(f"r_factor must be > 0, got {self.r_factor}")

    def tolerance(self, values: np.ndarray) -> float:
        """r = r_factor * population std; a tiny epsilon for constant series."""
        std = float(np.std(values))
        if std == 0.0:
            logger.warning("constant series: using r=%g instead of 0", CONSTANT_SERIES_R)
            return CONSTANT_SERIES_R
        return self.r_factor * std


@dataclass(frozen=True)
class DynamicsReport:
    lyapunov: tuple[float, float] | None = None
    sample_entropy: float | None = None
    correlation_dimension: float | None = None
    k2_entropy: float | None = None

    def __post_init__(self) -> None:
        if self.lyapunov is not None and self.lyapunov[0] < self.lyapunov[1]:
            raise InvalidInputError("lyapunov pair must be sorted descending")

    def as_dict(self) -> dict:
        return {
            "lyapunov": list(self.lyapunov) if self.lyapunov is not None else None,
            "sample_entropy": self.sample_entropy,
            "correlation_dimension": self.correlation_dimension,
            "k2_entropy": self.k2_entropy,
        }


# ---------------------------------------------------------------------------
# Lyapunov exponents
# ---------------------------------------------------------------------------


def ecm_jacobian(params: EcmParams, x: float, y: float, x_next: float) -> np.ndarray:
    """
    Analytic Jacobian of one 2D-ECM step at (x, y), mod 1 taken as identity.

    x_next is the reduced x' that enters the y-update.
    """
    a, b = params.x_gain, params.y_gain
    dxdx = a
    dxdy = a * 2.0 * y
    return np.array(
        [
            [dxdx, dxdy],
            [-b * 2.0 * x_next * dxdx, b * (1.0 - 2.0 * x_next * dxdy)],
        ]
    )


def lyapunov_spectrum(
    params: EcmParams,
    s0: State2D,
    n: int = 10_000,
    transient: int = TRANSIENT,
) -> tuple[float, float]:
    """Both Lyapunov exponents of the 2D-ECM, sorted descending."""
    if n < 1:
        raise InvalidInputError(f"n must be >= 1, got {n}")
    if s0.is_origin:
        raise DegenerateOrbitError("orbit starts at the all-zero fixed point")

    q = np.eye(2)
    log_sums = np.zeros(2)
    x, y = s0.x, s0.y
    for step, (x_next, y_next) in enumerate(islice(iter_ecm(params, s0), transient + n)):
        if step >= transient:
            jac = ecm_jacobian(params, x, y, x_next)
            q, r = np.linalg.qr(jac @ q)
            log_sums += np.log(np.abs(np.diag(r)))
            q = q * np.sign(np.diag(r))
        x, y = x_next, y_next
        if x == 0.0 and y == 0.0:
            raise DegenerateOrbitError("orbit collapsed onto the all-zero fixed point")

    exponents = sorted((float(v) for v in log_sums / n), reverse=True)
    return exponents[0], exponents[1]


def seed_map_lyapunov(params: SeedMapParams, x0: float, n: int = 100_000) -> float:
    """Lyapunov exponent of a 1D seed map by averaging ln|f'(x)| along the orbit."""
    xs = np.asarray(seed_map_orbit(params, x0, TRANSIENT, n), dtype=np.float64)
    if params.map_kind is MapKind.LOGISTIC:
        deriv = params.mu * (1.0 - 2.0 * xs)
    else:
        deriv = -2.0 * xs
    deriv = np.abs(deriv)
    if np.any(deriv == 0.0):
        raise DegenerateOrbitError("orbit hit a critical point (zero derivative)")
    return float(np.mean(np.log(deriv)))


def _lyapunov_point(args: tuple[float, int, State2D, int]) -> tuple[float, float, float]:
    gamma, k, s0, n = args
    l1, l2 = lyapunov_spectrum(EcmParams(gamma, k), s0, n)
    return gamma, l1, l2


def lyapunov_scan(
    gammas: Sequence[float],
    k: int,
    s0: State2D,
    n: int = 10_000,
    workers: int = 1,
) -> list[tuple[float, float, float]]:
    """Lyapunov spectrum over a gamma grid as (gamma, l1, l2) rows ordered by gamma."""
    jobs = [(float(g), k, s0, n) for g in sorted(gammas)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_lyapunov_point, jobs))
    return [_lyapunov_point(job) for job in jobs]


# ---------------------------------------------------------------------------
# Entropy estimators
# ---------------------------------------------------------------------------


def _embed(values: np.ndarray, m: int, count: int) -> np.ndarray:
    """The first `count` delay vectors of length m (delay 1)."""
    return np.stack([values[i : i + count] for i in range(m)], axis=1)


def _count_close_pairs(templates: np.ndarray, r: float) -> int:
    """Number of unordered template pairs i < j with Chebyshev distance < r."""
    total = 0
    for i in range(len(templates) - 1):
        dist = np.max(np.abs(templates[i + 1 :] - templates[i]), axis=1)
        total += int(np.count_nonzero(dist < r))
    return total


def sample_entropy(series: TimeSeries, cfg: SeConfig = SeConfig()) -> float:
    """
    SE(m, r, n) = -ln(A / B).

    B counts pairs of length-m templates, A pairs of length-(m+1) templates,
    both over the first n - m start positions, self-matches excluded,
    Chebyshev distance strictly below r.
    """
    values = series.as_array()
    n, m = len(values), cfg.m
    if n <= m + 1:
        raise InvalidInputError(f"series length {n} must exceed m + 1 = {m + 1}")
    r = cfg.tolerance(values)
    count = n - m
    b = _count_close_pairs(_embed(values, m, count), r)
    a = _count_close_pairs(_embed(values, m + 1, count), r)
    if a == 0 or b == 0:
        raise UndefinedEntropyError(f"no matching templates (A={a}, B={b}) at r={r:g}")
    return -math.log(a / b)


def _correlation_sum(templates: np.ndarray, r: float) -> float:
    """Grassberger–Procaccia C(r): fraction of distinct pairs closer than r."""
    size = len(templates)
    return 2.0 * _count_close_pairs(templates, r) / (size * (size - 1))


def k2_entropy(series: TimeSeries, cfg: SeConfig = SeConfig()) -> float:
    """Correlation (K2) entropy estimate ln(C_m(r) / C_{m+1}(r)), delay 1."""
    values = series.as_array()
    n, m = len(values), cfg.m
    if n <= m + 1:
        raise InvalidInputError(f"series length {n} must exceed m + 1 = {m + 1}")
    r = cfg.tolerance(values)
    c_m = _correlation_sum(_embed(values, m, n - m + 1), r)
    c_m1 = _correlation_sum(_embed(values, m + 1, n - m), r)
    if c_m == 0.0 or c_m1 == 0.0:
        raise UndefinedEntropyError(f"empty correlation sum at r={r:g}")
    return math.log(c_m / c_m1)


# ---------------------------------------------------------------------------
# Correlation dimension
# ---------------------------------------------------------------------------


def _as_points(points: Sequence[State2D] | np.ndarray) -> np.ndarray:
    if isinstance(points, np.ndarray):
        return np.asarray(points, dtype=np.float64)
    return np.array([(p.x, p.y) for p in points], dtype=np.float64)


def default_radii(
    points: Sequence[State2D] | np.ndarray,
    count: int = CD_RADII,
    low_pct: float = CD_LOW_PERCENTILE,
    high_pct: float = CD_HIGH_PERCENTILE,
) -> np.ndarray:
    """Log-spaced radii between two percentiles of pairwise distances (strided subsample)."""
    pts = _as_points(points)
    stride = max(1, len(pts) // _CD_SUBSAMPLE)
    dists = pdist(pts[::stride])
    dists = dists[dists > 0]
    if dists.size == 0:
        raise InsufficientDataError("all points coincide")
    lo, hi = np.percentile(dists, [low_pct, high_pct])
    logger.debug("correlation dimension window r in [%g, %g]", lo, hi)
    return np.geomspace(lo, hi, count)


def correlation_dimension(
    points: Sequence[State2D] | np.ndarray,
    radii: Sequence[float] | None = None,
) -> float:
    """Least-squares slope of log C(r) against log r (Grassberger–Procaccia)."""
    pts = _as_points(points)
    if len(pts) < 2:
        raise InsufficientDataError("need at least 2 points")
    rs = default_radii(pts) if radii is None else np.asarray(radii, dtype=np.float64)
    if np.any(rs <= 0):
        raise InvalidInputError("radii must be positive")

    tree = cKDTree(pts)
    # count_neighbors includes the n self-pairs and counts each pair twice.
    counts = np.asarray(tree.count_neighbors(tree, rs), dtype=np.float64)
    pairs = (counts - len(pts)) / 2.0
    total = len(pts) * (len(pts) - 1) / 2.0
    usable = pairs > 0
    if np.count_nonzero(usable) < 2:
        raise InsufficientDataError("correlation sums are empty at (almost) every radius")
    slope, _ = np.polyfit(np.log(rs[usable]), np.log(pairs[usable] / total), 1)
    return float(slope)


# ---------------------------------------------------------------------------
# Bifurcation scan
# ---------------------------------------------------------------------------


def bifurcation_scan(
    map_kind: MapKind,
    param_min: float,
    param_max: float,
    steps: int,
    samples_per_param: int,
    x0: float | None = None,
    transient: int = TRANSIENT,
) -> list[tuple[float, float]]:
    """
    (param, state) rows for a seed map over an evenly spaced parameter range.

    Each parameter value restarts from x0 (0.3 Logistic, 0.1 Quadratic by default).
    """
    if steps < 2:
        raise InvalidInputError(f"steps must be >= 2, got {steps}")
    if samples_per_param < 1:
        raise InvalidInputError("samples_per_param must be >= 1")
    start = x0 if x0 is not None else (0.3 if map_kind is MapKind.LOGISTIC else 0.1)
    rows: list[tuple[float, float]] = []
    for value in np.linspace(param_min, param_max, steps):
        value = float(value)
        if map_kind is MapKind.LOGISTIC:
            params = SeedMapParams(map_kind, mu=value)
        else:
            params = SeedMapParams(map_kind, gamma1d=value)
        for x in seed_map_orbit(params, start, transient, samples_per_param):
            rows.append((value, x))
    return rows


# ---------------------------------------------------------------------------
# Bitstream export
# ---------------------------------------------------------------------------


def iter_bitstream(
    params: EcmParams,
    s0: State2D,
    channel: Channel = Channel.X,
    gain_exponent: int = DEFAULT_GAIN_EXPONENT,
    transient: int = TRANSIENT,
) -> Iterator[int]:
    """Endless byte stream: floor(v * 10^gain) mod 256 per iterate of one channel."""
    if gain_exponent not in GAIN_EXPONENTS:
        raise InvalidInputError(f"gain exponent must be one of {GAIN_EXPONENTS}")
    gain = float(10**gain_exponent)
    index = 0 if Channel(channel) is Channel.X else 1
    for pair in iter_ecm(params, s0, transient):
        yield math.floor(pair[index] * gain) % 256


def extract_bitstream(
    params: EcmParams,
    s0: State2D,
    n_bytes: int,
    channel: Channel = Channel.X,
    gain_exponent: int = DEFAULT_GAIN_EXPONENT,
    transient: int = TRANSIENT,
) -> bytes:
    """The first n_bytes of iter_bitstream as raw bytes."""
    if n_bytes < 1:
        raise InvalidInputError(f"n_bytes must be >= 1, got {n_bytes}")
    stream = iter_bitstream(params, s0, channel, gain_exponent, transient)
    return bytes(islice(stream, n_bytes))


def bit_balance(data: bytes) -> tuple[float, list[float]]:
    """Overall fraction of one bits and the per-position fractions (bit 0 = LSB)."""
    if not data:
        raise InsufficientDataError("empty bitstream")
    arr = np.frombuffer(bytes(data), dtype=np.uint8)
    bits = np.unpackbits(arr[:, None], axis=1, bitorder="little")
    per_bit = bits.mean(axis=0)
    return float(per_bit.mean()), [float(v) for v in per_bit]
