"""
The six S-Box criteria: bijectivity (enforced by SBox), nonlinearity, SAC,
BIC (SAC and nonlinearity variants), DAP and LAP, plus population statistics.

Bit i of a byte is the coefficient of 2^i everywhere (bit 0 = LSB).
"""

import logging
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import asdict, dataclass
from decimal import ROUND_HALF_UP, Decimal
from itertools import combinations, islice

import numpy as np

from sboxlab.chaos.chaos_core import EcmParams, State2D
from sboxlab.errors import InvalidInputError
from sboxlab.sbox.construction import construct_many
from sboxlab.sbox.sbox import SBOX_SIZE, SBox

logger = logging.getLogger(__name__)

N_BITS = 8
NL_STRENGTH_BAR = 100
REPORT_DECIMALS = 4

_X = np.arange(SBOX_SIZE)
_BIT_PAIRS = tuple(combinations(range(N_BITS), 2))


@dataclass(frozen=True)
class MetricsReport:
    nl_min: float
    nl_max: float
    nl_avg: float
    sac_min: float
    sac_max: float
    sac_avg: float
    bic_sac: float
    bic_nl: float
    dap: float
    lap: float
    name: str = ""

    def __post_init__(self) -> None:
        if not self.nl_min <= self.nl_avg <= self.nl_max:
            raise InvalidInputError("nonlinearity min <= avg <= max violated")
        if not self.sac_min <= self.sac_avg <= self.sac_max:
            raise InvalidInputError("SAC min <= avg <= max violated")

    @property
    def meets_nl_bar(self) -> bool:
        return self.nl_min >= NL_STRENGTH_BAR

    def as_dict(self) -> dict:
        return asdict(self)


# ---------------------------------------------------------------------------
# Transforms and tables
# ---------------------------------------------------------------------------


def fwht(values: np.ndarray) -> np.ndarray:
    """Fast Walsh–Hadamard transform along the last axis (length a power of two)."""
    a = np.array(values, dtype=np.int64)
    lead, n = a.shape[:-1], a.shape[-1]
    h = 1
    while h < n:
        a = a.reshape(*lead, -1, 2, h)
        a = np.stack((a[..., 0, :] + a[..., 1, :], a[..., 0, :] - a[..., 1, :]), axis=-2)
        h *= 2
    return a.reshape(*lead, n)


def _table(s: SBox) -> np.ndarray:
    return np.asarray(s.table, dtype=np.int64)


def component_bits(s: SBox) -> np.ndarray:
    """8 x 256 array; row j is the truth table of output bit j."""
    t = _table(s)
    return (t[None, :] >> np.arange(N_BITS)[:, None]) & 1


def walsh_spectrum(truth_tables: np.ndarray) -> np.ndarray:
    """W_f(w) = sum_x (-1)^(f(x) xor w.x) for each truth table row."""
    return fwht(1 - 2 * np.asarray(truth_tables, dtype=np.int64))


def _nonlinearities(truth_tables: np.ndarray) -> np.ndarray:
    spectrum = walsh_spectrum(truth_tables)
    return SBOX_SIZE // 2 - np.max(np.abs(spectrum), axis=-1) // 2


def difference_distribution_table(s: SBox) -> np.ndarray:
    """DDT[dx, dy] = #{x : S(x) xor S(x xor dx) = dy}."""
    t = _table(s)
    dy = t[_X[None, :] ^ _X[:, None]] ^ t[None, :]
    rows = np.repeat(_X, SBOX_SIZE)
    counts = np.bincount(rows * SBOX_SIZE + dy.ravel(), minlength=SBOX_SIZE * SBOX_SIZE)
    return counts.reshape(SBOX_SIZE, SBOX_SIZE)


def linear_approximation_table(s: SBox) -> np.ndarray:
    """LAT[a, b] = #{x : a.x = b.S(x)} - 128."""
    t = _table(s)
    masked = t[None, :] & _X[:, None]  # row b: S(x) & b
    parity = np.zeros_like(masked)
    for bit in range(N_BITS):
        parity ^= (masked >> bit) & 1
    # Row b of the spectrum holds W_b(a); LAT is its transpose halved.
    return (walsh_spectrum(parity) // 2).T


# ---------------------------------------------------------------------------
# Criteria
# ---------------------------------------------------------------------------


def nonlinearity(s: SBox) -> tuple[int, int, float]:
    """(min, max, avg) nonlinearity of the 8 single-bit component functions."""
    nl = _nonlinearities(component_bits(s))
    return int(nl.min()), int(nl.max()), float(nl.mean())


def sac(s: SBox) -> tuple[np.ndarray, float, float, float]:
    """
    Strict avalanche matrix and its (min, max, avg).

    Entry (i, j) is the fraction of inputs x where output bit j of S(x xor 2^i)
    differs from that of S(x).
    """
    t = _table(s)
    matrix = np.empty((N_BITS, N_BITS))
    for i in range(N_BITS):
        diff = t ^ t[_X ^ (1 << i)]
        matrix[i] = ((diff[None, :] >> np.arange(N_BITS)[:, None]) & 1).mean(axis=1)
    return matrix, float(matrix.min()), float(matrix.max()), float(matrix.mean())


def _pair_functions(s: SBox) -> np.ndarray:
    bits = component_bits(s)
    return np.stack([bits[j] ^ bits[k] for j, k in _BIT_PAIRS])


def bic(s: SBox) -> tuple[float, float]:
    """
    (bic_sac, bic_nl) over the 28 output-bit pairs g = f_j xor f_k.

    bic_nl averages NL(g); bic_sac averages the flip rate of g over the 8 single-bit input flips.
    """
    g = _pair_functions(s)
    bic_nl = float(_nonlinearities(g).mean())
    flips = [np.mean(g != g[:, _X ^ (1 << i)], axis=1) for i in range(N_BITS)]
    bic_sac = float(np.mean(flips))
    return bic_sac, bic_nl


def bic_nl_min(s: SBox) -> int:
    return int(_nonlinearities(_pair_functions(s)).min())


def dap(s: SBox) -> float:
    """Max DDT entry over nonzero input differences, divided by 256."""
    ddt = difference_distribution_table(s)
    return float(ddt[1:].max()) / SBOX_SIZE


def lap(s: SBox) -> float:
    """Max |LAT| over nonzero mask pairs, divided by 256."""
    lat = linear_approximation_table(s)
    return float(np.abs(lat[1:, 1:]).max()) / SBOX_SIZE


def full_report(s: SBox) -> MetricsReport:
    nl_min, nl_max, nl_avg = nonlinearity(s)
    _, sac_min, sac_max, sac_avg = sac(s)
    bic_sac, bic_nl = bic(s)
    return MetricsReport(
        nl_min=nl_min,
        nl_max=nl_max,
        nl_avg=nl_avg,
        sac_min=sac_min,
        sac_max=sac_max,
        sac_avg=sac_avg,
        bic_sac=bic_sac,
        bic_nl=bic_nl,
        dap=dap(s),
        lap=lap(s),
        name=s.name,
    )


# ---------------------------------------------------------------------------
# Populations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BatchStats:
    count: int
    nl_avg_mean: float
    nl_avg_min: float
    nl_avg_max: float
    dap_mean: float
    histogram: list[tuple[float, float, int]]
    reports: tuple[MetricsReport, ...]

    def as_dict(self) -> dict:
        return {
            "count": self.count,
            "nl_avg_mean": self.nl_avg_mean,
            "nl_avg_min": self.nl_avg_min,
            "nl_avg_max": self.nl_avg_max,
            "dap_mean": self.dap_mean,
            "histogram": [list(b) for b in self.histogram],
        }


def summarize(reports: Sequence[MetricsReport], bins: int = 10) -> BatchStats:
    if not reports:
        raise InvalidInputError("need at least one report")
    nl = np.array([r.nl_avg for r in reports])
    counts, edges = np.histogram(nl, bins=bins)
    histogram = [
        (float(lo), float(hi), int(c)) for lo, hi, c in zip(edges[:-1], edges[1:], counts)
    ]
    return BatchStats(
        count=len(reports),
        nl_avg_mean=float(nl.mean()),
        nl_avg_min=float(nl.min()),
        nl_avg_max=float(nl.max()),
        dap_mean=float(np.mean([r.dap for r in reports])),
        histogram=histogram,
        reports=tuple(reports),
    )


def batch_stats(
    count: int,
    seeds: Iterable[tuple[EcmParams, State2D]] | Iterator[tuple[EcmParams, State2D]],
    workers: int = 1,
) -> BatchStats:
    """Construct `count` strong S-Boxes from the seed stream and summarise their metrics."""
    if count < 1:
        raise InvalidInputError(f"count must be >= 1, got {count}")
    chosen = list(islice(seeds, count))
    if len(chosen) < count:
        raise InvalidInputError(f"seed stream ended after {len(chosen)} seeds")
    boxes = construct_many(chosen, workers)
    reports = [full_report(sbox) for sbox, _ in boxes]
    stats = summarize(reports)
    logger.info(
        "batch of %d: mean nl_avg %.4f, mean DAP %.4f",
        count,
        stats.nl_avg_mean,
        stats.dap_mean,
    )
    return stats


# ---------------------------------------------------------------------------
# Rendering
# ---------------------------------------------------------------------------


def round_half_up(value: float, decimals: int = REPORT_DECIMALS) -> Decimal:
    """Round for display the way printed tables do: 0.50485 -> 0.5049."""
    return Decimal(repr(float(value))).quantize(Decimal(1).scaleb(-decimals), ROUND_HALF_UP)


_COLUMNS = (
    ("NL min", "nl_min", 0),
    ("NL max", "nl_max", 0),
    ("NL avg", "nl_avg", 2),
    ("SAC min", "sac_min", 4),
    ("SAC max", "sac_max", 4),
    ("SAC avg", "sac_avg", 4),
    ("BIC-SAC", "bic_sac", 4),
    ("BIC-NL", "bic_nl", 2),
    ("DAP", "dap", 4),
    ("LAP", "lap", 4),
)


def render_table(reports: Sequence[MetricsReport]) -> str:
    """Aligned text table, one row per S-Box."""
    header = ["S-Box", *(title for title, _, _ in _COLUMNS)]
    rows = [
        [r.name or "-", *(str(round_half_up(getattr(r, f), d)) for _, f, d in _COLUMNS)]
        for r in reports
    ]
    widths = [max(len(row[i]) for row in [header, *rows]) for i in range(len(header))]
    lines = []
    for row in [header, *rows]:
        cells = [row[0].ljust(widths[0])]
        cells += [cell.rjust(w) for cell, w in zip(row[1:], widths[1:])]
        lines.append("  ".join(cells).rstrip())
    return "\n".join(lines) + "\n"
