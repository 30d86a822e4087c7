"""
Exact counts of the permutation classes behind "strong" S-Boxes.

D1(n): permutations of n points with no fixed point (derangements).
D2(n): additionally no reverse fixed point, S(i) = n - 1 - i.
D3(n): additionally a single n-cycle (no shorter period ring).

All evaluation is in Python ints; nothing here touches floating point
except the mantissa handed back by to_scientific.
"""

import logging
import math
from collections.abc import Iterator
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations

from sboxlab.errors import InvalidInputError

logger = logging.getLogger(__name__)

BRUTE_FORCE_MAX_N = 10
SCI_DIGITS = 5
LOG10_2 = math.log10(2)

BigCount = int

# Base values below which the D2/D3 recursions do not apply.
_D2_BASE = {1: 0, 2: 0, 3: 0, 4: 4}
_D3_BASE = {1: 0, 2: 0, 3: 0, 4: 2}


@dataclass(frozen=True)
class ConditionSet:
    no_fixed_point: bool = True
    no_reverse_fixed_point: bool = False
    full_cycle_only: bool = False

    @property
    def any_enabled(self) -> bool:
        return self.no_fixed_point or self.no_reverse_fixed_point or self.full_cycle_only

    def describe(self) -> str:
        names = [
            name
            for name, on in (
                ("no-fixed-point", self.no_fixed_point),
                ("no-reverse-fixed-point", self.no_reverse_fixed_point),
                ("full-cycle", self.full_cycle_only),
            )
            if on
        ]
        return ", ".join(names) or "none"


D1_CONDITIONS = ConditionSet(no_fixed_point=True)
D2_CONDITIONS = ConditionSet(no_fixed_point=True, no_reverse_fixed_point=True)
D3_CONDITIONS = ConditionSet(
    no_fixed_point=True, no_reverse_fixed_point=True, full_cycle_only=True
)


@dataclass(frozen=True)
class SciNotation:
    mantissa: float
    exponent: int
    digits: str

    def __str__(self) -> str:
        return f"{self.digits}e{self.exponent}"


def _check_n(n: int) -> None:
    if isinstance(n, bool) or not isinstance(n, int):
        raise InvalidInputError(f"n must be an integer, got {n!r}")
    if n < 1:
        raise InvalidInputError(f"n must be >= 1, got {n}")


# ---------------------------------------------------------------------------
# Recursions
# ---------------------------------------------------------------------------


def count_d1(n: int) -> BigCount:
    """D1(n) = (n-1)(D1(n-1) + D1(n-2)), D1(1) = 0, D1(2) = 1."""
    _check_n(n)
    prev2, prev1 = 0, 1
    if n == 1:
        return prev2
    for i in range(3, n + 1):
        prev2, prev1 = prev1, (i - 1) * (prev1 + prev2)
    return prev1


def d1_closed_form(n: int) -> BigCount:
    """
    Nearest integer to n!/e, evaluated as n! * sum_{k=0..n} (-1)^k / k!.

    Each term n!/k! is an integer, so the sum is exact.
    """
    _check_n(n)
    total = 0
    term = 1  # n!/n!
    for k in range(n, -1, -1):
        total += term if k % 2 == 0 else -term
        term *= k if k else 1
    return total


def count_d2(n: int) -> BigCount:
    """
    Permutations with no fixed point and no reverse fixed point.

    odd n >= 5:  (n-1)(D2(n-1) + 2 D2(n-2))
    even n >= 6: (n-2)(D2(n-1) + D2(n-2) + 2 D2(n-3) + 2 D2(n-4))
    """
    _check_n(n)
    values = dict(_D2_BASE)
    for i in range(5, n + 1):
        if i % 2:
            values[i] = (i - 1) * (values[i - 1] + 2 * values[i - 2])
        else:
            values[i] = (i - 2) * (
                values[i - 1] + values[i - 2] + 2 * values[i - 3] + 2 * values[i - 4]
            )
        del values[i - 4]
    return values[n]


def count_d3(n: int) -> BigCount:
    """
    Single n-cycles with no reverse fixed point.

    odd n:  (n-1)(D3(n-1) + D3(n-2))
    even n: (n-2)(D3(n-1) + D3(n-3))
    """
    _check_n(n)
    values = dict(_D3_BASE)
    for i in range(5, n + 1):
        if i % 2:
            values[i] = (i - 1) * (values[i - 1] + values[i - 2])
        else:
            values[i] = (i - 2) * (values[i - 1] + values[i - 3])
        del values[i - 4]
    return values[n]


def count_factorial(n: int) -> BigCount:
    _check_n(n)
    return math.factorial(n)


def strong_fraction(n: int) -> Fraction:
    """Exact share D3(n) / n! of permutations that pass all three conditions."""
    return Fraction(count_d3(n), count_factorial(n))


# ---------------------------------------------------------------------------
# Brute-force oracle
# ---------------------------------------------------------------------------


def _is_single_cycle(perm: tuple[int, ...]) -> bool:
    n = len(perm)
    i, length = perm[0], 1
    while i != 0:
        i = perm[i]
        length += 1
    return length == n


def _matches(perm: tuple[int, ...], conds: ConditionSet) -> bool:
    last = len(perm) - 1
    if conds.no_fixed_point and any(v == i for i, v in enumerate(perm)):
        return False
    if conds.no_reverse_fixed_point and any(v == last - i for i, v in enumerate(perm)):
        return False
    if conds.full_cycle_only and not _is_single_cycle(perm):
        return False
    return True


def _check_oracle_args(n: int, conds: ConditionSet) -> None:
    _check_n(n)
    if n > BRUTE_FORCE_MAX_N:
        raise InvalidInputError(f"brute force is limited to n <= {BRUTE_FORCE_MAX_N}, got {n}")
    if not conds.any_enabled:
        raise InvalidInputError("enable at least one condition")


def _permutations_starting(n: int, head: int) -> Iterator[tuple[int, ...]]:
    rest = [v for v in range(n) if v != head]
    for tail in permutations(rest):
        yield (head, *tail)


def witnesses(n: int, conds: ConditionSet) -> Iterator[tuple[int, ...]]:
    """Yield every permutation of 0..n-1 satisfying conds, in lexicographic order."""
    _check_oracle_args(n, conds)
    for perm in permutations(range(n)):
        if _matches(perm, conds):
            yield perm


def _count_partition(args: tuple[int, int, ConditionSet]) -> int:
    n, head, conds = args
    return sum(1 for perm in _permutations_starting(n, head) if _matches(perm, conds))


def brute_force_count(n: int, conds: ConditionSet, workers: int = 1) -> BigCount:
    """
    Count permutations of 0..n-1 satisfying conds by enumerating all n! of them.

    With workers > 1 the space is split by S(0) across a process pool.
    """
    _check_oracle_args(n, conds)
    jobs = [(n, head, conds) for head in range(n)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            total = sum(pool.map(_count_partition, jobs))
    else:
        total = sum(_count_partition(job) for job in jobs)
    logger.debug("brute force n=%d [%s] -> %d", n, conds.describe(), total)
    return total


# ---------------------------------------------------------------------------
# Formatting
# ---------------------------------------------------------------------------


def decimal_exponent(c: BigCount) -> int:
    """floor(log10(c)) for c >= 1, without converting c to a decimal string."""
    exponent = int((c.bit_length() - 1) * LOG10_2)
    while 10 ** (exponent + 1) <= c:
        exponent += 1
    while exponent > 0 and 10**exponent > c:
        exponent -= 1
    return exponent


def to_scientific(c: BigCount, digits: int = SCI_DIGITS) -> SciNotation:
    """Round c half-up to `digits` significant digits: 4752 -> 4.7520e3."""
    if isinstance(c, bool) or not isinstance(c, int):
        raise InvalidInputError(f"count must be an integer, got {c!r}")
    if c < 1:
        raise InvalidInputError(f"count must be >= 1, got {c}")
    exponent = decimal_exponent(c)
    shift = exponent - (digits - 1)
    if shift > 0:
        head, rem = divmod(c, 10**shift)
        if 2 * rem >= 10**shift:
            head += 1
        if head == 10**digits:
            head //= 10
            exponent += 1
    else:
        head = c * 10**-shift
    text = str(head)
    shown = f"{text[0]}.{text[1:]}" if digits > 1 else text
    return SciNotation(mantissa=float(shown), exponent=exponent, digits=shown)
