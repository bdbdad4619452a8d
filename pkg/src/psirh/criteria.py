"""Robin's function g(n), its Dedekind-psi refinement f(n), and range scans.

g(n) = sigma(n)/n - e^gamma * log log n
f(n) = psi(n)/n   - e^gamma * log log n

Membership of n in an exception set is a sign decision, so the ratio comes
from the exact integer function value, the threshold is evaluated with one
rounding per step (log n, then log of that, then multiply), and any value
within the 1e-9 escalation band is re-evaluated at 30 significant digits
with mpmath before its sign is trusted.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

import mpmath as mp
import numpy as np

from .arith import SpfTable, dedekind_psi, sigma
from .errors import DomainError, ResourceLimitError
from .prime_engine import _simple_sieve

ESCALATION_BAND = 1e-9
ESCALATION_DPS = 30
# Float chunk scans multiply ~log log n rounded factors; anything this close
# to the threshold gets the exact treatment.
_CANDIDATE_BAND = 1e-6

SCAN_CEILING = 10**8
DEFAULT_CHUNK = 1 << 20

DEFAULT_SIGMA_BOUND_C = 0.6483  # 0.6482 as printed fails at n = 12


@dataclass(frozen=True)
class Constants:
    gamma: float = 0.57721566490153286061
    e_gamma: float = 1.78107241799019798524
    zeta2: float = 1.64493406684822643647
    e_gamma_over_zeta2: float = 1.08276219326092458012


CONSTANTS = Constants()


def mp_e_gamma():
    return mp.exp(mp.euler)


def mp_zeta2():
    return mp.pi ** 2 / 6


class CriterionKind(enum.Enum):
    ROBIN_G = "g"
    DEDEKIND_F = "f"


_RATIO_FN: dict[CriterionKind, Callable[[int, Optional[SpfTable]], int]] = {
    CriterionKind.ROBIN_G: sigma,
    CriterionKind.DEDEKIND_F: dedekind_psi,
}


@dataclass(frozen=True)
class CriterionValue:
    n: int
    kind: CriterionKind
    ratio: float
    threshold: float
    value: float
    precision_escalated: bool


@dataclass(frozen=True)
class ExceptionReport:
    kind: CriterionKind
    lo: int
    hi: int
    exceptions: tuple[int, ...]
    largest: Optional[int]
    escalations: int


@dataclass(frozen=True)
class BoundCheckResult:
    bound: str
    first: int
    last: int
    passed: bool
    worst_margin: float
    witness: int


def threshold(n: int) -> float:
    # single rounding per step, no fused rearrangement
    return CONSTANTS.e_gamma * math.log(math.log(n))


def _escalated_value(n: int, numer: int) -> float:
    with mp.workdps(ESCALATION_DPS):
        ratio = mp.mpf(numer) / n
        thr = mp_e_gamma() * mp.log(mp.log(n))
        return float(ratio - thr)


def _criterion(n: int, kind: CriterionKind,
               accel: Optional[SpfTable] = None) -> CriterionValue:
    if n <= 1:
        raise DomainError(f"log log n undefined for n={n}")
    numer = _RATIO_FN[kind](n, accel)
    ratio = numer / n
    thr = threshold(n)
    value = ratio - thr
    escalated = abs(value) < ESCALATION_BAND
    if escalated:
        value = _escalated_value(n, numer)
    return CriterionValue(n=n, kind=kind, ratio=ratio, threshold=thr,
                          value=value, precision_escalated=escalated)


def robin_g(n: int, accel: Optional[SpfTable] = None) -> CriterionValue:
    return _criterion(n, CriterionKind.ROBIN_G, accel)


def dedekind_f(n: int, accel: Optional[SpfTable] = None) -> CriterionValue:
    return _criterion(n, CriterionKind.DEDEKIND_F, accel)


def exact_ratio(n: int, kind: CriterionKind,
                accel: Optional[SpfTable] = None) -> Fraction:
    return Fraction(_RATIO_FN[kind](n, accel), n)


# ---------------------------------------------------------------------------
# chunked float ratio scan

def _chunk_ratios(lo: int, hi: int, kind: CriterionKind,
                  base_primes: list[int]) -> np.ndarray:
    """Float psi(n)/n or sigma(n)/n for n in [lo, hi).

    Deterministic regardless of chunk boundaries: every n collects its
    factors in the same order (primes ascending, powers ascending, large
    cofactor last).
    """
    size = hi - lo
    rem = np.arange(lo, hi, dtype=np.int64)
    ratio = np.ones(size, dtype=np.float64)
    want_sigma = kind is CriterionKind.ROBIN_G
    for p in base_primes:
        if p * p >= hi:
            break
        pk = p
        k = 1
        s_prev = 1.0 + 1.0 / p  # sigma(p)/p
        while pk < hi:
            start = ((lo + pk - 1) // pk) * pk
            if start >= hi:
                break
            idx = np.arange(start - lo, size, pk)
            if k == 1:
                ratio[idx] *= s_prev
            elif want_sigma:
                s_cur = s_prev + p ** float(-k)
                ratio[idx] *= s_cur / s_prev
                s_prev = s_cur
            rem[idx] //= p
            pk *= p
            k += 1
    big = rem > 1
    ratio[big] *= 1.0 + 1.0 / rem[big]
    return ratio


def _chunk_values(lo: int, hi: int, kind: CriterionKind,
                  base_primes: list[int]) -> np.ndarray:
    n = np.arange(lo, hi, dtype=np.float64)
    thr = CONSTANTS.e_gamma * np.log(np.log(n))
    return _chunk_ratios(lo, hi, kind, base_primes) - thr


def scan_exceptions(kind: CriterionKind, lo: int, hi: int,
                    chunk_size: int = DEFAULT_CHUNK,
                    accel: Optional[SpfTable] = None) -> ExceptionReport:
    """All n in [lo, hi) with criterion value >= 0, by float prefilter plus
    exact confirmation of every near-threshold candidate."""
    if lo < 2 or hi <= lo:
        raise DomainError(f"need 2 <= lo < hi, got lo={lo} hi={hi}")
    if hi > SCAN_CEILING:
        raise ResourceLimitError(f"hi={hi} exceeds scan ceiling {SCAN_CEILING}")
    base_primes = _simple_sieve(math.isqrt(hi - 1) + 1).tolist()
    exceptions = []
    escalations = 0
    for c_lo in range(lo, hi, chunk_size):
        c_hi = min(c_lo + chunk_size, hi)
        values = _chunk_values(c_lo, c_hi, kind, base_primes)
        for off in np.nonzero(values > -_CANDIDATE_BAND)[0]:
            cv = _criterion(c_lo + int(off), kind, accel)
            if cv.precision_escalated:
                escalations += 1
            if cv.value >= 0:
                exceptions.append(cv.n)
    return ExceptionReport(kind=kind, lo=lo, hi=hi,
                           exceptions=tuple(exceptions),
                           largest=max(exceptions) if exceptions else None,
                           escalations=escalations)


def check_sigma_upper_bound(lo: int, hi: int,
                            c: float = DEFAULT_SIGMA_BOUND_C,
                            chunk_size: int = DEFAULT_CHUNK) -> BoundCheckResult:
    """Verify sigma(n)/n <= e^gamma log log n + c / log log n on [lo, hi)."""
    if lo < 3:
        raise DomainError("bound is stated for n >= 3")
    if hi <= lo:
        raise DomainError(f"empty range: hi={hi} <= lo={lo}")
    if hi > SCAN_CEILING:
        raise ResourceLimitError(f"hi={hi} exceeds scan ceiling {SCAN_CEILING}")
    base_primes = _simple_sieve(math.isqrt(hi - 1) + 1).tolist()
    worst = math.inf
    witness = lo
    for c_lo in range(lo, hi, chunk_size):
        c_hi = min(c_lo + chunk_size, hi)
        n = np.arange(c_lo, c_hi, dtype=np.float64)
        llg = np.log(np.log(n))
        margin = (CONSTANTS.e_gamma * llg + c / llg
                  - _chunk_ratios(c_lo, c_hi, CriterionKind.ROBIN_G, base_primes))
        i = int(np.argmin(margin))
        if margin[i] < worst:
            worst = float(margin[i])
            witness = c_lo + i
    if abs(worst) < _CANDIDATE_BAND:
        worst = _exact_sigma_bound_margin(witness, c)
    return BoundCheckResult(bound="sigma_upper", first=lo, last=hi - 1,
                            passed=worst > 0, worst_margin=worst,
                            witness=witness)


def _exact_sigma_bound_margin(n: int, c: float) -> float:
    with mp.workdps(ESCALATION_DPS):
        llg = mp.log(mp.log(n))
        ratio = mp.mpf(sigma(n)) / n
        return float(mp_e_gamma() * llg + mp.mpf(c) / llg - ratio)
