"""Exact evaluation of the multiplicative functions psi, sigma and d.

Everything here is integer-exact: Python ints widen automatically, so no
function value can overflow or be corrupted by rounding.  Bulk scans are
served by a smallest-prime-factor table (SpfTable) or by vectorized table
builders; single queries above the table fall back to trial division by
sieved primes up to sqrt(n).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DomainError
from .prime_engine import _simple_sieve

DEFAULT_SPF_LIMIT = 10**7


@dataclass(frozen=True)
class Factorization:
    n: int
    factors: tuple[tuple[int, int], ...]  # (prime, exponent), primes increasing


class SpfTable:
    """Dense smallest-prime-factor table for 2 <= m <= limit."""

    def __init__(self, limit: int):
        if limit < 2:
            raise DomainError("SpfTable limit must be >= 2")
        self.limit = limit
        spf = np.arange(limit + 1, dtype=np.int64)
        for p in range(2, math.isqrt(limit) + 1):
            if spf[p] == p:
                sl = spf[p * p:: p]
                sl[sl == np.arange(p * p, limit + 1, p)] = p
        self.table = spf

    def smallest_factor(self, m: int) -> int:
        return int(self.table[m])


def _trial_primes(n: int):
    """Primes for trial division, sieved lazily so the bound tracks the
    shrinking cofactor instead of sqrt of the original n."""
    lo = 2
    block = 1 << 16
    while True:
        for p in _simple_sieve(min(lo + block, math.isqrt(n) + 2)).tolist():
            if p >= lo:
                yield p
        lo += block
        if lo > math.isqrt(n) + 1:
            return
        block *= 4


def factorize(n: int, accel: Optional[SpfTable] = None) -> Factorization:
    """Exact prime-power decomposition of n >= 1."""
    if n < 1:
        raise DomainError("cannot factorize n < 1")
    m = n
    factors = []
    if accel is not None and n <= accel.limit:
        while m > 1:
            p = accel.smallest_factor(m)
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            factors.append((p, e))
        return Factorization(n=n, factors=tuple(factors))
    for p in _trial_primes(n):
        if p * p > m:
            break
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            factors.append((p, e))
    if m > 1:
        factors.append((m, 1))
    return Factorization(n=n, factors=tuple(factors))


def dedekind_psi(n: int, accel: Optional[SpfTable] = None) -> int:
    """psi(n) = n * prod_{p|n} (1 + 1/p), exactly."""
    if n < 1:
        raise DomainError("psi undefined for n < 1")
    result = 1
    for p, e in factorize(n, accel).factors:
        result *= p ** (e - 1) * (p + 1)
    return result


def sigma(n: int, accel: Optional[SpfTable] = None) -> int:
    """Sum of divisors of n, exactly."""
    if n < 1:
        raise DomainError("sigma undefined for n < 1")
    result = 1
    for p, e in factorize(n, accel).factors:
        result *= (p ** (e + 1) - 1) // (p - 1)
    return result


def num_divisors(n: int, accel: Optional[SpfTable] = None) -> int:
    if n < 1:
        raise DomainError("d undefined for n < 1")
    result = 1
    for _, e in factorize(n, accel).factors:
        result *= e + 1
    return result


def is_squarefree(n: int, accel: Optional[SpfTable] = None) -> bool:
    if n < 1:
        raise DomainError("squarefreeness undefined for n < 1")
    return all(e == 1 for _, e in factorize(n, accel).factors)


def psi_table(limit: int) -> np.ndarray:
    """Exact psi(n) for 0 <= n <= limit as an int64 array (psi(0) set to 0).

    Built multiplicatively: for each prime p ascending, every multiple m
    still holds its p-part untouched, so dividing by p and multiplying by
    p + 1 is an exact integer step.
    """
    if limit < 1:
        raise DomainError("limit must be >= 1")
    res = np.arange(limit + 1, dtype=np.int64)
    res[0] = 0
    for p in _simple_sieve(limit).tolist():
        sl = res[p:: p]
        sl //= p
        sl *= p + 1
    return res


def sigma_table(limit: int) -> np.ndarray:
    """Exact sigma(n) for 0 <= n <= limit via divisor enumeration."""
    if limit < 1:
        raise DomainError("limit must be >= 1")
    res = np.zeros(limit + 1, dtype=np.int64)
    for d in range(1, limit + 1):
        res[d:: d] += d
    return res
