"""Candidate-exception sequences and the structural proposition checks.

The sequence S (OEIS A060735) consists of the primorials N_k and their
multiples l*N_k with 1 <= l < p_{k+1}; these are exactly the psi-ratio
record holders.  Superabundant numbers (A004394) are the sigma-ratio record
holders.  All record decisions use exact integer cross-multiplication; no
floating point is consulted for membership.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

import mpmath as mp

from .arith import dedekind_psi, psi_table, sigma_table
from .criteria import CONSTANTS, ESCALATION_DPS, dedekind_f, mp_e_gamma
from .errors import BFileParseError, DomainError, ResourceLimitError
from .prime_engine import _simple_sieve

PSI_CHAMPION_CEILING = 10**6
SUPERABUNDANT_CEILING = 10**8
PROP1_CEILING = 10**8
PROP2_CEILING = 10**6
IDENTITY_KMAX = 14  # N_14 * p_15 still fits exact 64-bit-scale evaluation

_TIE_BAND = 1e-9


@dataclass(frozen=True)
class ChampionNumber:
    primorial_index: int  # k >= 1
    multiplier: int       # 1 <= l < p_{k+1}
    value: int            # l * N_k, exact
    psi_ratio_log: float  # sum_{i<=k} log(1 + 1/p_i), independent of l


@dataclass(frozen=True)
class RecordScanResult:
    records: tuple[tuple[int, int, int], ...]  # (n, ratio_num, ratio_den)
    limit: int


class Proposition(enum.Enum):
    PROP1 = "prop1"
    PROP2 = "prop2"
    PSI_MULTIPLE_IDENTITY = "psi_multiple_identity"


@dataclass(frozen=True)
class PropositionCheck:
    proposition: Proposition
    limit: int
    cases_checked: int
    failures: tuple[tuple[int, ...], ...]


def _primes_for_primorials(limit_bits: int) -> list[int]:
    # enough primes that the running primorial can exceed any `limit` of the
    # given bit length
    bound = max(64, 4 * limit_bits)
    return _simple_sieve(bound).tolist()


def generate_s_sequence(limit: int) -> list[ChampionNumber]:
    """All l*N_k <= limit with 1 <= l < p_{k+1}, in increasing order.

    Generated structurally from the primorial ladder, never by scanning
    integers; limit may be an arbitrary-precision integer.
    """
    if limit < 2:
        return []
    primes = _primes_for_primorials(limit.bit_length())
    out: list[ChampionNumber] = []
    primorial = 1
    ratio_log = 0.0
    for k, p in enumerate(primes, start=1):
        primorial *= p
        if primorial > limit:
            break
        ratio_log += math.log1p(1.0 / p)
        p_next = primes[k]
        for l in range(1, p_next):
            value = l * primorial
            if value > limit:
                break
            out.append(ChampionNumber(primorial_index=k, multiplier=l,
                                      value=value, psi_ratio_log=ratio_log))
    return out


def primorial(k: int) -> int:
    """N_k, the product of the first k primes."""
    if k < 1:
        raise DomainError("primorial index must be >= 1")
    primes = _simple_sieve(max(64, int(1.3 * k * (math.log(max(k, 3)) + 2)))).tolist()
    if len(primes) < k:
        primes = _simple_sieve(32 * k).tolist()
    result = 1
    for p in primes[:k]:
        result *= p
    return result


def psi_record_scan(limit: int) -> RecordScanResult:
    """Record holders of psi(n)/n for 1 <= n <= limit, exact fractions."""
    if limit > PSI_CHAMPION_CEILING:
        raise ResourceLimitError(
            f"limit={limit} exceeds ceiling {PSI_CHAMPION_CEILING}")
    psi = psi_table(limit).tolist()
    records = []
    best_num, best_den = 0, 1
    for n in range(1, limit + 1):
        if psi[n] * best_den > best_num * n:
            best_num, best_den = psi[n], n
            records.append((n, psi[n], n))
    return RecordScanResult(records=tuple(records), limit=limit)


def is_psi_champion(n: int) -> bool:
    """True iff no 2 <= m < n has psi(m)/m strictly above psi(n)/n.

    Ties with the running maximum keep membership: 4 and 24 tie the ratio of
    2 and 6 respectively yet belong to the candidate sequence, while 36 is
    excluded by the strictly larger ratio of 30.  Decided by exact integer
    cross-multiplication.
    """
    if n < 2:
        raise DomainError("psi-champion condition needs n >= 2")
    if n > PSI_CHAMPION_CEILING:
        raise ResourceLimitError(
            f"n={n} exceeds ceiling {PSI_CHAMPION_CEILING}")
    psi = psi_table(n).tolist()
    best_num, best_den = 1, 1
    for m in range(2, n):
        if psi[m] * best_den > best_num * m:
            best_num, best_den = psi[m], m
    return psi[n] * best_den >= best_num * n


def psi_champion_scan(limit: int) -> list[int]:
    """All n <= limit passing is_psi_champion, in one exact pass (the
    brute-force oracle for generate_s_sequence)."""
    if limit > PSI_CHAMPION_CEILING:
        raise ResourceLimitError(
            f"limit={limit} exceeds ceiling {PSI_CHAMPION_CEILING}")
    psi = psi_table(max(limit, 1)).tolist()
    out = []
    best_num, best_den = 1, 1
    for n in range(2, limit + 1):
        lhs = psi[n] * best_den
        rhs = best_num * n
        if lhs >= rhs:
            out.append(n)
            if lhs > rhs:
                best_num, best_den = psi[n], n
    return out


def generate_superabundant(limit: int) -> RecordScanResult:
    """All n <= limit with sigma(m)/m < sigma(n)/n for every m < n.

    n = 1 is included (the condition is vacuous there, matching the OEIS
    convention for A004394).
    """
    if limit > SUPERABUNDANT_CEILING:
        raise ResourceLimitError(
            f"limit={limit} exceeds ceiling {SUPERABUNDANT_CEILING}")
    if limit < 1:
        return RecordScanResult(records=(), limit=limit)
    sig = sigma_table(limit).tolist()
    records = []
    best_num, best_den = 0, 1
    for n in range(1, limit + 1):
        if sig[n] * best_den > best_num * n:
            best_num, best_den = sig[n], n
            records.append((n, sig[n], n))
    return RecordScanResult(records=tuple(records), limit=limit)


def psi_multiple_identity_check(k_max: int) -> PropositionCheck:
    """Verify psi(l*N_k) = l*psi(N_k) exactly for 1 <= l < p_{k+1}, k <= k_max."""
    if k_max < 1:
        raise DomainError("k_max must be >= 1")
    if k_max > IDENTITY_KMAX:
        raise ResourceLimitError(
            f"k_max={k_max} exceeds exact-arithmetic ceiling {IDENTITY_KMAX}")
    primes = _simple_sieve(64).tolist()
    cases = 0
    failures = []
    prim = 1
    for k in range(1, k_max + 1):
        prim *= primes[k - 1]
        psi_prim = dedekind_psi(prim)
        for l in range(1, primes[k]):
            cases += 1
            if dedekind_psi(l * prim) != l * psi_prim:
                failures.append((k, l))
    return PropositionCheck(proposition=Proposition.PSI_MULTIPLE_IDENTITY,
                            limit=k_max, cases_checked=cases,
                            failures=tuple(failures))


def _f_mp(n: int):
    ratio = mp.mpf(dedekind_psi(n)) / n
    return ratio - mp_e_gamma() * mp.log(mp.log(n))


def verify_prop1(limit: int) -> PropositionCheck:
    """For every N_k <= limit and 1 < l < p_{k+1} with l*N_k < min(N_{k+1}, limit):
    f(l*N_k) < f(N_k)."""
    if limit > PROP1_CEILING:
        raise ResourceLimitError(f"limit={limit} exceeds ceiling {PROP1_CEILING}")
    primes = _primes_for_primorials(int(limit).bit_length())
    cases = 0
    failures = []
    prim = 1
    for k, p in enumerate(primes, start=1):
        prim *= p
        if prim > limit:
            break
        f_prim = dedekind_f(prim).value
        p_next = primes[k]
        next_prim = prim * p_next
        for l in range(2, p_next):
            value = l * prim
            if value >= min(next_prim, limit):
                break
            cases += 1
            diff = dedekind_f(value).value - f_prim
            if abs(diff) < _TIE_BAND:
                with mp.workdps(ESCALATION_DPS):
                    diff = float(_f_mp(value) - _f_mp(prim))
            if diff >= 0:
                failures.append((k, l))
    return PropositionCheck(proposition=Proposition.PROP1, limit=limit,
                            cases_checked=cases, failures=tuple(failures))


def verify_prop2(limit: int) -> PropositionCheck:
    """For every N_k, l >= 1 with (l+1)*N_k < min(N_{k+1}, limit) and every
    l*N_k < m < (l+1)*N_k: f(m) < f(N_k)."""
    if limit > PROP2_CEILING:
        raise ResourceLimitError(f"limit={limit} exceeds ceiling {PROP2_CEILING}")
    primes = _primes_for_primorials(int(limit).bit_length())
    psi = psi_table(max(limit, 2)).tolist()
    e_gamma = CONSTANTS.e_gamma
    cases = 0
    failures = []
    prim = 1
    for k, p in enumerate(primes, start=1):
        prim *= p
        if prim > limit:
            break
        f_prim = dedekind_f(prim).value
        next_prim = prim * primes[k]
        l = 1
        while (l + 1) * prim < min(next_prim, limit):
            for m in range(l * prim + 1, (l + 1) * prim):
                cases += 1
                diff = psi[m] / m - e_gamma * math.log(math.log(m)) - f_prim
                if abs(diff) < _TIE_BAND:
                    with mp.workdps(ESCALATION_DPS):
                        diff = float(_f_mp(m) - _f_mp(prim))
                if diff >= 0:
                    failures.append((k, l, m))
            l += 1
    return PropositionCheck(proposition=Proposition.PROP2, limit=limit,
                            cases_checked=cases, failures=tuple(failures))


# ---------------------------------------------------------------------------
# OEIS b-file reader

def read_bfile(path) -> list[tuple[int, int]]:
    """Parse an OEIS b-file: lines of `<index> <value>`, `#` comments ignored."""
    entries = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 2:
                raise BFileParseError(
                    f"expected `<index> <value>`, got {line!r}", lineno)
            try:
                entries.append((int(parts[0]), int(parts[1])))
            except ValueError:
                raise BFileParseError(
                    f"non-integer field in {line!r}", lineno) from None
    return entries
