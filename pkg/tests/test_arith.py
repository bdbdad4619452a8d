import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import psirh
from psirh.arith import SpfTable, psi_table, sigma_table
from psirh.errors import DomainError


def divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


class TestFactorize:
    def test_one(self):
        assert psirh.factorize(1).factors == ()

    def test_5040(self):
        assert psirh.factorize(5040).factors == ((2, 4), (3, 2), (5, 1), (7, 1))

    def test_fifth_primorial(self):
        assert psirh.factorize(2310).factors == ((2, 1), (3, 1), (5, 1), (7, 1), (11, 1))

    def test_zero_rejected(self):
        with pytest.raises(DomainError):
            psirh.factorize(0)

    def test_reconstruction(self):
        for n in list(range(1, 500)) + [10**9 + 7, 2 * 3 * 5 * 7 * 11 * 13 * 10**6]:
            f = psirh.factorize(n)
            assert math.prod(p**e for p, e in f.factors) == n
            primes = [p for p, _ in f.factors]
            assert primes == sorted(primes)

    def test_with_accel(self):
        accel = SpfTable(10**4)
        for n in range(1, 2000):
            assert psirh.factorize(n, accel) == psirh.factorize(n)


class TestSpfTable:
    def test_entries_divide_and_are_prime(self):
        t = SpfTable(500)
        for m in range(2, 501):
            p = t.smallest_factor(m)
            assert m % p == 0
            assert psirh.factorize(p).factors == ((p, 1),)

    def test_prime_maps_to_itself(self):
        t = SpfTable(100)
        for p in (2, 3, 5, 53, 97):
            assert t.smallest_factor(p) == p


class TestFunctionValues:
    def test_psi(self):
        assert psirh.dedekind_psi(1) == 1
        assert psirh.dedekind_psi(10) == 18
        assert psirh.dedekind_psi(12) == 24
        assert psirh.dedekind_psi(12) == 2 * psirh.dedekind_psi(6)

    def test_sigma(self):
        assert psirh.sigma(1) == 1
        assert psirh.sigma(12) == 28
        assert psirh.sigma(5040) == 19344

    def test_num_divisors(self):
        assert psirh.num_divisors(1) == 1
        assert psirh.num_divisors(12) == 6
        assert psirh.num_divisors(5040) == 60

    def test_squarefree(self):
        assert psirh.is_squarefree(30)
        assert not psirh.is_squarefree(12)
        assert psirh.is_squarefree(1)

    def test_zero_rejected(self):
        for fn in (psirh.dedekind_psi, psirh.sigma, psirh.num_divisors,
                   psirh.is_squarefree):
            with pytest.raises(DomainError):
                fn(0)

    def test_brute_force_equivalence(self):
        for n in range(1, 2000):
            ds = divisors(n)
            assert psirh.sigma(n) == sum(ds)
            assert psirh.num_divisors(n) == len(ds)
            expect = Fraction(n)
            for p, _ in psirh.factorize(n).factors:
                expect *= Fraction(p + 1, p)
            assert psirh.dedekind_psi(n) == expect

    def test_prime_case(self):
        for p in psirh.sieve_range(0, 10**4).primes.tolist():
            assert psirh.dedekind_psi(p) == p + 1
            assert psirh.sigma(p) == p + 1
            assert psirh.num_divisors(p) == 2


class TestMultiplicativity:
    @settings(max_examples=200, deadline=None)
    @given(m=st.integers(2, 10**5), n=st.integers(2, 10**5))
    def test_random_coprime_pairs(self, m, n):
        if math.gcd(m, n) != 1:
            return
        assert psirh.dedekind_psi(m * n) == psirh.dedekind_psi(m) * psirh.dedekind_psi(n)
        assert psirh.sigma(m * n) == psirh.sigma(m) * psirh.sigma(n)
        assert psirh.num_divisors(m * n) == psirh.num_divisors(m) * psirh.num_divisors(n)


class TestDominance:
    def test_psi_below_sigma_equality_iff_squarefree(self):
        limit = 10**4
        psi = psi_table(limit)
        sig = sigma_table(limit)
        for n in range(1, limit + 1):
            assert psi[n] <= sig[n]
            assert (psi[n] == sig[n]) == psirh.is_squarefree(n)


class TestTables:
    def test_psi_table_matches_pointwise(self):
        t = psi_table(3000)
        for n in random.Random(7).sample(range(1, 3001), 200):
            assert t[n] == psirh.dedekind_psi(n)

    def test_sigma_table_matches_pointwise(self):
        t = sigma_table(3000)
        for n in random.Random(8).sample(range(1, 3001), 200):
            assert t[n] == psirh.sigma(n)
