"""Primality testing, sieving and integer factorization at desk scale."""

from __future__ import annotations

import math
import random

import numpy as np

from .errors import FactorizationBudget

# Deterministic Miller-Rabin witness set, valid for all n < 3.317e24
# (Sorenson-Webster).
_MR_DETERMINISTIC_BOUND = 3_317_044_064_679_887_385_961_981
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


def _mr_witness(n: int, a: int, d: int, s: int) -> bool:
    """True if a witnesses the compositeness of n (d*2^s == n-1, d odd)."""
    a %= n
    if a == 0:
        return False
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return False
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return False
    return True


def is_prime(n: int, rounds: int = 64, seed: int = 0) -> bool:
    """Primality test: deterministic below 3.3e24, else probabilistic.

    Above the deterministic bound a seeded Miller-Rabin with `rounds`
    random bases is used; see is_prime_certified when the caller needs to
    record which regime applied.
    """
    return is_prime_certified(n, rounds=rounds, seed=seed)[0]


def is_prime_certified(n: int, rounds: int = 64, seed: int = 0) -> tuple[bool, bool]:
    """Return (is_prime, certified) where certified means non-probabilistic."""
    if n < 2:
        return False, True
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p, True
    d = n - 1
    s = (d & -d).bit_length() - 1
    d >>= s
    if n < _MR_DETERMINISTIC_BOUND:
        for a in _MR_BASES:
            if _mr_witness(n, a, d, s):
                return False, True
        return True, True
    rng = random.Random(seed ^ (n & 0xFFFFFFFF))
    for _ in range(rounds):
        if _mr_witness(n, rng.randrange(2, n - 1), d, s):
            return False, True
    return True, False


def sieve_primes(limit: int) -> np.ndarray:
    """All primes <= limit, as an int64 array (simple Eratosthenes)."""
    if limit < 2:
        return np.zeros(0, dtype=np.int64)
    mask = np.ones(limit + 1, dtype=bool)
    mask[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if mask[p]:
            mask[p * p :: p] = False
    return np.nonzero(mask)[0].astype(np.int64)


def primes_in(lo: int, hi: int) -> list[int]:
    """Primes in [lo, hi] (inclusive)."""
    return [int(p) for p in sieve_primes(hi) if p >= lo]


def _brent_rho(n: int, rng: random.Random) -> int:
    """Brent's cycle-finding Pollard rho; returns a nontrivial factor of composite n."""
    if n % 2 == 0:
        return 2
    while True:
        y = rng.randrange(1, n)
        c = rng.randrange(1, n)
        m = 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r <<= 1
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


def factorize(n: int, trial_limit: int = 10**6, size_limit: int = 2**64) -> dict[int, int]:
    """Full factorization of |n| as {prime: exponent}.

    Trial division up to trial_limit, then Brent rho on cofactors; cofactors
    above size_limit raise FactorizationBudget.  factorize(1) == {}.
    """
    n = abs(n)
    if n == 0:
        raise ValueError("cannot factor 0")
    out: dict[int, int] = {}
    for p in (2, 3, 5):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    d = 7
    # wheel over residues coprime to 30
    increments = (4, 2, 4, 2, 4, 6, 2, 6)
    i = 0
    while d * d <= n and d <= trial_limit:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += increments[i]
        i = (i + 1) % 8
    if n == 1:
        return out
    if n > size_limit and not is_prime(n):
        raise FactorizationBudget(f"composite cofactor {n} exceeds {size_limit}")
    rng = random.Random(0xC0FFEE)
    stack = [n]
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        g = _brent_rho(m, rng)
        stack.append(g)
        stack.append(m // g)
    return out


def tau(n: int, **kw) -> int:
    """Number of divisors of |n|."""
    return math.prod(e + 1 for e in factorize(n, **kw).values())


def least_prime_factor(n: int, **kw) -> int:
    """Smallest prime factor of |n| (inf-like sentinel 0 for |n| == 1)."""
    n = abs(n)
    if n == 1:
        return 0
    return min(factorize(n, **kw))


def window_factorizations(lo: int, hi: int) -> list[dict[int, int]]:
    """Factorize every integer in [lo, hi) by sieving with primes <= sqrt(hi).

    Returns a list of {prime: exponent} dicts indexed by m - lo.
    """
    size = hi - lo
    remain = np.arange(lo, hi, dtype=np.int64)
    facs: list[dict[int, int]] = [{} for _ in range(size)]
    for p in sieve_primes(math.isqrt(hi - 1)):
        p = int(p)
        start = (-lo) % p
        idx = np.arange(start, size, p)
        sub = remain[idx]
        e = np.zeros(len(idx), dtype=np.int64)
        div = sub % p == 0
        while div.any():
            sub[div] //= p
            e[div] += 1
            div = sub % p == 0
        remain[idx] = sub
        for j, ee in zip(idx.tolist(), e.tolist()):
            if ee:
                facs[j][p] = ee
    leftover = np.nonzero(remain > 1)[0]
    for j in leftover.tolist():
        facs[j][int(remain[j])] = 1  # cofactor < sqrt(hi)^2 and unfactored => prime
    return facs
