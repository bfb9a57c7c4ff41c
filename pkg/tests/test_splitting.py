"""Polynomial splitting mod p: patterns, roots, batch routines, Hensel."""

import random

import numpy as np

from normform.primes import sieve_primes
from normform.splitting import (
    batch_degree_patterns,
    batch_root_counts,
    degree_pattern_mod_p,
    hensel_lift_factor,
    monic_factors_mod_p,
    roots_mod_p,
)

F_CUBE2 = [-2, 0, 0, 1]
F_QUINT = [-1, -1, 0, 0, 0, 1]


def poly_eval(f, x, p):
    acc = 0
    for c in reversed(f):
        acc = (acc * x + c) % p
    return acc


class TestSinglePrime:
    def test_pattern_sums_to_degree(self):
        for f in (F_CUBE2, F_QUINT, [1, 1, 0, 0, 1]):
            for p in (2, 3, 5, 7, 11, 31, 101):
                degs, _ = degree_pattern_mod_p(f, p)
                assert sum(degs) == len(f) - 1

    def test_known_patterns(self):
        assert degree_pattern_mod_p(F_CUBE2, 5) == ([1, 2], True)
        assert degree_pattern_mod_p(F_CUBE2, 31) == ([1, 1, 1], True)
        # bad prime: X^3 - 2 = X^3 mod 2
        degs, sqfree = degree_pattern_mod_p(F_CUBE2, 2)
        assert degs == [1, 1, 1] and not sqfree

    def test_roots_are_roots(self):
        rng = random.Random(1)
        for f in (F_CUBE2, F_QUINT):
            for p in (3, 5, 7, 101, 4099, 10007):
                rs = roots_mod_p(f, p)
                assert all(poly_eval(f, r, p) == 0 for r in rs)
                assert len(set(rs)) == len(rs)
                # spot check some non-roots
                for _ in range(20):
                    x = rng.randrange(p)
                    if x not in rs:
                        assert poly_eval(f, x, p) != 0

    def test_factors_multiply_back(self):
        for f in (F_CUBE2, F_QUINT):
            for p in (2, 3, 5, 13, 101):
                facs = monic_factors_mod_p(f, p)
                prod = [1]
                for g, m in facs:
                    for _ in range(m):
                        new = [0] * (len(prod) + len(g) - 1)
                        for i, a in enumerate(prod):
                            for j, b in enumerate(g):
                                new[i + j] = (new[i + j] + a * b) % p
                        prod = new
                assert prod == [c % p for c in f]


class TestBatch:
    def test_root_counts_match_singles(self):
        ps = np.array([p for p in sieve_primes(500).tolist() if p > 3],
                      dtype=np.int64)
        for f in (F_CUBE2, F_QUINT):
            batch = batch_root_counts(f, ps)
            for p, c in zip(ps.tolist(), batch.tolist()):
                assert c == len(roots_mod_p(f, p))

    def test_patterns_match_singles(self):
        ps = np.array([p for p in sieve_primes(300).tolist() if p > 5],
                      dtype=np.int64)
        for f in (F_CUBE2, F_QUINT, [1, 1, 0, 0, 1]):
            n = len(f) - 1
            pats = batch_degree_patterns(f, ps)
            for i, p in enumerate(ps.tolist()):
                degs, sqfree = degree_pattern_mod_p(f, p)
                if not sqfree:
                    continue  # batch output is contractually good-p only
                expect = [degs.count(d) for d in range(1, n + 1)]
                assert pats[i].tolist() == expect

    def test_large_prime_batch(self):
        ps = np.array([999983, 1000003, 1999993], dtype=np.int64)
        got = batch_root_counts(F_CUBE2, ps)
        for p, c in zip(ps.tolist(), got.tolist()):
            assert c == len(roots_mod_p(F_CUBE2, p))


class TestHensel:
    def test_lift_root(self):
        # root 3 of X^3 - 2 mod 5, lifted to mod 5^6
        g = [2, 1]  # X - 3 = X + 2 mod 5
        G = hensel_lift_factor(F_CUBE2, g, 5, 6)
        r = (-G[0]) % 5**6
        assert (r**3 - 2) % 5**6 == 0

    def test_lift_quadratic_factor(self):
        # the degree-2 cofactor of X^3 - 2 mod 5
        facs = monic_factors_mod_p(F_CUBE2, 5)
        quad = next(g for g, m in facs if len(g) == 3)
        G = hensel_lift_factor(F_CUBE2, quad, 5, 4)
        # check G divides f mod 5^4: remainder of f by monic G vanishes
        q = 5**4
        rem = [c % q for c in F_CUBE2]
        while len(rem) - 1 >= len(G) - 1 and any(rem):
            while rem and rem[-1] % q == 0:
                rem.pop()
            if len(rem) - 1 < len(G) - 1:
                break
            c = rem[-1] % q
            shift = len(rem) - 1 - (len(G) - 1)
            for i, gc in enumerate(G):
                rem[shift + i] = (rem[shift + i] - c * gc) % q
            rem.pop()
        assert all(c % q == 0 for c in rem)
