"""Local data at primes: splitting, the densities nu / nu_2 / rho, and
ideal-symbol enumeration with Weber-style counting.

Ideals of Z[omega] are handled through splitting symbols at good primes
(p not dividing disc f); bad primes are flagged and excluded from ideal
enumeration, with local factors of Euler products computed by brute force
instead.  Reports carry the exclusion explicitly.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import BadPrime, BudgetExceeded, CompositeP, NotSquarefree
from .fields import (
    FieldSpec,
    det_int,
    embed,
    norm,
    norm_form,
    norm_form_polynomial,
)
from .primes import is_prime, sieve_primes
from .splitting import (
    batch_degree_patterns,
    batch_root_counts,
    degree_pattern_mod_p,
    hensel_lift_factor,
    monic_factors_mod_p,
    roots_mod_p,
)


def discriminant(ctx: FieldSpec) -> int:
    """disc(f) = (-1)^(n(n-1)/2) Res(f, f') for monic f."""
    f = list(ctx.f_coeffs)
    n = ctx.n
    fp = [i * c for i, c in enumerate(f)][1:]
    res = resultant(f, fp)
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * res


def resultant(a: list[int], b: list[int]) -> int:
    """Res(a, b) via the Sylvester determinant (exact integers)."""
    da = len(a) - 1
    db = len(b) - 1
    while b and b[-1] == 0:
        b = b[:-1]
        db -= 1
    if db < 0:
        return 0
    size = da + db
    rows = []
    for i in range(db):
        rows.append([0] * i + list(reversed(a)) + [0] * (db - 1 - i))
    for i in range(da):
        rows.append([0] * i + list(reversed(b)) + [0] * (da - 1 - i))
    return det_int(rows)


def is_bad_prime(p: int, ctx: FieldSpec) -> bool:
    return discriminant(ctx) % p == 0


def bad_primes(ctx: FieldSpec) -> list[int]:
    from .primes import factorize

    return sorted(factorize(discriminant(ctx)))


@dataclass(frozen=True)
class PrimeIdeal:
    """Splitting symbol (p, degree, label) for a prime of Z[omega], good p only.

    For degree 1 the label is the root r of f mod p (the ideal (p, omega-r));
    for higher degree it is the index of the irreducible factor in a fixed
    deterministic ordering.  factor_coeffs is the monic factor of f mod p.
    """

    p: int
    degree: int
    label: int
    factor_coeffs: tuple[int, ...]

    @property
    def norm(self) -> int:
        return self.p**self.degree


@dataclass(frozen=True)
class IdealSym:
    """Product of prime-ideal symbols with exponents; good-prime support."""

    factors: tuple[tuple[PrimeIdeal, int], ...]

    @property
    def norm(self) -> int:
        return math.prod(pi.norm**e for pi, e in self.factors)

    @property
    def is_squarefree(self) -> bool:
        return all(e == 1 for _, e in self.factors)

    @property
    def mu(self) -> int:
        if not self.is_squarefree:
            return 0
        return -1 if len(self.factors) % 2 else 1

    def to_json_dict(self) -> dict:
        return {
            "factors": [
                {"p": pi.p, "degree": pi.degree, "label": pi.label, "e": e}
                for pi, e in self.factors
            ],
            "norm": self.norm,
        }


UNIT_IDEAL = IdealSym(factors=())


@lru_cache(maxsize=None)
def _prime_ideals_above_cached(p: int, f_coeffs: tuple[int, ...]) -> tuple[PrimeIdeal, ...]:
    facs = monic_factors_mod_p(list(f_coeffs), p)
    out = []
    idx_by_degree: dict[int, int] = {}
    for fac, mult in sorted(facs, key=lambda t: (len(t[0]), t[0])):
        if mult != 1:
            raise BadPrime(f"f not squarefree mod {p}")
        d = len(fac) - 1
        if d == 1:
            label = (-fac[0]) % p
        else:
            label = idx_by_degree.get(d, 0)
            idx_by_degree[d] = label + 1
        out.append(PrimeIdeal(p=p, degree=d, label=label,
                              factor_coeffs=tuple(fac)))
    return tuple(out)


def prime_ideals_above(p: int, ctx: FieldSpec) -> list[PrimeIdeal]:
    """Splitting symbols above a good prime p; BadPrime if p | disc(f)."""
    if is_bad_prime(p, ctx):
        raise BadPrime(f"{p} divides disc(f); splitting symbols unavailable")
    return list(_prime_ideals_above_cached(p, ctx.f_coeffs))


def degree1_prime_ideals(p: int, ctx: FieldSpec) -> list[PrimeIdeal]:
    return [pi for pi in prime_ideals_above(p, ctx) if pi.degree == 1]


@dataclass(frozen=True)
class PrimeLocalData:
    """Per-prime splitting and density data."""

    p: int
    degree_pattern: tuple[int, ...]
    nu_p: int            # number of degree-1 primes above p (distinct roots)
    nu: int | None       # zeros of the incomplete norm form on (Z/p)^(n-k)
    nu2: int | None      # zeros of the full norm form on (Z/p)^n
    is_bad: bool
    exact: bool          # False only for bad p beyond the brute-force budget


def nu_brute(p: int, ctx: FieldSpec, budget: int = 10**8) -> int:
    """#{a in [1,p]^(n-k) : N_K(a) = 0 mod p} by exhaustive evaluation."""
    m = ctx.m
    if p**m > budget:
        raise BudgetExceeded(f"p^(n-k) = {p**m} exceeds budget")
    if m <= 4 and p**m > 4096:
        poly = _norm_poly_cached(ctx)
        axes = [np.arange(p, dtype=np.int64)] * m
        vals = _eval_poly_mod_axes(poly, axes, p)
        return int((vals == 0).sum())
    count = 0
    for a in itertools.product(range(p), repeat=m):
        if norm_form(a, ctx) % p == 0:
            count += 1
    return count


def nu2_brute(p: int, ctx: FieldSpec, budget: int = 10**7) -> int:
    """#{a in [1,p]^n : N(a) = 0 mod p} by exhaustive evaluation."""
    n = ctx.n
    if p**n > budget:
        raise BudgetExceeded(f"p^n = {p**n} exceeds budget")
    count = 0
    for a in itertools.product(range(p), repeat=n):
        if norm(a, ctx) % p == 0:
            count += 1
    return count


@lru_cache(maxsize=None)
def _norm_poly_cached_key(f_coeffs: tuple[int, ...], k: int):
    from .fields import make_context

    return norm_form_polynomial(make_context(list(f_coeffs[:-1]), k))


def _norm_poly_cached(ctx: FieldSpec):
    return _norm_poly_cached_key(ctx.f_coeffs, ctx.k)


def _eval_poly_mod_axes(poly: dict, axes, p: int) -> np.ndarray:
    """Polynomial values mod p on the product grid of 1-d axes.

    Horner along the first variable: the coefficients (polynomials in the
    remaining variables) are materialized on the tail grid first, so the
    full-grid work is only deg+1 fused multiply-adds.
    """
    m = len(axes)

    def view(i, a):
        return (a % p).reshape((1,) * i + (-1,) + (1,) * (m - 1 - i))

    by_e1: dict[int, dict[tuple, int]] = {}
    for ex, c in poly.items():
        by_e1.setdefault(ex[0], {})[ex[1:]] = c
    d = max(by_e1)
    if m == 1:
        g = axes[0] % p
        out = np.zeros_like(g)
        for e1 in range(d, -1, -1):
            out = (out * g + by_e1.get(e1, {}).get((), 0)) % p
        return out
    tail_views = [view(i, axes[i]) for i in range(1, m)]

    def eval_tail(sub: dict[tuple, int]) -> np.ndarray:
        acc = np.zeros((1,) * m, dtype=np.int64)
        if not sub:
            return acc
        maxpow = max((max(ex, default=0) for ex in sub), default=0)
        pows = []
        for g in tail_views:
            cur = [np.ones((1,) * m, dtype=np.int64)]
            for _ in range(maxpow):
                cur.append(cur[-1] * g % p)
            pows.append(cur)
        for ex, c in sub.items():
            term = np.full((1,) * m, c % p, dtype=np.int64)
            for var, e in enumerate(ex):
                if e:
                    term = term * pows[var][e] % p
            acc = acc + term  # broadcasts up to the tail grid
        return acc % p

    inner = {e1: eval_tail(sub) for e1, sub in by_e1.items()}
    zero = np.zeros((1,) * m, dtype=np.int64)
    x1 = view(0, axes[0])
    full = (len(axes[0]),) + tuple(len(a) for a in axes[1:])
    out = np.broadcast_to(inner.get(d, zero), full).copy()
    for e1 in range(d - 1, -1, -1):
        out = (out * x1 + inner.get(e1, zero)) % p
    return out


def nu_fast(p: int, ctx: FieldSpec) -> int:
    """nu(p) from the splitting type alone, good p only (exact).

    Inclusion-exclusion over nonempty subsets S of the primes above p:
    imposing divisibility by the primes in S cuts the grid (Z/p)^(n-k) by
    p^rank with rank = min(n-k, sum of degrees in S), since the powers
    1, X, ..., X^(n-k-1) stay independent modulo the product of the factors.
    """
    if is_bad_prime(p, ctx):
        raise BadPrime(f"{p} divides disc(f)")
    degs = [pi.degree for pi in prime_ideals_above(p, ctx)]
    return _nu_from_degrees(degs, p, ctx.m)


def _nu_from_degrees(degs: list[int], p: int, m: int) -> int:
    total = 0
    for size in range(1, len(degs) + 1):
        for S in itertools.combinations(degs, size):
            rank = min(m, sum(S))
            total += (-1) ** (size + 1) * p ** (m - rank)
    return total


def nu2_from_degrees(degs: list[int], p: int, n: int) -> int:
    """nu_2(p) = p^n (1 - prod (1 - p^-d)) for good p (CRT on F_p[X]/(f))."""
    frac = Fraction(1)
    for d in degs:
        frac *= 1 - Fraction(1, p**d)
    val = (1 - frac) * p**n
    assert val.denominator == 1
    return int(val)


def local_data(p: int, ctx: FieldSpec, budget: int = 10**7) -> PrimeLocalData:
    """Splitting pattern and the densities nu, nu_2 at p.

    Good p: exact from the splitting formulas.  Bad p: brute force within
    budget, otherwise the fields are None with exact=False.
    """
    if not is_prime(p):
        raise CompositeP(f"{p} is not prime")
    bad = is_bad_prime(p, ctx)
    degs, _sqfree = degree_pattern_mod_p(list(ctx.f_coeffs), p)
    nu_p = len(roots_mod_p(list(ctx.f_coeffs), p))
    if not bad:
        pattern = [pi.degree for pi in prime_ideals_above(p, ctx)]
        return PrimeLocalData(
            p=p,
            degree_pattern=tuple(sorted(pattern)),
            nu_p=nu_p,
            nu=_nu_from_degrees(pattern, p, ctx.m),
            nu2=nu2_from_degrees(pattern, p, ctx.n),
            is_bad=False,
            exact=True,
        )
    nu = nu2 = None
    exact = True
    try:
        nu = nu_brute(p, ctx, budget=budget)
    except BudgetExceeded:
        exact = False
    try:
        nu2 = nu2_brute(p, ctx, budget=budget)
    except BudgetExceeded:
        exact = False
    return PrimeLocalData(p=p, degree_pattern=tuple(degs), nu_p=nu_p,
                          nu=nu, nu2=nu2, is_bad=True, exact=exact)


# --- rho ---------------------------------------------------------------------


def _condition_matrix(prime_ideals: list[PrimeIdeal], m: int) -> np.ndarray:
    """Stacked F_p-linear conditions for divisibility by each ideal.

    Row block for (p, g): the reduction map x -> sum x_i X^(i-1) mod (g, p)
    written on the monomial basis of F_p[X]/(g).
    """
    p = prime_ideals[0].p
    rows = []
    for pi in prime_ideals:
        g = list(pi.factor_coeffs)
        d = len(g) - 1
        # columns: X^i mod g  for i = 0..m-1
        cols = []
        cur = [1] + [0] * (d - 1)
        for i in range(m):
            cols.append(cur[:])
            # multiply by X mod g
            cur = [0] + cur
            lead = cur[d] if len(cur) > d else 0
            cur = cur[:d]
            if lead:
                cur = [(c - lead * gc) % p for c, gc in zip(cur, g[:d])]
        for t in range(d):
            rows.append([cols[i][t] % p for i in range(m)])
    return np.array(rows, dtype=np.int64)


def rho(d: IdealSym, ctx: FieldSpec) -> Fraction:
    """Density rho(d): divisible points in [1, N(d)]^(n-k) over N(d)^(n-k-1).

    Squarefree good-support ideals only.  Per rational prime p the count is
    p^((d_sum)(n-k)) / p^rank restricted... concretely rho = prod over p of
    p^(d_sum - rank) with rank the honest F_p-rank of the stacked condition
    matrix; multiplicative across distinct p by CRT.
    """
    from .census import _rank_mod_p

    if not d.is_squarefree:
        raise NotSquarefree("rho is defined on squarefree symbols here")
    groups: dict[int, list[PrimeIdeal]] = {}
    for pi, e in d.factors:
        groups.setdefault(pi.p, []).append(pi)
    out = Fraction(1)
    for p, pis in groups.items():
        if is_bad_prime(p, ctx):
            raise BadPrime(f"{p} divides disc(f)")
        mat = _condition_matrix(pis, ctx.m)
        rank = _rank_mod_p(mat, p)
        dsum = sum(pi.degree for pi in pis)
        out *= Fraction(p) ** (dsum - rank)
    return out


def rho_brute(d: IdealSym, ctx: FieldSpec, budget: int = 10**7) -> Fraction:
    """rho by literal counting over [1, N(d)]^(n-k); small symbols only."""
    N = d.norm
    m = ctx.m
    if N**m > budget:
        raise BudgetExceeded(f"N^m = {N**m} exceeds budget")
    groups: dict[int, list[PrimeIdeal]] = {}
    for pi, e in d.factors:
        groups.setdefault(pi.p, []).append(pi)
    mats = {p: _condition_matrix(pis, ctx.m) for p, pis in groups.items()}
    count = 0
    for x in itertools.product(range(1, N + 1), repeat=m):
        ok = True
        for p, mat in mats.items():
            vec = np.array(x, dtype=np.int64) % p
            if ((mat @ vec) % p != 0).any():
                ok = False
                break
        if ok:
            count += 1
    return Fraction(count, N ** (m - 1))


def rho_group_closed(degs: list[int], p: int, m: int) -> Fraction:
    """Closed form p^(sum d - min(m, sum d)) used by the fast enumerators."""
    s = sum(degs)
    return Fraction(p) ** (s - min(m, s))


# --- ideal enumeration --------------------------------------------------------


def _prime_ideal_norm_table(ctx: FieldSpec, limit: int):
    """All (norm, p, degree) prime-ideal slots with norm <= limit, good p.

    Degree-d slots appear with their multiplicity (number of distinct
    primes of that degree above p).  Uses batched splitting for the degree
    counts; bad primes are skipped entirely.
    """
    ps = sieve_primes(limit)
    bad = set(bad_primes(ctx))
    ps = np.array([int(p) for p in ps if int(p) not in bad], dtype=np.int64)
    if len(ps) == 0:
        return []
    f = list(ctx.f_coeffs)
    n = ctx.n
    # full patterns only needed for p <= sqrt(limit); above that only
    # degree-1 primes have norm <= limit
    cross = math.isqrt(limit)
    small = ps[ps <= cross]
    large = ps[ps > cross]
    slots: list[tuple[int, int, int, int]] = []  # (norm, p, degree, count)
    if len(small):
        pats = batch_degree_patterns(f, small)
        for i, p in enumerate(small.tolist()):
            for d in range(1, n + 1):
                c = int(pats[i, d - 1])
                if c and p**d <= limit:
                    slots.append((p**d, p, d, c))
    if len(large):
        nu_ps = batch_root_counts(f, large)
        for p, c in zip(large.tolist(), nu_ps.tolist()):
            if c:
                slots.append((p, p, 1, int(c)))
    slots.sort()
    return slots


def ideal_count(Y: int, ctx: FieldSpec, budget: int = 10**7) -> int:
    """Number of good-support ideals of Z[omega] with norm <= Y.

    Multiplicative DFS over prime-ideal slots sorted by norm; includes the
    unit ideal.  Bad-prime support is excluded (reported by callers).
    """
    if Y < 1:
        return 0
    if Y > budget:
        raise BudgetExceeded(f"Y = {Y} exceeds budget {budget}")
    slots = _prime_ideal_norm_table(ctx, int(Y))
    norms = [s[0] for s in slots]
    counts = [s[3] for s in slots]
    import sys

    sys.setrecursionlimit(10000)

    def count_from(i: int, cap: int) -> int:
        # ideals supported on slots[i:] with norm <= cap, incl. the unit ideal;
        # a slot holding c distinct primes of norm q contributes
        # C(t+c-1, c-1) exponent patterns of total q-exponent t
        cnt = 1
        for j in range(i, len(norms)):
            q = norms[j]
            if q > cap:
                break
            c = counts[j]
            t = 1
            qt = q
            while qt <= cap:
                cnt += math.comb(t + c - 1, c - 1) * count_from(j + 1, cap // qt)
                t += 1
                qt *= q
        return cnt

    return count_from(0, int(Y))


def gamma_estimate(Y: int, ctx: FieldSpec, budget: int = 10**7) -> float:
    """Weber-style estimator of the zeta residue: good-support ideals / Y.

    Converges to gamma_K times the product of (1 - 1/N(P)) over primes P
    above bad p (the exclusion factor); reports carry this caveat.
    """
    return ideal_count(Y, ctx, budget=budget) / Y


def squarefree_ideal_symbols(ctx: FieldSpec, limit: int, budget: int = 10**6):
    """Yield (factors, norm, mu, rho) over squarefree good-support ideals.

    factors is a tuple of (p, degree, label_index) triples; rho uses the
    closed-form group density (validated against rho() elsewhere).  The
    unit ideal is yielded first with factors=(), norm=1, mu=1, rho=1.
    """
    if limit > budget * 10:
        raise BudgetExceeded(f"limit {limit} exceeds budget")
    slots = []
    for (q, p, d, c) in _prime_ideal_norm_table(ctx, int(limit) - 1):
        for label in range(c):
            slots.append((q, p, d, label))
    slots.sort()
    norms = [s[0] for s in slots]
    m = ctx.m

    def rho_of(stack) -> Fraction:
        groups: dict[int, list[int]] = {}
        for (q, p, d, label) in stack:
            groups.setdefault(p, []).append(d)
        out = Fraction(1)
        for p, degs in groups.items():
            out *= rho_group_closed(degs, p, m)
        return out

    stack: list[tuple[int, int, int, int]] = []

    def dfs(i: int, norm_acc: int):
        yield (tuple(stack), norm_acc,
               -1 if len(stack) % 2 else 1, rho_of(stack))
        for j in range(i, len(slots)):
            q = norms[j]
            if norm_acc * q >= limit:
                break
            stack.append(slots[j])
            yield from dfs(j + 1, norm_acc * q)
            stack.pop()

    yield from dfs(0, 1)


def materialize_symbol(factors, ctx: FieldSpec) -> IdealSym:
    """Build a full IdealSym (with root labels) from (p, degree, index) triples."""
    out = []
    for (q, p, d, label) in factors:
        pis = [pi for pi in prime_ideals_above(p, ctx) if pi.degree == d]
        pis.sort(key=lambda pi: pi.label)
        out.append((pis[label], 1))
    return IdealSym(factors=tuple(out))


# --- exact ideal divisor function --------------------------------------------


def ideal_valuations(x, ctx: FieldSpec, fac: dict[int, int]) -> dict | None:
    """Valuations v_P(alpha) for alpha with norm factorization fac.

    alpha is the order element for incomplete vector x.  Returns
    {PrimeIdeal: v} or None when some p | N(alpha) is bad.  Good-p
    valuations come from Hensel-lifted factors: v_p(Res(g_lift, A)) = d*v_P.
    """
    A = list(embed(x, ctx))
    out: dict[PrimeIdeal, int] = {}
    for p, vp in fac.items():
        if is_bad_prime(p, ctx):
            return None
        assigned = 0
        for pi in prime_ideals_above(p, ctx):
            prec = vp + 1
            g = [c % p for c in pi.factor_coeffs]
            gl = hensel_lift_factor(list(ctx.f_coeffs), g, p, prec)
            r = resultant([c % p**prec for c in gl] , A) % p**prec
            v = 0
            while v < prec and r % p == 0 and r != 0:
                r //= p
                v += 1
            if r == 0:
                v = prec  # saturated; cannot happen for correct prec
            if v % pi.degree != 0:
                # valuation in the unramified completion is a multiple of d
                return None
            vP = v // pi.degree
            if vP:
                out[pi] = vP
                assigned += pi.degree * vP
        if assigned != vp:
            return None  # inconsistency guard
    return out


def ideal_tau(x, ctx: FieldSpec, fac: dict[int, int]) -> int | None:
    """tau of the ideal generated by alpha(x), or None if not resolvable."""
    vals = ideal_valuations(x, ctx, fac)
    if vals is None:
        return None
    return math.prod(v + 1 for v in vals.values())
