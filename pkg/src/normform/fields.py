"""Exact arithmetic in the order Z[omega] via integer coordinate vectors.

Elements are length-n integer vectors (a_1, ..., a_n) standing for
sum_i a_i * omega^(i-1), with omega a root of a monic irreducible
f in Z[X].  Coefficients are stored constant-term first throughout.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DegenerateDegree, NonMonic, ReducibleDetected, ZeroVector

Vec = tuple[int, ...]


@dataclass(frozen=True)
class FieldSpec:
    """Ambient data: degree n, omitted-coordinate count k, and f.

    f_coeffs holds the n+1 coefficients of monic f, constant term first
    (so f_coeffs[-1] == 1).  pure_theta is set when f == X^n - theta.
    """

    n: int
    k: int
    f_coeffs: Vec
    pure_theta: int | None = None
    degree_patterns: tuple[tuple[int, tuple[int, ...]], ...] = field(
        default=(), compare=False
    )

    @property
    def m(self) -> int:
        """Number of free coordinates n - k."""
        return self.n - self.k

    def to_json_dict(self) -> dict:
        return {"f": list(self.f_coeffs), "k": self.k}

    @classmethod
    def from_json_dict(cls, d: dict) -> "FieldSpec":
        f = list(d["f"])
        if not f or f[-1] != 1:
            raise NonMonic("serialized f must end with the leading 1")
        return make_context(f[:-1], int(d["k"]))


def _poly_content_free_gcd_degree(f: list[int]) -> int:
    """Degree of gcd(f, f') over Q; 0 means f squarefree."""
    a = [Fraction(c) for c in f]
    b = [Fraction((i) * c) for i, c in enumerate(f)][1:]
    while any(b):
        while b and b[-1] == 0:
            b.pop()
        if not b:
            break
        # a mod b
        r = a[:]
        while len(r) >= len(b) and any(r):
            while r and r[-1] == 0:
                r.pop()
            if len(r) < len(b):
                break
            q = r[-1] / b[-1]
            shift = len(r) - len(b)
            for i, bc in enumerate(b):
                r[shift + i] -= q * bc
            r.pop()
        a, b = b, r
    while a and a[-1] == 0:
        a.pop()
    return len(a) - 1


def _poly_mod_p_factor_degrees(f: list[int], p: int):
    """Degrees of irreducible factors of f mod p, or None if not squarefree."""
    from .splitting import degree_pattern_mod_p

    degs, squarefree = degree_pattern_mod_p(f, p)
    return degs if squarefree else None


def make_context(f_coeffs: list[int], k: int) -> FieldSpec:
    """Validate (f, k) and build the shared context.

    f_coeffs are the n low-order coefficients of monic f, constant term
    first; the leading 1 is implicit.  Rejects degree < 2, rational roots
    and repeated factors; irreducibility beyond that is the caller's
    assertion, spot-checked by factoring mod three pseudo-random good
    primes (patterns are recorded on the spec for reports).
    """
    f = [int(c) for c in f_coeffs] + [1]
    n = len(f) - 1
    if n < 2:
        raise DegenerateDegree(f"degree must be >= 2, got {n}")
    if not 0 <= k < n:
        raise DegenerateDegree(f"need 0 <= k < n, got k={k}, n={n}")
    # rational root test: candidates divide the constant term
    c0 = f[0]
    if c0 == 0:
        raise ReducibleDetected("rational root 0 (zero constant term)")
    for r in _divisors_signed(c0):
        if _poly_eval_int(f, r) == 0:
            raise ReducibleDetected(f"rational root {r}")
    if _poly_content_free_gcd_degree(f) > 0:
        raise ReducibleDetected("repeated factor (gcd(f, f') nontrivial)")
    # spot check: degree patterns mod three good primes, recorded for reports
    rng = random.Random(sum(abs(c) for c in f) * 1009 + n)
    small_primes = [p for p in range(101, 400) if _is_small_prime(p)]
    pats: list[tuple[int, tuple[int, ...]]] = []
    while len(pats) < 3:
        p = rng.choice(small_primes)
        if any(p == q for q, _ in pats):
            continue
        degs = _poly_mod_p_factor_degrees(f, p)
        if degs is None:
            continue  # f not squarefree mod p; skip bad primes
        pats.append((p, tuple(sorted(degs))))
    pure = None
    if all(c == 0 for c in f[1:n]):
        pure = -f[0]
    return FieldSpec(n=n, k=k, f_coeffs=tuple(f), pure_theta=pure,
                     degree_patterns=tuple(pats))


def _is_small_prime(p: int) -> bool:
    if p < 2:
        return False
    for q in range(2, math.isqrt(p) + 1):
        if p % q == 0:
            return False
    return True


def _divisors_signed(c: int) -> list[int]:
    c = abs(c)
    out = []
    for d in range(1, math.isqrt(c) + 1):
        if c % d == 0:
            out += [d, -d, c // d, -(c // d)]
    return sorted(set(out), key=abs)


def _poly_eval_int(f: list[int], x: int) -> int:
    acc = 0
    for c in reversed(f):
        acc = acc * x + c
    return acc


def diamond(a, b, ctx: FieldSpec) -> Vec:
    """Coordinate vector of (sum a_i omega^(i-1)) * (sum b_i omega^(i-1)).

    Schoolbook product followed by reduction mod f; one code path for both
    pure and general fields.
    """
    n = ctx.n
    if len(a) != n or len(b) != n:
        raise ValueError(f"operands must have length {n}")
    prod = [0] * (2 * n - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] += ai * bj
    f = ctx.f_coeffs
    for d in range(2 * n - 2, n - 1, -1):
        c = prod[d]
        if c:
            prod[d] = 0
            for j in range(n):
                if f[j]:
                    prod[d - n + j] -= c * f[j]
    return tuple(prod[:n])


def one(ctx: FieldSpec) -> Vec:
    return (1,) + (0,) * (ctx.n - 1)


def embed(x, ctx: FieldSpec) -> Vec:
    """Zero-pad an incomplete vector (length n-k) to a full order element."""
    x = tuple(int(t) for t in x)
    if len(x) != ctx.m:
        raise ValueError(f"incomplete vector must have length {ctx.m}")
    return x + (0,) * ctx.k


def mul_matrix(v, ctx: FieldSpec) -> list[list[int]]:
    """n x n integer matrix M with M @ x == diamond(x, v) for all x.

    Column i is diamond(e_i, v); row j is the linear functional giving
    coordinate j+1 of the product.
    """
    n = ctx.n
    cols = []
    for i in range(n):
        e = [0] * n
        e[i] = 1
        cols.append(diamond(e, v, ctx))
    return [[cols[i][j] for i in range(n)] for j in range(n)]


def det_int(mat) -> int:
    """Exact determinant of a square integer matrix (fraction-free Bareiss)."""
    m = [list(map(int, row)) for row in mat]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for i in range(n - 1):
        if m[i][i] == 0:
            for r in range(i + 1, n):
                if m[r][i]:
                    m[i], m[r] = m[r], m[i]
                    sign = -sign
                    break
            else:
                return 0
        for r in range(i + 1, n):
            for c in range(i + 1, n):
                m[r][c] = (m[r][c] * m[i][i] - m[r][i] * m[i][c]) // prev
        prev = m[i][i]
    return sign * m[-1][-1]


def norm(v, ctx: FieldSpec) -> int:
    """Field norm of the order element v: det of its multiplication matrix."""
    return det_int(mul_matrix(v, ctx))


def norm_form(x, ctx: FieldSpec) -> int:
    """The incomplete norm form: norm of the zero-padded embedding of x."""
    return norm(embed(x, ctx), ctx)


def constraint_rows(v, ctx: FieldSpec) -> list[list[int]]:
    """k x n matrix whose kernel is the lattice {x : (x*v) has last k coords 0}.

    Row i is the functional giving coordinate n-i (1-indexed) of
    diamond(x, v); in the pure case this equals T^i(rev v) with
    T(v)_j = v_{j+1} (j < n), theta*v_1 (j = n).
    """
    if all(t == 0 for t in v):
        raise ZeroVector("constraint rows of the zero vector")
    M = mul_matrix(v, ctx)
    return [M[ctx.n - 1 - i] for i in range(ctx.k)]


def t_iterate(v, theta: int) -> list[int]:
    """One application of the pure-field shift map T."""
    return list(v[1:]) + [theta * v[0]]


def reverse(v) -> list[int]:
    return list(v)[::-1]


# --- symbolic norm form -----------------------------------------------------

def _homogeneous_exponents(n: int, m: int) -> list[tuple[int, ...]]:
    """Exponent vectors of the degree-n monomials in m variables."""
    if m == 1:
        return [(n,)]
    out = []
    for e in range(n + 1):
        for rest in _homogeneous_exponents(n - e, m - 1):
            out.append((e,) + rest)
    return out


def norm_form_polynomial(ctx: FieldSpec) -> dict[tuple[int, ...], int]:
    """The incomplete norm form as {exponent tuple: integer coefficient}.

    Recovered by exact interpolation from point evaluations of the
    determinant definition; feasible for m = n - k <= 4.
    """
    m = ctx.m
    n = ctx.n
    exps = _homogeneous_exponents(n, m)
    rng = random.Random(17)
    for _attempt in range(10):
        pts = []
        seen = set()
        while len(pts) < len(exps):
            p = tuple(rng.randint(-n - 4, n + 4) for _ in range(m))
            if p not in seen:
                seen.add(p)
                pts.append(p)
        rows = [[Fraction(math.prod(x ** e for x, e in zip(pt, ex)))
                 for ex in exps] for pt in pts]
        rhs = [Fraction(norm_form(pt, ctx)) for pt in pts]
        sol = _solve_fraction(rows, rhs)
        if sol is None:
            continue
        coeffs = {}
        ok = True
        for ex, c in zip(exps, sol):
            if c.denominator != 1:
                ok = False
                break
            if c:
                coeffs[ex] = int(c)
        if not ok:
            continue
        for _ in range(4):  # verify on fresh points
            pt = tuple(rng.randint(-9, 9) for _ in range(m))
            val = sum(c * math.prod(x ** e for x, e in zip(pt, ex))
                      for ex, c in coeffs.items())
            if val != norm_form(pt, ctx):
                ok = False
                break
        if ok:
            return coeffs
    raise RuntimeError("norm form interpolation failed")  # pragma: no cover


def _solve_fraction(rows: list[list[Fraction]], rhs: list[Fraction]):
    """Solve a square rational system by Gaussian elimination; None if singular."""
    n = len(rows)
    a = [rows[i][:] + [rhs[i]] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return None
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [t * inv for t in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                fac = a[r][col]
                a[r] = [t - fac * s for t, s in zip(a[r], a[col])]
    return [a[i][n] for i in range(n)]


def eval_norm_poly_grid(coeffs, grids):
    """Evaluate a norm-form polynomial on broadcastable numpy coordinate grids."""
    import numpy as np

    acc = None
    for ex, c in coeffs.items():
        term = np.full_like(grids[0], int(c), dtype=np.int64)
        for g, e in zip(grids, ex):
            for _ in range(e):
                term = term * g
        acc = term if acc is None else acc + term
    return acc
