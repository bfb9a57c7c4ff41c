"""Exact integer/rational linear algebra: kernels, Gram determinants, LLL.

Everything here works on plain Python ints / Fractions so results are
exact; matrices are lists of row lists.  Desk scale: dimensions <= ~12.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import DependentRows, RankTooLarge

Matrix = list[list[int]]


def gram_matrix(basis: Matrix) -> Matrix:
    return [[sum(a * b for a, b in zip(u, v)) for v in basis] for u in basis]


def det_bareiss(mat) -> int:
    """Exact determinant of an integer matrix (fraction-free elimination)."""
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


def gram_det(basis: Matrix) -> int:
    """det(B B^T): the squared covolume of the lattice spanned by the rows."""
    return det_bareiss(gram_matrix(basis))


def rank_rational(mat) -> int:
    """Rank over Q by fraction-free elimination."""
    m = [[Fraction(x) for x in row] for row in mat]
    rows = len(m)
    if rows == 0:
        return 0
    cols = len(m[0])
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(rows):
            if i != r and m[i][c]:
                fac = m[i][c] / m[r][c]
                m[i] = [a - fac * b for a, b in zip(m[i], m[r])]
        r += 1
        if r == rows:
            break
    return r


def kernel_oracle(constraints: Matrix, n: int | None = None) -> Matrix:
    """Saturated integer kernel of an r x n constraint matrix.

    Unimodular column reduction (Hermite-style elimination by gcd steps):
    C is transformed to [H | 0] while tracking the column operations on the
    identity; the trailing columns span ker(C) over Z exactly.
    Raises DependentRows if the rows are not linearly independent.
    """
    r = len(constraints)
    if n is None:
        n = len(constraints[0]) if r else 0
    A = [list(map(int, row)) for row in constraints]
    # columns of U: U starts as identity; we store U transposed (rows = columns)
    U = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    piv = 0
    for row in range(r):
        j0 = next((j for j in range(piv, n) if A[row][j]), None)
        if j0 is None:
            raise DependentRows(f"row {row} dependent on earlier rows")
        _col_swap(A, U, piv, j0)
        while True:
            j1 = next((j for j in range(piv + 1, n) if A[row][j]), None)
            if j1 is None:
                break
            if abs(A[row][j1]) < abs(A[row][piv]):
                _col_swap(A, U, piv, j1)
            q = A[row][j1] // A[row][piv]
            if q:
                for rr in range(r):
                    A[rr][j1] -= q * A[rr][piv]
                U[j1] = [a - q * b for a, b in zip(U[j1], U[piv])]
            if A[row][j1]:
                _col_swap(A, U, piv, j1)
        piv += 1
    return [U[j] for j in range(piv, n)]


def _col_swap(A, U, i, j):
    if i == j:
        return
    for row in A:
        row[i], row[j] = row[j], row[i]
    U[i], U[j] = U[j], U[i]


def kernel_sequential(constraints: Matrix, n: int) -> Matrix:
    """Saturated integer kernel, one constraint at a time.

    Independent of kernel_oracle: starting from Z^n, each functional c is
    imposed by gcd-combining the current basis so that exactly one basis
    vector carries the residual value c.x = g, which is then dropped.
    """
    basis = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for c in constraints:
        vals = [sum(ci * bi for ci, bi in zip(c, b)) for b in basis]
        # gcd-reduce (vals, basis) pairs so only position 0 keeps a nonzero value
        order = [i for i in range(len(basis))]
        carrier = None
        for i in order:
            if vals[i] == 0:
                continue
            if carrier is None:
                carrier = i
                continue
            # combine carrier and i
            a, b = vals[carrier], vals[i]
            g, x, y = _xgcd(a, b)
            # new carrier vector: x*B[carrier] + y*B[i]  (value g)
            # replacement for slot i:  -(b//g)*B[carrier] + (a//g)*B[i]  (value 0)
            bc, bi = basis[carrier], basis[i]
            basis[carrier] = [x * u + y * v for u, v in zip(bc, bi)]
            basis[i] = [-(b // g) * u + (a // g) * v for u, v in zip(bc, bi)]
            vals[carrier], vals[i] = g, 0
        if carrier is None:
            raise DependentRows("constraint dependent on earlier ones")
        basis = [b for i, b in enumerate(basis) if i != carrier]
    return basis


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def lll_reduce(basis: Matrix, delta: Fraction = Fraction(99, 100)) -> Matrix:
    """LLL reduction over exact rationals; rows span the same lattice."""
    b = [[Fraction(x) for x in row] for row in basis]
    nrows = len(b)
    if nrows <= 1:
        return [[int(x) for x in row] for row in b]

    def gs():
        ortho = []
        mu = [[Fraction(0)] * nrows for _ in range(nrows)]
        for i in range(nrows):
            v = b[i][:]
            for j in range(i):
                denom = _dot(ortho[j], ortho[j])
                mu[i][j] = _dot(b[i], ortho[j]) / denom if denom else Fraction(0)
                v = [x - mu[i][j] * y for x, y in zip(v, ortho[j])]
            ortho.append(v)
        return ortho, mu

    ortho, mu = gs()
    k = 1
    while k < nrows:
        for j in range(k - 1, -1, -1):
            if abs(mu[k][j]) > Fraction(1, 2):
                q = _round_frac(mu[k][j])
                b[k] = [x - q * y for x, y in zip(b[k], b[j])]
                ortho, mu = gs()
        lhs = _dot(ortho[k], ortho[k])
        rhs = (delta - mu[k][k - 1] ** 2) * _dot(ortho[k - 1], ortho[k - 1])
        if lhs >= rhs:
            k += 1
        else:
            b[k], b[k - 1] = b[k - 1], b[k]
            ortho, mu = gs()
            k = max(k - 1, 1)
    return [[int(x) for x in row] for row in b]


def _dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def _round_frac(x: Fraction) -> int:
    # round half away from zero is fine for LLL size reduction
    return int(math.floor(x + Fraction(1, 2)))


def enumerate_short_vectors(basis: Matrix, radius2: Fraction, limit: int = 10**7):
    """Yield all nonzero lattice vectors v with ||v||^2 <= radius2.

    Fincke-Pohst on the Gram matrix of an (ideally reduced) basis; exact
    rational arithmetic.  Each +-v pair is yielded once (canonical sign).
    Raises RankTooLarge beyond rank 10 and BudgetExceeded via limit.
    """
    from .errors import BudgetExceeded

    r = len(basis)
    if r == 0:
        return
    if r > 10:
        raise RankTooLarge(f"enumeration limited to rank 10, got {r}")
    G = [[Fraction(x) for x in row] for row in gram_matrix(basis)]
    # Cholesky-like decomposition: G = R^T diag(d) R with R unit upper triangular
    d = [Fraction(0)] * r
    R = [[Fraction(0)] * r for _ in range(r)]
    for i in range(r):
        R[i][i] = Fraction(1)
        s = G[i][i] - sum(d[j] * R[j][i] ** 2 for j in range(i))
        d[i] = s
        if s <= 0:
            raise DependentRows("basis rows not independent")
        for j in range(i + 1, r):
            R[i][j] = (G[i][j] - sum(d[t] * R[t][i] * R[t][j] for t in range(i))) / s
    coeffs = [0] * r
    count = 0

    def rec(level: int, remaining: Fraction, center_terms):
        nonlocal count
        if level < 0:
            if any(coeffs):
                yield tuple(coeffs)
            return
        center = -sum(R[level][j] * coeffs[j] for j in range(level + 1, r))
        if d[level] == 0:
            return
        span2 = remaining / d[level]
        # |x - center|^2 <= span2
        lo = _ceil_frac(center - _sqrt_upper(span2))
        hi = _floor_frac(center + _sqrt_upper(span2))
        for x in range(lo, hi + 1):
            diff = Fraction(x) - center
            used = d[level] * diff * diff
            if used > remaining:
                continue
            coeffs[level] = x
            count += 1
            if count > limit:
                raise BudgetExceeded("short-vector enumeration budget")
            yield from rec(level - 1, remaining - used, None)
        coeffs[level] = 0

    for c in rec(r - 1, Fraction(radius2), None):
        # canonical sign: first nonzero coefficient positive
        lead = next(x for x in reversed(c) if x)
        if lead < 0:
            continue
        v = [sum(c[i] * basis[i][j] for i in range(r)) for j in range(len(basis[0]))]
        yield list(c), v


def _sqrt_upper(x: Fraction) -> Fraction:
    """A rational upper bound for sqrt(x), tight enough for branch pruning."""
    if x <= 0:
        return Fraction(0)
    f = math.sqrt(float(x))
    guess = Fraction(int(math.ceil((f + 1e-9) * 2**20)), 2**20)
    while guess * guess < x:
        guess *= Fraction(1048577, 1048576)
    return guess


def _ceil_frac(x: Fraction) -> int:
    return -int((-x.numerator) // x.denominator) if x.denominator else int(x)


def _floor_frac(x: Fraction) -> int:
    return int(x.numerator // x.denominator)


def successive_minima(basis: Matrix, limit: int = 10**7) -> tuple[list[int], Matrix]:
    """Exact successive minima (squared) of the row lattice, rank <= 10.

    LLL-reduces first, enumerates inside the ball of radius = longest
    reduced vector, then greedily picks successively shortest vectors that
    are linearly independent.  Returns (squared minima, achieving vectors).
    """
    red = lll_reduce(basis)
    r = len(red)
    radius2 = max(sum(x * x for x in row) for row in red)
    cands = [(sum(x * x for x in v), v) for _, v in
             enumerate_short_vectors(red, Fraction(radius2), limit=limit)]
    cands.sort(key=lambda t: (t[0], t[1]))
    minima: list[int] = []
    chosen: Matrix = []
    for norm2, v in cands:
        if rank_rational(chosen + [v]) > len(chosen):
            minima.append(norm2)
            chosen.append(v)
            if len(chosen) == r:
                break
    return minima, chosen
