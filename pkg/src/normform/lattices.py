"""Constraint lattices of the multiplication map and their wedge invariants.

Lambda_v is the set of integer x whose product with v has its last k
coordinates zero; lambda_pair imposes the constraints of two vectors at
once.  The wedge vector collects the maximal minors of the constraint
matrix; its squared length over its squared content equals det(Lambda)^2
exactly, which is the identity the whole Type I/II machinery leans on.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DegeneratePair, RankTooLarge, SearchExhausted, ZeroVector, ZeroWedge
from .fields import FieldSpec, constraint_rows
from .intlinalg import (
    det_bareiss,
    gram_det,
    kernel_sequential,
    lll_reduce,
    rank_rational,
    successive_minima,
)


@dataclass(frozen=True)
class IntLattice:
    """Full-row-rank integer basis of a sublattice of Z^ambient_dim."""

    ambient_dim: int
    basis: tuple[tuple[int, ...], ...]

    @property
    def rank(self) -> int:
        return len(self.basis)

    def contains(self, x) -> bool:
        """Exact membership test (solve over Q, check integrality)."""
        coeffs = _solve_in_basis(self.basis, x)
        return coeffs is not None and all(c.denominator == 1 for c in coeffs)

    def to_json(self):
        return [list(row) for row in self.basis]


def _solve_in_basis(basis, x):
    """Rational coefficients expressing x in the given rows, or None."""
    rows = [list(map(Fraction, row)) + [Fraction(0)] for row in basis]
    m = len(rows)
    if m == 0:
        return None if any(x) else []
    n = len(basis[0])
    # solve B^T c = x by elimination on the transpose
    a = [[Fraction(basis[i][j]) for i in range(m)] + [Fraction(x[j])]
         for j in range(n)]
    piv_cols = []
    r = 0
    for c in range(m):
        piv = next((i for i in range(r, n) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [t * inv for t in a[r]]
        for i in range(n):
            if i != r and a[i][c]:
                fac = a[i][c]
                a[i] = [t - fac * s for t, s in zip(a[i], a[r])]
        piv_cols.append(c)
        r += 1
    # consistency
    for i in range(r, n):
        if a[i][m] != 0:
            return None
    coeffs = [Fraction(0)] * m
    for i, c in enumerate(piv_cols):
        coeffs[c] = a[i][m]
    return coeffs


@dataclass(frozen=True)
class WedgeVec:
    """Vector of maximal minors of a constraint matrix, colex-indexed.

    subset_size is k (single vector) or 2k (pair); entries[i] is the minor
    on the i-th size-subset_size column set in colexicographic order.
    """

    subset_size: int
    entries: tuple[int, ...]

    @property
    def content(self) -> int:
        """gcd of the entries (0 when the wedge vanishes identically)."""
        return math.gcd(*(abs(e) for e in self.entries)) if self.entries else 0

    @property
    def norm_sq(self) -> int:
        return sum(e * e for e in self.entries)

    def is_zero(self) -> bool:
        return all(e == 0 for e in self.entries)


def colex_subsets(n: int, k: int) -> list[tuple[int, ...]]:
    """Size-k subsets of range(n) in colexicographic order."""
    return sorted(itertools.combinations(range(n), k),
                  key=lambda c: tuple(reversed(c)))


def _minor_vector(rows, n: int, k: int) -> tuple[int, ...]:
    if k == 0:
        return (1,)  # empty minor: det of the 0x0 matrix
    out = []
    for cols in colex_subsets(n, k):
        sub = [[rows[i][c] for c in cols] for i in range(k)]
        out.append(det_bareiss(sub))
    return tuple(out)


def wedge(v, ctx: FieldSpec) -> WedgeVec:
    """Wedge vector of v: all k x k minors of constraint_rows(v)."""
    rows = constraint_rows(v, ctx)
    return WedgeVec(ctx.k, _minor_vector(rows, ctx.n, ctx.k))


def wedge_pair(v1, v2, ctx: FieldSpec) -> WedgeVec:
    """Wedge vector of the stacked 2k x n constraint matrix of (v1, v2)."""
    rows = constraint_rows(v1, ctx) + constraint_rows(v2, ctx)
    return WedgeVec(2 * ctx.k, _minor_vector(rows, ctx.n, 2 * ctx.k))


def lambda_v(v, ctx: FieldSpec) -> IntLattice:
    """The rank n-k lattice {x in Z^n : (x*v) has last k coordinates 0}.

    Computed by sequential gcd elimination, deliberately a different
    algorithm from kernel_oracle so the two can cross-check each other.
    """
    rows = constraint_rows(v, ctx)
    basis = kernel_sequential(rows, ctx.n)
    return IntLattice(ctx.n, tuple(tuple(b) for b in basis))


def lambda_pair(v1, v2, ctx: FieldSpec) -> IntLattice:
    """Joint constraint lattice of rank n-2k; DegeneratePair if the wedge vanishes."""
    if all(t == 0 for t in v1) or all(t == 0 for t in v2):
        raise ZeroVector("lambda_pair of a zero vector")
    rows = constraint_rows(v1, ctx) + constraint_rows(v2, ctx)
    if rank_rational(rows) < 2 * ctx.k:
        raise DegeneratePair("wedge_pair(v1, v2) = 0: rank exceeds n - 2k")
    basis = kernel_sequential(rows, ctx.n)
    return IntLattice(ctx.n, tuple(tuple(b) for b in basis))


def det_squared_formula(w: WedgeVec) -> Fraction:
    """det(Lambda)^2 from the wedge alone: ||wedge||^2 / content^2."""
    if w.is_zero():
        raise ZeroWedge("wedge vector vanishes")
    d = w.content
    return Fraction(w.norm_sq, d * d)


def lattice_det_sq(lat: IntLattice) -> int:
    """det(Lambda)^2 = det(B B^T), exact."""
    return gram_det([list(row) for row in lat.basis])


@dataclass(frozen=True)
class ReducedBasis:
    """LLL basis together with exact successive minima data.

    minima_sq are the exact squared successive minima (enumeration), and
    near_orthogonality is the achieved constant c with
    ||sum l_i z_i|| >= c * sum ||l_i z_i||  (from Gram-Schmidt ratios).
    """

    lattice: IntLattice
    basis: tuple[tuple[int, ...], ...]
    minima_sq: tuple[int, ...]
    minima_vectors: tuple[tuple[int, ...], ...]
    near_orthogonality: float

    def length_ratios(self) -> list[float]:
        """||z_i||^2 / Z_i^2 per index: the achieved length-vs-minima constants."""
        return [sum(x * x for x in b) / m
                for b, m in zip(self.basis, self.minima_sq)]


def reduced_basis(lat: IntLattice, enum_limit: int = 10**7) -> ReducedBasis:
    """LLL-reduce and compute exact successive minima (rank <= 10)."""
    if lat.rank > 10:
        raise RankTooLarge(f"rank {lat.rank} > 10")
    red = lll_reduce([list(r) for r in lat.basis])
    red.sort(key=lambda row: (sum(x * x for x in row), row))
    minima, vecs = successive_minima(red, limit=enum_limit)
    c = _near_orthogonality_constant(red)
    return ReducedBasis(
        lattice=lat,
        basis=tuple(tuple(r) for r in red),
        minima_sq=tuple(minima),
        minima_vectors=tuple(tuple(v) for v in vecs),
        near_orthogonality=c,
    )


def _near_orthogonality_constant(basis) -> float:
    """c such that ||sum l_i z_i|| >= c sum ||l_i z_i|| for all real l.

    ||sum l_i z_i|| >= |l_i| ||z_i*|| for each i, so c = min_i(||z_i*||/||z_i||)/r
    works; this is the constant we report.
    """
    r = len(basis)
    ortho = []
    ratios = []
    for i in range(r):
        v = [Fraction(x) for x in basis[i]]
        for u in ortho:
            den = sum(a * a for a in u)
            mu = sum(a * b for a, b in zip(v, u)) / den
            v = [a - mu * b for a, b in zip(v, u)]
        ortho.append(v)
        num = sum(a * a for a in v)
        den = sum(a * a for a in basis[i])
        ratios.append(math.sqrt(float(num / den)))
    return min(ratios) / r if ratios else 1.0


def nice_basis(v, ctx: FieldSpec, search_bound: int = 2) -> ReducedBasis:
    """Basis of lambda_v(v) meeting the nice-basis contract.

    Starts from the LLL basis (lengths within a dimension factor of the
    exact minima), then replaces the target vector z_t by
    z_t + sum(l_i z_i) over the earlier vectors with bounded |l_i| until
    wedge_pair(z_1, z_t) != 0.  The target index t is k+1 in the pure case
    and 2k for general fields, matching the respective subspace-dimension
    bounds (k and 2k-1) that guarantee a bounded choice exists when
    n > 3k; the bound doubles once before SearchExhausted.
    """
    if all(t == 0 for t in v):
        raise ZeroVector("nice_basis of the zero vector")
    k = ctx.k
    target = k if ctx.pure_theta is not None else 2 * k - 1  # 0-based index
    lat = lambda_v(v, ctx)
    rb = reduced_basis(lat)
    if lat.rank < target + 1:
        raise RankTooLarge(f"lattice rank {lat.rank} < {target + 1}")
    # the sorted LLL rows are a genuine basis with ||z_i|| within a
    # dimension factor of Z_i; minima vectors alone need not be a basis
    base = [list(b) for b in rb.basis]
    z1 = base[0]
    zt = base[target]
    for bound in (search_bound, 2 * search_bound):
        for lams in itertools.product(range(-bound, bound + 1), repeat=target):
            cand = [zt[j] + sum(l * base[i][j] for i, l in enumerate(lams))
                    for j in range(ctx.n)]
            if all(c == 0 for c in cand):
                continue
            if not wedge_pair(z1, cand, ctx).is_zero():
                new_basis = [row[:] for row in base]
                new_basis[target] = cand
                return ReducedBasis(
                    lattice=lat,
                    basis=tuple(tuple(r) for r in new_basis),
                    minima_sq=rb.minima_sq,
                    minima_vectors=rb.minima_vectors,
                    near_orthogonality=_near_orthogonality_constant(new_basis),
                )
    raise SearchExhausted("no bounded combination makes the target wedge pair nonzero")


def degenerate_directions(v, ctx: FieldSpec):
    """Spanning set of the subspace where wedge_pair(., v) vanishes.

    The reversed constraint rows of v: x in their span has its own
    constraint rows dependent on those of v, which is the exact content of
    the tightness remark for the subspace-dimension bound.
    """
    return [row[::-1] for row in constraint_rows(v, ctx)]
