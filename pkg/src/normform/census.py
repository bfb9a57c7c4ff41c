"""Brute-force censuses behind the rarity estimates: F_p wedge vanishing
and Archimedean skew statistics."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

import numpy as np

from .errors import BudgetExceeded
from .fields import FieldSpec, mul_matrix
from .lattices import wedge_pair, colex_subsets


@dataclass
class CensusReport:
    """Tabulated census: grid of parameters, observed counts, reference values."""

    kind: str
    params: list[dict]
    rows: list[dict]
    max_ratio: float = 0.0
    notes: dict = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        return {
            "kind": self.kind,
            "params": self.params,
            "rows": self.rows,
            "max_ratio": self.max_ratio,
            "notes": self.notes,
        }

    def csv_rows(self):
        if not self.rows:
            return [], []
        header = list(self.rows[0].keys())
        return header, [[r[h] for h in header] for r in self.rows]


def constraint_row_tensors(ctx: FieldSpec) -> list[np.ndarray]:
    """Matrices R_0..R_{k-1} with constraint_rows(v)[i] == R_i @ v."""
    n, k = ctx.n, ctx.k
    mats = []
    unit_muls = []
    for j in range(n):
        e = [0] * n
        e[j] = 1
        unit_muls.append(mul_matrix(e, ctx))
    for i in range(k):
        R = np.zeros((n, n), dtype=np.int64)
        for j in range(n):
            for a in range(n):
                R[a, j] = unit_muls[j][n - 1 - i][a]
        mats.append(R)
    return mats


def fp_wedge_census(p: int, ctx: FieldSpec, budget: int = 10**8) -> int:
    """#{b in F_p^n : all k x k minors of the constraint matrix vanish mod p}.

    Exhaustive over F_p^n (budget-gated), vectorized for k <= 2; the rank
    test is equivalent to the vanishing of the wedge vector mod p.
    """
    n, k = ctx.n, ctx.k
    if p**n > budget:
        raise BudgetExceeded(f"p^n = {p**n} exceeds budget {budget}")
    tensors = constraint_row_tensors(ctx)
    # enumerate F_p^n as an (p^n, n) array
    total = p**n
    idx = np.arange(total, dtype=np.int64)
    B = np.empty((total, n), dtype=np.int64)
    for j in range(n):
        B[:, j] = idx % p
        idx //= p
    rows = [(B @ R.T) % p for R in tensors]
    if k == 0:
        return total
    if k == 1:
        mask = (rows[0] % p == 0).all(axis=1)
        return int(mask.sum())
    if k == 2:
        r0, r1 = rows
        mask = np.ones(total, dtype=bool)
        for a, b in colex_subsets(n, 2):
            det = (r0[:, a] * r1[:, b] - r0[:, b] * r1[:, a]) % p
            mask &= det == 0
            if not mask.any():
                break
        return int(mask.sum())
    # general k: per-point rank computation (slow path, tiny p only)
    count = 0
    for t in range(total):
        stack = np.stack([rows[i][t] for i in range(k)]) % p
        if _rank_mod_p(stack, p) < k:
            count += 1
    return count


def _rank_mod_p(mat: np.ndarray, p: int) -> int:
    m = mat.copy() % p
    rows, cols = m.shape
    r = 0
    for c in range(cols):
        piv = None
        for i in range(r, rows):
            if m[i, c] % p:
                piv = i
                break
        if piv is None:
            continue
        m[[r, piv]] = m[[piv, r]]
        inv = pow(int(m[r, c]), p - 2, p)
        m[r] = m[r] * inv % p
        for i in range(rows):
            if i != r and m[i, c]:
                m[i] = (m[i] - m[i, c] * m[r]) % p
        r += 1
        if r == rows:
            break
    return r


def fp_wedge_census_report(ctx: FieldSpec, primes: list[int],
                           budget: int = 10**8) -> CensusReport:
    """Census across primes with the reference power from the ambient theory.

    Pure fields compare count against p^(k-1), general fields against
    p^(2k-2); ratios are reported, never asserted to a theory constant.
    """
    k = ctx.k
    exponent = (k - 1) if ctx.pure_theta is not None else (2 * k - 2)
    rows = []
    maxr = 0.0
    for p in primes:
        c = fp_wedge_census(p, ctx, budget=budget)
        ref = p**exponent
        ratio = c / ref
        maxr = max(maxr, ratio)
        rows.append({"p": p, "count": c, "reference": ref, "ratio": ratio})
    return CensusReport(
        kind="fp_wedge",
        params=[{"f": list(ctx.f_coeffs), "k": k, "reference_exponent": exponent}],
        rows=rows,
        max_ratio=maxr,
    )


def skew_census(ctx: FieldSpec, B: int, samples: int, kappas: list[float],
                seed: int = 0) -> CensusReport:
    """Empirical frequency of small wedge_pair among random pairs.

    Pairs (b1, b2) are drawn uniformly from integer vectors with
    max-norm-scaled Euclidean length in [B, 2B]; for each kappa the report
    gives the fraction with 0 < ||wedge||^2 <= kappa^2 B^{4k} and the
    fraction with wedge identically zero (degenerate pairs), against the
    kappa^{1/k} reference shape.
    """
    rng = random.Random(seed)
    n, k = ctx.n, ctx.k
    lo2, hi2 = B * B, 4 * B * B

    def draw():
        while True:
            v = [rng.randint(-2 * B, 2 * B) for _ in range(n)]
            s = sum(x * x for x in v)
            if lo2 <= s <= hi2:
                return v

    pairs = [(draw(), draw()) for _ in range(samples)]
    norms_sq = []
    degenerate = 0
    for b1, b2 in pairs:
        w = wedge_pair(b1, b2, ctx)
        if w.is_zero():
            degenerate += 1
            norms_sq.append(0)
        else:
            norms_sq.append(w.norm_sq)
    scale = B ** (4 * k)
    rows = []
    for kappa in kappas:
        thresh = kappa * kappa * scale
        small = sum(1 for s in norms_sq if 0 < s <= thresh)
        incl = sum(1 for s in norms_sq if s <= thresh)  # degenerate pairs too
        freq = small / samples
        ref = kappa ** (1.0 / k) if kappa > 0 else 0.0
        rows.append({
            "kappa": kappa,
            "small_count": small,
            "frequency": freq,
            "frequency_incl_degenerate": incl / samples,
            "reference_shape": ref,
            "ratio": (freq / ref) if ref > 0 else 0.0,
        })
    return CensusReport(
        kind="skew",
        params=[{"f": list(ctx.f_coeffs), "k": k, "B": B,
                 "samples": samples, "seed": seed}],
        rows=rows,
        max_ratio=max((r["ratio"] for r in rows), default=0.0),
        notes={"degenerate_pairs": degenerate,
               "degenerate_frequency": degenerate / samples},
    )
