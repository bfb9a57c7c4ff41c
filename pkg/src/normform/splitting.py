"""Factorization data of f mod p: degree patterns, roots, batch splitting.

Single-prime routines use plain polynomial arithmetic over F_p; the batch
routine computes X^p mod (f, p) for large vectors of primes at once with
numpy (square-and-multiply with per-prime bit masks) followed by a
vectorized gcd, which is what makes ideal counting to 2e6 feasible.
"""

from __future__ import annotations

import numpy as np

# --- single-prime polynomial arithmetic over F_p ----------------------------


def _pmod(poly: list[int], p: int) -> list[int]:
    out = [c % p for c in poly]
    while out and out[-1] == 0:
        out.pop()
    return out


def _pmul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    while out and out[-1] == 0:
        out.pop()
    return out


def _prem(a: list[int], b: list[int], p: int) -> list[int]:
    """a mod b over F_p (b nonzero)."""
    a = a[:]
    db = len(b) - 1
    inv = pow(b[-1], p - 2, p)
    while len(a) - 1 >= db and any(a):
        while a and a[-1] % p == 0:
            a.pop()
        if len(a) - 1 < db:
            break
        q = a[-1] * inv % p
        shift = len(a) - 1 - db
        for i, bc in enumerate(b):
            a[shift + i] = (a[shift + i] - q * bc) % p
        a.pop()
    while a and a[-1] % p == 0:
        a.pop()
    return a


def _pgcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _pmod(a, p), _pmod(b, p)
    while b:
        a, b = b, _prem(a, b, p)
    if a:
        inv = pow(a[-1], p - 2, p)
        a = [c * inv % p for c in a]
    return a


def _ppowmod(base: list[int], e: int, mod: list[int], p: int) -> list[int]:
    result = [1]
    base = _prem(base, mod, p)
    while e:
        if e & 1:
            result = _prem(_pmul(result, base, p), mod, p)
        base = _prem(_pmul(base, base, p), mod, p)
        e >>= 1
    return result


def degree_pattern_mod_p(f: list[int], p: int) -> tuple[list[int], bool]:
    """Degrees (with multiplicity) of the irreducible factors of f mod p.

    Returns (sorted degree list, squarefree flag).  Fast distinct-degree
    factorization when f is squarefree mod p; the rare non-squarefree case
    falls back to the full factorization so degrees still sum to deg f.
    """
    fp = _pmod(f, p)
    if len(fp) - 1 != len(f) - 1:
        raise ValueError("leading coefficient vanishes mod p; f must be monic")
    d1 = [(i * c) % p for i, c in enumerate(fp)][1:]
    g = _pgcd(fp, d1, p)
    if len(g) - 1 == 0:
        return sorted(_ddf_squarefree(fp, p)), True
    facs = monic_factors_mod_p(f, p)
    degs = sorted(len(fac) - 1 for fac, mult in facs for _ in range(mult))
    return degs, False


def _pquo(a: list[int], b: list[int], p: int) -> list[int]:
    """Exact quotient a / b over F_p."""
    a = a[:]
    db = len(b) - 1
    inv = pow(b[-1], p - 2, p)
    q = [0] * (len(a) - db)
    while len(a) - 1 >= db and any(a):
        while a and a[-1] % p == 0:
            a.pop()
        if len(a) - 1 < db:
            break
        c = a[-1] * inv % p
        shift = len(a) - 1 - db
        q[shift] = c
        for i, bc in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bc) % p
        a.pop()
    return q


def _pth_root(g: list[int], p: int) -> list[int]:
    """For g with only X^(p*i) terms over F_p, return h with h(X)^p = g."""
    return [g[i] for i in range(0, len(g), p)]


def _ddf_squarefree(g: list[int], p: int) -> list[int]:
    """Degrees of irreducible factors of squarefree monic g mod p."""
    degs = []
    h = [0, 1]  # X
    work = g[:]
    d = 0
    while len(work) - 1 > 0:
        d += 1
        if 2 * d > len(work) - 1:
            degs.append(len(work) - 1)
            break
        h = _ppowmod(h, p, work, p)
        diff = h[:]
        while len(diff) < 2:
            diff.append(0)
        diff[1] = (diff[1] - 1) % p
        g_d = _pgcd(work, diff, p)
        if len(g_d) > 1:
            deg_part = len(g_d) - 1
            degs += [d] * (deg_part // d)
            work = _pquo(work, g_d, p)
            h = _prem(h, work, p)
    return degs


def roots_mod_p(f: list[int], p: int) -> list[int]:
    """Distinct roots of f mod p, ascending.

    Direct scan below a crossover, Cantor-Zassenhaus style splitting of the
    linear part above it.
    """
    if p < 4096:
        return [x for x in range(p) if _poly_eval_mod(f, x, p) == 0]
    h = _ppowmod([0, 1], p, _pmod(f, p), p)
    diff = h[:]
    while len(diff) < 2:
        diff.append(0)
    diff[1] = (diff[1] - 1) % p
    g = _pgcd(_pmod(f, p), diff, p)
    return sorted(_split_linear(g, p, seed=1))


def _split_linear(g: list[int], p: int, seed: int) -> list[int]:
    """All roots of a monic product of distinct linear factors mod p."""
    deg = len(g) - 1
    if deg <= 0:
        return []
    if deg == 1:
        return [(-g[0]) % p]
    import random

    rng = random.Random(seed * 7919 + deg)
    while True:
        c = rng.randrange(p)
        shift = [(g_i) for g_i in g]
        t = _ppowmod([c, 1], (p - 1) // 2, shift, p)
        t = t[:]
        if not t:
            t = [0]
        t[0] = (t[0] - 1) % p
        h = _pgcd(g, t, p)
        if 0 < len(h) - 1 < deg:
            return _split_linear(h, p, seed + 1) + _split_linear(_pquo(g, h, p), p, seed + 1)


def _poly_eval_mod(f: list[int], x: int, p: int) -> int:
    acc = 0
    for c in reversed(f):
        acc = (acc * x + c) % p
    return acc


def monic_factors_mod_p(f: list[int], p: int) -> list[tuple[list[int], int]]:
    """Full factorization of monic f mod p as [(factor coeffs, multiplicity)].

    Squarefree part via gcd with the derivative, distinct-degree then
    equal-degree splitting (seeded, deterministic), multiplicities by exact
    division.  Desk scale only: small p or small degree.
    """
    import random

    rng = random.Random(0x5EED ^ p)

    def edf(g: list[int], d: int, out: list[list[int]]):
        deg = len(g) - 1
        if deg == 0:
            return
        if deg == d:
            out.append(g)
            return
        while True:
            a = [rng.randrange(p) for _ in range(deg)] + [1]
            if p == 2:
                acc = a
                t = a[:]
                for _ in range(d - 1):
                    acc = _prem(_pmul(acc, acc, p), g, p)
                    t = [(x + y) % p for x, y in _zip_pad(t, acc)]
                t = _pmod(t, p)
            else:
                t = _ppowmod(a, (p**d - 1) // 2, g, p)
                t = t[:] if t else [0]
                t[0] = (t[0] - 1) % p
            h = _pgcd(g, t, p)
            if 0 < len(h) - 1 < deg:
                edf(h, d, out)
                edf(_pquo(g, h, p), d, out)
                return

    def squarefree_irreducibles(g: list[int]) -> list[list[int]]:
        """Irreducible factors of squarefree monic g."""
        found: list[list[int]] = []
        h = [0, 1]
        rem = g
        d = 0
        while len(rem) - 1 > 0:
            d += 1
            if 2 * d > len(rem) - 1:
                found.append(rem)
                break
            h = _ppowmod(h, p, rem, p)
            diff = h[:]
            while len(diff) < 2:
                diff.append(0)
            diff[1] = (diff[1] - 1) % p
            gd = _pgcd(rem, diff, p)
            if len(gd) - 1 > 0:
                edf(gd, d, found)
                rem = _pquo(rem, gd, p)
                h = _prem(h, rem, p)
        return found

    # collect distinct irreducible factors of f by peeling squarefree parts
    work = _pmod(f, p)
    irreducibles: list[list[int]] = []
    while len(work) - 1 > 0:
        d1 = [(i * c) % p for i, c in enumerate(work)][1:]
        gc = _pgcd(work, d1, p)
        if len(gc) - 1 == 0:
            irreducibles += squarefree_irreducibles(work)
            break
        sqfree = _pquo(work, gc, p)
        if len(sqfree) - 1 > 0:
            irreducibles += squarefree_irreducibles(sqfree)
            work = gc
        else:
            work = _pth_root(work, p)  # work is a p-th power
    # deduplicate and compute multiplicities by exact division
    seen: dict[tuple[int, ...], list[int]] = {}
    for g in irreducibles:
        seen[tuple(g)] = g
    out = []
    for key in sorted(seen):
        g = seen[key]
        mult = 0
        rem = _pmod(f, p)
        while True:
            q, r = _pdivmod(rem, g, p)
            if r:
                break
            mult += 1
            rem = q
        out.append((list(g), mult))
    return out


def _zip_pad(a: list[int], b: list[int]):
    if len(a) < len(b):
        a = a + [0] * (len(b) - len(a))
    else:
        b = b + [0] * (len(a) - len(b))
    return zip(a, b)


# --- batched splitting over many primes --------------------------------------


def batch_root_counts(f: list[int], primes: np.ndarray) -> np.ndarray:
    """nu_p = number of distinct roots of f mod p, for an array of primes.

    Computes X^p mod (f, p) by vectorized square-and-multiply, then a
    vectorized polynomial gcd with f.  Primes must satisfy p^2 < 2^63.
    Entries where f mod p is not squarefree are still correct (root count
    of the gcd), but callers normally exclude bad primes anyway.
    """
    primes = np.asarray(primes, dtype=np.int64)
    n = len(f) - 1
    h = _batch_xp_mod_f(f, primes)
    # g = h - X
    g = h.copy()
    g[:, 1] = (g[:, 1] - 1) % primes
    fmat = np.tile(np.array(f, dtype=np.int64), (len(primes), 1)) % primes[:, None]
    return _batch_gcd_degree(fmat, g, primes)


def _batch_xp_mod_f(f: list[int], primes: np.ndarray) -> np.ndarray:
    """X^p mod (f, p) per prime; rows are coefficient vectors of length n."""
    n = len(f) - 1
    N = len(primes)
    p = primes
    result = np.zeros((N, n), dtype=np.int64)
    result[:, 0] = 1
    base = np.zeros((N, n), dtype=np.int64)
    if n == 1:
        base[:, 0] = (-f[0]) % p
    else:
        base[:, 1] = 1
    maxbits = int(primes.max()).bit_length()
    fall = np.array(f[:-1], dtype=np.int64)
    for bit in range(maxbits):
        mask = ((p >> bit) & 1).astype(bool)
        if mask.any():
            result[mask] = _batch_polymulmod(result[mask], base[mask], fall, p[mask])
        if bit + 1 < maxbits:
            base = _batch_polymulmod(base, base, fall, p)
    return result


def _batch_polymulmod(a: np.ndarray, b: np.ndarray, f_low: np.ndarray,
                      p: np.ndarray) -> np.ndarray:
    """(a*b) mod (f, p) rowwise; f monic with low coefficients f_low."""
    N, n = a.shape
    prod = np.zeros((N, 2 * n - 1), dtype=np.int64)
    for i in range(n):
        ai = a[:, i]
        prod[:, i : i + n] = (prod[:, i : i + n] + ai[:, None] * b) % p[:, None]
    for d in range(2 * n - 2, n - 1, -1):
        c = prod[:, d]
        lo = d - n
        prod[:, lo : lo + n] = (prod[:, lo : lo + n] - c[:, None] * f_low) % p[:, None]
        prod[:, d] = 0
    return prod[:, :n]


def _batch_gcd_degree(a: np.ndarray, b: np.ndarray, p: np.ndarray) -> np.ndarray:
    """Degree of gcd(a, b) mod p per row, for coefficient arrays a, b."""
    N = a.shape[0]
    w = max(a.shape[1], b.shape[1])
    A = np.zeros((N, w), dtype=np.int64)
    B = np.zeros((N, w), dtype=np.int64)
    A[:, : a.shape[1]] = a % p[:, None]
    B[:, : b.shape[1]] = b % p[:, None]
    degA = _batch_degree(A)
    degB = _batch_degree(B)
    out = np.full(N, -2, dtype=np.int64)
    active = np.ones(N, dtype=bool)
    # Euclid: at most 2*w steps since degrees strictly decrease
    for _ in range(2 * w + 2):
        zeroB = degB < 0
        done = active & zeroB
        out[done] = degA[done]
        active &= ~zeroB
        if not active.any():
            break
        # one remainder step on active rows: A <- A mod B
        idx = np.nonzero(active)[0]
        Ai, Bi, pi = A[idx], B[idx], p[idx]
        dA, dB = degA[idx], degB[idx]
        lead = Bi[np.arange(len(idx)), dB]
        inv = _batch_modinv(lead, pi)
        # repeatedly cancel the top coefficient while degA >= degB
        for _ in range(w):
            live = dA >= dB
            if not live.any():
                break
            rows = np.nonzero(live)[0]
            shift = (dA[rows] - dB[rows]).astype(np.int64)
            coef = Ai[rows, dA[rows]] * inv[rows] % pi[rows]
            # subtract coef * X^shift * B
            for j in range(w):
                tgt = shift + j
                ok = tgt < w
                r2 = rows[ok]
                Ai[r2, tgt[ok]] = (Ai[r2, tgt[ok]] - coef[ok] * Bi[r2, j]) % pi[r2]
            dA = _batch_degree(Ai)
        A[idx], B[idx] = Bi, Ai
        degA[idx], degB[idx] = dB, dA
    return out


def _batch_degree(a: np.ndarray) -> np.ndarray:
    nz = a != 0
    w = a.shape[1]
    return np.where(nz.any(axis=1), w - 1 - np.argmax(nz[:, ::-1], axis=1), -1)


def _batch_modinv(x: np.ndarray, p: np.ndarray) -> np.ndarray:
    """x^(p-2) mod p elementwise (p prime)."""
    e = p - 2
    result = np.ones_like(x)
    base = x % p
    maxbits = int(e.max()).bit_length()
    for bit in range(maxbits):
        mask = ((e >> bit) & 1).astype(bool)
        result[mask] = result[mask] * base[mask] % p[mask]
        base = base * base % p
    return result


def batch_degree_patterns(f: list[int], primes: np.ndarray) -> np.ndarray:
    """Factor-degree counts of f mod p for many primes at once.

    Returns an (N, n) int64 array A with A[i, d-1] = number of degree-d
    irreducible factors of f mod primes[i].  Valid for primes where f is
    squarefree mod p (good primes); computed from the root counts of f in
    F_{p^j} for j = 1..n via Moebius-style inversion.
    """
    primes = np.asarray(primes, dtype=np.int64)
    n = len(f) - 1
    N = len(primes)
    fall = np.array(f[:-1], dtype=np.int64)
    fmat = np.tile(np.array(f, dtype=np.int64), (N, 1)) % primes[:, None]
    # roots_j[j] = #roots of f in F_{p^(j+1)} = deg gcd(X^(p^(j+1)) - X, f)
    h = _batch_xp_mod_f(f, primes)  # X^p mod f
    hj = h.copy()
    counts = np.zeros((N, n), dtype=np.int64)
    for j in range(1, n + 1):
        if j > 1:
            hj = _batch_poly_pow_p(hj, f, primes)  # X^(p^j) = (X^(p^(j-1)))^p
        g = hj.copy()
        g[:, 1] = (g[:, 1] - 1) % primes
        counts[:, j - 1] = _batch_gcd_degree(fmat.copy(), g, primes)
    # counts[:, j-1] = sum_{e | j} e * a_e  ->  solve for a_e ascending
    A = np.zeros((N, n), dtype=np.int64)
    for j in range(1, n + 1):
        s = counts[:, j - 1].copy()
        for e in range(1, j):
            if j % e == 0:
                s -= e * A[:, e - 1]
        A[:, j - 1] = s // j
    return A


def _batch_poly_pow_p(base: np.ndarray, f: list[int], primes: np.ndarray) -> np.ndarray:
    """base^p mod (f, p) per row, exponent = the row's own prime."""
    n = len(f) - 1
    N = len(primes)
    p = primes
    fall = np.array(f[:-1], dtype=np.int64)
    result = np.zeros((N, n), dtype=np.int64)
    result[:, 0] = 1
    b = base.copy()
    maxbits = int(primes.max()).bit_length()
    for bit in range(maxbits):
        mask = ((p >> bit) & 1).astype(bool)
        if mask.any():
            result[mask] = _batch_polymulmod(result[mask], b[mask], fall, p[mask])
        if bit + 1 < maxbits:
            b = _batch_polymulmod(b, b, fall, p)
    return result


# --- Hensel lifting for prime-ideal valuations --------------------------------


def _pdivmod(a: list[int], b: list[int], p: int):
    a = a[:]
    db = len(b) - 1
    inv = pow(b[-1], p - 2, p)
    q = [0] * max(1, len(a) - db)
    while len(a) - 1 >= db and any(a):
        while a and a[-1] % p == 0:
            a.pop()
        if len(a) - 1 < db:
            break
        c = a[-1] * inv % p
        shift = len(a) - 1 - db
        q[shift] = c
        for i, bc in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bc) % p
        a.pop()
    while a and a[-1] % p == 0:
        a.pop()
    qq = q[:]
    while qq and qq[-1] == 0:
        qq.pop()
    return qq, a


def _psub(a: list[int], b: list[int], p: int):
    out = [(x - y) % p for x, y in _zip_pad(a, b)]
    while out and out[-1] == 0:
        out.pop()
    return out


def _bezout(g: list[int], h: list[int], p: int):
    """s, t with s*g + t*h == 1 mod p for coprime g, h."""
    r0, r1 = _pmod(g, p), _pmod(h, p)
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = _pdivmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, _psub(s0, _pmul(q, s1, p), p)
        t0, t1 = t1, _psub(t0, _pmul(q, t1, p), p)
    inv = pow(r0[-1], p - 2, p)
    return [c * inv % p for c in s0], [c * inv % p for c in t0]


def hensel_lift_factor(f: list[int], g: list[int], p: int, prec: int) -> list[int]:
    """Lift a monic irreducible factor g of f mod p to a factor mod p^prec.

    Requires f squarefree mod p (good prime).  Classic quadratic Hensel
    with Bezout tracking; both g and the cofactor h stay monic.
    """
    h = _pquo(_pmod(f, p), g, p)
    s, t = _bezout(g, h, p)
    m = p
    target = p**prec
    G, H, S, T = g[:], h[:], s[:], t[:]
    while m < target:
        m2 = min(m * m, target)

        def mul(a, b, q=m2):
            out = [0] * max(1, len(a) + len(b) - 1)
            for i, ai in enumerate(a):
                if ai:
                    for j, bj in enumerate(b):
                        out[i + j] = (out[i + j] + ai * bj) % q
            return _trim(out)

        def sub(a, b, q=m2):
            return _trim([(x - y) % q for x, y in _zip_pad(list(a), list(b))])

        def add(a, b, q=m2):
            return _trim([(x + y) % q for x, y in _zip_pad(list(a), list(b))])

        e = sub([c % m2 for c in f], mul(G, H))
        q_, r_ = _monic_divmod(mul(S, e), H, m2)
        Gp = add(G, add(mul(T, e), mul(q_, G)))
        Hp = add(H, r_)
        b = sub(add(mul(S, Gp), mul(T, Hp)), [1])
        c_, d_ = _monic_divmod(mul(S, b), Hp, m2)
        Sp = sub(S, d_)
        Tp = sub(T, add(mul(T, b), mul(c_, Gp)))
        G, H, S, T = Gp, Hp, Sp, Tp
        m = m2
    return G


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _monic_divmod(a: list[int], b: list[int], q: int):
    """Quotient and remainder of a by monic b, coefficients mod q."""
    a = [c % q for c in a]
    db = len(b) - 1
    assert b[-1] % q == 1, "divisor must be monic"
    quo = [0] * max(1, max(0, len(a) - db))
    while len(a) - 1 >= db and any(a):
        while a and a[-1] % q == 0:
            a.pop()
        if len(a) - 1 < db:
            break
        c = a[-1] % q
        shift = len(a) - 1 - db
        quo[shift] = c
        for i, bc in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bc) % q
        a.pop()
    return _trim(quo), _trim(a)
