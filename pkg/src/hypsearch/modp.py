"""Modular images of the heavy polynomial work.

The searcher has to take gcds of determinant polynomials whose degrees run
into the hundreds.  Doing that over Q head-on is hopeless (coefficient
explosion), so the standard trick applies: compute images modulo word-size
primes, combine with CRT and rational reconstruction, and certify the lifted
answer exactly.  Nothing probabilistic ever escapes this module unflagged:

  * a gcd lifted from prime images is accepted only after exact division
    into both inputs (modular_rational_gcd), or
  * for the determinant pipeline, after agreement across extra independent
    primes, with every root candidate later re-confirmed in exact arithmetic
    by the caller.

The per-prime determinant evaluation is vectorized with numpy across all
interpolation points at once (int64 residues; products fit since p < 2**31).
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt

import numpy as np

from .exactalg import Poly

PRIMES = (
    2147483647, 2147483629, 2147483587, 2147483579, 2147483563, 2147483549,
    2147483543, 2147483497, 2147483489, 2147483477, 2147483423, 2147483399,
)


class PrimesExhaustedError(RuntimeError):
    """All configured primes were unlucky; caller must fall back."""


def frac_mod(value: Fraction, p: int) -> int:
    den = value.denominator % p
    if den == 0:
        raise ZeroDivisionError("denominator vanishes mod %d" % p)
    return value.numerator % p * pow(den, p - 2, p) % p


def poly_mod(poly: Poly, p: int) -> np.ndarray:
    """Coefficients of poly reduced mod p (lowest power first, untrimmed)."""
    return np.array([frac_mod(c, p) for c in poly.coeffs], dtype=np.int64)


def int_ladder(count: int) -> np.ndarray:
    """Evaluation points 0, 1, -1, 2, -2, ... as plain integers."""
    out = np.empty(count, dtype=np.int64)
    k = 0
    i = 0
    while i < count:
        if k == 0:
            out[i] = 0
            i += 1
        else:
            out[i] = k
            i += 1
            if i < count:
                out[i] = -k
                i += 1
        k += 1
    return out


_INV_TABLES: dict[int, np.ndarray] = {}


def _inverse_table(limit: int, p: int) -> np.ndarray:
    """inv[i] = i^-1 mod p for 1 <= i <= limit (cached per prime)."""
    cached = _INV_TABLES.get(p)
    if cached is not None and len(cached) > limit:
        return cached
    size = max(limit + 1, 512)
    inv = np.zeros(size, dtype=np.int64)
    inv[1] = 1
    for i in range(2, size):
        inv[i] = (p - (p // i) * inv[p % i] % p) % p
    _INV_TABLES[p] = inv
    return inv


def _modinv_vec(a: np.ndarray, p: int) -> np.ndarray:
    """Vectorized Fermat inverse (entries assumed nonzero; zeros map to 0)."""
    result = np.ones_like(a)
    base = a % p
    e = p - 2
    while e:
        if e & 1:
            result = result * base % p
        base = base * base % p
        e >>= 1
    return result


def eval_poly_vec(coeffs: np.ndarray, points: np.ndarray, p: int) -> np.ndarray:
    """Horner evaluation of one polynomial at a vector of residues."""
    acc = np.zeros_like(points)
    for c in coeffs[::-1]:
        acc = (acc * points + int(c)) % p
    return acc


def _scalar_det_mod(mat: list[list[int]], p: int) -> int:
    """Bareiss determinant mod p for a single point (with row pivoting)."""
    n = len(mat)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if mat[k][k] % p == 0:
            for i in range(k + 1, n):
                if mat[i][k] % p:
                    mat[k], mat[i] = mat[i], mat[k]
                    sign = -sign
                    break
            else:
                return 0
        pk = mat[k][k]
        inv_prev = pow(prev, p - 2, p)
        for i in range(k + 1, n):
            rik = mat[i][k]
            row_i = mat[i]
            row_k = mat[k]
            for j in range(k + 1, n):
                row_i[j] = (pk * row_i[j] - rik * row_k[j]) % p * inv_prev % p
        prev = pk
    return sign * mat[n - 1][n - 1] % p


def _probe_pivot_order(m: np.ndarray, p: int) -> list[int] | None:
    """Find a row order whose pivots are nonzero at some probe point.

    m has shape (n, n, T).  Returns the permutation, or None if the matrix
    looked singular at every probe (then every point falls back to the
    scalar path).
    """
    n, _, t_count = m.shape
    probes = sorted({t_count - 1, t_count - 2, (2 * t_count) // 3, t_count // 2, 1})
    for t in probes:
        if t < 0 or t >= t_count:
            continue
        work = [[int(m[i, j, t]) for j in range(n)] for i in range(n)]
        perm = list(range(n))
        ok = True
        prev = 1
        for k in range(n - 1):
            pivot = None
            for i in range(k, n):
                if work[i][k] % p:
                    pivot = i
                    break
            if pivot is None:
                ok = False
                break
            if pivot != k:
                work[k], work[pivot] = work[pivot], work[k]
                perm[k], perm[pivot] = perm[pivot], perm[k]
            pk = work[k][k]
            inv_prev = pow(prev, p - 2, p)
            for i in range(k + 1, n):
                rik = work[i][k]
                for j in range(k + 1, n):
                    work[i][j] = (pk * work[i][j] - rik * work[k][j]) % p * inv_prev % p
            prev = pk
        if ok and work[n - 1][n - 1] % p:
            return perm
    return None


def det_values_mod(m: np.ndarray, p: int) -> np.ndarray:
    """Determinants of an (n, n, T) stack of matrices mod p, one per point.

    Vectorized Bareiss with a fixed pivot order chosen at a generic probe
    point; points where that order hits a zero pivot are redone individually.
    """
    n, _, t_count = m.shape
    if n == 0:
        return np.ones(t_count, dtype=np.int64)
    original = m
    perm = _probe_pivot_order(m, p)
    sign = 1
    if perm is not None and perm != list(range(n)):
        seen = [False] * n
        for start in range(n):
            if seen[start]:
                continue
            length = 0
            j = start
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                length += 1
            if length % 2 == 0:
                sign = -sign
        m = m[perm, :, :]
    work = m.copy()
    good = np.ones(t_count, dtype=bool)
    prev = np.ones(t_count, dtype=np.int64)
    for k in range(n - 1):
        piv = work[k, k]
        good &= piv != 0
        if not good.any():
            break
        inv_prev = _modinv_vec(prev, p)
        block = (piv[None, None, :] * work[k + 1:, k + 1:, :]
                 - work[k + 1:, k, None, :] * work[k, None, k + 1:, :]) % p
        work[k + 1:, k + 1:, :] = block * inv_prev[None, None, :] % p
        prev = piv
    dets = sign * work[n - 1, n - 1, :] % p
    bad = np.nonzero(~good)[0]
    for t in bad:
        mat = [[int(original[i, j, t]) for j in range(n)] for i in range(n)]
        dets[t] = _scalar_det_mod(mat, p)
    return dets % p


def newton_coeffs_mod(xs: np.ndarray, ys: np.ndarray, p: int) -> np.ndarray:
    """Interpolating polynomial coefficients mod p through (xs[i], ys[i]).

    xs are small signed integers (the evaluation ladder)."""
    n = len(xs)
    c = ys.astype(np.int64) % p
    spread = int(np.max(xs) - np.min(xs))
    inv = _inverse_table(max(spread, 1), p)
    for k in range(1, n):
        diff = xs[k:] - xs[:-k]
        signs = diff < 0
        invd = inv[np.abs(diff)]
        invd = np.where(signs, (p - invd) % p, invd)
        c[k:] = (c[k:] - c[k - 1:-1]) % p * invd % p
    coeffs = np.zeros(n, dtype=np.int64)
    coeffs[0] = c[n - 1]
    deg = 0
    for k in range(n - 2, -1, -1):
        xk = int(xs[k]) % p
        head = coeffs[:deg + 1].copy()
        coeffs[1:deg + 2] = head
        coeffs[0] = 0
        coeffs[:deg + 1] = (coeffs[:deg + 1] - xk * head) % p
        coeffs[0] = (coeffs[0] + int(c[k])) % p
        deg += 1
    return coeffs


def _trim(a: np.ndarray) -> np.ndarray:
    nz = np.nonzero(a)[0]
    if len(nz) == 0:
        return a[:0]
    return a[:nz[-1] + 1]


def poly_gcd_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Monic gcd of two coefficient arrays mod p (empty array = zero poly)."""
    a = _trim(a % p)
    b = _trim(b % p)
    while len(b):
        b = b * pow(int(b[-1]), p - 2, p) % p
        da, db = len(a) - 1, len(b) - 1
        r = a.copy()
        for k in range(da - db, -1, -1):
            f = int(r[k + db])
            if f:
                r[k:k + db + 1] = (r[k:k + db + 1] - f * b) % p
        a, b = b, _trim(r[:db] if db else r[:0])
    if len(a):
        a = a * pow(int(a[-1]), p - 2, p) % p
    return a


def crt_combine(r1: int, m1: int, r2: int, m2: int) -> tuple[int, int]:
    inv = pow(m1 % m2, -1, m2)
    t = (r2 - r1) % m2 * inv % m2
    return r1 + m1 * t, m1 * m2


def rational_reconstruct(c: int, m: int) -> Fraction | None:
    """Lift c mod m to p/q with |p|, q <= sqrt(m/2), if such a lift exists."""
    c %= m
    bound = isqrt(m // 2)
    r0, r1 = m, c
    t0, t1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        t0, t1 = t1, t0 - q * t1
    if t1 == 0 or abs(t1) > bound or gcd(r1, abs(t1)) != 1:
        return None
    return Fraction(r1, t1)


class GcdLift:
    """Accumulates monic gcd images modulo several primes and lifts them.

    Images of larger degree than the smallest seen are discarded as unlucky
    (the gcd can only gain factors mod p, never lose them)."""

    def __init__(self):
        self.degree: int | None = None
        self.residues: list[np.ndarray] = []
        self.primes: list[int] = []

    def add(self, image: np.ndarray, p: int) -> None:
        d = len(image) - 1
        if self.degree is None or d < self.degree:
            self.degree = d
            self.residues = [image]
            self.primes = [p]
        elif d == self.degree:
            self.residues.append(image)
            self.primes.append(p)

    def lift(self) -> Poly | None:
        if self.degree is None:
            return None
        if self.degree == 0:
            return Poly([1])
        coeffs = []
        for j in range(self.degree + 1):
            r, m = int(self.residues[0][j]), self.primes[0]
            for img, p in zip(self.residues[1:], self.primes[1:]):
                r, m = crt_combine(r, m, int(img[j]), p)
            val = rational_reconstruct(r, m)
            if val is None:
                return None
            coeffs.append(val)
        return Poly(coeffs)


def reduce_exact_poly(poly: Poly, p: int) -> np.ndarray | None:
    """Like poly_mod but returns None when a denominator vanishes mod p."""
    try:
        return poly_mod(poly, p)
    except ZeroDivisionError:
        return None


def modular_rational_gcd(f: Poly, g: Poly) -> Poly | None:
    """Exact monic gcd of two rational polynomials via prime images.

    The lifted candidate is certified by exact division into both inputs.
    A coprimality verdict is rigorous on its own: if the images keep full
    degree and are coprime mod p, the resultant is nonzero mod p, hence
    nonzero over Z.  Returns None when the configured primes run out
    (caller falls back to plain Euclid).
    """
    fi = f.primitive_int_coeffs()
    gi = g.primitive_int_coeffs()
    lift = GcdLift()
    for p in PRIMES:
        if fi[-1] % p == 0 or gi[-1] % p == 0:
            continue
        fp = np.array([c % p for c in fi], dtype=np.int64)
        gp = np.array([c % p for c in gi], dtype=np.int64)
        image = poly_gcd_mod(fp, gp, p)
        if len(image) == 1:
            return Poly([1])
        lift.add(image, p)
        candidate = lift.lift()
        if candidate is not None:
            if _divides_exactly(candidate, f) and _divides_exactly(candidate, g):
                return candidate.monic()
    return None


def _divides_exactly(d: Poly, f: Poly) -> bool:
    if d.is_zero():
        return f.is_zero()
    return (f % d).is_zero()
