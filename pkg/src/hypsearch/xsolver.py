"""Finding every argument x that makes a family hypergeometric of degree <= d.

With all five grid parameters fixed and x symbolic, each series value
u_i(x) is a polynomial.  The fit equations P(i) u_i(x) = Q(i) u_{i+1}(x)
over two overlapping row windows give two square matrices whose determinants
must vanish at any x admitting a degree-d ratio.  The monic gcd of the two
determinant polynomials therefore contains every such x among its roots;
each extracted root is then confirmed by running the full guesser at that x
(in exact quadratic-extension arithmetic for irrational roots).

Two execution paths produce identical results:

  * exact: determinants via evaluation/interpolation over Q (polymat_det);
  * modular: the same evaluation/interpolation mod several word-size primes,
    with the (small) gcd lifted by CRT and rational reconstruction.

The modular path is the default for the sizes the searcher meets; every
positive finding it reports is re-certified exactly, and negative verdicts
require agreement across independent primes.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from . import modp
from .exactalg import (AllXCandidate, CandidateX, Poly, PolyMatrix,
                       QuadCandidate, RatCandidate, UnresolvedFactor,
                       extract_candidates, poly_gcd, polymat_det,
                       squarefree_part)
from .guesser import (ALL_ZERO, NOT_HYPERGEOMETRIC, DegenerateSequenceError,
                      GuessConfig, guess)
from .hyperseries import (FamilySpec, definedness, eval_terminating,
                          exists_nonneg_n, series_poly_in_x)

_WINDOW_SEARCH_HORIZON = 200
_ALLX_PRIME_VOTES = 3
_GCD_ONE_VOTES = 2
_EXACT_PATH_MAX_BOUND = 90


class UndefinedRowError(ValueError):
    """A required series row is undefined and no shifted window exists."""


def build_fit_matrix_x(family: FamilySpec, d: int,
                       row_indices: Sequence[int]) -> PolyMatrix:
    """One row per index i: columns i^j*u_i(x) then -i^j*u_{i+1}(x), j = 0..d."""
    rows = []
    for i in row_indices:
        u = series_poly_in_x(family, i)
        v = series_poly_in_x(family, i + 1)
        if u is None or v is None:
            raise UndefinedRowError("series undefined at index %d" % i)
        row = []
        power = Fraction(1)
        for _ in range(d + 1):
            row.append(u * power)
            power *= i
        power = Fraction(1)
        for _ in range(d + 1):
            row.append(v * (-power))
            power *= i
        rows.append(row)
    return PolyMatrix.from_rows(rows)


def _window_start(family: FamilySpec, d: int) -> int:
    """First s with u_s .. u_{s+2d+3} all defined."""
    need = 2 * d + 4
    run = 0
    start = 0
    for n in range(_WINDOW_SEARCH_HORIZON + need):
        if definedness(family, n):
            if run == 0:
                start = n
            run += 1
            if run == need:
                return start
        else:
            run = 0
    raise UndefinedRowError(
        "no run of %d defined indices within horizon for %r" % (need, family))


def _structural_allx(family: FamilySpec) -> bool:
    """Cases where the ratio is provably free of x.

    An upper slot identically zero makes the series constantly 1.  An upper
    slot equal to the lower slot cancels, collapsing the series to a power
    of (1-x), provided the other (witness) slot governs termination at
    every n."""
    for up in (family.upper1, family.upper2):
        if up.slope == 0 and up.intercept == 0:
            return True
    for cancel, other in ((family.upper2, family.upper1),
                          (family.upper1, family.upper2)):
        if cancel != family.lower or not other.is_termination_witness():
            continue
        # the cancelling slot must never cut the sum strictly before the
        # witness slot does, or the collapse identity breaks
        if not exists_nonneg_n(cancel, [(cancel, "le0"), (other - cancel, "lt0")]):
            return True
    return False


def _confirm_candidate(family: FamilySpec, x, d: int, confirm_extra: int):
    """Exact confirmation; returns the certificate or None.

    Drops candidates whose sequence is identically 1 (the trivial evaluation)
    or all zero past n = 0."""
    config = GuessConfig(degree_bound=d, confirm_extra=confirm_extra)
    try:
        result = guess(family, x, config)
    except DegenerateSequenceError:
        return None
    if result is ALL_ZERO or result is NOT_HYPERGEOMETRIC:
        return None
    ones = 0
    total = 0
    for n in range(config.sample_count + 1):
        v = eval_terminating(family, n, x)
        if v is None:
            continue
        total += 1
        if v == 1:
            ones += 1
    if total and ones == total:
        return None
    return result


def _candidates_from_gcd(gcd_poly: Poly, family: FamilySpec, d: int,
                         confirm_extra: int) -> list[tuple[CandidateX, object]]:
    """Extract roots of the gcd, drop x = 0, confirm the rest exactly."""
    found = []
    for cand in extract_candidates(gcd_poly):
        if isinstance(cand, RatCandidate):
            if cand.value == 0:
                continue
            cert = _confirm_candidate(family, cand.value, d, confirm_extra)
            if cert is not None:
                found.append((cand, cert))
        elif isinstance(cand, QuadCandidate):
            cert = _confirm_candidate(family, cand.value, d, confirm_extra)
            if cert is not None:
                found.append((cand, cert))
        else:
            found.append((cand, None))
    return found


def _solve_x_exact(family: FamilySpec, d: int, start: int,
                   confirm_extra: int) -> list[tuple[CandidateX, object]]:
    rows1 = list(range(start, start + 2 * d + 2))
    rows2 = list(range(start + 1, start + 2 * d + 3))
    m1 = build_fit_matrix_x(family, d, rows1)
    m2 = build_fit_matrix_x(family, d, rows2)
    det1 = polymat_det(m1, m1.row_degree_bound())
    det2 = polymat_det(m2, m2.row_degree_bound())
    if det1.is_zero() and det2.is_zero():
        return [(AllXCandidate(), None)]
    g = poly_gcd(det1, det2)
    if g.degree == 0:
        return []
    return _candidates_from_gcd(squarefree_part(g), family, d, confirm_extra)


def _rows_tensor(u_arrays: list[np.ndarray], rows: Sequence[int], d: int,
                 base: int, points: np.ndarray, p: int) -> np.ndarray:
    """Stack the fit matrix evaluated at every point: shape (R, 2d+2, T)."""
    n = len(rows)
    t_count = len(points)
    tensor = np.zeros((n, 2 * d + 2, t_count), dtype=np.int64)
    values = {}
    for i in set(rows) | {i + 1 for i in rows}:
        values[i] = modp.eval_poly_vec(u_arrays[i - base], points, p)
    for r, i in enumerate(rows):
        power = 1
        for j in range(d + 1):
            tensor[r, j] = power * values[i] % p
            tensor[r, d + 1 + j] = (p - power * values[i + 1] % p) % p
            power = power * i % p
    return tensor


def _solve_x_modular(family: FamilySpec, d: int, start: int,
                     confirm_extra: int) -> list[tuple[CandidateX, object]]:
    rows1 = list(range(start, start + 2 * d + 2))
    rows2 = list(range(start + 1, start + 2 * d + 3))
    u_polys = []
    for i in range(start, start + 2 * d + 4):
        u = series_poly_in_x(family, i)
        if u is None:
            raise UndefinedRowError("series undefined at index %d" % i)
        u_polys.append(u)

    def row_bound(rows):
        return sum(max(u_polys[i - start].degree, u_polys[i + 1 - start].degree)
                   for i in rows)

    bound1 = row_bound(rows1)
    bound2 = row_bound(rows2)
    t_count = max(bound1, bound2) + 1
    xs = modp.int_ladder(t_count)

    allx_votes = 0
    one_votes = 0
    lift = modp.GcdLift()
    lifted: Optional[Poly] = None
    confirmations = 0
    for p in modp.PRIMES:
        u_arrays = []
        ok = True
        for u in u_polys:
            arr = modp.reduce_exact_poly(u, p)
            if arr is None:
                ok = False
                break
            u_arrays.append(arr)
        if not ok:
            continue
        points = xs % p
        tensor1 = _rows_tensor(u_arrays, rows1, d, start, points, p)
        dets1 = modp.det_values_mod(tensor1, p)
        det1 = modp.newton_coeffs_mod(xs[:bound1 + 1], dets1[:bound1 + 1], p)
        tensor2 = _rows_tensor(u_arrays, rows2, d, start, points, p)
        dets2 = modp.det_values_mod(tensor2, p)
        det2 = modp.newton_coeffs_mod(xs[:bound2 + 1], dets2[:bound2 + 1], p)
        g_p = modp.poly_gcd_mod(det1, det2, p)
        if len(g_p) == 0:
            allx_votes += 1
            if allx_votes >= _ALLX_PRIME_VOTES and _allx_exact_spot_check(
                    family, d, start, rows1, rows2):
                return [(AllXCandidate(), None)]
            continue
        if len(g_p) == 1:
            one_votes += 1
            if one_votes >= _GCD_ONE_VOTES:
                return []
            continue
        lift.add(g_p, p)
        candidate = lift.lift()
        if candidate is None:
            continue
        if lifted is not None and candidate == lifted:
            confirmations += 1
        else:
            lifted = candidate
            confirmations = 0
        if confirmations >= 1:
            return _candidates_from_gcd(squarefree_part(lifted), family, d,
                                        confirm_extra)
    raise RuntimeError("modular solve did not stabilize for %r" % (family,))


def _allx_exact_spot_check(family: FamilySpec, d: int, start: int,
                           rows1, rows2) -> bool:
    """Exact rational determinant checks backing an all-x verdict."""
    from .exactalg import qmatrix_det

    m1 = build_fit_matrix_x(family, d, rows1)
    m2 = build_fit_matrix_x(family, d, rows2)
    for t in (Fraction(7, 3), Fraction(-11, 5), Fraction(13)):
        if qmatrix_det(m1.eval_at(t)) != 0 or qmatrix_det(m2.eval_at(t)) != 0:
            return False
    return True


def solve_x(family: FamilySpec, d: int, confirm_extra: int = 8,
            method: str = "auto") -> list[CandidateX]:
    """All confirmed x making the family hypergeometric of degree <= d.

    Returns AllX alone when the determinants vanish identically, otherwise
    the confirmed rational and quadratic roots of the determinant gcd
    (x = 0 and identically-1 evaluations suppressed), plus any unresolved
    factors of degree >= 3 flagged unconfirmed.
    """
    return [cand for cand, _ in solve_x_with_certificates(
        family, d, confirm_extra=confirm_extra, method=method)]


def solve_x_with_certificates(family: FamilySpec, d: int, confirm_extra: int = 8,
                              method: str = "auto"):
    """Like solve_x but pairs each confirmed candidate with its certificate."""
    if not family.has_termination_witness():
        raise ValueError("family does not terminate: %r" % (family,))
    start = _window_start(family, d)
    if _structural_allx(family):
        return [(AllXCandidate(), None)]
    if method == "auto":
        bound = sum((max(family.termination_index(i), family.termination_index(i + 1))
                     for i in range(start, start + 2 * d + 2)))
        method = "exact" if bound <= _EXACT_PATH_MAX_BOUND else "modular"
    if method == "exact":
        found = _solve_x_exact(family, d, start, confirm_extra)
    elif method == "modular":
        found = _solve_x_modular(family, d, start, confirm_extra)
    else:
        raise ValueError("unknown method %r" % method)
    return found
