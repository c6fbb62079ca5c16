"""Deciding whether a sequence is hypergeometric of bounded degree.

Write the consecutive ratio generically as P(n)/Q(n) with both degrees at
most d, turn each sample pair into the homogeneous equation
P(i) u_i = Q(i) u_{i+1} (never dividing, so zero values are harmless), and
solve the linear system for the 2d+2 unknown coefficients.  With a couple of
dozen more equations than unknowns, a surviving nullvector is then confirmed
on extra sample points in exact arithmetic.

Values may be rational or live in a quadratic extension; the fit runs in
whichever field the values inhabit.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .exactalg import Poly, QuadExt, nullspace_rows, poly_gcd
from .hyperseries import FamilySpec, eval_terminating

Value = Union[Fraction, QuadExt]


class DegenerateSequenceError(ValueError):
    """Too few usable consecutive defined pairs to attempt a fit."""


class _Outcome:
    __slots__ = ("name",)

    def __init__(self, name: str):
        self.name = name

    def __repr__(self):
        return self.name


NO_FIT = _Outcome("NoFit")
NOT_HYPERGEOMETRIC = _Outcome("NotHypergeometric")
ALL_ZERO = _Outcome("AllZero")


@dataclass
class GuessConfig:
    """Degree bound d, number of fit equations, and confirmation count."""

    degree_bound: int
    sample_count: Optional[int] = None
    confirm_extra: int = 8

    def __post_init__(self):
        if self.degree_bound < 0:
            raise ValueError("degree bound must be >= 0")
        if self.sample_count is None:
            self.sample_count = 2 * self.degree_bound + 7
        if self.sample_count < 2 * self.degree_bound + 3:
            raise ValueError("need more equations than the %d unknowns"
                             % (2 * self.degree_bound + 2))


@dataclass
class RatioCertificate:
    """Witness that u_{n+1}/u_n = p(n)/q(n), with q monic and gcd(p, q) = 1.

    start_index is the first n the fit covers (past any undefined points).
    fit_end is the index just after the fitting window; confirmation starts
    there."""

    p: Poly
    q: Poly
    start_index: int
    fit_end: int = 0

    def ratio_holds(self, u_n: Value, u_next: Value, n: int) -> bool:
        return u_next * self.q.eval(Fraction(n)) == u_n * self.p.eval(Fraction(n))

    def to_json(self) -> dict:
        return {"p": self.p.to_json(), "q": self.q.to_json(),
                "start_index": self.start_index}

    @staticmethod
    def from_json(obj: dict) -> "RatioCertificate":
        return RatioCertificate(Poly.from_json(obj["p"]), Poly.from_json(obj["q"]),
                                obj["start_index"])


def _usable_pairs(values: Sequence[Optional[Value]]) -> list[int]:
    return [i for i in range(len(values) - 1)
            if values[i] is not None and values[i + 1] is not None]


def _fit_rows(values, pair_indices, d):
    rows = []
    for i in pair_indices:
        u, v = values[i], values[i + 1]
        row = []
        power = Fraction(1)
        for _ in range(d + 1):
            row.append(power * u)
            power *= i
        power = Fraction(1)
        for _ in range(d + 1):
            row.append(-(power * v))
            power *= i
        rows.append(row)
    return rows


def _vector_to_certificate(vec, d, start_index, fit_end):
    p = Poly(vec[:d + 1])
    q = Poly(vec[d + 1:])
    if p.is_zero() or q.is_zero():
        return NO_FIT
    g = poly_gcd(p, q)
    if g.degree > 0:
        p = p.exact_div(g)
        q = q.exact_div(g)
    lead = q.leading()
    p = Poly([c / lead for c in p.coeffs])
    q = q.monic()
    if p.degree != q.degree:
        return NO_FIT
    return RatioCertificate(p, q, start_index, fit_end)


def _lex_key(vec) -> tuple:
    out = []
    for v in vec:
        if isinstance(v, QuadExt):
            out.append((v.a, v.b))
        else:
            out.append((v, Fraction(0)))
    return tuple(out)


def fit_ratio(values: Sequence[Optional[Value]], config: GuessConfig):
    """Fit p(i) u_i = q(i) u_{i+1} over the first sample_count usable pairs.

    Returns a RatioCertificate or NO_FIT.  Raises DegenerateSequenceError
    when fewer than 2d+3 usable consecutive pairs exist.  A nullspace of
    dimension > 1 retries with d+3 more pairs, then falls back to the
    lexicographically first basis vector (confirmation filters impostors).
    """
    d = config.degree_bound
    pairs = _usable_pairs(values)
    if len(pairs) < 2 * d + 3:
        raise DegenerateSequenceError(
            "only %d usable pairs, need %d" % (len(pairs), 2 * d + 3))
    window = pairs[:config.sample_count]
    basis = nullspace_rows(_fit_rows(values, window, d), 2 * d + 2)
    if len(basis) > 1 and len(pairs) > len(window):
        window = pairs[:config.sample_count + d + 3]
        basis = nullspace_rows(_fit_rows(values, window, d), 2 * d + 2)
    if not basis:
        return NO_FIT
    if len(basis) > 1:
        basis.sort(key=_lex_key)
    vec = basis[0]
    undefined_below = [i for i in range(window[-1] + 1) if values[i] is None]
    start_index = (undefined_below[-1] + 1) if undefined_below else 0
    cert = _vector_to_certificate(vec, d, start_index, window[-1] + 2)
    if cert is NO_FIT:
        return NO_FIT
    for i in window:
        if not cert.ratio_holds(values[i], values[i + 1], i):
            return NO_FIT
        for poly in (cert.p, cert.q):
            if values[i] and values[i + 1] and not poly.eval(Fraction(i)):
                return NO_FIT
    return cert


def confirm(cert: RatioCertificate, family: FamilySpec, x: Value,
            extra: int, after: Optional[int] = None) -> bool:
    """Check the fitted ratio on `extra` additional defined pairs.

    Undefined points are skipped; gives up (False) when fewer than `extra`
    defined pairs appear within 4*extra attempts past the fitting window."""
    n = cert.fit_end if after is None else after
    checked = 0
    attempts = 0
    prev = eval_terminating(family, n, x)
    while checked < extra and attempts < 4 * extra:
        nxt = eval_terminating(family, n + 1, x)
        if prev is not None and nxt is not None:
            if not cert.ratio_holds(prev, nxt, n):
                return False
            checked += 1
        n += 1
        attempts += 1
        prev = nxt
    return checked >= extra


def guess(family: FamilySpec, x: Value, config: GuessConfig):
    """Full pipeline: evaluate, fit, confirm.

    Returns a RatioCertificate, NOT_HYPERGEOMETRIC, or ALL_ZERO (every
    sampled value with n >= 1 is zero).  Raises DegenerateSequenceError when
    undefined points leave too few equations."""
    if isinstance(x, int):
        x = Fraction(x)
    d = config.degree_bound
    horizon = config.sample_count + (d + 3) + 4 * config.confirm_extra + 2
    values = [eval_terminating(family, n, x) for n in range(horizon + 1)]
    sampled = [v for n, v in enumerate(values[:config.sample_count + 1]) if n >= 1]
    if all(v is None or not v for v in sampled) and any(v is not None for v in sampled):
        return ALL_ZERO
    cert = fit_ratio(values, config)
    if cert is NO_FIT:
        return NOT_HYPERGEOMETRIC
    if not confirm(cert, family, x, config.confirm_extra):
        return NOT_HYPERGEOMETRIC
    return cert
