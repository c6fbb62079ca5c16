"""Terminating hypergeometric families and their exact evaluation.

A family is F(u1(n), u2(n); low(n); x) where each slot is linear in n.  In
search form u1 = -a*n for a positive integer a, so the series at index n
terminates after a*n + 1 terms.  More general slots are allowed so that
transformation images stay representable; the only hard requirement is a
termination witness: some upper slot must evaluate to a non-positive integer
at every n >= 0.

Evaluation is exact.  A point where the lower slot produces a zero
Pochhammer factor before the series terminates is Undefined, represented as
None -- callers skip such points rather than catching exceptions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional, Union

from .exactalg import Poly, QuadExt

Value = Union[Fraction, QuadExt]


@dataclass(frozen=True)
class LinearSlot:
    """A parameter slot slope*n + intercept."""

    slope: Fraction
    intercept: Fraction

    @staticmethod
    def of(slope, intercept) -> "LinearSlot":
        return LinearSlot(Fraction(slope), Fraction(intercept))

    def at(self, n: int) -> Fraction:
        return self.slope * n + self.intercept

    def __add__(self, other: "LinearSlot") -> "LinearSlot":
        return LinearSlot(self.slope + other.slope, self.intercept + other.intercept)

    def __sub__(self, other: "LinearSlot") -> "LinearSlot":
        return LinearSlot(self.slope - other.slope, self.intercept - other.intercept)

    def __neg__(self) -> "LinearSlot":
        return LinearSlot(-self.slope, -self.intercept)

    def scale(self, c) -> "LinearSlot":
        c = Fraction(c)
        return LinearSlot(self.slope * c, self.intercept * c)

    def is_termination_witness(self) -> bool:
        """True when the slot value is a non-positive integer for every n >= 0."""
        return (self.slope.denominator == 1 and self.intercept.denominator == 1
                and self.slope <= 0 and self.intercept <= 0)

    def is_integer_valued(self) -> bool:
        return self.slope.denominator == 1 and self.intercept.denominator == 1

    def to_json(self) -> list[str]:
        return [str(self.slope), str(self.intercept)]

    @staticmethod
    def from_json(data) -> "LinearSlot":
        return LinearSlot(Fraction(data[0]), Fraction(data[1]))


ONE_SLOT = LinearSlot(Fraction(0), Fraction(1))
HALF_SLOT = LinearSlot(Fraction(0), Fraction(1, 2))


@dataclass(frozen=True)
class FamilySpec:
    """The parameterized series F(upper1, upper2; lower; x)."""

    upper1: LinearSlot
    upper2: LinearSlot
    lower: LinearSlot

    @staticmethod
    def search_form(a: int, b: int, c: int, b0, c0) -> "FamilySpec":
        """F(-a*n, b*n + b0, c*n + c0, x) with a a positive integer."""
        if a < 1:
            raise ValueError("a must be a positive integer")
        return FamilySpec(
            LinearSlot.of(-a, 0),
            LinearSlot.of(b, Fraction(b0)),
            LinearSlot.of(c, Fraction(c0)),
        )

    def is_search_form(self) -> bool:
        u1 = self.upper1
        return (u1.intercept == 0 and u1.slope.denominator == 1 and u1.slope < 0
                and self.upper2.slope.denominator == 1
                and self.lower.slope.denominator == 1)

    def has_termination_witness(self) -> bool:
        return (self.upper1.is_termination_witness()
                or self.upper2.is_termination_witness())

    def termination_index(self, n: int) -> int:
        """Number of the last potentially nonzero term at this n.

        The smaller of the two upper cut-offs when both numerator slots hit
        non-positive integers."""
        cuts = []
        for slot in (self.upper1, self.upper2):
            v = slot.at(n)
            if v.denominator == 1 and v <= 0:
                cuts.append(-int(v))
        if not cuts:
            raise ValueError("family does not terminate at n=%d: %r" % (n, self))
        return min(cuts)

    def swap_uppers(self) -> "FamilySpec":
        return FamilySpec(self.upper2, self.upper1, self.lower)

    def to_json(self) -> dict:
        return {"upper1": self.upper1.to_json(),
                "upper2": self.upper2.to_json(),
                "lower": self.lower.to_json()}

    @staticmethod
    def from_json(obj: dict) -> "FamilySpec":
        return FamilySpec(LinearSlot.from_json(obj["upper1"]),
                          LinearSlot.from_json(obj["upper2"]),
                          LinearSlot.from_json(obj["lower"]))

    def describe(self) -> str:
        def slot_str(s: LinearSlot) -> str:
            if s.slope == 0:
                return str(s.intercept)
            head = "-n" if s.slope == -1 else ("n" if s.slope == 1 else "%s*n" % s.slope)
            if s.intercept == 0:
                return head
            return "%s%+s" % (head, s.intercept)

        return "F(%s, %s; %s; x)" % (slot_str(self.upper1), slot_str(self.upper2),
                                     slot_str(self.lower))


def _strict_floor(x: Fraction) -> int:
    from math import floor

    return int(x) - 1 if x.denominator == 1 else floor(x)


def _strict_ceil(x: Fraction) -> int:
    from math import ceil

    return int(x) + 1 if x.denominator == 1 else ceil(x)


def exists_nonneg_n(integral_slot: LinearSlot,
                    constraints: list[tuple[LinearSlot, str]]) -> bool:
    """Decide whether some integer n >= 0 has integral_slot(n) an integer
    while every (slot, op) constraint holds, op in {lt0, le0, gt0, ge0}.

    Exact: the integrality condition restricts n to an arithmetic
    progression (or all n, or none), and each linear constraint cuts that
    progression to an interval.
    """
    from math import ceil, floor

    s, c = integral_slot.slope, integral_slot.intercept
    den = s.denominator * c.denominator // gcd(s.denominator, c.denominator)
    alpha = int(s * den)
    beta = int(c * den)
    if alpha == 0:
        if beta % den:
            return False
        residue, modulus = 0, 1
    else:
        g = gcd(alpha, den)
        if beta % g:
            return False
        m = den // g
        residue = (-(beta // g) * pow(alpha // g, -1, m)) % m if m > 1 else 0
        modulus = m
    # n = residue + modulus * t, t >= 0
    lo, hi = 0, None
    for slot, op in constraints:
        a = slot.slope * modulus
        b = slot.slope * residue + slot.intercept
        if op in ("lt0", "le0"):
            a, b = -a, -b
            op = "gt0" if op == "lt0" else "ge0"
        # now require a*t + b > 0 (gt0) or >= 0 (ge0)
        if a == 0:
            if (op == "gt0" and b <= 0) or (op == "ge0" and b < 0):
                return False
        elif a > 0:
            t_min = _strict_ceil(-b / a) if op == "gt0" else ceil(-b / a)
            lo = max(lo, t_min)
        else:
            t_max = _strict_floor(-b / a) if op == "gt0" else floor(-b / a)
            hi = t_max if hi is None else min(hi, t_max)
    return hi is None or lo <= hi


def pochhammer(z: Fraction, k: int) -> Fraction:
    """Rising factorial (z)_k = z (z+1) ... (z+k-1), with (z)_0 = 1."""
    if k < 0:
        raise ValueError("pochhammer needs k >= 0")
    out = Fraction(1)
    z = Fraction(z)
    for i in range(k):
        out *= z + i
    return out


def definedness(family: FamilySpec, n: int) -> bool:
    """Whether the terminating sum at this n avoids lower-slot Pochhammer zeros.

    With N the termination index, the sum is defined iff (c(n))_k != 0 for
    all k <= N, i.e. c(n) is not a non-positive integer exceeding -N."""
    big_n = family.termination_index(n)
    c = family.lower.at(n)
    if c.denominator != 1 or c > 0:
        return True
    return -c >= big_n


def _terms(family: FamilySpec, n: int, x: Value):
    """Yield the terms of the terminating sum (assumes definedness)."""
    big_n = family.termination_index(n)
    a = family.upper1.at(n)
    b = family.upper2.at(n)
    c = family.lower.at(n)
    term: Value = Fraction(1) if not isinstance(x, QuadExt) else x * 0 + 1
    yield term
    for k in range(big_n):
        term = term * ((a + k) * (b + k)) / ((k + 1) * (c + k)) * x
        yield term


def eval_terminating(family: FamilySpec, n: int, x: Value) -> Optional[Value]:
    """Exact value of the series at index n and argument x; None if Undefined.

    The value lives in the same field as x (rational, or the quadratic
    extension of x)."""
    if isinstance(x, int):
        x = Fraction(x)
    if not definedness(family, n):
        return None
    total = None
    for term in _terms(family, n, x):
        total = term if total is None else total + term
    return total


def series_poly_in_x(family: FamilySpec, n: int) -> Optional[Poly]:
    """The series at index n with x left symbolic: a polynomial of degree <= N."""
    if not definedness(family, n):
        return None
    big_n = family.termination_index(n)
    a = family.upper1.at(n)
    b = family.upper2.at(n)
    c = family.lower.at(n)
    coeffs = [Fraction(1)]
    coef = Fraction(1)
    for k in range(big_n):
        coef = coef * ((a + k) * (b + k)) / ((k + 1) * (c + k))
        coeffs.append(coef)
    return Poly(coeffs)
