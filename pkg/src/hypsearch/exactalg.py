"""Exact rational arithmetic building blocks.

Everything here works over the rationals (``fractions.Fraction``) or over a
quadratic extension Q(sqrt(r)).  There is no floating point anywhere: values
are either exactly right or an exception is raised.

Contents:

  * QuadExt            -- elements a + b*sqrt(r) with exact field arithmetic
  * Poly               -- dense univariate polynomials, coefficients in Q or Q(sqrt(r))
  * poly_gcd           -- monic gcd (Euclid for small inputs, modular for large ones)
  * QMatrix, PolyMatrix-- thin exact matrix carriers
  * nullspace          -- right nullspace basis via reduced row echelon form
  * polymat_det        -- determinant of a polynomial matrix by evaluation/interpolation
  * extract_candidates -- rational and quadratic roots of a polynomial, leftovers flagged
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Iterable, Sequence, Union

Rational = Fraction

_TRIAL_LIMIT = 1_000_000


class DegreeBoundError(ValueError):
    """Raised by polymat_det when the supplied degree bound was too small."""


def parse_rational(text: str) -> Fraction:
    """Parse "p/q" or "p" into an exact Fraction."""
    return Fraction(text.strip())


def format_rational(value: Fraction) -> str:
    """Render as "p/q", or "p" when the denominator is 1."""
    return str(value)


def squarefree_decompose(n: int) -> tuple[int, int]:
    """Write n = r * s**2 with r squarefree (r carries the sign of n).

    Returns (r, s).  Uses trial division; falls back to sympy's factorint for
    stubborn leftover cofactors (rare at the sizes arising here).
    """
    if n == 0:
        return 0, 1
    sign = -1 if n < 0 else 1
    m = abs(n)
    r, s = 1, 1
    d = 2
    while d * d <= m and d <= _TRIAL_LIMIT:
        if m % d == 0:
            e = 0
            while m % d == 0:
                m //= d
                e += 1
            s *= d ** (e // 2)
            if e % 2:
                r *= d
        d += 1 if d == 2 else 2
    if m > 1:
        root = isqrt(m)
        if root * root == m:
            s *= root
        elif m <= _TRIAL_LIMIT * _TRIAL_LIMIT:
            # remaining cofactor has no prime factor <= sqrt(m): it is prime
            r *= m
        else:
            from sympy import factorint

            for p, e in factorint(m).items():
                s *= p ** (e // 2)
                if e % 2:
                    r *= p
    return sign * r, s


def sqrt_rational(value: Fraction) -> Union[Fraction, "QuadExt"]:
    """Exact square root of a rational: a Fraction if the value is a perfect
    square, otherwise a QuadExt with squarefree radicand."""
    if value == 0:
        return Fraction(0)
    rad, sq = squarefree_decompose(value.numerator * value.denominator)
    coeff = Fraction(sq, value.denominator)
    if rad == 1:
        return coeff
    return QuadExt(Fraction(0), coeff, rad)


class QuadExt:
    """An element a + b*sqrt(radicand) of a quadratic extension of Q.

    The radicand is a fixed squarefree integer (possibly negative, never 0 or
    1), so representation is unique and equality is coefficient-wise.
    Arithmetic mixes freely with int and Fraction.
    """

    __slots__ = ("a", "b", "radicand")

    def __init__(self, a, b, radicand: int):
        if radicand in (0, 1):
            raise ValueError("radicand must not be 0 or 1")
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.radicand = radicand

    def _coerce(self, other):
        if isinstance(other, QuadExt):
            if other.radicand != self.radicand and other.b and self.b:
                raise ValueError("mixed radicands %d and %d" % (self.radicand, other.radicand))
            return other if other.b else QuadExt(other.a, 0, self.radicand)
        if isinstance(other, (int, Fraction)):
            return QuadExt(other, 0, self.radicand)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadExt(self.a + o.a, self.b + o.b, self.radicand)

    __radd__ = __add__

    def __neg__(self):
        return QuadExt(-self.a, -self.b, self.radicand)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadExt(self.a - o.a, self.b - o.b, self.radicand)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadExt(o.a - self.a, o.b - self.b, self.radicand)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadExt(
            self.a * o.a + self.b * o.b * self.radicand,
            self.a * o.b + self.b * o.a,
            self.radicand,
        )

    __rmul__ = __mul__

    def inverse(self) -> "QuadExt":
        norm = self.a * self.a - self.b * self.b * self.radicand
        if norm == 0:
            raise ZeroDivisionError("division by zero in quadratic extension")
        return QuadExt(self.a / norm, -self.b / norm, self.radicand)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = QuadExt(1, 0, self.radicand)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self) -> "QuadExt":
        return QuadExt(self.a, -self.b, self.radicand)

    def is_rational(self) -> bool:
        return self.b == 0

    def to_fraction(self) -> Fraction:
        if self.b:
            raise ValueError("not a rational value: %r" % self)
        return self.a

    def __bool__(self):
        return bool(self.a or self.b)

    def __eq__(self, other):
        if isinstance(other, QuadExt):
            if self.b and other.b:
                return (self.radicand == other.radicand
                        and self.a == other.a and self.b == other.b)
            return self.b == other.b and self.a == other.a
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.radicand))

    def __repr__(self):
        return "QuadExt(%s, %s, %d)" % (self.a, self.b, self.radicand)

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        return "%s + %s*sqrt(%d)" % (self.a, self.b, self.radicand)

    def to_json(self) -> dict:
        return {"a": str(self.a), "b": str(self.b), "radicand": self.radicand}

    @staticmethod
    def from_json(obj: dict) -> "QuadExt":
        return QuadExt(Fraction(obj["a"]), Fraction(obj["b"]), obj["radicand"])


FieldElement = Union[Fraction, QuadExt]


def _field_zero_like(x: FieldElement):
    return QuadExt(0, 0, x.radicand) if isinstance(x, QuadExt) else Fraction(0)


class Poly:
    """Dense univariate polynomial, coefficients lowest power first.

    Coefficients are Fractions, or QuadExt elements when a computation runs
    inside a quadratic extension.  The zero polynomial has an empty
    coefficient tuple and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [c if isinstance(c, QuadExt) else Fraction(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)

    @staticmethod
    def constant(c) -> "Poly":
        return Poly([c])

    @staticmethod
    def x_power(k: int, c=1) -> "Poly":
        return Poly([0] * k + [c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self):
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        if not isinstance(other, Poly):
            other = Poly.constant(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Poly(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other):
        if not isinstance(other, Poly):
            other = Poly.constant(other)
        return self + (-other)

    def __rsub__(self, other):
        return Poly.constant(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return Poly([c * other for c in self.coeffs])
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if not ca:
                continue
            for j, cb in enumerate(b):
                out[i + j] = out[i + j] + ca * cb
        return Poly(out)

    __rmul__ = __mul__

    def __divmod__(self, other: "Poly"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        if self.degree < other.degree:
            return Poly(), self
        rem = list(self.coeffs)
        dq = self.degree - other.degree
        quot = [Fraction(0)] * (dq + 1)
        inv_lead = 1 / other.leading()
        for k in range(dq, -1, -1):
            c = rem[k + other.degree] * inv_lead
            quot[k] = c
            if c:
                for j, oc in enumerate(other.coeffs):
                    rem[k + j] = rem[k + j] - c * oc
        return Poly(quot), Poly(rem)

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def exact_div(self, other: "Poly") -> "Poly":
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ValueError("inexact polynomial division")
        return q

    def eval(self, x):
        acc = None
        for c in reversed(self.coeffs):
            acc = c if acc is None else acc * x + c
        if acc is None:
            return _field_zero_like(x) if isinstance(x, QuadExt) else Fraction(0)
        return acc

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        inv = 1 / self.leading()
        return Poly([c * inv for c in self.coeffs])

    def derivative(self) -> "Poly":
        return Poly([i * c for i, c in enumerate(self.coeffs)][1:])

    def shift(self, c) -> "Poly":
        """Compose with n -> n + c."""
        out = Poly()
        base = Poly([c, 1])
        power = Poly([1])
        for coeff in self.coeffs:
            out = out + power * coeff
            power = power * base
        return out

    def is_rational_poly(self) -> bool:
        return all(not isinstance(c, QuadExt) for c in self.coeffs)

    def primitive_int_coeffs(self) -> list[int]:
        """Integer coefficients after clearing denominators and content.

        Sign convention: positive leading coefficient.  Rational coefficients
        only."""
        if self.is_zero():
            return []
        den = 1
        for c in self.coeffs:
            den = den * c.denominator // gcd(den, c.denominator)
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for v in ints:
            g = gcd(g, v)
        if ints[-1] < 0:
            g = -g
        return [v // g for v in ints]

    def to_json(self) -> list:
        return [c.to_json() if isinstance(c, QuadExt) else str(c) for c in self.coeffs]

    @staticmethod
    def from_json(data: list) -> "Poly":
        return Poly([QuadExt.from_json(c) if isinstance(c, dict) else Fraction(c)
                     for c in data])

    def __repr__(self):
        return "Poly(%r)" % (list(map(str, self.coeffs)),)

    def __str__(self):
        return format_poly(self, "x")


def format_poly(p: Poly, var: str = "n") -> str:
    """Human-readable rendering like "3*n^2 - n + 1"."""
    if p.is_zero():
        return "0"
    parts = []
    for k in range(p.degree, -1, -1):
        c = p.coeffs[k]
        if not c:
            continue
        if isinstance(c, QuadExt) and c.b:
            cs = "(%s)" % c
            term = cs if k == 0 else ("%s*%s" % (cs, var) if k == 1 else "%s*%s^%d" % (cs, var, k))
            parts.append("+ " + term if parts else term)
            continue
        cf = c.a if isinstance(c, QuadExt) else c
        sign = "-" if cf < 0 else "+"
        mag = abs(cf)
        if k == 0:
            body = str(mag)
        else:
            head = "" if mag == 1 else "%s*" % mag
            body = "%s%s" % (head, var) if k == 1 else "%s%s^%d" % (head, var, k)
        if not parts:
            parts.append(body if cf > 0 else "-" + body)
        else:
            parts.append("%s %s" % (sign, body))
    return " ".join(parts)


def poly_from_roots(roots: Sequence) -> Poly:
    out = Poly([1])
    for r in roots:
        out = out * Poly([-r, 1])
    return out


def _euclid_gcd(f: Poly, g: Poly) -> Poly:
    while not g.is_zero():
        f, g = g, f % g
    return f.monic() if not f.is_zero() else f


def poly_gcd(f: Poly, g: Poly) -> Poly:
    """Monic greatest common divisor.  gcd(f, 0) = monic(f); gcd(0, 0) = 0.

    Small inputs (or quadratic-extension coefficients) go through plain
    Euclid.  Large rational inputs use a modular gcd whose result is verified
    by exact division into both inputs, so the answer is exact either way.
    """
    if f.is_zero():
        return g.monic()
    if g.is_zero():
        return f.monic()
    big = max(f.degree, g.degree) > 24
    if big and f.is_rational_poly() and g.is_rational_poly():
        from . import modp

        result = modp.modular_rational_gcd(f, g)
        if result is not None:
            return result
    return _euclid_gcd(f, g)


def squarefree_part(f: Poly) -> Poly:
    """The monic product of distinct irreducible factors of f."""
    if f.is_zero():
        return f
    if f.degree == 0:
        return Poly([1])
    g = poly_gcd(f, f.derivative())
    if g.degree == 0:
        return f.monic()
    return f.monic().exact_div(g).monic()


@dataclass(frozen=True)
class QMatrix:
    """Row-major exact rational matrix."""

    rows: int
    cols: int
    entries: tuple

    @staticmethod
    def from_rows(rows: Sequence[Sequence]) -> "QMatrix":
        r = len(rows)
        c = len(rows[0]) if rows else 0
        flat = []
        for row in rows:
            if len(row) != c:
                raise ValueError("ragged rows")
            flat.extend(row)
        return QMatrix(r, c, tuple(flat))

    def at(self, i: int, j: int):
        return self.entries[i * self.cols + j]

    def row_list(self) -> list[list]:
        return [list(self.entries[i * self.cols:(i + 1) * self.cols])
                for i in range(self.rows)]


@dataclass(frozen=True)
class PolyMatrix:
    """Row-major matrix of polynomials in x."""

    rows: int
    cols: int
    entries: tuple

    @staticmethod
    def from_rows(rows: Sequence[Sequence[Poly]]) -> "PolyMatrix":
        r = len(rows)
        c = len(rows[0]) if rows else 0
        flat = []
        for row in rows:
            if len(row) != c:
                raise ValueError("ragged rows")
            flat.extend(row)
        return PolyMatrix(r, c, tuple(flat))

    def at(self, i: int, j: int) -> Poly:
        return self.entries[i * self.cols + j]

    def eval_at(self, x: Fraction) -> QMatrix:
        return QMatrix(self.rows, self.cols,
                       tuple(p.eval(x) for p in self.entries))

    def row_degree_bound(self) -> int:
        """Sum over rows of the max entry degree: bounds the determinant degree."""
        total = 0
        for i in range(self.rows):
            d = max((self.at(i, j).degree for j in range(self.cols)), default=-1)
            if d < 0:
                return 0
            total += d
        return total


def rref(rows: list[list], ncols: int) -> tuple[list[list], list[int]]:
    """In-place reduced row echelon form over a field.  Returns (rows, pivot_cols).

    Works for Fraction entries and for QuadExt entries alike.
    """
    pivot_cols = []
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, len(rows)):
            if rows[i][c]:
                pivot = i
                break
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivot_cols.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivot_cols


def nullspace(m: QMatrix) -> list[list]:
    """Deterministic right-nullspace basis.

    Reduced row echelon form, pivot columns left to right; each free column
    in increasing order yields one basis vector with that free variable set
    to 1 and the other free variables 0.
    """
    return nullspace_rows(m.row_list(), m.cols)


def nullspace_rows(rows: list[list], ncols: int) -> list[list]:
    reduced, pivot_cols = rref([list(r) for r in rows], ncols)
    pivot_set = set(pivot_cols)
    free_cols = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for fc in free_cols:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for r, pc in enumerate(pivot_cols):
            vec[pc] = -reduced[r][fc]
        basis.append(vec)
    return basis


def qmatrix_det(m: QMatrix) -> Fraction:
    """Exact determinant of a rational matrix (Bareiss on cleared integers)."""
    if m.rows != m.cols:
        raise ValueError("determinant of non-square matrix")
    n = m.rows
    if n == 0:
        return Fraction(1)
    scale = Fraction(1)
    rows = []
    for i in range(n):
        row = [m.at(i, j) for j in range(n)]
        den = 1
        for v in row:
            den = den * v.denominator // gcd(den, v.denominator)
        scale *= den
        rows.append([int(v * den) for v in row])
    det = _int_bareiss_det(rows)
    return Fraction(det) / scale


def _int_bareiss_det(rows: list[list[int]]) -> int:
    n = len(rows)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if rows[k][k] == 0:
            for i in range(k + 1, n):
                if rows[i][k]:
                    rows[k], rows[i] = rows[i], rows[k]
                    sign = -sign
                    break
            else:
                return 0
        pk = rows[k][k]
        for i in range(k + 1, n):
            rik = rows[i][k]
            ri = rows[i]
            rk = rows[k]
            for j in range(k + 1, n):
                ri[j] = (pk * ri[j] - rik * rk[j]) // prev
        prev = pk
    return sign * rows[n - 1][n - 1]


def interpolation_points(count: int) -> list[Fraction]:
    """The fixed evaluation ladder 0, 1, -1, 2, -2, ..."""
    pts = []
    k = 0
    while len(pts) < count:
        if k == 0:
            pts.append(Fraction(0))
        else:
            pts.append(Fraction(k))
            if len(pts) < count:
                pts.append(Fraction(-k))
        k += 1
    return pts


def newton_interpolate(xs: Sequence[Fraction], ys: Sequence[Fraction]) -> Poly:
    """Exact polynomial through the given points (divided differences)."""
    n = len(xs)
    coeff = list(ys)
    for k in range(1, n):
        for j in range(n - 1, k - 1, -1):
            coeff[j] = (coeff[j] - coeff[j - 1]) / (xs[j] - xs[j - k])
    poly = Poly()
    for k in range(n - 1, -1, -1):
        poly = poly * Poly([-xs[k], 1]) + Poly.constant(coeff[k])
    return poly


def polymat_det(m: PolyMatrix, degree_bound: int) -> Poly:
    """Exact determinant polynomial via evaluation and interpolation.

    Evaluates at degree_bound + 1 points from the fixed ladder, interpolates,
    and verifies the result at one extra point; a mismatch means the caller's
    bound was too small and raises DegreeBoundError.
    """
    if m.rows != m.cols:
        raise ValueError("determinant of non-square matrix")
    if degree_bound < 0:
        raise ValueError("degree bound must be >= 0")
    pts = interpolation_points(degree_bound + 2)
    vals = [qmatrix_det(m.eval_at(t)) for t in pts[:degree_bound + 1]]
    det = newton_interpolate(pts[:degree_bound + 1], vals)
    check = pts[degree_bound + 1]
    if det.eval(check) != qmatrix_det(m.eval_at(check)):
        raise DegreeBoundError("degree bound %d too small for determinant" % degree_bound)
    return det


# --- candidate x values -----------------------------------------------------

@dataclass(frozen=True)
class RatCandidate:
    value: Fraction

    kind = "rat"

    def to_json(self) -> dict:
        return {"kind": "rat", "value": str(self.value)}


@dataclass(frozen=True)
class QuadCandidate:
    value: QuadExt
    minimal_poly: Poly

    kind = "quad"

    def to_json(self) -> dict:
        return {"kind": "quad", "value": self.value.to_json(),
                "minimal_poly": self.minimal_poly.to_json()}


@dataclass(frozen=True)
class AllXCandidate:
    kind = "allx"

    def to_json(self) -> dict:
        return {"kind": "allx"}


@dataclass(frozen=True)
class UnresolvedFactor:
    poly: Poly

    kind = "unresolved"

    def to_json(self) -> dict:
        return {"kind": "unresolved", "poly": self.poly.to_json()}


CandidateX = Union[RatCandidate, QuadCandidate, AllXCandidate, UnresolvedFactor]


def candidate_from_json(obj: dict) -> CandidateX:
    kind = obj["kind"]
    if kind == "rat":
        return RatCandidate(Fraction(obj["value"]))
    if kind == "quad":
        return QuadCandidate(QuadExt.from_json(obj["value"]),
                             Poly.from_json(obj["minimal_poly"]))
    if kind == "allx":
        return AllXCandidate()
    if kind == "unresolved":
        return UnresolvedFactor(Poly.from_json(obj["poly"]))
    raise ValueError("unknown candidate kind %r" % kind)


def _divisors(n: int) -> list[int]:
    """All positive divisors of |n| (n != 0)."""
    n = abs(n)
    factors = {}
    m = n
    d = 2
    while d * d <= m and d <= _TRIAL_LIMIT:
        while m % d == 0:
            factors[d] = factors.get(d, 0) + 1
            m //= d
        d += 1 if d == 2 else 2
    if m > 1:
        if m <= _TRIAL_LIMIT * _TRIAL_LIMIT:
            factors[m] = factors.get(m, 0) + 1
        else:
            from sympy import factorint

            for p, e in factorint(m).items():
                factors[p] = factors.get(p, 0) + e
    divs = [1]
    for p, e in factors.items():
        divs = [d * p ** k for d in divs for k in range(e + 1)]
    return sorted(divs)


def rational_roots(f: Poly) -> list[Fraction]:
    """All rational roots, by the rational-root theorem on the primitive
    integer form, each candidate verified by exact evaluation."""
    if f.is_zero():
        raise ValueError("zero polynomial has every root")
    coeffs = f.primitive_int_coeffs()
    shift = 0
    while coeffs and coeffs[0] == 0:
        coeffs.pop(0)
        shift += 1
    roots = []
    if shift:
        roots.append(Fraction(0))
    if len(coeffs) <= 1:
        return roots
    g = Poly(coeffs)
    for p in _divisors(coeffs[0]):
        for q in _divisors(coeffs[-1]):
            if gcd(p, q) != 1:
                continue
            for cand in (Fraction(p, q), Fraction(-p, q)):
                if g.eval(cand) == 0 and cand not in roots:
                    roots.append(cand)
    return sorted(roots)


def quadratic_roots(f: Poly) -> tuple[CandidateX, CandidateX]:
    """Roots of an irreducible (over Q) quadratic, as conjugate QuadExt values."""
    if f.degree != 2:
        raise ValueError("expected a quadratic")
    c0, c1, c2 = f.coeffs
    disc = c1 * c1 - 4 * c2 * c0
    root = sqrt_rational(disc)
    if not isinstance(root, QuadExt):
        raise ValueError("quadratic is reducible over Q")
    minimal = f.monic()
    r1 = QuadExt(-c1 / (2 * c2), root.b / (2 * c2), root.radicand)
    r2 = r1.conjugate()
    return (QuadCandidate(r1, minimal), QuadCandidate(r2, minimal))


def _factor_residual(f: Poly) -> list[Poly]:
    """Split a squarefree polynomial of degree >= 3 into irreducible factors
    over Q, via sympy.  Returns the monic factors."""
    import sympy

    x = sympy.Symbol("x")
    expr = sum(sympy.Rational(c.numerator, c.denominator) * x ** k
               for k, c in enumerate(f.coeffs))
    _, factors = sympy.factor_list(expr)
    out = []
    for fac, mult in factors:
        p = sympy.Poly(fac, x)
        coeffs = [Fraction(str(c)) for c in reversed(p.all_coeffs())]
        out.append(Poly(coeffs).monic())
    return out


def extract_candidates(f: Poly) -> list[CandidateX]:
    """Roots of f, multiplicities collapsed.

    Rational roots via the rational-root theorem, quadratic-irreducible roots
    as QuadExt conjugate pairs, and any residual factor of degree >= 3 is
    reported unsolved.  The zero polynomial is the caller's AllX case and is
    rejected here.
    """
    if f.is_zero():
        raise ValueError("zero polynomial: AllX is decided by the caller")
    work = squarefree_part(f)
    out: list[CandidateX] = []
    for r in rational_roots(work):
        out.append(RatCandidate(r))
        work = work.exact_div(Poly([-r, 1]))
    if work.degree >= 3:
        quads = []
        leftovers = []
        for fac in _factor_residual(work):
            if fac.degree == 2:
                quads.append(fac)
            elif fac.degree >= 3:
                leftovers.append(fac)
            else:
                raise AssertionError("rational root missed: %r" % fac)
        quads.sort(key=lambda p: tuple(p.coeffs))
        leftovers.sort(key=lambda p: tuple(p.coeffs))
        for q in quads:
            out.extend(quadratic_roots(q))
        for rem in leftovers:
            out.append(UnresolvedFactor(rem))
    elif work.degree == 2:
        out.extend(quadratic_roots(work))
    elif work.degree == 1:
        raise AssertionError("rational root missed: %r" % work)
    return _sort_candidates(out)


def _sort_candidates(cands: list[CandidateX]) -> list[CandidateX]:
    def key(c):
        if isinstance(c, RatCandidate):
            return (0, c.value, 0)
        if isinstance(c, QuadCandidate):
            return (1, c.value.radicand, c.value.a, c.value.b)
        return (2, tuple(str(x) for x in c.poly.coeffs))

    return sorted(cands, key=key)
