"""Independent reference implementations used only to check the library.

These deliberately avoid the code paths they verify: the determinant oracle
is fraction-free Bareiss elimination directly on polynomial entries, and the
series oracle builds each term from scratch out of Pochhammer quotients.
"""

from fractions import Fraction

from hypsearch.exactalg import Poly, PolyMatrix
from hypsearch.hyperseries import FamilySpec, pochhammer


def bareiss_poly_det(m: PolyMatrix) -> Poly:
    """Fraction-free Gaussian elimination over Q[x]; exact divisions only."""
    n = m.rows
    assert n == m.cols
    if n == 0:
        return Poly([1])
    rows = [[m.at(i, j) for j in range(n)] for i in range(n)]
    sign = 1
    prev = Poly([1])
    for k in range(n - 1):
        if rows[k][k].is_zero():
            for i in range(k + 1, n):
                if not rows[i][k].is_zero():
                    rows[k], rows[i] = rows[i], rows[k]
                    sign = -sign
                    break
            else:
                return Poly()
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = rows[k][k] * rows[i][j] - rows[i][k] * rows[k][j]
                rows[i][j] = num.exact_div(prev)
        prev = rows[k][k]
    det = rows[n - 1][n - 1]
    return det if sign == 1 else -det


def direct_series_value(family: FamilySpec, n: int, x):
    """Sum of Pochhammer-quotient terms, refactored for every k."""
    big_n = family.termination_index(n)
    a = family.upper1.at(n)
    b = family.upper2.at(n)
    c = family.lower.at(n)
    total = None
    for k in range(big_n + 1):
        denom = pochhammer(Fraction(1), k) * pochhammer(c, k)
        if denom == 0:
            return None
        term = pochhammer(a, k) * pochhammer(b, k) / denom * x ** k
        total = term if total is None else total + term
    return total
