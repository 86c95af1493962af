"""Exact scalars and linear algebra.

Rationals are ``fractions.Fraction``.  Laurent polynomials in one variable
``t`` are stored as a valuation plus a tuple of coefficients.  Matrices are
plain lists of rows.
"""

from fractions import Fraction


def as_fraction(x):
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


def fmt_rational(q):
    """Serialize a rational as "p/q", dropping "/1"."""
    q = as_fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(s):
    return Fraction(s)


class LaurentPoly:
    """Laurent polynomial in t with rational coefficients.

    ``coeffs[k]`` is the coefficient of ``t**(val + k)``.  Both ends of
    ``coeffs`` are nonzero; the zero polynomial has ``val == 0`` and an
    empty tuple.
    """

    __slots__ = ("val", "coeffs")

    def __init__(self, val=0, coeffs=()):
        coeffs = [as_fraction(c) for c in coeffs]
        lo = 0
        while lo < len(coeffs) and coeffs[lo] == 0:
            lo += 1
        hi = len(coeffs)
        while hi > lo and coeffs[hi - 1] == 0:
            hi -= 1
        if lo == hi:
            self.val = 0
            self.coeffs = ()
        else:
            self.val = val + lo
            self.coeffs = tuple(coeffs[lo:hi])

    @classmethod
    def monomial(cls, c, e=0):
        return cls(e, (c,))

    @classmethod
    def from_dict(cls, d):
        d = {e: c for e, c in d.items() if c != 0}
        if not d:
            return ZERO
        lo, hi = min(d), max(d)
        return cls(lo, [d.get(e, 0) for e in range(lo, hi + 1)])

    def is_zero(self):
        return not self.coeffs

    @property
    def valuation(self):
        if not self.coeffs:
            raise ValueError("valuation of zero polynomial")
        return self.val

    @property
    def degree(self):
        if not self.coeffs:
            raise ValueError("degree of zero polynomial")
        return self.val + len(self.coeffs) - 1

    def coeff(self, e):
        k = e - self.val
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def terms(self):
        """(exponent, coefficient) pairs with nonzero coefficient."""
        return [(self.val + k, c) for k, c in enumerate(self.coeffs) if c != 0]

    def shift(self, k):
        """Multiply by t**k."""
        if not self.coeffs:
            return self
        return LaurentPoly(self.val + k, self.coeffs)

    def evaluate(self, t0):
        t0 = as_fraction(t0)
        return sum((c * t0 ** e for e, c in self.terms()), Fraction(0))

    def __add__(self, other):
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly.monomial(other)
        if not self.coeffs:
            return other
        if not other.coeffs:
            return self
        lo = min(self.val, other.val)
        hi = max(self.degree, other.degree)
        out = [Fraction(0)] * (hi - lo + 1)
        for k, c in enumerate(self.coeffs):
            out[self.val - lo + k] += c
        for k, c in enumerate(other.coeffs):
            out[other.val - lo + k] += c
        return LaurentPoly(lo, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.val, [-c for c in self.coeffs])

    def __sub__(self, other):
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly.monomial(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, LaurentPoly):
            other = as_fraction(other)
            if other == 0 or not self.coeffs:
                return ZERO
            return LaurentPoly(self.val, [c * other for c in self.coeffs])
        if not self.coeffs or not other.coeffs:
            return ZERO
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return LaurentPoly(self.val + other.val, out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            try:
                other = LaurentPoly.monomial(other)
            except (TypeError, ValueError):
                return NotImplemented
        return self.val == other.val and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.val, self.coeffs))

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for e, c in self.terms():
            parts.append(f"{fmt_rational(c)}*t^{e}" if e else fmt_rational(c))
        return " + ".join(parts)

    def to_pairs(self):
        return [[e, fmt_rational(c)] for e, c in self.terms()]

    @classmethod
    def from_pairs(cls, pairs):
        return cls.from_dict({int(e): Fraction(c) for e, c in pairs})


ZERO = LaurentPoly()
ONE = LaurentPoly(0, (1,))


def laurent_normalize(v):
    """Shift a vector of Laurent polynomials to minimal valuation 0.

    Returns ``(shift, normalized)`` with ``normalized = t**(-shift) * v``.
    """
    vals = [p.val for p in v if not p.is_zero()]
    if not vals:
        raise ValueError("zero generator")
    shift = min(vals)
    return shift, [p.shift(-shift) for p in v]


def rref(m, ncols=None):
    """Reduced row echelon form over the rationals.

    Returns ``(rank, reduced)`` where ``reduced`` has the same shape as
    ``m`` with zero rows at the bottom.  Pivots are the first nonzero entry
    scanning columns left to right.
    """
    rows = [[as_fraction(x) for x in r] for r in m]
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    nrows = len(rows)
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = None
        for i in range(r, nrows):
            if rows[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pr = rows[r]
        inv = 1 / pr[c]
        if inv != 1:
            for k in range(c, ncols):
                if pr[k]:
                    pr[k] *= inv
        nz = [k for k in range(c, ncols) if pr[k]]
        for i in range(nrows):
            if i != r:
                row = rows[i]
                f = row[c]
                if f:
                    for k in nz:
                        row[k] -= f * pr[k]
        r += 1
    return r, rows


def rank(m, ncols=None):
    return rref(m, ncols)[0]


def pivot_columns(reduced):
    cols = []
    for row in reduced:
        for k, x in enumerate(row):
            if x != 0:
                cols.append(k)
                break
    return cols


def kernel(m, ncols=None):
    """Basis of the right null space ``{v : m v = 0}``.

    One vector per free column, with a 1 in that column.
    """
    if ncols is None:
        ncols = len(m[0]) if m else 0
    r, red = rref(m, ncols)
    red = red[:r]
    pivots = pivot_columns(red)
    pivset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def row_space_basis(vectors, ncols):
    """Canonical basis (nonzero rows of the rref) of the span."""
    r, red = rref(vectors, ncols)
    return [tuple(row) for row in red[:r]]


def in_row_space(basis, v):
    """Membership test against a reduced echelon basis."""
    v = [as_fraction(x) for x in v]
    for row in basis:
        p = next(k for k, x in enumerate(row) if x != 0)
        f = v[p]
        if f:
            for k, x in enumerate(row):
                if x:
                    v[k] -= f * x
    return all(x == 0 for x in v)


def mat_mul(a, b):
    n, k = len(a), len(b)
    m = len(b[0]) if b else 0
    out = [[Fraction(0)] * m for _ in range(n)]
    for i in range(n):
        ai = a[i]
        oi = out[i]
        for j in range(k):
            x = ai[j]
            if x:
                bj = b[j]
                for c in range(m):
                    if bj[c]:
                        oi[c] += x * bj[c]
    return out


def mat_add(a, b, sb=1):
    return [[x + sb * y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(a, s):
    s = as_fraction(s)
    return [[x * s for x in r] for r in a]


def mat_comm(a, b):
    return mat_add(mat_mul(a, b), mat_mul(b, a), -1)


def zero_matrix(n, m=None):
    return [[Fraction(0)] * (n if m is None else m) for _ in range(n)]


def identity_matrix(n):
    z = zero_matrix(n)
    for i in range(n):
        z[i][i] = Fraction(1)
    return z


def unit_matrix(n, i, j, c=1):
    """c * E_{i,j} with 1-based indices."""
    z = zero_matrix(n)
    z[i - 1][j - 1] = as_fraction(c)
    return z


def transpose(a):
    return [list(r) for r in zip(*a)]


def is_zero_matrix(a):
    return all(x == 0 for r in a for x in r)
