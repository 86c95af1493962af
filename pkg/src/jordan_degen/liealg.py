"""Bracket models of the Borel subalgebra b = h + n.

Basis order is ``[H_1, ..., H_n, X_alpha for alpha in canonical order]``.
Only positive brackets and the Cartan weights are stored, since every
computation downstream stays inside b.

Classical types come from explicit matrix realizations.  Exceptional types
come from a sign solve of the Jacobi identity over GF(2) with the known
magnitudes |N_{a,b}| = p + 1.  Both are then rescaled by signs so that
``[X_{alpha_i}, X_beta] = (p + 1) X_{beta + alpha_i}`` for every simple
``alpha_i`` and non-simple ``beta``.
"""

from fractions import Fraction

from .exact import (
    as_fraction, fmt_rational, mat_add, mat_comm, mat_scale, rref, zero_matrix,
)
from .roots import CLASSICAL, build_root_system, parse_type


class ConsistencyError(RuntimeError):
    """An internal identity that must hold by construction failed."""


class Element:
    """Sparse vector over the basis of b, keyed by basis index."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        self.coeffs = {}
        if coeffs:
            for k, c in coeffs.items():
                c = as_fraction(c)
                if c != 0:
                    self.coeffs[k] = c

    @classmethod
    def basis(cls, k, c=1):
        return cls({k: c})

    @classmethod
    def from_vector(cls, v):
        return cls({k: c for k, c in enumerate(v) if c != 0})

    def to_vector(self, dim):
        v = [Fraction(0)] * dim
        for k, c in self.coeffs.items():
            v[k] = c
        return v

    def is_zero(self):
        return not self.coeffs

    def support(self):
        return sorted(self.coeffs)

    def items(self):
        return sorted(self.coeffs.items())

    def __getitem__(self, k):
        return self.coeffs.get(k, Fraction(0))

    def __add__(self, other):
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, 0) + c
        return Element(out)

    def __neg__(self):
        return Element({k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, s):
        s = as_fraction(s)
        return Element({k: c * s for k, c in self.coeffs.items()})

    __rmul__ = __mul__

    def __truediv__(self, s):
        return self * (1 / as_fraction(s))

    def __eq__(self, other):
        return isinstance(other, Element) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(self.items()))

    def __repr__(self):
        return f"Element({dict(self.items())})"


def lin_comb(pairs):
    out = Element()
    for c, e in pairs:
        out = out + e * c
    return out


class LieModel:
    """Structure constants of b for one root system."""

    def __init__(self, sys, N):
        self.sys = sys
        self.n = sys.rank
        self.nroots = len(sys)
        self.dim = self.n + self.nroots
        self.N = dict(N)
        self.cartan_weights = [[sys.pairing(r, i) for r in sys.positive_roots]
                               for i in range(self.n)]
        # table[a] = {b: (a+b, N_ab)}
        self.table = [dict() for _ in range(self.nroots)]
        for (a, b), c in self.N.items():
            self.table[a][b] = (sys.sum_table[(a, b)], c)
        self.basis_order = [f"H{i + 1}" for i in range(self.n)] + \
            [sys.label(r) for r in sys.positive_roots]

    @property
    def type_tag(self):
        return self.sys.type_tag

    # basis access

    def x_index(self, root):
        return self.n + self.sys.idx(root)

    def X(self, root, c=1):
        return Element.basis(self.x_index(root), c)

    def H(self, i, c=1):
        """H_i with 1-based i."""
        return Element.basis(i - 1, c)

    def root_of_index(self, k):
        return None if k < self.n else self.sys.positive_roots[k - self.n]

    def height_of_index(self, k):
        return 0 if k < self.n else self.sys.positive_roots[k - self.n].height

    def label_of_index(self, k):
        return self.basis_order[k]

    def elem(self, terms):
        """Element from [(coeff, root_label_or_root)]."""
        out = {}
        for c, r in terms:
            k = self.x_index(r)
            out[k] = out.get(k, 0) + as_fraction(c)
        return Element(out)

    def N_of(self, a, b):
        """N_{a,b} on root indices, 0 when a + b is not a root."""
        return self.N.get((a, b), Fraction(0))

    def lam(self):
        """Regular nilpotent: sum of the simple root vectors."""
        return Element({self.x_index(a): 1 for a in self.sys.simple})

    # bracket

    def bracket(self, x, y):
        n = self.n
        out = {}
        for a, xa in x.coeffs.items():
            for b, yb in y.coeffs.items():
                if a < n:
                    if b < n:
                        continue
                    w = self.cartan_weights[a][b - n]
                    if w:
                        out[b] = out.get(b, 0) + w * xa * yb
                elif b < n:
                    w = self.cartan_weights[b][a - n]
                    if w:
                        out[a] = out.get(a, 0) - w * xa * yb
                else:
                    hit = self.table[a - n].get(b - n)
                    if hit is not None:
                        d, c = hit
                        out[d + n] = out.get(d + n, 0) + c * xa * yb
        return Element(out)

    def ad_power(self, x, v, k):
        for _ in range(k):
            v = self.bracket(x, v)
        return v

    # serialization

    def element_to_json(self, e):
        return [[self.basis_order[k], fmt_rational(c)] for k, c in e.items()]

    def element_from_json(self, pairs):
        idx = {lab: k for k, lab in enumerate(self.basis_order)}
        return Element({idx[lab]: Fraction(c) for lab, c in pairs})

    def dump(self):
        lab = self.sys.label
        roots = self.sys.positive_roots
        return {
            "type": self.sys.type_tag,
            "rank": self.n,
            "basis_order": list(self.basis_order),
            "pos_brackets": [[lab(roots[a]), lab(roots[b]), fmt_rational(c)]
                             for (a, b), c in sorted(self.N.items())],
        }


# ---------------------------------------------------------------------------
# GF(2) linear systems


def solve_gf2(equations, nvars):
    """Lexicographically smallest solution of a GF(2) affine system.

    ``equations`` is an iterable of ``(mask, rhs)`` with variable k at bit k.
    Variable 0 is the most significant for the lexicographic order: each
    equation is pivoted on its highest variable, so free variables are
    exactly those a greedy left-to-right choice may set to 0.
    Returns a list of bits, or None if the system is infeasible.
    """
    piv = {}
    for mask, rhs in equations:
        while mask:
            top = mask.bit_length() - 1
            hit = piv.get(top)
            if hit is None:
                piv[top] = (mask, rhs)
                break
            mask ^= hit[0]
            rhs ^= hit[1]
        else:
            if rhs:
                return None
    sol = [0] * nvars
    bits = 0
    for k in range(nvars):
        hit = piv.get(k)
        if hit is None:
            continue
        mask, rhs = hit
        v = rhs ^ (bin(mask & bits & ~(1 << k)).count("1") & 1)
        sol[k] = v
        if v:
            bits |= 1 << k
    return sol


def full_string_down(sys, a, b):
    """Largest p with beta - k*alpha a root (any sign) for k = 1..p."""
    ra, rb = sys.positive_roots[a].coords, sys.positive_roots[b].coords
    p = 0
    c = list(rb)
    while True:
        c = [x - y for x, y in zip(c, ra)]
        t = tuple(c)
        if t in sys.index or tuple(-x for x in t) in sys.index:
            p += 1
        else:
            return p


def positive_triples(sys):
    """Triples a < b < c of root indices whose sum is a root."""
    roots = sys.positive_roots
    idx = sys.index
    out = []
    m = len(roots)
    for a in range(m):
        ca = roots[a].coords
        for b in range(a + 1, m):
            ab = tuple(x + y for x, y in zip(ca, roots[b].coords))
            for c in range(b + 1, m):
                d = tuple(x + y for x, y in zip(ab, roots[c].coords))
                if d in idx:
                    out.append((a, b, c))
    return out


def jacobi_sign_solve(sys):
    """Positive structure constants from the Jacobi identity alone.

    Unknowns are the signs of N_{a,b} for a < b; magnitudes are p + 1.
    Each positive triple gives a three-term relation whose largest term
    must carry the sign opposite to the other two.
    """
    pairs = {}
    mag = {}
    for (a, b) in sys.sum_table:
        if a < b:
            pairs[(a, b)] = len(pairs)
        mag[(a, b)] = full_string_down(sys, a, b) + 1
    for (a, b), m in mag.items():
        if m != mag[(b, a)]:
            raise ConsistencyError("asymmetric string length")

    def term(a, b):
        if a < b:
            return 1 << pairs[(a, b)], 0
        return 1 << pairs[(b, a)], 1

    eqs = []
    st = sys.sum_table
    for a, b, c in positive_triples(sys):
        terms = []
        for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
            yz = st.get((y, z))
            if yz is None:
                continue
            m1, c1 = term(y, z)
            m2, c2 = term(x, yz)
            terms.append((m1 ^ m2, c1 ^ c2, mag[(y, z)] * mag[(x, yz)]))
        mags = [t[2] for t in terms]
        if len(terms) == 2:
            if mags[0] != mags[1]:
                raise ConsistencyError("two-term Jacobi relation with unequal magnitudes")
            rel = [(0, 1)]
        elif len(terms) == 3:
            big = [k for k in range(3) if 2 * mags[k] == sum(mags)]
            if not big:
                raise ConsistencyError("three-term Jacobi relation with bad magnitudes")
            k = big[0]
            rel = [(k, j) for j in range(3) if j != k]
        else:
            raise ConsistencyError("isolated Jacobi term")
        for i, j in rel:
            eqs.append((terms[i][0] ^ terms[j][0], terms[i][1] ^ terms[j][1] ^ 1))
    sol = solve_gf2(eqs, len(pairs))
    if sol is None:
        raise ConsistencyError("Jacobi sign system infeasible")
    N = {}
    for (a, b), k in pairs.items():
        v = Fraction(mag[(a, b)] * (-1 if sol[k] else 1))
        N[(a, b)] = v
        N[(b, a)] = -v
    return N


def normalization_signs(sys, N):
    """Signs s_beta (non-simple beta) making N_{alpha_i, beta} = +(p+1).

    Returns a dict root index -> +1/-1 (simple roots map to +1), the
    lexicographically smallest solution in canonical root order.
    """
    nonsimple = [k for k, r in enumerate(sys.positive_roots) if r.height > 1]
    var = {k: v for v, k in enumerate(nonsimple)}
    eqs = []
    for i, a in enumerate(sys.simple):
        ai = sys.index[a.coords]
        for b in nonsimple:
            d = sys.sum_table.get((ai, b))
            if d is None:
                continue
            bit = 1 if N[(ai, b)] < 0 else 0
            eqs.append(((1 << var[b]) ^ (1 << var[d]), bit))
    sol = solve_gf2(eqs, len(nonsimple))
    if sol is None:
        raise ConsistencyError("normalization parity system infeasible")
    s = {k: 1 for k in range(len(sys))}
    for k, v in var.items():
        s[k] = -1 if sol[v] else 1
    return s


def rescale(sys, N, s):
    return {(a, b): c * s[a] * s[b] * s[sys.sum_table[(a, b)]] for (a, b), c in N.items()}


# ---------------------------------------------------------------------------
# invariant checks (used by construction and by the tests)


def check_antisymmetry(m):
    return all(m.N[(b, a)] == -c for (a, b), c in m.N.items())


def jacobi_violations(m, limit=None):
    """Positive triples where the Jacobi identity fails."""
    sys = m.sys
    bad = []
    st = sys.sum_table
    for a, b, c in positive_triples(sys):
        total = Fraction(0)
        for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
            yz = st.get((y, z))
            if yz is not None:
                total += m.N[(y, z)] * m.N_of(x, yz)
        if total != 0:
            bad.append((a, b, c))
            if limit and len(bad) >= limit:
                break
    return bad


def normalization_violations(m):
    sys = m.sys
    bad = []
    for a in sys.simple:
        ai = sys.index[a.coords]
        for b, r in enumerate(sys.positive_roots):
            if r.height == 1 or (ai, b) not in sys.sum_table:
                continue
            p = sys.string_down(r, a)
            if m.N[(ai, b)] != p + 1:
                bad.append((ai, b))
    return bad


def weight_violations(m):
    sys = m.sys
    bad = []
    for (a, b), d in sys.sum_table.items():
        for i in range(m.n):
            w = m.cartan_weights[i]
            if w[d] != w[a] + w[b]:
                bad.append((a, b, i))
    return bad


# ---------------------------------------------------------------------------
# classical matrix realizations


class MatrixRealization:
    """Matrices of H_i and X_alpha inside gl(matrix_size)."""

    def __init__(self, family, rank, size, form, h_mats, root_mats):
        self.family = family
        self.rank = rank
        self.matrix_size = size
        self.form_matrix = form
        self.h_matrices = h_mats
        self.root_matrices = root_mats
        self._pivots = []
        for X in root_mats:
            pos = next((i, j) for i in range(size) for j in range(size) if X[i][j] != 0)
            self._pivots.append(pos)

    def realize(self, e, n):
        M = zero_matrix(self.matrix_size)
        for k, c in e.coeffs.items():
            A = self.h_matrices[k] if k < n else self.root_matrices[k - n]
            for i, row in enumerate(A):
                for j, x in enumerate(row):
                    if x:
                        M[i][j] += c * x
        return M

    def decompose(self, M, n):
        """Coordinates of a matrix in b, or ConsistencyError if outside."""
        M = [list(r) for r in M]
        out = {}
        for k, X in enumerate(self.root_matrices):
            i, j = self._pivots[k]
            if M[i][j] != 0:
                c = M[i][j] / X[i][j]
                out[n + k] = c
                M = mat_add(M, X, -c)
        size = self.matrix_size
        diag = [M[i][i] for i in range(size)]
        if any(x != 0 for x in diag):
            aug = [[self.h_matrices[k][i][i] for k in range(n)] + [diag[i]] for i in range(size)]
            r, red = rref(aug, n + 1)
            for row in red[:r]:
                if row[n] != 0 and all(x == 0 for x in row[:n]):
                    raise ConsistencyError("diagonal part not in h")
            for row in red[:r]:
                p = next(k for k in range(n) if row[k] != 0)
                out[p] = row[n]
            for k in range(n):
                if k in out:
                    M = mat_add(M, self.h_matrices[k], -out[k])
        if any(x != 0 for r in M for x in r):
            raise ConsistencyError("matrix is not in the Borel subalgebra")
        return Element(out)


def classical_size(family, n):
    return {"A": n + 1, "B": 2 * n + 1, "C": 2 * n, "D": 2 * n}[family]


def form_matrix(family, n):
    size = classical_size(family, n)
    if family == "A":
        return None
    F = zero_matrix(size)
    for i in range(size):
        j = size - 1 - i
        F[i][j] = Fraction(-1) if (family == "C" and i >= n) else Fraction(1)
    return F


def _E(size, i, j, c=1):
    m = zero_matrix(size)
    m[i - 1][j - 1] = Fraction(c)
    return m


def simple_root_matrices(family, n):
    size = classical_size(family, n)
    out = []
    for i in range(1, n + 1):
        if family == "A":
            X = _E(size, i, i + 1)
        elif family == "B":
            X = mat_add(_E(size, i, i + 1), _E(size, 2 * n + 1 - i, 2 * n + 2 - i), -1)
        elif family == "C":
            if i < n:
                X = mat_add(_E(size, i, i + 1), _E(size, 2 * n - i, 2 * n + 1 - i), -1)
            else:
                X = _E(size, n, n + 1)
        else:
            if i < n:
                X = mat_add(_E(size, i, i + 1), _E(size, 2 * n - i, 2 * n + 1 - i), -1)
            else:
                X = mat_add(_E(size, n - 1, n + 1), _E(size, n, n + 2), -1)
        out.append(X)
    return out


def diagonal_of_eps(family, n, h):
    """Diagonal matrix of an element of h given by epsilon values."""
    size = classical_size(family, n)
    M = zero_matrix(size)
    if family == "A":
        for i in range(n + 1):
            M[i][i] = Fraction(h[i])
        return M
    for i in range(n):
        M[i][i] = Fraction(h[i])
        M[size - 1 - i][size - 1 - i] = -Fraction(h[i])
    return M


def _build_classical(family, n):
    sys = build_root_system(family, n)
    size = classical_size(family, n)
    roots = sys.positive_roots
    simple_mats = simple_root_matrices(family, n)
    mats = [None] * len(roots)
    for i, a in enumerate(sys.simple):
        mats[sys.index[a.coords]] = simple_mats[i]
    for k, r in enumerate(roots):
        if r.height == 1:
            continue
        for i, a in enumerate(sys.simple):
            rest = sys.sub(r, a)
            if rest is not None:
                break
        p = sys.string_down(rest, a)
        M = mat_comm(simple_mats[i], mats[sys.index[rest.coords]])
        mats[k] = mat_scale(M, Fraction(1, p + 1))
    h_mats = []
    for a in sys.simple:
        norm = sum(x * x for x in a.eps)
        h_mats.append(diagonal_of_eps(family, n, [2 * x / norm for x in a.eps]))
    real = MatrixRealization(family, n, size, form_matrix(family, n), h_mats, mats)
    N = {}
    for (a, b), d in sys.sum_table.items():
        C = mat_comm(mats[a], mats[b])
        X = mats[d]
        i, j = real._pivots[d]
        c = C[i][j] / X[i][j]
        if any(x != 0 for r in mat_add(C, X, -c) for x in r):
            raise ConsistencyError("commutator not proportional to the root matrix")
        N[(a, b)] = c
    s = normalization_signs(sys, N)
    N = rescale(sys, N, s)
    real.root_matrices = [mat_scale(M, s[k]) for k, M in enumerate(mats)]
    model = LieModel(sys, N)
    _check_model(model)
    return model, real


def _check_model(m):
    if not check_antisymmetry(m):
        raise ConsistencyError("antisymmetry fails")
    if normalization_violations(m):
        raise ConsistencyError("normalization fails")


_CACHE = {}


def classical_model(type_tag, rank):
    family, n, tag = parse_type(type_tag, rank)
    if family not in CLASSICAL:
        raise ValueError("classical_model needs type A, B, C or D")
    key = (family, n)
    if key not in _CACHE:
        _CACHE[key] = _build_classical(family, n)
    return _CACHE[key]


def normalized_model(type_tag):
    family, n, tag = parse_type(type_tag)
    if family in CLASSICAL:
        raise ValueError("normalized_model needs an exceptional type")
    key = (tag,)
    if key not in _CACHE:
        sys = build_root_system(tag)
        N = jacobi_sign_solve(sys)
        N = rescale(sys, N, normalization_signs(sys, N))
        m = LieModel(sys, N)
        _check_model(m)
        _CACHE[key] = m
    return _CACHE[key]


def build_model(type_tag, rank=None):
    """Model for any supported type; the realization is None if exceptional."""
    family, n, tag = parse_type(type_tag, rank)
    if family in CLASSICAL:
        return classical_model(family, n)
    return normalized_model(tag), None
