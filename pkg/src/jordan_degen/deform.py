"""Subspaces, one-parameter families of subspaces, and their limits at t = 0.

A family is a list of generators whose coordinates are Laurent polynomials
in t.  The limit is computed by saturation: normalize every generator to
valuation 0, evaluate at t = 0, and while the evaluations are dependent,
replace the top generator of each dependency by the dependency combination
(which is divisible by t) and renormalize.
"""

from fractions import Fraction
from math import factorial

from .exact import (
    LaurentPoly, ZERO, as_fraction, fmt_rational, in_row_space, mat_mul,
    rank, rref, kernel, transpose,
)
from .liealg import Element


class Subspace:
    """Subspace of a coordinate space, stored by its reduced echelon basis."""

    __slots__ = ("ambient_dim", "basis")

    def __init__(self, ambient_dim, vectors=()):
        self.ambient_dim = ambient_dim
        vectors = [list(v) for v in vectors]
        r, red = rref(vectors, ambient_dim) if vectors else (0, [])
        self.basis = tuple(tuple(row) for row in red[:r])

    @classmethod
    def from_elements(cls, elements, ambient_dim):
        return cls(ambient_dim, [e.to_vector(ambient_dim) for e in elements])

    @property
    def dim(self):
        return len(self.basis)

    def elements(self):
        return [Element.from_vector(v) for v in self.basis]

    def contains(self, x):
        if isinstance(x, Element):
            x = x.to_vector(self.ambient_dim)
        return in_row_space(self.basis, x)

    def contains_space(self, other):
        return all(self.contains(v) for v in other.basis)

    def __eq__(self, other):
        return (isinstance(other, Subspace) and self.ambient_dim == other.ambient_dim
                and self.basis == other.basis)

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def support(self):
        return sorted({k for v in self.basis for k, x in enumerate(v) if x != 0})

    def to_json(self, model=None):
        out = []
        for v in self.basis:
            e = Element.from_vector(v)
            if model is None:
                out.append([[k, fmt_rational(c)] for k, c in e.items()])
            else:
                out.append(model.element_to_json(e))
        return out

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"


def span_of_roots(model, roots):
    return Subspace.from_elements([model.X(r) for r in roots], model.dim)


# ---------------------------------------------------------------------------
# Laurent-coefficient elements and families


class LaurentElement:
    """Sparse vector with Laurent polynomial coordinates."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        self.coeffs = {k: p for k, p in (coeffs or {}).items() if not p.is_zero()}

    @classmethod
    def constant(cls, e):
        return cls({k: LaurentPoly.monomial(c) for k, c in e.coeffs.items()})

    def is_zero(self):
        return not self.coeffs

    def __add__(self, other):
        out = dict(self.coeffs)
        for k, p in other.coeffs.items():
            out[k] = out[k] + p if k in out else p
        return LaurentElement(out)

    def scale(self, c):
        """Multiply by a rational or a Laurent polynomial."""
        return LaurentElement({k: p * c for k, p in self.coeffs.items()})

    def shift(self, s):
        return LaurentElement({k: p.shift(s) for k, p in self.coeffs.items()})

    def valuation(self):
        if not self.coeffs:
            raise ValueError("zero generator")
        return min(p.val for p in self.coeffs.values())

    def normalize(self):
        return self.shift(-self.valuation())

    def coefficient(self, e):
        """Element given by the coefficient of t**e."""
        return Element({k: p.coeff(e) for k, p in self.coeffs.items()})

    def evaluate(self, t0):
        return Element({k: p.evaluate(t0) for k, p in self.coeffs.items()})

    def max_degree(self):
        return max(p.degree for p in self.coeffs.values())

    def __eq__(self, other):
        return isinstance(other, LaurentElement) and self.coeffs == other.coeffs

    def to_json(self, model=None):
        out = []
        for k in sorted(self.coeffs):
            lab = model.basis_order[k] if model is not None else k
            out.append([lab, self.coeffs[k].to_pairs()])
        return out

    def __repr__(self):
        return f"LaurentElement({ {k: self.coeffs[k] for k in sorted(self.coeffs)} })"


class SubspaceFamily:
    """Span of Laurent generators, defined for generic t."""

    def __init__(self, ambient_dim, generators, check=True):
        self.ambient_dim = ambient_dim
        self.generators = list(generators)
        if check and not self._generic_full_rank():
            raise ValueError("family generators are dependent at generic t")

    def _generic_full_rank(self):
        k = len(self.generators)
        for t0 in (1, 2, 3):
            m = [g.evaluate(t0).to_vector(self.ambient_dim) for g in self.generators]
            if rank(m, self.ambient_dim) == k:
                return True
        return False

    def at(self, t0):
        return Subspace(self.ambient_dim,
                        [g.evaluate(t0).to_vector(self.ambient_dim) for g in self.generators])

    def to_json(self, model=None):
        return [g.to_json(model) for g in self.generators]


def constant_family(s):
    return SubspaceFamily(s.ambient_dim, [LaurentElement.constant(e) for e in s.elements()],
                          check=False)


# ---------------------------------------------------------------------------
# deformations


def exp_ad_series(model, x, v, scale_exponent=-1):
    """exp(t**scale_exponent * ad x)(v) as a LaurentElement."""
    out = {}
    term = v
    k = 0
    while not term.is_zero():
        if k > model.sys.coxeter_height + 1:
            raise RuntimeError("ad x is not nilpotent on the input")
        f = Fraction(1, factorial(k))
        e = scale_exponent * k
        for idx, c in term.coeffs.items():
            p = LaurentPoly.monomial(c * f, e)
            out[idx] = out[idx] + p if idx in out else p
        term = model.bracket(x, term)
        k += 1
    return LaurentElement(out)


def exp_ad_laurent(model, x, v, scale_exponent=-1):
    """exp(t**scale_exponent * ad x) applied to a LaurentElement."""
    out = LaurentElement()
    # Expand by t-degree of the input so every piece is a constant Element.
    degrees = sorted({e for p in v.coeffs.values() for e, _ in p.terms()})
    for d in degrees:
        piece = v.coefficient(d)
        if not piece.is_zero():
            out = out + exp_ad_series(model, x, piece, scale_exponent).shift(d)
    return out


def _as_nilpotent(model, beta):
    if isinstance(beta, Element):
        return beta
    return model.X(beta)


def apply_unipotent(s, beta, model, scale_exponent=-1):
    """Family exp(t**scale_exponent * ad X_beta)(s).

    ``beta`` may be a root, a root label, or any Element of n (for two-term
    elements such as a X_alpha + b X_beta).
    """
    x = _as_nilpotent(model, beta)
    gens = [exp_ad_series(model, x, e, scale_exponent) for e in s.elements()]
    return SubspaceFamily(s.ambient_dim, gens)


def pairing(m_vec, root):
    """(m, alpha) = sum_j m_j d_j."""
    return sum(int(a) * d for a, d in zip(m_vec, root.coords))


def apply_root_exponents(s, exps, model):
    """Scale the X_alpha coordinate by t**exps[alpha_index]; h has weight 0."""
    n = model.n
    gens = []
    for e in s.elements():
        d = {}
        for k, c in e.coeffs.items():
            d[k] = LaurentPoly.monomial(c, 0 if k < n else exps[k - n])
        gens.append(LaurentElement(d))
    return SubspaceFamily(s.ambient_dim, gens)


def apply_toric(s, m_vec, model):
    """Family Ad(lambda(t))(s): X_alpha scaled by t**(m, alpha)."""
    exps = [pairing(m_vec, r) for r in model.sys.positive_roots]
    return apply_root_exponents(s, exps, model)


def diag_root_exponents(w, real):
    """Exponent of Ad(diag(t**w)) on each root matrix (w_i - w_j on E_ij)."""
    exps = []
    for X in real.root_matrices:
        vals = {w[i] - w[j] for i, row in enumerate(X) for j, x in enumerate(row) if x != 0}
        if len(vals) != 1:
            raise ValueError("root matrix is not a weight vector for the diagonal torus")
        exps.append(vals.pop())
    return exps


def apply_diag(s, w, model, real):
    return apply_root_exponents(s, diag_root_exponents(w, real), model)


def permutation_matrix(perm):
    """Matrix P with P E_{i,j} P^{-1} = E_{perm(i), perm(j)} (1-based perm list)."""
    size = len(perm)
    P = [[Fraction(0)] * size for _ in range(size)]
    for i, pi in enumerate(perm):
        P[pi - 1][i] = Fraction(1)
    return P


def apply_matrix_conjugation(s, g, model, real, g_inv=None):
    """Conjugate a subspace by a constant invertible matrix g."""
    if g_inv is None:
        g_inv = _inverse(g)
    out = []
    for e in s.elements():
        M = real.realize(e, model.n)
        out.append(real.decompose(mat_mul(mat_mul(g, M), g_inv), model.n))
    return Subspace.from_elements(out, s.ambient_dim)


def _inverse(g):
    size = len(g)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(size)] for i, row in enumerate(g)]
    r, red = rref(aug, 2 * size)
    if r < size or any(red[i][i] != 1 for i in range(size)):
        raise ValueError("non-invertible matrix")
    return [row[size:] for row in red]


# ---------------------------------------------------------------------------
# the limit


class LimitStats:
    __slots__ = ("replacements", "bound")

    def __init__(self):
        self.replacements = 0
        self.bound = 0


def subspace_limit(f, stats=None):
    """Limit point at t = 0 of a family in the Grassmannian."""
    dim = f.ambient_dim
    gens = [g.normalize() for g in f.generators]
    bound = sum(g.max_degree() for g in gens)
    if stats is not None:
        stats.bound = bound
    done = 0
    while True:
        evals = [g.coefficient(0).to_vector(dim) for g in gens]
        deps = kernel(transpose(evals), len(gens)) if gens else []
        if not deps:
            return Subspace(dim, evals)
        for c in deps:
            top = max(k for k, x in enumerate(c) if x != 0)
            combo = LaurentElement()
            for k, x in enumerate(c):
                if x != 0:
                    combo = combo + gens[k].scale(x)
            if combo.is_zero():
                raise ValueError("family generators are dependent at generic t")
            gens[top] = combo.normalize()
            done += 1
            if done > bound:
                raise RuntimeError("limit did not terminate within the valuation bound")
        if stats is not None:
            stats.replacements = done


def family_limit_stats(f):
    st = LimitStats()
    sub = subspace_limit(f, st)
    return sub, st


# ---------------------------------------------------------------------------
# deformation steps


class DeformationStep:
    """One deformation with an optional declared target.

    kinds: "unipotent" (params: element, label, scale_exponent),
    "toric" (params: m), "diag" (params: w), "permutation" (params: perm),
    "identity".
    """

    def __init__(self, kind, params=None, target=None, note=None):
        self.kind = kind
        self.params = dict(params or {})
        self.target = target
        self.note = note

    def family(self, s, model, real=None):
        if self.kind == "unipotent":
            return apply_unipotent(s, self.params["element"], model,
                                   self.params.get("scale_exponent", -1))
        if self.kind == "toric":
            return apply_toric(s, self.params["m"], model)
        if self.kind == "diag":
            return apply_diag(s, self.params["w"], model, real)
        raise ValueError(f"step kind {self.kind} has no family")

    def run(self, s, model, real=None):
        if self.kind == "identity":
            return s
        if self.kind == "permutation":
            return apply_matrix_conjugation(s, permutation_matrix(self.params["perm"]),
                                            model, real)
        return subspace_limit(self.family(s, model, real))

    def params_json(self, model):
        out = {}
        for k, v in self.params.items():
            if isinstance(v, Element):
                out[k] = model.element_to_json(v)
            else:
                out[k] = v
        return out

    def __repr__(self):
        return f"DeformationStep({self.kind}, {self.params})"
