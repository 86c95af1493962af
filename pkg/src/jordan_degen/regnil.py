"""Regular nilpotent Lambda, its centralizer J, and the abelian subalgebra K.

K is reached from J by limits of unipotent deformations: a single
exp(t^-1 ad S) for the classical types, and a short chain of them for the
exceptional types.
"""

from fractions import Fraction

from .deform import DeformationStep, Subspace, span_of_roots
from .exact import kernel, mat_add, mat_mul, mat_scale, zero_matrix
from .liealg import ConsistencyError, Element, build_model


def exponents(sys):
    """Exponents of the simple Lie algebra, as a sorted list."""
    n = sys.rank
    fam = sys.family
    if fam == "A":
        return list(range(1, n + 1))
    if fam in ("B", "C"):
        return list(range(1, 2 * n, 2))
    if fam == "D":
        return sorted(list(range(1, 2 * n - 2, 2)) + [n - 1])
    return {
        "G2": [1, 5],
        "F4": [1, 5, 7, 11],
        "E6": [1, 4, 5, 7, 8, 11],
        "E7": [1, 5, 7, 9, 11, 13, 17],
        "E8": [1, 7, 11, 13, 17, 19, 23, 29],
    }[sys.type_tag]


# Bases of J written out for the exceptional types, keyed by height.
J_BASIS_TERMS = {
    "G2": {5: [(1, "32")]},
    "F4": {
        5: [(2, "0122"), (-1, "1121"), (1, "1220")],
        7: [(1, "1222"), (-1, "1231")],
        11: [(1, "2342")],
    },
    "E6": {
        4: [(1, "01111/0"), (-1, "00111/1"), (-1, "11110/0"), (1, "11100/1")],
        5: [(1, "01111/1"), (-1, "01210/1"), (1, "11110/1"), (-2, "11111/0")],
        7: [(1, "01221/1"), (-1, "11211/1"), (1, "12210/1")],
        8: [(1, "11221/1"), (-1, "12211/1")],
        11: [(1, "12321/2")],
    },
    "E7": {
        5: [(1, "012100/1"), (-1, "111100/1"), (-1, "011110/1"), (2, "111110/0"),
            (-2, "011111/0"), (3, "001111/1")],
        7: [(1, "122100/1"), (-1, "112110/1"), (1, "012210/1"), (-1, "012111/1"),
            (2, "111111/1")],
        9: [(1, "122111/1"), (-1, "112211/1"), (1, "012221/1")],
        11: [(1, "123210/2"), (-1, "123211/1"), (1, "122221/1")],
        13: [(1, "123221/2"), (-1, "123321/1")],
        17: [(1, "234321/2")],
    },
    "E8": {
        7: [(1, "1221000/1"), (-1, "1121100/1"), (1, "0122100/1"), (-1, "0121110/1"),
            (2, "1111110/1"), (-2, "1111111/0"), (1, "0111111/1")],
        11: [(1, "1232100/2"), (-1, "1232110/1"), (1, "1222210/1"), (1, "1222111/1"),
             (-2, "1122211/1"), (2, "0122221/1")],
        13: [(1, "1222221/1"), (-1, "1232211/1"), (1, "1233210/1"), (-1, "1232210/2"),
             (2, "1232111/2")],
        17: [(1, "2343210/2"), (-1, "1343211/2"), (1, "1243221/2"), (-1, "1233321/2")],
        19: [(1, "2343221/2"), (-1, "1343321/2"), (1, "1244321/2")],
        23: [(1, "2454321/2"), (-1, "2354321/3")],
        29: [(1, "2465432/3")],
    },
}


# Coefficients in J_BASIS_TERMS that contradict [Lambda, f] = 0 under the
# normalization [X_{alpha_i}, X_beta] = X_{beta + alpha_i} (p = 0 in type E).
# For E8 f_7 the X_{1111111/1} coefficient of [Lambda, f_7] is 2 + c + 1,
# which forces c = -3 for X_{1111111/0}.
J_BASIS_CORRECTIONS = {
    ("E8", 7): {"1111111/0": -3},
}


def stated_j_basis(model, corrected=False):
    """The written-out J basis {f_h} of an exceptional type, f_1 = Lambda.

    With ``corrected`` the entries of J_BASIS_CORRECTIONS replace the
    written coefficients.
    """
    tag = model.sys.type_tag
    out = {1: model.lam()}
    for h, terms in J_BASIS_TERMS[tag].items():
        fix = J_BASIS_CORRECTIONS.get((tag, h), {}) if corrected else {}
        out[h] = model.elem([(fix.get(lab, c), lab) for c, lab in terms])
    return out


class JordanData:
    def __init__(self, lam, centralizer, by_height, z_element=None):
        self.lam = lam
        self.centralizer = centralizer
        self.by_height = by_height
        self.z_element = z_element

    @property
    def graded_heights(self):
        return sorted(h for h, vs in self.by_height.items() for _ in vs)


def ad_lambda_matrix(model, h):
    """Matrix of ad Lambda from height h to height h + 1 (rows: height h+1)."""
    sys = model.sys
    src = [sys.idx(r) for r in sys.roots_of_height(h)]
    dst = [sys.idx(r) for r in sys.roots_of_height(h + 1)]
    pos = {d: k for k, d in enumerate(dst)}
    M = [[Fraction(0)] * len(src) for _ in dst]
    for col, b in enumerate(src):
        for a in sys.simple:
            ai = sys.idx(a)
            d = sys.sum_table.get((ai, b))
            if d is not None:
                M[pos[d]][col] += model.N[(ai, b)]
    return src, M


def jordan_subalgebra(model, real=None):
    """J = kernel of ad Lambda on n, computed one height at a time.

    The Cartan part can be ignored: the height-one component of
    [h + x, Lambda] is sum_i alpha_i(h) X_{alpha_i}, which vanishes only
    for h = 0.
    """
    sys = model.sys
    by_height = {}
    for h in range(1, sys.coxeter_height + 1):
        src, M = ad_lambda_matrix(model, h)
        ker = kernel(M, len(src)) if M else [
            [Fraction(int(i == j)) for j in range(len(src))] for i in range(len(src))]
        vecs = []
        for v in ker:
            vecs.append(Element({model.n + b: c for b, c in zip(src, v)}))
        if vecs:
            by_height[h] = vecs
    elems = [v for h in sorted(by_height) for v in by_height[h]]
    if len(elems) != model.n:
        raise ConsistencyError(f"centralizer has dimension {len(elems)}, expected {model.n}")
    J = Subspace.from_elements(elems, model.dim)
    z = None
    if sys.family == "D":
        z = z_element(model, real)
        if not J.contains(z):
            raise ConsistencyError("Z does not commute with Lambda")
    return JordanData(model.lam(), J, by_height, z)


# ---------------------------------------------------------------------------
# matrices for the classical types


def E(size, i, j, c=1):
    m = zero_matrix(size)
    m[i - 1][j - 1] = Fraction(c)
    return m


def tilde_unit(family, n, i, j, c=1):
    """E_{i,j} minus its mirror across the antidiagonal (types B and D)."""
    if family == "B":
        size = 2 * n + 1
    elif family == "D":
        size = 2 * n
    else:
        raise ValueError("tilde units are defined for types B and D")
    return mat_scale(mat_add(E(size, i, j), E(size, size + 1 - j, size + 1 - i), -1), c)


def msum(mats, size):
    out = zero_matrix(size)
    for m in mats:
        out = mat_add(out, m)
    return out


def z_element(model, real):
    n = model.n
    Z = mat_add(tilde_unit("D", n, 1, n), tilde_unit("D", n, 1, n + 1), -1)
    return real.decompose(Z, n)


def s_matrix(family, n):
    """The nilpotent S with K = lim exp(t^-1 ad S)(J), as a matrix."""
    if family == "A":
        return zero_matrix(n + 1)
    if family == "B":
        size = 2 * n + 1
        if n % 2 == 1:
            m = (n - 1) // 2
            terms = [tilde_unit("B", n, i, n + i, i) for i in range(1, m + 2)]
        else:
            m = n // 2
            terms = [tilde_unit("B", n, i, i + n - 1, i) for i in range(1, m + 2)]
        return msum(terms, size)
    if family == "C":
        size = 2 * n
        S = zero_matrix(size)
        half = Fraction(1, 2)
        if n % 2 == 1:
            for i in range(1, n + 1):
                S[i - 1][n + i - 1] = -half
        else:
            S[0][n - 1] = half
            S[n][size - 1] = -half
            for i in range(1, n):
                S[i][n + i - 1] = -half
        return S
    if family == "D":
        size = 2 * n
        if n % 2 == 1:
            terms = [tilde_unit("D", n, 1, n - 1, 2), tilde_unit("D", n, 2, n, 1),
                     tilde_unit("D", n, 2, n + 1, 1)]
            terms += [tilde_unit("D", n, i, i + n - 1, -i) for i in range(3, (n + 1) // 2 + 1)]
        else:
            terms = [tilde_unit("D", n, i, i + n, -i) for i in range(1, n // 2 + 1)]
        return msum(terms, size)
    raise ValueError(family)


def build_S(type_tag, rank):
    model, real = build_model(type_tag, rank)
    return real.decompose(s_matrix(model.sys.family, model.n), model.n)


def lambda_power(model, real, k):
    """Lambda**k computed as a matrix power, as an element of n."""
    L = real.realize(model.lam(), model.n)
    P = L
    for _ in range(k - 1):
        P = mat_mul(P, L)
    return real.decompose(P, model.n)


def predicted_K_generators(model, real):
    """Generators of K written out for B, C, D as matrices and brackets."""
    fam, n = model.sys.family, model.n
    size = real.matrix_size
    S = build_S(fam, n)
    pw = lambda k: lambda_power(model, real, k)
    gens = []
    if fam == "B":
        off = n if n % 2 == 1 else n - 1
        for l in range(n, 2 * n):
            if l % 2 == 0:
                gens.append(model.bracket(S, pw(l - off)))
            else:
                gens.append(pw(l))
    elif fam == "C":
        LA = msum([E(n, i, i + 1) for i in range(1, n)], n)

        def upper(k):
            P = zero_matrix(n)
            for i in range(n):
                P[i][i] = Fraction(1)
            for _ in range(k):
                P = mat_mul(P, LA)
            M = zero_matrix(size)
            for i in range(n):
                for j in range(n):
                    M[i][n + j] = P[i][j]
            return real.decompose(M, n)

        if n % 2 == 1:
            gens += [pw(2 * k - 1) for k in range((n + 1) // 2, n + 1)]
            gens += [upper(2 * k - 1) for k in range(1, (n - 1) // 2 + 1)]
        else:
            gens += [pw(2 * k - 1) for k in range(n // 2 + 1, n + 1)]
            gens += [upper(2 * k - 2) for k in range(1, n // 2 + 1)]
    elif fam == "D":
        gens.append(z_element(model, real))
        off = n - 2 if n % 2 == 1 else n - 1
        for l in range(n - 1, 2 * n - 2):
            if l % 2 == 0:
                gens.append(model.bracket(S, pw(l - off)))
            else:
                gens.append(pw(l))
    else:
        raise ValueError("predicted generators exist for types B, C, D")
    return gens


# ---------------------------------------------------------------------------
# K


class DegenerateParameters(ValueError):
    """A free parameter choice made some required coefficient vanish."""


class KBasis:
    def __init__(self, model, space, generators, heights, z=None, steps=None, params=None):
        self.model = model
        self.space = space
        self.generators = generators
        self.heights = heights
        self.z = z
        self.steps = steps or []
        self.params = params or {}
        sys = model.sys
        self.coefficient_table = {}
        for h, g in zip(heights, generators):
            for r in sys.roots_of_height(h):
                self.coefficient_table[(h, sys.label(r))] = g[model.x_index(r)]

    def lambda_of_height(self, h):
        return self.generators[self.heights.index(h)]


def graded_components(model, space):
    """Split a graded subspace of n into homogeneous pieces by height."""
    comps = {}
    for v in space.elements():
        hs = {model.height_of_index(k) for k in v.coeffs}
        if len(hs) != 1 or 0 in hs:
            raise ConsistencyError("subspace is not graded by height inside n")
        comps.setdefault(hs.pop(), []).append(v)
    return comps


def full_support(model, v, h):
    return all(v[model.x_index(r)] != 0 for r in model.sys.roots_of_height(h))


def k_heights(sys):
    top = sys.coxeter_height
    if sys.family == "D":
        return list(range(top - (sys.rank - 2), top + 1))
    return list(range(top - (sys.rank - 1), top + 1))


def _d_choice(model, v1, v2, z):
    """Pick Lambda^(n-1) in the 2-dim height n-1 component of K (type D)."""
    sys = model.sys
    n = model.n
    h = n - 1
    minus = model.x_index(sys.parse(f"e1-e{n}"))
    plus = model.x_index(sys.parse(f"e1+e{n}"))
    combos = [(1, 0), (0, 1), (1, 1), (1, -1), (1, 2), (2, 1), (1, -2), (2, -1)]
    for a, b in combos:
        for c in range(0, 4):
            v = v1 * a + v2 * b + z * c
            if v.is_zero() or not full_support(model, v, h):
                continue
            # Z independent of c_- X_- + c_+ X_+ and of v itself.
            head = Element({minus: v[minus], plus: v[plus]})
            zv, zh = z.to_vector(model.dim), head.to_vector(model.dim)
            if _independent(zv, zh) and _independent(zv, v.to_vector(model.dim)):
                return v
    raise DegenerateParameters("no admissible Lambda^(n-1) in the searched set")


def _independent(u, v):
    from .exact import rank
    return rank([u, v], len(u)) == 2


def _kbasis_from_space(model, K, z=None, steps=None, params=None):
    sys = model.sys
    if K.dim != model.n:
        raise ConsistencyError(f"K has dimension {K.dim}, expected {model.n}")
    comps = graded_components(model, K)
    heights = k_heights(sys)
    if sorted(h for h, vs in comps.items() for _ in vs) != sorted(
            heights + ([sys.rank - 1] if sys.family == "D" else [])):
        raise ConsistencyError("K does not have the expected heights")
    gens = []
    for h in heights:
        vs = comps[h]
        if sys.family == "D" and h == model.n - 1:
            v = _d_choice(model, vs[0], vs[1], z)
        else:
            v = vs[0]
        if not full_support(model, v, h):
            raise DegenerateParameters(f"a coefficient at height {h} vanishes")
        gens.append(v)
    for a in range(len(gens)):
        for b in range(a + 1, len(gens)):
            if not model.bracket(gens[a], gens[b]).is_zero():
                raise ConsistencyError("K is not abelian")
    if z is not None:
        for g in gens:
            if not model.bracket(g, z).is_zero():
                raise ConsistencyError("Z does not commute with K")
    return KBasis(model, K, gens, heights, z, steps, params)


# Unipotent chains from J to K for the exceptional types.  Each entry is
# (kind, data, declared target).  Targets are lists of generators: a label
# is X_label and an integer h is the stated J basis element f_h.  A "pair"
# step uses a X_u + b X_v with (a, b) from PAIR_CANDIDATES; its target may
# include ("free", h) for a height-h component that is only required to
# have nonzero coefficients at every root of that height.
EXCEPTIONAL_J_TO_K = {
    "G2": [("unipotent", "21", ["31", "32"])],
    "F4": [
        ("unipotent", "1242", [5, 7, "1342", "2342"]),
        ("unipotent", "0121", [7, "1242", "1342", "2342"]),
        ("unipotent", "0001", ["1232", "1242", "1342", "2342"]),
    ],
    "E6": [
        ("pair", ("11111/0", "01210/1"),
         [("free", 6), ("free", 7), ("free", 8), ("free", 9), ("free", 10), ("free", 11)]),
    ],
    "E7": [
        ("unipotent", "124321/2", [5, 7, 9, 11, 13, "134321/2", 17]),
        ("unipotent", "123210/1", [7, 9, 11, 13, "124321/2", "134321/2", 17]),
        ("unipotent", "012210/1", [9, 11, 13, "123321/2", "124321/2", "134321/2", 17]),
        ("pair", ("001100/1", "111000/0"),
         ["ht>=14", 13, ("free", 12), 11]),
    ],
    "E8": [
        ("unipotent", "2465421/3", [7, 11, 13, 17, 19, 23, "2465431/3", 29]),
        ("unipotent", "2343321/2", [11, 13, 17, 19, 23, "2465421/3", "2465431/3", 29]),
        # The written roots 1232100/2 and 1232111/2 (heights 11 and 13) cannot
        # reach heights 26 and 25 from f_11 and f_13; the steps use the
        # complementary roots 2465321/3 - 1232100/2 and 2464321/3 - 1232111/2.
        ("unipotent", "1233221/1",
         [13, 17, 19, 23, "2465321/3", "2465421/3", "2465431/3", 29]),
        ("unipotent", "1232210/1",
         [17, 19, 23, "2464321/3", "2465321/3", "2465421/3", "2465431/3", 29]),
        ("unipotent", "1111110/1",
         [19, 23, "2454321/3", "2464321/3", "2465321/3", "2465421/3", "2465431/3", 29]),
        ("pair", ("0011100/0", "0110000/1"), ["ht>=24", 23, ("free", 22)]),
    ],
}

PAIR_CANDIDATES = [(1, 1), (1, 2), (2, 1), (1, 3), (3, 1)]


def declared_space(model, items, computed=None):
    """Subspace for a declared target; "free" slots are read off ``computed``.

    Returns None if a free slot cannot be filled (wrong dimension or a
    vanishing coefficient).
    """
    f = stated_j_basis(model, corrected=True)
    sys = model.sys
    gens = []
    for item in items:
        if isinstance(item, int):
            gens.append(f[item])
        elif isinstance(item, tuple) and item[0] == "free":
            h = item[1]
            if computed is None:
                return None
            comps = graded_components(model, computed)
            vs = comps.get(h, [])
            if len(vs) != 1 or not full_support(model, vs[0], h):
                return None
            gens.append(vs[0])
        elif isinstance(item, str) and item.startswith("ht>="):
            h0 = int(item[4:])
            gens += [model.X(r) for r in sys.positive_roots if r.height >= h0]
        else:
            gens.append(model.X(item))
    return Subspace.from_elements(gens, model.dim)


def e6_pair_coefficients(model, S):
    """c_1..c_5 of the two-term E6 step; all must be nonzero."""
    f = stated_j_basis(model, corrected=True)
    img = model.bracket(S, f[1])
    allowed = {model.x_index(r) for r in ("01211/1", "11111/1", "11210/1")}
    if set(img.coeffs) - allowed:
        raise ConsistencyError("ad S(Lambda) leaves the expected roots")
    c = [img[model.x_index(r)] for r in ("01211/1", "11111/1", "11210/1")]
    i4 = model.bracket(S, f[4])
    i5 = model.bracket(S, f[5])
    for img, lab in ((i4, "12221/1"), (i5, "12321/1")):
        if set(img.coeffs) - {model.x_index(lab)}:
            raise ConsistencyError("ad S(f) leaves the expected root")
        c.append(img[model.x_index(lab)])
    return c


def _try_pair(model, cur, u, v, a, b, target_items):
    S = model.X(u, a) + model.X(v, b)
    if model.sys.type_tag == "E6":
        try:
            if any(c == 0 for c in e6_pair_coefficients(model, S)):
                return None
        except ConsistencyError:
            return None
    step = DeformationStep("unipotent", {
        "element": S, "label": f"{a}*X[{u}]+{b}*X[{v}]", "a": a, "b": b})
    out = step.run(cur, model)
    tgt = declared_space(model, target_items, out)
    if tgt is None:
        return None
    try:
        _kbasis_from_space(model, out)
    except (DegenerateParameters, ConsistencyError):
        return None
    step.target = tgt
    return step, out


def pair_fallbacks(model, u, v):
    """Alternative pairs when the written pair is degenerate for every (a, b).

    Replace one root at a time by another root of the same height, first
    the left one, then the right one, in canonical order.
    """
    sys = model.sys
    ru, rv = sys.parse(u), sys.parse(v)
    out = []
    for r in sys.roots_of_height(ru.height):
        lab = sys.label(r)
        if lab not in (u, v):
            out.append((lab, v))
    for r in sys.roots_of_height(rv.height):
        lab = sys.label(r)
        if lab not in (u, v):
            out.append((u, lab))
    return out


def _pair_step(model, cur, data, target_items):
    u, v = data
    for uu, vv in [(u, v)] + pair_fallbacks(model, u, v):
        for a, b in PAIR_CANDIDATES:
            hit = _try_pair(model, cur, uu, vv, a, b, target_items)
            if hit is not None:
                step, out = hit
                if (uu, vv) != (u, v):
                    step.note = f"written pair X[{u}], X[{v}] is degenerate for every (a, b)"
                return step, out, (uu, vv, a, b)
    raise DegenerateParameters("no (a, b) in the candidate list works")


def run_exceptional_j_to_k(model, J):
    """Replay the exceptional J -> K chain; returns (K, records, params)."""
    tag = model.sys.type_tag
    cur = J
    records = []
    params = {}
    for kind, data, target_items in EXCEPTIONAL_J_TO_K[tag]:
        if kind == "unipotent":
            step = DeformationStep("unipotent", {"element": model.X(data), "label": data})
            out = step.run(cur, model)
            step.target = declared_space(model, target_items, out)
        else:
            step, out, chosen = _pair_step(model, cur, data, target_items)
            params["a"], params["b"] = chosen[2], chosen[3]
            params["pair"] = [chosen[0], chosen[1]]
            params["stated_pair"] = list(data)
            params["stated_pair_degenerate"] = (chosen[0], chosen[1]) != tuple(data)
        records.append((step, out))
        cur = out
    return cur, records, params


def build_K(model, real=None, J=None):
    """The abelian subalgebra K together with the steps reaching it from J."""
    sys = model.sys
    if J is None:
        J = jordan_subalgebra(model, real)
    fam = sys.family
    if fam == "A":
        return _kbasis_from_space(model, J.centralizer, steps=[], params={"S": "0"})
    if fam in ("B", "C", "D"):
        S = real.decompose(s_matrix(fam, model.n), model.n)
        step = DeformationStep("unipotent", {"element": S, "label": "S"})
        K = step.run(J.centralizer, model)
        predicted = Subspace.from_elements(predicted_K_generators(model, real), model.dim)
        step.target = predicted
        return _kbasis_from_space(model, K, J.z_element, [(step, K)], {"S": S})
    K, records, params = run_exceptional_j_to_k(model, J.centralizer)
    return _kbasis_from_space(model, K, None, records, params)
