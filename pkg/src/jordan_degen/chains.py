"""Deformation chains from J (or K) to every n-dimensional abelian ideal.

Every chain is a list of DeformationSteps, each with a declared target
subspace.  Steps are replayed one at a time: the exact limit of a step is
the input of the next one, and each limit is compared with its target.
"""

import time
from fractions import Fraction
from functools import lru_cache

from .deform import DeformationStep, Subspace, span_of_roots
from .exact import fmt_rational
from .ideals import (
    AbelianIdeal, Partition, a_mu_positions, a_prime_mu, a_mu, classify_BCD,
    d_case3_roots, enumerate_ideals, is_plus_form, partition_of_ideal_A,
)
from .liealg import ConsistencyError, Element, build_model
from .regnil import build_K, declared_space, jordan_subalgebra, stated_j_basis

INF = float("inf")


# ---------------------------------------------------------------------------
# certificates


class StepRecord:
    __slots__ = ("step", "target", "computed", "equal")

    def __init__(self, step, target, computed):
        self.step = step
        self.target = target
        self.computed = computed
        self.equal = target is not None and target == computed


class Certificate:
    """Replayed chain: per-step targets and limits, and the final comparison."""

    def __init__(self, model, name, ideal=None, ideal_id=None):
        self.model = model
        self.name = name
        self.ideal = ideal
        self.ideal_id = ideal_id
        self.records = []
        self.final = None
        self.final_target = None
        self.info = {}
        self.notes = []
        self.millis = None

    def run(self, start, steps, real=None):
        cur = start
        for step in steps:
            out = step.run(cur, self.model, real)
            self.records.append(StepRecord(step, step.target, out))
            cur = out
        self.final = cur
        return cur

    @property
    def final_equal(self):
        return self.final_target is not None and self.final == self.final_target

    @property
    def passed(self):
        return self.final_equal and all(r.equal for r in self.records)

    def failed_steps(self):
        return [k for k, r in enumerate(self.records) if not r.equal]

    def to_json(self, timing=False):
        m = self.model
        sys = m.sys
        out = {
            "type": sys.type_tag,
            "rank": sys.rank,
            "chain": self.name,
            "ideal": self.ideal.labels() if self.ideal is not None else None,
            "ideal_id": self.ideal_id,
        }
        if self.info:
            out["info"] = _jsonable(self.info, m)
        steps = []
        for r in self.records:
            d = {
                "kind": r.step.kind,
                "params": _jsonable(r.step.params_json(m), m),
                "target_basis": r.target.to_json(m) if r.target is not None else None,
                "computed_basis": r.computed.to_json(m),
                "equal": r.equal,
            }
            if r.step.note:
                d["note"] = r.step.note
            steps.append(d)
        out["steps"] = steps
        out["final_equal"] = self.final_equal
        if self.notes:
            out["notes"] = list(self.notes)
        out["pass"] = self.passed
        if timing and self.millis is not None:
            out["millis"] = self.millis
        return out


def _jsonable(x, model):
    if isinstance(x, Element):
        return model.element_to_json(x)
    if isinstance(x, Fraction):
        return fmt_rational(x)
    if isinstance(x, float) and x == INF:
        return "inf"
    if isinstance(x, dict):
        return {str(k): _jsonable(v, model) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v, model) for v in x]
    if isinstance(x, Partition):
        return list(x.parts)
    return x


# ---------------------------------------------------------------------------
# shared pieces


@lru_cache(maxsize=None)
def setup(type_tag, rank=None):
    """(model, realization, JordanData, KBasis) for a type, built once."""
    model, real = build_model(type_tag, rank)
    J = jordan_subalgebra(model, real)
    K = build_K(model, real, J)
    return model, real, J, K


def cartan_subspace(model):
    return Subspace.from_elements([model.H(i + 1) for i in range(model.n)], model.dim)


def verify_cartan_limit(model, J):
    """lim exp(t^-1 ad Lambda)(h) = J."""
    cert = Certificate(model, "h_to_J")
    step = DeformationStep("unipotent", {"element": model.lam(), "label": "Lambda"},
                           target=J.centralizer)
    cert.run(cartan_subspace(model), [step])
    cert.final_target = J.centralizer
    return cert


def k_certificate(model, J, K):
    """Replay of the J -> K construction with its declared targets."""
    cert = Certificate(model, "J_to_K")
    steps = [s for s, _ in K.steps]
    cert.run(J.centralizer, steps)
    cert.final_target = K.space
    cert.info.update({k: v for k, v in K.params.items() if k != "S"})
    return cert


def toric_step(n, entries, target=None, note=None):
    """Toric step with m = sum c * e_k for entries {k: c} (1-based k)."""
    m = [0] * n
    for k, c in entries.items():
        m[k - 1] += c
    return DeformationStep("toric", {"m": m}, target=target, note=note)


# ---------------------------------------------------------------------------
# type A: the inequality system and the diagonal degeneration


class IESolution:
    def __init__(self, mu, z, w, route):
        self.mu = mu
        self.z = z
        self.w = w
        self.route = route

    def to_json(self):
        return {"mu": list(self.mu.parts), "z": list(self.z), "w": list(self.w),
                "route": list(self.route)}


def i_of_h(mu, h):
    """Row of the unique entry of a'_mu on the h-th superdiagonal."""
    parts = mu.parts
    for k in range(1, len(parts) + 1):
        below = sum(parts[k:])
        if below < h <= below + parts[k - 1]:
            return parts[0] + 1 - (h - below)
    raise ValueError(f"h={h} out of range for {mu}")


def z_window(z, j, h):
    """z_j(h) = z_j + ... + z_{j+h-1} (1-based)."""
    return sum(z[j - 1:j - 1 + h])


def ie_violations(mu, z):
    """Every violated constraint of (IE_mu), as tuples; empty means solved."""
    n = mu.size
    bad = []
    if len(z) != n:
        return [("length", len(z))]
    for h in range(1, n + 1):
        ih = i_of_h(mu, h)
        base = z_window(z, ih, h)
        for j in range(1, n + 2 - h):
            if j != ih and not base < z_window(z, j, h):
                bad.append(("window", h, j))
    for i in range(1, n + 1):
        if i == mu[0]:
            if z[i - 1] != 0:
                bad.append(("zero", i))
        elif not z[i - 1] > 0:
            bad.append(("positive", i))
    return bad


def _solve_unscaled(mu, route, bump=0):
    n = mu.size
    parts = mu.parts
    if n == 1:
        route.append("n=1")
        return [0]
    if len(parts) == 1:
        route.append("single_row")
        return [1] * (n - 1) + [0]
    if len(parts) == 2 and parts[0] == parts[1]:
        route.append("two_equal_rows")
        if n == 2:
            return [0, 1]
        half = n // 2
        return [2] * (half - 1) + [0, 3] + [2] * (half - 2) + [1]
    m = parts[0]
    if parts[1] < m:
        route.append("case1")
        sub = _solve_unscaled(Partition((m - 1,) + parts[1:]), route, bump)
        return [sum(sub) + bump] + sub
    tilde = Partition(parts[1:])
    sub = _solve_unscaled(tilde, route, bump)
    if n + 1 >= 3 * m:
        route.append("case2")
        z = sub[:n - m] + [sum(sub) + bump] + [sub[i - m - 1] for i in range(n + 2 - m, n + 1)]
        return z
    route.append("case3")
    # delta must lie strictly below the smallest gap of the smaller system,
    # which is at least 1 for an integral solution: double and use delta = 1.
    sub = [2 * x for x in sub]
    z = []
    for i in range(1, n + 1):
        if i <= n - m:
            z.append(sub[i - 1])
        elif i == n + 1 - m:
            z.append(sum(sub) + bump)
        elif i == 2 * m:
            z.append(1)
        else:
            z.append(sub[i - m - 1])
    return z


def w_from_z(z):
    n = len(z)
    w = []
    for j in range(1, n + 2):
        num = sum((n + 1 - k) * z[k - 1] for k in range(j, n + 1)) - sum(
            k * z[k - 1] for k in range(1, j))
        q = Fraction(num, n + 1)
        if q.denominator != 1:
            raise ConsistencyError("w is not integral; z is not divisible by n+1")
        w.append(int(q))
    return w


def solve_ie(mu):
    """An integral solution z of (IE_mu) scaled into (n+1)Z, with its w."""
    if not isinstance(mu, Partition):
        mu = Partition(mu)
    n = mu.size
    # The recursion inserts the sum of the smaller solution; when a window
    # can carry that whole sum the inequality is only weak, so retry with
    # sum + 1.
    for bump in (0, 1):
        route = []
        z = [(n + 1) * x for x in _solve_unscaled(mu, route, bump)]
        bad = ie_violations(mu, z)
        if not bad:
            break
    if bump:
        route.append("sum+1")
    if bad:
        raise ConsistencyError(f"(IE_{mu}) violated at {bad[0]}")
    w = w_from_z(z)
    if sum(w) != 0:
        raise ConsistencyError("w does not sum to zero")
    for h in range(1, n + 1):
        for j in range(1, n + 2 - h):
            if w[j - 1] - w[j + h - 1] != z_window(z, j, h):
                raise ConsistencyError(f"w_j - w_(j+h) differs from z_j(h) at j={j}, h={h}")
    return IESolution(mu, z, w, route)


def mu_permutation(mu):
    """Permutation pi of 1..n+1 with pi(a'_mu) = a_mu.

    sigma reverses 1..mu_1.  tau sends mu_1 + sum_{i>k} mu_i + 1 to
    n - k + 2; the remaining points of mu_1+1..n+1 go to the remaining
    values in increasing order.
    """
    n = mu.size
    m1 = mu[0]
    perm = {x: m1 + 1 - x for x in range(1, m1 + 1)}
    for k in range(1, len(mu) + 1):
        perm[m1 + sum(mu.parts[k:]) + 1] = n - k + 2
    rest_src = [x for x in range(m1 + 1, n + 2) if x not in perm]
    rest_dst = sorted(set(range(m1 + 1, n + 2)) - set(perm.values()))
    for a, b in zip(rest_src, rest_dst):
        perm[a] = b
    return [perm[x] for x in range(1, n + 2)]


def chain_type_A(model, real, J, ideal, ideal_id=None):
    mu = partition_of_ideal_A(ideal)
    sys = model.sys
    sol = solve_ie(mu)
    cert = Certificate(model, "type_A", ideal, ideal_id)
    cert.info.update({"mu": mu, "z": sol.z, "w": sol.w, "route": sol.route})
    a_prime = a_prime_mu(sys, mu).subspace(model)
    target = a_mu(sys, mu).subspace(model)
    steps = [
        DeformationStep("diag", {"w": sol.w}, target=a_prime),
        DeformationStep("permutation", {"perm": mu_permutation(mu)}, target=target),
    ]
    cert.run(J.centralizer, steps, real)
    cert.final_target = ideal.subspace(model)
    return cert


# ---------------------------------------------------------------------------
# types B, C, D


def root_ij(sys, r):
    """(i, j) with r = e_i + e_j, i <= j."""
    sup = sys.eps_support(r)
    if len(sup) == 1 and sup[0][1] == 2:
        return sup[0][0], sup[0][0]
    if len(sup) == 2 and all(c == 1 for _, c in sup):
        return sup[0][0], sup[1][0]
    raise ValueError(f"{sys.label(r)} is not of the form e_i + e_j")


def first_index(sys, r):
    """Smallest epsilon index in the support of r (i(alpha) for any root)."""
    return sys.eps_support(r)[0][0]


def truncate(model, v, k):
    """P_{<=k}(v): keep the X_alpha with i(alpha) <= k."""
    if k == INF:
        return v
    sys = model.sys
    n = model.n
    return Element({idx: c for idx, c in v.coeffs.items()
                    if idx >= n and first_index(sys, sys.root(idx - n)) <= k})


class BCDPlan:
    """Combinatorial data of a plus-form ideal: Y, order, M, L, sources, t."""

    def __init__(self, ideal):
        sys = ideal.sys
        self.ideal = ideal
        self.sys = sys
        fam, n = sys.family, sys.rank
        self.Y = {r: root_ij(sys, r) for r in ideal.roots}
        # alpha(1) is the biggest for the order: smaller j first, then smaller i
        self.order = sorted(ideal.roots, key=lambda r: (self.Y[r][1], self.Y[r][0]))
        self.pos = {r: k + 1 for k, r in enumerate(self.order)}
        by_height = {}
        for r in ideal.roots:
            by_height.setdefault(r.height, []).append(r)
        self.M = {min(rs, key=lambda r: self.Y[r][0]) for rs in by_height.values()}
        self.L = set(ideal.roots) - self.M
        self.M1 = {r for r in self.M if self.Y[r][0] == 1}
        self.M2 = self.M - self.M1
        self.sources = {r for r in ideal.roots
                        if not any(s != r and sys.leq(s, r) for s in ideal.roots)}
        self.s_map = {}
        for r in ideal.roots:
            below = [s for s in self.sources if sys.leq(s, r)]
            self.s_map[r] = min(below, key=lambda s: self.pos[s])
        self.t = [None] + [self._t(l) for l in range(1, n + 2)]
        self.min_height = min(r.height for r in ideal.roots)
        self.top = sys.coxeter_height
        self._check()

    def i(self, r):
        return self.Y[r][0]

    def j(self, r):
        return self.Y[r][1]

    def alpha(self, l):
        return self.order[l - 1]

    def _t(self, l):
        if l == 1:
            return INF
        sys = self.sys
        prev = self.alpha(l - 1)
        if prev not in self.M2:
            for r in self.ideal.roots:
                i, j = self.Y[r]
                diag = (i == j) if sys.family == "C" else (i == j - 1)
                if diag and sys.leq(r, prev):
                    return INF
        return min(self.i(self.s_map[b]) for b in self.order[:l - 1])

    def _check(self):
        sys = self.sys
        n = sys.rank
        ideal = self.ideal
        # sources via the (i+1, j), (i, j+1) criterion
        ys = set(self.Y.values())
        crit = {r for r in ideal.roots
                if (self.i(r) + 1, self.j(r)) not in ys and (self.i(r), self.j(r) + 1) not in ys}
        if crit != self.sources:
            raise ConsistencyError("source criterion disagrees with minimal elements")
        for a in ideal.roots:
            for b in ideal.roots:
                ij_le = self.i(a) >= self.i(b) and self.j(a) >= self.j(b)
                if sys.leq(a, b) != ij_le:
                    raise ConsistencyError("root order disagrees with the (i, j) order")
        for a in self.M2:
            if self.j(a) != self.j(self.s_map[a]):
                raise ConsistencyError("source of an M2 root has a different j")
        for a in ideal.roots:
            for b in ideal.roots:
                if self.j(a) == self.j(b) and self.s_map[a] != self.s_map[b]:
                    raise ConsistencyError("roots with equal j have different sources")
        t = self.t
        for l in range(1, n + 1):
            if t[l + 1] > t[l]:
                raise ConsistencyError("t sequence is not weakly decreasing")
            if t[l] < self.i(self.alpha(l)):
                raise ConsistencyError("t_l < i(alpha(l))")
            if t[l + 1] != t[l]:
                a = self.alpha(l)
                if not ((t[l] == INF and a in self.M2) or a in self.M1):
                    raise ConsistencyError("t changes outside the allowed cases")

    def L_count(self, l):
        """#L(l): number of L roots among alpha(1..l-1)."""
        return sum(1 for r in self.order[:l - 1] if r in self.L)

    def theta_range(self):
        """k with ht(gamma_0) - n + k < min ht(Y)."""
        n = self.sys.rank
        out = []
        k = 1
        while self.top - n + k < self.min_height:
            out.append(k)
            k += 1
        return out

    def labels(self, rs):
        return [self.sys.label(r) for r in sorted(rs, key=lambda r: self.pos[r])]

    def summary(self):
        t = ["inf" if x == INF else x for x in self.t[1:]]
        return {
            "order": [self.sys.label(r) for r in self.order],
            "M": self.labels(self.M), "L": self.labels(self.L),
            "M1": self.labels(self.M1), "M2": self.labels(self.M2),
            "sources": self.labels(self.sources),
            "t": t,
        }


def bcd_combinatorics(ideal):
    return BCDPlan(ideal)


def simple_sequence(fam, n, i, j):
    """Simple-root indices of e_i + e_j in the order used for Case 2."""
    if fam == "B":
        return list(range(i, n + 1)) + list(range(n, j - 1, -1))
    if fam == "C":
        return list(range(i, n + 1)) + list(range(n - 1, j - 1, -1))
    if fam == "D":
        return list(range(i, n - 1)) + [n] + list(range(n - 1, j - 1, -1))
    raise ValueError(fam)


def root_from_indices(sys, idxs):
    c = [0] * sys.rank
    for k in idxs:
        c[k - 1] += 1
    if not sys.is_root(c):
        raise ConsistencyError(f"{c} is not a root")
    return sys.root(tuple(c))


def d_special_beta(sys):
    """alpha_4 + ... + alpha_{n-2} + alpha_n (alpha_5 if n = 5), i.e. e4 + e_n."""
    n = sys.rank
    if n == 5:
        return sys.simple[4]
    return root_from_indices(sys, list(range(4, n - 1)) + [n])


def d_special_beta_mirror(sys):
    """alpha_4 + ... + alpha_{n-2} + alpha_{n-1} (alpha_4 if n = 5), i.e. e4 - e_n."""
    n = sys.rank
    return root_from_indices(sys, list(range(4, n)))


def annihilated_in(model, beta, u, v):
    """Nonzero combination of u, v killed by ad X_beta (u, v images proportional)."""
    x = model.X(beta)
    bu, bv = model.bracket(x, u), model.bracket(x, v)
    if bu.is_zero():
        return u
    if bv.is_zero():
        return v
    k = next(iter(bu.coeffs))
    out = u * bv[k] - v * bu[k]
    if not model.bracket(x, out).is_zero():
        raise ConsistencyError("brackets are not proportional")
    return out


class BCDChain:
    """Intermediate subspaces a_1..a_{n+1} and the steps between them."""

    def __init__(self, model, K, ideal):
        self.model = model
        self.K = K
        self.plan = BCDPlan(ideal)
        sys = model.sys
        self.sys = sys
        n = sys.rank
        self.lam = {h: K.lambda_of_height(h) for h in K.heights}
        self.d_branch = None
        if sys.family == "D" and self.plan.alpha(3) in self.plan.L:
            # Take Lambda^(n-1) inside the height n-1 part of K so that the
            # special unipotent step fixes it.
            beta = d_special_beta(sys)
            self.lam[n - 1] = annihilated_in(model, beta, self.lam[n - 1], K.z)
            self.d_branch = "l3_special"

    def theta(self, k):
        sys = self.sys
        if sys.family == "D" and k == 1:
            return self.K.z
        return self.lam[self.plan.top - sys.rank + k]

    def a(self, l):
        p = self.plan
        model = self.model
        tl = p.t[l]
        Yl = p.order[:l - 1]
        M2l = [b for b in Yl if b in p.M2]
        gens = [model.X(r) for r in Yl]
        for r in p.M2:
            if r in Yl:
                continue
            same = any(p.s_map[r] == p.s_map[b] for b in M2l)
            if same:
                gens.append(model.X(r))
            else:
                gens.append(truncate(model, self.lam[r.height], tl))
        for k in p.theta_range():
            if k > p.L_count(l):
                gens.append(truncate(model, self.theta(k), tl))
        for r in p.M1:
            if r not in Yl:
                gens.append(truncate(model, self.lam[r.height], tl))
        gens = [g for g in gens if not g.is_zero()]
        return Subspace.from_elements(gens, model.dim)

    def step(self, l):
        p = self.plan
        sys = self.sys
        n = sys.rank
        a = p.alpha(l)
        t0, t1 = p.t[l], p.t[l + 1]
        target = self.a(l + 1)
        if a in p.M1:
            if t1 == t0:
                return DeformationStep("identity", {"case": 1}, target=target)
            return toric_step(n, {t1: -1}, target=target, note="case 1")
        if a in p.L:
            if sys.family == "D" and l == 3:
                beta = d_special_beta(sys)
                note = "case 2, type D l=3"
            else:
                h = p.top - n + p.L_count(l) + 1
                if not h < p.min_height:
                    raise ConsistencyError("Case 2 height bookkeeping fails")
                seq = simple_sequence(sys.family, n, p.i(a), p.j(a))
                beta = root_from_indices(sys, seq[h:])
                note = f"case 2, h={h}"
            return DeformationStep("unipotent", {"element": self.model.X(beta),
                                                 "label": sys.label(beta)},
                                   target=target, note=note)
        # a in M2
        if t1 == t0 and t0 != INF:
            later = [b for b in p.M2 if p.pos[b] < p.pos[a] and p.s_map[b] == p.s_map[a]]
            if later:
                return DeformationStep("identity", {"case": "3a"}, target=target)
            sub = "3a"
        elif t1 != INF and t0 == INF:
            sub = "3b"
        else:
            raise ConsistencyError("M2 step outside cases (a) and (b)")
        step = toric_step(n, {t1: -2, p.j(a): -1}, target=target, note=f"case {sub}")
        if sub == "3b":
            allowed = {-3, -1, 0} if sys.family in ("B", "D") else {-3, 0}
            seen = set()
            for k in p.theta_range():
                if k > p.L_count(l):
                    for idx in self.theta(k).coeffs:
                        r = sys.root(idx - n)
                        seen.add(-2 * r.coords[t1 - 1] - r.coords[p.j(a) - 1])
            if not seen <= allowed:
                step.note += f"; Theta weights {sorted(seen)} outside {sorted(allowed)}"
                step.params["open_question_trigger"] = True
        return step


def chain_BCD(model, J, K, ideal, ideal_id=None):
    """J -> K, then one step per l from a_l to a_(l+1)."""
    ch = BCDChain(model, K, ideal)
    cert = Certificate(model, "BCD", ideal, ideal_id)
    cert.info.update(ch.plan.summary())
    if ch.d_branch:
        cert.info["d_branch"] = ch.d_branch
    if ch.a(1) != K.space:
        cert.notes.append("a_1 differs from K")
        cert.final_target = None
        return cert
    steps = [s for s, _ in K.steps] + [ch.step(l) for l in range(1, model.n + 1)]
    cert.run(J.centralizer, steps)
    cert.final_target = ideal.subspace(model)
    if ch.a(model.n + 1) != cert.final_target:
        cert.notes.append("a_(n+1) differs from the ideal")
        cert.final_target = None
    return cert


def chain_BCD_exceptional(model, J, K, ideal, ideal_id=None):
    sys = model.sys
    n = sys.rank
    tag = ideal.type_class
    target = ideal.subspace(model)
    cert = Certificate(model, "BCD_exceptional", ideal, ideal_id)
    cert.info["tag"] = tag
    if ideal.subcase:
        cert.info["subcase"] = ideal.subcase
    if tag in ("B_case1", "D_case2") or (tag == "D4_special" and ideal.subcase == "i"):
        steps = [toric_step(n, {1: -1}, target=target)]
    elif tag == "D4_special":
        k = {"ii": 4, "iii": 3}[ideal.subcase]
        steps = [toric_step(n, {k: -1}, target=target)]
    elif tag == "D_case3":
        beta = d_special_beta_mirror(sys)
        lam = annihilated_in(model, beta, K.lambda_of_height(n - 1), K.z)
        e23 = model.X("e2+e3")
        a1 = Subspace.from_elements([e23, lam] + [K.lambda_of_height(h)
                                                   for h in range(n, 2 * n - 2)], model.dim)
        a2 = span_of_roots(model, [sys.parse(lab) for lab in ["e2+e3", f"e1-e{n}"] + [
            f"e1+e{j}" for j in range(2, n)]])
        steps = [
            DeformationStep("unipotent", {"element": model.X(beta), "label": sys.label(beta)},
                            target=a1, note="root e4 - e_n"),
            toric_step(n, {1: -1}, target=a2),
            toric_step(n, {n: 1}, target=target),
        ]
        cert.notes.append("unipotent root alpha_4+...+alpha_{n-1} (e4 - e_n); "
                          "with e4 + e_n the chain ends at a plus-form ideal")
    else:
        raise ValueError(f"no exceptional chain for tag {tag}")
    cert.run(J.centralizer, [s for s, _ in K.steps] + steps)
    cert.final_target = target
    return cert


# ---------------------------------------------------------------------------
# exceptional types


def _roots_space(model, labels, extra=()):
    return Subspace.from_elements([model.X(lab) for lab in labels] + list(extra), model.dim)


E6_CORE = ["12321/2", "12321/1", "12221/1", "11221/1", "12211/1"]
E7_CORE = ["234321/2", "134321/2", "124321/2", "123321/2", "123221/2"]
E8_CORE = ["2465432/3", "2465431/3", "2465421/3", "2465321/3", "2464321/3",
           "2454321/3", "2354321/3"]

# For each exceptional type: (distinguishing root, steps) per ideal; the
# last declared target is the ideal's root set.  A step is
# ("toric", {k: c}) or ("unipotent", label), followed by the declared target.
# Targets: ("roots", labels), ("roots+f", labels, h) or ("ht+lam", h0, h).
EXCEPTIONAL_K_TO_IDEAL = {
    "G2": [(None, [])],
    "F4": [(None, [])],
    "E6": [
        ("01221/1", [("unipotent", "00110/0", ("roots+f", E6_CORE, 7)),
                     ("toric", {1: 1}, ("roots", E6_CORE + ["01221/1"]))]),
        ("11211/1", [("unipotent", "00110/0", ("roots+f", E6_CORE, 7)),
                     ("toric", {1: -1, 6: -1}, ("roots", E6_CORE + ["11211/1"]))]),
        ("12210/1", [("unipotent", "00110/0", ("roots+f", E6_CORE, 7)),
                     ("toric", {6: 1}, ("roots", E6_CORE + ["12210/1"]))]),
    ],
    "E7": [
        ("123210/2", [("toric", {2: -1}, ("roots", E7_CORE + ["123211/2", "123210/2"]))]),
        ("123211/2", [("unipotent", "000011/0", ("ht+lam", 13, 12)),
                      ("toric", {2: -1}, ("roots", E7_CORE + ["123321/1", "123211/2"]))]),
        ("123221/1", [("unipotent", "000011/0", ("ht+lam", 13, 12)),
                      ("toric", {2: 1}, ("roots", E7_CORE + ["123321/1", "123221/1"]))]),
    ],
    "E8": [
        ("1354321/3", [("toric", {2: -1}, ("roots", E8_CORE + ["1354321/3"]))]),
        ("2454321/2", [("unipotent", "0100000/0", ("roots", E8_CORE + ["2454321/2"]))]),
    ],
}


def _exceptional_target(model, K, desc):
    kind = desc[0]
    if kind == "roots":
        return _roots_space(model, desc[1])
    if kind == "roots+f":
        f = stated_j_basis(model, corrected=True)
        return _roots_space(model, desc[1], [f[desc[2]]])
    if kind == "ht+lam":
        labels = [model.sys.label(r) for r in model.sys.positive_roots if r.height >= desc[1]]
        return _roots_space(model, labels, [K.lambda_of_height(desc[2])])
    raise ValueError(kind)


def _exceptional_entry(sys, ideal):
    entries = EXCEPTIONAL_K_TO_IDEAL[sys.type_tag]
    if len(entries) == 1 and entries[0][0] is None:
        return entries[0]
    labels = set(ideal.labels())
    hits = [e for e in entries if set(e[1][-1][2][1]) == labels]
    if len(hits) != 1:
        raise ConsistencyError(f"no unique chain for {ideal.labels()}")
    return hits[0]


def chain_exceptional(model, J, K, ideal, ideal_id=None):
    sys = model.sys
    n = sys.rank
    marker, plan = _exceptional_entry(sys, ideal)
    cert = Certificate(model, "exceptional", ideal, ideal_id)
    cert.info.update({k: v for k, v in K.params.items()})
    if marker:
        cert.info["marker"] = marker
    steps = [s for s, _ in K.steps]
    for item in plan:
        target = _exceptional_target(model, K, item[2])
        if item[0] == "toric":
            steps.append(toric_step(n, item[1], target=target))
        else:
            lab = item[1]
            steps.append(DeformationStep("unipotent", {"element": model.X(lab), "label": lab},
                                         target=target))
    cert.run(J.centralizer, steps)
    cert.final_target = ideal.subspace(model)
    return cert


# ---------------------------------------------------------------------------
# dispatch


def chain_kind(ideal):
    fam = ideal.sys.family
    if fam == "A":
        return "type_A"
    if fam in ("B", "C", "D"):
        tag = ideal.type_class or classify_BCD(ideal)[0]
        return "BCD" if tag == "plus_only" else "BCD_exceptional"
    return "exceptional"


def acceptors(ideal):
    """Every chain kind whose precondition holds for the ideal."""
    sys = ideal.sys
    fam = sys.family
    out = []
    if fam == "A":
        try:
            partition_of_ideal_A(ideal)
            out.append("type_A")
        except ConsistencyError:
            pass
    if fam in ("B", "C", "D"):
        tag = classify_BCD(ideal)[0]
        if tag == "plus_only":
            out.append("BCD")
        else:
            out.append("BCD_exceptional")
    if fam in ("G", "F", "E"):
        try:
            _exceptional_entry(sys, ideal)
            out.append("exceptional")
        except ConsistencyError:
            pass
    return out


def certify_ideal(type_tag, rank, ideal, ideal_id=None):
    t0 = time.perf_counter()
    model, real, J, K = setup(type_tag, rank)
    kind = chain_kind(ideal)
    if kind == "type_A":
        cert = chain_type_A(model, real, J, ideal, ideal_id)
    elif kind == "BCD":
        cert = chain_BCD(model, J, K, ideal, ideal_id)
    elif kind == "BCD_exceptional":
        cert = chain_BCD_exceptional(model, J, K, ideal, ideal_id)
    else:
        cert = chain_exceptional(model, J, K, ideal, ideal_id)
    cert.millis = round(1000 * (time.perf_counter() - t0), 1)
    return cert


def ideals_of(type_tag, rank=None):
    model = setup(type_tag, rank)[0]
    return enumerate_ideals(model.sys)


def verify_type(type_tag, rank=None):
    """Certificates for one type: h -> J, J -> K, and one per ideal."""
    model, real, J, K = setup(type_tag, rank)
    certs = [verify_cartan_limit(model, J), k_certificate(model, J, K)]
    for k, ideal in enumerate(enumerate_ideals(model.sys)):
        certs.append(certify_ideal(type_tag, rank, ideal, k))
    return certs


# ---------------------------------------------------------------------------
# sp(6) worked example


def _mat(size, entries):
    M = [[Fraction(0)] * size for _ in range(size)]
    for (i, j), c in entries.items():
        M[i - 1][j - 1] = Fraction(c)
    return M


# Each displayed subspace as {parameter: {(row, column): coefficient}}.
SP6_J = {"a": {(1, 2): 1, (2, 3): 1, (3, 4): 1, (4, 5): -1, (5, 6): -1},
         "b": {(1, 4): 1, (2, 5): -1, (3, 6): 1},
         "c": {(1, 6): 1}}
SP6_K = {"a": {(1, 5): -1, (2, 6): -1},
         "b": {(1, 4): 1, (2, 5): -1, (3, 6): 1},
         "c": {(1, 6): 1}}
SP6_A1 = {"a": {(1, 5): 1, (2, 6): 1}, "b": {(1, 4): 1, (3, 6): 1}, "c": {(1, 6): 1}}
SP6_A2 = {"a": {(1, 5): 1, (2, 6): 1}, "b": {(2, 5): 1}, "c": {(1, 6): 1}}
SP6_D1 = [0, 1, 0, 0, -1, 0]
SP6_D2 = [1, 0, 0, 0, 0, -1]


def matrix_subspace(model, real, entries):
    size = real.matrix_size
    return Subspace.from_elements(
        [real.decompose(_mat(size, entries[p]), model.n) for p in sorted(entries)], model.dim)


def sp6_example():
    """Replays J -> K -> a_1, a_2 in sp(6) from the displayed matrices.

    Returns (checks, certificates): checks compares the displayed J and
    ideals with the computed ones.
    """
    model, real, J, _ = setup("C", 3)
    sub = {k: matrix_subspace(model, real, v) for k, v in
           (("J", SP6_J), ("K", SP6_K), ("a1", SP6_A1), ("a2", SP6_A2))}
    ideals = {frozenset(a.labels()): a for a in enumerate_ideals(model.sys)}
    found = {k: next((a for a in ideals.values() if a.subspace(model) == sub[k]), None)
             for k in ("a1", "a2")}
    checks = {
        "J_matches": sub["J"] == J.centralizer,
        "a1_is_ideal": found["a1"] is not None,
        "a2_is_ideal": found["a2"] is not None,
    }
    e25 = real.decompose(_mat(real.matrix_size, {(2, 5): 1}), model.n)
    c0 = Certificate(model, "sp6_J_to_K")
    c0.run(sub["J"], [DeformationStep("unipotent", {"element": e25, "label": "E25"},
                                      target=sub["K"])])
    c0.final_target = sub["K"]
    certs = [c0]
    for name, w in (("a1", SP6_D1), ("a2", SP6_D2)):
        c = Certificate(model, f"sp6_K_to_{name}", found[name])
        c.run(sub["K"], [DeformationStep("diag", {"w": w}, target=sub[name])], real)
        c.final_target = sub[name]
        certs.append(c)
    return checks, certs
