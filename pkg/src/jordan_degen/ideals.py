"""n-dimensional abelian ideals of the Borel subalgebra.

An abelian ideal is spanned by root vectors X_alpha for an upward closed
set of positive roots in which no two roots (a root with itself included)
sum to a root.
"""

from .deform import span_of_roots
from .liealg import ConsistencyError
from .roots import upward_closure_test


class AbelianIdeal:
    """Root set of an abelian ideal, with its span and an optional tag."""

    def __init__(self, sys, roots, type_class=None, subcase=None):
        self.sys = sys
        self.roots = frozenset(sys.root(r) for r in roots)
        self.type_class = type_class
        self.subcase = subcase

    @property
    def rank(self):
        return self.sys.rank

    def sorted_roots(self):
        """Roots from highest to lowest in the canonical order."""
        return sorted(self.roots, key=lambda r: self.sys.idx(r), reverse=True)

    def labels(self):
        return [self.sys.label(r) for r in self.sorted_roots()]

    def key(self):
        return tuple(self.sys.idx(r) for r in self.sorted_roots())

    def subspace(self, model):
        return span_of_roots(model, self.sorted_roots())

    def contains_label(self, label):
        return self.sys.parse(label) in self.roots

    def is_upward_closed(self):
        return upward_closure_test(self.roots, self.sys)

    def is_abelian(self):
        rs = list(self.roots)
        return all(self.sys.add(a, b) is None for a in rs for b in rs)

    def __eq__(self, other):
        return isinstance(other, AbelianIdeal) and self.roots == other.roots

    def __hash__(self):
        return hash(self.roots)

    def __repr__(self):
        return f"AbelianIdeal({self.labels()})"


def _addable(sys, current, r):
    """r can join the upper set ``current`` keeping it upward closed and abelian."""
    for a in sys.simple:
        up = sys.add(r, a)
        if up is not None and up not in current:
            return False
    if sys.add(r, r) is not None:
        return False
    return all(sys.add(r, s) is None for s in current)


def enumerate_ideals(sys, size=None):
    """All upward closed abelian root sets of the given size (default: rank).

    Grows upper sets one root at a time from the maximal root, pruning as
    soon as a set stops being abelian; duplicates are merged per level.
    """
    size = sys.rank if size is None else size
    level = {frozenset([sys.maximal_root])}
    for _ in range(size - 1):
        nxt = set()
        for cur in level:
            for r in sys.positive_roots:
                if r not in cur and _addable(sys, cur, r):
                    nxt.add(cur | {r})
        level = nxt
    out = [AbelianIdeal(sys, s) for s in level]
    out.sort(key=lambda a: a.key(), reverse=True)
    if sys.family in ("B", "C", "D"):
        for a in out:
            a.type_class, a.subcase = classify_BCD(a)
    return out


def highest_weight_check(ideal):
    """X_{alpha_i} kills the wedge of the ideal's root vectors for every i.

    The derivation action replaces one factor X_beta by a multiple of
    X_{beta + alpha_i}; the result vanishes iff each such root is already
    a factor, since repeated factors kill the wedge and new factors give
    independent monomials.
    """
    sys = ideal.sys
    for a in sys.simple:
        for b in ideal.roots:
            up = sys.add(b, a)
            if up is not None and up not in ideal.roots:
                return False
    return True


# ---------------------------------------------------------------------------
# type A


class Partition:
    """Weakly decreasing positive parts."""

    __slots__ = ("parts",)

    def __init__(self, parts):
        parts = tuple(int(p) for p in parts)
        if not parts or any(p <= 0 for p in parts):
            raise ValueError("partition parts must be positive")
        if any(parts[k] < parts[k + 1] for k in range(len(parts) - 1)):
            raise ValueError("partition parts must be weakly decreasing")
        self.parts = parts

    @classmethod
    def parse(cls, text):
        return cls(int(x) for x in str(text).replace(" ", "").split(",") if x)

    @property
    def size(self):
        return sum(self.parts)

    def __len__(self):
        return len(self.parts)

    def __getitem__(self, k):
        return self.parts[k]

    def __eq__(self, other):
        return isinstance(other, Partition) and self.parts == other.parts

    def __hash__(self):
        return hash(self.parts)

    def __str__(self):
        return ",".join(str(p) for p in self.parts)

    def __repr__(self):
        return f"Partition({self.parts})"


def partitions(n, largest=None):
    """All partitions of n, largest parts first."""
    if n == 0:
        yield ()
        return
    largest = n if largest is None else min(largest, n)
    for first in range(largest, 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def all_partitions(n):
    return [Partition(p) for p in partitions(n)]


def _type_a_root(sys, i, j):
    """Root e_i - e_j (the root of the matrix unit E_{i,j})."""
    eps = [0] * (sys.rank + 1)
    eps[i - 1], eps[j - 1] = 1, -1
    for r in sys.positive_roots:
        if r.eps == tuple(eps):
            return r
    raise KeyError((i, j))


def matrix_positions_of(ideal):
    """(row, column) of the matrix unit of every root of a type A ideal."""
    out = []
    for r in ideal.roots:
        sup = ideal.sys.eps_support(r)
        i = next(k for k, c in sup if c == 1)
        j = next(k for k, c in sup if c == -1)
        out.append((i, j))
    return sorted(out)


def a_mu_positions(mu):
    n = mu.size
    return sorted((j, n - k + 2) for k in range(1, len(mu) + 1) for j in range(1, mu[k - 1] + 1))


def a_prime_mu_positions(mu):
    m1 = mu[0]
    out = []
    for k in range(1, len(mu) + 1):
        col = m1 + sum(mu.parts[k:]) + 1
        for j in range(1, mu[k - 1] + 1):
            out.append((m1 + 1 - j, col))
    return sorted(out)


def a_mu(sys, mu):
    return AbelianIdeal(sys, [_type_a_root(sys, i, j) for i, j in a_mu_positions(mu)])


def a_prime_mu(sys, mu):
    """Root set of a'_mu; abelian and n-dimensional but not an ideal in general."""
    return AbelianIdeal(sys, [_type_a_root(sys, i, j) for i, j in a_prime_mu_positions(mu)])


def partition_of_ideal_A(ideal):
    """The partition mu with ideal = a_mu (column n+2-k holds mu_k entries)."""
    sys = ideal.sys
    n = sys.rank
    pos = matrix_positions_of(ideal)
    parts = []
    for k in range(1, n + 1):
        c = sum(1 for _, j in pos if j == n - k + 2)
        if c == 0:
            break
        parts.append(c)
    try:
        mu = Partition(parts)
    except ValueError:
        raise ConsistencyError("ideal is not of the form a_mu") from None
    if mu.size != n or a_mu_positions(mu) != pos:
        raise ConsistencyError("ideal is not of the form a_mu")
    return mu


# ---------------------------------------------------------------------------
# types B, C, D


TAGS = ("plus_only", "B_case1", "D_case2", "D_case3", "D4_special")


def _eps_roots(sys, labels):
    return frozenset(sys.parse(lab) for lab in labels)


def b_case1_roots(sys):
    n = sys.rank
    return _eps_roots(sys, ["e1"] + [f"e1+e{j}" for j in range(2, n + 1)])


def d_case2_roots(sys):
    n = sys.rank
    return _eps_roots(sys, [f"e1-e{n}"] + [f"e1+e{j}" for j in range(2, n + 1)])


def d_case3_roots(sys):
    n = sys.rank
    return _eps_roots(sys, ["e2+e3", f"e1-e{n}"] + [f"e1+e{j}" for j in range(2, n)])


def d4_subcases(sys):
    """The three D4 ideals, keyed (i), (ii), (iii)."""
    return {
        "i": _eps_roots(sys, ["e1-e4", "e1+e2", "e1+e3", "e1+e4"]),
        "ii": _eps_roots(sys, ["e2+e3", "e1+e2", "e1+e3", "e1+e4"]),
        "iii": _eps_roots(sys, ["e2+e3", "e1-e4", "e1+e2", "e1+e3"]),
    }


def is_plus_form(sys, r):
    """r = e_i + e_j with i <= j (2e_i counts, e_i does not)."""
    sup = sys.eps_support(r)
    if len(sup) == 1:
        return sup[0][1] == 2
    return all(c == 1 for _, c in sup)


def classify_BCD(ideal):
    """(tag, subcase) following the plus-form trichotomy for types B, C, D."""
    sys = ideal.sys
    fam, n = sys.family, sys.rank
    roots = ideal.roots
    if fam not in ("B", "C", "D"):
        raise ValueError("classification applies to types B, C, D")
    if fam == "D" and n == 4:
        for key, rs in d4_subcases(sys).items():
            if roots == rs:
                return "D4_special", key
        raise ConsistencyError(f"unclassifiable D4 ideal {ideal.labels()}")
    if all(is_plus_form(sys, r) for r in roots):
        return "plus_only", None
    if fam == "B" and roots == b_case1_roots(sys):
        return "B_case1", None
    if fam == "D" and roots == d_case2_roots(sys):
        return "D_case2", None
    if fam == "D" and roots == d_case3_roots(sys):
        return "D_case3", None
    raise ConsistencyError(f"unclassifiable ideal {ideal.labels()}")
