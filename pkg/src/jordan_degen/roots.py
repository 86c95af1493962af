"""Positive root systems in Bourbaki labeling.

Roots are generated by closure from the simple roots using root strings,
so nothing about the positive system is tabulated by hand.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

CLASSICAL = ("A", "B", "C", "D")
EXCEPTIONAL = ("G2", "F4", "E6", "E7", "E8")

MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 4}


@dataclass(frozen=True, order=True)
class Root:
    coords: tuple
    eps: tuple = field(default=None, compare=False)

    @property
    def height(self):
        return sum(self.coords)


def height(r):
    return sum(r.coords)


def parse_type(type_tag, rank=None):
    """Normalize ("E", 6), ("E6", None) or ("B", 3) to (family, rank, tag)."""
    tag = str(type_tag).upper()
    if tag in EXCEPTIONAL:
        r = int(tag[1])
        if rank is not None and int(rank) != r:
            raise ValueError(f"{tag} has rank {r}, not {rank}")
        return tag[0], r, tag
    if tag in ("G", "F", "E") and rank is not None:
        full = f"{tag}{int(rank)}"
        if full not in EXCEPTIONAL:
            raise ValueError(f"unsupported type {full}")
        return tag, int(rank), full
    if tag[:1] in CLASSICAL and tag[1:].isdigit():
        if rank is not None and int(rank) != int(tag[1:]):
            raise ValueError(f"{tag} has rank {tag[1:]}, not {rank}")
        tag, rank = tag[0], int(tag[1:])
    if tag in CLASSICAL:
        if rank is None:
            raise ValueError(f"type {tag} needs a rank")
        rank = int(rank)
        if rank < MIN_RANK[tag]:
            raise ValueError(f"type {tag} needs rank >= {MIN_RANK[tag]}")
        return tag, rank, tag
    raise ValueError(f"unknown type {type_tag!r}")


def _unit(n, i, c=1):
    v = [Fraction(0)] * n
    v[i] = Fraction(c)
    return v


def simple_roots_eps(family, n):
    """Simple roots as epsilon vectors (classical types)."""
    if family == "A":
        dim = n + 1
    else:
        dim = n
    out = []
    for i in range(n - 1):
        v = _unit(dim, i)
        v[i + 1] = Fraction(-1)
        out.append(v)
    if family == "A":
        v = _unit(dim, n - 1)
        v[n] = Fraction(-1)
        out.append(v)
    elif family == "B":
        out.append(_unit(dim, n - 1))
    elif family == "C":
        out.append(_unit(dim, n - 1, 2))
    elif family == "D":
        v = _unit(dim, n - 2)
        v[n - 1] = Fraction(1)
        out.append(v)
    return out


def _exceptional_gram(tag):
    if tag == "G2":
        return [[2, -3], [-3, 6]]
    if tag == "F4":
        return [[4, -2, 0, 0], [-2, 4, -2, 0], [0, -2, 2, -1], [0, 0, -1, 2]]
    n = int(tag[1])
    g = [[0] * n for _ in range(n)]
    for i in range(n):
        g[i][i] = 2
    # Bourbaki E_n: chain 1-3-4-5-...-n with 2 attached to 4.
    edges = [(1, 3), (2, 4)] + [(k, k + 1) for k in range(3, n)]
    for a, b in edges:
        g[a - 1][b - 1] = g[b - 1][a - 1] = -1
    return g


class RootSystem:
    """Positive roots of a simple type, canonically ordered.

    Order is by height, then lexicographically on simple coordinates.
    """

    def __init__(self, family, rank, tag):
        self.family = family
        self.rank = rank
        self.type_tag = tag
        n = rank
        if family in CLASSICAL:
            self.simple_eps = simple_roots_eps(family, n)
            self.gram = [[sum(a * b for a, b in zip(u, v)) for v in self.simple_eps]
                         for u in self.simple_eps]
        else:
            self.simple_eps = None
            self.gram = [[Fraction(x) for x in row] for row in _exceptional_gram(tag)]
        # <beta, alpha_i^vee> = 2 (beta, alpha_i) / (alpha_i, alpha_i)
        self.cartan = [[int(2 * self.gram[i][j] / self.gram[j][j]) for j in range(n)]
                       for i in range(n)]
        coords = self._generate()
        coords.sort(key=lambda c: (sum(c), c))
        self.positive_roots = [Root(c, self._eps_of(c)) for c in coords]
        self.index = {r.coords: k for k, r in enumerate(self.positive_roots)}
        self.simple = [self.positive_roots[self.index[tuple(int(i == j) for j in range(n))]]
                       for i in range(n)]
        self.sum_table = {}
        for a, ra in enumerate(self.positive_roots):
            for b, rb in enumerate(self.positive_roots):
                c = tuple(x + y for x, y in zip(ra.coords, rb.coords))
                if c in self.index:
                    self.sum_table[(a, b)] = self.index[c]
        tops = [r for r in self.positive_roots
                if all(self.add(r, s) is None for s in self.simple)]
        if len(tops) != 1:
            raise AssertionError("root system has no unique maximal root")
        self.maximal_root = tops[0]

    def _generate(self):
        n = self.rank
        found = {tuple(int(i == j) for j in range(n)) for i in range(n)}
        layer = sorted(found)
        while layer:
            nxt = set()
            for c in layer:
                for i in range(n):
                    p = 0
                    d = list(c)
                    while True:
                        d[i] -= 1
                        if tuple(d) in found:
                            p += 1
                        else:
                            break
                    pairing = sum(c[j] * self.cartan[j][i] for j in range(n))
                    q = p - pairing
                    if q > 0:
                        up = list(c)
                        up[i] += 1
                        nxt.add(tuple(up))
            nxt -= found
            found |= nxt
            layer = sorted(nxt)
        return sorted(found)

    def _eps_of(self, coords):
        if self.simple_eps is None:
            return None
        dim = len(self.simple_eps[0])
        return tuple(sum((c * v[k] for c, v in zip(coords, self.simple_eps)), Fraction(0))
                     for k in range(dim))

    # basic queries

    def __len__(self):
        return len(self.positive_roots)

    def __iter__(self):
        return iter(self.positive_roots)

    def idx(self, r):
        if isinstance(r, Root):
            return self.index[r.coords]
        if isinstance(r, str):
            return self.index[self.parse(r).coords]
        return self.index[tuple(r)]

    def root(self, key):
        if isinstance(key, Root):
            return key
        if isinstance(key, int):
            return self.positive_roots[key]
        if isinstance(key, str):
            return self.parse(key)
        return self.positive_roots[self.index[tuple(key)]]

    def is_root(self, coords):
        return tuple(coords) in self.index

    def add(self, a, b):
        c = tuple(x + y for x, y in zip(a.coords, b.coords))
        k = self.index.get(c)
        return None if k is None else self.positive_roots[k]

    def sub(self, a, b):
        c = tuple(x - y for x, y in zip(a.coords, b.coords))
        k = self.index.get(c)
        return None if k is None else self.positive_roots[k]

    def leq(self, a, b):
        """a <= b in the root order (b - a is a nonnegative combination)."""
        return all(x <= y for x, y in zip(a.coords, b.coords))

    def pairing(self, beta, i):
        """<beta, alpha_i^vee>, i.e. beta(H_i)."""
        return sum(beta.coords[j] * self.cartan[j][i] for j in range(self.rank))

    def string_down(self, beta, alpha):
        """Largest p >= 0 with beta - k*alpha a positive root for k = 1..p."""
        p = 0
        c = list(beta.coords)
        while True:
            c = [x - y for x, y in zip(c, alpha.coords)]
            if tuple(c) in self.index:
                p += 1
            else:
                return p

    def roots_of_height(self, h):
        return [r for r in self.positive_roots if r.height == h]

    @property
    def coxeter_height(self):
        return self.maximal_root.height

    # labels

    def label(self, r):
        if self.family in ("G", "F"):
            return "".join(str(d) for d in r.coords)
        if self.family == "E":
            d = r.coords
            top = [d[0]] + list(d[2:])
            return "".join(str(x) for x in top) + "/" + str(d[1])
        return eps_label(r.eps)

    def parse(self, label):
        label = label.strip()
        if self.family in ("G", "F"):
            coords = tuple(int(ch) for ch in label)
        elif self.family == "E":
            top, bottom = label.split("/")
            t = [int(ch) for ch in top]
            coords = tuple([t[0], int(bottom)] + t[1:])
        else:
            target = parse_eps_label(label, len(self.simple_eps[0]))
            for r in self.positive_roots:
                if r.eps == target:
                    return r
            raise KeyError(label)
        if coords not in self.index:
            raise KeyError(label)
        return self.positive_roots[self.index[coords]]

    # classical epsilon helpers

    def eps_support(self, r):
        """Nonzero epsilon coordinates as [(index_1based, coeff)]."""
        return [(k + 1, c) for k, c in enumerate(r.eps) if c != 0]

    def __repr__(self):
        return f"RootSystem({self.type_tag}{self.rank if self.family in CLASSICAL else ''})"


def eps_label(eps):
    terms = [(k + 1, c) for k, c in enumerate(eps) if c != 0]
    out = ""
    for k, c in terms:
        if c == 1:
            s = f"e{k}"
        elif c == -1:
            s = f"-e{k}"
        else:
            s = f"{c}e{k}"
        if out and not s.startswith("-"):
            out += "+"
        out += s
    return out


def parse_eps_label(label, dim):
    v = [Fraction(0)] * dim
    s = label.replace(" ", "").replace("-", "+-")
    for part in s.split("+"):
        if not part:
            continue
        coeff, _, idx = part.partition("e")
        if coeff in ("", "+"):
            c = 1
        elif coeff == "-":
            c = -1
        else:
            c = int(coeff)
        v[int(idx) - 1] += c
    return tuple(v)


@lru_cache(maxsize=None)
def _build(family, rank, tag):
    return RootSystem(family, rank, tag)


def build_root_system(type_tag, rank=None):
    family, rank, tag = parse_type(type_tag, rank)
    return _build(family, rank, tag)


def upward_closure_test(s, sys):
    """True iff s (roots or labels) is closed under adding simple roots."""
    s = {sys.root(r).coords for r in s}
    for c in s:
        for a in sys.simple:
            up = tuple(x + y for x, y in zip(c, a.coords))
            if up in sys.index and up not in s:
                return False
    return True
