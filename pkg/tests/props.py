"""Property suites shared by the unit tests and the acceptance suite."""

from fractions import Fraction

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from jordan_degen.chains import cartan_subspace, setup, toric_step
from jordan_degen.deform import (
    LaurentElement, SubspaceFamily, apply_diag, apply_unipotent, exp_ad_series,
    subspace_limit,
)
from jordan_degen.exact import kernel, rank, rref
from jordan_degen.ideals import enumerate_ideals, highest_weight_check
from jordan_degen.liealg import Element, build_model

small_q = st.fractions(min_value=-5, max_value=5, max_denominator=4)
matrices = st.integers(1, 5).flatmap(lambda r: st.integers(1, 6).flatmap(
    lambda c: st.lists(st.lists(small_q, min_size=c, max_size=c), min_size=r, max_size=r)))


# ---------------------------------------------------------------------------
# rref / kernel


@settings(max_examples=200, deadline=None)
@given(matrices)
def rref_kernel_consistency(m):
    ncols = len(m[0])
    r, red = rref(m, ncols)
    ker = kernel(m, ncols)
    assert r + len(ker) == ncols
    for v in ker:
        assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in m)
    # reduced form is idempotent and spans the same row space
    assert rref(red, ncols) == (r, red)
    assert rank(m + red[:r], ncols) == r
    assert rank(ker, ncols) == len(ker) if ker else True


# ---------------------------------------------------------------------------
# limit engine: independence of the chosen generators


def _families():
    """(name, family) pairs the re-generation property is run on."""
    out = []
    model, real, J, K = setup("B", 3)
    S = K.params["S"]
    out.append(("B3 J->K", model, apply_unipotent(J.centralizer, S, model)))
    model, real, J, K = setup("E6")
    out.append(("E6 K toric", model, toric_step(6, {1: -1, 6: -1}).family(K.space, model)))
    model, real, J, K = setup("A", 4)
    out.append(("A4 diag", model, apply_diag(J.centralizer, [7, 3, 0, -4, -6], model, real)))
    model, real, J, K = setup("G2")
    out.append(("G2 h->J", model, apply_unipotent(cartan_subspace(model), model.lam(), model)))
    return out


_FAMILIES = None


def families():
    global _FAMILIES
    if _FAMILIES is None:
        _FAMILIES = [(name, fam, subspace_limit(fam)) for name, _, fam in _families()]
    return _FAMILIES


@st.composite
def regeneration(draw):
    fams = families()
    k = draw(st.integers(0, len(fams) - 1))
    name, fam, limit = fams[k]
    d = len(fam.generators)
    shifts = draw(st.lists(st.integers(-3, 3), min_size=d, max_size=d))
    # unit lower-triangular times a permutation: always invertible
    perm = draw(st.permutations(range(d)))
    lower = [[draw(st.integers(-3, 3)) if j < i else int(i == j) for j in range(d)]
             for i in range(d)]
    return name, fam, limit, shifts, perm, lower


@settings(max_examples=50, deadline=None, suppress_health_check=list(HealthCheck))
@given(regeneration())
def limit_basis_independence(data):
    name, fam, limit, shifts, perm, lower = data
    gens = [fam.generators[p].shift(s) for p, s in zip(perm, shifts)]
    new = []
    for row in lower:
        acc = LaurentElement()
        for c, g in zip(row, gens):
            if c:
                acc = acc + g.scale(Fraction(c))
        new.append(acc)
    again = subspace_limit(SubspaceFamily(fam.ambient_dim, new))
    assert again == limit, name


# ---------------------------------------------------------------------------
# exp(t^-1 ad x) is an automorphism over Laurent coefficients


def laurent_bracket(model, u, v):
    out = LaurentElement()
    for du in sorted({e for p in u.coeffs.values() for e, _ in p.terms()}):
        a = u.coefficient(du)
        for dv in sorted({e for p in v.coeffs.values() for e, _ in p.terms()}):
            b = v.coefficient(dv)
            out = out + LaurentElement.constant(model.bracket(a, b)).shift(du + dv)
    return out


AUTO_TYPES = [("A", 3), ("B", 3), ("C", 3), ("D", 4), ("G2", None), ("F4", None)]


@st.composite
def automorphism_case(draw):
    tag, rank_ = draw(st.sampled_from(AUTO_TYPES))
    model = build_model(tag, rank_)[0]
    coef = st.integers(-2, 2)

    def elem(nilpotent):
        lo = model.n if nilpotent else 0
        idx = draw(st.lists(st.integers(lo, model.dim - 1), min_size=1, max_size=4))
        return Element({k: draw(coef) for k in idx})

    return model, elem(True), elem(False), elem(False)


@settings(max_examples=100, deadline=None, suppress_health_check=list(HealthCheck))
@given(automorphism_case())
def exp_ad_automorphism(case):
    model, x, y, z = case
    lhs = exp_ad_series(model, x, model.bracket(y, z))
    rhs = laurent_bracket(model, exp_ad_series(model, x, y), exp_ad_series(model, x, z))
    assert lhs == rhs


# ---------------------------------------------------------------------------
# highest-weight annihilation of the wedge of every ideal


CONFIGURED = ([("A", n) for n in range(1, 9)] + [("B", n) for n in range(2, 8)]
              + [("C", n) for n in range(2, 8)] + [("D", n) for n in range(4, 8)]
              + [(t, None) for t in ("G2", "F4", "E6", "E7", "E8")])


def wedge_annihilation_all():
    """Two routes per ideal: root combinatorics, and ad X_{alpha_i} stability
    of the span (for nilpotent X the wedge is scaled by the trace, 0)."""
    checked = 0
    for tag, r in CONFIGURED:
        model = build_model(tag, r)[0]
        for ideal in enumerate_ideals(model.sys):
            assert highest_weight_check(ideal)
            space = ideal.subspace(model)
            for a in model.sys.simple:
                for v in space.elements():
                    assert space.contains(model.bracket(model.X(a), v))
            checked += 1
    return checked
