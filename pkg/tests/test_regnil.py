import pytest

from jordan_degen.chains import setup
from jordan_degen.deform import DeformationStep, Subspace
from jordan_degen.liealg import build_model
from jordan_degen.regnil import (
    EXCEPTIONAL_J_TO_K, J_BASIS_TERMS, declared_space, exponents, full_support,
    jordan_subalgebra, lambda_power, stated_j_basis,
)


@pytest.mark.parametrize("n", range(1, 7))
def test_sl_centralizer_is_powers_of_lambda(n):
    # Independent route: matrix powers of the regular nilpotent.
    model, real = build_model("A", n)
    J = jordan_subalgebra(model, real)
    powers = Subspace.from_elements([lambda_power(model, real, k) for k in range(1, n + 1)],
                                    model.dim)
    assert J.centralizer == powers


@pytest.mark.parametrize("fam,n", [("B", 3), ("B", 4), ("C", 3), ("C", 4)])
def test_bc_centralizer_is_odd_powers(fam, n):
    model, real = build_model(fam, n)
    J = jordan_subalgebra(model, real)
    odd = [lambda_power(model, real, 2 * k - 1) for k in range(1, n + 1)]
    assert J.centralizer == Subspace.from_elements(odd, model.dim)


def test_g2_centralizer():
    model = build_model("G2")[0]
    J = jordan_subalgebra(model)
    assert J.centralizer == Subspace.from_elements([model.lam(), model.X("32")], model.dim)


@pytest.mark.parametrize("tag,rank", [("A", 5), ("B", 5), ("D", 6), ("E7", None)])
def test_exponent_heights(tag, rank):
    model, real = build_model(tag, rank)
    J = jordan_subalgebra(model, real)
    assert J.graded_heights == exponents(model.sys)


def test_stated_bases_except_e8_f7_lie_in_kernel():
    for tag in J_BASIS_TERMS:
        model, _, J, _ = setup(tag)
        for h, v in stated_j_basis(model).items():
            inside = model.bracket(model.lam(), v).is_zero()
            assert inside == ((tag, h) != ("E8", 7)), (tag, h)


def test_e8_f7_written_coefficient_is_a_typo():
    model, _, J, _ = setup("E8")
    written = stated_j_basis(model)[7]
    fixed = stated_j_basis(model, corrected=True)[7]
    # the only difference is the X_1111111/0 coefficient, -2 vs -3
    assert fixed - written == model.X("1111111/0", -1)
    assert J.centralizer.contains(fixed)
    expected = model.elem([(1, "0111111/1"), (-1, "0121110/1"), (1, "0122100/1"),
                           (-3, "1111111/0"), (2, "1111110/1"), (-1, "1121100/1"),
                           (1, "1221000/1")])
    assert fixed == expected
    # [Lambda, f_7] at X_1111111/1 is 1 + 2 + c
    bad = model.bracket(model.lam(), written)
    assert bad[model.x_index("1111111/1")] == 1


@pytest.mark.parametrize("tag,rank", [("B", 5), ("C", 4), ("D", 5), ("D", 6), ("F4", None),
                                      ("E6", None), ("E7", None), ("E8", None)])
def test_k_has_full_support(tag, rank):
    model, _, _, K = setup(tag, rank)
    assert K.space.dim == model.n
    for h, g in zip(K.heights, K.generators):
        assert full_support(model, g, h)
    for s, out in K.steps:
        assert s.target == out


def test_e6_written_pair_is_degenerate():
    model, _, _, K = setup("E6")
    f = stated_j_basis(model, corrected=True)
    for a, b in [(1, 1), (1, 2), (2, 1), (3, -5)]:
        S = model.elem([(a, "11111/0"), (b, "01210/1")])
        assert model.bracket(S, f[4]).is_zero()
    assert K.params["stated_pair_degenerate"] is True
    assert K.params["pair"] != K.params["stated_pair"]


@pytest.mark.parametrize("k,written", [(2, "1232100/2"), (3, "1232111/2")])
def test_e8_written_step_roots_miss_their_targets(k, written):
    model, _, J, K = setup("E8")
    before = K.steps[k - 1][1]
    target = declared_space(model, EXCEPTIONAL_J_TO_K["E8"][k][2])
    out = DeformationStep("unipotent", {"element": model.X(written)}).run(before, model)
    assert out != target
    assert K.steps[k][1] == target


def test_e8_final_step_root_is_alpha3():
    model = build_model("E8")[0]
    assert model.sys.parse("0100000/0") == model.sys.simple[2]
