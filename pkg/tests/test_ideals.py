import pytest

from jordan_degen.ideals import (
    Partition, a_mu_positions, a_prime_mu_positions, all_partitions, classify_BCD,
    enumerate_ideals, highest_weight_check, partition_of_ideal_A,
)
from jordan_degen.liealg import build_model
from jordan_degen.roots import build_root_system

MU = Partition((4, 4, 1))


def test_a_mu_table_for_441():
    rows = {1: [8, 9, 10], 2: [9, 10], 3: [9, 10], 4: [9, 10]}
    assert a_mu_positions(MU) == sorted((i, j) for i, cs in rows.items() for j in cs)


def test_a_prime_mu_table_for_441():
    rows = {1: [6, 10], 2: [6, 10], 3: [6, 10], 4: [5, 6, 10]}
    assert a_prime_mu_positions(MU) == sorted((i, j) for i, cs in rows.items() for j in cs)


@pytest.mark.parametrize("n", range(1, 9))
def test_type_a_ideals_are_the_a_mu(n):
    sys = build_root_system("A", n)
    ideals = enumerate_ideals(sys)
    mus = sorted(partition_of_ideal_A(a).parts for a in ideals)
    assert mus == sorted(p.parts for p in all_partitions(n))


def test_exceptional_ideal_contents():
    f4 = enumerate_ideals(build_root_system("F4"))
    assert [a.labels() for a in f4] == [["2342", "1342", "1242", "1232"]]
    e8 = enumerate_ideals(build_root_system("E8"))
    assert sorted(a.contains_label("1354321/3") for a in e8) == [False, True]
    assert sorted(a.contains_label("2454321/2") for a in e8) == [False, True]
    g2 = enumerate_ideals(build_root_system("G2"))
    assert [a.labels() for a in g2] == [["32", "31"]]


def test_d4_subcases():
    sys = build_root_system("D", 4)
    tags = sorted(classify_BCD(a) for a in enumerate_ideals(sys))
    assert tags == [("D4_special", "i"), ("D4_special", "ii"), ("D4_special", "iii")]


@pytest.mark.parametrize("fam,n", [("B", 3), ("B", 6), ("C", 5), ("D", 5), ("D", 7)])
def test_bcd_classification(fam, n):
    sys = build_root_system(fam, n)
    tags = [a.type_class for a in enumerate_ideals(sys)]
    non_plus = sorted(t for t in tags if t != "plus_only")
    assert non_plus == {"B": ["B_case1"], "C": [], "D": ["D_case2", "D_case3"]}[fam]


@pytest.mark.parametrize("tag,rank", [("C", 4), ("D", 6), ("E6", None), ("E7", None)])
def test_ideals_are_abelian_upward_closed_and_distinct(tag, rank):
    sys = build_root_system(tag, rank)
    ideals = enumerate_ideals(sys)
    assert len({a.roots for a in ideals}) == len(ideals)
    for a in ideals:
        assert len(a.roots) == sys.rank
        assert a.is_abelian() and a.is_upward_closed() and highest_weight_check(a)


def test_abelian_span_brackets_to_zero():
    model = build_model("E7")[0]
    for a in enumerate_ideals(model.sys):
        xs = [model.X(r) for r in a.roots]
        assert all(model.bracket(x, y).is_zero() for x in xs for y in xs)


def test_partition_parse():
    assert Partition.parse("4, 4,1") == MU and str(MU) == "4,4,1" and MU.size == 9
    with pytest.raises(ValueError):
        Partition.parse("1,2")
