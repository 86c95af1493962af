import pytest

from jordan_degen.roots import build_root_system, parse_type, upward_closure_test

# (type, rank, #positive roots, height of the maximal root)
SIZES = [("A", 4, 10, 4), ("B", 3, 9, 5), ("C", 3, 9, 5), ("D", 4, 12, 5), ("D", 6, 30, 9),
         ("G2", None, 6, 5), ("F4", None, 24, 11), ("E6", None, 36, 11),
         ("E7", None, 63, 17), ("E8", None, 120, 29)]


@pytest.mark.parametrize("tag,rank,count,top", SIZES)
def test_counts_and_maximal_root(tag, rank, count, top):
    sys = build_root_system(tag, rank)
    assert len(sys) == count
    assert sys.coxeter_height == top
    # every root but the maximal one has a simple root above it
    for r in sys.positive_roots:
        ups = [sys.add(r, a) for a in sys.simple]
        assert (r == sys.maximal_root) == all(u is None for u in ups)


def test_canonical_order_and_labels():
    sys = build_root_system("E8")
    hs = [r.height for r in sys.positive_roots]
    assert hs == sorted(hs)
    assert sys.label(sys.maximal_root) == "2465432/3"
    for r in sys.positive_roots:
        assert sys.parse(sys.label(r)) == r
    b = build_root_system("B", 3)
    assert b.label(b.maximal_root) == "e1+e2"
    assert b.parse("e3") == b.simple[2]


def test_bourbaki_labels_classical():
    c = build_root_system("C", 3)
    assert [c.label(a) for a in c.simple] == ["e1-e2", "e2-e3", "2e3"]
    d = build_root_system("D", 5)
    assert [d.label(a) for a in d.simple] == ["e1-e2", "e2-e3", "e3-e4", "e4-e5", "e4+e5"]


def test_order_and_closure():
    sys = build_root_system("F4")
    top = sys.maximal_root
    assert all(sys.leq(r, top) for r in sys.positive_roots)
    assert upward_closure_test([top], sys)
    assert not upward_closure_test([sys.simple[0]], sys)


def test_parse_type_forms():
    assert parse_type("b3") == ("B", 3, "B")
    assert parse_type("E", 7) == ("E", 7, "E7")
    with pytest.raises(ValueError):
        parse_type("D", 3)
    with pytest.raises(ValueError):
        parse_type("E9")
