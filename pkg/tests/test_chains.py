import json

import pytest

from jordan_degen.chains import (
    SP6_A1, SP6_A2, BCDPlan, Certificate, acceptors, chain_BCD, chain_kind, chain_type_A,
    d_special_beta, i_of_h, ideals_of, ie_violations, matrix_subspace, mu_permutation, setup,
    solve_ie, verify_cartan_limit, verify_type,
)
from jordan_degen.deform import DeformationStep, Subspace
from jordan_degen.ideals import (
    AbelianIdeal, Partition, a_mu_positions, a_prime_mu_positions, all_partitions,
    d_case3_roots, matrix_positions_of,
)

from props import CONFIGURED


# ---------------------------------------------------------------------------
# (IE_mu)


@pytest.mark.parametrize("n", [1, 2, 5, 9])
def test_single_row(n):
    sol = solve_ie(Partition((n,)))
    assert sol.z == [(n + 1)] * (n - 1) + [0]


@pytest.mark.parametrize("n,pattern", [(2, [0, 1]), (4, [2, 0, 3, 1]), (6, [2, 2, 0, 3, 2, 1]),
                                       (8, [2, 2, 2, 0, 3, 2, 2, 1])])
def test_two_equal_rows(n, pattern):
    sol = solve_ie(Partition((n // 2, n // 2)))
    assert sol.z == [(n + 1) * x for x in pattern]


def test_441_solution_and_route():
    sol = solve_ie(Partition((4, 4, 1)))
    assert sol.route[-1] == "sum+1"
    assert len(sol.w) == 10 and sum(sol.w) == 0


def test_literal_case1_fails_for_21():
    # z' = (0, 1) for (1, 1); prepending the sum gives (1, 0, 1), where
    # z_2(2) = z_1(2) = 1.
    assert ie_violations(Partition((2, 1)), [1, 0, 1]) == [("window", 2, 1)]
    assert ie_violations(Partition((2, 1)), solve_ie(Partition((2, 1))).z) == []


def test_i_of_h_picks_the_unique_entry():
    for n in range(1, 9):
        for mu in all_partitions(n):
            pos = set(a_prime_mu_positions(mu))
            for h in range(1, n + 1):
                hits = [i for i, j in pos if j - i == h]
                assert hits == [i_of_h(mu, h)]


def test_permutation_carries_a_prime_to_a():
    for n in range(1, 10):
        for mu in all_partitions(n):
            perm = mu_permutation(mu)
            assert sorted(perm) == list(range(1, n + 2))
            moved = sorted((perm[i - 1], perm[j - 1]) for i, j in a_prime_mu_positions(mu))
            assert moved == a_mu_positions(mu)


def test_type_a_chain_for_441():
    model, real, J, _ = setup("A", 9)
    ideal = next(a for a in ideals_of("A", 9)
                 if sorted(a_mu_positions(Partition((4, 4, 1)))) == matrix_positions_of(a))
    cert = chain_type_A(model, real, J, ideal)
    assert cert.passed and cert.final == ideal.subspace(model)


def test_type_a_last_column_ideal():
    model, real, J, _ = setup("A", 4)
    ideal = next(a for a in ideals_of("A", 4) if matrix_positions_of(a) == [(i, 5) for i in range(1, 5)])
    cert = chain_type_A(model, real, J, ideal)
    assert cert.info["mu"] == Partition((4,))
    assert cert.passed


# ---------------------------------------------------------------------------
# B, C, D


def _ideal(tag, rank, labels):
    sys = setup(tag, rank)[0].sys
    return AbelianIdeal(sys, [sys.parse(x) for x in labels])


def test_b7_example_chain():
    ideal = _ideal("B", 7, ["e1+e2", "e1+e3", "e2+e3", "e1+e4", "e2+e4", "e3+e4", "e1+e5"])
    model, _, J, K = setup("B", 7)
    cert = chain_BCD(model, J, K, ideal)
    assert cert.passed
    assert len(cert.records) == 8
    assert [r.step.kind for r in cert.records[1:]] == [
        "identity", "identity", "unipotent", "identity", "unipotent", "toric", "toric"]


@pytest.mark.parametrize("tag,rank", [("B", 5), ("C", 6), ("D", 7)])
def test_plan_invariants_hold(tag, rank):
    # BCDPlan asserts the t-sequence and source properties on construction.
    for a in ideals_of(tag, rank):
        if a.type_class == "plus_only":
            plan = BCDPlan(a)
            minimal = {r for r in a.roots
                       if not any(s != r and a.sys.leq(s, r) for s in a.roots)}
            assert plan.sources == minimal


def test_c3_finals_are_the_displayed_ideals():
    model, real, _, _ = setup("C", 3)
    finals = {c.final for c in verify_type("C", 3) if c.ideal is not None and c.passed}
    assert finals == {matrix_subspace(model, real, SP6_A1), matrix_subspace(model, real, SP6_A2)}


def test_d6_case3_chain():
    sys = setup("D", 6)[0].sys
    certs = [c for c in verify_type("D", 6)
             if c.ideal is not None and c.ideal.roots == d_case3_roots(sys)]
    assert len(certs) == 1 and certs[0].passed
    assert [r.step.kind for r in certs[0].records[1:]] == ["unipotent", "toric", "toric"]


@pytest.mark.parametrize("n", [5, 6, 7])
def test_d_case3_with_written_root_misses(n):
    model, _, J, K = setup("D", n)
    sys = model.sys
    beta = d_special_beta(sys)
    steps = [DeformationStep("unipotent", {"element": model.X(beta)}),
             DeformationStep("toric", {"m": [-1] + [0] * (n - 1)}),
             DeformationStep("toric", {"m": [0] * (n - 1) + [1]})]
    cert = Certificate(model, "literal")
    final = cert.run(K.space, steps)
    target = AbelianIdeal(sys, d_case3_roots(sys)).subspace(model)
    assert final != target
    ends = [a for a in ideals_of("D", n) if a.subspace(model) == final]
    assert len(ends) == 1 and ends[0].type_class == "plus_only"


# ---------------------------------------------------------------------------
# exceptional


def test_exceptional_finishes():
    for tag, count in (("G2", 1), ("F4", 1), ("E6", 3), ("E7", 3), ("E8", 2)):
        certs = [c for c in verify_type(tag) if c.ideal is not None]
        assert len(certs) == count and all(c.passed for c in certs)


def test_e8_second_ideal_uses_alpha3():
    cert = next(c for c in verify_type("E8")
                if c.ideal is not None and c.ideal.contains_label("2454321/2"))
    last = cert.records[-1].step
    assert last.kind == "unipotent" and last.params["label"] == "0100000/0"


def test_cartan_limit_g2():
    model, _, J, _ = setup("G2")
    cert = verify_cartan_limit(model, J)
    assert cert.final == Subspace.from_elements([model.lam(), model.X("32")], model.dim)


# ---------------------------------------------------------------------------
# dispatch and certificates


def test_dispatch_is_a_partition():
    for key in CONFIGURED:
        for a in ideals_of(*key):
            acc = acceptors(a)
            assert acc == [chain_kind(a)], (key, a.labels(), acc)


def test_certificate_json_is_deterministic():
    a = [c.to_json() for c in verify_type("D", 5)]
    b = [c.to_json() for c in verify_type("D", 5)]
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)
    for c in a:
        assert {"type", "rank", "ideal", "steps", "pass"} <= set(c)
        assert "millis" not in c
        for s in c["steps"]:
            assert {"kind", "params", "target_basis", "computed_basis", "equal"} <= set(s)
        assert c["pass"] == (all(s["equal"] for s in c["steps"]) and c["final_equal"])


def test_certificate_records_mismatch():
    model, _, J, K = setup("C", 3)
    wrong = Subspace.from_elements([model.X(r) for r in model.sys.simple], model.dim)
    cert = Certificate(model, "probe")
    cert.run(J.centralizer, [DeformationStep("identity", target=wrong)])
    cert.final_target = J.centralizer
    assert not cert.passed and cert.failed_steps() == [0]
