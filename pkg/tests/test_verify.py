import json

import pytest

from qkwhitney.polyring import NovikovPoly
from qkwhitney.rootsys import Weight, eps_J
from qkwhitney.verify import (
    FAMILIES,
    UnknownCheck,
    check_borel,
    check_chain_independence,
    check_classical_limit,
    check_edge_equivalence,
    check_elementary_oracle,
    check_golden,
    check_lemma_products,
    check_multiple_line,
    check_presentation,
    check_qam_am,
    check_qam_am_control,
    check_quantum_inverse,
    check_rank1_oracle,
    check_whitney_rel1,
    check_whitney_rel2,
    check_whitney_rel3,
    elementary_by_recursion,
    golden_payload,
    phi_factor,
    rank1_localization_expansion,
    run_checks,
    select_families,
)


def passes(r):
    assert r.status == "pass", r.residual
    assert r.residual == ""
    return True


def test_whitney_examples():
    passes(check_whitney_rel1(1, 1, 3))
    passes(check_whitney_rel1(2, 2, 3))
    passes(check_whitney_rel2(1, 1, 3))
    passes(check_whitney_rel2(2, 2, 3))
    passes(check_whitney_rel2(3, 3, 2))
    passes(check_whitney_rel3(1, 3))
    passes(check_whitney_rel3(2, 3))


def test_dropping_the_correction_fails_in_q1():
    r = check_whitney_rel1(2, 2, 3, mutate=True)
    assert r.status == "fail" and r.residual
    assert "Q1" in r.residual
    # at k = 1 the correction is Q_0 = 0, so the mutation is invisible
    passes(check_whitney_rel1(1, 2, 3, mutate=True))


def test_quantum_inverse_examples():
    passes(check_quantum_inverse(1, 1, 3))
    passes(check_quantum_inverse(2, 2, 3))
    passes(check_quantum_inverse(1, 2, 3))
    assert check_quantum_inverse(2, 2, 3, mutate=True).status == "fail"


def test_phi_factor_readings():
    n, D = 1, 3
    J = frozenset({1, -1})
    assert phi_factor(J, 1, n, D) * (1 - NovikovPoly.Q(1, n, D)) == NovikovPoly.one(n, D)
    assert phi_factor(frozenset({1}), 1, n, D) == NovikovPoly.one(n, D)
    assert phi_factor(J, -1, n, D) == NovikovPoly.one(n, D)
    n = 2
    # J = {1, 1bar}: adjacent in J with nothing from [2, 2bar] in between
    first = phi_factor(frozenset({1, -1}), -2, n, D)
    assert first == 1 + NovikovPoly.q_power((1, 1), n, D) * (1 + NovikovPoly.Q(1, n, D) + NovikovPoly.Q(1, n, D) ** 2)
    assert phi_factor(frozenset({1, 2, -1}), -2, n, D) == NovikovPoly.one(n, D)
    second = phi_factor(frozenset({-2, -1}), -2, n, D)
    assert second * (1 - NovikovPoly.Q(1, n, D)) == NovikovPoly.one(n, D)


@pytest.mark.parametrize("n,D", [(1, 3), (2, 3)])
def test_borel(n, D):
    for d in range(2 * n + 1):
        passes(check_borel(d, n, D))


def test_borel_mutations_fail():
    assert check_borel(2, 2, 3, mutate=True).status == "fail"
    # reading phi_J(j) as 0 when {j, j+1} is not inside J kills most terms
    assert check_borel(1, 1, 3, literal_zero=True).status == "fail"
    assert check_borel(2, 2, 3, literal_zero=True).status == "fail"


def test_multiple_line_examples():
    passes(check_multiple_line([1], 2, 2, 3))
    passes(check_multiple_line([1], 3, 3, 3))
    passes(check_multiple_line([1], 2, 2, 3, dual=True))
    assert check_multiple_line([1], 2, 2, 3, mutate=True).status == "fail"
    with pytest.raises(ValueError):
        check_multiple_line([2], 2, 2, 3)


def test_lemma_products():
    passes(check_lemma_products(2, 1, 1, 3))
    passes(check_lemma_products(2, 2, 2, 3))
    for d in (1, 3, 4):
        passes(check_lemma_products(d, 1, 2, 3))


def test_presentation():
    passes(check_presentation(1, 3))
    passes(check_presentation(2, 3))
    r = check_presentation(2, 3, mutate=True)
    assert r.status == "fail" and "def1[k=2,d=2]" in r.residual


def test_classical_and_oracles():
    passes(check_classical_limit(2))
    passes(check_elementary_oracle(3))
    passes(check_rank1_oracle())
    assert rank1_localization_expansion(-1) == {"e": {1: 1}, "s1": {1: -1}}
    assert rank1_localization_expansion(1) == {"e": {-1: 1}, "s1": {1: 1}}


def test_elementary_recursion_small():
    from qkwhitney.polyring import CharElem

    xs = [CharElem.var(i, 3) for i in (1, 2, 3)]
    assert elementary_by_recursion(2, xs, 3) == xs[0] * xs[1] + xs[0] * xs[2] + xs[1] * xs[2]


def test_qam_am():
    passes(check_qam_am([1, 2], 1, 2))
    passes(check_qam_am([2], -1, 3))
    passes(check_qam_am_control())


def test_chain_independence():
    passes(check_chain_independence(eps_J([1, 2], 2), 2, 3))
    passes(check_chain_independence(eps_J([2], 2, -1), 2, 3))
    r = check_chain_independence(eps_J([1, 3], 3), 3, 2)
    passes(r)
    assert r.notes["chains_differ"]


def test_edge_equivalence_counts():
    r = check_edge_equivalence(3)
    passes(r)
    assert r.notes["pairs"] == 48 * 9


def test_checks_are_deterministic():
    a = check_whitney_rel1(2, 2, 3, mutate=True)
    b = check_whitney_rel1(2, 2, 3, mutate=True)
    assert a.residual == b.residual
    ja, jb = a.to_json(), b.to_json()
    ja.pop("wall_time_ms"), jb.pop("wall_time_ms")
    assert ja == jb


@pytest.mark.parametrize("D", [1, 2, 3, 4])
def test_pass_status_independent_of_truncation(D):
    for r in run_checks(["whitney*", "borel", "quantum_inverse", "presentation"], 2, D):
        passes(r)


def test_registry_selection():
    names = [f.name for f in FAMILIES]
    assert names == sorted(names)
    assert [f.name for f in select_families(["whitney*"])] == ["whitney_rel1", "whitney_rel2", "whitney_rel3"]
    with pytest.raises(UnknownCheck, match="available checks"):
        select_families(["nonexistent"])


def test_result_json_schema():
    r = check_quantum_inverse(1, 1, 2).to_json()
    assert set(r) == {"name", "params", "status", "residual", "wall_time_ms"}
    json.dumps(r)


def test_golden_roundtrip(tmp_path):
    path = tmp_path / "g.json"
    path.write_text(json.dumps(golden_payload(1, 2)))
    passes(check_golden(str(path)))
    data = golden_payload(1, 2)
    data["classes"]["(1)"] = "O^[1]: x1"
    path.write_text(json.dumps(data))
    assert check_golden(str(path)).status == "fail"
