import itertools
import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qkwhitney.alcove import reduced_chain
from qkwhitney.chevalley import (
    SemiInfiniteClass,
    UnsupportedWeight,
    admissible_subsets,
    classical_line_mult,
    dump_records,
    phi,
    quantum_line_mult,
    semi_infinite_expand,
)
from qkwhitney.polyring import CharElem, NovikovPoly, QKClass
from qkwhitney.qbg import EdgeKind, edge_type
from qkwhitney.rootsys import Coroot, SignedPerm, Weight, eps_J, weyl_group

from .strategies import signed_perms, signed_subset_weights, weights

E1, S1 = SignedPerm((1,)), SignedPerm((-1,))


def x(k=1):
    return CharElem.var(1, 1, k)


def cls(D, **coeffs):
    return QKClass(1, D, {E1 if w == "e" else S1: NovikovPoly(1, D, p) for w, p in coeffs.items()})


def test_records_rank_one_from_e():
    recs = admissible_subsets(E1, reduced_chain(Weight((-1,))))
    got = [(r.end, r.neg_count, r.wt, r.down, r.positions) for r in recs]
    assert got == [
        (E1, 0, Weight((-1,)), Coroot((0,)), ()),
        (S1, 1, Weight((-1,)), Coroot((0,)), (0,)),
    ]


def test_records_rank_one_quantum_edge():
    recs = admissible_subsets(S1, reduced_chain(Weight((-1,))))
    taken = [r for r in recs if r.positions]
    assert len(taken) == 1
    r = taken[0]
    # wt = -s_1 h(eps_1) = eps_1; h fixes eps_1 because it lies on the wall H_{2eps_1, 1}
    assert (r.end, r.neg_count, r.wt, r.down) == (E1, 1, Weight((1,)), Coroot((1,)))


def test_empty_chain_single_record():
    w = SignedPerm((2, -1))
    recs = admissible_subsets(w, reduced_chain(Weight((0, 0))))
    assert len(recs) == 1
    assert recs[0].end == w and recs[0].wt == Weight((0, 0)) and recs[0].down.is_zero()


@given(st.integers(1, 3).flatmap(lambda n: st.tuples(signed_perms(n), weights(n, 1))))
def test_record_invariants(pair):
    w, lam = pair
    chain = reduced_chain(lam)
    recs = admissible_subsets(w, chain)
    assert recs[0].positions == ()
    assert recs[0].wt == w.apply(lam)
    for r in recs:
        assert r.neg_count <= len(r.positions)
        assert all(c >= 0 for c in r.down.simple_coords())
        cur, down = w, Coroot.zero(w.rank)
        for p in r.positions:
            a = chain.steps[p].gamma.abs()
            k = edge_type(cur, a)
            assert k is not EdgeKind.NONE
            if k is EdgeKind.QUANTUM:
                down = down + a.coroot()
            cur = cur.reflect(a)
        assert cur == r.end and down == r.down
    # skip-before-take DFS order is lexicographic on the 0/1 choice vectors
    keys = [tuple(1 if i in r.positions else 0 for i in range(len(chain))) for r in recs]
    assert keys == sorted(keys)


def test_classical_rank_one():
    D = 2
    assert classical_line_mult(Weight((1,)), QKClass.unit(1, D)) == cls(D, e={(0,): x(-1)}, s={(0,): x(1)})
    assert classical_line_mult(Weight((-1,)), QKClass.unit(1, D)) == cls(D, e={(0,): x(1)}, s={(0,): -x(1)})
    Z = QKClass.schubert(SignedPerm((2, -1)), D)
    assert classical_line_mult(Weight((0, 0)), Z) == Z


def test_quantum_rank_one():
    D = 3
    got = quantum_line_mult(Weight((-1,)), QKClass.schubert(S1, D))
    assert got == cls(D, s={(0,): x(-1)}, e={(1,): -x(-1)})
    inv = quantum_line_mult(Weight((-1,)), quantum_line_mult(Weight((1,)), QKClass.unit(1, D)))
    assert inv == QKClass.unit(1, D).scale(1 - NovikovPoly.Q(1, 1, D))


def test_unsupported_weights():
    for lam in [(2,), (1, -1), (1, 0, -1), (0, 2)]:
        with pytest.raises(UnsupportedWeight, match="unsupported weight class"):
            quantum_line_mult(Weight(lam), QKClass.unit(len(lam), 1))
    # the classical operator accepts any weight
    classical_line_mult(Weight((1, 0, -1)), QKClass.unit(3, 0))


@given(st.integers(1, 3).flatmap(lambda n: st.tuples(signed_perms(n), signed_subset_weights(n))))
def test_q_zero_specialization(pair):
    w, lam = pair
    q = quantum_line_mult(lam, QKClass.schubert(w, 2)).truncate(0)
    assert q == classical_line_mult(lam, QKClass.schubert(w, 0))


@given(st.integers(1, 2).flatmap(lambda n: st.tuples(weights(n, 2), weights(n, 2))))
def test_classical_multiplicativity(pair):
    lam, mu = pair
    one = QKClass.unit(lam.rank, 0)
    assert classical_line_mult(lam, classical_line_mult(mu, one)) == classical_line_mult(lam + mu, one)


def test_classical_multiplicativity_rank3_sample():
    one = QKClass.unit(3, 0)
    lam, mu = Weight((1, -1, 0)), Weight((0, 1, 1))
    assert classical_line_mult(lam, classical_line_mult(mu, one)) == classical_line_mult(lam + mu, one)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_fundamental_weights_from_identity_use_bruhat_edges(n):
    e = SignedPerm.identity(n)
    for k in range(1, n + 1):
        for seed in (0, 1, 2):
            for r in admissible_subsets(e, reduced_chain(Weight.fundamental(k, n), seed)):
                assert r.down.is_zero()


def test_non_minuscule_dominant_weight_takes_a_quantum_edge():
    # 2 eps_1 crosses H_{2eps_1, 0} and H_{2eps_1, 1}: e -> s_1 (Bruhat) then s_1 -> e (quantum)
    recs = admissible_subsets(E1, reduced_chain(Weight((2,))))
    assert [r.down.coords for r in recs if r.positions == (0, 1)] == [(1,)]


def test_semi_infinite_rank_one():
    D = 2
    got = semi_infinite_expand(Weight((1,)), E1, D)
    coeffs = {}
    for k in range(D + 1):
        coeffs[(E1, (k,))] = x(1)
        coeffs[(S1, (k,))] = x(-1)
    assert got == SemiInfiniteClass(1, D, coeffs)
    neg = semi_infinite_expand(Weight((-1,)), E1, D)
    assert neg == SemiInfiniteClass(1, D, {(E1, (0,)): x(-1), (S1, (0,)): -x(-1)})


@pytest.mark.parametrize("n", [1, 2])
def test_semi_infinite_cancellation_against_classical(n):
    # (1 - st_j) over all of L_J applied to [O_Q(eps_J)] gives Phi of the classical class
    D = 3
    for r in range(1, n + 1):
        for J in itertools.combinations(range(1, n + 1), r):
            lam = eps_J(J, n)
            raw = semi_infinite_expand(lam, SignedPerm.identity(n), D)
            from qkwhitney.chevalley import par_indices

            for j in sorted(par_indices(lam)):
                raw = raw.times_st_factor(j)
            assert raw == phi(classical_line_mult(lam, QKClass.unit(n, D)))


def test_dump_records():
    rows = [json.loads(r) for r in dump_records(admissible_subsets(E1, reduced_chain(Weight((1,))))).splitlines()]
    assert rows == [
        {"down": [0], "end": [1], "neg_count": 0, "positions": [], "wt": [1]},
        {"down": [0], "end": [-1], "neg_count": 0, "positions": [1], "wt": [-1]},
    ]
