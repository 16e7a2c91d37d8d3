from itertools import permutations, product

import pytest

from gamma1_hecke.admissible import adm_set, critical_indices
from gamma1_hecke.depthzero import (
    ChiHeckeElem,
    DepthZeroChar,
    TorusGroupAlgebra,
    all_characters,
    check_conjugation_rule,
    delta,
    delta1,
    idempotents,
    norm,
    psi_inverse,
    psi_transport,
    stabilizer,
)
from gamma1_hecke.hecke import hecke_algebra
from gamma1_hecke.scalar import Scalar
from gamma1_hecke.weyl import ExtAffElem, length, permutation, tau, translation


def test_character_basics():
    chi = DepthZeroChar(5, (1, 2))
    assert chi.m == 4 and chi.d == 2
    assert chi.value((1, 1)) == Scalar.zeta(4, 3)
    assert chi.inverse().exps == (3, 2)
    assert len(all_characters(5, 2)) == 16
    assert norm(3, 2, (1, 3)) == (1, 1)


@pytest.mark.parametrize("p,d", [(3, 2), (3, 3), (5, 2)])
def test_stabilizer_brute(p, d):
    for chi in all_characters(p, d):
        st = stabilizer(chi)
        brute = {w for w in permutations(range(1, d + 1))
                 if all(chi.exps[w[i] - 1] == chi.exps[i] for i in range(d))}
        assert set(st.W_chi) == brute
        assert st.trivial_block == {j + 1 for j, e in enumerate(chi.exps) if e == 0}
        for w in brute:
            assert chi.conjugate(permutation(w)) == chi


def test_stabilizer_examples():
    st = stabilizer(DepthZeroChar(3, (0, 0, 0)))
    assert st.levi.blocks == ((1, 2, 3),) and st.mu1 == (1, 0, 0)
    st = stabilizer(DepthZeroChar(3, (0, 0, 1)))
    assert st.levi.blocks == ((1, 2), (3,))
    assert st.trivial_block == {1, 2} and st.mu1 == (1, 0, 0)
    st = stabilizer(DepthZeroChar(3, (1, 1)))
    assert st.trivial_block == set() and st.mu1 is None


def test_delta_examples():
    triv = DepthZeroChar(3, (0, 0, 0))
    chi = DepthZeroChar(3, (0, 0, 1))
    for w in adm_set(3):
        assert delta(w, triv) == delta1(w, triv) == 1
        S = critical_indices(w)
        assert delta1(w, chi) == (1 if S <= {1, 2} else 0)
        if S == {3}:
            assert delta(w, chi) == 1
    chi = DepthZeroChar(3, (1, 1))
    assert delta(tau(2), chi) == 1 and delta1(tau(2), chi) == 0


@pytest.mark.parametrize("p,d", [(3, 2), (3, 3), (5, 2)])
def test_delta1_is_triviality_on_S(p, d):
    for chi, w in product(all_characters(p, d), adm_set(d)):
        brute = all(chi.exps[j - 1] == 0 for j in critical_indices(w))
        assert delta1(w, chi) == int(brute)
        assert delta1(w, chi) <= delta(w, chi)


def test_sign_idempotent():
    A = TorusGroupAlgebra(3, 1, 1)
    e = A.idempotent(DepthZeroChar(3, (1,)))
    half = Scalar.const(Scalar.one().to_fraction() / 2, 2)
    assert e == {(0,): half, (1,): -half}
    assert A.convolve(e, e) == e


@pytest.mark.parametrize("p,r,d", [(3, 1, 1), (3, 1, 2), (3, 2, 1), (5, 1, 1)])
def test_idempotents_by_dicts(p, r, d):
    # slow dict arithmetic, independent of the array backend
    A = TorusGroupAlgebra(p, r, d)
    chars = all_characters(p, d)
    es = [A.idempotent(c) for c in chars]
    total = {}
    for e in es:
        total = A.add(total, e)
    # pulled back along N_r, the sum is the idempotent of ker N_r (the identity when r = 1)
    expected = A.identity() if r == 1 else A.kernel_idempotent()
    assert {k: v for k, v in total.items() if v} == expected
    for i, a in enumerate(es):
        for j, b in enumerate(es):
            ab = {k: v for k, v in A.convolve(a, b).items() if v}
            assert ab == (a if i == j else {})


@pytest.mark.parametrize("p,r,d", [(3, 1, 2), (5, 2, 2), (3, 2, 3)])
def test_idempotents_report(p, r, d):
    rep = idempotents(p, r, d)
    assert rep["checks"] > 0 and rep["mode"] in ("dense", "factored")


def test_conjugation_rule():
    for w in adm_set(3):
        assert check_conjugation_rule(3, 1, 3, w)


def test_psi_transport():
    triv = DepthZeroChar(3, (0, 0))
    H = hecke_algebra(2)
    k = H.k_mu((1, 0))
    assert psi_transport(ChiHeckeElem(triv, dict(k.c))) == k
    chi = DepthZeroChar(3, (0, 1))
    M = stabilizer(chi).group
    w = translation((-1, 0))
    img = psi_transport(ChiHeckeElem(chi, {w: Scalar.one()}))
    assert img[w] == Scalar.v(length(w) - M.length(w))
    assert psi_inverse(chi, img).coeffs == {w: Scalar.one()}
    with pytest.raises(ValueError):
        psi_transport(ChiHeckeElem(chi, {ExtAffElem((0, 0), (2, 1)): Scalar.one()}))

