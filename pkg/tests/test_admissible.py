from itertools import product

import pytest

from gamma1_hecke.admissible import (
    LeviDatum,
    NotAdmissible,
    adm_set,
    bruhat_vs_S,
    codim,
    critical_indices,
    cycle_classification,
    lattice_Lw,
    levi_adm,
    levi_adm_M,
    nearby_cycle_numerology,
    nonempty_subsets,
    perm_set,
    set_partitions,
    strata_dot,
    strata_poset,
)
from gamma1_hecke.scalar import Scalar
from gamma1_hecke.weyl import ExtAffElem, gl, identity, length, tau, translation, unit_vector

W31 = ExtAffElem((0, 0, 1), (3, 2, 1))  # t_{e_3}(3 1)


def brute_perm_set(d):
    """All (e_j, wbar) lying below some t_{e_k} by the subword oracle."""
    G = gl(d)
    out = set()
    for j in range(1, d + 1):
        for perm in G.finite_weyl_group:
            w = ExtAffElem(unit_vector(d, j), perm)
            # w <= t_lam for some lam in W mu_0, by the subword oracle
            if any(G.subword_leq(w, translation(unit_vector(d, k))) for k in range(1, d + 1)):
                out.add(w)
    return out


@pytest.mark.parametrize("d", range(1, 7))
def test_adm_counts(d):
    A = adm_set(d)
    assert len(A) == 2 ** d - 1
    assert A == perm_set(d) == cycle_classification(d)


@pytest.mark.parametrize("d", [1, 2, 3])
def test_adm_against_subword_oracle(d):
    assert adm_set(d) == brute_perm_set(d)


def test_adm_examples():
    assert adm_set(1) == {translation((1,))} == {tau(1)}
    assert adm_set(2) == {tau(2), translation((1, 0)), translation((0, 1))}
    assert len(adm_set(3)) == 7
    for d in range(1, 6):
        assert tau(d) in perm_set(d)


def test_critical_indices_examples():
    assert critical_indices(W31) == {1, 3}
    assert codim(W31) == 1 == length(translation((1, 0, 0))) - length(W31)
    for d in range(1, 6):
        assert critical_indices(tau(d)) == set(range(1, d + 1))
        assert codim(tau(d)) == d - 1
        for j in range(1, d + 1):
            assert critical_indices(translation(unit_vector(d, j))) == {j}
    assert codim(translation((1, 0, 0))) == 0


def test_not_admissible():
    with pytest.raises(NotAdmissible):
        critical_indices(identity(3))


@pytest.mark.parametrize("d", range(1, 6))
def test_critical_bijection_and_codim(d):
    seen = {}
    top = max(length(w) for w in adm_set(d))
    for w in adm_set(d):
        S = critical_indices(w)
        assert S not in seen
        seen[S] = w
        assert codim(w) == len(S) - 1 == top - length(w)
    assert set(seen) == set(nonempty_subsets(d))


@pytest.mark.parametrize("d", range(1, 5))
def test_bruhat_vs_inclusion(d):
    for x, y in product(adm_set(d), repeat=2):
        a, b = bruhat_vs_S(x, y)
        assert a == b


def test_bruhat_vs_examples():
    t1, t2 = translation((1, 0)), translation((0, 1))
    assert bruhat_vs_S(t1, tau(2)) == (True, True)  # tau <= t1 and {1} in {1,2}
    assert bruhat_vs_S(tau(2), t1) == (False, False)
    assert bruhat_vs_S(t1, t1) == (True, True)
    assert bruhat_vs_S(t1, t2) == (False, False)


def test_levi_examples():
    G = LeviDatum.of([1, 2, 3])
    assert levi_adm(G, (1, 0, 0)) == adm_set(3)
    L = LeviDatum.of([1], [2, 3])
    dark = levi_adm(L, (0, 0, 1))
    assert len(dark) == 3 and all(critical_indices(w) <= {2, 3} for w in dark)
    T = LeviDatum.of([1], [2], [3])
    for j in range(1, 4):
        assert levi_adm(T, unit_vector(3, j)) == {translation(unit_vector(3, j))}


@pytest.mark.parametrize("d", range(1, 5))
def test_levi_all_partitions(d):
    for part in set_partitions(list(range(1, d + 1))):
        L = LeviDatum(part)
        for b in part:
            nu = unit_vector(d, b[-1])
            assert levi_adm(L, nu) == levi_adm_M(L, unit_vector(d, b[0]))


def test_lattice_examples():
    assert lattice_Lw(translation((0, 1, 0))).support() == {2}
    lat = lattice_Lw(tau(3))
    assert lat.rank == 3 and lat.saturated
    lat = lattice_Lw(W31)
    assert lat.support() == {1, 3} and lat.rank == 2 and lat.saturated


@pytest.mark.parametrize("d", range(1, 6))
def test_strata(d):
    strata, covers = strata_poset(d)
    assert len(strata) == 2 ** d - 1
    for a, b in covers:
        assert a < b and len(b) == len(a) + 1
    assert strata_dot(d).startswith("digraph")


def test_strata_d2():
    strata, covers = strata_poset(2)
    by_S = {tuple(sorted(s.S)): s.codim for s in strata}
    assert by_S == {(1,): 0, (2,): 0, (1, 2): 1}
    assert len(covers) == 2
    assert len(strata_poset(1)[0]) == 1


def test_numerology_examples():
    assert nearby_cycle_numerology({1}, 0) == (1, Scalar.one())
    assert nearby_cycle_numerology({1}, 1)[0] == 0
    assert nearby_cycle_numerology({1, 2, 3}, 1)[0] == 2
    assert nearby_cycle_numerology({1, 2}, 0, q=3)[1] == Scalar.const(-2)
