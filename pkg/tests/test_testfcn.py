from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gamma1_hecke.admissible import adm_set, critical_indices
from gamma1_hecke.depthzero import DepthZeroChar, all_characters, delta1, stabilizer
from gamma1_hecke.hecke import hecke_algebra
from gamma1_hecke.scalar import Scalar
from gamma1_hecke.testfcn import (
    LanglandsParamData,
    MeasureMismatch,
    TestFunction,
    check_lift_invariance,
    kottwitz_mu_star_values,
    lss_factor,
    phi_chi,
    phi_one_explicit,
    phi_one_sum,
    project_component,
    project_component_dense,
    psi_image_of_phi,
    spectral_scalar,
    spectral_scalar_routes,
    trace_frobenius_eval,
)
from gamma1_hecke.weyl import identity, tau, translation

v = Scalar.v()


def closed_formula(p, r, d, t, w):
    """phi_(r,1)(t w^-1) written out by hand, t given mod p - 1."""
    q = p ** r
    S = critical_indices(w)
    if any(t[j - 1] % (p - 1) for j in range(1, d + 1) if j not in S):
        return Fraction(0)
    return (-1) ** d * Fraction(p - 1) ** (d - len(S)) * Fraction(1 - q) ** (len(S) - d - 1)


@pytest.mark.parametrize("d,p,r", [(1, 3, 1), (2, 3, 1), (2, 5, 1), (2, 3, 2), (3, 3, 1)])
def test_phi_one_against_hand_formula(d, p, r):
    f = phi_one_sum(p, r, d)
    for w in adm_set(d):
        for t in product(range(p - 1), repeat=d):
            assert f.value(t, w.inverse()) == Scalar.const(closed_formula(p, r, d, t, w), p - 1)
    assert f == phi_one_explicit(p, r, d)


def test_phi_one_spot_values():
    f = phi_one_explicit(3, 1, 2)
    for t in product(range(2), repeat=2):
        assert f.value(t, tau(2).inverse()) == Scalar.const(Fraction(-1, 2), 2)
    # N(t) outside T_{1}: the second coordinate is a non-square
    assert not f.value((0, 1), translation((1, 0)).inverse())
    assert f.value((1, 0), translation((1, 0)).inverse())


def test_phi_trivial_is_kottwitz():
    p, r, d = 3, 2, 3
    q = p ** r
    f = phi_chi(p, r, DepthZeroChar(p, (0,) * d))
    for w in adm_set(d):
        val = Fraction(1 - q) ** (len(critical_indices(w)) - 1)
        for t in [(0, 0, 0), (1, 5, 7), (2, 3, 4)]:
            assert f.value(t, w.inverse()) == Scalar.const(val, p - 1)


def test_phi_chi_example():
    chi = DepthZeroChar(3, (0, 1))
    f = phi_chi(3, 1, chi)
    for t in product(range(2), repeat=2):
        assert f.value(t, translation((1, 0)).inverse()) == chi.inverse().value(t)
        assert not f.value(t, translation((0, 1)).inverse())
        assert not f.value(t, tau(2).inverse())
    assert not phi_chi(3, 1, DepthZeroChar(3, (1, 1))).values


def test_kottwitz_mu_star():
    k = kottwitz_mu_star_values(3)
    assert set(k) == {w.inverse() for w in adm_set(3)}


def test_construction_guards():
    with pytest.raises(ValueError):
        TestFunction(3, 1, 2, {((0, 0), identity(2)): Scalar.one(2)})
    chi = DepthZeroChar(3, (0, 0, 1))
    bad = next(w for w in adm_set(3) if critical_indices(w) == {2, 3})
    with pytest.raises(ValueError):
        TestFunction(3, 1, 3, {((0, 0, 0), bad.inverse()): Scalar.one(2)}, chi=chi)
    with pytest.raises(ValueError):
        TestFunction(3, 1, 2, measure="Haar")


def test_measure_tags():
    a = phi_chi(3, 1, DepthZeroChar(3, (0, 0)))
    b = phi_one_explicit(3, 1, 2)
    with pytest.raises(MeasureMismatch):
        a + b
    c = a.renormalize("I+")
    assert c.measure == "I+"
    assert c == TestFunction(3, 1, 2, {k: x * Fraction(1, 4) for k, x in a.values.items()}, measure="I+")
    assert c.renormalize("I") == a


@pytest.mark.parametrize("d,p,r", [(2, 3, 1), (2, 3, 2), (2, 5, 1), (3, 3, 1)])
def test_projections(d, p, r):
    one = phi_one_explicit(p, r, d)
    for chi in all_characters(p, d):
        target = phi_chi(p, r, chi).renormalize("I+")
        assert project_component(one, chi) == target
        if (p ** r - 1) ** d <= 64:
            assert project_component_dense(one, chi) == target


def test_projection_orthogonality():
    p, r, d = 3, 1, 2
    fs = {c: phi_chi(p, r, c).renormalize("I+") for c in all_characters(p, d)}
    for a, fa in fs.items():
        for b in fs:
            expected = fa if a == b else TestFunction(p, r, d, measure="I+")
            assert project_component(fa, b) == expected


def test_lift_invariance():
    for chi in all_characters(3, 3):
        assert check_lift_invariance(phi_chi(3, 2, chi), chi, samples=40)


def test_psi_image_examples():
    triv = DepthZeroChar(3, (0, 0))
    H = hecke_algebra(2)
    img = psi_image_of_phi(3, 1, triv)
    assert img == sum((H.T(w, c) for w, c in kottwitz_mu_star_values(2).items()), H.zero())
    img = psi_image_of_phi(3, 1, DepthZeroChar(3, (0, 1)))
    assert dict(img.c) == {translation((-1, 0)): v}
    img = psi_image_of_phi(3, 1, DepthZeroChar(3, (0, 0, 1)))
    assert img.H.W.blocks == ((1, 2), (3,))
    assert len(img.support()) == 3 and img.H.is_central(img)
    assert {c for c in img.c.values()} == {v, v * (1 - Scalar.q())}
    with pytest.raises(ValueError):
        psi_image_of_phi(3, 1, DepthZeroChar(3, (1, 1)))


def test_spectral_examples():
    one = Scalar.one()
    assert spectral_scalar(LanglandsParamData(DepthZeroChar(3, (0, 0)), (one, one), 3, 1)) == 2 * v
    assert not spectral_scalar(LanglandsParamData(DepthZeroChar(3, (1, 1)), (one, one), 3, 1))
    a, b = Scalar.const(3), Scalar.const(Fraction(-2, 5))
    for r in (1, 2, 3):
        s = spectral_scalar(LanglandsParamData(DepthZeroChar(3, (0, 1)), (a, b), 3, r))
        assert s == v ** r * a.inverse() ** r


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 3), st.integers(1, 3), st.data())
def test_spectral_routes_random(d, r, data):
    exps = tuple(data.draw(st.lists(st.integers(0, 1), min_size=d, max_size=d)))
    vals = st.fractions(min_value=-4, max_value=4, max_denominator=3).filter(bool)
    eta = tuple(Scalar.const(x) for x in data.draw(st.lists(vals, min_size=d, max_size=d)))
    a, b = spectral_scalar_routes(LanglandsParamData(DepthZeroChar(3, exps), eta, 3, r))
    assert a == b


def test_lss_examples():
    a = Scalar.const(2)
    L = lss_factor(LanglandsParamData(DepthZeroChar(3, (0,)), (a,), 3, 1), 4)
    assert L.denominator == (Scalar.one(), -a.inverse())
    assert L.series == tuple(a.inverse() ** k for k in range(5))
    L = lss_factor(LanglandsParamData(DepthZeroChar(5, (1, 2)), (a, a), 5, 1), 6)
    assert L.is_trivial and L.series[0] == Scalar.one(4) and not any(L.series[1:])
    with pytest.raises(ZeroDivisionError):
        LanglandsParamData(DepthZeroChar(3, (0,)), (Scalar.zero(),), 3, 1)


def test_trace_frobenius():
    q = 9
    for w in adm_set(2):
        S = critical_indices(w)
        for tx in product(range(2), repeat=2 - len(S)):
            assert trace_frobenius_eval(w, tx, DepthZeroChar(3, (0, 0)), 2) == Scalar.const(
                Fraction(1 - q) ** (len(S) - 1), 2)
    chi = DepthZeroChar(3, (0, 1))
    assert trace_frobenius_eval(translation((1, 0)), (1,), chi, 1) == Scalar.const(-1, 2)
    assert trace_frobenius_eval(translation((1, 0)), (0,), chi, 1) == Scalar.one(2)
    for w in adm_set(2):
        if not delta1(w, chi):
            S = critical_indices(w)
            assert not trace_frobenius_eval(w, (0,) * (2 - len(S)), chi, 1)


def test_stabilizer_data_matches_images():
    # the M-side of each image is the Levi of the stabilizer
    for chi in all_characters(3, 3):
        if stabilizer(chi).trivial_block:
            assert psi_image_of_phi(3, 1, chi).H.W.blocks == stabilizer(chi).levi.blocks
