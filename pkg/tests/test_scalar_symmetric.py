from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gamma1_hecke.scalar import ContextMismatch, Scalar, cyclotomic_poly
from gamma1_hecke.symmetric import NotInvariant, SymLaurent


def scalars(m=1):
    frac = st.fractions(min_value=-5, max_value=5, max_denominator=4)
    term = st.builds(lambda c, k, j: Scalar.const(c, m) * Scalar.v(k, m) * (Scalar.zeta(m, j) if m > 1 else 1),
                     frac, st.integers(-3, 3), st.integers(0, max(m - 1, 0)))
    return st.lists(term, min_size=0, max_size=4).map(lambda ts: sum(ts, Scalar.zero(m)))


def test_q_is_v_squared():
    assert Scalar.q() == Scalar.v() ** 2
    assert Scalar.q(-1) * Scalar.q() == Scalar.one()


def test_cyclotomic():
    assert cyclotomic_poly(4) == (1, 0, 1)
    assert Scalar.zeta(4) ** 2 == Scalar.const(-1, 4)
    assert Scalar.zeta(4) ** 4 == Scalar.one(4)
    assert sum((Scalar.zeta(6, k) for k in range(6)), Scalar.zero(6)) == Scalar.zero(6)


def test_inverse_of_unit_binomial():
    x = 1 - Scalar.q()
    with pytest.raises(ArithmeticError):
        x.inverse()  # not a unit in Q(zeta)[v, 1/v]
    assert Scalar.const(Fraction(2, 3)).inverse() == Scalar.const(Fraction(3, 2))


def test_modulus_mismatch():
    with pytest.raises(ContextMismatch):
        Scalar.zeta(4) + Scalar.zeta(3)


def test_specialize():
    x = (1 - Scalar.q()) ** 2
    assert x.specialize_q(3) == Scalar.const(4)
    assert Scalar.v(2).substitute_v_power(3) == Scalar.v(6)


@settings(max_examples=80, deadline=None)
@given(st.sampled_from([1, 3, 4, 6]).flatmap(lambda m: st.tuples(scalars(m), scalars(m), scalars(m))))
def test_ring_axioms(t):
    a, b, c = t
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a - a == Scalar.zero(a.m)


def test_symmetric_basics():
    m = SymLaurent.monomial_symmetric((1, 0))
    assert m.terms == {(1, 0): Scalar.one(), (0, 1): Scalar.one()}
    a, b = Scalar.const(2), Scalar.const(5)
    assert m.eval((a, b)) == Scalar.const(7)
    assert SymLaurent.monomial_symmetric((1, 0, 0)).eval([Scalar.one()] * 3) == Scalar.const(3)
    with pytest.raises(NotInvariant):
        SymLaurent({(1, 0): Scalar.one()}, 2)


def test_base_change():
    m = SymLaurent.monomial_symmetric((1, 0))
    assert m.base_change(2) == SymLaurent.monomial_symmetric((2, 0))
    assert m.base_change(1) == m
    eta = (Scalar.const(3), Scalar.const(Fraction(-1, 2)))
    p = m * m + SymLaurent.monomial_symmetric((1, -1))
    for r in (1, 2, 3):
        assert p.base_change(r).eval(eta) == p.eval([e ** r for e in eta])


def test_block_symmetric():
    blocks = ((1, 2), (3,))
    m = SymLaurent.monomial_symmetric((1, 0, 0), blocks)
    assert set(m.terms) == {(1, 0, 0), (0, 1, 0)}
    assert m.orbit_representatives() == {(1, 0, 0): Scalar.one()}
