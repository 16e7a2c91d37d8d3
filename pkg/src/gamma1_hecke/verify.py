"""
Invariant suites.  Each check returns a `CheckResult`; a suite never stops at
the first failure, so a report lists every broken identity.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Callable, Iterator

from .admissible import (
    LeviDatum,
    adm_set,
    bruhat_vs_S,
    codim,
    critical_indices,
    cycle_classification,
    lattice_Lw,
    levi_kottwitz,
    nearby_cycle_numerology,
    nonempty_subsets,
    perm_set,
    set_partitions,
)
from .depthzero import all_characters, check_conjugation_rule, delta1, idempotents, stabilizer
from .hecke import hecke_algebra, is_Q_positive, kottwitz_mu0_values
from .scalar import Scalar
from .testfcn import (
    LanglandsParamData,
    check_lift_invariance,
    lss_factor,
    phi_chi,
    phi_one_explicit,
    phi_one_sum,
    project_component,
    psi_image_of_phi,
    spectral_scalar_routes,
    trace_frobenius_eval,
)
from .weyl import gl, perm_apply, perm_inverse, permutation, translation, unit_vector

__all__ = ["CheckResult", "SUITES", "run_suite", "random_eta"]


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str = ""
    seconds: float = 0.0

    def line(self) -> str:
        tag = "PASS" if self.ok else "FAIL"
        extra = f" ({self.detail})" if self.detail else ""
        return f"[{tag}] {self.name}{extra} [{self.seconds:.2f}s]"


def _run(name: str, fn: Callable[[], object]) -> CheckResult:
    t0 = time.perf_counter()
    try:
        out = fn()
        ok = out is not False
        detail = "" if out in (None, True, False) else str(out)
    except (AssertionError, ArithmeticError, ValueError) as exc:
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    return CheckResult(name, ok, detail, time.perf_counter() - t0)


# -- adm --------------------------------------------------------------------------

def _adm_sets(d: int):
    A, P, C = adm_set(d), perm_set(d), cycle_classification(d)
    assert len(A) == 2 ** d - 1, len(A)
    assert A == P == C
    return f"{len(A)} elements"


def _critical(d: int):
    seen = set()
    for w in adm_set(d):
        S = critical_indices(w)
        assert codim(w) == len(S) - 1
        seen.add(frozenset(S))
    assert seen == set(nonempty_subsets(d))


def _bruhat_vs_S(d: int):
    for x in adm_set(d):
        for y in adm_set(d):
            a, b = bruhat_vs_S(x, y)
            assert a == b, (x, y)


def _levi(d: int):
    count = 0
    for part in set_partitions(list(range(1, d + 1))):
        L = LeviDatum(part)
        pieces = []
        for b in L.blocks:
            pieces.append(set(levi_kottwitz(L, unit_vector(d, b[0]))))
        union = set().union(*pieces)
        assert sum(map(len, pieces)) == len(union), "pieces are not disjoint"
        assert union == {w for w in adm_set(d) if any(critical_indices(w) <= set(b) for b in L.blocks)}
        count += 1
    return f"{count} Levi data"


def _lattices(d: int):
    for w in adm_set(d):
        lattice_Lw(w)


def _numerology(d: int):
    for S in nonempty_subsets(d):
        for i in range(len(S)):
            nearby_cycle_numerology(S, i, d=d)
        nearby_cycle_numerology(S, 0, q=3, d=d)


def adm_suite(d: int, **_) -> Iterator[CheckResult]:
    yield _run(f"Adm = Perm = cycles, |Adm| = 2^d - 1 (d={d})", lambda: _adm_sets(d))
    yield _run(f"S(w) bijection and codim = |S| - 1 (d={d})", lambda: _critical(d))
    yield _run(f"Bruhat order vs reverse inclusion (d={d})", lambda: _bruhat_vs_S(d))
    yield _run(f"Levi pieces and k_(O_nu) = k^M_nu (d={d})", lambda: _levi(d))
    yield _run(f"L_w = sum of Z e_j over S(w) (d={d})", lambda: _lattices(d))
    yield _run(f"nearby-cycle numerology (d={d})", lambda: _numerology(d))


# -- hecke ------------------------------------------------------------------------

def _kottwitz_formula(d: int):
    k = kottwitz_mu0_values(d)
    assert set(k) == set(adm_set(d))
    for w, c in k.items():
        assert c == (1 - Scalar.q()) ** (len(critical_indices(w)) - 1), w
    H = hecke_algebra(d)
    assert H.is_central(H.z_mu(unit_vector(d, 1)))


def _chambers(d: int):
    H = hecke_algebra(d)
    mu0 = unit_vector(d, 1)
    z = H.z_mu(mu0)
    for ch in gl(d).finite_weyl_group:
        assert H.z_mu(mu0, ch) == z, ch
        for lam in gl(d).weyl_orbit(mu0):
            th = H.theta(lam, ch, check=True)
            word, omega = gl(d).reduced_word(translation(lam))
            assert H.theta_walk(lam, ch, (word, omega)) == th
            # a non-reduced expression: insert s s in front
            for s in range(d):
                assert H.theta_walk(lam, ch, ([s, s] + list(word), omega)) == th
            for c in th.tilde_coefficients().values():
                assert is_Q_positive(c)
    return f"{len(gl(d).finite_weyl_group)} chambers"


def _conjugation(d: int):
    """T_v^{-1} Theta_lam T_v = Theta^{v^{-1} C_0}_{v^{-1} lam}."""
    H = hecke_algebra(d)
    G = gl(d)
    for vp in G.finite_weyl_group:
        v = permutation(vp)
        Tv = H.T(v)
        Tv_inv = H.T_tilde_inverse(v).scale(Scalar.v(-G.length(v)))
        assert Tv * Tv_inv == H.one()
        vinv = perm_inverse(vp)
        for lam in G.weyl_orbit(unit_vector(d, 1)):
            assert Tv_inv * H.theta(lam) * Tv == H.theta(perm_apply(vinv, lam), vinv), (vp, lam)


def _homomorphism(d: int):
    H = hecke_algebra(d)
    z = H.z_mu(unit_vector(d, 1))
    p1 = H.bernstein_coeffs(z)
    assert p1.terms == {unit_vector(d, j): Scalar.one() for j in range(1, d + 1)}
    assert H.bernstein_coeffs(z * z) == p1 * p1


def hecke_suite(d: int, **_) -> Iterator[CheckResult]:
    if d > 4:
        yield CheckResult(f"hecke suite (d={d})", False, "symbolic Hecke products are limited to d <= 4")
        return
    yield _run(f"supp z = Adm and k(w) = (1-q)^(|S|-1) (d={d})", lambda: _kottwitz_formula(d))
    if d <= 3:
        yield _run(f"chamber independence, alcove walks, Q-positivity (d={d})", lambda: _chambers(d))
        yield _run(f"conjugation of Theta by T_v (d={d})", lambda: _conjugation(d))
        yield _run(f"Bernstein coefficients are multiplicative (d={d})", lambda: _homomorphism(d))


# -- test functions ---------------------------------------------------------------

def _phi_one(d: int, p: int, r: int):
    assert phi_one_sum(p, r, d) == phi_one_explicit(p, r, d)


def _projections(d: int, p: int, r: int):
    one = phi_one_explicit(p, r, d)
    for chi in all_characters(p, d):
        assert project_component(one, chi) == phi_chi(p, r, chi).renormalize("I+"), chi.exps


def _psi_images(d: int, p: int, r: int):
    n = 0
    for chi in all_characters(p, d):
        if stabilizer(chi).trivial_block:
            psi_image_of_phi(p, r, chi)
            n += 1
        else:
            assert not phi_chi(p, r, chi).values
    return f"{n} characters"


def _idempotents(d: int, p: int, r: int):
    rep = idempotents(p, r, d)
    if d <= 3 and (p - 1) ** d <= 64:
        for w in adm_set(d):
            assert check_conjugation_rule(p, 1, d, w)
    return f"{rep['mode']}, {rep['checks']} checks"


def _lifts_and_traces(d: int, p: int, r: int):
    q = p ** r
    for chi in all_characters(p, d):
        assert check_lift_invariance(phi_chi(p, r, chi), chi)
        for w in adm_set(d):
            S = critical_indices(w)
            outside = [j for j in range(1, d + 1) if j not in S]
            for tx in product(range(p - 1), repeat=len(outside)):
                val = trace_frobenius_eval(w, tx, chi, r)
                if chi.is_trivial():
                    assert val == Fraction(1 - q) ** (len(S) - 1)
                if not delta1(w, chi):
                    assert not val


def testfn_suite(d: int, p: int, r: int, **_) -> Iterator[CheckResult]:
    tag = f"(d={d}, p={p}, r={r})"
    yield _run(f"phi_(r,1): character sum = closed formula {tag}", lambda: _phi_one(d, p, r))
    yield _run(f"e_chi phi_(r,1) = (q-1)^-d phi_(r,chi) {tag}", lambda: _projections(d, p, r))
    yield _run(f"Psi-image of phi_(r,chi) is the M-side Kottwitz function {tag}", lambda: _psi_images(d, p, r))
    yield _run(f"idempotents e_xi {tag}", lambda: _idempotents(d, p, r))
    yield _run(f"lift invariance and traces of Frobenius {tag}", lambda: _lifts_and_traces(d, p, r))


# -- spectral ---------------------------------------------------------------------

def random_eta(rng: random.Random, d: int, m: int = 1) -> tuple[Scalar, ...]:
    out = []
    for _ in range(d):
        c = Fraction(rng.choice([-5, -3, -2, -1, 1, 2, 3, 4, 7]), rng.choice([1, 2, 3, 5]))
        e = Scalar.const(c, m)
        if m > 2:
            e = e * Scalar.zeta(m, rng.randrange(m))
        out.append(e)
    return tuple(out)


def _spectral(d: int, p: int, r: int, seed: int, trials: int):
    rng = random.Random(seed)
    n = 0
    for chi in all_characters(p, d):
        for _ in range(trials):
            param = LanglandsParamData(chi, random_eta(rng, d), p, r)
            a, b = spectral_scalar_routes(param)
            assert a == b, (chi.exps, a, b)
            n += 1
    return f"{n} parameters"


def _lss(d: int, p: int, seed: int):
    rng = random.Random(seed)
    for chi in all_characters(p, d):
        param = LanglandsParamData(chi, random_eta(rng, d, p - 1), p, 1)
        L = lss_factor(param, 6)
        if not chi.trivial_block:
            assert L.is_trivial and all(not c for c in L.series[1:])
        # the trace of the r-th power of Frobenius is the spectral scalar up to p^{r<rho,mu*>}
        for rr in (1, 2):
            tr = sum((a ** rr for a in L.eigenvalues), Scalar.zero(p - 1))
            direct, _ = spectral_scalar_routes(LanglandsParamData(chi, param.eta, p, rr))
            assert direct == tr * Scalar.v(rr * (d - 1))


def spectral_suite(d: int, p: int, r: int, seed: int = 0, trials: int = 20, **_) -> Iterator[CheckResult]:
    tag = f"(d={d}, p={p}, r={r})"
    yield _run(f"spectral scalar: direct sum = base-change route {tag}",
               lambda: _spectral(d, p, r, seed, trials))
    yield _run(f"L^ss trace/determinant identity to order 6 {tag}", lambda: _lss(d, p, seed))


SUITES = {
    "adm": adm_suite,
    "hecke": hecke_suite,
    "testfn": testfn_suite,
    "spectral": spectral_suite,
}


def run_suite(name: str, d: int, p: int = 3, r: int = 1, seed: int = 0, trials: int = 20) -> list[CheckResult]:
    names = list(SUITES) if name == "all" else [name]
    out = []
    for n in names:
        if n not in SUITES:
            raise ValueError(f"unknown suite {n!r}")
        out.extend(SUITES[n](d=d, p=p, r=r, seed=seed, trials=trials))
    return out
