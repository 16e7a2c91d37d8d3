"""
Test functions on T(k_r) x W~ for depth-zero characters.

Every function here depends on t in T(k_r) only through N_r(t) in T(F_p),
so a `TestFunction` stores its values keyed by (N_r(t), u) with u in W~ and
evaluates arbitrary t by reducing discrete logs mod p - 1.  Each function
carries a measure tag, "I" or "I+"; converting I to I+ multiplies by
[I_r : I_r^+]^{-1} = (q - 1)^{-d}, and mixing tags is an error.

>>> f = phi_one_explicit(3, 1, 2)
>>> tau = ExtAffElem((0, 1), (2, 1))
>>> f.value((0, 0), tau.inverse())
Scalar('-1/2', m=2)
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Mapping, Sequence

from .admissible import adm_set, critical_indices
from .depthzero import (
    ChiHeckeElem,
    DepthZeroChar,
    all_characters,
    delta,
    delta1,
    norm,
    psi_transport,
    stabilizer,
)
from .hecke import HeckeElem, hecke_algebra
from .scalar import Scalar
from .weyl import ExtAffElem, perm_apply, unit_vector

__all__ = [
    "TestFunction",
    "MeasureMismatch",
    "LanglandsParamData",
    "LssFactor",
    "phi_chi",
    "phi_one_sum",
    "phi_one_explicit",
    "project_component",
    "project_component_dense",
    "check_lift_invariance",
    "psi_image_of_phi",
    "spectral_scalar",
    "spectral_scalar_routes",
    "lss_factor",
    "trace_frobenius_eval",
    "kottwitz_mu_star_values",
]

MEASURES = ("I", "I+")
PHI_ONE_LIMIT = 10 ** 6


class MeasureMismatch(TypeError):
    """Two test functions with different measure normalizations were combined."""


@dataclass
class TestFunction:
    p: int
    r: int
    d: int
    values: dict = field(default_factory=dict)  # (tbar, u) -> Scalar, tbar in (Z/(p-1))^d
    measure: str = "I"
    chi: DepthZeroChar | None = None

    __test__ = False  # not a pytest class

    def __post_init__(self):
        if self.measure not in MEASURES:
            raise ValueError(f"unknown measure tag {self.measure!r}")
        adm_inv = {w.inverse() for w in adm_set(self.d)}
        clean = {}
        for (t, u), c in self.values.items():
            if not c:
                continue
            t = norm(self.p, 1, t)
            if u not in adm_inv:
                raise ValueError(f"{u} is not the inverse of an admissible element")
            if self.chi is not None and not delta(u.inverse(), self.chi):
                raise ValueError(f"delta({u.inverse()}, chi) = 0; value at {u} is not well defined")
            clean[(t, u)] = c
        self.values = clean

    @property
    def q(self) -> int:
        return self.p ** self.r

    @property
    def m(self) -> int:
        return self.p - 1

    def value(self, t: Sequence[int], u: ExtAffElem) -> Scalar:
        """f(t u) for t in T(k_r) in discrete logs mod p^r - 1."""
        if len(t) != self.d:
            raise ValueError("t has the wrong length")
        return self.values.get((norm(self.p, self.r, t), u), Scalar.zero(self.m))

    def support(self) -> frozenset[ExtAffElem]:
        return frozenset(u for _, u in self.values)

    def _same(self, other: "TestFunction"):
        if (self.p, self.r, self.d) != (other.p, other.r, other.d):
            raise ValueError("test functions for different (p, r, d)")
        if self.measure != other.measure:
            raise MeasureMismatch(f"{self.measure} vs {other.measure}; renormalize explicitly")

    def __add__(self, other: "TestFunction") -> "TestFunction":
        self._same(other)
        vals = dict(self.values)
        for k, c in other.values.items():
            vals[k] = vals[k] + c if k in vals else c
        chi = self.chi if self.chi == other.chi else None
        return TestFunction(self.p, self.r, self.d, vals, self.measure, chi)

    def scale(self, c) -> "TestFunction":
        return TestFunction(self.p, self.r, self.d,
                            {k: v * c for k, v in self.values.items()}, self.measure, self.chi)

    def __eq__(self, other):
        if not isinstance(other, TestFunction):
            return NotImplemented
        return ((self.p, self.r, self.d, self.measure) == (other.p, other.r, other.d, other.measure)
                and self.values == other.values)

    def renormalize(self, measure: str) -> "TestFunction":
        """Switch measure tag; I -> I+ multiplies by (q-1)^{-d}."""
        if measure == self.measure:
            return self
        if measure not in MEASURES:
            raise ValueError(f"unknown measure tag {measure!r}")
        factor = Fraction(1, (self.q - 1) ** self.d)
        if measure == "I":
            factor = 1 / factor
        out = self.scale(factor)
        out.measure = measure
        return out

    def is_rational(self) -> bool:
        return all(c.is_rational() for c in self.values.values())

    def records(self, full: bool = False) -> list[tuple[tuple[int, ...], ExtAffElem, Scalar]]:
        """(t, u, value) triples; `full` expands tbar to every t in T(k_r)."""
        out = []
        for (t, u), c in sorted(self.values.items(), key=lambda kv: (kv[0][1], kv[0][0])):
            if not full:
                out.append((t, u, c))
                continue
            s = (self.q - 1) // (self.p - 1)
            for shifts in product(range(s), repeat=self.d):
                out.append((tuple(a + self.m * k for a, k in zip(t, shifts)), u, c))
        return out


# -- Kottwitz function of mu* ----------------------------------------------------

@lru_cache(maxsize=None)
def kottwitz_mu_star_values(d: int) -> dict[ExtAffElem, Scalar]:
    """u -> k_{mu*}(u) with mu* = -e_d, cross-checked against k_{mu0}(u^{-1})."""
    H = hecke_algebra(d)
    mu_star = unit_vector(d, d, -1)
    k_star = H.k_mu(mu_star)
    k0 = H.k_mu(unit_vector(d, 1))
    for u in set(k_star.c) | {w.inverse() for w in k0.c}:
        if k_star[u] != k0[u.inverse()]:
            raise AssertionError(f"k_mu*({u}) != k_mu0({u.inverse()})")
    return dict(k_star.c)


def _specialize(c: Scalar, q: int, m: int, symbolic: bool) -> Scalar:
    c = c.with_modulus(m) if c.m != m else c
    return c if symbolic else c.specialize_q(q)


# -- the functions phi_{r,chi}, phi_{r,1} -----------------------------------------

def phi_chi(p: int, r: int, chi: DepthZeroChar, symbolic: bool = False) -> TestFunction:
    """phi_{r,chi}(t u) = delta^1(u^{-1}, chi) chi_r^{-1}(t) k_{mu*}(u), I-measure.

    With `symbolic` the Kottwitz values keep v (q = v^2); otherwise q = p^r.
    """
    f = _phi_chi(p, r, chi, symbolic)
    return TestFunction(f.p, f.r, f.d, dict(f.values), f.measure, f.chi)


@lru_cache(maxsize=4096)
def _phi_chi(p: int, r: int, chi: DepthZeroChar, symbolic: bool) -> TestFunction:
    if chi.p != p:
        raise ValueError("character and p disagree")
    d, m, q = chi.d, p - 1, p ** r
    kstar = kottwitz_mu_star_values(d)
    inv = chi.inverse()
    vals = {}
    for w in adm_set(d):
        if not delta1(w, chi):
            continue
        u = w.inverse()
        k = _specialize(kstar[u], q, m, symbolic)
        for t in product(range(m), repeat=d):
            vals[(t, u)] = inv.value(t) * k
    return TestFunction(p, r, d, vals, "I", chi)


def phi_one_sum(p: int, r: int, d: int, override: bool = False) -> TestFunction:
    """[I_r : I_r^+]^{-1} sum_chi phi_{r,chi}, I+-measure; values must be rational."""
    if (p - 1) ** d > PHI_ONE_LIMIT and not override:
        raise ValueError(f"(p-1)^d = {(p - 1) ** d} characters exceeds the guardrail")
    total = TestFunction(p, r, d)
    for chi in all_characters(p, d):
        total = total + phi_chi(p, r, chi)
    out = total.renormalize("I+")
    if not out.is_rational():
        raise AssertionError("phi_{r,1} has non-rational values")
    return out


def phi_one_explicit(p: int, r: int, d: int) -> TestFunction:
    """Closed formula: (-1)^d (p-1)^{d-|S|} (1-q)^{|S|-d-1} if N_r(t) lies in T_S(F_p), else 0."""
    q, m = p ** r, p - 1
    vals = {}
    for w in adm_set(d):
        S = critical_indices(w)
        c = Fraction((-1) ** d * m ** (d - len(S))) * Fraction(1 - q) ** (len(S) - d - 1)
        u = w.inverse()
        for t in product(range(m), repeat=d):
            if all(t[j - 1] == 0 for j in range(1, d + 1) if j not in S):
                vals[(t, u)] = Scalar.const(c, m)
    return TestFunction(p, r, d, vals, "I+")


# -- isotypic projections -------------------------------------------------------

def project_component(f: TestFunction, chi: DepthZeroChar) -> TestFunction:
    """e_{chi_r} * f, computed on T(F_p) through the norm map.

    (e_xi f)(t, u) = xi(t)^{-1} |T(k_r)|^{-1} sum_{s in T(k_r)} xi(s) f(s, u); the
    fibres of N_r all have the same size, so the sum runs over T(F_p).
    """
    if f.measure != "I+":
        raise MeasureMismatch("projection expects an I+-normalized function")
    if chi.p != f.p or chi.d != f.d:
        raise ValueError("character does not match the test function")
    d, m = f.d, f.m
    by_u: dict = {}
    for (t, u), c in f.values.items():
        by_u.setdefault(u, []).append((t, c))
    vals = {}
    scale = Fraction(1, m ** d)
    inv = chi.inverse()
    for u, items in by_u.items():
        s = Scalar.zero(m)
        for t, c in items:
            s = s + chi.value(t) * c
        if not s:
            continue
        for t in product(range(m), repeat=d):
            vals[(t, u)] = inv.value(t) * s * scale
    return TestFunction(f.p, f.r, d, vals, "I+")


def project_component_dense(f: TestFunction, chi: DepthZeroChar, limit: int = 600) -> TestFunction:
    """Literal convolution with e_xi over all of T(k_r); an oracle for small tori."""
    n = f.q - 1
    N = n ** f.d
    if N > limit:
        raise ValueError("torus too large for the dense oracle")
    m = f.m
    inv = chi.inverse()
    e = {s: inv.value(norm(f.p, f.r, s)) / N for s in product(range(n), repeat=f.d)}
    vals = {}
    for u in f.support():
        for tbar in product(range(m), repeat=f.d):
            total = Scalar.zero(m)
            for s, es in e.items():
                rest = tuple((a - b) % n for a, b in zip(tbar, s))
                total = total + es * f.value(rest, u)
            if total:
                vals[(tbar, u)] = total
    return TestFunction(f.p, f.r, f.d, vals, f.measure)


def check_lift_invariance(f: TestFunction, chi: DepthZeroChar, samples: int = 200, seed: int = 0) -> bool:
    """f(t1 t (^u t1)^{-1} u) = f(t u) for t1 in T(k_r), at every support point.

    Exhaustive over T(k_r) when it is small, otherwise a seeded sample.
    """
    n = f.q - 1
    rng = random.Random(seed)
    if n ** f.d <= samples:
        t1s = list(product(range(n), repeat=f.d))
    else:
        t1s = [tuple(rng.randrange(n) for _ in range(f.d)) for _ in range(samples)]
    for (t, u), c in f.values.items():
        if not delta(u.inverse(), chi):
            continue
        for t1 in t1s:
            conj = perm_apply(u.perm, t1)  # (u t1 u^{-1})_j = t1_{ubar^{-1}(j)}
            moved = tuple((a + b - c_) % n for a, b, c_ in zip(t, t1, conj))
            if f.value(moved, u) != c:
                return False
    return True


# -- transport to M_chi -----------------------------------------------------------

def psi_image_of_phi(p: int, r: int, chi: DepthZeroChar) -> HeckeElem:
    """Psi(phi_{r,chi}), checked against v^{(d-1) - <2 rho_M, mu1*>} k^M_{mu1*}.

    Here v = q^{1/2} = p^{r/2}; both sides stay symbolic in v.
    """
    st = stabilizer(chi)
    if not st.trivial_block:
        raise ValueError("chi has no trivial component; phi_{r,chi} = 0")
    d, m = chi.d, p - 1
    f = phi_chi(p, r, chi, symbolic=True)
    zero_t = (0,) * d
    inv = chi.inverse()
    coeffs = {}
    for (t, u), c in f.values.items():
        base = f.value(zero_t, u)
        if c != inv.value(t) * base:
            raise AssertionError(f"phi_chi is not chi-equivariant at {u}")
        coeffs[u] = base
    image = psi_transport(ChiHeckeElem(chi, coeffs))
    HM = image.H
    mu1s = st.mu1_dual
    kM = HM.k_mu(mu1s)
    expected = kM.scale(Scalar.v((d - 1) - HM.W.rho2_pairing(mu1s)))
    expected = expected.map_coefficients(lambda s: s.with_modulus(m))
    if image != expected:
        raise AssertionError(f"Psi-image of phi_{{r,chi}} differs from the M-side Kottwitz function for {chi}")
    if not HM.is_central(image):
        raise AssertionError("Psi-image is not central")
    return image


# -- spectral scalars and L-factors -----------------------------------------------

@dataclass(frozen=True)
class LanglandsParamData:
    chi: DepthZeroChar
    eta: tuple
    p: int
    r: int = 1

    def __post_init__(self):
        eta = tuple(e if isinstance(e, Scalar) else Scalar.const(e) for e in self.eta)
        if len(eta) != self.chi.d:
            raise ValueError("eta must have length d")
        for e in eta:
            e.inverse()  # raises if not a unit
        object.__setattr__(self, "eta", eta)
        if self.chi.p != self.p:
            raise ValueError("character and p disagree")
        if self.r < 1:
            raise ValueError("r must be positive")


def spectral_scalar_routes(param: LanglandsParamData) -> tuple[Scalar, Scalar]:
    """(direct sum, base-change route); v stands for p^{1/2}."""
    chi, d, r = param.chi, param.chi.d, param.r
    st = stabilizer(chi)
    if not st.trivial_block:
        zero = Scalar.zero()
        return zero, zero
    # p^{r <rho, mu*>} sum over the W_chi-orbit of mu1*, i.e. over {-e_j : j trivial}
    direct = Scalar.zero()
    for j in sorted(st.trivial_block):
        direct = direct + param.eta[j - 1] ** (-r)
    direct = direct * Scalar.v(r * (d - 1))
    # Bernstein polynomial of the M-side image; its v is q^{1/2} = v^r
    image = psi_image_of_phi(param.p, r, chi)
    poly = image.H.bernstein_coeffs(image)
    poly = poly.map_coefficients(lambda s: s.substitute_v_power(r))
    via_bc = poly.base_change(r).eval(list(param.eta))
    return direct, via_bc


def spectral_scalar(param: LanglandsParamData) -> Scalar:
    direct, via_bc = spectral_scalar_routes(param)
    if direct != via_bc:
        raise AssertionError(f"spectral scalar routes disagree: {direct} vs {via_bc}")
    return direct


@dataclass(frozen=True)
class LssFactor:
    """L^ss(s) = 1 / det(1 - A u), u = p^{-s}."""

    eigenvalues: tuple  # of A on the inertia invariants
    denominator: tuple  # coefficients of det(1 - A u), low degree first
    series: tuple  # 1/det(1 - A u) to order R
    exp_series: tuple  # exp(sum_k Tr(A^k) u^k / k) to order R

    @property
    def is_trivial(self) -> bool:
        return not self.eigenvalues


def _poly_mul(a: list, b: list) -> list:
    out = [Scalar.zero() for _ in range(len(a) + len(b) - 1)]
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return out


def lss_factor(param: LanglandsParamData, R: int = 6) -> LssFactor:
    """Semi-simple L-factor from the Frobenius eigenvalues eta_i^{-1}, i with chi_i trivial."""
    if R < 1:
        raise ValueError("precision must be at least 1")
    triv = sorted(stabilizer(param.chi).trivial_block)
    eig = tuple(param.eta[i - 1].inverse() for i in triv)
    den = [Scalar.one()]
    for a in eig:
        den = _poly_mul(den, [Scalar.one(), -a])
    # 1/den as a power series
    series = [Scalar.one()]
    for n in range(1, R + 1):
        s = Scalar.zero()
        for k in range(1, min(n, len(den) - 1) + 1):
            s = s - den[k] * series[n - k]
        series.append(s)
    # exp of the trace series: n E_n = sum_k Tr(A^k) E_{n-k}
    traces = [None] + [sum((a ** k for a in eig), Scalar.zero()) for k in range(1, R + 1)]
    exp_series = [Scalar.one()]
    for n in range(1, R + 1):
        s = Scalar.zero()
        for k in range(1, n + 1):
            s = s + traces[k] * exp_series[n - k]
        exp_series.append(s / n)
    if series != exp_series:
        raise AssertionError("trace and determinant forms of L^ss disagree")
    return LssFactor(eig, tuple(den), tuple(series), tuple(exp_series))


# -- traces of Frobenius -----------------------------------------------------------

def trace_frobenius_eval(w: ExtAffElem, t_x: Sequence[int] | Mapping[int, int], chi: DepthZeroChar,
                         r: int = 1, lifts: int = 5, seed: int = 0) -> Scalar:
    """phi_{r,chi}(t^{-1} w^{-1}) for lifts t of t_x in T^{S(w)}(F_p).

    t_x lists discrete logs on the coordinates outside S(w), in increasing
    order (or as a mapping index -> log).  Several lifts are compared, and the
    value is checked against delta^1(w, chi) chi(t_x) (1-q)^{|S(w)|-1}.
    """
    p, d, m = chi.p, chi.d, chi.m
    S = critical_indices(w)
    outside = [j for j in range(1, d + 1) if j not in S]
    logs = dict(t_x) if isinstance(t_x, Mapping) else dict(zip(outside, t_x))
    if set(logs) != set(outside):
        raise ValueError(f"t_x must give one discrete log for each index in {outside}")
    f = phi_chi(p, r, chi)
    q, n = p ** r, p ** r - 1
    u = w.inverse()
    minimal = tuple(logs.get(j, 0) % m for j in range(1, d + 1))

    def at(t):
        return f.value(tuple((-a) % n for a in t), u)

    value = at(minimal)
    rng = random.Random(seed)
    for _ in range(lifts):
        # any t with N_r(t) = t_x modulo T_S(F_p)
        t = tuple(
            rng.randrange(n) if j in S else (minimal[j - 1] + m * rng.randrange(n // m)) % n
            for j in range(1, d + 1)
        )
        if at(t) != value:
            raise AssertionError("phi_{r,chi}(t^{-1} w^{-1}) depends on the lift of t_x")
    expected = Scalar.zero(m)
    if delta1(w, chi):
        expected = chi.value(minimal) * Scalar.const(Fraction(1 - q) ** (len(S) - 1), m)
    if value != expected:
        raise AssertionError(f"trace {value} differs from the factored form {expected}")
    return value
