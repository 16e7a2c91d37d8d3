"""
Depth-zero characters of T(F_p), their stabilizers, the selectors delta and
delta^1, group algebras of the finite tori T(k_r) with their character
idempotents, and the basis transport into the Iwahori-Hecke algebra of M_chi.

A character chi = (chi_1, ..., chi_d) is stored as exponents a_j mod p-1:
chi_j(g0^k) = zeta^{a_j k}, where g0 generates F_p^x and zeta = zeta_{p-1}.
Elements of T(k_r) are vectors of discrete logs mod p^r - 1 with respect to a
generator g of k_r^x, chosen so that g^{(p^r-1)/(p-1)} = g0.  The norm is then

    N_r(g^k) = g0^{k mod (p-1)},

and chi_r := chi o N_r has the same exponent vector.

>>> chi = DepthZeroChar(3, (0, 0, 1))
>>> stabilizer(chi).levi.blocks
((1, 2), (3,))
>>> stabilizer(chi).mu1
(1, 0, 0)
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterable, Mapping, Sequence

import numpy as np
from sympy import isprime

from .admissible import LeviDatum, critical_indices
from .hecke import HeckeAlgebra, HeckeElem
from .scalar import Scalar, cyclotomic_poly
from .weyl import AffineWeylGroup, ExtAffElem, gl, perm_apply, perm_inverse, unit_vector

__all__ = [
    "DepthZeroChar",
    "CharStabilizer",
    "stabilizer",
    "delta",
    "delta1",
    "norm",
    "TorusGroupAlgebra",
    "idempotents",
    "ChiHeckeElem",
    "psi_transport",
    "psi_inverse",
    "length_defect",
    "all_characters",
]


# -- characters ----------------------------------------------------------------

@dataclass(frozen=True)
class DepthZeroChar:
    p: int
    exps: tuple[int, ...]

    def __post_init__(self):
        if not isprime(self.p):
            raise ValueError(f"{self.p} is not prime")
        object.__setattr__(self, "exps", tuple(int(a) % (self.p - 1) for a in self.exps))
        if not self.exps:
            raise ValueError("chi needs at least one component")

    @property
    def d(self) -> int:
        return len(self.exps)

    @property
    def m(self) -> int:
        return self.p - 1

    def is_trivial(self) -> bool:
        return not any(self.exps)

    def pairing(self, t: Sequence[int]) -> int:
        """k with chi(t) = zeta^k, for t in T(F_p) given by discrete logs."""
        return sum(a * b for a, b in zip(self.exps, t)) % self.m

    def value(self, t: Sequence[int]) -> Scalar:
        """chi(t) for t in T(F_p)."""
        return Scalar.zeta(self.m, self.pairing(t))

    def value_r(self, t: Sequence[int], r: int) -> Scalar:
        """chi_r(t) = chi(N_r t) for t in T(k_r)."""
        return self.value(norm(self.p, r, t))

    def inverse(self) -> "DepthZeroChar":
        return DepthZeroChar(self.p, tuple(-a for a in self.exps))

    def conjugate(self, w: ExtAffElem) -> "DepthZeroChar":
        """^w chi, with (^w chi)(t) = chi(w^{-1} t w); (^w chi)_j = chi_{wbar^{-1}(j)}."""
        pinv = perm_inverse(w.perm)
        return DepthZeroChar(self.p, tuple(self.exps[pinv[j] - 1] for j in range(self.d)))

    @property
    def trivial_block(self) -> frozenset[int]:
        return frozenset(j + 1 for j, a in enumerate(self.exps) if a == 0)


def all_characters(p: int, d: int) -> list[DepthZeroChar]:
    return [DepthZeroChar(p, e) for e in product(range(p - 1), repeat=d)]


def norm(p: int, r: int, t: Sequence[int]) -> tuple[int, ...]:
    """N_r : T(k_r) -> T(F_p) in discrete logs."""
    return tuple(int(a) % (p - 1) for a in t)


# -- stabilizers ---------------------------------------------------------------

@dataclass(frozen=True)
class CharStabilizer:
    levi: LeviDatum
    W_chi: tuple[tuple[int, ...], ...]
    trivial_block: frozenset[int]
    mu1: tuple[int, ...] | None

    @property
    def group(self) -> AffineWeylGroup:
        return self.levi.group()

    @property
    def mu1_dual(self) -> tuple[int, ...] | None:
        """-w_0^M(mu1) = -e_{max of the trivial block}."""
        if self.mu1 is None:
            return None
        d = len(self.mu1)
        return unit_vector(d, max(self.trivial_block), -1)


@lru_cache(maxsize=None)
def stabilizer(chi: DepthZeroChar) -> CharStabilizer:
    """Blocks are level sets of the exponent vector; W_chi is checked against the full stabilizer."""
    from itertools import permutations

    levels: dict[int, list[int]] = {}
    for j, a in enumerate(chi.exps, start=1):
        levels.setdefault(a, []).append(j)
    levi = LeviDatum(tuple(tuple(b) for b in levels.values()))
    W_refl = set(levi.group().finite_weyl_group)  # generated by the reflections in Phi_chi
    full = {
        p for p in permutations(range(1, chi.d + 1))
        if chi.conjugate(ExtAffElem((0,) * chi.d, p)) == chi
    }
    if W_refl != full:
        raise AssertionError("W_chi differs from the reflection subgroup W_chi^o")
    triv = chi.trivial_block
    mu1 = unit_vector(chi.d, min(triv)) if triv else None
    return CharStabilizer(levi, tuple(sorted(full)), triv, mu1)


# -- delta selectors -----------------------------------------------------------

_ENUM_LIMIT = 100_000


def _trivial_on_T1S(chi: DepthZeroChar, S: Sequence[int]) -> bool:
    """Is chi trivial on the kernel of T_S(F_p) -> F_p^x, (t_i) -> prod t_i?"""
    S = sorted(S)
    m = chi.m
    if m ** (len(S) - 1) <= _ENUM_LIMIT:
        for head in product(range(m), repeat=len(S) - 1):
            logs = dict(zip(S[:-1], head))
            logs[S[-1]] = (-sum(head)) % m
            t = [logs.get(j, 0) for j in range(1, chi.d + 1)]
            if chi.pairing(t):
                return False
        return True
    # the kernel is generated by the elements with logs e_i - e_{i0}
    return all((chi.exps[i - 1] - chi.exps[S[0] - 1]) % m == 0 for i in S)


def _trivial_on_TS(chi: DepthZeroChar, S: Sequence[int]) -> bool:
    return all(chi.pairing(unit_vector(chi.d, j)) == 0 for j in S)


@lru_cache(maxsize=None)
def delta(w: ExtAffElem, chi: DepthZeroChar) -> int:
    """1 iff chi is constant on S(w); three equivalent formulations are compared."""
    S = critical_indices(w)
    iii = len({chi.exps[j - 1] for j in S}) == 1
    iv = any(set(S) <= set(b) for b in stabilizer(chi).levi.blocks)
    v = _trivial_on_T1S(chi, S)
    if not iii == iv == v:
        raise AssertionError(f"delta conditions disagree for {w}, {chi}")
    if iii and chi.conjugate(w) != chi:
        raise AssertionError(f"delta(w, chi) = 1 but ^w chi != chi for {w}, {chi}")
    return int(iii)


@lru_cache(maxsize=None)
def delta1(w: ExtAffElem, chi: DepthZeroChar) -> int:
    """1 iff chi_j is trivial for all j in S(w), i.e. chi is trivial on T_S(F_p)."""
    S = critical_indices(w)
    a = all(chi.exps[j - 1] == 0 for j in S)
    b = _trivial_on_TS(chi, S)
    if a != b:
        raise AssertionError("delta^1 conditions disagree")
    if a and not delta(w, chi):
        raise AssertionError("delta^1 = 1 must imply delta = 1")
    return int(a)


# -- finite torus group algebras -----------------------------------------------

class TorusGroupAlgebra:
    """Group algebra of (Z/n)^d with coefficients in Q(zeta_m); n = p^r - 1, m = p - 1.

    Elements are dicts t -> Scalar; multiplication is convolution.
    """

    def __init__(self, p: int, r: int, d: int):
        self.p, self.r, self.d = p, r, d
        self.n = p ** r - 1
        self.m = p - 1

    @property
    def order(self) -> int:
        return self.n ** self.d

    def elements(self) -> Iterable[tuple[int, ...]]:
        return product(range(self.n), repeat=self.d)

    def identity(self) -> dict:
        return {(0,) * self.d: Scalar.one(self.m)}

    def convolve(self, f: Mapping, g: Mapping) -> dict:
        out: dict = {}
        n = self.n
        for x, a in f.items():
            for y, b in g.items():
                k = tuple((i + j) % n for i, j in zip(x, y))
                out[k] = out[k] + a * b if k in out else a * b
        return {k: v for k, v in out.items() if v}

    def add(self, f: Mapping, g: Mapping) -> dict:
        out = dict(f)
        for k, v in g.items():
            out[k] = out[k] + v if k in out else v
        return {k: v for k, v in out.items() if v}

    def idempotent(self, chi: DepthZeroChar) -> dict:
        """e_xi for xi = chi o N_r: e_xi(t) = |T(k_r)|^{-1} xi(t^{-1})."""
        if chi.d != self.d or chi.p != self.p:
            raise ValueError("character does not match the torus")
        inv = chi.inverse()
        scale = Scalar.const(1, self.m) / self.order
        return {t: inv.value_r(t, self.r) * scale for t in self.elements()}

    def factor(self, j: int) -> "TorusGroupAlgebra":
        """The rank-one algebra of the j-th coordinate."""
        return TorusGroupAlgebra(self.p, self.r, 1)

    def conjugate(self, f: Mapping, w: ExtAffElem) -> dict:
        """x -> f(w^{-1} x w), where (w^{-1} t w)_i = t_{wbar(i)}."""
        return {perm_apply(w.perm, t): c for t, c in f.items()}

    def kernel_idempotent(self) -> dict:
        """The idempotent of ker N_r, i.e. |ker|^{-1} times its indicator."""
        ker = [t for t in self.elements() if not any(norm(self.p, self.r, t))]
        c = Scalar.const(1, self.m) / len(ker)
        return {t: c for t in ker}


class _ZArray:
    """Exact int64 arrays over Z[zeta_m], used for fast dense convolutions.

    An element is an array of shape (n,)*k + (deg,) holding power-basis
    coordinates; products of coordinates are reduced modulo Phi_m.
    """

    def __init__(self, n: int, m: int):
        self.n, self.m = n, m
        phi = cyclotomic_poly(m)
        self.deg = len(phi) - 1
        rows = []
        cur = [0] * self.deg
        cur[0] = 1
        for _ in range(max(2 * self.deg - 1, m)):
            rows.append(cur)
            top = cur[-1]
            cur = [0] + cur[:-1]
            for j in range(self.deg):
                cur[j] -= top * phi[j]
        self.zpow = np.array(rows, dtype=np.int64)  # row k = z^k
        self.red = self.zpow[: 2 * self.deg - 1]

    def from_dict(self, f: Mapping, k: int, scale: int) -> np.ndarray:
        a = np.zeros((self.n,) * k + (self.deg,), dtype=np.int64)
        for t, c in f.items():
            vec = [x * scale for x in c.coefficient(0)]
            if any(x.denominator != 1 for x in vec):
                raise ValueError("value is not integral after scaling")
            a[t] = [int(x) for x in vec]
        return a

    def character_array(self, exps: Sequence[int]) -> np.ndarray:
        """t -> zeta^{-sum a_j t_j} on (Z/n)^k, straight from the exponents."""
        grids = np.indices((self.n,) * len(exps))
        k = sum(a * g for a, g in zip(exps, grids))
        return self.zpow[(-k) % self.m]

    def _reduce(self, wide: np.ndarray) -> np.ndarray:
        return np.tensordot(wide, self.red, axes=([-1], [0]))

    def mul(self, f: np.ndarray, g: np.ndarray) -> np.ndarray:
        """Pointwise product (with broadcasting)."""
        shape = np.broadcast_shapes(f.shape[:-1], g.shape[:-1]) + (2 * self.deg - 1,)
        out = np.zeros(shape, dtype=np.int64)
        for a in range(self.deg):
            for b in range(self.deg):
                out[..., a + b] += f[..., a] * g[..., b]
        return self._reduce(out)

    def convolve(self, f: np.ndarray, g: np.ndarray) -> np.ndarray:
        return self.convolve_batch(f, g[None])[0]

    def convolve_batch(self, f: np.ndarray, G: np.ndarray) -> np.ndarray:
        """f * g for every g in the stack G (first axis)."""
        k = f.ndim - 1
        if np.abs(f).max(initial=0) * np.abs(G).sum(axis=tuple(range(1, G.ndim))).max(initial=0) >= 2 ** 62:
            raise OverflowError("convolution may overflow int64")
        out = np.zeros((G.shape[0],) + f.shape[:-1] + (2 * self.deg - 1,), dtype=np.int64)
        axes = tuple(range(k))
        pad = (slice(None),) + (None,) * k
        for y in product(range(self.n), repeat=k):
            gy = G[(slice(None),) + y]  # (B, deg)
            if not gy.any():
                continue
            shifted = np.roll(f, y, axis=axes)[None]
            for b in range(self.deg):
                out[..., b:b + self.deg] += shifted * gy[pad + (b, None)]
        return self._reduce(out)


def idempotents(p: int, r: int, d: int, dense_limit: int = 600) -> dict:
    """Check the idempotent identities for {e_{chi o N_r}} and return a report.

    Small tori are checked densely.  Otherwise each rank-one factor is checked
    and every e_xi is compared with the tensor product of its factors, which
    makes the full identities follow.
    """
    A = TorusGroupAlgebra(p, r, d)
    chars = all_characters(p, d)
    report = {"p": p, "r": r, "d": d, "order": A.order, "mode": None, "checks": 0}
    N = A.order
    Z = _ZArray(A.n, A.m)
    if N <= dense_limit:
        report["mode"] = "dense"
        es = {chi: A.idempotent(chi) for chi in chars}
        arr = {chi: Z.from_dict(e, d, N) for chi, e in es.items()}
        total: dict = {}
        for e in es.values():
            total = A.add(total, e)
        target = A.identity() if r == 1 else A.kernel_idempotent()
        if total != target:
            raise AssertionError("sum of idempotents is wrong")
        stack = np.stack([arr[b] for b in chars])
        for i, a in enumerate(chars):
            # (N e_a) * (N e_b) = N^2 e_a e_b, which must be N (N e_a) or 0
            prods = Z.convolve_batch(arr[a], stack)
            for j, b in enumerate(chars):
                if not np.array_equal(prods[j], arr[a] * N if i == j else 0 * prods[j]):
                    raise AssertionError(f"orthogonality fails for {a.exps}, {b.exps}")
                report["checks"] += 1
    else:
        report["mode"] = "factored"
    # rank-one factors, always exhaustive
    A1 = TorusGroupAlgebra(p, r, 1)
    ones = all_characters(p, 1)
    e1 = {c: A1.idempotent(c) for c in ones}
    for a in ones:
        for b in ones:
            if A1.convolve(e1[a], e1[b]) != (e1[a] if a == b else {}):
                raise AssertionError("rank-one orthogonality fails")
            report["checks"] += 1
    s1: dict = {}
    for e in e1.values():
        s1 = A1.add(s1, e)
    if s1 != (A1.identity() if r == 1 else A1.kernel_idempotent()):
        raise AssertionError("rank-one completeness fails")
    if report["mode"] == "factored":
        f1 = {c.exps[0]: Z.from_dict(e, 1, A.n) for c, e in e1.items()}
        for chi in chars:
            tensor = f1[chi.exps[0]]
            for a in chi.exps[1:]:
                tensor = Z.mul(tensor[..., None, :], f1[a].reshape((1,) * (tensor.ndim - 1) + f1[a].shape))
            if not np.array_equal(tensor, Z.character_array(chi.exps)):
                raise AssertionError("idempotent does not factor")
            report["checks"] += 1
    return report


def check_conjugation_rule(p: int, r: int, d: int, w: ExtAffElem) -> bool:
    """e_xi(w^{-1} x w) = e_{^w xi}(x) for all xi = chi o N_r."""
    A = TorusGroupAlgebra(p, r, d)
    for chi in all_characters(p, d):
        lhs = A.conjugate(A.idempotent(chi), w)
        rhs = A.idempotent(chi.conjugate(w))
        if lhs != rhs:
            return False
    return True


# -- the chi-spherical Hecke algebra and its transport -------------------------

@dataclass
class ChiHeckeElem:
    """An element sum_u c_u [I n_u I]_chi of H(G, I, chi), u in the extended group of W_chi."""

    chi: DepthZeroChar
    coeffs: dict


def length_defect(w: ExtAffElem, M: AffineWeylGroup) -> int:
    """l(w) - l_M(w)."""
    return gl(w.d).length(w) - M.length(w)


def psi_transport(h: ChiHeckeElem) -> HeckeElem:
    """[I n_w I]_chi -> v^{l(w) - l_chi(w)} T^M_w, into the Iwahori-Hecke algebra of M_chi."""
    st = stabilizer(h.chi)
    M = st.group
    H = HeckeAlgebra(M)
    out = {}
    for w, c in h.coeffs.items():
        if not M.contains(w):
            raise ValueError(f"{w} is outside the extended affine Weyl group of M_chi")
        if c:
            out[w] = c * Scalar.v(length_defect(w, M))
    return HeckeElem(H, out)


def psi_inverse(chi: DepthZeroChar, h: HeckeElem) -> ChiHeckeElem:
    M = stabilizer(chi).group
    if h.H.W != M:
        raise ValueError("element does not live in the Hecke algebra of M_chi")
    return ChiHeckeElem(chi, {w: c * Scalar.v(-length_defect(w, M)) for w, c in h.c.items()})
