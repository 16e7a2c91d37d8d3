"""
Iwahori-Hecke algebras of extended affine Weyl groups over Q(zeta_m)[v, 1/v].

Elements are sparse maps w -> Scalar in the basis T_w (characteristic
functions of IwI), with q = v^2 and

    T_s T_w = T_{sw}                       if l(sw) > l(w)
            = (q - 1) T_w + q T_{sw}       otherwise,
    T_omega T_w = T_{omega w}              for omega of length zero.

On top of this: the normalized basis T~_w = v^{-l(w)} T_w, Bernstein elements
Theta^C_lambda (by dominant differences and by alcove walks), the central
elements z_mu and Kottwitz functions k_mu, a centrality test and the
expansion of central elements in the Theta basis.

>>> H = HeckeAlgebra(gl(2))
>>> s = H.T(H.W.simple[1])
>>> s * s == (Scalar.q() - 1) * s + Scalar.q() * H.one()
True
"""

from __future__ import annotations

from functools import lru_cache
from typing import Mapping, Sequence

from .scalar import Scalar
from .symmetric import SymLaurent
from .weyl import (
    AffineWeylGroup,
    ExtAffElem,
    gl,
    perm_apply,
    perm_inverse,
    permutation,
    translation,
)

__all__ = [
    "HeckeAlgebra",
    "HeckeElem",
    "hecke_algebra",
    "kottwitz_mu0_values",
    "is_Q_positive",
    "ExpansionError",
]


class ExpansionError(ArithmeticError):
    """Raised when a Hecke element does not expand in the Theta basis."""


_V = Scalar.v()
_VINV = Scalar.v(-1)
_Q = Scalar.q()
_QM1 = Scalar.q() - 1
_QS = _VINV - _V  # Q_s = v^{-1} - v


class HeckeElem:
    """Immutable sparse element of a `HeckeAlgebra`."""

    __slots__ = ("H", "c")

    def __init__(self, H: "HeckeAlgebra", coeffs: Mapping[ExtAffElem, Scalar]):
        self.H = H
        self.c = {w: s for w, s in coeffs.items() if s}

    # -- linear structure ---------------------------------------------
    def _same(self, other: "HeckeElem"):
        if self.H is not other.H and self.H != other.H:
            raise ValueError("Hecke elements from different algebras")

    def __add__(self, other):
        self._same(other)
        out = dict(self.c)
        for w, s in other.c.items():
            out[w] = out[w] + s if w in out else s
        return HeckeElem(self.H, out)

    def __neg__(self):
        return HeckeElem(self.H, {w: -s for w, s in self.c.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s) -> "HeckeElem":
        if not isinstance(s, Scalar):
            s = Scalar.const(s)
        if not s:
            return HeckeElem(self.H, {})
        return HeckeElem(self.H, {w: c * s for w, c in self.c.items()})

    def __mul__(self, other):
        if isinstance(other, HeckeElem):
            return self.H.multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        if not isinstance(other, HeckeElem):
            return NotImplemented
        return self.H == other.H and self.c == other.c

    def __bool__(self):
        return bool(self.c)

    def __getitem__(self, w: ExtAffElem) -> Scalar:
        return self.c.get(w, Scalar.zero())

    def support(self) -> frozenset[ExtAffElem]:
        return frozenset(self.c)

    def map_coefficients(self, f) -> "HeckeElem":
        return HeckeElem(self.H, {w: f(s) for w, s in self.c.items()})

    def tilde_coefficients(self) -> dict[ExtAffElem, Scalar]:
        """Coefficients in the basis T~_w = v^{-l(w)} T_w."""
        L = self.H.W.length
        return {w: s * Scalar.v(L(w)) for w, s in self.c.items()}

    def __repr__(self):
        if not self.c:
            return "HeckeElem(0)"
        body = " + ".join(f"({s})*T[{w}]" for w, s in sorted(self.c.items()))
        return f"HeckeElem({body})"


class HeckeAlgebra:
    """The Iwahori-Hecke algebra of an `AffineWeylGroup` with generic v."""

    def __init__(self, W: AffineWeylGroup):
        self.W = W
        self._theta_cache: dict = {}

    def __eq__(self, other):
        return isinstance(other, HeckeAlgebra) and self.W == other.W

    def __hash__(self):
        return hash(self.W)

    def __repr__(self):
        return f"HeckeAlgebra({self.W!r})"

    # -- basis elements -----------------------------------------------
    def zero(self) -> HeckeElem:
        return HeckeElem(self, {})

    def one(self) -> HeckeElem:
        return HeckeElem(self, {self.W.identity: Scalar.one()})

    def T(self, w: ExtAffElem, coeff: Scalar | None = None) -> HeckeElem:
        if not self.W.contains(w):
            raise ValueError(f"{w} not in {self.W}")
        return HeckeElem(self, {w: Scalar.one() if coeff is None else coeff})

    def T_tilde(self, w: ExtAffElem) -> HeckeElem:
        return self.T(w, Scalar.v(-self.W.length(w)))

    def T_tilde_inverse(self, w: ExtAffElem) -> HeckeElem:
        """(T~_w)^{-1} = T_{omega^-1} (T~_{s_k} + Q) ... (T~_{s_1} + Q)."""
        word, omega = self.W.reduced_word(w)
        h = self.T(omega.inverse())
        for idx in reversed(word):
            h = self.right_tilde_power(h, idx, -1)
        return h

    # -- one-sided actions of generators ------------------------------
    def left_s(self, idx: int, h: HeckeElem) -> HeckeElem:
        s = self.W.simple[idx]
        L = self.W.length
        out: dict = {}
        for y, c in h.c.items():
            sy = s * y
            if L(sy) > L(y):
                out[sy] = out[sy] + c if sy in out else c
            else:
                a, b = c * _QM1, c * _Q
                out[y] = out[y] + a if y in out else a
                out[sy] = out[sy] + b if sy in out else b
        return HeckeElem(self, out)

    def right_s(self, h: HeckeElem, idx: int) -> HeckeElem:
        s = self.W.simple[idx]
        L = self.W.length
        out: dict = {}
        for y, c in h.c.items():
            ys = y * s
            if L(ys) > L(y):
                out[ys] = out[ys] + c if ys in out else c
            else:
                a, b = c * _QM1, c * _Q
                out[y] = out[y] + a if y in out else a
                out[ys] = out[ys] + b if ys in out else b
        return HeckeElem(self, out)

    def left_omega(self, omega: ExtAffElem, h: HeckeElem) -> HeckeElem:
        return HeckeElem(self, {omega * y: c for y, c in h.c.items()})

    def right_omega(self, h: HeckeElem, omega: ExtAffElem) -> HeckeElem:
        return HeckeElem(self, {y * omega: c for y, c in h.c.items()})

    def right_tilde_power(self, h: HeckeElem, idx: int, eps: int) -> HeckeElem:
        """h * T~_s^{eps}, using T~_s^{-1} = T~_s + Q."""
        out = self.right_s(h, idx).scale(_VINV)
        if eps == -1:
            out = out + h.scale(_QS)
        elif eps != 1:
            raise ValueError("eps must be +1 or -1")
        return out

    # -- products -----------------------------------------------------
    def multiply(self, a: HeckeElem, b: HeckeElem) -> HeckeElem:
        if a.H != self or b.H != self:
            raise ValueError("context mismatch")
        if not a.c or not b.c:
            return self.zero()
        total: dict = {}
        if len(a.c) <= len(b.c):
            for x, cx in a.c.items():
                word, omega = self.W.reduced_word(x)
                h = self.left_omega(omega, b)
                for idx in reversed(word):
                    h = self.left_s(idx, h)
                _accumulate(total, h.c, cx)
        else:
            for y, cy in b.c.items():
                word, omega = self.W.reduced_word(y)
                h = a
                for idx in word:
                    h = self.right_s(h, idx)
                h = self.right_omega(h, omega)
                _accumulate(total, h.c, cy)
        return HeckeElem(self, total)

    def commutes(self, a: HeckeElem, b: HeckeElem) -> bool:
        return self.multiply(a, b) == self.multiply(b, a)

    def is_central(self, h: HeckeElem) -> bool:
        """Commutation with every T_s and every generator of Omega."""
        for idx in range(len(self.W.simple)):
            if self.left_s(idx, h) != self.right_s(h, idx):
                return False
        for om in self.W.omega_generators:
            if self.left_omega(om, h) != self.right_omega(h, om):
                return False
        return True

    # -- chambers and dominance ---------------------------------------
    def _chamber(self, chamber: Sequence[int] | None) -> tuple[int, ...]:
        if chamber is None:
            return tuple(range(1, self.W.d + 1))
        chamber = tuple(chamber)
        if not self.W.contains(permutation(chamber)):
            raise ValueError(f"chamber {chamber} is not in W_M")
        return chamber

    def is_chamber_dominant(self, lam: Sequence[int], chamber: Sequence[int]) -> bool:
        """lam lies in the closure of chamber * C_0, i.e. chamber^{-1} lam is dominant."""
        return self.W.is_dominant(perm_apply(perm_inverse(chamber), lam))

    def dominant_decomposition(self, lam: Sequence[int], chamber: Sequence[int] | None = None,
                               method: str = "minimal") -> tuple[tuple[int, ...], tuple[int, ...]]:
        """(lam1, lam2), both C-dominant, with lam = lam1 - lam2.

        ``minimal`` takes the componentwise smallest lam2; ``rho`` takes
        lam2 = N * chamber(rho_M) for the smallest N that works.
        """
        chamber = self._chamber(chamber)
        mu = perm_apply(perm_inverse(chamber), lam)  # move to C_0
        d = self.W.d
        nu2 = [0] * d
        if method == "minimal":
            for b in self.W.blocks:
                for a_, b_ in zip(reversed(b[:-1]), reversed(b[1:])):
                    nu2[a_ - 1] = max(nu2[b_ - 1], nu2[b_ - 1] + mu[b_ - 1] - mu[a_ - 1])
        elif method == "rho":
            rho = [0] * d
            for b in self.W.blocks:
                for k, i in enumerate(b):
                    rho[i - 1] = len(b) - 1 - k
            N = 0
            while not self.W.is_dominant([m + N * r for m, r in zip(mu, rho)]):
                N += 1
            nu2 = [N * r for r in rho]
        else:
            raise ValueError(f"unknown method {method}")
        lam2 = perm_apply(chamber, tuple(nu2))
        lam1 = tuple(a + b for a, b in zip(lam, lam2))
        assert self.is_chamber_dominant(lam1, chamber) and self.is_chamber_dominant(lam2, chamber)
        return lam1, lam2

    # -- Bernstein elements -------------------------------------------
    def theta(self, lam: Sequence[int], chamber: Sequence[int] | None = None,
              method: str = "minimal", check: bool = False) -> HeckeElem:
        """Theta^C_lam = T~_{lam1} (T~_{lam2})^{-1} for a C-dominant decomposition.

        With ``check=True`` a second decomposition is computed and compared.
        """
        lam = tuple(lam)
        chamber = self._chamber(chamber)
        key = (lam, chamber, method)
        if key not in self._theta_cache:
            lam1, lam2 = self.dominant_decomposition(lam, chamber, method)
            self._theta_cache[key] = self._theta_from(lam1, lam2)
        out = self._theta_cache[key]
        if check:
            # a second, different decomposition: add chamber(rho_M) + (1, ..., 1) to both parts
            lam1, lam2 = self.dominant_decomposition(lam, chamber, method)
            rho = [0] * self.W.d
            for blk in self.W.blocks:
                for k, i in enumerate(blk):
                    rho[i - 1] = len(blk) - k
            shift = perm_apply(chamber, tuple(rho))
            o1 = tuple(a + b for a, b in zip(lam1, shift))
            o2 = tuple(a + b for a, b in zip(lam2, shift))
            if self._theta_from(o1, o2) != out:
                raise AssertionError(f"Theta_{lam} depends on the decomposition")
        return out

    def _theta_from(self, lam1: Sequence[int], lam2: Sequence[int]) -> HeckeElem:
        t1 = translation(lam1)
        word, omega = self.W.reduced_word(translation(lam2))
        h = self.T(t1 * omega.inverse(), Scalar.v(-self.W.length(t1)))
        for idx in reversed(word):
            h = self.right_tilde_power(h, idx, -1)
        return h

    def walk_signs(self, word: Sequence[int], chamber: Sequence[int] | None = None) -> list[int]:
        """Orientation of each step of the walk a, s_1 a, s_1 s_2 a, ... relative to the
        chamber opposite to C: +1 when the step moves away from a deep alcove there."""
        chamber = self._chamber(chamber)
        d = self.W.d
        rho = tuple(range(d - 1, -1, -1))
        cbar = tuple(-c for c in perm_apply(chamber, rho))
        x = self.W.identity
        signs = []
        for idx in word:
            i, j = self.W.wall_linear_part(idx)
            y = perm_apply(perm_inverse(x.perm), cbar)
            val = y[i - 1] - y[j - 1]
            if val == 0:  # pragma: no cover - cbar is regular
                raise AssertionError("degenerate orientation")
            signs.append(1 if val < 0 else -1)
            x = x * self.W.simple[idx]
        return signs

    def theta_walk(self, lam: Sequence[int], chamber: Sequence[int] | None,
                   expr: tuple[Sequence[int], ExtAffElem]) -> HeckeElem:
        """Theta^C_lam from an expression t_lam = s_{i_1} ... s_{i_k} omega (not necessarily reduced)."""
        word, omega = expr
        if self.W.compose_word(word, omega) != translation(lam):
            raise ValueError("expression does not evaluate to t_lambda")
        h = self.one()
        for idx, eps in zip(word, self.walk_signs(word, chamber)):
            h = self.right_tilde_power(h, idx, eps)
        return self.right_omega(h, omega)

    # -- central elements ---------------------------------------------
    def _check_minuscule(self, mu: Sequence[int]):
        if not self.W.is_dominant(mu):
            raise ValueError(f"{mu} is not dominant")
        for b in self.W.blocks:
            vals = [mu[i - 1] for i in b]
            if max(vals) - min(vals) > 1:
                raise ValueError(f"{mu} is not minuscule")

    def z_mu(self, mu: Sequence[int], chamber: Sequence[int] | None = None) -> HeckeElem:
        """Sum of Theta^C_lam over the W-orbit of a dominant minuscule mu."""
        self._check_minuscule(mu)
        total = self.zero()
        for lam in self.W.weyl_orbit(mu):
            total = total + self.theta(lam, chamber)
        return total

    def k_mu(self, mu: Sequence[int]) -> HeckeElem:
        """Kottwitz function v^{<2 rho, mu>} z_mu."""
        return self.z_mu(mu).scale(Scalar.v(self.W.rho2_pairing(mu)))

    # -- Bernstein coefficients ---------------------------------------
    def bernstein_coeffs(self, z: HeckeElem, max_steps: int = 10000, check_central: bool = True) -> SymLaurent:
        """Write z = sum_lam c_lam Theta_lam and return sum_lam c_lam x^lam.

        Theta_lam equals T~_{t_lam} plus terms of smaller length, so peeling a
        maximal-length support element (which must be a translation) is exact.
        """
        if z.H != self:
            raise ValueError("context mismatch")
        if check_central and not self.is_central(z):
            raise ExpansionError("element is not central")
        L = self.W.length
        rest = z
        coeffs: dict = {}
        for _ in range(max_steps):
            if not rest.c:
                break
            top = max(L(w) for w in rest.c)
            x = min(w for w in rest.c if L(w) == top)
            if not x.is_translation:
                raise ExpansionError(f"leading term {x} is not a translation")
            c = rest.c[x] * Scalar.v(top)
            coeffs[x.lam] = c
            rest = rest - self.theta(x.lam).scale(c)
        else:
            raise ExpansionError("Theta expansion did not terminate")
        try:
            return SymLaurent(coeffs, self.W.d, self.W.blocks)
        except ValueError as exc:
            raise ExpansionError(str(exc)) from exc

    def from_bernstein(self, p: SymLaurent) -> HeckeElem:
        total = self.zero()
        for lam, c in p.terms.items():
            total = total + self.theta(lam).scale(c)
        return total


def _accumulate(total: dict, terms: dict, factor: Scalar):
    for w, s in terms.items():
        v = s * factor
        if w in total:
            nv = total[w] + v
            if nv:
                total[w] = nv
            else:
                del total[w]
        elif v:
            total[w] = v


@lru_cache(maxsize=None)
def hecke_algebra(d: int, blocks: tuple | None = None) -> HeckeAlgebra:
    if blocks is None:
        return HeckeAlgebra(gl(d))
    from .admissible import _levi_group

    return HeckeAlgebra(_levi_group(d, tuple(tuple(b) for b in blocks)))


@lru_cache(maxsize=None)
def kottwitz_mu0_values(d: int) -> dict[ExtAffElem, Scalar]:
    """w -> k_{mu_0}(w) for GL_d, computed in the Hecke algebra."""
    H = hecke_algebra(d)
    mu0 = tuple(1 if i == 0 else 0 for i in range(d))
    return dict(H.k_mu(mu0).c)


def is_Q_positive(s: Scalar) -> bool:
    """Is s a polynomial in Q = v^{-1} - v with non-negative integer coefficients?"""
    rest = s
    if not rest.is_rational():
        return False
    while rest:
        e = min(rest.v_exponents())
        if e > 0:
            return False
        c = rest.terms()[(e, 0)]
        if c < 0 or c.denominator != 1:
            return False
        rest = rest - _QS ** (-e) * c
    return True
