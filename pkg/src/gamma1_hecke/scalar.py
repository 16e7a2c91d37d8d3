"""
Exact coefficient ring Q(zeta_m)[v, v^-1].

A `Scalar` is a Laurent polynomial in `v` whose coefficients live in the
cyclotomic field Q(zeta_m) = Q[z]/Phi_m(z).  Internally it is one flat dict
keyed by `(v_exponent, z_exponent)` with `0 <= z_exponent < phi(m)`, so that
the Hecke algebra (where m = 1 almost always) pays no per-coefficient wrapper
cost.  Throughout, `q` means `v**2`.

>>> q = Scalar.q()
>>> str((1 - q) ** 2)
'1 - 2*q + q^2'
>>> z = Scalar.zeta(4)
>>> str(z * z)
'-1'
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Union

__all__ = ["Scalar", "cyclotomic_poly", "ContextMismatch"]

Number = Union[int, Fraction]


class ContextMismatch(ValueError):
    """Raised when scalars over different cyclotomic fields are combined."""


def _poly_divmod(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    # integer polynomials, coefficient lists low -> high; den is monic
    num = list(num)
    out = [0] * max(len(num) - len(den) + 1, 1)
    for i in range(len(num) - len(den), -1, -1):
        c = num[i + len(den) - 1]
        out[i] = c
        if c:
            for j, dc in enumerate(den):
                num[i + j] -= c * dc
    rem = num[: len(den) - 1]
    return out, rem


@lru_cache(maxsize=None)
def cyclotomic_poly(m: int) -> tuple[int, ...]:
    """Coefficients (low to high) of the m-th cyclotomic polynomial."""
    if m < 1:
        raise ValueError("m must be positive")
    num = [-1] + [0] * (m - 1) + [1]
    for k in range(1, m):
        if m % k == 0:
            num, rem = _poly_divmod(num, list(cyclotomic_poly(k)))
            assert not any(rem)
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    return tuple(num)


@lru_cache(maxsize=None)
def _z_powers(m: int) -> tuple[tuple[Fraction, ...], ...]:
    """z^k reduced mod Phi_m for 0 <= k < max(2*phi(m), m)."""
    phi = cyclotomic_poly(m)
    deg = len(phi) - 1
    rows = []
    cur = [Fraction(0)] * deg
    cur[0] = Fraction(1)
    for _ in range(max(2 * deg, m)):
        rows.append(tuple(cur))
        # multiply by z, then eliminate z^deg
        top = cur[-1]
        cur = [Fraction(0)] + cur[:-1]
        if top:
            for j in range(deg):
                cur[j] -= top * phi[j]
    return tuple(rows)


def _degree(m: int) -> int:
    return len(cyclotomic_poly(m)) - 1


class Scalar:
    """Immutable element of Q(zeta_m)[v, v^-1]."""

    __slots__ = ("m", "_t", "_hash")

    def __init__(self, terms: dict | None = None, m: int = 1, *, _canonical: bool = False):
        self.m = m
        if _canonical:
            self._t = terms or {}
        else:
            self._t = _reduce(terms or {}, m)
        self._hash = None

    # -- constructors -------------------------------------------------
    @classmethod
    def const(cls, c: Number, m: int = 1) -> "Scalar":
        c = Fraction(c)
        return cls({(0, 0): c} if c else {}, m, _canonical=True)

    @classmethod
    def v(cls, k: int = 1, m: int = 1) -> "Scalar":
        return cls({(k, 0): Fraction(1)}, m, _canonical=True)

    @classmethod
    def q(cls, k: int = 1, m: int = 1) -> "Scalar":
        return cls.v(2 * k, m)

    @classmethod
    def zeta(cls, m: int, k: int = 1) -> "Scalar":
        """zeta_m ** k."""
        return cls({(0, k % m): Fraction(1)}, m)

    @classmethod
    def zero(cls, m: int = 1) -> "Scalar":
        return cls({}, m, _canonical=True)

    @classmethod
    def one(cls, m: int = 1) -> "Scalar":
        return cls.const(1, m)

    # -- coercion -----------------------------------------------------
    def _coerce(self, other) -> tuple["Scalar", "Scalar"]:
        if isinstance(other, Scalar):
            if other.m == self.m:
                return self, other
            if other.m == 1 or _degree(other.m) == 1 and other.is_rational():
                return self, other.with_modulus(self.m)
            if self.m == 1 or _degree(self.m) == 1 and self.is_rational():
                return self.with_modulus(other.m), other
            raise ContextMismatch(f"cannot combine Q(zeta_{self.m}) with Q(zeta_{other.m})")
        if isinstance(other, (int, Fraction)):
            return self, Scalar.const(other, self.m)
        return NotImplemented, NotImplemented

    def with_modulus(self, m: int) -> "Scalar":
        """Re-home a scalar with rational coefficients into Q(zeta_m)."""
        if m == self.m:
            return self
        if not self.is_rational():
            raise ContextMismatch("only rational-coefficient scalars can change field")
        return Scalar(dict(self._t), m, _canonical=True)

    # -- ring operations ----------------------------------------------
    def __add__(self, other):
        a, b = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        t = dict(a._t)
        for k, c in b._t.items():
            s = t.get(k, 0) + c
            if s:
                t[k] = s
            else:
                t.pop(k, None)
        return Scalar(t, a.m, _canonical=True)

    __radd__ = __add__

    def __neg__(self):
        return Scalar({k: -c for k, c in self._t.items()}, self.m, _canonical=True)

    def __sub__(self, other):
        a, b = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        return a + (-b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        a, b = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        if not a._t or not b._t:
            return Scalar.zero(a.m)
        deg = _degree(a.m)
        if deg == 1:
            t: dict = {}
            for (e1, _), c1 in a._t.items():
                for (e2, _), c2 in b._t.items():
                    k = (e1 + e2, 0)
                    t[k] = t.get(k, 0) + c1 * c2
            return Scalar({k: c for k, c in t.items() if c}, a.m, _canonical=True)
        raw: dict = {}
        for (e1, z1), c1 in a._t.items():
            for (e2, z2), c2 in b._t.items():
                k = (e1 + e2, z1 + z2)
                raw[k] = raw.get(k, 0) + c1 * c2
        return Scalar(raw, a.m)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Scalar":
        if n < 0:
            return self.inverse() ** (-n)
        result = Scalar.one(self.m)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero scalar")
            inv = Fraction(1) / Fraction(other)
            return Scalar({k: c * inv for k, c in self._t.items()}, self.m, _canonical=True)
        a, b = self._coerce(other)
        return a * b.inverse()

    def inverse(self) -> "Scalar":
        """Inverse of a unit: c * v^k with c a nonzero element of Q(zeta_m)."""
        exps = {e for e, _ in self._t}
        if len(exps) != 1:
            raise ZeroDivisionError(f"{self} is not a unit in Q(zeta_{self.m})[v, 1/v]")
        (e,) = exps
        coeffs = self.coefficient(e)
        inv = _field_inverse(coeffs, self.m)
        return Scalar({(-e, j): c for j, c in enumerate(inv) if c}, self.m, _canonical=True)

    # -- inspection ---------------------------------------------------
    def __bool__(self):
        return bool(self._t)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Scalar.const(other, self.m)
        if not isinstance(other, Scalar):
            return NotImplemented
        if self.m != other.m:
            try:
                a, b = self._coerce(other)
            except ContextMismatch:
                return False
            return a._t == b._t
        return self._t == other._t

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._t.items()))
        return self._hash

    def terms(self) -> dict:
        return dict(self._t)

    def v_exponents(self) -> set[int]:
        return {e for e, _ in self._t}

    def coefficient(self, e: int) -> tuple[Fraction, ...]:
        """Q(zeta_m)-coefficient of v^e, as a vector in the power basis of z."""
        out = [Fraction(0)] * _degree(self.m)
        for (ve, ze), c in self._t.items():
            if ve == e:
                out[ze] = c
        return tuple(out)

    def v_coefficient(self, e: int) -> "Scalar":
        return Scalar({(0, z): c for (ve, z), c in self._t.items() if ve == e}, self.m, _canonical=True)

    def is_rational(self) -> bool:
        return all(z == 0 for _, z in self._t)

    def is_constant(self) -> bool:
        return all(e == 0 for e, _ in self._t)

    def to_fraction(self) -> Fraction:
        if not (self.is_rational() and self.is_constant()):
            raise ValueError(f"{self} is not a rational number")
        return self._t.get((0, 0), Fraction(0))

    # -- substitutions ------------------------------------------------
    def specialize_q(self, q0: Number) -> "Scalar":
        """Substitute v^2 -> q0; every v-exponent must be even."""
        if any(e % 2 for e in self.v_exponents()):
            raise ValueError(f"odd power of v in {self}; q-specialization undefined")
        q0 = Fraction(q0)
        raw: dict = {}
        for (e, z), c in self._t.items():
            raw[(0, z)] = raw.get((0, z), 0) + c * q0 ** (e // 2)
        return Scalar({k: c for k, c in raw.items() if c}, self.m, _canonical=True)

    def substitute_v_power(self, k: int) -> "Scalar":
        """Substitute v -> v^k."""
        return Scalar({(e * k, z): c for (e, z), c in self._t.items()}, self.m, _canonical=True)

    # -- formatting ---------------------------------------------------
    def __repr__(self):
        return f"Scalar({str(self)!r}, m={self.m})"

    def __str__(self):
        if not self._t:
            return "0"
        use_q = all(e % 2 == 0 for e, _ in self._t)
        parts = []
        for (e, z), c in sorted(self._t.items()):
            factors = []
            if z:
                factors.append("z" if z == 1 else f"z^{z}")
            if e:
                name, k = ("q", e // 2) if use_q else ("v", e)
                factors.append(name if k == 1 else f"{name}^{k}")
            mag = abs(c)
            if factors:
                body = "*".join(factors) if mag == 1 else f"{_fmt_frac(mag)}*" + "*".join(factors)
            else:
                body = _fmt_frac(mag)
            parts.append(("-" if c < 0 else "+", body))
        sign, body = parts[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


def _fmt_frac(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _reduce(terms: dict, m: int) -> dict:
    deg = _degree(m)
    zp = _z_powers(m) if deg > 1 or m > 1 else None
    out: dict = {}
    for (e, z), c in terms.items():
        if not c:
            continue
        c = Fraction(c)
        if z < deg:
            out[(e, z)] = out.get((e, z), 0) + c
            continue
        z = z % m if m > 1 else 0
        if z < deg:
            out[(e, z)] = out.get((e, z), 0) + c
            continue
        for j, r in enumerate(zp[z]):
            if r:
                out[(e, j)] = out.get((e, j), 0) + c * r
    return {k: c for k, c in out.items() if c}


def _field_inverse(coeffs: Iterable[Fraction], m: int) -> tuple[Fraction, ...]:
    """Inverse in Q[z]/Phi_m via solving (mult-by-c) x = 1."""
    coeffs = list(coeffs)
    deg = len(coeffs)
    if not any(coeffs):
        raise ZeroDivisionError("zero has no inverse")
    zp = _z_powers(m)
    # column j = c * z^j
    cols = []
    for j in range(deg):
        col = [Fraction(0)] * deg
        for i, ci in enumerate(coeffs):
            if ci:
                for k, r in enumerate(zp[i + j]):
                    col[k] += ci * r
        cols.append(col)
    mat = [[cols[j][i] for j in range(deg)] + [Fraction(int(i == 0))] for i in range(deg)]
    for col in range(deg):
        piv = next(r for r in range(col, deg) if mat[r][col])
        mat[col], mat[piv] = mat[piv], mat[col]
        pv = mat[col][col]
        mat[col] = [x / pv for x in mat[col]]
        for r in range(deg):
            if r != col and mat[r][col]:
                f = mat[r][col]
                mat[r] = [x - f * y for x, y in zip(mat[r], mat[col])]
    return tuple(mat[i][deg] for i in range(deg))
