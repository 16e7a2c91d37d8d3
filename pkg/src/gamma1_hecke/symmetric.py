"""
Laurent polynomials in x_1, ..., x_d that are invariant under a Young subgroup.

The subgroup is declared by blocks of indices; invariance is checked when the
polynomial is built.  Coefficients are `Scalar`s.

>>> m = SymLaurent.monomial_symmetric((1, 0), [(1, 2)])
>>> sorted(m.terms)
[(0, 1), (1, 0)]
>>> str(m.eval([Scalar.const(2), Scalar.const(3)]))
'5'
"""

from __future__ import annotations

from itertools import permutations, product
from typing import Iterable, Mapping, Sequence

from .scalar import Scalar

__all__ = ["SymLaurent", "NotInvariant"]


class NotInvariant(ValueError):
    pass


def _orbit(exps: tuple[int, ...], blocks) -> set[tuple[int, ...]]:
    choices = []
    for b in blocks:
        vals = [exps[i - 1] for i in b]
        choices.append(set(permutations(vals)))
    out = set()
    for pick in product(*choices):
        v = list(exps)
        for b, vals in zip(blocks, pick):
            for i, c in zip(b, vals):
                v[i - 1] = c
        out.add(tuple(v))
    return out


class SymLaurent:
    """Finitely supported map Z^d -> Scalar, invariant under the Young subgroup of ``blocks``."""

    __slots__ = ("d", "blocks", "terms")

    def __init__(self, terms: Mapping[tuple[int, ...], Scalar], d: int,
                 blocks: Iterable[Iterable[int]] | None = None, check: bool = True):
        self.d = d
        self.blocks = tuple(tuple(sorted(b)) for b in (blocks if blocks is not None else [range(1, d + 1)]))
        self.terms = {tuple(k): v for k, v in terms.items() if v}
        if any(len(k) != d for k in self.terms):
            raise ValueError("exponent vectors must have length d")
        if check:
            self._check_invariant()

    def _check_invariant(self):
        for lam, c in self.terms.items():
            for mu in _orbit(lam, self.blocks):
                if self.terms.get(mu) != c:
                    raise NotInvariant(f"coefficient of x^{lam} differs from x^{mu}")

    @classmethod
    def monomial_symmetric(cls, mu: Sequence[int], blocks=None, coeff: Scalar | None = None) -> "SymLaurent":
        d = len(mu)
        blocks = tuple(tuple(b) for b in (blocks if blocks is not None else [range(1, d + 1)]))
        c = Scalar.one() if coeff is None else coeff
        return cls({lam: c for lam in _orbit(tuple(mu), blocks)}, d, blocks)

    @classmethod
    def constant(cls, c: Scalar, d: int, blocks=None) -> "SymLaurent":
        return cls({(0,) * d: c}, d, blocks)

    # -- algebra ------------------------------------------------------
    def _same(self, other: "SymLaurent"):
        if (self.d, self.blocks) != (other.d, other.blocks):
            raise ValueError("symmetric polynomials over different groups")

    def __add__(self, other: "SymLaurent") -> "SymLaurent":
        self._same(other)
        t = dict(self.terms)
        for k, v in other.terms.items():
            t[k] = t[k] + v if k in t else v
        return SymLaurent(t, self.d, self.blocks, check=False)

    def __neg__(self):
        return SymLaurent({k: -v for k, v in self.terms.items()}, self.d, self.blocks, check=False)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Scalar)):
            return SymLaurent({k: v * other for k, v in self.terms.items()}, self.d, self.blocks, check=False)
        self._same(other)
        t: dict = {}
        for a, ca in self.terms.items():
            for b, cb in other.terms.items():
                k = tuple(x + y for x, y in zip(a, b))
                t[k] = t[k] + ca * cb if k in t else ca * cb
        return SymLaurent(t, self.d, self.blocks, check=False)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, SymLaurent):
            return NotImplemented
        return (self.d, self.blocks) == (other.d, other.blocks) and self.terms == other.terms

    def __repr__(self):
        return f"SymLaurent({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for lam in sorted(self.terms, reverse=True):
            mono = "*".join(
                f"x{i + 1}" if e == 1 else f"x{i + 1}^{e}" for i, e in enumerate(lam) if e
            ) or "1"
            parts.append(f"({self.terms[lam]})*{mono}")
        return " + ".join(parts)

    # -- structure ----------------------------------------------------
    def orbit_representatives(self) -> dict[tuple[int, ...], Scalar]:
        """{mu: a_mu} with self = sum a_mu m_mu, mu sorted decreasingly inside each block."""
        out = {}
        for lam, c in self.terms.items():
            v = list(lam)
            for b in self.blocks:
                vals = sorted((lam[i - 1] for i in b), reverse=True)
                for i, x in zip(b, vals):
                    v[i - 1] = x
            out[tuple(v)] = c
        return out

    def base_change(self, r: int) -> "SymLaurent":
        """b_r: m_mu -> m_{r mu}."""
        if r < 1:
            raise ValueError("r must be positive")
        out = SymLaurent({}, self.d, self.blocks, check=False)
        for mu, a in self.orbit_representatives().items():
            out = out + SymLaurent.monomial_symmetric(tuple(r * c for c in mu), self.blocks, a)
        return out

    def eval(self, eta: Sequence[Scalar]) -> Scalar:
        """Substitute x_j -> eta_j; entries of eta must be units."""
        if len(eta) != self.d:
            raise ValueError("eta must have length d")
        eta = [e if isinstance(e, Scalar) else Scalar.const(e) for e in eta]
        if any(not e for e in eta):
            raise ZeroDivisionError("eta has a zero entry")
        m = max((e.m for e in eta), default=1)
        total = Scalar.zero(m)
        for lam, c in self.terms.items():
            term = c
            for e, k in zip(eta, lam):
                if k:
                    term = term * e ** k
            total = total + term
        return total

    def map_coefficients(self, f) -> "SymLaurent":
        return SymLaurent({k: f(v) for k, v in self.terms.items()}, self.d, self.blocks, check=False)
