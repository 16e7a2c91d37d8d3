"""
Extended affine Weyl groups of GL_d and of its standard Levi subgroups.

An element t_lambda * wbar of X_*(T) x| S_d is stored as a pair of tuples.
The permutation is in one-line notation and 1-indexed: ``perm[i-1] = wbar(i)``.
It acts on R^d by x -> lambda + wbar(x), where wbar(e_i) = e_{wbar(i)}.

Everything geometric is measured against the base alcove

    a = { x : x_1 < x_2 < ... < x_d,  x_d - x_1 < 1 },

which sits in the antidominant chamber and has the origin in its closure.
Lengths count separating affine root hyperplanes, so they never depend on a
hand-written Coxeter presentation.

>>> G = gl(3)
>>> G.length(tau(3))
0
>>> G.length(translation((0, 0, 1)))
2
>>> G.reduced_word(translation((0, 0, 1)))
([0, 1], ExtAffElem(lam=(0, 0, 1), perm=(3, 1, 2)))
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

__all__ = [
    "ExtAffElem",
    "AffineWeylGroup",
    "OmegaDecomp",
    "gl",
    "identity",
    "translation",
    "permutation",
    "tau",
    "multiply",
    "length",
    "omega_decompose",
    "bruhat_leq",
    "reduced_word",
    "act_on_vertex",
    "base_alcove_vertices",
    "perm_inverse",
    "perm_compose",
    "cycle_perm",
]


# -- permutations ---------------------------------------------------------

def perm_compose(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    """(a*b)(i) = a(b(i))."""
    return tuple(a[b[i] - 1] for i in range(len(b)))


def perm_inverse(a: Sequence[int]) -> tuple[int, ...]:
    out = [0] * len(a)
    for i, ai in enumerate(a, start=1):
        out[ai - 1] = i
    return tuple(out)


def perm_apply(a: Sequence[int], x: Sequence) -> tuple:
    """wbar(x), with (wbar x)_{wbar(i)} = x_i."""
    out = [None] * len(x)
    for i, ai in enumerate(a):
        out[ai - 1] = x[i]
    return tuple(out)


def cycle_perm(d: int, cycle: Sequence[int]) -> tuple[int, ...]:
    """One-line form of the cycle c_1 -> c_2 -> ... -> c_k -> c_1."""
    out = list(range(1, d + 1))
    k = len(cycle)
    for i, c in enumerate(cycle):
        out[c - 1] = cycle[(i + 1) % k]
    return tuple(out)


# -- elements -------------------------------------------------------------

@dataclass(frozen=True, order=True)
class ExtAffElem:
    """The element t_lam * perm of X_*(T) x| S_d."""

    lam: tuple[int, ...]
    perm: tuple[int, ...]

    def __post_init__(self):
        if len(self.lam) != len(self.perm):
            raise ValueError("lambda and perm must have the same length")
        if sorted(self.perm) != list(range(1, len(self.perm) + 1)):
            raise ValueError(f"{self.perm} is not a permutation")

    @property
    def d(self) -> int:
        return len(self.lam)

    def __mul__(self, other: "ExtAffElem") -> "ExtAffElem":
        if not isinstance(other, ExtAffElem):
            return NotImplemented
        if other.d != self.d:
            raise ValueError(f"rank mismatch: {self.d} vs {other.d}")
        moved = perm_apply(self.perm, other.lam)
        return ExtAffElem(
            tuple(a + b for a, b in zip(self.lam, moved)),
            perm_compose(self.perm, other.perm),
        )

    def inverse(self) -> "ExtAffElem":
        pinv = perm_inverse(self.perm)
        return ExtAffElem(tuple(-c for c in perm_apply(pinv, self.lam)), pinv)

    def act(self, x: Sequence) -> tuple:
        """Affine action x -> lam + perm(x)."""
        return tuple(a + b for a, b in zip(self.lam, perm_apply(self.perm, x)))

    def linear_act(self, x: Sequence) -> tuple:
        return perm_apply(self.perm, x)

    @property
    def is_translation(self) -> bool:
        return self.perm == tuple(range(1, self.d + 1))

    def to_json(self) -> dict:
        return {"lambda": list(self.lam), "perm": list(self.perm)}

    @classmethod
    def from_json(cls, obj: dict) -> "ExtAffElem":
        return cls(tuple(int(c) for c in obj["lambda"]), tuple(int(c) for c in obj["perm"]))

    def __str__(self):
        lam = ",".join(map(str, self.lam))
        perm = "".join(map(str, self.perm)) if self.d < 10 else ",".join(map(str, self.perm))
        return f"t({lam})[{perm}]"


def identity(d: int) -> ExtAffElem:
    return ExtAffElem((0,) * d, tuple(range(1, d + 1)))


def translation(lam: Sequence[int]) -> ExtAffElem:
    return ExtAffElem(tuple(lam), tuple(range(1, len(lam) + 1)))


def permutation(perm: Sequence[int]) -> ExtAffElem:
    return ExtAffElem((0,) * len(perm), tuple(perm))


def unit_vector(d: int, j: int, c: int = 1) -> tuple[int, ...]:
    return tuple(c if i == j else 0 for i in range(1, d + 1))


def tau(d: int) -> ExtAffElem:
    """t_{e_d} times the cycle d -> d-1 -> ... -> 1 -> d; it rotates the vertices of a.

    >>> tau(2)
    ExtAffElem(lam=(0, 1), perm=(2, 1))
    """
    if d < 1:
        raise ValueError("d must be >= 1")
    t = ExtAffElem(unit_vector(d, d), cycle_perm(d, list(range(d, 0, -1))))
    for i in range(1, d + 1):
        if t.act(_omega_bar(d, i)) != _omega_bar(d, i - 1):
            raise AssertionError("tau does not rotate the base alcove vertices")
    return t


def _omega_bar(d: int, i: int) -> tuple[int, ...]:
    return tuple(-1 if j <= i else 0 for j in range(1, d + 1))


def base_alcove_vertices(d: int) -> list[tuple[int, ...]]:
    """The vertices omega_bar_0, ..., omega_bar_{d-1} of the base alcove."""
    return [_omega_bar(d, i) for i in range(d)]


def act_on_vertex(w: ExtAffElem, i: int) -> tuple[Fraction, ...]:
    """lam + wbar(omega_bar_i); ``i = d`` is allowed and means -(1, ..., 1).

    >>> act_on_vertex(translation((0, 1)), 1)
    (Fraction(-1, 1), Fraction(1, 1))
    """
    if not 0 <= i <= w.d:
        raise ValueError(f"vertex type must lie in 0..{w.d}")
    return tuple(Fraction(c) for c in w.act(_omega_bar(w.d, i)))


# -- the group ------------------------------------------------------------

@dataclass(frozen=True)
class OmegaDecomp:
    word: tuple[int, ...]
    omega: ExtAffElem


class AffineWeylGroup:
    """X_*(T) x| W_M for the standard Levi M with the given blocks.

    With a single block this is the extended affine Weyl group of GL_d.
    The simple reflections of each block B = (b_1 < ... < b_k) are the
    transpositions (b_i b_{i+1}) together with the affine reflection
    t_{e_{b_k} - e_{b_1}} (b_1 b_k).  For G itself they are numbered so that
    index 0 is the affine wall and index i is (i i+1).
    """

    def __init__(self, d: int, blocks: Iterable[Iterable[int]] | None = None):
        if d < 1:
            raise ValueError("d must be >= 1")
        if blocks is None:
            blocks = [range(1, d + 1)]
        blocks = [tuple(sorted(b)) for b in blocks]
        blocks = tuple(sorted((b for b in blocks if b), key=min))
        flat = sorted(i for b in blocks for i in b)
        if flat != list(range(1, d + 1)):
            raise ValueError(f"blocks {blocks} do not partition 1..{d}")
        self.d = d
        self.blocks = blocks
        self._block_of = {i: bi for bi, b in enumerate(blocks) for i in b}
        self.roots = [
            (i, j) for i in range(1, d + 1) for j in range(i + 1, d + 1)
            if self._block_of[i] == self._block_of[j]
        ]
        self.simple: list[ExtAffElem] = []
        # (i, j, k): the wall of s is {x_i - x_j = k}, and a lies where x_i - x_j < k
        self.walls: list[tuple[int, int, int]] = []
        for b in blocks:
            if len(b) < 2:
                continue
            k = len(b)
            affine = ExtAffElem(
                tuple(1 if c == b[-1] else -1 if c == b[0] else 0 for c in range(1, d + 1)),
                cycle_perm(d, [b[0], b[-1]]),
            )
            self.simple.append(affine)
            self.walls.append((b[-1], b[0], 1))
            for i in range(k - 1):
                self.simple.append(permutation(cycle_perm(d, [b[i], b[i + 1]])))
                self.walls.append((b[i], b[i + 1], 0))
        self.omega_generators = [
            ExtAffElem(unit_vector(d, b[-1]), cycle_perm(d, list(reversed(b))))
            for b in blocks
        ]
        self.length = lru_cache(maxsize=None)(self._length)
        self._decomp = lru_cache(maxsize=None)(self._decompose)
        self._leq = lru_cache(maxsize=None)(self._bruhat_leq)
        if len(blocks) == 1:
            self._self_test()

    # -- membership and basic data ------------------------------------
    def __repr__(self):
        return f"AffineWeylGroup(d={self.d}, blocks={self.blocks})"

    def __eq__(self, other):
        return isinstance(other, AffineWeylGroup) and (self.d, self.blocks) == (other.d, other.blocks)

    def __hash__(self):
        return hash((self.d, self.blocks))

    def contains(self, w: ExtAffElem) -> bool:
        return w.d == self.d and all(
            self._block_of[i] == self._block_of[w.perm[i - 1]] for i in range(1, self.d + 1)
        )

    def _check(self, w: ExtAffElem):
        if not self.contains(w):
            raise ValueError(f"{w} is not in {self}")

    @property
    def identity(self) -> ExtAffElem:
        return identity(self.d)

    @property
    def finite_weyl_group(self) -> list[tuple[int, ...]]:
        """All permutations preserving every block."""
        from itertools import permutations, product

        choices = [list(permutations(b)) for b in self.blocks]
        out = []
        for pick in product(*choices):
            p = [0] * self.d
            for b, img in zip(self.blocks, pick):
                for src, dst in zip(b, img):
                    p[src - 1] = dst
            out.append(tuple(p))
        return sorted(out)

    def rho2_pairing(self, lam: Sequence[int]) -> int:
        """<2 rho_M, lam>, the sum of lam_i - lam_j over positive roots i < j of M."""
        return sum(lam[i - 1] - lam[j - 1] for i, j in self.roots)

    def is_dominant(self, lam: Sequence[int]) -> bool:
        return all(lam[i - 1] >= lam[j - 1] for i, j in self.roots)

    def weyl_orbit(self, lam: Sequence[int]) -> list[tuple[int, ...]]:
        return sorted({perm_apply(p, lam) for p in self.finite_weyl_group})

    # -- length --------------------------------------------------------
    def _length(self, w: ExtAffElem) -> int:
        self._check(w)
        d = self.d
        pinv = perm_inverse(w.perm)
        total = 0
        for i, j in self.roots:
            # d * alpha(w b) where b is the barycenter of a, b_k = -(d-k)/d
            num = d * (w.lam[i - 1] - w.lam[j - 1]) + pinv[i - 1] - pinv[j - 1]
            total += abs(num // d + 1)
        return total

    # -- decomposition -------------------------------------------------
    def _decompose(self, w: ExtAffElem) -> OmegaDecomp:
        self._check(w)
        word = []
        rest = w
        n = self.length(rest)
        while n:
            for idx, s in enumerate(self.simple):
                cand = s * rest
                if self.length(cand) < n:
                    word.append(idx)
                    rest = cand
                    n -= 1
                    break
            else:  # pragma: no cover - impossible for a Coxeter system
                raise AssertionError(f"no descent found for {rest}")
        return OmegaDecomp(tuple(word), rest)

    def omega_decompose(self, w: ExtAffElem) -> OmegaDecomp:
        """w = s_{i_1} ... s_{i_k} * omega with k = length(w) and omega in Omega."""
        return self._decomp(w)

    def reduced_word(self, w: ExtAffElem) -> tuple[list[int], ExtAffElem]:
        dec = self._decomp(w)
        return list(dec.word), dec.omega

    def omega_part(self, w: ExtAffElem) -> ExtAffElem:
        return self._decomp(w).omega

    def compose_word(self, word: Iterable[int], omega: ExtAffElem | None = None) -> ExtAffElem:
        out = self.identity
        for i in word:
            out = out * self.simple[i]
        return out * omega if omega is not None else out

    def left_descent(self, w: ExtAffElem) -> int | None:
        n = self.length(w)
        for idx, s in enumerate(self.simple):
            if self.length(s * w) < n:
                return idx
        return None

    # -- Bruhat order --------------------------------------------------
    def _bruhat_leq(self, x: ExtAffElem, y: ExtAffElem) -> bool:
        ly = self.length(y)
        lx = self.length(x)
        if lx > ly:
            return False
        if ly == 0:
            return x == y
        s = self.simple[self.left_descent(y)]
        sx = s * x
        if self.length(sx) < lx:
            return self._leq(sx, s * y)
        return self._leq(x, s * y)

    def bruhat_leq(self, x: ExtAffElem, y: ExtAffElem) -> bool:
        """Bruhat order; elements with different Omega-parts are incomparable."""
        self._check(x)
        self._check(y)
        return self._leq(x, y)

    def lower_interval(self, y: ExtAffElem) -> frozenset[ExtAffElem]:
        """{x : x <= y}, by the subword property of one reduced word."""
        word, omega = self.reduced_word(y)
        out = {omega}
        for i in reversed(word):
            s = self.simple[i]
            out |= {s * x for x in out}
        return frozenset(out)

    def subword_leq(self, x: ExtAffElem, y: ExtAffElem) -> bool:
        """Oracle: search all 2^l subwords of a fixed reduced word of y."""
        word, omega = self.reduced_word(y)
        k = len(word)
        for r in range(k + 1):
            for keep in combinations(range(k), r):
                if self.compose_word([word[i] for i in keep], omega) == x:
                    return True
        return False

    # -- enumeration ---------------------------------------------------
    def elements_up_to_length(self, L: int, omega_radius: int = 1) -> set[ExtAffElem]:
        """All w = (word of length <= L) * omega with omega a product of at most
        ``omega_radius`` generators of Omega or their inverses."""
        omegas = {self.identity}
        gens = self.omega_generators + [g.inverse() for g in self.omega_generators]
        frontier = set(omegas)
        for _ in range(omega_radius):
            frontier = {g * o for o in frontier for g in gens}
            omegas |= frontier
        layer = set(omegas)
        seen = set(layer)
        for _ in range(L):
            layer = {s * w for w in layer for s in self.simple} - seen
            seen |= layer
        return {w for w in seen if self.length(w) <= L}

    # -- alcove walks --------------------------------------------------
    def wall_linear_part(self, idx: int) -> tuple[int, int]:
        i, j, _ = self.walls[idx]
        return i, j

    def _self_test(self):
        d = self.d
        t = tau(d)
        if d == 1:
            return
        prod = t
        for i in range(1, d):
            prod = prod * self.simple[i]
        if prod != translation(unit_vector(d, d)):
            raise AssertionError("t_{e_d} != tau s_1 ... s_{d-1}: simple reflections mislabelled")
        if self.length(prod) != d - 1:
            raise AssertionError("tau s_1 ... s_{d-1} is not reduced")


@lru_cache(maxsize=None)
def gl(d: int) -> AffineWeylGroup:
    """The (cached) extended affine Weyl group of GL_d."""
    return AffineWeylGroup(d)


# -- module-level conveniences for GL_d -----------------------------------

def multiply(a: ExtAffElem, b: ExtAffElem) -> ExtAffElem:
    return a * b


def length(w: ExtAffElem) -> int:
    return gl(w.d).length(w)


def omega_decompose(w: ExtAffElem) -> OmegaDecomp:
    return gl(w.d).omega_decompose(w)


def reduced_word(w: ExtAffElem) -> tuple[list[int], ExtAffElem]:
    return gl(w.d).reduced_word(w)


def bruhat_leq(x: ExtAffElem, y: ExtAffElem) -> bool:
    if x.d != y.d:
        raise ValueError("rank mismatch")
    return gl(x.d).bruhat_leq(x, y)
