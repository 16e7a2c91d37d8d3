"""
The admissible set of the Drinfeld coweight mu_0 = (1, 0, ..., 0) and its
combinatorics: critical indices, Levi-restricted pieces, the lattices L_w and
the stratification numerology.

Every w in Adm(mu_0) has the shape t_{e_m} (m_k ... m_1) with m = m_k > ... > m_1,
where the cycle sends m_i to m_{i-1} and m_1 to m_k.  Its critical set is
{m_1, ..., m_k}, and w -> S(w) is a bijection onto the non-empty subsets of
{1, ..., d}.

>>> len(adm_set(3))
7
>>> sorted(critical_indices(element_for_subset(3, {1, 3})))
[1, 3]
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from math import comb
from typing import Iterable, Sequence

from .scalar import Scalar
from .weyl import (
    AffineWeylGroup,
    ExtAffElem,
    act_on_vertex,
    cycle_perm,
    gl,
    perm_inverse,
    translation,
    unit_vector,
)

__all__ = [
    "CriticalSet",
    "LeviDatum",
    "CocharLattice",
    "NotAdmissible",
    "adm_set",
    "perm_set",
    "cycle_classification",
    "element_for_subset",
    "critical_indices",
    "codim",
    "bruhat_vs_S",
    "levi_adm",
    "levi_adm_M",
    "levi_kottwitz",
    "lattice_Lw",
    "strata_poset",
    "strata_dot",
    "nearby_cycle_numerology",
    "nonempty_subsets",
    "set_partitions",
]


class NotAdmissible(ValueError):
    pass


class CriticalSet(frozenset):
    """A non-empty subset of {1, ..., d}."""

    def __new__(cls, indices: Iterable[int], d: int | None = None):
        self = super().__new__(cls, indices)
        if not self:
            raise ValueError("a critical set is never empty")
        if d is not None and not all(1 <= i <= d for i in self):
            raise ValueError(f"indices {sorted(self)} outside 1..{d}")
        return self

    def __repr__(self):
        return "CriticalSet({" + ", ".join(map(str, sorted(self))) + "})"


@dataclass(frozen=True)
class LeviDatum:
    """An ordered partition of {1, ..., d} into blocks; blocks are kept sorted by minimum."""

    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        blocks = tuple(sorted((tuple(sorted(b)) for b in self.blocks if b), key=min))
        object.__setattr__(self, "blocks", blocks)
        flat = sorted(i for b in blocks for i in b)
        if flat != list(range(1, len(flat) + 1)):
            raise ValueError(f"{blocks} is not a partition of 1..{len(flat)}")

    @classmethod
    def of(cls, *blocks: Iterable[int]) -> "LeviDatum":
        return cls(tuple(tuple(b) for b in blocks))

    @property
    def d(self) -> int:
        return sum(len(b) for b in self.blocks)

    def group(self) -> AffineWeylGroup:
        return _levi_group(self.d, self.blocks)

    def block_of(self, j: int) -> tuple[int, ...]:
        for b in self.blocks:
            if j in b:
                return b
        raise ValueError(f"{j} not in 1..{self.d}")

    def dominant_vectors(self) -> list[tuple[int, ...]]:
        """The M-dominant elements of W mu_0, one per block: e_{min(block)}."""
        return [unit_vector(self.d, b[0]) for b in self.blocks]


@lru_cache(maxsize=None)
def _levi_group(d: int, blocks: tuple) -> AffineWeylGroup:
    return AffineWeylGroup(d, blocks)


@dataclass(frozen=True)
class CocharLattice:
    """Sublattice of Z^d spanned by ``basis``; ``elementary_divisors`` come from Smith form."""

    d: int
    basis: tuple[tuple[int, ...], ...]
    elementary_divisors: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.elementary_divisors)

    @property
    def saturated(self) -> bool:
        return all(abs(e) == 1 for e in self.elementary_divisors)

    def support(self) -> frozenset[int]:
        return frozenset(i + 1 for v in self.basis for i, c in enumerate(v) if c)


# -- enumeration --------------------------------------------------------------

def nonempty_subsets(d: int) -> list[frozenset[int]]:
    """Non-empty subsets of 1..d in binary-counter order."""
    return [
        frozenset(i + 1 for i in range(d) if mask >> i & 1) for mask in range(1, 2 ** d)
    ]


def set_partitions(items: Sequence[int]) -> list[tuple[tuple[int, ...], ...]]:
    """All set partitions, blocks sorted by minimum."""
    items = list(items)
    if not items:
        return [()]
    first, rest = items[0], items[1:]
    out = []
    for part in set_partitions(rest):
        out.append(((first,),) + part)
        for i in range(len(part)):
            merged = part[:i] + ((first,) + part[i],) + part[i + 1:]
            out.append(merged)
    return [tuple(sorted(p, key=min)) for p in out]


def element_for_subset(d: int, S: Iterable[int]) -> ExtAffElem:
    """t_{e_m} (m_k ... m_1) for S = {m_1 < ... < m_k}, m = m_k."""
    ms = sorted(S)
    if not ms or ms[0] < 1 or ms[-1] > d:
        raise ValueError(f"bad subset {S} of 1..{d}")
    return ExtAffElem(unit_vector(d, ms[-1]), cycle_perm(d, list(reversed(ms))))


@lru_cache(maxsize=None)
def adm_set(d: int) -> frozenset[ExtAffElem]:
    """Downward Bruhat closure of the translations t_{e_j}."""
    if d < 1:
        raise ValueError("d must be >= 1")
    G = gl(d)
    out: set[ExtAffElem] = set()
    for j in range(1, d + 1):
        out |= G.lower_interval(translation(unit_vector(d, j)))
    return frozenset(out)


@lru_cache(maxsize=None)
def perm_set(d: int) -> frozenset[ExtAffElem]:
    """Elements t_lambda wbar with lambda in W mu_0 satisfying the permissibility inequalities."""
    if d < 1:
        raise ValueError("d must be >= 1")
    out = set()
    for m in range(1, d + 1):
        lam = unit_vector(d, m)
        for p in permutations(range(1, d + 1)):
            pinv = perm_inverse(p)
            ok = all(
                (pinv[j - 1] >= j) if lam[j - 1] == 0 else (pinv[j - 1] <= j)
                for j in range(1, d + 1)
            )
            if ok:
                out.add(ExtAffElem(lam, tuple(p)))
    return frozenset(out)


@lru_cache(maxsize=None)
def cycle_classification(d: int) -> frozenset[ExtAffElem]:
    return frozenset(element_for_subset(d, S) for S in nonempty_subsets(d))


def _require_adm(w: ExtAffElem):
    if w not in adm_set(w.d):
        raise NotAdmissible(f"{w} is not in Adm(mu_0)")


# -- critical indices -------------------------------------------------------

def _S_bruhat(w: ExtAffElem) -> frozenset[int]:
    G = gl(w.d)
    return frozenset(j for j in range(1, w.d + 1) if G.bruhat_leq(w, translation(unit_vector(w.d, j))))


def _S_vertex(w: ExtAffElem) -> frozenset[int]:
    return frozenset(
        j for j in range(1, w.d + 1) if act_on_vertex(w, j) == act_on_vertex(translation((0,) * w.d), j - 1)
    )


def _S_cycle(w: ExtAffElem) -> frozenset[int]:
    m = w.lam.index(1) + 1
    return frozenset({m} | {i for i in range(1, w.d + 1) if w.perm[i - 1] != i})


@lru_cache(maxsize=None)
def critical_indices(w: ExtAffElem) -> CriticalSet:
    """S(w) = {j : w <= t_{e_j}}, cross-checked against two other descriptions."""
    _require_adm(w)
    a, b, c = _S_bruhat(w), _S_vertex(w), _S_cycle(w)
    if not a == b == c:
        raise AssertionError(f"critical sets disagree for {w}: {a}, {b}, {c}")
    return CriticalSet(a, w.d)


def codim(w: ExtAffElem) -> int:
    """l(t_{mu_0}) - l(w), asserted equal to |S(w)| - 1."""
    _require_adm(w)
    G = gl(w.d)
    c = G.length(translation(unit_vector(w.d, 1))) - G.length(w)
    if c != len(critical_indices(w)) - 1:
        raise AssertionError(f"codim {c} != |S|-1 for {w}")
    return c


def bruhat_vs_S(x: ExtAffElem, y: ExtAffElem) -> tuple[bool, bool]:
    """(y <= x, S(x) subset of S(y)); the two entries should always agree."""
    _require_adm(x)
    _require_adm(y)
    return gl(x.d).bruhat_leq(y, x), critical_indices(x) <= critical_indices(y)


# -- Levi pieces ---------------------------------------------------------------

def _normalize_nu(L: LeviDatum, nu: Sequence[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    nu = tuple(nu)
    if len(nu) != L.d or sorted(nu) != [0] * (L.d - 1) + [1]:
        raise ValueError(f"{nu} is not an element of W mu_0")
    block = L.block_of(nu.index(1) + 1)
    return unit_vector(L.d, block[0]), block


def levi_adm(L: LeviDatum, nu: Sequence[int]) -> frozenset[ExtAffElem]:
    """Adm^G(O_nu) computed from critical sets, checked against Adm^M(nu).

    Any e_j may be passed; it is replaced by the M-dominant member e_{min(block)}
    of its W_M-orbit, which has the same admissible set.
    """
    nu_dom, block = _normalize_nu(L, nu)
    from_G = frozenset(w for w in adm_set(L.d) if critical_indices(w) <= set(block))
    from_M = levi_adm_M(L, nu_dom)
    if from_G != from_M:
        raise AssertionError(f"Adm^G(O_nu) != Adm^M(nu) for {L}, {nu}")
    return from_G


def levi_adm_M(L: LeviDatum, nu: Sequence[int]) -> frozenset[ExtAffElem]:
    """Adm^M(nu) inside X_*(T) x| W_M with the M-antidominant base alcove."""
    M = L.group()
    out: set[ExtAffElem] = set()
    for lam in M.weyl_orbit(nu):
        out |= M.lower_interval(translation(lam))
    return frozenset(out)


def levi_kottwitz(L: LeviDatum, nu: Sequence[int]) -> dict[ExtAffElem, Scalar]:
    """k_{O_nu}, the restriction of k_{mu_0} to Adm^G(O_nu), checked against k^M_nu."""
    from .hecke import hecke_algebra, kottwitz_mu0_values

    nu_dom, _ = _normalize_nu(L, nu)
    support = levi_adm(L, nu)
    kG = kottwitz_mu0_values(L.d)
    restricted = {w: kG[w] for w in support}
    kM = hecke_algebra(L.d, L.blocks).k_mu(nu_dom)
    if dict(kM.c) != restricted:
        raise AssertionError(f"k_(O_nu) != k^M_nu for {L}, {nu}")
    return restricted


# -- lattices ------------------------------------------------------------------

def lattice_Lw(w: ExtAffElem) -> CocharLattice:
    """L_w = <w(nu) - nu>, w(nu) := e_m + wbar(nu), using nu in {0, e_1, ..., e_d}."""
    from sympy import Matrix, ZZ
    from sympy.matrices.normalforms import smith_normal_form

    _require_adm(w)
    d = w.d
    m = w.lam.index(1) + 1
    gens = []
    for nu in [(0,) * d] + [unit_vector(d, i) for i in range(1, d + 1)]:
        img = w.linear_act(nu)
        g = tuple(img[k] - nu[k] + (1 if k == m - 1 else 0) for k in range(d))
        if any(g) and g not in gens:
            gens.append(g)
    snf = smith_normal_form(Matrix(gens), domain=ZZ)
    divisors = tuple(int(snf[i, i]) for i in range(min(snf.shape)) if snf[i, i] != 0)
    lat = CocharLattice(d, tuple(gens), divisors)
    S = critical_indices(w)
    if lat.rank != len(S) or not lat.saturated or lat.support() != S:
        raise AssertionError(f"L_w differs from the span of e_j, j in S(w), for {w}")
    return lat


# -- strata --------------------------------------------------------------------

@dataclass(frozen=True)
class Stratum:
    S: CriticalSet
    w: ExtAffElem
    codim: int


def strata_poset(d: int) -> tuple[list[Stratum], list[tuple[frozenset, frozenset]]]:
    """Strata indexed by non-empty S, with covering pairs (S, S') meaning S' lies in the closure of S."""
    if d < 1:
        raise ValueError("d must be >= 1")
    strata = []
    for S in nonempty_subsets(d):
        w = element_for_subset(d, S)
        if critical_indices(w) != S:
            raise AssertionError("cycle formula and critical sets disagree")
        strata.append(Stratum(CriticalSet(S, d), w, codim(w)))
    covers = [
        (a.S, b.S) for a in strata for b in strata if a.S < b.S and len(b.S) == len(a.S) + 1
    ]
    return strata, covers


def strata_dot(d: int) -> str:
    strata, covers = strata_poset(d)

    def name(S):
        return "S_" + "_".join(map(str, sorted(S)))

    lines = [f"digraph strata_d{d} {{", "  rankdir=TB;"]
    for st in strata:
        label = "{" + ",".join(map(str, sorted(st.S))) + "}" + f"\\n{st.w}\\ncodim {st.codim}"
        lines.append(f'  {name(st.S)} [label="{label}"];')
    for a, b in covers:
        lines.append(f"  {name(a)} -> {name(b)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- nearby cycles -------------------------------------------------------------

def nearby_cycle_numerology(S: Iterable[int], i: int, q: Scalar | int | None = None,
                            d: int | None = None) -> tuple[int, Scalar]:
    """(rank of the degree-i stalk, alternating semisimple trace over all degrees).

    The trace is checked against the Kottwitz function value at w_S, computed in
    the Hecke algebra of GL_d (d defaults to max(S)).
    """
    S = CriticalSet(S)
    if i < 0:
        raise ValueError("degree must be non-negative")
    if isinstance(q, Scalar) and q.is_constant():
        q = q.to_fraction()
    if isinstance(q, Scalar) and q != Scalar.q():
        raise ValueError("q must be a number or the indeterminate q")
    symbolic = q is None or isinstance(q, Scalar)
    n = len(S) - 1
    rank = comb(n, i) if i <= n else 0
    qs = Scalar.q() if symbolic else Scalar.const(q)
    trace = Scalar.zero()
    for k in range(n + 1):
        trace = trace + Scalar.const((-1) ** k * comb(n, k)) * qs ** k
    if trace != (1 - qs) ** n:
        raise AssertionError("binomial expansion failed")
    from .hecke import kottwitz_mu0_values

    d = max(S) if d is None else d
    k = kottwitz_mu0_values(d)[element_for_subset(d, S)]
    if not symbolic:
        k = k.specialize_q(q)
    if k != trace:
        raise AssertionError(f"trace {trace} != k(w_S) = {k}")
    return rank, trace
