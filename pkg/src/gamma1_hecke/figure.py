"""
SVG picture of the admissible alcoves for GL_3.

Points of R^3 are drawn through x -> x_1 a_1 + x_2 a_2 + x_3 a_3 with a_i
unit vectors at 120 degrees, which kills the line R(1, 1, 1).  The seven
alcoves w.a, w in Adm(mu_0), are shaded; those in Adm(O_nu) are darker and
carry the value of k_{O_nu}.  Output is byte-for-byte deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import sqrt
from typing import Sequence

from .admissible import LeviDatum, adm_set, critical_indices, levi_kottwitz
from .weyl import ExtAffElem, act_on_vertex, tau, unit_vector

__all__ = ["AlcoveShape", "AlcovePicture", "build_picture", "render_figure1"]

_AXES = ((1.0, 0.0), (-0.5, sqrt(3) / 2), (-0.5, -sqrt(3) / 2))
SCALE = 120.0
SIZE = 600


def _project(x: Sequence[Fraction]) -> tuple[float, float]:
    X = sum(float(c) * a[0] for c, a in zip(x, _AXES))
    Y = sum(float(c) * a[1] for c, a in zip(x, _AXES))
    # SVG y grows downward
    return SIZE / 2 + SCALE * X, SIZE / 2 - SCALE * Y


@dataclass(frozen=True)
class AlcoveShape:
    w: ExtAffElem
    vertices: tuple[tuple[float, float], ...]
    fill: str  # "base", "dark" or "admissible"
    label: str


@dataclass(frozen=True)
class AlcovePicture:
    alcoves: tuple[AlcoveShape, ...]
    marked: tuple[tuple[float, float], ...]
    levi: LeviDatum
    nu: tuple[int, ...]

    def count(self, fill: str) -> int:
        return sum(1 for a in self.alcoves if a.fill == fill)


def build_picture(L: LeviDatum, nu: Sequence[int]) -> AlcovePicture:
    if L.d != 3:
        raise ValueError("the alcove picture is only drawn for d = 3")
    nu = tuple(nu)
    k = levi_kottwitz(L, nu)
    base = tau(3)
    shapes = []
    for w in sorted(adm_set(3)):
        verts = tuple(_project(act_on_vertex(w, i)) for i in range(3))
        if w in k:
            fill, label = "dark", str(k[w])
        elif w == base:
            fill, label = "base", "τ"
        else:
            fill, label = "admissible", "{" + ",".join(map(str, sorted(critical_indices(w)))) + "}"
        shapes.append(AlcoveShape(w, verts, fill, label))
    marked = tuple(_project([Fraction(c) for c in unit_vector(3, j)]) for j in (1, 2, 3))
    pic = AlcovePicture(tuple(shapes), marked, L, nu)
    if len(pic.alcoves) != 7:
        raise AssertionError("expected 7 admissible alcoves")
    return pic


def _fmt(x: float) -> str:
    return f"{x:.3f}"


def _grid_lines(extent: int = 3) -> list[tuple[tuple[float, float], tuple[float, float]]]:
    """Walls x_i - x_j = k, drawn as long segments (the viewBox clips them)."""
    lines = []
    for i, j, l in ((0, 1, 2), (0, 2, 1), (1, 2, 0)):
        for k in range(-extent, extent + 1):
            base = [Fraction(0)] * 3
            base[i], base[j] = Fraction(k, 2), Fraction(-k, 2)
            direction = [Fraction(0)] * 3
            direction[i] = direction[j] = Fraction(1)
            direction[l] = Fraction(-2)
            a = [b + 4 * c for b, c in zip(base, direction)]
            z = [b - 4 * c for b, c in zip(base, direction)]
            lines.append((_project(a), _project(z)))
    return lines


_FILLS = {"admissible": "#c8c8c8", "dark": "#707070", "base": "#c8c8c8"}


def render_figure1(L: LeviDatum, nu: Sequence[int]) -> str:
    pic = build_picture(L, nu)
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" '
        f'viewBox="0 0 {SIZE} {SIZE}">',
        f'<title>Adm(mu_0) for GL_3; blocks {list(map(list, L.blocks))}, nu = {list(pic.nu)}</title>',
        '<rect x="0" y="0" width="100%" height="100%" fill="white"/>',
    ]
    for fill in ("admissible", "base", "dark"):
        for a in pic.alcoves:
            if a.fill != fill:
                continue
            pts = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in a.vertices)
            out.append(f'<polygon class="{a.fill}" points="{pts}" fill="{_FILLS[a.fill]}" '
                       f'stroke="none"><title>{a.w}</title></polygon>')
    out.append('<g stroke="#404040" stroke-width="0.8">')
    for (x1, y1), (x2, y2) in _grid_lines():
        out.append(f'<line x1="{_fmt(x1)}" y1="{_fmt(y1)}" x2="{_fmt(x2)}" y2="{_fmt(y2)}"/>')
    out.append("</g>")
    out.append('<g font-family="serif" font-size="13" text-anchor="middle">')
    for a in pic.alcoves:
        cx = sum(x for x, _ in a.vertices) / 3
        cy = sum(y for _, y in a.vertices) / 3
        color = "white" if a.fill == "dark" else "black"
        out.append(f'<text x="{_fmt(cx)}" y="{_fmt(cy + 4)}" fill="{color}">{a.label}</text>')
    out.append("</g>")
    for x, y in pic.marked:
        out.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="5" fill="black"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
