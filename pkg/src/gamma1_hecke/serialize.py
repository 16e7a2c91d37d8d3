"""
Record emitters and parsers for the command line.

Scalars are written as canonical strings in q (all v-exponents even) or v,
with cyclotomic parts as polynomials in z; the modulus m of Q(zeta_m) is
stored once per document.  Parsing goes through sympy.

>>> s = Scalar.q(2) - 2 * Scalar.q() + 1
>>> parse_scalar(str(s)) == s
True
"""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from typing import Any, Iterable, Sequence

import sympy
from sympy.parsing.sympy_parser import parse_expr

from .admissible import adm_set, codim, critical_indices
from .hecke import kottwitz_mu0_values
from .scalar import Scalar
from .weyl import ExtAffElem, length

__all__ = [
    "parse_scalar",
    "adm_records",
    "kottwitz_records",
    "testfn_records",
    "emit_json",
    "parse_json",
    "emit_csv",
    "COLUMNS",
]

_V, _Q, _Z = sympy.symbols("v q z")

COLUMNS = {
    "adm": ("lambda", "perm", "length", "S", "codim"),
    "kottwitz": ("lambda", "perm", "S", "k"),
    "testfn": ("t", "lambda", "perm", "value"),
}


def parse_scalar(text: str, m: int = 1) -> Scalar:
    """Inverse of str(Scalar) (any polynomial expression in v, q, z is accepted)."""
    expr = parse_expr(text.replace("^", "**"), local_dict={"v": _V, "q": _Q, "z": _Z}, evaluate=True)
    expr = sympy.expand(sympy.nsimplify(expr, rational=True))
    total = Scalar.zero(m)
    for term in sympy.Add.make_args(expr):
        coeff, rest = term.as_coeff_Mul()
        powers = rest.as_powers_dict() if rest != 1 else {}
        unknown = set(powers) - {_V, _Q, _Z}
        if unknown:
            raise ValueError(f"unexpected symbols {unknown} in {text!r}")
        e_v = int(powers.get(_V, 0)) + 2 * int(powers.get(_Q, 0))
        e_z = int(powers.get(_Z, 0))
        if e_z and m == 1:
            raise ValueError("z appears but the modulus is 1")
        c = Fraction(int(sympy.numer(coeff)), int(sympy.denom(coeff)))
        piece = Scalar.const(c, m) * Scalar.v(e_v, m)
        if e_z:
            piece = piece * Scalar.zeta(m, e_z)
        total = total + piece
    return total


def _elem_fields(w: ExtAffElem) -> dict:
    return {"lambda": list(w.lam), "perm": list(w.perm)}


def adm_records(d: int) -> list[dict]:
    out = []
    for w in sorted(adm_set(d)):
        rec = _elem_fields(w)
        rec.update(length=length(w), S=sorted(critical_indices(w)), codim=codim(w))
        out.append(rec)
    return out


def kottwitz_records(d: int, q: int | None = None) -> list[dict]:
    """(w, S(w), k_{mu_0}(w)); symbolic unless q is given."""
    k = kottwitz_mu0_values(d)
    out = []
    for w in sorted(k):
        val = k[w] if q is None else k[w].specialize_q(q)
        rec = _elem_fields(w)
        rec.update(S=sorted(critical_indices(w)), k=str(val))
        out.append(rec)
    return out


def testfn_records(f, full: bool = False) -> list[dict]:
    """(t, w, value) with w the Weyl coordinate of the point t w."""
    out = []
    for t, u, c in f.records(full=full):
        rec = {"t": list(t)}
        rec.update(_elem_fields(u))
        rec["value"] = str(c)
        out.append(rec)
    return out


def emit_json(kind: str, records: Sequence[dict], modulus: int = 1, meta: dict | None = None) -> str:
    doc = {"kind": kind, "modulus": modulus, "meta": meta or {}, "records": list(records)}
    return json.dumps(doc, indent=1, sort_keys=True) + "\n"


def parse_json(text: str) -> dict:
    """Parse an emitted document; scalar fields become `Scalar`s and elements `ExtAffElem`s."""
    doc = json.loads(text)
    m = doc.get("modulus", 1)
    recs = []
    for rec in doc["records"]:
        rec = dict(rec)
        if "lambda" in rec:
            rec["w"] = ExtAffElem.from_json({"lambda": rec["lambda"], "perm": rec["perm"]})
        for key in ("k", "value"):
            if key in rec:
                rec[key] = parse_scalar(rec[key], m)
        recs.append(rec)
    doc["records"] = recs
    return doc


def _cell(x: Any) -> str:
    if isinstance(x, (list, tuple)):
        return " ".join(map(str, x))
    return str(x)


def emit_csv(kind: str, records: Iterable[dict]) -> str:
    cols = COLUMNS[kind]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(cols)
    for rec in records:
        writer.writerow([_cell(rec[c]) for c in cols])
    return buf.getvalue()
