"""
Command-line front end.

Exit codes: 0 on success, 1 when a verification fails, 2 on usage errors.
Environment: GAMMA1_HECKE_OUTDIR prefixes relative --output paths and
GAMMA1_HECKE_SEED sets the default seed.

CSV column order:
  adm       lambda, perm, length, S, codim
  kottwitz  lambda, perm, S, k
  testfn    t, lambda, perm, value
Vectors are space-separated inside a cell.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from sympy import isprime

__all__ = ["RunConfig", "main", "main_exit", "build_parser"]

ADM_LIMIT = 8
HECKE_LIMIT = 4


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    d: int
    p: int = 3
    r: int = 1
    chi: tuple[int, ...] | None = None
    fmt: str = "json"
    output: Path | None = None
    suite: str = "all"
    seed: int = 0

    def __post_init__(self):
        if self.d < 1:
            raise UsageError("d must be at least 1")
        if self.r < 1:
            raise UsageError("r must be at least 1")
        if not isprime(self.p):
            raise UsageError(f"p = {self.p} is not prime")
        if self.chi is not None and len(self.chi) != self.d:
            raise UsageError(f"chi has {len(self.chi)} entries, expected d = {self.d}")


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _blocks(text: str) -> tuple[tuple[int, ...], ...]:
    try:
        return tuple(tuple(int(x) for x in b.split(",")) for b in text.split("|"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected blocks like '1|2,3', got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="gamma1-hecke", description=__doc__,
                                 formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = ap.add_subparsers(dest="cmd", required=True)

    def common(p, fmt=("json", "csv")):
        p.add_argument("--d", type=int, required=True, help="rank")
        p.add_argument("--output", "-o", type=Path, help="write to this file instead of stdout")
        if fmt:
            p.add_argument("--format", dest="fmt", choices=fmt, default=fmt[0])
        p.add_argument("--override", action="store_true", help="lift the size guardrails")

    p = sub.add_parser("adm", help="the admissible set with lengths and critical sets")
    common(p)

    p = sub.add_parser("strata", help="closure poset of the strata")
    common(p, fmt=None)
    p.add_argument("--dot", action="store_true", help="emit DOT (default: JSON)")

    p = sub.add_parser("kottwitz", help="table of k_mu0(w)")
    common(p)
    p.add_argument("--q", type=int, help="specialize q to this integer")
    p.add_argument("--symbolic", action="store_true", help="keep v (the default unless --q is given)")

    p = sub.add_parser("testfn", help="values of phi_(r,chi), or of phi_(r,1) without --chi")
    common(p)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--r", type=int, default=1)
    p.add_argument("--chi", type=_int_list)
    p.add_argument("--full", action="store_true", help="list every t in T(k_r), not just N_r(t)")

    p = sub.add_parser("verify", help="run invariant suites")
    p.add_argument("--suite", choices=("all", "adm", "hecke", "testfn", "spectral"), default="all")
    p.add_argument("--d", type=int, default=3)
    p.add_argument("--p", type=int, default=3)
    p.add_argument("--r", type=int, default=1)
    p.add_argument("--seed", type=int, default=int(os.environ.get("GAMMA1_HECKE_SEED", "0")))
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--override", action="store_true")

    p = sub.add_parser("lfactor", help="semi-simple local L-factor in u = p^-s")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--chi", type=_int_list, required=True)
    p.add_argument("--eta", required=True, help="comma-separated scalars, e.g. 2,1/3,-z")
    p.add_argument("--precision", type=int, default=6)
    p.add_argument("--output", "-o", type=Path)

    p = sub.add_parser("alcove-svg", help="picture of Adm(mu_0) for d = 3")
    p.add_argument("--d", type=int, default=3)
    p.add_argument("--blocks", type=_blocks, default=((1,), (2, 3)), help="e.g. '1|2,3'")
    p.add_argument("--nu", type=_int_list, default=(0, 1, 0))
    p.add_argument("--output", "-o", type=Path)
    return ap


def _write(text: str, output: Path | None):
    if output is None:
        sys.stdout.write(text)
        return
    outdir = os.environ.get("GAMMA1_HECKE_OUTDIR")
    if outdir and not output.is_absolute():
        output = Path(outdir) / output
    output.parent.mkdir(parents=True, exist_ok=True)
    output.write_text(text, encoding="utf-8")


def _cmd_adm(a) -> int:
    from .serialize import adm_records, emit_csv, emit_json

    RunConfig(a.d)
    if a.d > ADM_LIMIT and not a.override:
        raise UsageError(f"d > {ADM_LIMIT} refused without --override")
    recs = adm_records(a.d)
    _write(emit_json("adm", recs, meta={"d": a.d}) if a.fmt == "json" else emit_csv("adm", recs), a.output)
    return 0


def _cmd_strata(a) -> int:
    import json

    from .admissible import strata_dot, strata_poset

    RunConfig(a.d)
    if a.d > ADM_LIMIT and not a.override:
        raise UsageError(f"d > {ADM_LIMIT} refused without --override")
    if a.dot:
        _write(strata_dot(a.d), a.output)
        return 0
    strata, covers = strata_poset(a.d)
    doc = {
        "d": a.d,
        "strata": [{"S": sorted(s.S), "w": s.w.to_json(), "codim": s.codim} for s in strata],
        "covers": [[sorted(x), sorted(y)] for x, y in covers],
    }
    _write(json.dumps(doc, indent=1, sort_keys=True) + "\n", a.output)
    return 0


def _cmd_kottwitz(a) -> int:
    from .serialize import emit_csv, emit_json, kottwitz_records

    RunConfig(a.d)
    if a.d > HECKE_LIMIT and not a.override:
        raise UsageError(f"symbolic Hecke products are limited to d <= {HECKE_LIMIT}; use --override")
    q = None if a.symbolic else a.q
    recs = kottwitz_records(a.d, q)
    meta = {"d": a.d, "q": q}
    _write(emit_json("kottwitz", recs, meta=meta) if a.fmt == "json" else emit_csv("kottwitz", recs), a.output)
    return 0


def _cmd_testfn(a) -> int:
    from .depthzero import DepthZeroChar
    from .serialize import emit_csv, emit_json, testfn_records
    from .testfcn import PHI_ONE_LIMIT, phi_chi, phi_one_explicit, phi_one_sum

    cfg = RunConfig(a.d, a.p, a.r, a.chi)
    if cfg.chi is None:
        if (cfg.p - 1) ** cfg.d > PHI_ONE_LIMIT and not a.override:
            raise UsageError("(p-1)^d exceeds the phi_one_sum guardrail; use --override")
        f = phi_one_sum(cfg.p, cfg.r, cfg.d, override=a.override)
        if f != phi_one_explicit(cfg.p, cfg.r, cfg.d):
            print("phi_(r,1): character sum and closed formula disagree", file=sys.stderr)
            return 1
        name = "phi_(r,1)"
    else:
        f = phi_chi(cfg.p, cfg.r, DepthZeroChar(cfg.p, cfg.chi))
        name = "phi_(r,chi)"
    if a.full and (cfg.p ** cfg.r - 1) ** cfg.d > 10 ** 5 and not a.override:
        raise UsageError("--full output would exceed 10^5 torus elements per w; use --override")
    recs = testfn_records(f, full=a.full)
    meta = {"d": cfg.d, "p": cfg.p, "r": cfg.r, "q": cfg.p ** cfg.r, "function": name,
            "chi": list(cfg.chi) if cfg.chi else None, "measure": f.measure,
            "t": "discrete logs" + ("" if a.full else " mod p-1 (values depend only on N_r(t))")}
    text = emit_json("testfn", recs, modulus=cfg.p - 1, meta=meta) if a.fmt == "json" else emit_csv("testfn", recs)
    _write(text, a.output)
    return 0


def _cmd_verify(a) -> int:
    from .verify import run_suite

    RunConfig(a.d, a.p, a.r, seed=a.seed)
    if a.d > HECKE_LIMIT and a.suite in ("all", "hecke", "testfn", "spectral") and not a.override:
        raise UsageError(f"suite {a.suite} needs d <= {HECKE_LIMIT}; use --override")
    results = run_suite(a.suite, a.d, a.p, a.r, a.seed, a.trials)
    for res in results:
        print(res.line())
    failed = [r for r in results if not r.ok]
    print(f"{len(results) - len(failed)}/{len(results)} checks passed")
    return 1 if failed else 0


def _poly_str(coeffs, var: str = "u") -> str:
    parts = []
    for k, c in enumerate(coeffs):
        if not c:
            continue
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        parts.append(f"({c})" + (f"*{mono}" if mono else ""))
    return " + ".join(parts) or "0"


def _cmd_lfactor(a) -> int:
    from .depthzero import DepthZeroChar
    from .serialize import parse_scalar
    from .testfcn import LanglandsParamData, lss_factor

    cfg = RunConfig(a.d, a.p, 1, a.chi)
    try:
        eta = tuple(parse_scalar(x, cfg.p - 1) for x in a.eta.split(","))
    except (ValueError, SyntaxError, TypeError) as exc:
        raise UsageError(f"cannot parse --eta: {exc}")
    if len(eta) != cfg.d:
        raise UsageError(f"eta has {len(eta)} entries, expected {cfg.d}")
    try:
        L = lss_factor(LanglandsParamData(DepthZeroChar(cfg.p, cfg.chi), eta, cfg.p, 1), a.precision)
    except ZeroDivisionError as exc:
        raise UsageError(f"eta entries must be units: {exc}")
    lines = [
        "numerator: 1",
        f"denominator: {_poly_str(L.denominator)}",
        f"series to order {a.precision}: {_poly_str(L.series)}",
    ]
    _write("\n".join(lines) + "\n", a.output)
    return 0


def _cmd_alcove_svg(a) -> int:
    from .admissible import LeviDatum
    from .figure import render_figure1

    if a.d != 3:
        raise UsageError("alcove pictures exist only for d = 3")
    try:
        svg = render_figure1(LeviDatum(a.blocks), a.nu)
    except ValueError as exc:
        raise UsageError(str(exc))
    _write(svg, a.output)
    return 0


COMMANDS = {
    "adm": _cmd_adm,
    "strata": _cmd_strata,
    "kottwitz": _cmd_kottwitz,
    "testfn": _cmd_testfn,
    "verify": _cmd_verify,
    "lfactor": _cmd_lfactor,
    "alcove-svg": _cmd_alcove_svg,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse already printed usage to stderr
        return int(exc.code or 0)
    try:
        return COMMANDS[args.cmd](args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main_exit() -> None:
    sys.exit(main())


if __name__ == "__main__":  # pragma: no cover
    main_exit()
