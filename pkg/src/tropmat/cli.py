"""Command-line interface.

Exit codes: 0 success/equal, 1 unequal (or unbalanced / not a matroid),
2 parse error, 3 precondition violation, 4 inconclusive Groebner budget.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import bergman as bg
from . import fan as fanmod
from . import groebner as gb
from .matroid import (
    IndependenceFamily,
    Matroid,
    builtin,
    family_difference_witness,
    format_subset,
    is_matroid,
    matroid_from_json,
    matroid_to_json,
)

EXIT_OK, EXIT_UNEQUAL, EXIT_PARSE, EXIT_PRECONDITION, EXIT_INCONCLUSIVE = 0, 1, 2, 3, 4


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as e:
        raise CliError(f"cannot read {path}: {e}", EXIT_PARSE) from None


def load_matroid(path: str) -> Matroid:
    text = _read_text(path)
    try:
        return matroid_from_json(json.loads(text))
    except (ValueError, KeyError, TypeError) as e:
        raise CliError(f"{path}: invalid matroid file: {e}", EXIT_PARSE) from None


def load_fan(path: str) -> fanmod.WeightedFan:
    try:
        return fanmod.fan_from_json(json.loads(_read_text(path)))
    except (ValueError, KeyError, TypeError) as e:
        raise CliError(f"{path}: invalid fan file: {e}", EXIT_PARSE) from None


def load_ideal(path: str) -> gb.Ideal:
    try:
        ideal, warnings = gb.parse_ideal(_read_text(path))
    except ValueError as e:
        raise CliError(f"{path}: invalid ideal file: {e}", EXIT_PARSE) from None
    for w in warnings:
        print(f"warning: {w}", file=sys.stderr)
    return ideal


def _budget(args) -> gb.Budget:
    return gb.Budget(max_pairs=args.max_pairs, max_degree=args.max_deg)


def _family_json(fam: IndependenceFamily) -> list[list[int]]:
    return [sorted(s) for s in fam.sorted_maximal()]


def _emit(args, text: str, payload: dict):
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def _write(path: str | None, obj) -> None:
    data = json.dumps(obj, indent=1) + "\n"
    if path:
        Path(path).write_text(data)


# --- verbs -------------------------------------------------------------------


def cmd_matroid_info(args) -> int:
    m = load_matroid(args.file)
    info = {
        "n": m.n,
        "rank": m.rank,
        "bases": len(m.bases),
        "flats": len(m.flats()),
        "loops": len(m.loops()),
        "coloops": len(m.coloops()),
    }
    _emit(args, " ".join(f"{k}={v}" for k, v in info.items()), info)
    return EXIT_OK


def cmd_matroid_check(args) -> int:
    m = load_matroid(args.file)
    ok, cert = is_matroid(m.independence_complex())
    payload = {"matroid": ok, "certificate": [sorted(s) for s in cert] if cert else None}
    text = "matroid" if ok else f"not a matroid: cannot augment {format_subset(cert[0])} from {format_subset(cert[1])}"
    _emit(args, text, payload)
    return EXIT_OK if ok else EXIT_UNEQUAL


def cmd_matroid_builtin(args) -> int:
    try:
        m = builtin(args.name)
    except ValueError as e:
        raise CliError(str(e), EXIT_PRECONDITION) from None
    obj = matroid_to_json(m)
    if args.output:
        _write(args.output, obj)
        _emit(args, f"wrote {args.output}", {"output": args.output})
    else:
        print(json.dumps(obj))
    return EXIT_OK


def cmd_bergman(args) -> int:
    m = load_matroid(args.file)
    if not m.is_loop_free():
        if not args.simplify:
            raise CliError(f"matroid has loops {format_subset(m.loops())}; pass --simplify", EXIT_PRECONDITION)
        m = m.simplify()
    if m.rank < 1:
        raise CliError("Bergman fan of a rank-0 matroid is undefined", EXIT_PRECONDITION)
    b = bg.bergman_fan(m)
    _write(args.output, fanmod.fan_to_json(b.fan))
    _emit(args, f"cones={len(b.fan.cones)} dim={b.fan.dim}", {"cones": len(b.fan.cones), "dim": b.fan.dim})
    return EXIT_OK


def cmd_fan_indep(args) -> int:
    f = load_fan(args.file)
    fam = fanmod.fan_independence_complex(f, threads=args.threads)
    ok, _ = is_matroid(fam)
    _emit(args, fanmod.describe_family(fam), {"maximal": _family_json(fam), "is_matroid": ok})
    return EXIT_OK


def cmd_fan_balance(args) -> int:
    f = load_fan(args.file)
    try:
        ridges = fanmod.ridge_incidences(f)
    except ValueError as e:
        raise CliError(str(e), EXIT_PRECONDITION) from None
    rep = fanmod.is_balanced(f, ridges)
    ws = fanmod.balancing_weight_space(f, ridges)
    basis = [list(v) for v in ws.basis]
    if rep.balanced:
        head = "balanced"
    else:
        head = f"unbalanced at ridge {rep.ridge.label}; residual {fanmod.format_vector(rep.residual)}"
    lines = [f"{head}; weight space dim {ws.dim}"]
    lines += ["basis " + fanmod.format_vector(v) for v in ws.basis]
    payload = {
        "balanced": rep.balanced,
        "ridges": len(ridges),
        "weight_space_dim": ws.dim,
        "basis": basis,
    }
    if not rep.balanced:
        payload["ridge"] = rep.ridge.label
        payload["residual"] = [str(x) for x in rep.residual]
    _emit(args, "\n".join(lines), payload)
    return EXIT_OK if rep.balanced else EXIT_UNEQUAL


def _algebraic_matroid(ideal: gb.Ideal, args) -> gb.AlgebraicMatroidReport:
    try:
        rep = gb.algebraic_matroid(ideal, _budget(args))
    except gb.GroebnerBudgetExceeded as e:
        raise CliError(f"inconclusive: {e}", EXIT_INCONCLUSIVE) from None
    except ValueError as e:
        raise CliError(str(e), EXIT_PRECONDITION) from None
    if not rep.conclusive:
        unknown = " ".join(format_subset(s) for s in rep.unknown)
        raise CliError(f"inconclusive: budget exceeded on {unknown}", EXIT_INCONCLUSIVE)
    return rep


def cmd_ideal_matroid(args) -> int:
    ideal = load_ideal(args.file)
    rep = _algebraic_matroid(ideal, args)
    ok, cert = is_matroid(rep.family)
    if not ok:
        print(
            f"warning: family fails the exchange axiom at {format_subset(cert[0])}, {format_subset(cert[1])}"
            " (is the ideal prime?)",
            file=sys.stderr,
        )
    fam = rep.family
    rank = max(len(s) for s in fam.maximal_members)
    obj = {"n": fam.n, "bases": [sorted(s) for s in fam.sorted_maximal()]}
    if args.output:
        _write(args.output, obj)
    text = f"n={fam.n} rank={rank} bases={len(fam.maximal_members)} loops={len(rep.loops)}\n{fanmod.describe_family(fam)}"
    _emit(args, text, {**obj, "rank": rank, "loops": sorted(rep.loops), "is_matroid": ok})
    return EXIT_OK


def _looks_like_fan(text: str) -> bool:
    try:
        obj = json.loads(text)
    except ValueError:
        return False
    return isinstance(obj, dict) and "cones" in obj


def cmd_compare(args) -> int:
    m = load_matroid(args.matroid)
    other = _read_text(args.other)
    if _looks_like_fan(other):
        f = load_fan(args.other)
        if f.n != m.n:
            raise CliError(f"fan in Q^{f.n}, matroid on {m.n} elements", EXIT_PRECONDITION)
        fam = fanmod.fan_independence_complex(f, threads=args.threads)
        kind = "fan"
    else:
        ideal = load_ideal(args.other)
        if ideal.n != m.n:
            raise CliError(f"ideal in {ideal.n} variables, matroid on {m.n} elements", EXIT_PRECONDITION)
        fam = _algebraic_matroid(ideal, args).family
        kind = "ideal"
    w = family_difference_witness(fam, m.independence_complex())
    text = "equal" if w is None else f"unequal; witness {format_subset(w)}"
    _emit(args, text, {"equal": w is None, "kind": kind, "witness": sorted(w) if w is not None else None})
    return EXIT_OK if w is None else EXIT_UNEQUAL


# --- parser ------------------------------------------------------------------


def _default_threads() -> int:
    try:
        return max(1, int(os.environ.get("TROPMAT_THREADS", "1")))
    except ValueError:
        return 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--threads", type=int, default=_default_threads(), help="worker threads (default $TROPMAT_THREADS or 1)")
    budget = argparse.ArgumentParser(add_help=False)
    budget.add_argument("--max-pairs", type=int, default=10_000)
    budget.add_argument("--max-deg", type=int, default=40)

    p = argparse.ArgumentParser(prog="tropmat", description="Bergman fans, independence complexes and algebraic matroids")
    sub = p.add_subparsers(dest="verb", required=True)

    mat = sub.add_parser("matroid", help="matroid files").add_subparsers(dest="action", required=True)
    s = mat.add_parser("info", parents=[common])
    s.add_argument("file")
    s.set_defaults(func=cmd_matroid_info)
    s = mat.add_parser("check", parents=[common])
    s.add_argument("file")
    s.set_defaults(func=cmd_matroid_check)
    s = mat.add_parser("builtin", parents=[common])
    s.add_argument("name")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_matroid_builtin)

    s = sub.add_parser("bergman", parents=[common], help="write the Bergman fan of a matroid")
    s.add_argument("file")
    s.add_argument("-o", "--output", required=True)
    s.add_argument("--simplify", action="store_true", help="delete loops first")
    s.set_defaults(func=cmd_bergman)

    fan = sub.add_parser("fan", help="fan files").add_subparsers(dest="action", required=True)
    s = fan.add_parser("indep", parents=[common])
    s.add_argument("file")
    s.set_defaults(func=cmd_fan_indep)
    s = fan.add_parser("balance", parents=[common])
    s.add_argument("file")
    s.set_defaults(func=cmd_fan_balance)

    ideal = sub.add_parser("ideal", help="ideal files").add_subparsers(dest="action", required=True)
    s = ideal.add_parser("matroid", parents=[common, budget])
    s.add_argument("file")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_ideal_matroid)

    s = sub.add_parser("compare", parents=[common, budget], help="compare a matroid with a fan or an ideal")
    s.add_argument("matroid")
    s.add_argument("other")
    s.set_defaults(func=cmd_compare)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.code


if __name__ == "__main__":
    sys.exit(main())
