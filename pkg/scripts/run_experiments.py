#!/usr/bin/env python3
"""Run the corpus experiments and print one summary row per matroid.

    python3 scripts/run_experiments.py                 # full corpus
    python3 scripts/run_experiments.py --n-random 5 --max-uniform-n 4
    python3 scripts/run_experiments.py --json results.json
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import logging
import sys
import time

from tropmat.bergman import bergman_fan, verify_lemma_bergman
from tropmat.corpus import CorpusConfig, corpus, random_matrices
from tropmat.fan import balancing_weight_space, fan_independence_complex, is_balanced
from tropmat.groebner import Ideal, algebraic_matroid, linear_ideal_from_matrix, parse_polynomial
from tropmat.matroid import find_isomorphism, from_matrix, is_matroid, uniform, vamos

log = logging.getLogger("experiments")


def fan_experiment(cfg: CorpusConfig, threads: int) -> list[dict]:
    rows = []
    for name, m in corpus(cfg):
        t0 = time.perf_counter()
        lemma = verify_lemma_bergman(m, threads=threads)
        f = bergman_fan(m).fan
        bal = is_balanced(f)
        ws = balancing_weight_space(f)
        rows.append(
            {
                "name": name,
                "n": m.n,
                "rank": m.rank,
                "cones": len(f.cones),
                "connected": m.is_connected(),
                "complex_equal": lemma.equal,
                "lemma_checks": lemma.ok,
                "balanced": bal.balanced,
                "weight_dim": ws.dim,
                "seconds": round(time.perf_counter() - t0, 3),
            }
        )
        log.info("%s done", name)
    return rows


def linear_experiment(cfg: CorpusConfig) -> list[dict]:
    rows = []
    for k, a in enumerate(random_matrices(cfg)):
        m = from_matrix(a)
        alg = algebraic_matroid(linear_ideal_from_matrix(a)).family
        fan = fan_independence_complex(bergman_fan(m).fan)
        ind = m.independence_complex()
        rows.append({"name": f"rand{k:02d}", "rank": m.rank, "ideal_eq_matroid": alg == ind, "fan_eq_matroid": fan == ind})
    return rows


def nonlinear_experiment() -> dict:
    gens = (parse_polynomial("x2 - x1^2", 3), parse_polynomial("x3 - x1^3", 3))
    fam = algebraic_matroid(Ideal(3, gens)).family
    return {"twisted_cubic_is_U13": fam == uniform(1, 3).independence_complex(), "is_matroid": is_matroid(fam)[0]}


def vamos_experiment() -> dict:
    v = vamos()
    perm = find_isomorphism(v, v.dual())
    return {
        "rank": v.rank,
        "bases": len(v.bases),
        "self_dual_perm": list(perm) if perm else None,
        "flats": len(v.flats()),
        "chains": len(v.maximal_flat_chains()),
    }


def print_table(rows: list[dict]) -> None:
    if not rows:
        return
    cols = list(rows[0])
    width = {c: max(len(c), *(len(str(r[c])) for r in rows)) for c in cols}
    print("  ".join(c.ljust(width[c]) for c in cols))
    for r in rows:
        print("  ".join(str(r[c]).ljust(width[c]) for c in cols))


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    defaults = CorpusConfig()
    p.add_argument("--seed", type=int, default=defaults.seed)
    p.add_argument("--n-random", type=int, default=defaults.n_random)
    p.add_argument("--max-uniform-n", type=int, default=defaults.max_uniform_n)
    p.add_argument("--no-vamos", action="store_true")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--json", metavar="PATH", help="also write all results as JSON")
    p.add_argument("-v", "--verbose", action="store_true")
    args = p.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")

    cfg = dataclasses.replace(
        defaults,
        seed=args.seed,
        n_random=args.n_random,
        max_uniform_n=args.max_uniform_n,
        include_vamos=not args.no_vamos,
    )
    fans = fan_experiment(cfg, args.threads)
    linear = linear_experiment(cfg)
    nonlinear = nonlinear_experiment()
    vam = vamos_experiment()

    print("== Bergman fans over the corpus")
    print_table(fans)
    print("\n== Linear ideals")
    print_table(linear)
    print("\n== Twisted cubic")
    print(nonlinear)
    print("\n== Vamos")
    print(vam)

    if args.json:
        with open(args.json, "w") as fh:
            json.dump({"config": dataclasses.asdict(cfg), "fans": fans, "linear": linear,
                       "nonlinear": nonlinear, "vamos": vam}, fh, indent=1)

    ok = (
        all(r["complex_equal"] and r["lemma_checks"] and r["balanced"] for r in fans)
        and all(r["weight_dim"] == 1 for r in fans if r["connected"])
        and all(r["ideal_eq_matroid"] and r["fan_eq_matroid"] for r in linear)
        and all(nonlinear.values())
        and vam["self_dual_perm"] is not None
    )
    print("\nall checks passed" if ok else "\nSOME CHECKS FAILED")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
