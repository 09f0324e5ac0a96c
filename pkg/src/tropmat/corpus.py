"""The test corpus of matroids and matrices used by the experiments."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .matroid import Matroid, complete_graph_edges, from_matrix, graphic_from_edges, uniform, vamos


@dataclass(frozen=True)
class CorpusConfig:
    seed: int = 20120915
    n_random: int = 20
    rows: int = 3
    cols: int = 6
    entry_bound: int = 3
    max_uniform_n: int = 6
    include_vamos: bool = True


def random_matrices(cfg: CorpusConfig = CorpusConfig()) -> list[list[list[int]]]:
    """Integer matrices with entries in [-bound, bound] and no zero column.

    Zero columns are resampled so that every vector matroid is loop-free.
    """
    rng = random.Random(cfg.seed)
    out = []
    for _ in range(cfg.n_random):
        cols = []
        while len(cols) < cfg.cols:
            c = [rng.randint(-cfg.entry_bound, cfg.entry_bound) for _ in range(cfg.rows)]
            if any(c):
                cols.append(c)
        out.append([[c[i] for c in cols] for i in range(cfg.rows)])
    return out


def uniform_corpus(max_n: int = 6) -> list[tuple[str, Matroid]]:
    """Loop-free uniform matroids U_{r,n}, 1 <= r <= n <= max_n."""
    return [(f"U_{r},{n}", uniform(r, n)) for n in range(1, max_n + 1) for r in range(1, n + 1)]


def corpus(cfg: CorpusConfig = CorpusConfig()) -> list[tuple[str, Matroid]]:
    items = uniform_corpus(cfg.max_uniform_n)
    items.append(("K4", graphic_from_edges(complete_graph_edges(4))))
    for i, a in enumerate(random_matrices(cfg)):
        items.append((f"rand{i:02d}", from_matrix(a)))
    if cfg.include_vamos:
        items.append(("vamos", vamos()))
    return items
