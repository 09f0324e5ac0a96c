"""Matroids on {1, ..., n} stored by their bases.

Subsets are exposed as ``frozenset`` of 1-indexed elements; internally they
are bitmasks (bit ``i - 1`` for element ``i``), which keeps the exhaustive
enumerations below cheap at desk scale (n up to about 12).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from . import linalg

Subset = frozenset


def to_mask(s: Iterable[int], n: int) -> int:
    m = 0
    for e in s:
        if not 1 <= e <= n:
            raise ValueError(f"element {e} outside ground set 1..{n}")
        m |= 1 << (e - 1)
    return m


def from_mask(m: int) -> frozenset[int]:
    out = []
    i = 1
    while m:
        if m & 1:
            out.append(i)
        m >>= 1
        i += 1
    return frozenset(out)


def popcount(m: int) -> int:
    return bin(m).count("1")


def subset_key(s: Iterable[int]) -> tuple:
    """Canonical order on subsets: by size, then lexicographically."""
    t = tuple(sorted(s))
    return (len(t), t)


def format_subset(s: Iterable[int]) -> str:
    return "{" + ",".join(str(e) for e in sorted(s)) + "}"


@dataclass(frozen=True)
class IndependenceFamily:
    """A downward-closed family of subsets, stored by its maximal members."""

    n: int
    maximal_members: frozenset[frozenset[int]]

    @classmethod
    def from_sets(cls, n: int, sets: Iterable[Iterable[int]]) -> "IndependenceFamily":
        masks = {to_mask(s, n) for s in sets}
        maximal = [m for m in masks if not any(o != m and o & m == m for o in masks)]
        return cls(n, frozenset(from_mask(m) for m in maximal))

    def __contains__(self, s) -> bool:
        s = frozenset(s)
        return any(s <= m for m in self.maximal_members)

    def members(self) -> list[frozenset[int]]:
        """Every member of the downward closure, in canonical order."""
        masks = set()
        for m in self.maximal_members:
            mm = to_mask(m, self.n)
            sub = mm
            while True:
                masks.add(sub)
                if sub == 0:
                    break
                sub = (sub - 1) & mm
        return sorted((from_mask(x) for x in masks), key=subset_key)

    def sorted_maximal(self) -> list[frozenset[int]]:
        return sorted(self.maximal_members, key=subset_key)

    def __str__(self) -> str:
        if not self.maximal_members:
            return "(empty family)"
        return " ".join(format_subset(s) for s in self.sorted_maximal())


def family_difference_witness(a: IndependenceFamily, b: IndependenceFamily) -> frozenset[int] | None:
    """Smallest subset (canonical order) lying in exactly one of the two families."""
    if a.maximal_members == b.maximal_members:
        return None
    diff = set(a.members()) ^ set(b.members())
    return min(diff, key=subset_key)


def is_matroid(fam: IndependenceFamily) -> tuple[bool, tuple[frozenset[int], frozenset[int]] | None]:
    """Check the independence axioms for the downward closure of ``fam``.

    Returns ``(True, None)`` or ``(False, (I, J))`` where ``|I| < |J|`` and
    no element of ``J - I`` extends ``I``. An empty family fails with no
    certificate. Checking pairs with ``|J| = |I| + 1`` suffices.
    """
    if not fam.maximal_members:
        return False, None
    members = fam.members()
    present = {to_mask(s, fam.n) for s in members}
    by_size: dict[int, list[int]] = {}
    for s in members:
        by_size.setdefault(len(s), []).append(to_mask(s, fam.n))
    for k in sorted(by_size):
        bigger = by_size.get(k + 1, [])
        for i in by_size[k]:
            for j in bigger:
                rest = j & ~i
                ok = False
                while rest:
                    low = rest & -rest
                    if i | low in present:
                        ok = True
                        break
                    rest ^= low
                if not ok:
                    return False, (from_mask(i), from_mask(j))
    return True, None


@dataclass(frozen=True)
class FlatChain:
    flats: tuple[frozenset[int], ...]

    def label(self) -> str:
        return "<".join(format_subset(f) for f in self.flats)


@dataclass(frozen=True)
class Matroid:
    n: int
    bases: frozenset[frozenset[int]] = field(repr=False)

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("negative ground set size")
        bases = frozenset(frozenset(b) for b in self.bases)
        if not bases:
            raise ValueError("a matroid needs at least one basis")
        sizes = {len(b) for b in bases}
        if len(sizes) != 1:
            raise ValueError(f"bases of different sizes {sorted(sizes)}")
        for b in bases:
            to_mask(b, self.n)
        object.__setattr__(self, "bases", bases)

    @classmethod
    def from_bases(cls, n: int, bases: Iterable[Iterable[int]]) -> "Matroid":
        return cls(n, frozenset(frozenset(b) for b in bases))

    def __repr__(self) -> str:
        return f"Matroid(n={self.n}, rank={self.rank}, bases={len(self.bases)})"

    @property
    def rank(self) -> int:
        return len(next(iter(self.bases)))

    @property
    def ground_set(self) -> frozenset[int]:
        return frozenset(range(1, self.n + 1))

    def sorted_bases(self) -> list[tuple[int, ...]]:
        return sorted(tuple(sorted(b)) for b in self.bases)

    @cached_property
    def _basis_masks(self) -> tuple[int, ...]:
        return tuple(to_mask(b, self.n) for b in self.bases)

    @cached_property
    def _rank_table(self) -> list[int]:
        # rank of every subset; r(S) = max |B ∩ S|
        table = [0] * (1 << self.n)
        for s in range(1 << self.n):
            table[s] = max(popcount(s & b) for b in self._basis_masks)
        return table

    def _rank_mask(self, s: int) -> int:
        if self.n <= 16:
            return self._rank_table[s]
        return max(popcount(s & b) for b in self._basis_masks)

    def rank_of(self, s: Iterable[int]) -> int:
        return self._rank_mask(to_mask(s, self.n))

    def is_independent(self, s: Iterable[int]) -> bool:
        s = frozenset(s)
        return self.rank_of(s) == len(s)

    def _closure_mask(self, s: int) -> int:
        r = self._rank_mask(s)
        out = s
        for i in range(self.n):
            bit = 1 << i
            if not s & bit and self._rank_mask(s | bit) == r:
                out |= bit
        return out

    def closure(self, s: Iterable[int]) -> frozenset[int]:
        return from_mask(self._closure_mask(to_mask(s, self.n)))

    @cached_property
    def _flat_masks(self) -> tuple[int, ...]:
        flats = {self._closure_mask(s) for s in range(1 << self.n)}
        return tuple(sorted(flats, key=lambda m: subset_key(from_mask(m))))

    def flats(self) -> list[frozenset[int]]:
        """All flats, ordered by size then lexicographically."""
        return [from_mask(m) for m in self._flat_masks]

    def flats_of_rank(self, k: int) -> list[frozenset[int]]:
        return [from_mask(m) for m in self._flat_masks if self._rank_mask(m) == k]

    def loops(self) -> frozenset[int]:
        return self.closure(())

    def coloops(self) -> frozenset[int]:
        return frozenset.intersection(*self.bases)

    def is_loop_free(self) -> bool:
        return not self.loops()

    def maximal_flat_chains(self) -> list[FlatChain]:
        """Chains F_1 < ... < F_{r-1} of proper nonempty flats, one per rank."""
        if not self.is_loop_free():
            raise ValueError(f"matroid has loops {format_subset(self.loops())}; simplify first")
        r = self.rank
        by_rank: dict[int, list[int]] = {}
        for m in self._flat_masks:
            by_rank.setdefault(self._rank_mask(m), []).append(m)
        chains: list[tuple[int, ...]] = [()]
        for k in range(1, r):
            chains = [c + (f,) for c in chains for f in by_rank.get(k, []) if not c or f & c[-1] == c[-1]]
        return [FlatChain(tuple(from_mask(f) for f in c)) for c in chains]

    def independence_complex(self) -> IndependenceFamily:
        return IndependenceFamily(self.n, self.bases)

    def dual(self) -> "Matroid":
        e = self.ground_set
        return Matroid(self.n, frozenset(e - b for b in self.bases))

    def _relabel_without(self, e: int, bases: Iterable[frozenset[int]]) -> "Matroid":
        def shift(b):
            return frozenset(x if x < e else x - 1 for x in b)

        return Matroid(self.n - 1, frozenset(shift(b) for b in bases))

    def deletion(self, e: int) -> "Matroid":
        """Delete ``e``; elements above ``e`` are relabelled down by one."""
        to_mask([e], self.n)
        if e in self.coloops():
            return self._relabel_without(e, (b - {e} for b in self.bases))
        return self._relabel_without(e, (b for b in self.bases if e not in b))

    def contraction(self, e: int) -> "Matroid":
        """Contract ``e``; elements above ``e`` are relabelled down by one."""
        to_mask([e], self.n)
        if e in self.loops():
            return self._relabel_without(e, self.bases)
        return self._relabel_without(e, (b - {e} for b in self.bases if e in b))

    def simplify(self) -> "Matroid":
        """Delete all loops (relabelling the remaining elements in order)."""
        m = self
        for e in sorted(self.loops(), reverse=True):
            m = m.deletion(e)
        return m

    def components(self) -> list[frozenset[int]]:
        """Connected components, found by joining elements along fundamental circuits."""
        parent = list(range(self.n + 1))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        basis_set = set(self._basis_masks)
        for b in self._basis_masks:
            for i in range(self.n):
                if not b >> i & 1:
                    continue
                for j in range(self.n):
                    if b >> j & 1:
                        continue
                    if (b & ~(1 << i)) | (1 << j) in basis_set:
                        parent[find(i + 1)] = find(j + 1)
        comps: dict[int, set[int]] = {}
        for e in range(1, self.n + 1):
            comps.setdefault(find(e), set()).add(e)
        return sorted((frozenset(c) for c in comps.values()), key=lambda c: min(c))

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def relabel(self, perm: Sequence[int]) -> "Matroid":
        """Image under ``i -> perm[i-1]``."""
        return Matroid(self.n, frozenset(frozenset(perm[x - 1] for x in b) for b in self.bases))


# --- constructors -----------------------------------------------------------


def uniform(r: int, n: int) -> Matroid:
    if not 0 <= r <= n:
        raise ValueError(f"need 0 <= r <= n, got r={r}, n={n}")
    return Matroid(n, frozenset(frozenset(c) for c in itertools.combinations(range(1, n + 1), r)))


def from_matrix(a) -> Matroid:
    """Vector matroid of the columns of ``a``."""
    rows = linalg.as_matrix(a)
    if not rows:
        raise ValueError("matrix has no rows")
    n = len(rows[0])
    cols = linalg.transpose(rows)
    r = linalg.rank(rows)
    bases = [
        frozenset(i + 1 for i in c)
        for c in itertools.combinations(range(n), r)
        if linalg.rank([cols[i] for i in c]) == r
    ]
    return Matroid(n, frozenset(bases))


VAMOS_NONBASES = ((1, 2, 3, 4), (1, 2, 5, 6), (3, 4, 5, 6), (1, 2, 7, 8), (3, 4, 7, 8))


def vamos() -> Matroid:
    """Rank-4 Vamos matroid with pairs (1,2),(3,4),(5,6),(7,8)."""
    bad = {frozenset(s) for s in VAMOS_NONBASES}
    return Matroid(
        8, frozenset(frozenset(c) for c in itertools.combinations(range(1, 9), 4) if frozenset(c) not in bad)
    )


def graphic_from_edges(edges: Sequence[tuple]) -> Matroid:
    """Cycle matroid; element i is the i-th edge, bases are spanning forests."""
    vertices = sorted({v for e in edges for v in e})
    index = {v: i for i, v in enumerate(vertices)}

    def is_forest(sel):
        parent = list(range(len(vertices)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for k in sel:
            u, v = (index[x] for x in edges[k])
            ru, rv = find(u), find(v)
            if ru == rv:
                return False
            parent[ru] = rv
        return True

    m = len(edges)
    for r in range(min(m, max(len(vertices) - 1, 0)), -1, -1):
        bases = [frozenset(k + 1 for k in c) for c in itertools.combinations(range(m), r) if is_forest(c)]
        if bases:
            return Matroid(m, frozenset(bases))
    raise AssertionError("unreachable: the empty set is always a forest")


def complete_graph_edges(k: int) -> list[tuple[int, int]]:
    return list(itertools.combinations(range(1, k + 1), 2))


def find_isomorphism(a: Matroid, b: Matroid) -> tuple[int, ...] | None:
    """Brute-force search for ``perm`` with ``a.relabel(perm) == b``."""
    if a.n != b.n or a.rank != b.rank or len(a.bases) != len(b.bases):
        return None
    target = set(b._basis_masks)
    src = a._basis_masks
    n = a.n
    for perm in itertools.permutations(range(1, n + 1)):
        ok = True
        for m in src:
            img = 0
            for i in range(n):
                if m >> i & 1:
                    img |= 1 << (perm[i] - 1)
            if img not in target:
                ok = False
                break
        if ok:
            return perm
    return None


# --- JSON file format -------------------------------------------------------


def matroid_to_json(m: Matroid) -> dict:
    return {"n": m.n, "bases": [list(b) for b in m.sorted_bases()]}


def matroid_from_json(obj: dict) -> Matroid:
    """Accepts ``{"n", "bases"}``, ``{"uniform": [r, n]}``, ``{"matrix": rows}``
    or ``{"builtin": "vamos"}``."""
    if not isinstance(obj, dict):
        raise ValueError("matroid file must hold a JSON object")
    if "bases" in obj:
        return Matroid.from_bases(int(obj["n"]), obj["bases"])
    if "uniform" in obj:
        r, n = obj["uniform"]
        return uniform(int(r), int(n))
    if "matrix" in obj:
        return from_matrix(obj["matrix"])
    if "builtin" in obj:
        return builtin(obj["builtin"])
    raise ValueError("unrecognised matroid description")


BUILTINS = {
    "vamos": vamos,
    "k4": lambda: graphic_from_edges(complete_graph_edges(4)),
}


def builtin(name: str) -> Matroid:
    try:
        return BUILTINS[name]()
    except KeyError:
        raise ValueError(f"unknown builtin matroid {name!r}; known: {sorted(BUILTINS)}") from None


def iter_subsets(n: int) -> Iterator[frozenset[int]]:
    """All subsets of {1..n} in canonical order."""
    for k in range(n + 1):
        for c in itertools.combinations(range(1, n + 1), k):
            yield frozenset(c)
