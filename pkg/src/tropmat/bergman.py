"""Bergman fans of matroids and the independence-complex comparisons."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from . import fan as fanmod
from . import groebner
from .fan import Cone, WeightedFan
from .matroid import FlatChain, IndependenceFamily, Matroid, family_difference_witness, format_subset


def indicator(s, n: int) -> tuple[int, ...]:
    return tuple(int(i in s) for i in range(1, n + 1))


@dataclass(frozen=True)
class BergmanFan:
    fan: WeightedFan
    matroid: Matroid
    chains: tuple[FlatChain, ...]


def _check_loop_free(m: Matroid):
    if not m.is_loop_free():
        raise ValueError(f"matroid has loops {format_subset(m.loops())}; use simplify() first")


def bergman_fan(m: Matroid) -> BergmanFan:
    """One cone per maximal chain of proper nonempty flats, plus Q(1,...,1)."""
    _check_loop_free(m)
    if m.rank < 1:
        raise ValueError("Bergman fan of a rank-0 matroid")
    chains = tuple(m.maximal_flat_chains())
    cones = tuple(Cone(tuple(indicator(f, m.n) for f in c.flats)) for c in chains)
    f = WeightedFan(
        m.n,
        ((1,) * m.n,),
        cones,
        (1,) * len(cones),
        tuple(c.label() for c in chains),
    )
    return BergmanFan(f, m, chains)


def chain_cone(chain, n: int) -> Cone:
    """Cone over the indicators of ``chain`` plus the all-ones line.

    Flats equal to the whole ground set are skipped: their indicator is the
    lineality direction already.
    """
    full = frozenset(range(1, n + 1))
    return Cone(tuple(indicator(f, n) for f in chain if f != full), ((1,) * n,))


def span_chain(m: Matroid, s) -> list[frozenset[int]]:
    """cl{s1} < cl{s1,s2} < ... for the elements of ``s`` in increasing order."""
    out, prefix = [], []
    for e in sorted(s):
        prefix.append(e)
        out.append(m.closure(prefix))
    return out


@dataclass
class LemmaReport:
    equal: bool
    fan_family: IndependenceFamily
    matroid_family: IndependenceFamily
    witness: frozenset[int] | None = None
    # independent S -> chain of spans whose cone projects onto Q^S
    chain_witnesses: dict = field(default_factory=dict)
    chain_witnesses_ok: bool = True
    # dependent S -> largest number of distinct nonempty traces F ∩ S (with S)
    # over maximal chains; bounded by |S| - 1
    trace_bounds: dict = field(default_factory=dict)
    trace_bounds_ok: bool = True

    @property
    def ok(self) -> bool:
        return self.equal and self.chain_witnesses_ok and self.trace_bounds_ok


def verify_lemma_bergman(m: Matroid, threads: int = 1) -> LemmaReport:
    """Compare the independence complexes of B(M) and M, and check both
    directions of the argument on every subset."""
    b = bergman_fan(m)
    fam_fan = fanmod.fan_independence_complex(b.fan, threads=threads)
    fam_m = m.independence_complex()
    rep = LemmaReport(fam_fan == fam_m, fam_fan, fam_m, family_difference_witness(fam_fan, fam_m))

    independent = set(fam_m.members())
    for s in independent:
        if not s:
            continue
        chain = span_chain(m, s)
        strict = all(a < b for a, b in zip(chain, chain[1:]))
        dim = fanmod.cone_dim(fanmod.project_cone(chain_cone(chain, m.n), s))
        rep.chain_witnesses[s] = tuple(chain)
        if not strict or dim != len(s):
            rep.chain_witnesses_ok = False

    for k in range(1, m.n + 1):
        for s in _subsets_of_size(m.n, k):
            if s in independent:
                continue
            best = 0
            for c in b.chains:
                traces = {f & s for f in c.flats} | {s}
                traces.discard(frozenset())
                best = max(best, len(traces))
            rep.trace_bounds[s] = best
            if best > len(s) - 1:
                rep.trace_bounds_ok = False
    return rep


def _subsets_of_size(n: int, k: int):
    for c in itertools.combinations(range(1, n + 1), k):
        yield frozenset(c)


@dataclass
class RealizabilityReport:
    match: bool
    conclusive: bool
    ideal_family: IndependenceFamily
    matroid_family: IndependenceFamily
    witness: frozenset[int] | None = None


def realizability_witness_check(
    m: Matroid, p: groebner.Ideal, budget: groebner.Budget | None = None
) -> RealizabilityReport:
    """Does the algebraic matroid of ``p`` equal ``m``?

    Only screens ``p`` for monomial generators; primality is assumed.
    """
    if p.n != m.n:
        raise ValueError(f"ideal in {p.n} variables, matroid on {m.n} elements")
    mono = p.monomial_generators()
    if mono:
        raise ValueError(f"ideal has monomial generator {mono[0]}")
    rep = groebner.algebraic_matroid(p, budget)
    fam_m = m.independence_complex()
    witness = family_difference_witness(rep.family, fam_m)
    return RealizabilityReport(witness is None, rep.conclusive, rep.family, fam_m, witness)


def ridge_count_from_chains(m: Matroid) -> int:
    """Number of distinct chains obtained by removing one flat from a maximal chain."""
    ridges = set()
    for c in m.maximal_flat_chains():
        for i in range(len(c.flats)):
            ridges.add(c.flats[:i] + c.flats[i + 1:])
    return len(ridges)
