"""Rational polyhedral cones and weighted fans.

Ridges are found combinatorially: every maximal cone must be simplicial
modulo its lineality space, so its codimension-one faces are obtained by
dropping one ray. Two cones share a ridge when the dropped-ray faces agree
as rational cones, which we test on a canonical key (reduced row echelon
form of the lineality plus primitive ray classes modulo the lineality).
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import linalg
from .matroid import IndependenceFamily, format_subset, subset_key

Vec = tuple[Fraction, ...]


@dataclass(frozen=True)
class Cone:
    """{sum l_i r_i + sum m_j v_j : l_i >= 0} for rays r and lineality v."""

    rays: tuple[Vec, ...]
    lineality: tuple[Vec, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "rays", tuple(linalg.as_vector(r) for r in self.rays))
        object.__setattr__(self, "lineality", tuple(linalg.as_vector(v) for v in self.lineality))
        dims = {len(v) for v in self.rays + self.lineality}
        if len(dims) > 1:
            raise ValueError("cone generators of different lengths")

    @property
    def ambient_dim(self) -> int | None:
        gens = self.rays + self.lineality
        return len(gens[0]) if gens else None

    @property
    def generators(self) -> list[Vec]:
        return list(self.rays) + list(self.lineality)


def cone_dim(c: Cone) -> int:
    return linalg.rank(c.generators)


def project_cone(c: Cone, s) -> Cone:
    """Restrict every generator of ``c`` to the coordinates in ``s`` (1-indexed)."""
    idx = sorted(s)
    n = c.ambient_dim
    if not idx:
        raise ValueError("projection onto the empty coordinate set")
    if n is not None and (idx[0] < 1 or idx[-1] > n):
        raise ValueError(f"coordinates {idx} out of range 1..{n}")
    pick = lambda v: tuple(v[i - 1] for i in idx)  # noqa: E731
    return Cone(tuple(pick(r) for r in c.rays), tuple(pick(v) for v in c.lineality))


@dataclass(frozen=True)
class WeightedFan:
    """Pure fan given by its maximal cones, all sharing ``lineality``.

    A cone may carry extra lineality generators of its own (useful for
    unions of fans with different lineality spaces).
    """

    n: int
    lineality: tuple[Vec, ...]
    cones: tuple[Cone, ...]
    weights: tuple[int, ...]
    labels: tuple[str, ...] = field(default=())

    def __post_init__(self):
        lin = tuple(linalg.as_vector(v) for v in self.lineality)
        object.__setattr__(self, "lineality", lin)
        if len(self.weights) != len(self.cones):
            raise ValueError("one weight per maximal cone required")
        if any(int(w) != w or w < 1 for w in self.weights):
            raise ValueError("weights must be positive integers")
        object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))
        if not self.labels:
            object.__setattr__(self, "labels", tuple(str(i) for i in range(len(self.cones))))
        if len(self.labels) != len(self.cones):
            raise ValueError("one label per maximal cone required")
        for v in lin:
            if len(v) != self.n:
                raise ValueError("lineality generator has wrong length")
        for c in self.cones:
            if c.ambient_dim not in (None, self.n):
                raise ValueError("cone generator has wrong length")
        dims = {cone_dim(self.cone(i)) for i in range(len(self.cones))}
        if len(dims) > 1:
            raise ValueError(f"fan is not pure: maximal cones of dimensions {sorted(dims)}")

    def cone(self, i: int) -> Cone:
        """Maximal cone ``i`` with the common lineality included."""
        c = self.cones[i]
        return Cone(c.rays, self.lineality + c.lineality)

    @property
    def dim(self) -> int | None:
        if not self.cones:
            return None
        return cone_dim(self.cone(0))

    def with_weights(self, weights: Sequence[int]) -> "WeightedFan":
        return WeightedFan(self.n, self.lineality, self.cones, tuple(weights), self.labels)


@dataclass(frozen=True)
class RidgeIncidence:
    ridge: Cone
    incident_facets: tuple[tuple[int, tuple[int, ...]], ...]
    label: str = ""


def _threads_map(fn, items, threads: int):
    if threads and threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            return list(ex.map(fn, items))
    return [fn(x) for x in items]


def fan_independence_complex(f: WeightedFan, threads: int = 1) -> IndependenceFamily:
    """Coordinate sets S onto which the projection of ``f`` is full-dimensional.

    Sets are tested by increasing size and only when every maximal proper
    subset already passed; dimension of a projection can only drop when
    coordinates are forgotten, so this pruning is exact.
    """
    n = f.n
    cones = [f.cone(i) for i in range(len(f.cones))]
    independent: set[frozenset[int]] = {frozenset()}
    if not cones:
        return IndependenceFamily(n, frozenset({frozenset()}))

    def full(s):
        return any(cone_dim(project_cone(c, s)) == len(s) for c in cones)

    layer = [frozenset()]
    for k in range(1, n + 1):
        cands = sorted(
            {s | {e} for s in layer for e in range(1, n + 1) if e not in s},
            key=subset_key,
        )
        cands = [s for s in cands if all(s - {e} in independent for e in s)]
        ok = _threads_map(full, cands, threads)
        layer = [s for s, good in zip(cands, ok) if good]
        if not layer:
            break
        independent.update(layer)
    return IndependenceFamily.from_sets(n, independent)


def _lineality_key(gens: Sequence[Vec]) -> tuple:
    return tuple(linalg.rref(gens)[0]) if gens else ()


def _ray_class(r: Vec, lin: Sequence[Vec]) -> tuple[int, ...]:
    """Primitive representative of ``r`` modulo span(lin), via orthogonal projection."""
    if lin:
        basis = linalg.rref(lin)[0]
        c = linalg._orthogonal_coords(r, basis)
        r = tuple(x - sum((ci * b[k] for ci, b in zip(c, basis)), Fraction(0)) for k, x in enumerate(r))
    return linalg.primitive_vector(r)


def ridge_incidences(f: WeightedFan) -> list[RidgeIncidence]:
    """All ridges of ``f`` with the primitive generators pointing into each facet."""
    found: dict[tuple, list] = {}
    order: list[tuple] = []
    lin_cache: dict[tuple, tuple] = {}
    class_cache: dict[tuple, tuple[int, ...]] = {}
    for i in range(len(f.cones)):
        c = f.cone(i)
        lin = list(c.lineality)
        if c.lineality not in lin_cache:
            lin_cache[c.lineality] = (_lineality_key(lin), linalg.rank(lin))
        lkey, lin_rank = lin_cache[c.lineality]
        if linalg.rank(c.generators) != len(c.rays) + lin_rank:
            raise ValueError(f"cone {f.labels[i]!r} is not simplicial modulo its lineality")
        classes = []
        for r in c.rays:
            if (lkey, r) not in class_cache:
                class_cache[lkey, r] = _ray_class(r, lin)
            classes.append(class_cache[lkey, r])
        for j, r in enumerate(c.rays):
            rest = [c.rays[k] for k in range(len(c.rays)) if k != j]
            key = (lkey, frozenset(classes[k] for k in range(len(c.rays)) if k != j))
            if key not in found:
                found[key] = [Cone(tuple(rest), tuple(lin)), []]
                order.append(key)
            ridge_gens = rest + lin
            u = linalg.quotient_primitive_generator([r] + ridge_gens, ridge_gens)
            found[key][1].append((i, u, j))
    out = []
    for key in order:
        ridge, inc = found[key]
        label = ",".join(format_vector(r) for r in ridge.rays) or "lineality"
        out.append(RidgeIncidence(ridge, tuple((i, u) for i, u, _ in inc), label))
    return out


def format_vector(v) -> str:
    return "(" + ",".join(linalg.format_rational(x) for x in v) + ")"


@dataclass
class BalanceReport:
    balanced: bool
    ridge: RidgeIncidence | None = None
    residual: tuple[Fraction, ...] | None = None


def _perp_rows(gens: Sequence[Vec], n: int) -> list[tuple[int, ...]]:
    """Integer rows spanning the orthogonal complement of span(gens)."""
    if not gens or linalg.rank(gens) == 0:
        return [tuple(int(i == j) for j in range(n)) for i in range(n)]
    return [linalg.primitive_vector(v) for v in linalg.kernel_basis(gens, n)]


def is_balanced(f: WeightedFan, ridges: list[RidgeIncidence] | None = None) -> BalanceReport:
    """Check the balancing condition along every ridge.

    On failure the report names the first violating ridge and the residual:
    the component of the weighted sum orthogonal to span(ridge).
    """
    if ridges is None:
        ridges = ridge_incidences(f)
    for inc in ridges:
        total = [Fraction(0)] * f.n
        for i, u in inc.incident_facets:
            for k in range(f.n):
                total[k] += f.weights[i] * u[k]
        gens = inc.ridge.generators
        if not linalg.in_span(total, gens):
            basis = linalg.rref(gens)[0] if gens and linalg.rank(gens) else []
            if basis:
                c = linalg._orthogonal_coords(total, basis)
                resid = tuple(
                    x - sum((ci * b[k] for ci, b in zip(c, basis)), Fraction(0)) for k, x in enumerate(total)
                )
            else:
                resid = tuple(total)
            return BalanceReport(False, inc, resid)
    return BalanceReport(True)


@dataclass
class WeightSpace:
    dim: int
    basis: list[tuple[int, ...]]

    def has_positive_vector(self) -> bool:
        return self.dim == 1 and all(x > 0 for x in self.basis[0])


def balancing_weight_space(f: WeightedFan, ridges: list[RidgeIncidence] | None = None) -> WeightSpace:
    """Rational space of weight vectors (one entry per maximal cone, any sign)
    satisfying every ridge's balancing equations.

    Each ridge contributes the equations ``A (sum w_i u_i) = 0`` where the
    rows of ``A`` span span(ridge)^perp; these are row-reduced locally
    before the global sparse elimination. Basis vectors are returned as
    primitive integer vectors with positive first nonzero entry.
    """
    if ridges is None:
        ridges = ridge_incidences(f)
    m = len(f.cones)
    rows: list[dict[int, Fraction]] = []
    for inc in ridges:
        perp = _perp_rows(inc.ridge.generators, f.n)
        facets = [i for i, _ in inc.incident_facets]
        local = [[linalg.dot(a, u) for _, u in inc.incident_facets] for a in perp]
        for row in linalg.rref(local)[0]:
            d: dict[int, Fraction] = {}
            for i, x in zip(facets, row):
                if x:
                    d[i] = d.get(i, Fraction(0)) + x
            d = {k: v for k, v in d.items() if v}
            if d:
                rows.append(d)
    basis = sparse_kernel(rows, m)
    basis = [linalg.normalize_sign(linalg.primitive_vector(v)) for v in basis]
    return WeightSpace(len(basis), basis)


def sparse_kernel(rows: list[dict[int, Fraction]], ncols: int) -> list[tuple[Fraction, ...]]:
    """Kernel basis of a sparse rational system (dict rows), one vector per free column."""
    pivot_rows: dict[int, dict[int, Fraction]] = {}
    for row in rows:
        r = dict(row)
        # pivot rows are fully reduced, so one pass clears every pivot column
        for p in [c for c in r if c in pivot_rows]:
            f = r.pop(p)
            for c, v in pivot_rows[p].items():
                if c == p:
                    continue
                nv = r.get(c, Fraction(0)) - f * v
                if nv:
                    r[c] = nv
                else:
                    r.pop(c, None)
        if not r:
            continue
        p = min(r)
        inv = 1 / r[p]
        r = {c: v * inv for c, v in r.items()}
        # keep the pivot rows fully reduced against the new pivot
        for q, prow in pivot_rows.items():
            f = prow.get(p)
            if f:
                for c, v in r.items():
                    nv = prow.get(c, Fraction(0)) - f * v
                    if nv:
                        prow[c] = nv
                    else:
                        prow.pop(c, None)
        pivot_rows[p] = r
    free = [c for c in range(ncols) if c not in pivot_rows]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for p, prow in pivot_rows.items():
            v[p] = -prow.get(fc, Fraction(0))
        basis.append(tuple(v))
    return basis


# --- JSON file format -------------------------------------------------------


def _vec_json(v) -> list[str]:
    return [linalg.format_rational(x) for x in v]


def fan_to_json(f: WeightedFan) -> dict:
    cones = []
    for c, w, lab in zip(f.cones, f.weights, f.labels):
        entry = {"rays": [_vec_json(r) for r in c.rays], "weight": w, "label": lab}
        if c.lineality:
            entry["lineality"] = [_vec_json(v) for v in c.lineality]
        cones.append(entry)
    return {"n": f.n, "lineality": [_vec_json(v) for v in f.lineality], "cones": cones}


def fan_from_json(obj: dict) -> WeightedFan:
    if not isinstance(obj, dict) or "n" not in obj or "cones" not in obj:
        raise ValueError("fan file must be a JSON object with 'n' and 'cones'")
    n = int(obj["n"])
    lin = tuple(linalg.as_vector(v) for v in obj.get("lineality", []))
    cones, weights, labels = [], [], []
    for i, c in enumerate(obj["cones"]):
        rays = tuple(linalg.as_vector(r) for r in c.get("rays", []))
        extra = tuple(linalg.as_vector(v) for v in c.get("lineality", []))
        cones.append(Cone(rays, extra))
        weights.append(int(c.get("weight", 1)))
        labels.append(str(c.get("label", i)))
    return WeightedFan(n, lin, tuple(cones), tuple(weights), tuple(labels))


def tropical_line(weights=(1, 1, 1)) -> WeightedFan:
    """Standard tropical line in Q^3: rays e_1, e_2, e_3 modulo (1,1,1)."""
    e = [tuple(int(i == j) for j in range(3)) for i in range(3)]
    return WeightedFan(3, ((1, 1, 1),), tuple(Cone((v,)) for v in e), tuple(weights), ("e1", "e2", "e3"))


def embed_fans(parts: Sequence[WeightedFan]) -> WeightedFan:
    """Union of fans placed in complementary coordinate blocks.

    Each part keeps its own lineality (carried per cone); the result is the
    union, not the product.
    """
    n = sum(p.n for p in parts)
    cones, weights, labels = [], [], []
    offset = 0
    for k, p in enumerate(parts):
        pad = lambda v: (0,) * offset + tuple(v) + (0,) * (n - offset - p.n)  # noqa: E731,B023
        for i in range(len(p.cones)):
            c = p.cone(i)
            cones.append(Cone(tuple(pad(r) for r in c.rays), tuple(pad(v) for v in c.lineality)))
            weights.append(p.weights[i])
            labels.append(f"{k}:{p.labels[i]}")
        offset += p.n
    return WeightedFan(n, (), tuple(cones), tuple(weights), tuple(labels))


def whole_space(n: int) -> WeightedFan:
    e = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    return WeightedFan(n, e, (Cone(()),), (1,))


def describe_family(fam: IndependenceFamily) -> str:
    return " ".join(format_subset(s) for s in fam.sorted_maximal()) or "{}"


__all__ = [
    "Cone",
    "WeightedFan",
    "RidgeIncidence",
    "cone_dim",
    "project_cone",
    "fan_independence_complex",
    "ridge_incidences",
    "is_balanced",
    "balancing_weight_space",
    "fan_to_json",
    "fan_from_json",
    "tropical_line",
    "embed_fans",
    "whole_space",
]
