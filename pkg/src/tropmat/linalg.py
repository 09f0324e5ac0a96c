"""Exact rational and integer linear algebra.

Vectors are tuples of :class:`fractions.Fraction` (or ints), matrices are
sequences of row vectors. Nothing here touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache, reduce
from math import gcd, lcm
from typing import Iterable, Sequence

Vector = tuple
Matrix = Sequence[Sequence]


def to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass an int, Fraction or 'p/q' string")
    return Fraction(x)


def as_vector(v: Iterable) -> tuple[Fraction, ...]:
    return tuple(to_fraction(x) for x in v)


def as_matrix(rows: Iterable[Iterable]) -> list[tuple[Fraction, ...]]:
    m = [as_vector(r) for r in rows]
    if m and any(len(r) != len(m[0]) for r in m):
        raise ValueError("ragged matrix")
    return m


def format_rational(x) -> str:
    return str(to_fraction(x))


def transpose(rows: Matrix) -> list[tuple]:
    return [tuple(col) for col in zip(*rows)]


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def mat_vec(m: Matrix, v: Sequence) -> tuple:
    return tuple(dot(row, v) for row in m)


def _integer_rows(rows: Matrix) -> list[list[int]]:
    """Scale each row by the lcm of its denominators; row spaces are unchanged."""
    out = []
    for row in rows:
        if all(type(x) is int for x in row):
            out.append(list(row))
            continue
        fr = [to_fraction(x) for x in row]
        d = reduce(lcm, (x.denominator for x in fr), 1)
        out.append([int(x * d) for x in fr])
    return out


def rref(rows: Matrix) -> tuple[list[tuple[Fraction, ...]], list[int]]:
    """Reduced row echelon form over Q.

    Pivot selection takes the smallest-magnitude nonzero candidate in the
    column (ties broken by row index), so the output is fully determined by
    the input. Returns the nonzero rows and the pivot column indices.
    """
    m = _integer_rows(as_matrix(rows))
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        cand = [i for i in range(r, len(m)) if m[i][c] != 0]
        if not cand:
            continue
        p = min(cand, key=lambda i: (abs(m[i][c]), i))
        m[r], m[p] = m[p], m[r]
        prow = m[r]
        a = prow[c]
        for i in range(len(m)):
            b = m[i][c]
            if i != r and b:
                row = [a * x - b * y for x, y in zip(m[i], prow)]
                g = reduce(gcd, row, 0)
                m[i] = [x // g for x in row] if g > 1 else row
        pivots.append(c)
        r += 1
    out = []
    for row, c in zip(m[:r], pivots):
        out.append(tuple(Fraction(x, row[c]) for x in row))
    return out, pivots


def rank(rows: Matrix) -> int:
    """Row rank over Q, computed with fraction-free integer elimination."""
    m = [r for r in _integer_rows(rows) if any(r)]
    if not m:
        return 0
    ncols = len(m[0])
    rk = 0
    for c in range(ncols):
        cand = [i for i in range(rk, len(m)) if m[i][c] != 0]
        if not cand:
            continue
        p = min(cand, key=lambda i: (abs(m[i][c]), i))
        m[rk], m[p] = m[p], m[rk]
        prow = m[rk]
        a = prow[c]
        for i in range(rk + 1, len(m)):
            b = m[i][c]
            if b:
                row = [a * x - b * y for x, y in zip(m[i], prow)]
                g = reduce(gcd, row, 0)
                m[i] = [x // g for x in row] if g > 1 else row
        rk += 1
        if rk == len(m):
            break
    return rk


def kernel_basis(rows: Matrix, ncols: int | None = None) -> list[tuple[Fraction, ...]]:
    """Basis of the right kernel {v : m v = 0}, one vector per free column.

    ``ncols`` is needed only when ``rows`` is empty.
    """
    m = as_matrix(rows)
    if ncols is None:
        if not m:
            raise ValueError("ncols required for a matrix with no rows")
        ncols = len(m[0])
    red, pivots = rref(m)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(tuple(v))
    return basis


def in_span(v: Sequence, gens: Matrix) -> bool:
    gens = list(gens)
    return rank(gens + [v]) == rank(gens)


def primitive_vector(v: Sequence) -> tuple[int, ...]:
    """Smallest positive rescaling of ``v`` that is integral."""
    fr = as_vector(v)
    if all(x == 0 for x in fr):
        raise ValueError("primitive_vector of the zero vector")
    d = reduce(lcm, (x.denominator for x in fr), 1)
    ints = [int(x * d) for x in fr]
    g = reduce(gcd, ints, 0)
    return tuple(x // g for x in ints)


def normalize_sign(v: Sequence[int]) -> tuple[int, ...]:
    """Flip ``v`` so that its first nonzero coordinate is positive."""
    for x in v:
        if x:
            return tuple(v) if x > 0 else tuple(-y for y in v)
    return tuple(v)


# --- integer lattices -----------------------------------------------------


def hermite_normal_form(rows: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Row-style Hermite normal form of an integer matrix.

    Returns the nonzero rows: pivots strictly move right, are positive, and
    entries above each pivot lie in ``[0, pivot)``. The row lattice is
    preserved, so the result is the canonical basis of that lattice.
    """
    m = [list(map(int, r)) for r in rows if any(r)]
    if not m:
        return []
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        while True:
            nz = [i for i in range(r, len(m)) if m[i][c] != 0]
            if not nz:
                break
            p = min(nz, key=lambda i: (abs(m[i][c]), i))
            m[r], m[p] = m[p], m[r]
            done = True
            for i in range(r + 1, len(m)):
                if m[i][c]:
                    q = m[i][c] // m[r][c]
                    m[i] = [x - q * y for x, y in zip(m[i], m[r])]
                    if m[i][c]:
                        done = False
            if done:
                break
        if all(m[i][c] == 0 for i in range(r, len(m))):
            continue
        if m[r][c] < 0:
            m[r] = [-x for x in m[r]]
        for i in range(r):
            q = m[i][c] // m[r][c]
            if q:
                m[i] = [x - q * y for x, y in zip(m[i], m[r])]
        r += 1
    return [tuple(row) for row in m[:r] if any(row)]


def integer_kernel(rows: Sequence[Sequence[int]], ncols: int) -> list[tuple[int, ...]]:
    """Lattice basis of {x in Z^ncols : A x = 0}, in Hermite normal form.

    Unimodular column operations bring ``A`` to column echelon form while the
    same operations are recorded on an identity matrix; the recorded columns
    sitting over zero columns of ``A`` generate the integer kernel.
    """
    a = [list(map(int, r)) for r in rows]
    m = len(a)
    # column j is (A-part, U-part)
    cols = [([a[i][j] for i in range(m)], [int(k == j) for k in range(ncols)]) for j in range(ncols)]
    k = 0
    for i in range(m):
        while True:
            nz = [j for j in range(k, ncols) if cols[j][0][i] != 0]
            if len(nz) <= 1:
                break
            p = min(nz, key=lambda j: (abs(cols[j][0][i]), j))
            pa, pu = cols[p]
            for j in nz:
                if j == p:
                    continue
                q = cols[j][0][i] // pa[i]
                ca, cu = cols[j]
                cols[j] = ([x - q * y for x, y in zip(ca, pa)], [x - q * y for x, y in zip(cu, pu)])
        nz = [j for j in range(k, ncols) if cols[j][0][i] != 0]
        if nz:
            cols[k], cols[nz[0]] = cols[nz[0]], cols[k]
            k += 1
    return hermite_normal_form([tuple(cols[j][1]) for j in range(k, ncols)])


def saturated_lattice(gens: Matrix, n: int) -> list[tuple[int, ...]]:
    """HNF basis of Z^n intersected with the rational span of ``gens``."""
    gens = as_matrix(gens)
    if not gens or rank(gens) == 0:
        return []
    perp = kernel_basis(gens, n)
    return integer_kernel([primitive_vector(p) for p in perp], n)


@lru_cache(maxsize=4096)
def _perp_basis(gens: tuple, n: int) -> list[tuple[int, ...]]:
    if not gens:
        return [tuple(int(i == j) for j in range(n)) for i in range(n)]
    return [primitive_vector(v) for v in kernel_basis(gens, n)]


@lru_cache(maxsize=4096)
def _saturated(gens: tuple, n: int) -> list[tuple[int, ...]]:
    return saturated_lattice(gens, n)


def _ext_gcd_combination(values: Sequence[int]) -> tuple[int, list[int]]:
    """Return (g, coeffs) with sum(c*v) == g == gcd(values) >= 0."""
    g, coeffs = 0, [0] * len(values)
    for i, v in enumerate(values):
        if v == 0:
            continue
        # extended Euclid on (g, v)
        old_r, r = g, v
        old_s, s = 1, 0
        old_t, t = 0, 1
        while r:
            q = old_r // r
            old_r, r = r, old_r - q * r
            old_s, s = s, old_s - q * s
            old_t, t = t, old_t - q * t
        if old_r < 0:
            old_r, old_s, old_t = -old_r, -old_s, -old_t
        coeffs = [c * old_s for c in coeffs]
        coeffs[i] = old_t
        g = old_r
    return g, coeffs


def _orthogonal_coords(v: Sequence, basis: Matrix) -> list[Fraction]:
    """Coordinates, in ``basis``, of the orthogonal projection of v onto its span."""
    gram = [[dot(b, c) for c in basis] for b in basis]
    rhs = [dot(b, v) for b in basis]
    aug = [list(map(Fraction, row)) + [r] for row, r in zip(gram, rhs)]
    red, piv = rref(aug)
    if len(piv) != len(basis):
        raise ValueError("basis is not linearly independent")
    return [row[-1] for row in red]


def _round_half_up(x: Fraction) -> int:
    return (x + Fraction(1, 2)).__floor__()


def quotient_primitive_generator(facet: Matrix, ridge: Matrix) -> tuple[int, ...]:
    """Primitive generator of the lattice quotient (facet lattice)/(ridge lattice).

    ``facet`` lists generators of a cone whose span has dimension one more
    than the span of ``ridge``; span(ridge) must lie in span(facet). The
    first facet generator outside span(ridge) fixes the direction.

    The representative returned is canonical: after choosing any lattice
    vector ``u`` of the facet lattice mapping to the positive generator of
    the rank-one quotient, we subtract the nearest point of the ridge lattice
    in the Babai sense, i.e. ``u - sum(round(c_i) b_i)`` where ``b`` is the
    HNF basis of Z^n ∩ span(ridge), ``c`` are the coordinates of the
    orthogonal projection of ``u`` onto span(ridge) in that basis, and
    ``round`` rounds halves up. This does not depend on the initial ``u``.
    """
    # positive rescaling to integers changes neither spans nor directions
    facet = [primitive_vector(g) for g in as_matrix(facet) if any(g)]
    ridge = [primitive_vector(g) for g in as_matrix(ridge) if any(g)]
    if not facet:
        raise ValueError("facet has no generators")
    n = len(facet[0])
    if ridge and len(ridge[0]) != n:
        raise ValueError("facet and ridge live in different ambient spaces")
    df, dr = rank(facet), rank(ridge)
    if df != dr + 1 or rank(facet + ridge) != df:
        raise ValueError("need span(ridge) inside span(facet) with codimension one")

    direction = next(g for g in facet if not in_span(g, ridge))
    # any functional vanishing on span(ridge) and not on direction induces
    # the quotient map span(facet) -> span(facet)/span(ridge) ~ Q
    phi = next(a for a in _perp_basis(tuple(ridge), n) if dot(a, direction))
    if dot(phi, direction) < 0:
        phi = tuple(-x for x in phi)

    lattice = _saturated(tuple(facet), n)
    vals = [dot(phi, b) for b in lattice]
    g, coeffs = _ext_gcd_combination(vals)
    u = [sum(ci * b[k] for ci, b in zip(coeffs, lattice)) for k in range(n)]

    ridge_lattice = _saturated(tuple(ridge), n) if ridge else []
    if ridge_lattice:
        coords = _orthogonal_coords(u, ridge_lattice)
        for ci, b in zip(coords, ridge_lattice):
            k = _round_half_up(ci)
            if k:
                u = [x - k * y for x, y in zip(u, b)]
    return tuple(int(x) for x in u)
