"""Polynomials over Q, Buchberger's algorithm and algebraic matroids of ideals.

Variables are written x1..xn. Exponent vectors are tuples indexed from 0,
while every subset handed in or out (coordinate sets S) is 1-indexed.
"""

from __future__ import annotations

import itertools
import logging
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from . import linalg
from .matroid import IndependenceFamily, subset_key

log = logging.getLogger(__name__)

Monomial = tuple[int, ...]


class Polynomial:
    """Sparse polynomial: a mapping from exponent tuples to nonzero rationals."""

    __slots__ = ("n", "terms", "_hash")

    def __init__(self, n: int, terms: dict | None = None):
        self.n = n
        clean = {}
        for m, c in (terms or {}).items():
            m = tuple(int(e) for e in m)
            if len(m) != n or any(e < 0 for e in m):
                raise ValueError(f"bad exponent vector {m} for {n} variables")
            c = linalg.to_fraction(c)
            if c:
                clean[m] = c
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, n: int, terms: dict) -> "Polynomial":
        p = cls.__new__(cls)
        p.n, p.terms, p._hash = n, terms, None
        return p

    @classmethod
    def constant(cls, c, n: int) -> "Polynomial":
        return cls(n, {(0,) * n: c})

    @classmethod
    def variable(cls, i: int, n: int) -> "Polynomial":
        """The variable x_i (1-indexed)."""
        if not 1 <= i <= n:
            raise ValueError(f"x{i} outside x1..x{n}")
        return cls(n, {tuple(int(k == i - 1) for k in range(n)): 1})

    @classmethod
    def linear(cls, coeffs: Sequence) -> "Polynomial":
        n = len(coeffs)
        return cls(n, {tuple(int(k == i) for k in range(n)): c for i, c in enumerate(coeffs)})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.n == other.n and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == Polynomial.constant(other, self.n)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self.terms.items())))
        return self._hash

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.n != self.n:
                raise ValueError("polynomials in different rings")
            return other
        return Polynomial.constant(other, self.n)

    def __add__(self, other) -> "Polynomial":
        other = self._coerce(other)
        t = dict(self.terms)
        for m, c in other.terms.items():
            v = t.get(m, 0) + c
            if v:
                t[m] = v
            else:
                t.pop(m, None)
        return Polynomial._raw(self.n, t)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw(self.n, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "Polynomial":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Polynomial":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            c = linalg.to_fraction(other)
            if not c:
                return Polynomial._raw(self.n, {})
            return Polynomial._raw(self.n, {m: v * c for m, v in self.terms.items()})
        other = self._coerce(other)
        t: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                v = t.get(m, 0) + c1 * c2
                if v:
                    t[m] = v
                else:
                    t.pop(m, None)
        return Polynomial._raw(self.n, t)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Polynomial":
        if k < 0:
            raise ValueError("negative power")
        out = Polynomial.constant(1, self.n)
        for _ in range(k):
            out = out * self
        return out

    def mul_term(self, mono: Monomial, c: Fraction) -> "Polynomial":
        return Polynomial._raw(
            self.n, {tuple(a + b for a, b in zip(m, mono)): v * c for m, v in self.terms.items()}
        )

    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def variables(self) -> frozenset[int]:
        """1-indexed variables occurring in the polynomial."""
        return frozenset(i + 1 for m in self.terms for i, e in enumerate(m) if e)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_constant(self) -> bool:
        return bool(self.terms) and all(not any(m) for m in self.terms)

    def leading_monomial(self, order: "MonomialOrder") -> Monomial:
        return max(self.terms, key=order.key)

    def leading_coefficient(self, order: "MonomialOrder") -> Fraction:
        return self.terms[self.leading_monomial(order)]

    def monic(self, order: "MonomialOrder") -> "Polynomial":
        return self * (1 / self.leading_coefficient(order))

    def to_string(self, order: "MonomialOrder | None" = None) -> str:
        if not self.terms:
            return "0"
        order = order or lex(self.n)
        parts = []
        for m in sorted(self.terms, key=order.key, reverse=True):
            c = self.terms[m]
            mono = "*".join(
                f"x{i + 1}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(m) if e
            )
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        s = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    def __str__(self) -> str:
        return self.to_string()

    def __repr__(self) -> str:
        return f"Polynomial({self.to_string()!r})"


# --- monomial orders --------------------------------------------------------


@dataclass(frozen=True)
class MonomialOrder:
    """Lex, grevlex, or a two-block elimination order.

    ``priority`` lists 0-based variable indices from largest to smallest.
    For ``kind == "block"`` the variables not in ``keep`` form the first
    (larger) block; grevlex is used inside each block.
    """

    kind: str
    n: int
    priority: tuple[int, ...]
    keep: frozenset[int] = field(default=frozenset())

    def key(self, m: Monomial):
        if self.kind == "lex":
            return tuple(m[v] for v in self.priority)
        if self.kind == "grevlex":
            return _grevlex_key(m, self.priority)
        if self.kind == "block":
            elim = [v for v in self.priority if v not in self.keep]
            kept = [v for v in self.priority if v in self.keep]
            return (_grevlex_key(m, elim), _grevlex_key(m, kept))
        raise ValueError(f"unknown order kind {self.kind!r}")


def _grevlex_key(m: Monomial, priority: Sequence[int]):
    return (sum(m[v] for v in priority), tuple(-m[v] for v in reversed(priority)))


def _priority(n: int, priority: Sequence[int] | None) -> tuple[int, ...]:
    """Convert 1-indexed variable priority (largest first) to 0-based indices."""
    if priority is None:
        return tuple(range(n))
    p = tuple(v - 1 for v in priority)
    if sorted(p) != list(range(n)):
        raise ValueError("priority must be a permutation of 1..n")
    return p


def lex(n: int, priority: Sequence[int] | None = None) -> MonomialOrder:
    """Lex order; default x1 > x2 > ... > xn."""
    return MonomialOrder("lex", n, _priority(n, priority))


def grevlex(n: int, priority: Sequence[int] | None = None) -> MonomialOrder:
    return MonomialOrder("grevlex", n, _priority(n, priority))


def elimination_order(n: int, keep: Iterable[int]) -> MonomialOrder:
    """Block order with variables outside ``keep`` (1-indexed) above those in it."""
    keep0 = frozenset(v - 1 for v in keep)
    if any(not 0 <= v < n for v in keep0):
        raise ValueError("kept variable out of range")
    return MonomialOrder("block", n, tuple(range(n)), keep0)


# --- division and Buchberger ------------------------------------------------


def _divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def _quot(b: Monomial, a: Monomial) -> Monomial:
    return tuple(y - x for x, y in zip(a, b))


def normal_form(f: Polynomial, g: Sequence[Polynomial], order: MonomialOrder) -> Polynomial:
    """Fully reduced remainder of ``f`` on division by ``g``."""
    divisors = [(h.leading_monomial(order), h) for h in g if h]
    divisors = [(lm, h, h.terms[lm]) for lm, h in divisors]
    p = dict(f.terms)
    rem: dict = {}
    key = order.key
    while p:
        lm = max(p, key=key)
        c = p[lm]
        for dlm, h, dlc in divisors:
            if _divides(dlm, lm):
                q = _quot(lm, dlm)
                k = c / dlc
                for m, v in h.terms.items():
                    mm = tuple(a + b for a, b in zip(m, q))
                    nv = p.get(mm, 0) - k * v
                    if nv:
                        p[mm] = nv
                    else:
                        p.pop(mm, None)
                break
        else:
            rem[lm] = c
            del p[lm]
    return Polynomial._raw(f.n, rem)


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder) -> Polynomial:
    lf, lg = f.leading_monomial(order), g.leading_monomial(order)
    l = _lcm(lf, lg)
    return f.mul_term(_quot(l, lf), 1 / f.terms[lf]) - g.mul_term(_quot(l, lg), 1 / g.terms[lg])


@dataclass(frozen=True)
class Budget:
    """Caps on Buchberger's work; exceeding either makes the run inconclusive."""

    max_pairs: int = 10_000
    max_degree: int = 40


class GroebnerBudgetExceeded(RuntimeError):
    def __init__(self, reason: str, pairs_done: int, partial_basis: list[Polynomial]):
        super().__init__(f"Groebner budget exceeded ({reason}) after {pairs_done} S-pairs")
        self.reason = reason
        self.pairs_done = pairs_done
        self.partial_basis = partial_basis


def _update(basis_lms, pairs, new_index, order):
    """Gebauer-Moeller pair update after appending basis element ``new_index``."""
    h = basis_lms[new_index]
    # old pairs whose lcm is strictly divisible through the new leading monomial
    kept = set()
    for i, j in pairs:
        l = _lcm(basis_lms[i], basis_lms[j])
        if _divides(h, l) and _lcm(basis_lms[i], h) != l and _lcm(basis_lms[j], h) != l:
            continue
        kept.add((i, j))
    cand: dict[Monomial, list[int]] = {}
    for i in range(new_index):
        cand.setdefault(_lcm(basis_lms[i], h), []).append(i)
    lcms = sorted(cand, key=lambda m: (sum(m), order.key(m)))
    minimal: list[Monomial] = []
    for l in lcms:
        if not any(_divides(o, l) for o in minimal):
            minimal.append(l)
    for l in minimal:
        idx = cand[l]
        # product criterion: coprime leading monomials reduce to zero
        if any(_lcm(basis_lms[i], h) == tuple(a + b for a, b in zip(basis_lms[i], h)) for i in idx):
            continue
        kept.add((min(idx), new_index))
    return kept


def buchberger(
    generators: Sequence[Polynomial], order: MonomialOrder, budget: Budget | None = None
) -> list[Polynomial]:
    """Reduced Groebner basis of the ideal generated by ``generators``.

    Pairs are taken by the normal strategy (lowest lcm degree, then pair
    index). The result is monic, interreduced and sorted by increasing
    leading monomial. Raises :class:`GroebnerBudgetExceeded` when the caps
    in ``budget`` are hit; that outcome carries no information about the
    ideal.
    """
    budget = budget or Budget()
    gens = [g for g in generators if g]
    if not gens:
        return []
    n = gens[0].n
    basis: list[Polynomial] = []
    lms: list[Monomial] = []
    pairs: set[tuple[int, int]] = set()

    def add(p):
        nonlocal pairs
        p = p.monic(order)
        if p.degree() > budget.max_degree:
            raise GroebnerBudgetExceeded("degree", done, basis)
        basis.append(p)
        lms.append(p.leading_monomial(order))
        pairs = _update(lms, pairs, len(basis) - 1, order)

    done = 0
    for g in gens:
        r = normal_form(g, [b for b in basis if b], order)
        if r:
            if r.is_constant():
                return [Polynomial.constant(1, n)]
            add(r)
    while pairs:
        i, j = min(pairs, key=lambda p: (sum(_lcm(lms[p[0]], lms[p[1]])), p))
        pairs.discard((i, j))
        if done >= budget.max_pairs:
            raise GroebnerBudgetExceeded("pairs", done, basis)
        done += 1
        r = normal_form(s_polynomial(basis[i], basis[j], order), basis, order)
        if r:
            if r.is_constant():
                return [Polynomial.constant(1, n)]
            add(r)
    return reduce_basis(basis, order)


def reduce_basis(basis: Sequence[Polynomial], order: MonomialOrder) -> list[Polynomial]:
    """Minimalize, interreduce, make monic and sort a Groebner basis."""
    items = sorted((b.monic(order) for b in basis if b), key=lambda b: order.key(b.leading_monomial(order)))
    minimal: list[Polynomial] = []
    for b in items:
        lm = b.leading_monomial(order)
        if not any(_divides(m.leading_monomial(order), lm) for m in minimal):
            minimal.append(b)
    out = []
    for k, b in enumerate(minimal):
        others = minimal[:k] + minimal[k + 1:]
        out.append(normal_form(b, others, order).monic(order))
    return sorted(out, key=lambda b: order.key(b.leading_monomial(order)))


def is_groebner_basis(basis: Sequence[Polynomial], order: MonomialOrder) -> bool:
    """Buchberger's criterion checked over every pair, without shortcuts."""
    basis = [b for b in basis if b]
    return all(
        not normal_form(s_polynomial(f, g, order), basis, order)
        for f, g in itertools.combinations(basis, 2)
    )


# --- ideals and algebraic matroids -------------------------------------------


@dataclass(frozen=True)
class Ideal:
    n: int
    generators: tuple[Polynomial, ...]

    def __post_init__(self):
        gens = tuple(self.generators)
        for g in gens:
            if not isinstance(g, Polynomial) or g.n != self.n:
                raise ValueError("generators must be polynomials in x1..xn")
            if not g:
                raise ValueError("zero generator")
        object.__setattr__(self, "generators", gens)

    def monomial_generators(self) -> list[Polynomial]:
        return [g for g in self.generators if g.is_monomial()]

    def is_unit(self, budget: Budget | None = None) -> bool:
        gb = buchberger(self.generators, grevlex(self.n), budget)
        return len(gb) == 1 and gb[0].is_constant()


def is_coordinate_independent(p: Ideal, s: Iterable[int], budget: Budget | None = None) -> bool:
    """True iff the ideal meets Q[x_i : i in s] only in zero."""
    s = frozenset(s)
    if any(not 1 <= i <= p.n for i in s):
        raise ValueError(f"subset {sorted(s)} outside 1..{p.n}")
    if not p.generators:
        return True
    gb = buchberger(p.generators, elimination_order(p.n, s), budget)
    return not any(g.variables() <= s for g in gb)


@dataclass
class AlgebraicMatroidReport:
    family: IndependenceFamily
    loops: frozenset[int]
    unknown: list[frozenset[int]] = field(default_factory=list)

    @property
    def conclusive(self) -> bool:
        return not self.unknown


def algebraic_matroid(p: Ideal, budget: Budget | None = None) -> AlgebraicMatroidReport:
    """Independent coordinate sets of ``p``, enumerated by increasing size.

    A set is tested only if all its maximal proper subsets are independent.
    Sets whose elimination ran out of budget are listed in ``unknown`` and
    treated as dependent in ``family``.
    """
    try:
        unit = bool(p.generators) and p.is_unit(budget)
    except GroebnerBudgetExceeded:
        log.warning("could not decide whether the ideal is the unit ideal")
        unit = False
    if unit:
        raise ValueError("unit ideal: every coordinate set is dependent")
    for g in p.monomial_generators():
        log.warning("monomial generator %s: the algebraic matroid has a loop", g)
    n = p.n
    independent = {frozenset()}
    unknown: list[frozenset[int]] = []
    layer = [frozenset()]
    for k in range(1, n + 1):
        cands = sorted({s | {e} for s in layer for e in range(1, n + 1) if e not in s}, key=subset_key)
        layer = []
        for s in cands:
            if not all(s - {e} in independent for e in s):
                continue
            try:
                ok = is_coordinate_independent(p, s, budget)
            except GroebnerBudgetExceeded:
                unknown.append(s)
                continue
            if ok:
                layer.append(s)
        independent.update(layer)
        if not layer:
            break
    loops = frozenset(
        i for i in range(1, n + 1) if frozenset({i}) not in independent and frozenset({i}) not in unknown
    )
    return AlgebraicMatroidReport(IndependenceFamily.from_sets(n, independent), loops, unknown)


def linear_ideal_from_matrix(a) -> Ideal:
    """Ideal of linear relations among the columns of ``a``.

    Each kernel vector becomes a generator with coprime integer
    coefficients and positive coefficient on its lowest-index variable.
    """
    rows = linalg.as_matrix(a)
    if not rows:
        raise ValueError("matrix has no rows")
    n = len(rows[0])
    gens = []
    for v in linalg.kernel_basis(rows, n):
        c = linalg.normalize_sign(linalg.primitive_vector(v))
        gens.append(Polynomial.linear(c))
    return Ideal(n, tuple(gens))


# --- text format ------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|x(\d+)|(\^)|([-+*()]))")


class ParseError(ValueError):
    pass


class _Parser:
    def __init__(self, text: str, n: int):
        self.n = n
        self.toks = []
        pos = 0
        text = text.rstrip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                raise ParseError(f"unexpected input at {text[pos:]!r}")
            num, var, caret, op = m.groups()
            if num is not None:
                self.toks.append(("num", Fraction(num)))
            elif var is not None:
                self.toks.append(("var", int(var)))
            elif caret:
                self.toks.append(("op", "^"))
            else:
                self.toks.append(("op", op))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        t = self.peek()
        self.i += 1
        return t

    def parse(self) -> Polynomial:
        if not self.toks:
            raise ParseError("empty polynomial")
        p = self.expr()
        if self.i != len(self.toks):
            raise ParseError(f"unexpected token {self.peek()[1]!r} (implicit multiplication is not allowed)")
        return p

    def expr(self) -> Polynomial:
        p = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            _, op = self.take()
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> Polynomial:
        p = self.unary()
        while self.peek() == ("op", "*"):
            self.take()
            p = p * self.unary()
        return p

    def unary(self) -> Polynomial:
        if self.peek() == ("op", "-"):
            self.take()
            return -self.unary()
        if self.peek() == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> Polynomial:
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, val = self.take()
            if kind != "num" or val.denominator != 1:
                raise ParseError("exponent must be a non-negative integer")
            return base ** int(val)
        return base

    def atom(self) -> Polynomial:
        kind, val = self.take()
        if kind == "num":
            return Polynomial.constant(val, self.n)
        if kind == "var":
            if not 1 <= val <= self.n:
                raise ParseError(f"x{val} outside x1..x{self.n}")
            return Polynomial.variable(val, self.n)
        if (kind, val) == ("op", "("):
            p = self.expr()
            if self.take() != ("op", ")"):
                raise ParseError("missing ')'")
            return p
        raise ParseError(f"unexpected token {val!r}")


def parse_polynomial(text: str, n: int) -> Polynomial:
    return _Parser(text, n).parse()


def parse_ideal(text: str) -> tuple[Ideal, list[str]]:
    """Parse the ``vars n`` text format.

    Returns the ideal and a list of warnings; monomial generators are kept
    (they signal loops) but reported.
    """
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ParseError("empty ideal file")
    head = lines[0].split()
    if len(head) != 2 or head[0] != "vars" or not head[1].isdigit():
        raise ParseError("first line must be 'vars n'")
    n = int(head[1])
    gens, warnings = [], []
    for ln in lines[1:]:
        p = parse_polynomial(ln, n)
        if not p:
            warnings.append(f"dropping zero generator {ln!r}")
            continue
        if p.is_monomial():
            warnings.append(f"monomial generator {p}: some variable among {sorted(p.variables())} is a loop")
        gens.append(p)
    return Ideal(n, tuple(gens)), warnings


def format_ideal(p: Ideal) -> str:
    return "\n".join([f"vars {p.n}"] + [g.to_string() for g in p.generators]) + "\n"
