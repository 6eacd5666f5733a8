"""Multivariate polynomials over GF(2) in the cord generators ``a_{i,j}``.

A monomial is a sorted tuple of ``(var, exp)`` pairs, where ``var`` packs the
generator pair ``(i, j)`` (``i < j``) into one integer so that integer order is
lexicographic order on pairs.  A polynomial is a frozenset of monomials: every
present monomial has coefficient 1, so addition is symmetric difference.

Monomials are compared in graded reverse lexicographic order with
``a_{1,2} > a_{1,3} > ... > a_{2,3} > ...``.  :func:`desc_key` maps a monomial to
a key whose *ascending* order is *descending* grevlex, which lets us use
``min`` and :mod:`heapq` to pull out leading terms.
"""

from __future__ import annotations

import heapq
import re
import time
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, NamedTuple

from .errors import MalformedDocument, ResourceBudgetExceeded

_SHIFT = 20
_MASK = (1 << _SHIFT) - 1

Monomial = tuple  # tuple[tuple[int, int], ...]

DEFAULT_MAX_PAIRS = 10**6
DEFAULT_MAX_MONOMIALS = 10**7


class Generator(NamedTuple):
    """The unordered cord generator ``a_{i,j}``, stored with ``i < j``."""

    i: int
    j: int

    def __str__(self) -> str:
        return f"a_{{{self.i},{self.j}}}"


def var_of(i: int, j: int) -> int:
    if i > j:
        i, j = j, i
    return (i << _SHIFT) | j


def pair_of(var: int) -> Generator:
    return Generator(var >> _SHIFT, var & _MASK)


# -- monomial helpers ---------------------------------------------------------


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    out = []
    i = j = 0
    la, lb = len(a), len(b)
    while i < la and j < lb:
        va, vb = a[i][0], b[j][0]
        if va == vb:
            out.append((va, a[i][1] + b[j][1]))
            i += 1
            j += 1
        elif va < vb:
            out.append(a[i])
            i += 1
        else:
            out.append(b[j])
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return tuple(out)


def mono_divides(a: Monomial, b: Monomial) -> bool:
    """True iff ``a`` divides ``b``."""
    if len(a) > len(b):
        return False
    j = 0
    lb = len(b)
    for va, ea in a:
        while j < lb and b[j][0] < va:
            j += 1
        if j == lb or b[j][0] != va or b[j][1] < ea:
            return False
        j += 1
    return True


def mono_div(b: Monomial, a: Monomial) -> Monomial:
    """``b / a``; caller guarantees ``a`` divides ``b``."""
    ea = dict(a)
    out = []
    for v, e in b:
        r = e - ea.get(v, 0)
        if r:
            out.append((v, r))
    return tuple(out)


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    d = dict(a)
    for v, e in b:
        if e > d.get(v, 0):
            d[v] = e
    return tuple(sorted(d.items()))


def mono_coprime(a: Monomial, b: Monomial) -> bool:
    return not ({v for v, _ in a} & {v for v, _ in b})


def _divisors(m: Monomial):
    """All monomials dividing ``m`` except 1."""
    out = [()]
    for v, e in m:
        out = [d + ((v, k),) if k else d for d in out for k in range(e + 1)]
    return [d for d in out if d]


def mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


def desc_key(m: Monomial):
    """Ascending order of this key is descending grevlex order of monomials."""
    return (-mono_degree(m), m[::-1])


def mono_str(m: Monomial) -> str:
    if not m:
        return "1"
    parts = []
    for v, e in m:
        g = str(pair_of(v))
        parts.append(g if e == 1 else f"{g}^{e}")
    return "*".join(parts)


# -- polynomials -------------------------------------------------------------


class Gf2Poly:
    """An element of GF(2)[a_{i,j}]; immutable and hashable."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Iterable[Monomial] = ()):
        self.terms = terms if isinstance(terms, frozenset) else frozenset(terms)
        self._hash = None

    @classmethod
    def zero(cls) -> Gf2Poly:
        return _ZERO

    @classmethod
    def one(cls) -> Gf2Poly:
        return _ONE

    @classmethod
    def gen(cls, i: int, j: int) -> Gf2Poly:
        """``a_{i,j}``, with ``a_{i,i} = 0`` and ``a_{j,i} = a_{i,j}``."""
        if i == j:
            return _ZERO
        return cls((((var_of(i, j), 1),),))

    def __add__(self, other: Gf2Poly) -> Gf2Poly:
        if isinstance(other, int):
            other = _const(other)
        return Gf2Poly(self.terms ^ other.terms)

    __radd__ = __add__
    __sub__ = __add__

    def __mul__(self, other: Gf2Poly) -> Gf2Poly:
        if isinstance(other, int):
            other = _const(other)
        if not self.terms or not other.terms:
            return _ZERO
        if other.terms == _ONE.terms:
            return self
        if self.terms == _ONE.terms:
            return other
        acc: set = set()
        for m1 in self.terms:
            for m2 in other.terms:
                m = mono_mul(m1, m2)
                if m in acc:
                    acc.remove(m)
                else:
                    acc.add(m)
        return Gf2Poly(acc)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> Gf2Poly:
        out = _ONE
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = _const(other)
        if not isinstance(other, Gf2Poly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.terms)
        return self._hash

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[Monomial]:
        return iter(self.sorted_terms())

    def sorted_terms(self) -> list[Monomial]:
        return sorted(self.terms, key=desc_key)

    def leading_monomial(self) -> Monomial:
        return min(self.terms, key=desc_key)

    def degree(self) -> int:
        return max((mono_degree(m) for m in self.terms), default=-1)

    def variables(self) -> set[Generator]:
        return {pair_of(v) for m in self.terms for v, _ in m}

    def rename(self, mapping: dict[int, int]) -> Gf2Poly:
        """Apply an arc relabeling ``mapping`` to every generator."""
        out = _ZERO
        for m in self.terms:
            term = _ONE
            for v, e in m:
                g = pair_of(v)
                term = term * Gf2Poly.gen(mapping[g.i], mapping[g.j]) ** e
            out = out + term
        return out

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return "+".join(mono_str(m) for m in self.sorted_terms())

    def __repr__(self) -> str:
        return f"Gf2Poly({str(self)!r})"


_ZERO = Gf2Poly(frozenset())
_ONE = Gf2Poly(frozenset({()}))


def _const(c: int) -> Gf2Poly:
    return _ONE if c % 2 else _ZERO


def add(p: Gf2Poly, q: Gf2Poly) -> Gf2Poly:
    return p + q


def mul(p: Gf2Poly, q: Gf2Poly) -> Gf2Poly:
    return p * q


_TOKEN = re.compile(r"a_\{(\d+),(\d+)\}(?:\^(\d+))?|a(\d)(\d)(?:\^(\d+))?|(1)|(0)")


def parse_poly(text: str) -> Gf2Poly:
    """Parse the canonical text form, e.g. ``"a_{1,2}^2*a_{1,3}+1"``.

    The compact ``a12`` spelling is also accepted for single-digit arcs.
    """
    text = text.replace(" ", "")
    if not text:
        raise MalformedDocument("empty polynomial")
    out = _ZERO
    for term in text.split("+"):
        if not term:
            raise MalformedDocument(f"empty term in {text!r}")
        prod = _ONE
        for factor in term.split("*"):
            m = _TOKEN.fullmatch(factor)
            if not m:
                raise MalformedDocument(f"cannot parse factor {factor!r}")
            if m.group(8):
                prod = _ZERO
            elif m.group(7):
                continue
            elif m.group(1):
                exp = int(m.group(3) or 1)
                prod = prod * Gf2Poly.gen(int(m.group(1)), int(m.group(2))) ** exp
            else:
                exp = int(m.group(6) or 1)
                prod = prod * Gf2Poly.gen(int(m.group(4)), int(m.group(5))) ** exp
        out = out + prod
    return out


# -- reduction ----------------------------------------------------------------


class _Index:
    """Leading-monomial lookup for top reduction."""

    def __init__(self):
        self.linear: dict[int, tuple] = {}
        self.by_first: dict[int, list[tuple]] = {}
        self.constant: tuple | None = None

    def add(self, lm: Monomial, terms: frozenset) -> None:
        entry = (lm, terms)
        if not lm:
            self.constant = entry
        elif len(lm) == 1 and lm[0][1] == 1:
            self.linear[lm[0][0]] = entry
        else:
            self.by_first.setdefault(lm[0][0], []).append(entry)

    def remove(self, lm: Monomial) -> None:
        if not lm:
            self.constant = None
        elif len(lm) == 1 and lm[0][1] == 1:
            self.linear.pop(lm[0][0], None)
        else:
            bucket = self.by_first.get(lm[0][0], [])
            bucket[:] = [e for e in bucket if e[0] != lm]

    def find(self, m: Monomial):
        if self.constant is not None:
            return self.constant
        linear = self.linear
        by_first = self.by_first
        for v, _ in m:
            hit = linear.get(v)
            if hit is not None:
                return hit
        for v, _ in m:
            for entry in by_first.get(v, ()):
                if mono_divides(entry[0], m):
                    return entry
        return None


def _reduce(terms: Iterable[Monomial], index: _Index, budget: _Budget | None = None) -> set:
    """Full reduction of a term set against ``index``; returns the remainder."""
    work = set(terms)
    heap = [(desc_key(m), m) for m in work]
    heapq.heapify(heap)
    rem = set()
    steps = 0
    while heap:
        _, m = heapq.heappop(heap)
        if m not in work:
            continue
        work.discard(m)
        hit = index.find(m)
        if hit is None:
            rem.add(m)
            continue
        lm, gterms = hit
        t = mono_div(m, lm)
        for gm in gterms:
            if gm == lm:
                continue
            nm = mono_mul(gm, t)
            if nm in work:
                work.discard(nm)
            else:
                work.add(nm)
                heapq.heappush(heap, (desc_key(nm), nm))
        steps += 1
        if budget is not None and steps % 1024 == 0:
            budget.check_monomials(len(work) + len(rem))
            budget.check_clock()
    return rem


@dataclass
class _Budget:
    max_pairs: int
    max_monomials: int
    max_seconds: float | None = None
    pairs: int = 0
    live: int = 0
    started: float = field(default_factory=time.monotonic)

    def tick_pair(self) -> None:
        self.pairs += 1
        if self.pairs > self.max_pairs:
            raise ResourceBudgetExceeded(f"S-pair budget of {self.max_pairs} exhausted")
        self.check_clock()

    def check_clock(self) -> None:
        if self.max_seconds is not None and time.monotonic() - self.started > self.max_seconds:
            raise ResourceBudgetExceeded(
                f"time budget of {self.max_seconds:g} s exhausted after {self.pairs} S-pairs"
            )

    def check_monomials(self, extra: int = 0) -> None:
        if self.live + extra > self.max_monomials:
            raise ResourceBudgetExceeded(
                f"monomial budget of {self.max_monomials} exhausted"
            )


@dataclass(frozen=True)
class GroebnerBasis:
    """A reduced Groebner basis under grevlex; ``normal_form`` decides membership."""

    polys: tuple[Gf2Poly, ...]
    order: str = field(default="grevlex")

    @cached_property
    def _index(self) -> _Index:
        idx = _Index()
        for p in self.polys:
            idx.add(p.leading_monomial(), p.terms)
        return idx

    def normal_form(self, p: Gf2Poly) -> Gf2Poly:
        if not p.terms or not self.polys:
            return p
        return Gf2Poly(_reduce(p.terms, self._index))

    def contains(self, p: Gf2Poly) -> bool:
        return not self.normal_form(p)

    def leading_monomials(self) -> list[Monomial]:
        return [p.leading_monomial() for p in self.polys]

    def __len__(self) -> int:
        return len(self.polys)

    def __iter__(self):
        return iter(self.polys)


def normal_form(p: Gf2Poly, basis: GroebnerBasis) -> Gf2Poly:
    return basis.normal_form(p)


def buchberger(
    relations: Iterable[Gf2Poly],
    *,
    max_pairs: int = DEFAULT_MAX_PAIRS,
    max_monomials: int = DEFAULT_MAX_MONOMIALS,
    max_seconds: float | None = None,
) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``relations``.

    Pairs are selected by lcm degree (normal strategy) and pruned with the
    Gebauer-Moeller update.  Raises :class:`ResourceBudgetExceeded` once more
    than ``max_pairs`` S-pairs are reduced, more than ``max_monomials``
    monomials are held at once, or (optionally) ``max_seconds`` of wall clock
    have passed.
    """
    budget = _Budget(max_pairs, max_monomials, max_seconds)
    rels = sorted(
        {r.terms for r in relations if r.terms},
        key=lambda t: desc_key(min(t, key=desc_key)),
        reverse=True,
    )

    lms: list[Monomial] = []
    polys: list[frozenset] = []
    active: dict[int, None] = {}  # insertion-ordered set
    active_by_lm: dict[Monomial, int] = {}
    active_by_var: dict[int, set[int]] = {}
    index = _Index()
    pair_lcm: dict[tuple[int, int], Monomial] = {}
    pairs_by_var: dict[int, set[tuple[int, int]]] = {}
    heap: list = []

    def push_pair(i: int, j: int, lcm: Monomial) -> None:
        pair_lcm[(i, j)] = lcm
        for v, _ in lcm:
            pairs_by_var.setdefault(v, set()).add((i, j))
        heapq.heappush(heap, (mono_degree(lcm), j, i))

    def insert(terms: set) -> None:
        lm = min(terms, key=desc_key)
        h = len(lms)
        lms.append(lm)
        polys.append(frozenset(terms))
        budget.live += len(terms)
        budget.check_monomials()
        lm_vars = [v for v, _ in lm]

        # Gebauer-Moeller on the new pairs (g, h).  Coprime pairs never
        # survive, so only actives sharing a variable with lm are candidates;
        # a candidate dies if another active's lcm with lm divides its own.
        sharing = set()
        for v in lm_vars:
            sharing |= active_by_var.get(v, set())
        for g in sorted(sharing):
            l = mono_lcm(lm, lms[g])
            dominated = False
            for dvs in _divisors(l):
                g2 = active_by_lm.get(dvs)
                if g2 is None or g2 == g:
                    continue
                l2 = mono_lcm(lm, dvs)
                if l2 != l or mono_coprime(lm, dvs) or (g2 in sharing and g2 < g):
                    dominated = True
                    break
            if not dominated:
                push_pair(g, h, l)

        # Drop old pairs made redundant by the new leading monomial.
        if lm_vars:
            bucket = pairs_by_var.get(lm_vars[0], set())
            for pr in list(bucket):
                l_ab = pair_lcm.get(pr)
                if l_ab is None:
                    bucket.discard(pr)
                    continue
                a, b = pr
                if b == h:
                    continue
                if (
                    mono_divides(lm, l_ab)
                    and mono_lcm(lms[a], lm) != l_ab
                    and mono_lcm(lms[b], lm) != l_ab
                ):
                    del pair_lcm[pr]
                    bucket.discard(pr)

        # Retire actives whose leading monomial is now reducible.
        doomed = set(active) if not lm_vars else set(active_by_var.get(lm_vars[0], set()))
        for g in doomed:
            if mono_divides(lm, lms[g]):
                del active[g]
                del active_by_lm[lms[g]]
                for v, _ in lms[g]:
                    active_by_var[v].discard(g)
                index.remove(lms[g])
        active[h] = None
        active_by_lm[lm] = h
        for v in lm_vars:
            active_by_var.setdefault(v, set()).add(h)
        index.add(lm, polys[h])

    for terms in rels:
        r = _reduce(terms, index, budget) if active else set(terms)
        if r:
            insert(r)

    while heap:
        _, j, i = heapq.heappop(heap)
        l = pair_lcm.pop((i, j), None)
        if l is None:
            continue
        budget.tick_pair()
        ti = mono_div(l, lms[i])
        tj = mono_div(l, lms[j])
        s: set = set()
        for m in polys[i]:
            s.add(mono_mul(m, ti))
        for m in polys[j]:
            nm = mono_mul(m, tj)
            if nm in s:
                s.discard(nm)
            else:
                s.add(nm)
        r = _reduce(s, index, budget)
        if r:
            insert(r)

    # Interreduce the minimal basis into the reduced basis.
    # A leading monomial never divides a smaller monomial, so each tail can be
    # reduced against the whole index without touching its own element.
    final = []
    for g in active:
        lm = lms[g]
        tail = polys[g] - {lm}
        rem = _reduce(tail, index) if tail else set()
        rem.add(lm)
        final.append(Gf2Poly(rem))
    final.sort(key=lambda p: desc_key(p.leading_monomial()), reverse=True)
    return GroebnerBasis(tuple(final))
