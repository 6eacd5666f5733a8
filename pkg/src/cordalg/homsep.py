"""Ring homomorphisms from a cord algebra into small commutative GF(2)-algebras.

Target elements are polynomials in ``z`` over GF(2) stored as int bitmasks
(bit ``k`` is the coefficient of ``z^k``).  Integer order on these masks is
degree first, then lexicographic, which is the enumeration order used by the
search.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Iterable, Mapping

from .cordring import CordAlgebra
from .diagram import KnotDiagram
from .errors import IncompleteAssignment, MalformedDocument
from .gf2poly import Generator, Gf2Poly, pair_of
from .skein import PassWord, check


def clmul(a: int, b: int) -> int:
    out = 0
    while b:
        if b & 1:
            out ^= a
        a <<= 1
        b >>= 1
    return out


@dataclass(frozen=True)
class TargetRing:
    """``Z2[z]`` (``degree=None``), ``Z2[z]/(z^k)`` or the Boolean field ``Z2``."""

    kind: str  # "z" | "z^k" | "bool"
    degree: int | None = None

    @classmethod
    def parse(cls, text: str) -> TargetRing:
        if text == "z":
            return cls("z")
        if text == "bool":
            return cls("bool", 1)
        m = re.fullmatch(r"z\^(\d+)", text)
        if m and int(m.group(1)) >= 1:
            return cls("z^k", int(m.group(1)))
        raise MalformedDocument(f"unknown target {text!r}; use z, z^k or bool")

    @property
    def finite(self) -> bool:
        return self.degree is not None

    def name(self) -> str:
        return {"z": "Z2[z]", "bool": "Z2"}.get(self.kind, f"Z2[z]/(z^{self.degree})")

    def reduce(self, x: int) -> int:
        return x if self.degree is None else x & ((1 << self.degree) - 1)

    def add(self, x: int, y: int) -> int:
        return x ^ y

    def mul(self, x: int, y: int) -> int:
        if self.degree is None:
            return clmul(x, y)
        mask = (1 << self.degree) - 1
        return clmul(x & mask, y & mask) & mask

    def elements(self) -> range:
        if self.degree is None:
            raise ValueError("Z2[z] is infinite")
        return range(1 << self.degree)

    def fmt(self, x: int) -> str:
        return format_element(x)

    def parse_element(self, text: str) -> int:
        x = parse_element(text)
        if self.reduce(x) != x:
            raise MalformedDocument(f"{text!r} is not an element of {self.name()}")
        return x


def format_element(x: int) -> str:
    if x == 0:
        return "0"
    terms = []
    for k in range(x.bit_length() - 1, -1, -1):
        if x >> k & 1:
            terms.append("1" if k == 0 else "z" if k == 1 else f"z^{k}")
    return "+".join(terms)


def parse_element(text: str) -> int:
    text = text.replace(" ", "")
    if not text:
        raise MalformedDocument("empty target element")
    x = 0
    for term in text.split("+"):
        m = re.fullmatch(r"(0|1|z(?:\^(\d+))?)", term)
        if not m:
            raise MalformedDocument(f"cannot parse target element {text!r}")
        if term == "0":
            continue
        k = 0 if term == "1" else int(m.group(2) or 1)
        x ^= 1 << k
    return x


def evaluate(p: Gf2Poly, values: Mapping[Generator, int], T: TargetRing) -> int:
    total = 0
    for m in p.terms:
        t = 1
        for v, e in m:
            x = values[pair_of(v)]
            for _ in range(e):
                t = T.mul(t, x)
            if not t:
                break
        total ^= t
    return T.reduce(total)


@dataclass(frozen=True)
class HomAssignment:
    values: tuple[tuple[Generator, int], ...]
    target: TargetRing
    verified: bool = False
    failure: str | None = None

    @property
    def mapping(self) -> dict[Generator, int]:
        return dict(self.values)

    def __call__(self, p: Gf2Poly) -> int:
        return evaluate(p, self.mapping, self.target)

    def to_dict(self) -> dict:
        return {str(g): format_element(x) for g, x in self.values}


def verify_hom(A: CordAlgebra, h: Mapping[Generator, int] | HomAssignment,
               T: TargetRing | None = None) -> HomAssignment:
    """Check that every relation of ``A`` maps to 0.  Returns the assignment
    with ``verified`` set, or unset with ``failure`` naming the first relation
    that survives."""
    if isinstance(h, HomAssignment):
        T = T or h.target
        h = h.mapping
    if T is None:
        raise ValueError("a target ring is required")
    missing = [g for g in A.generators if g not in h]
    if missing:
        raise IncompleteAssignment(
            f"no image for {', '.join(str(g) for g in missing[:5])}"
            + (" ..." if len(missing) > 5 else "")
        )
    values = tuple((g, T.reduce(h[g])) for g in A.generators)
    mapping = dict(values)
    for r in A.relations:
        v = evaluate(r, mapping, T)
        if v:
            return HomAssignment(values, T, False, f"{r} -> {format_element(v)}")
    return HomAssignment(values, T, True)


def search_homs(A: CordAlgebra, T: TargetRing, limit: int = 10) -> list[HomAssignment]:
    """Depth-first enumeration of homomorphisms in canonical order.

    Generators are assigned in ``(i, j)`` order with target elements in
    increasing order; a polynomial is checked as soon as its last generator
    is assigned.  Pruning uses the reduced Groebner basis (same ideal, many
    short linear members); every result is re-verified against the relations.
    """
    if not T.finite:
        raise ValueError("search needs a finite target (z^k or bool)")
    gens = list(A.generators)
    pos = {g: k for k, g in enumerate(gens)}
    checks: list[list[Gf2Poly]] = [[] for _ in gens]
    for p in list(A.basis) + list(A.relations):
        vs = p.variables()
        if not vs:
            if p:
                return []
            continue
        checks[max(pos[g] for g in vs)].append(p)
    found: list[HomAssignment] = []
    values: dict[Generator, int] = {}
    elements = list(T.elements())

    def dfs(k: int) -> bool:
        if k == len(gens):
            h = verify_hom(A, values, T)
            if h.verified:
                found.append(h)
            return len(found) >= limit
        g = gens[k]
        for x in elements:
            values[g] = x
            if all(evaluate(p, values, T) == 0 for p in checks[k]):
                if dfs(k + 1):
                    return True
        del values[g]
        return False

    if limit > 0:
        dfs(0)
    return found


@dataclass(frozen=True)
class Certificate:
    generator: Generator
    hom: HomAssignment
    value_before: int
    value_after: int
    poly_before: Gf2Poly
    poly_after: Gf2Poly

    def recheck(self) -> bool:
        return (
            self.hom(self.poly_before) == self.value_before
            and self.hom(self.poly_after) == self.value_after
            and self.value_before != self.value_after
        )

    def to_dict(self) -> dict:
        return {
            "generator": str(self.generator),
            "target": self.hom.target.name(),
            "value_before": format_element(self.value_before),
            "value_after": format_element(self.value_after),
            "poly_before": str(self.poly_before),
            "poly_after": str(self.poly_after),
            "hom": self.hom.to_dict(),
        }


def separate(A: CordAlgebra, images: Mapping[Generator, Gf2Poly],
             homs: Iterable[HomAssignment]) -> Certificate | None:
    """First (hom, generator) whose before/after values differ.

    Within a hom, generators that are already their own normal form are tried
    first (in ``(i, j)`` order), so a certificate names a canonical
    representative rather than an alias of it.
    """
    order = sorted(
        images,
        key=lambda g: (A.nf(Gf2Poly.gen(g.i, g.j)) != Gf2Poly.gen(g.i, g.j), g),
    )
    for h in homs:
        if not h.verified:
            continue
        for g in order:
            before = A.nf(Gf2Poly.gen(g.i, g.j))
            after = images[g]
            vb, va = h(before), h(after)
            if vb != va:
                return Certificate(g, h, vb, va, before, after)
    return None


_GEN = re.compile(r"a_\{(\d+),(\d+)\}|a(\d)(\d)")


def parse_hom(text: str | dict, T: TargetRing) -> dict[Generator, int]:
    """Hom document: ``{"a_{1,4}": "z+1", ...}`` (or ``{"images": {...}}``)."""
    if isinstance(text, dict):
        doc = text
    else:
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise MalformedDocument(f"hom document is not valid JSON: {exc}") from None
    if isinstance(doc, dict) and isinstance(doc.get("images"), dict):
        doc = doc["images"]
    if not isinstance(doc, dict):
        raise MalformedDocument("hom document must map generators to elements")
    out: dict[Generator, int] = {}
    for key, val in doc.items():
        m = _GEN.fullmatch(key.replace(" ", ""))
        if not m:
            raise MalformedDocument(f"bad generator name {key!r}")
        i, j = (int(m.group(1)), int(m.group(2))) if m.group(1) else (int(m.group(3)), int(m.group(4)))
        if i == j:
            raise MalformedDocument(f"{key} is a diagonal generator")
        out[Generator(min(i, j), max(i, j))] = T.parse_element(str(val))
    return out


def ranked_homs(A: CordAlgebra, target: TargetRing | None = None,
                limit: int = 64) -> list[tuple[tuple[bool, bool, int], HomAssignment]]:
    """Homs found in ``target`` (default ``Z2[z]/(z^2)``), each lifted to
    ``Z2[z]`` when it still verifies there, keyed for preference: lifted
    first, then those taking a value outside ``{0, 1}``, then search order."""
    target = target or TargetRing("z^k", 2)
    out = []
    for idx, h in enumerate(search_homs(A, target, limit)):
        lifted = verify_hom(A, h.mapping, TargetRing("z"))
        if lifted.verified:
            h = lifted
        boolean = all(x in (0, 1) for _, x in h.values)
        out.append(((not lifted.verified, boolean, idx), h))
    out.sort(key=lambda t: t[0])
    return out


def certify(A: CordAlgebra, images: Mapping[Generator, Gf2Poly],
            target: TargetRing | None = None, limit: int = 64) -> Certificate | None:
    """Search ``target`` (default ``Z2[z]/(z^2)``) and return the most
    informative separating certificate.

    Candidates come in :func:`ranked_homs` order; among equally ranked homs a
    certificate whose before-value is the smaller one wins (``z -> z+1``
    rather than its swap).
    """
    ranked = []
    for (not_lifted, boolean, idx), h in ranked_homs(A, target, limit):
        c = separate(A, images, [h])
        if c is not None:
            ranked.append(((not_lifted, boolean, c.value_before > c.value_after, idx), c))
    if not ranked:
        return None
    return min(ranked, key=lambda t: t[0])[1]


# -- working without a Groebner basis ------------------------------------------


def evaluate_word(d: KnotDiagram, w: PassWord, values: Mapping[Generator, int],
                  T: TargetRing) -> int:
    """Image of the pass-word ``w`` under a hom, by running the skein
    recurrence directly in the target ring (no polynomial is expanded)."""
    check(d, w)

    def val(i: int, j: int) -> int:
        return 0 if i == j else values[Generator(min(i, j), max(i, j))]

    v = {i: val(i, w.end) for i in d.arcs}
    for s in reversed(w.passes):
        vs = v[s]
        if not vs:
            continue
        for i in d.arcs:
            if i != s:
                v[i] ^= T.mul(val(i, s), vs)
    return T.reduce(v[w.start])


def pullback(h: HomAssignment | Mapping[Generator, int], projection: Mapping[int, int],
             generators: Iterable[Generator]) -> dict[Generator, int]:
    """Compose a hom on a base algebra with an arc map ``a_{x,y} -> a_{f(x),f(y)}``."""
    base = h.mapping if isinstance(h, HomAssignment) else dict(h)
    out: dict[Generator, int] = {}
    for g in generators:
        x, y = projection[g.i], projection[g.j]
        out[g] = 0 if x == y else base[Generator(min(x, y), max(x, y))]
    return out


def verify_on(d: KnotDiagram, relations: Iterable[Gf2Poly], values: Mapping[Generator, int],
              T: TargetRing) -> HomAssignment:
    """:func:`verify_hom` against an explicit relation list (no algebra built)."""
    gens = tuple(Generator(i, j) for i in d.arcs for j in d.arcs if i < j)
    vals = tuple((g, T.reduce(values[g])) for g in gens)
    mapping = dict(vals)
    for r in relations:
        v = evaluate(r, mapping, T)
        if v:
            return HomAssignment(vals, T, False, f"{r} -> {format_element(v)}")
    return HomAssignment(vals, T, True)


@dataclass(frozen=True)
class WordCertificate:
    """Separation of ``a_g`` from the image loop ``word`` by a verified hom,
    with both values computed without a Groebner basis."""

    generator: Generator
    hom: HomAssignment
    value_before: int
    value_after: int
    word: PassWord

    def recheck(self, d: KnotDiagram) -> bool:
        m = self.hom.mapping
        return (
            self.hom.verified
            and m[self.generator] == self.value_before
            and evaluate_word(d, self.word, m, self.hom.target) == self.value_after
            and self.value_before != self.value_after
        )

    def to_dict(self) -> dict:
        return {
            "generator": str(self.generator),
            "target": self.hom.target.name(),
            "value_before": format_element(self.value_before),
            "value_after": format_element(self.value_after),
            "word": str(self.word),
        }
