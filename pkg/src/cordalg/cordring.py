"""The abelian cord algebra of a diagram as a quotient of GF(2)[a_{i,j}]."""

from __future__ import annotations

from dataclasses import dataclass

from .diagram import KnotDiagram
from .gf2poly import (
    DEFAULT_MAX_MONOMIALS,
    DEFAULT_MAX_PAIRS,
    Generator,
    Gf2Poly,
    GroebnerBasis,
    buchberger,
)


@dataclass(frozen=True)
class CordAlgebra:
    source: KnotDiagram
    generators: tuple[Generator, ...]
    relations: tuple[Gf2Poly, ...]
    basis: GroebnerBasis

    def nf(self, p: Gf2Poly) -> Gf2Poly:
        return self.basis.normal_form(p)

    def equal(self, p: Gf2Poly, q: Gf2Poly) -> bool:
        return not self.basis.normal_form(p + q)

    def presentation(self) -> dict:
        return {
            "generators": [str(g) for g in self.generators],
            "relations": len(self.relations),
            "basis": [str(g) for g in self.basis],
        }


def crossing_relations(d: KnotDiagram) -> list[Gf2Poly]:
    """``a_{l,j} + a_{l,k} + a_{l,i} a_{i,j}`` for every crossing ``(i; j, k)``
    and every arc ``l``, deduplicated, zero polynomials dropped."""
    a = Gf2Poly.gen
    seen: dict[Gf2Poly, None] = {}
    for c in d.crossings:
        i, j, k = c.over, c.under_in, c.under_out
        for l in d.arcs:
            r = a(l, j) + a(l, k) + a(l, i) * a(i, j)
            if r:
                seen.setdefault(r, None)
    return list(seen)


def build_cord_algebra(
    d: KnotDiagram,
    *,
    max_pairs: int = DEFAULT_MAX_PAIRS,
    max_monomials: int = DEFAULT_MAX_MONOMIALS,
    max_seconds: float | None = None,
) -> CordAlgebra:
    gens = tuple(Generator(i, j) for i in d.arcs for j in d.arcs if i < j)
    rels = tuple(crossing_relations(d))
    basis = buchberger(
        list(rels), max_pairs=max_pairs, max_monomials=max_monomials, max_seconds=max_seconds
    )
    return CordAlgebra(d, gens, rels, basis)


def nf(A: CordAlgebra, p: Gf2Poly) -> Gf2Poly:
    return A.nf(p)


def equal(A: CordAlgebra, p: Gf2Poly, q: Gf2Poly) -> bool:
    return A.equal(p, q)
