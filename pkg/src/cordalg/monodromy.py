"""Loop-of-knot actions on based loops and the monodromy they induce on cords.

Every action is resolved against a diagram into the normal shape

    w  |->  prefix ++ sigma(w) ++ suffix

where ``sigma`` substitutes each pass letter by a pass list.  The blue box has
empty prefix/suffix and conjugates letters of its summand by the summand
longitude; the Gramain loop has identity ``sigma`` and wraps the word in a
meridian at the basepoint.  Compositions and powers stay in this shape.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Callable, Sequence

from .cordring import CordAlgebra, build_cord_algebra, crossing_relations
from .diagram import KnotDiagram, longitude_passes
from .errors import InvalidAction, NotABasedLoop
from .gf2poly import Generator, Gf2Poly
from .homsep import (
    HomAssignment,
    TargetRing,
    WordCertificate,
    evaluate_word,
    pullback,
    ranked_homs,
    verify_on,
)
from .skein import PassWord, lift_cord, reduce


@dataclass(frozen=True)
class Resolved:
    basepoint: int
    prefix: tuple[int, ...] = ()
    subst: tuple[tuple[int, tuple[int, ...]], ...] = ()
    suffix: tuple[int, ...] = ()

    @property
    def table(self) -> dict[int, tuple[int, ...]]:
        return dict(self.subst)

    def letters(self, word: Sequence[int]) -> tuple[int, ...]:
        t = self.table
        out: list[int] = []
        for s in word:
            out.extend(t.get(s, (s,)))
        return tuple(out)

    def apply(self, passes: Sequence[int]) -> tuple[int, ...]:
        return self.prefix + self.letters(passes) + self.suffix

    def then(self, inner: Resolved) -> Resolved:
        """``self`` after ``inner``."""
        t_in = inner.table
        keys = sorted(set(t_in) | set(self.table))
        subst = []
        for s in keys:
            img = self.letters(t_in.get(s, (s,)))
            if img != (s,):
                subst.append((s, img))
        return Resolved(
            self.basepoint,
            self.prefix + self.letters(inner.prefix),
            tuple(subst),
            self.letters(inner.suffix) + self.suffix,
        )


def identity(b: int) -> Resolved:
    return Resolved(b)


@dataclass(frozen=True)
class LoopAction:
    kind: str  # "blue-box" | "gramain" | "compose" | "power"
    resolved: Resolved
    inverse: Resolved
    summand: str | None = None
    parts: tuple[LoopAction, ...] = ()
    base: LoopAction | None = None
    n: int = 0

    def descriptor(self) -> dict:
        if self.kind == "blue-box":
            return {"type": "blue-box", "summand": self.summand}
        if self.kind == "gramain":
            return {"type": "gramain"}
        if self.kind == "compose":
            return {"type": "compose", "of": [p.descriptor() for p in self.parts]}
        return {"type": "power", "base": self.base.descriptor(), "n": self.n}


def _power(r: Resolved, k: int) -> Resolved:
    out = identity(r.basepoint)
    for _ in range(k):
        out = r.then(out)
    return out


def make_action(spec: dict | str, d: KnotDiagram) -> LoopAction:
    """Resolve an action descriptor against ``d``."""
    if isinstance(spec, str):
        try:
            spec = json.loads(spec)
        except json.JSONDecodeError as exc:
            raise InvalidAction(f"action is not valid JSON: {exc}") from None
    if not isinstance(spec, dict) or "type" not in spec:
        raise InvalidAction(f"action descriptor must be an object with a 'type': {spec!r}")
    b = d.basepoint
    kind = spec["type"]
    if kind == "blue-box":
        tag = spec.get("summand")
        if not isinstance(tag, str):
            raise InvalidAction("blue-box needs a 'summand' label")
        if not d.crossings:
            # Nothing to slide around: every summand of the unknot is trivial.
            return LoopAction(kind, identity(b), identity(b), summand=tag)
        ell = tuple(longitude_passes(d, tag))
        rev = ell[::-1]
        tagged = [a for a, t in d.tags if t == tag]
        fwd = tuple((s, rev + (s,) + ell) for s in tagged if ell)
        bwd = tuple((s, ell + (s,) + rev) for s in tagged if ell)
        return LoopAction(kind, Resolved(b, subst=fwd), Resolved(b, subst=bwd), summand=tag)
    if kind == "gramain":
        r = Resolved(b, prefix=(b,), suffix=(b,))
        return LoopAction(kind, r, r)
    if kind == "compose":
        of = spec.get("of")
        if not isinstance(of, list):
            raise InvalidAction("compose needs a list 'of'")
        parts = tuple(make_action(p, d) for p in of)
        fwd, bwd = identity(b), identity(b)
        for p in reversed(parts):
            fwd = p.resolved.then(fwd)
        for p in parts:
            bwd = p.inverse.then(bwd)
        return LoopAction(kind, fwd, bwd, parts=parts)
    if kind == "power":
        n = spec.get("n")
        if isinstance(n, bool) or not isinstance(n, int) or "base" not in spec:
            raise InvalidAction("power needs a 'base' action and an integer 'n'")
        base = make_action(spec["base"], d)
        f, g = (base.resolved, base.inverse) if n >= 0 else (base.inverse, base.resolved)
        return LoopAction(kind, _power(f, abs(n)), _power(g, abs(n)), base=base, n=n)
    raise InvalidAction(f"unknown action type {kind!r}")


def apply_action(a: LoopAction, w: PassWord) -> PassWord:
    b = a.resolved.basepoint
    if not w.is_loop_at(b):
        raise NotABasedLoop(f"{w} is not a loop at the basepoint {b}")
    return PassWord(b, a.resolved.apply(w.passes), b)


@dataclass(frozen=True)
class MonodromyReport:
    """Fixed and moved generators.

    With ``method == "groebner"`` every generator is decided by comparing
    normal forms.  With ``method == "hom"`` only a verified homomorphism was
    available: ``moved`` lists the generators it separates (their images carry
    no normal form) and the rest are ``undecided`` rather than fixed.
    """

    fixed: tuple[Generator, ...]
    moved: tuple[tuple[Generator, Gf2Poly | None], ...]
    images: dict = field(compare=False, repr=False)
    certificate: Any = None
    method: str = "groebner"
    undecided: tuple[Generator, ...] = ()

    @property
    def verdict(self) -> str:
        if self.moved:
            return "nontrivial"
        return "undecided" if self.undecided else "trivial"

    def to_dict(self) -> dict:
        out: dict = {"verdict": self.verdict, "method": self.method}
        if self.method == "groebner":
            out["fixed"] = [str(g) for g in self.fixed]
            out["moved"] = [{"generator": str(g), "image": str(p)} for g, p in self.moved]
        else:
            out["moved"] = [str(g) for g, _ in self.moved]
            out["undecided"] = len(self.undecided)
        if self.certificate is not None:
            out["certificate"] = self.certificate.to_dict()
        return out


def image_of(d: KnotDiagram, A: CordAlgebra, a: LoopAction, g: Generator) -> Gf2Poly:
    """Normal form of the action applied to the lifted cord ``g``."""
    w = apply_action(a, lift_cord(d, g.i, g.j))
    return reduce(d, w, basis=A.basis)


def monodromy_report(
    d: KnotDiagram,
    A: CordAlgebra,
    a: LoopAction,
    certify: Callable[[dict], Any] | None = None,
) -> MonodromyReport:
    """Compare each generator with its image; ``certify`` (e.g. a bound
    :func:`cordalg.homsep.separate`) is called on the images when something
    moved."""
    fixed: list[Generator] = []
    moved: list[tuple[Generator, Gf2Poly]] = []
    images: dict[Generator, Gf2Poly] = {}
    for g in A.generators:
        img = image_of(d, A, a, g)
        images[g] = img
        if img == A.nf(Gf2Poly.gen(g.i, g.j)):
            fixed.append(g)
        else:
            moved.append((g, img))
    cert = certify(images) if (certify is not None and moved) else None
    return MonodromyReport(tuple(fixed), tuple(moved), images, cert)


def monodromy_by_hom(d: KnotDiagram, a: LoopAction, h: HomAssignment) -> MonodromyReport:
    """Monodromy seen through a verified hom, for diagrams whose Groebner
    basis is out of reach.

    A generator whose value differs from the value of its image loop is
    certainly moved, so a ``nontrivial`` verdict here is as sound as the
    Groebner one; equal values decide nothing.
    """
    if not h.verified:
        raise ValueError("monodromy_by_hom needs a verified homomorphism")
    m, T = h.mapping, h.target
    moved: list[tuple[Generator, None]] = []
    undecided: list[Generator] = []
    images: dict[Generator, tuple[int, int]] = {}
    cert = None
    for g in (Generator(i, j) for i in d.arcs for j in d.arcs if i < j):
        w = apply_action(a, lift_cord(d, g.i, g.j))
        before, after = m[g], evaluate_word(d, w, m, T)
        images[g] = (before, after)
        if before != after:
            moved.append((g, None))
            if cert is None:
                cert = WordCertificate(g, h, before, after, w)
        else:
            undecided.append(g)
    return MonodromyReport((), tuple(moved), images, cert, "hom", tuple(undecided))


def monodromy_through_projection(
    base: KnotDiagram,
    d: KnotDiagram,
    projection: dict[int, int],
    a: LoopAction,
    target: TargetRing | None = None,
    limit: int = 64,
) -> MonodromyReport | None:
    """Hom-certified monodromy on ``d`` using homs of ``base`` pulled back
    along an arc map (e.g. :func:`cordalg.diagram.cable_projection`).

    Every pulled-back hom is re-verified against all crossing relations of
    ``d`` before use, so nothing is taken on trust from the projection.
    Returns the first separating report in :func:`ranked_homs` order,
    preferring certificates whose before-value is the smaller one, or ``None``.
    """
    A = build_cord_algebra(base)
    rels = crossing_relations(d)
    gens = [Generator(i, j) for i in d.arcs for j in d.arcs if i < j]
    fallback = None
    for _, h in ranked_homs(A, target, limit):
        H = verify_on(d, rels, pullback(h, projection, gens), h.target)
        if not H.verified:
            continue
        r = monodromy_by_hom(d, a, H)
        if not r.moved:
            continue
        if r.certificate.value_before < r.certificate.value_after:
            return r
        fallback = fallback or r
    return fallback
