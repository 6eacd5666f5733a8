"""Cords and based loops as pass-words, reduced by the Z2 skein relation.

A pass-word ``(i, [s1, ..., sk], j)`` is a path that starts on the parallel
copy of arc ``i``, passes under arcs ``s1 .. sk`` in order, and ends on the
parallel copy of arc ``j``.  Over Z2 pushing a path through a strand gives

    f(i, [], j)         = a_{i,j}
    f(i, [s] + rest, j) = a_{i,s} f(s, rest, j) + f(i, rest, j)
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence

from .diagram import KnotDiagram
from .errors import EndpointMismatch, InvalidPassWord
from .gf2poly import Gf2Poly, GroebnerBasis


@dataclass(frozen=True)
class PassWord:
    start: int
    passes: tuple[int, ...]
    end: int

    def __post_init__(self):
        if not isinstance(self.passes, tuple):
            object.__setattr__(self, "passes", tuple(self.passes))

    def is_loop_at(self, b: int) -> bool:
        return self.start == b and self.end == b

    def __str__(self) -> str:
        return f"{self.start} [{' '.join(map(str, self.passes))}] {self.end}"


def loop(d: KnotDiagram, passes: Sequence[int]) -> PassWord:
    return PassWord(d.basepoint, tuple(passes), d.basepoint)


def check(d: KnotDiagram, w: PassWord) -> None:
    for a in (w.start, w.end, *w.passes):
        if a not in d.arcs:
            raise InvalidPassWord(f"arc {a} in {w} is not an arc of the diagram")


def reverse(w: PassWord) -> PassWord:
    return PassWord(w.end, w.passes[::-1], w.start)


def concat(w1: PassWord, w2: PassWord) -> PassWord:
    if w1.end != w2.start:
        raise EndpointMismatch(f"{w1} ends on arc {w1.end} but {w2} starts on {w2.start}")
    return PassWord(w1.start, w1.passes + w2.passes, w2.end)


def reduce(d: KnotDiagram, w: PassWord, basis: GroebnerBasis | None = None) -> Gf2Poly:
    """The cord-algebra element of ``w``.

    The recurrence is evaluated back to front on the vector ``v[i] = f(i,
    suffix, end)``.  With a ``basis`` every entry is kept in normal form, which
    keeps long words small; the result is then the normal form rather than the
    raw representative.
    """
    check(d, w)
    a = Gf2Poly.gen
    v = {i: a(i, w.end) for i in d.arcs}
    if basis is not None:
        v = {i: basis.normal_form(p) for i, p in v.items()}
    for s in reversed(w.passes):
        vs = v[s]
        if not vs:
            continue
        for i in d.arcs:
            if i == s:
                continue
            t = a(i, s) * vs
            if basis is not None:
                t = basis.normal_form(t)
            v[i] = v[i] + t
    return v[w.start]


def reduce_leftmost(d: KnotDiagram, w: PassWord) -> Gf2Poly:
    """Direct left-to-right expansion of the recurrence; exponential, for tests."""
    check(d, w)

    def f(i: int, rest: tuple, j: int) -> Gf2Poly:
        if not rest:
            return Gf2Poly.gen(i, j)
        s = rest[0]
        return Gf2Poly.gen(i, s) * f(s, rest[1:], j) + f(i, rest[1:], j)

    return f(w.start, w.passes, w.end)


def path_passes(d: KnotDiagram, x: int, y: int) -> list[int]:
    """Arcs passed under by the parallel copy walking forward from arc x to y."""
    out: list[int] = []
    cur = x
    while cur != y:
        c = d.crossing_ending(cur)
        out.append(c.over)
        cur = c.under_out
    return out


def lift_cord(d: KnotDiagram, i: int, j: int) -> PassWord:
    """Based loop through the cord a_{i,j}: slide both endpoints forward along
    the parallel copy to the basepoint."""
    for x in (i, j):
        if x not in d.arcs:
            raise InvalidPassWord(f"arc {x} is not an arc of the diagram")
    b = d.basepoint
    return PassWord(b, tuple(path_passes(d, b, i) + path_passes(d, j, b)), b)


_WORD = re.compile(r"\s*(\d+)\s*\[([\d\s]*)\]\s*(\d+)\s*")
_LOOP = re.compile(r"\s*loop\s*:([\d\s]*)")


def parse_password(text: str, basepoint: int | None = None) -> PassWord:
    """Parse ``"i [s1 s2 ...] j"`` or ``"loop: s1 s2 ..."`` (needs ``basepoint``)."""
    m = _WORD.fullmatch(text)
    if m:
        return PassWord(int(m.group(1)), tuple(int(x) for x in m.group(2).split()),
                        int(m.group(3)))
    m = _LOOP.fullmatch(text)
    if m:
        if basepoint is None:
            raise InvalidPassWord("a loop literal needs a basepoint")
        return PassWord(basepoint, tuple(int(x) for x in m.group(1).split()), basepoint)
    raise InvalidPassWord(f"cannot parse pass-word {text!r}")
