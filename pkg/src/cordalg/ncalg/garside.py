"""Word problem in the trefoil group <a, m | m a m = a m a> = B3.

``a`` is sent to sigma_1 and ``m`` to sigma_2.  Elements are brought to left
normal form ``Delta^k x_1 ... x_r`` with ``x_i`` proper simple braids, which
for B3 are the permutation braids of S3 other than 1 and Delta.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from ..errors import MalformedDocument
from .words import NcPoly, NcWord

Perm = tuple[int, int, int]

IDENT: Perm = (0, 1, 2)
S1: Perm = (1, 0, 2)
S2: Perm = (0, 2, 1)
DELTA: Perm = (2, 1, 0)
SYMBOL = {"a": 1, "m": 2}
_GEN = {1: S1, 2: S2}


def pmul(p: Perm, q: Perm) -> Perm:
    """Product ``p`` then ``q``."""
    return tuple(q[p[x]] for x in range(3))  # type: ignore[return-value]


def length(p: Perm) -> int:
    return sum(1 for x in range(3) for y in range(x + 1, 3) if p[x] > p[y])


def tau(p: Perm) -> Perm:
    """Conjugation by Delta, which swaps sigma_1 and sigma_2."""
    return pmul(pmul(DELTA, p), DELTA)


def finishes(p: Perm) -> set[int]:
    return {i for i, s in _GEN.items() if length(pmul(p, s)) < length(p)}


def starts(p: Perm) -> set[int]:
    return {i for i, s in _GEN.items() if length(pmul(s, p)) < length(p)}


_WORDS = {IDENT: "", S1: "a", S2: "m", pmul(S1, S2): "a m", pmul(S2, S1): "m a", DELTA: "a m a"}


@dataclass(frozen=True)
class B3Normal:
    delta: int
    factors: tuple[Perm, ...]

    def __str__(self) -> str:
        parts = [f"D^{self.delta}"] if self.delta else []
        parts += [f"({_WORDS[f]})" for f in self.factors]
        return " ".join(parts) or "1"


def _left_weight(factors: list[Perm]) -> list[Perm]:
    changed = True
    while changed:
        changed = False
        for k in range(len(factors) - 1):
            x, y = factors[k], factors[k + 1]
            while True:
                movable = starts(y) - finishes(x)
                if not movable:
                    break
                i = min(movable)
                x, y = pmul(x, _GEN[i]), pmul(_GEN[i], y)
                changed = True
            factors[k], factors[k + 1] = x, y
    return factors


def _letters(w: NcWord | Iterable[tuple[str, int]]) -> list[tuple[str, int]]:
    letters = list(w.letters) if isinstance(w, NcWord) else list(w)
    for s, _ in letters:
        if s not in SYMBOL:
            raise MalformedDocument(f"symbol {s!r} is not a B3 generator (use a, m)")
    return letters


def b3_normal_form(w: NcWord | Iterable[tuple[str, int]]) -> B3Normal:
    k = 0
    pos: list[Perm] = []
    for s, e in _letters(w):
        i = SYMBOL[s]
        if e > 0:
            pos.append(_GEN[i])
        else:
            # sigma_i^-1 = Delta^-1 (Delta sigma_i^-1), and x Delta^-1 = Delta^-1 tau(x).
            pos = [tau(p) for p in pos]
            pos.append(_co(i))
            k -= 1
    factors = _left_weight(pos)
    while factors and factors[0] == DELTA:
        factors.pop(0)
        k += 1
    factors = [f for f in factors if f != IDENT]
    return B3Normal(k, tuple(factors))


def _co(i: int) -> Perm:
    """The simple element ``Delta sigma_i^-1``: sigma_1 sigma_2 or sigma_2 sigma_1."""
    return pmul(S1, S2) if i == 1 else pmul(S2, S1)


def b3_equal(u: NcWord, v: NcWord) -> bool:
    return b3_normal_form(u) == b3_normal_form(v)


def group_algebra_equal(p: NcPoly, q: NcPoly) -> bool:
    """Equality in Z2[B3]: every normal form occurs an even number of times in p + q."""
    parity: dict[B3Normal, int] = {}
    for w in (p + q).words:
        nf = b3_normal_form(w)
        parity[nf] = parity.get(nf, 0) ^ 1
    return not any(parity.values())


def group_algebra_normal(p: NcPoly) -> frozenset[B3Normal]:
    parity: dict[B3Normal, int] = {}
    for w in p.words:
        nf = b3_normal_form(w)
        parity[nf] = parity.get(nf, 0) ^ 1
    return frozenset(nf for nf, v in parity.items() if v)
