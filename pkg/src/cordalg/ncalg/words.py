"""Z2 formal sums of words in partly invertible symbols.

Letters are ``(symbol, +1 | -1)``.  Words are kept freely reduced, and any
maximal stretch made only of ``l`` and ``m`` letters is rewritten as
``l^p m^q`` since those two symbols commute.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from ..errors import MalformedDocument, MissingImage, NonInvertibleImage, NonInvertibleSymbol

COMMUTING = ("l", "m")
DEFAULT_INVERTIBLE = frozenset({"l", "m", "a"})

Letter = tuple  # (symbol, exponent)


def _push(stack: list, letter: Letter) -> None:
    sym, e = letter
    if sym in COMMUTING:
        p = q = 0
        while stack and stack[-1][0] in COMMUTING:
            s, x = stack.pop()
            if s == "l":
                p += x
            else:
                q += x
        if sym == "l":
            p += e
        else:
            q += e
        stack.extend([("l", 1 if p > 0 else -1)] * abs(p))
        stack.extend([("m", 1 if q > 0 else -1)] * abs(q))
    elif stack and stack[-1] == (sym, -e):
        stack.pop()
    else:
        stack.append(letter)


def normalize(letters: Iterable[Letter]) -> tuple[Letter, ...]:
    stack: list = []
    for x in letters:
        _push(stack, x)
    return tuple(stack)


@dataclass(frozen=True, order=True)
class NcWord:
    letters: tuple[Letter, ...] = ()

    @classmethod
    def of(cls, letters: Iterable[Letter]) -> NcWord:
        return cls(normalize(letters))

    def __mul__(self, other: NcWord) -> NcWord:
        return NcWord.of(self.letters + other.letters)

    def symbols(self) -> set[str]:
        return {s for s, _ in self.letters}

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        out: list[str] = []
        k = 0
        while k < len(self.letters):
            s, e = self.letters[k]
            r = k
            while r < len(self.letters) and self.letters[r] == (s, e):
                r += 1
            n = (r - k) * e
            out.append(s if n == 1 else f"{s}^{n}")
            k = r
        return " ".join(out)


ONE_WORD = NcWord()


def nc_inv(w: NcWord, invertible: Iterable[str] = DEFAULT_INVERTIBLE) -> NcWord:
    inv = set(invertible)
    for s in w.symbols():
        if s not in inv:
            raise NonInvertibleSymbol(f"symbol {s!r} is not declared invertible")
    return NcWord.of((s, -e) for s, e in reversed(w.letters))


@dataclass(frozen=True)
class NcPoly:
    words: frozenset = frozenset()
    invertible: frozenset = DEFAULT_INVERTIBLE

    def __post_init__(self):
        for w in self.words:
            for s, e in w.letters:
                if e < 0 and s not in self.invertible:
                    raise NonInvertibleSymbol(f"symbol {s!r} is not declared invertible")

    @classmethod
    def word(cls, w: NcWord | Sequence[Letter], invertible=DEFAULT_INVERTIBLE) -> NcPoly:
        if not isinstance(w, NcWord):
            w = NcWord.of(w)
        return cls(frozenset({w}), frozenset(invertible))

    @classmethod
    def one(cls, invertible=DEFAULT_INVERTIBLE) -> NcPoly:
        return cls(frozenset({ONE_WORD}), frozenset(invertible))

    @classmethod
    def zero(cls, invertible=DEFAULT_INVERTIBLE) -> NcPoly:
        return cls(frozenset(), frozenset(invertible))

    def _alphabet(self, other: NcPoly) -> frozenset:
        return self.invertible | other.invertible

    def __add__(self, other: NcPoly) -> NcPoly:
        return NcPoly(self.words ^ other.words, self._alphabet(other))

    def __mul__(self, other: NcPoly) -> NcPoly:
        acc: set = set()
        for u in self.words:
            for v in other.words:
                w = u * v
                acc ^= {w}
        return NcPoly(frozenset(acc), self._alphabet(other))

    def __bool__(self) -> bool:
        return bool(self.words)

    def __eq__(self, other) -> bool:
        return isinstance(other, NcPoly) and self.words == other.words

    def __hash__(self) -> int:
        return hash(self.words)

    def sorted_words(self) -> list[NcWord]:
        return sorted(self.words, key=lambda w: (len(w), str(w)))

    def __str__(self) -> str:
        if not self.words:
            return "0"
        return " + ".join(str(w) for w in self.sorted_words())


def nc_add(p: NcPoly, q: NcPoly) -> NcPoly:
    return p + q


def nc_mul(p: NcPoly, q: NcPoly) -> NcPoly:
    return p * q


def substitute(p: NcPoly, images: Mapping[str, NcPoly]) -> NcPoly:
    """Extend a symbol assignment to a ring map; ``x^-1`` goes to the inverse
    of the (single, invertible) word assigned to ``x``."""
    inverses: dict[str, NcPoly] = {}
    alphabet = frozenset().union(*(q.invertible for q in images.values())) if images else p.invertible
    for s in sorted({s for w in p.words for s in w.symbols()}):
        if s not in images:
            raise MissingImage(f"no image for symbol {s!r}")
    for s in sorted({s for w in p.words for s, e in w.letters if e < 0}):
        img = images[s]
        if len(img.words) != 1:
            raise NonInvertibleImage(f"image of {s!r} is not a single word: {img}")
        (w,) = img.words
        try:
            inverses[s] = NcPoly.word(nc_inv(w, img.invertible), img.invertible)
        except NonInvertibleSymbol:
            raise NonInvertibleImage(f"image of {s!r} is not invertible: {img}") from None
    out = NcPoly.zero(alphabet)
    for w in p.words:
        term = NcPoly.one(alphabet)
        for s, e in w.letters:
            term = term * (images[s] if e > 0 else inverses[s])
        out = out + term
    return out


# -- literals --------------------------------------------------------------------

_TOKENS = re.compile(r"\s*(?:([A-Za-z])|(\d+)|(\^)\s*(-?\d+)|([()+]))")


def parse_nc(text: str, invertible: Iterable[str] = DEFAULT_INVERTIBLE) -> NcPoly:
    """Parse sums of products such as ``"1 + m + l m^5 s m^-3 s m^-1"`` or
    ``"(1+m)(a+m) m^-1 a^-1"``.  Symbols are single letters."""
    inv = frozenset(invertible)
    toks: list[tuple[str, str]] = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKENS.match(text, pos)
        if not m or m.end() == pos:
            raise MalformedDocument(f"cannot parse {text!r} at position {pos}")
        if m.group(1):
            toks.append(("sym", m.group(1)))
        elif m.group(2):
            toks.append(("num", m.group(2)))
        elif m.group(3):
            toks.append(("pow", m.group(4)))
        else:
            toks.append((m.group(5), m.group(5)))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    k = 0

    def peek():
        return toks[k][0] if k < len(toks) else None

    def expr() -> NcPoly:
        nonlocal k
        out = term()
        while peek() == "+":
            k += 1
            out = out + term()
        return out

    def term() -> NcPoly:
        out = NcPoly.one(inv)
        seen = False
        while peek() in ("sym", "num", "("):
            out = out * factor()
            seen = True
        if not seen:
            raise MalformedDocument(f"empty term in {text!r}")
        return out

    def factor() -> NcPoly:
        nonlocal k
        kind, val = toks[k]
        k += 1
        if kind == "sym":
            base = NcPoly.word([(val, 1)], inv)
        elif kind == "num":
            if val not in ("0", "1"):
                raise MalformedDocument(f"coefficient {val} is not in Z2")
            base = NcPoly.one(inv) if val == "1" else NcPoly.zero(inv)
        else:
            base = expr()
            if peek() != ")":
                raise MalformedDocument(f"unbalanced parentheses in {text!r}")
            k += 1
        if peek() == "pow":
            n = int(toks[k][1])
            k += 1
            if n < 0:
                if len(base.words) != 1:
                    raise MalformedDocument("only single words can be inverted")
                (w,) = base.words
                base = NcPoly.word(nc_inv(w, inv), inv)
                n = -n
            out = NcPoly.one(inv)
            for _ in range(n):
                out = out * base
            return out
        return base

    if not toks:
        raise MalformedDocument("empty expression")
    result = expr()
    if k != len(toks):
        raise MalformedDocument(f"trailing input in {text!r}")
    return result
