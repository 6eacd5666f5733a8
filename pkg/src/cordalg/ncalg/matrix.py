"""2x2 matrices over GF(2) and evaluation of noncommutative sums."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from ..errors import MalformedDocument, MissingImage, SingularImage
from .words import NcPoly

CONVENTIONS = ("ltr", "rtl")


@dataclass(frozen=True)
class Matrix2:
    a: int
    b: int
    c: int
    d: int

    @classmethod
    def of(cls, rows) -> Matrix2:
        (a, b), (c, d) = rows
        return cls(a & 1, b & 1, c & 1, d & 1)

    @classmethod
    def from_bits(cls, bits) -> Matrix2:
        """Row-major bits, as a list of four ints or a string like ``"0110"``."""
        if isinstance(bits, str):
            bits = [int(ch) for ch in bits if not ch.isspace()]
        bits = list(bits)
        if len(bits) != 4 or any(x not in (0, 1) for x in bits):
            raise MalformedDocument(f"a matrix needs four bits, got {bits!r}")
        return cls(*bits)

    @classmethod
    def identity(cls) -> Matrix2:
        return cls(1, 0, 0, 1)

    @classmethod
    def zero(cls) -> Matrix2:
        return cls(0, 0, 0, 0)

    def __add__(self, o: Matrix2) -> Matrix2:
        return Matrix2(self.a ^ o.a, self.b ^ o.b, self.c ^ o.c, self.d ^ o.d)

    def __matmul__(self, o: Matrix2) -> Matrix2:
        return Matrix2(
            (self.a & o.a) ^ (self.b & o.c),
            (self.a & o.b) ^ (self.b & o.d),
            (self.c & o.a) ^ (self.d & o.c),
            (self.c & o.b) ^ (self.d & o.d),
        )

    def det(self) -> int:
        return (self.a & self.d) ^ (self.b & self.c)

    def inverse(self) -> Matrix2:
        if not self.det():
            raise SingularImage(f"{self} is singular")
        # Over GF(2) with det 1 the adjugate is the inverse.
        return Matrix2(self.d, self.b, self.c, self.a)

    def rows(self) -> list[list[int]]:
        return [[self.a, self.b], [self.c, self.d]]

    def __bool__(self) -> bool:
        return any((self.a, self.b, self.c, self.d))

    def __str__(self) -> str:
        return f"({self.a} {self.b};{self.c} {self.d})"


def matrix_eval(p: NcPoly, rep: Mapping[str, Matrix2], convention: str = "ltr") -> Matrix2:
    """Sum over words of the product of letter images.

    ``ltr`` evaluates ``x1 x2 ... xk`` as ``M(x1) M(x2) ... M(xk)``; ``rtl``
    multiplies in the opposite order.
    """
    if convention not in CONVENTIONS:
        raise MalformedDocument(f"unknown convention {convention!r}; use ltr or rtl")
    for s in p.invertible:
        if s in rep and not rep[s].det():
            raise SingularImage(f"invertible symbol {s!r} maps to singular {rep[s]}")
    total = Matrix2.zero()
    for w in p.words:
        letters = w.letters if convention == "ltr" else w.letters[::-1]
        acc = Matrix2.identity()
        for s, e in letters:
            if s not in rep:
                raise MissingImage(f"no matrix for symbol {s!r}")
            m = rep[s] if e > 0 else rep[s].inverse()
            acc = acc @ m
        total = total + acc
    return total
