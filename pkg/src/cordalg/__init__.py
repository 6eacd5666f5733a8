"""Z2 cord algebras of knot diagrams and the monodromy of loops of knots."""

from __future__ import annotations

from .cordring import CordAlgebra, build_cord_algebra, equal, nf
from .diagram import (
    ALL,
    Crossing,
    KnotDiagram,
    cable,
    connected_sum,
    from_braid_word,
    from_pd_code,
    longitude_passes,
    parse_diagram,
)
from .gf2poly import Generator, Gf2Poly, GroebnerBasis, buchberger, normal_form, parse_poly
from .monodromy import LoopAction, MonodromyReport, apply_action, make_action, monodromy_report
from .skein import PassWord, concat, lift_cord, reduce, reverse

__version__ = "0.1.0"

__all__ = [
    "ALL",
    "CordAlgebra",
    "Crossing",
    "Generator",
    "Gf2Poly",
    "GroebnerBasis",
    "KnotDiagram",
    "LoopAction",
    "MonodromyReport",
    "PassWord",
    "apply_action",
    "buchberger",
    "build_cord_algebra",
    "cable",
    "concat",
    "connected_sum",
    "equal",
    "from_braid_word",
    "from_pd_code",
    "lift_cord",
    "longitude_passes",
    "make_action",
    "monodromy_report",
    "nf",
    "normal_form",
    "parse_diagram",
    "parse_poly",
    "reduce",
    "reverse",
]
