"""Oriented knot diagrams as arcs and crossings.

An arc runs from one undercrossing to the next.  A crossing records its over
arc and the under arc entering (``under_in``) and leaving (``under_out``) it;
``under_out`` is always the traversal successor of ``under_in``.  The optional
``sign`` (+1/-1) is only needed to lay out the grids of a cable.

Summand tags mark which connect-summand an arc belongs to.  An arc is tagged by
the region in which it *starts*, i.e. the region of the crossing it leaves, so a
crossing lies in the summand of its ``under_out`` arc.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import (
    DisconnectedSummand,
    EmptyBraidOnMultipleStrands,
    EvenCableOrder,
    InvalidDiagram,
    InvalidPdCode,
    MalformedDocument,
    MultiComponent,
    UnknownTag,
)

ALL = "ALL"


@dataclass(frozen=True)
class Crossing:
    over: int
    under_in: int
    under_out: int
    sign: int | None = None

    def arcs(self) -> tuple[int, int, int]:
        return (self.over, self.under_in, self.under_out)

    def to_dict(self) -> dict:
        d = {"over": self.over, "under_in": self.under_in, "under_out": self.under_out}
        if self.sign is not None:
            d["sign"] = self.sign
        return d


@dataclass(frozen=True)
class KnotDiagram:
    n: int
    traversal: tuple[int, ...]
    crossings: tuple[Crossing, ...]
    tags: tuple[tuple[int, str], ...] = ()
    basepoint: int = 1
    _ends: dict = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        validate(self)
        object.__setattr__(self, "_ends", {c.under_in: c for c in self.crossings})

    # -- lookups ------------------------------------------------------------

    @property
    def arcs(self) -> range:
        return range(1, self.n + 1)

    def crossing_ending(self, arc: int) -> Crossing:
        """The crossing at which ``arc`` passes under and stops."""
        return self._ends[arc]

    def successor(self, arc: int) -> int:
        k = self.traversal.index(arc)
        return self.traversal[(k + 1) % self.n]

    def tag_of(self, arc: int) -> str | None:
        return dict(self.tags).get(arc)

    def tag_labels(self) -> list[str]:
        seen: list[str] = []
        for _, t in self.tags:
            if t not in seen:
                seen.append(t)
        return seen

    def walk(self, start: int | None = None) -> list[tuple[int, Crossing]]:
        """Arcs from ``start`` (default: basepoint) in traversal order, each
        paired with the crossing that ends it."""
        start = self.basepoint if start is None else start
        k = self.traversal.index(start)
        order = self.traversal[k:] + self.traversal[:k]
        if not self.crossings:
            return []
        return [(a, self._ends[a]) for a in order]

    # -- serialization --------------------------------------------------------

    def to_document(self) -> dict:
        doc: dict = {"arcs": self.n}
        if list(self.traversal) != list(range(1, self.n + 1)):
            doc["traversal"] = list(self.traversal)
        doc["crossings"] = [c.to_dict() for c in self.crossings]
        if self.tags:
            doc["tags"] = {str(a): t for a, t in self.tags}
        doc["basepoint"] = self.basepoint
        return doc

    def dumps(self) -> str:
        """The document as JSON with one crossing per line."""
        doc = self.to_document()
        lines = ["{", f'  "arcs": {doc["arcs"]},']
        if "traversal" in doc:
            lines.append(f'  "traversal": {json.dumps(doc["traversal"])},')
        rows = [f"    {json.dumps(c)}" for c in doc["crossings"]]
        lines.append('  "crossings": [' + ("\n" + ",\n".join(rows) + "\n  ]," if rows else "],"))
        if "tags" in doc:
            lines.append(f'  "tags": {json.dumps(doc["tags"])},')
        lines.append(f'  "basepoint": {doc["basepoint"]}')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_pd_code(self) -> list[tuple[int, int, int, int]]:
        """PD code with edges numbered along the orientation.

        The native format does not record where along an arc its
        overcrossings sit, so they are emitted in crossing-list order; merging
        the over-edges back recovers the same arcs either way.
        """
        if not self.crossings:
            return []
        overs: dict[int, list[int]] = {a: [] for a in self.arcs}
        for idx, c in enumerate(self.crossings):
            overs[c.over].append(idx)
        first_edge: dict[int, int] = {}
        last_edge: dict[int, int] = {}
        over_edges: dict[int, tuple[int, int]] = {}
        label = 0
        for a in self.traversal:
            label += 1
            first_edge[a] = label
            for idx in overs[a]:
                over_edges[idx] = (label, label + 1)
                label += 1
            last_edge[a] = label
        total = label
        out = []
        for idx, c in enumerate(self.crossings):
            e_in, e_out = over_edges[idx]
            e_out = (e_out - 1) % total + 1
            a, cc = last_edge[c.under_in], first_edge[c.under_out]
            if c.sign == 1:
                out.append((a, e_out, cc, e_in))
            else:
                out.append((a, e_in, cc, e_out))
        return out


def _fail(msg: str) -> None:
    raise InvalidDiagram(msg)


def validate(d: KnotDiagram) -> None:
    n = d.n
    if not isinstance(n, int) or n < 1:
        _fail(f"arc count must be a positive integer, got {n!r}")
    arcs = set(range(1, n + 1))
    if len(d.traversal) != n or set(d.traversal) != arcs:
        _fail(f"traversal must list every arc 1..{n} exactly once")
    if n == 1:
        if d.crossings:
            _fail("a one-arc diagram cannot have crossings")
    elif len(d.crossings) != n:
        _fail(f"diagram with {n} arcs must have {n} crossings, has {len(d.crossings)}")
    pos = {a: k for k, a in enumerate(d.traversal)}
    seen_in: dict[int, int] = {}
    seen_out: dict[int, int] = {}
    for idx, c in enumerate(d.crossings):
        for name, a in (("over", c.over), ("under_in", c.under_in), ("under_out", c.under_out)):
            if a not in arcs:
                _fail(f"crossing {idx}: {name} arc {a} is not an arc of the diagram")
        if c.sign not in (None, 1, -1):
            _fail(f"crossing {idx}: sign must be +1 or -1")
        if c.under_in == c.under_out:
            _fail(f"crossing {idx}: under_in and under_out are both arc {c.under_in}")
        if c.under_in in seen_in:
            _fail(f"arc {c.under_in} is under_in at crossings {seen_in[c.under_in]} and {idx}")
        if c.under_out in seen_out:
            _fail(f"arc {c.under_out} is under_out at crossings {seen_out[c.under_out]} and {idx}")
        seen_in[c.under_in] = idx
        seen_out[c.under_out] = idx
        if d.traversal[(pos[c.under_in] + 1) % n] != c.under_out:
            _fail(
                f"crossing {idx}: arc {c.under_out} does not follow arc {c.under_in} "
                "in the traversal"
            )
    if d.basepoint not in arcs:
        _fail(f"basepoint {d.basepoint} is not an arc")
    if d.tags:
        tagged = dict(d.tags)
        if len(tagged) != len(d.tags):
            _fail("an arc is tagged twice")
        missing = arcs - set(tagged)
        if missing:
            _fail(f"tags present but arcs {sorted(missing)} are untagged")
        extra = set(tagged) - arcs
        if extra:
            _fail(f"tags name unknown arcs {sorted(extra)}")
        labels = {t for t in tagged.values()}
        if len(labels) > 1:
            runs = _cyclic_runs([tagged[a] for a in d.traversal])
            counts = {t: sum(1 for r in runs if r == t) for t in labels}
            if len(set(counts.values())) != 1:
                _fail(
                    "each summand tag must occupy the same number of contiguous "
                    f"stretches of the traversal, got {counts}"
                )


def _cyclic_runs(seq: Sequence) -> list:
    """Labels of maximal constant runs of a cyclic sequence."""
    if not seq:
        return []
    runs = [seq[0]]
    for x in seq[1:]:
        if x != runs[-1]:
            runs.append(x)
    if len(runs) > 1 and runs[0] == runs[-1]:
        runs.pop()
    return runs


def make_diagram(
    n: int,
    crossings: Iterable[Crossing | tuple],
    traversal: Sequence[int] | None = None,
    tags: dict[int, str] | None = None,
    basepoint: int = 1,
) -> KnotDiagram:
    cs = tuple(c if isinstance(c, Crossing) else Crossing(*c) for c in crossings)
    trav = tuple(traversal) if traversal is not None else tuple(range(1, n + 1))
    tg = tuple(sorted((int(a), str(t)) for a, t in (tags or {}).items()))
    return KnotDiagram(n, trav, cs, tg, basepoint)


def unknot() -> KnotDiagram:
    return make_diagram(1, [])


# -- native document -----------------------------------------------------------


def parse_diagram(text: str | dict) -> KnotDiagram:
    """Parse a native JSON diagram document (or an already-decoded dict)."""
    if isinstance(text, dict):
        doc = text
    else:
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise MalformedDocument(f"not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise MalformedDocument("diagram document must be a JSON object")
    unknown = set(doc) - {"arcs", "traversal", "crossings", "tags", "basepoint"}
    if unknown:
        raise MalformedDocument(f"unknown fields {sorted(unknown)}")
    if "arcs" not in doc or not isinstance(doc["arcs"], int) or isinstance(doc["arcs"], bool):
        raise MalformedDocument("field 'arcs' must be an integer")
    raw = doc.get("crossings", [])
    if not isinstance(raw, list):
        raise MalformedDocument("field 'crossings' must be a list")
    crossings = []
    for k, c in enumerate(raw):
        if isinstance(c, dict):
            try:
                crossings.append(
                    Crossing(_int(c["over"]), _int(c["under_in"]), _int(c["under_out"]),
                             _int(c["sign"]) if "sign" in c else None)
                )
            except KeyError as exc:
                raise MalformedDocument(f"crossing {k} lacks field {exc}") from None
        elif isinstance(c, list) and len(c) in (3, 4):
            crossings.append(Crossing(*(_int(x) for x in c)))
        else:
            raise MalformedDocument(f"crossing {k} must be an object or a 3-list")
    traversal = doc.get("traversal")
    if traversal is not None and not isinstance(traversal, list):
        raise MalformedDocument("field 'traversal' must be a list")
    tags = doc.get("tags") or {}
    if not isinstance(tags, dict):
        raise MalformedDocument("field 'tags' must be an object")
    try:
        tag_map = {int(a): str(t) for a, t in tags.items()}
    except ValueError:
        raise MalformedDocument("tag keys must be arc numbers") from None
    return make_diagram(
        doc["arcs"],
        crossings,
        traversal=[_int(a) for a in traversal] if traversal is not None else None,
        tags=tag_map,
        basepoint=_int(doc.get("basepoint", 1)),
    )


def _int(x) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise MalformedDocument(f"expected an integer, got {x!r}")
    return x


# -- PD codes -----------------------------------------------------------------


def from_pd_code(tuples: Sequence[Sequence[int]]) -> KnotDiagram:
    """Build a diagram from a PD code.

    Each tuple ``(a, b, c, d)`` lists edges counterclockwise from the incoming
    under-edge ``a``; ``c`` is the outgoing under-edge and ``{b, d}`` the
    over-edges.  The crossing is positive when the over strand enters at ``d``.
    """
    tuples = [tuple(t) for t in tuples]
    if not tuples:
        return unknot()
    c = len(tuples)
    occ: dict[int, list[tuple[int, int]]] = {}
    for x, t in enumerate(tuples):
        if len(t) != 4 or not all(isinstance(e, int) for e in t):
            raise InvalidPdCode(f"crossing {x} is not a 4-tuple of integers")
        for slot, e in enumerate(t):
            occ.setdefault(e, []).append((x, slot))
    if set(occ) != set(range(1, 2 * c + 1)):
        raise InvalidPdCode(f"edge labels must be exactly 1..{2 * c}")
    for e, places in occ.items():
        if len(places) != 2:
            raise InvalidPdCode(f"edge {e} appears {len(places)} times, expected 2")

    def other(e: int, here: tuple[int, int]) -> tuple[int, int]:
        a, b = occ[e]
        return b if a == here else a

    # Walk from the incoming under-edge of crossing 0.  ``head`` is the
    # (crossing, slot) where the current edge ends.
    start_edge = tuples[0][0]
    head = (0, 0)
    edges: list[int] = []
    passes: list[tuple[int, int]] = []  # (crossing, entry slot) after each edge
    signs: dict[int, int] = {}
    e = start_edge
    for _ in range(2 * c + 1):
        edges.append(e)
        x, slot = head
        passes.append(head)
        if slot == 2:
            raise InvalidPdCode(
                f"edge {e} runs into crossing {x} through its outgoing under slot"
            )
        if slot in (1, 3):
            signs[x] = 1 if slot == 3 else -1
        out_slot = (slot + 2) % 4
        nxt = tuples[x][out_slot]
        head = other(nxt, (x, out_slot))
        e = nxt
        if e == start_edge and head == (0, 0):
            break
    else:
        raise InvalidPdCode("edge walk does not close up")
    if len(edges) != 2 * c:
        raise MultiComponent(
            f"PD code closes after {len(edges)} of {2 * c} edges: a link, not a knot"
        )

    # Arcs break after edges that run into an under slot.
    k0 = edges.index(1)
    # Rotate so the arc containing edge 1 comes first.
    while True:
        prev = (k0 - 1) % len(edges)
        if passes[prev][1] == 0:
            break
        k0 = prev
        if k0 == edges.index(1):
            break
    order = list(range(k0, len(edges))) + list(range(0, k0))
    arc_of_edge: dict[int, int] = {}
    arc = 1
    ends: list[tuple[int, int]] = []  # (crossing, arc) for each under passage
    for pos, k in enumerate(order):
        arc_of_edge[edges[k]] = arc
        if passes[k][1] == 0:
            ends.append((passes[k][0], arc))
            arc += 1
    n = arc - 1
    if n == 1:
        # A single arc with one crossing is a Reidemeister-I kink.
        return unknot()
    crossings = []
    for x, t in enumerate(tuples):
        a, b, cc, d = t
        if arc_of_edge[b] != arc_of_edge[d]:
            raise InvalidPdCode(f"crossing {x}: over-edges {b} and {d} do not merge")
        crossings.append(
            Crossing(arc_of_edge[b], arc_of_edge[a], arc_of_edge[cc], signs.get(x))
        )
    return make_diagram(n, crossings)


# -- braids -------------------------------------------------------------------

_BRAID_TOKEN = re.compile(r"s(\d+)(\^-1)?")


def parse_braid(word: str | Sequence[str]) -> list[int]:
    """Signed generator indices, e.g. ``"s1 s2^-1"`` -> ``[1, -2]``."""
    tokens = word.split() if isinstance(word, str) else list(word)
    out = []
    for tok in tokens:
        m = _BRAID_TOKEN.fullmatch(tok)
        if not m or int(m.group(1)) < 1:
            raise MalformedDocument(f"bad braid token {tok!r}")
        k = int(m.group(1))
        out.append(-k if m.group(2) else k)
    return out


def from_braid_word(word: str | Sequence[str], strands: int | None = None) -> KnotDiagram:
    """Diagram of the closure of a braid.

    For ``sK`` the strand entering at position K+1 crosses over, which makes
    the crossing positive with strands oriented downward.
    """
    gens = parse_braid(word)
    width = max([abs(g) + 1 for g in gens], default=1)
    if strands is not None:
        if strands < width:
            raise MalformedDocument(f"braid needs at least {width} strands")
        width = strands
    if not gens:
        if width > 1:
            raise EmptyBraidOnMultipleStrands(f"empty braid on {width} strands")
        return unknot()
    touched = {abs(g) - 1 for g in gens} | {abs(g) for g in gens}
    if len(touched) != width:
        raise MultiComponent("some strand of the braid never crosses another")

    next_id = 0

    def fresh() -> int:
        nonlocal next_id
        next_id += 1
        return next_id

    top = [fresh() for _ in range(width)]
    pos = list(top)
    raw = []
    for g in gens:
        i = abs(g) - 1
        left, right = pos[i], pos[i + 1]
        nl, nr = fresh(), fresh()
        if g > 0:
            # over: right -> nl, under: left -> nr
            raw.append((left, nl, nr, right))
        else:
            # over: left -> nr, under: right -> nl
            raw.append((right, left, nl, nr))
        pos[i], pos[i + 1] = nl, nr
    # Close up: bottom edge at position p is the top edge at p.
    alias = {pos[p]: top[p] for p in range(width)}
    canon: dict[int, int] = {}
    pd = []
    for t in raw:
        row = []
        for e in t:
            e = alias.get(e, e)
            if e not in canon:
                canon[e] = len(canon) + 1
            row.append(canon[e])
        pd.append(tuple(row))
    return from_pd_code(pd)


# -- relabeling ----------------------------------------------------------------


def relabel(d: KnotDiagram, mapping: dict[int, int]) -> KnotDiagram:
    return make_diagram(
        d.n,
        [Crossing(mapping[c.over], mapping[c.under_in], mapping[c.under_out], c.sign)
         for c in d.crossings],
        traversal=[mapping[a] for a in d.traversal],
        tags={mapping[a]: t for a, t in d.tags},
        basepoint=mapping[d.basepoint],
    )


def normalize_labels(d: KnotDiagram, start: int | None = None) -> KnotDiagram:
    """Relabel so the traversal reads 1..n starting at ``start``."""
    start = d.basepoint if start is None else start
    k = d.traversal.index(start)
    order = d.traversal[k:] + d.traversal[:k]
    return relabel(d, {a: i + 1 for i, a in enumerate(order)})


def find_relabeling(d1: KnotDiagram, d2: KnotDiagram) -> dict[int, int] | None:
    """An arc bijection carrying d1's crossings onto d2's (signs ignored)."""
    if d1.n != d2.n or len(d1.crossings) != len(d2.crossings):
        return None
    target = {c.arcs() for c in d2.crossings}
    n = d1.n
    for r in range(n):
        m = {d1.traversal[k]: d2.traversal[(k + r) % n] for k in range(n)}
        if {(m[c.over], m[c.under_in], m[c.under_out]) for c in d1.crossings} == target:
            return m
    return None


# -- constructions --------------------------------------------------------------


def connected_sum(d1: KnotDiagram, a1: int, d2: KnotDiagram, a2: int) -> KnotDiagram:
    """Splice ``d2`` into arc ``a1`` of ``d1`` at arc ``a2``.

    Arc ``a1`` is cut just before it ends and ``a2`` just after it starts, so
    all overcrossings of both cut arcs land on the junction arc that starts in
    ``d1``.  New labels run through d1 (after ``a1``), that junction arc (the
    basepoint), d2 (after ``a2``), then the second junction arc.
    """
    if a1 not in d1.arcs:
        raise InvalidDiagram(f"arc {a1} not in first diagram")
    if a2 not in d2.arcs:
        raise InvalidDiagram(f"arc {a2} not in second diagram")
    if not d2.crossings:
        out = make_diagram(d1.n, d1.crossings, d1.traversal,
                           tags={a: "L1" for a in d1.arcs}, basepoint=a1)
        return normalize_labels(out, d1.successor(a1) if d1.n > 1 else a1)
    if not d1.crossings:
        out = make_diagram(d2.n, d2.crossings, d2.traversal,
                           tags={a: "L2" for a in d2.arcs}, basepoint=a2)
        return normalize_labels(out, d2.successor(a2))

    def after(d: KnotDiagram, a: int) -> list[int]:
        k = d.traversal.index(a)
        return list(d.traversal[k + 1:] + d.traversal[:k])

    rest1, rest2 = after(d1, a1), after(d2, a2)
    m1 = {a: i + 1 for i, a in enumerate(rest1)}
    x = len(rest1) + 1
    m2 = {a: x + 1 + i for i, a in enumerate(rest2)}
    y = x + len(rest2) + 1
    m1[a1] = x  # pieces of a1 other than its final stub
    m2[a2] = x  # a2 after the cut continues the junction arc
    n = y

    crossings = []
    for c in d1.crossings:
        ui = y if c.under_in == a1 else m1[c.under_in]
        crossings.append(Crossing(m1[c.over], ui, m1[c.under_out], c.sign))
    for c in d2.crossings:
        uo = y if c.under_out == a2 else m2[c.under_out]
        crossings.append(Crossing(m2[c.over], m2[c.under_in], uo, c.sign))
    tags = {a: "L1" for a in range(1, x + 1)}
    tags.update({a: "L2" for a in range(x + 1, y + 1)})
    return make_diagram(n, crossings, tags=tags, basepoint=x)


def cable(d: KnotDiagram, n: int, at: int) -> KnotDiagram:
    """Blackboard ``n``-parallel of ``d`` closed up by a cyclic shift on ``at``.

    Each crossing becomes an ``n x n`` grid; an under copy meets the over
    copies in the order forced by the crossing sign, so every crossing needs a
    sign.  The shift (``n - 1`` positive crossings, the last copy passing under
    the others) sits at the end of arc ``at``, so with a writhe-``w`` diagram
    the result is the ``(n, n w + 1)`` cable.  Arcs are tagged by the region
    they start in, so grid arcs inherit their under-out arc's tag and the shift
    arcs take the tag of the arc following ``at``.
    """
    return _cable(d, n, at)[0]


def cable_projection(d: KnotDiagram, n: int, at: int) -> dict[int, int]:
    """Arc map from ``cable(d, n, at)`` down to ``d``.

    A copy of arc ``x`` maps to ``x``; a piece of an under copy that has passed
    an odd number of over copies at crossing ``(i; j, k)`` maps to ``k``, an
    even number to ``j``; shift pieces map to ``at``.  Sending ``a_{x,y}`` to
    ``a_{f(x),f(y)}`` respects every crossing relation, so any homomorphism out
    of the cord algebra of ``d`` pulls back to one of the cable.
    """
    return _cable(d, n, at)[1]


def _cable(d: KnotDiagram, n: int, at: int) -> tuple[KnotDiagram, dict[int, int]]:
    if n < 1 or n % 2 == 0:
        raise EvenCableOrder(f"cable order must be odd and positive, got {n}")
    if at not in d.arcs:
        raise InvalidDiagram(f"arc {at} not in diagram")
    if n == 1:
        return d, {a: a for a in d.arcs}
    if not d.crossings:
        # Cable of the unknot diagram: just the shift gadget, an unknot.
        return unknot(), {1: 1}
    for idx, c in enumerate(d.crossings):
        if c.sign is None:
            raise InvalidDiagram(f"crossing {idx} has no sign; cabling needs signs")

    tag = dict(d.tags)
    succ_base = {c.under_in: c.under_out for c in d.crossings}
    labels: dict[tuple, int] = {}

    def lab(key: tuple) -> int:
        if key not in labels:
            labels[key] = len(labels) + 1
        return labels[key]

    region: dict[int, str | None] = {}
    crossings: list[Crossing] = []
    nxt = d.successor(at)

    # Entry label at each position of the bundle entering crossing_ending(x).
    def entering(x: int) -> list[int]:
        if x != at:
            return [lab(("main", x, q)) for q in range(n)]
        # After the shift, position 0 carries the last copy (now the piece
        # that passed under copy 0) and position r+1 carries copy r.
        return [lab(("shift", 0))] + [lab(("main", at, r)) for r in range(n - 1)]

    # Shift gadget: the last copy dives under copies n-2, ..., 0.
    piece = lab(("main", at, n - 1))
    for r in range(n - 2, -1, -1):
        nxt_piece = lab(("shift", r))
        crossings.append(Crossing(lab(("main", at, r)), piece, nxt_piece, 1))
        region[nxt_piece] = tag.get(nxt)
        piece = nxt_piece

    for c in d.crossings:
        ins = entering(c.under_in)
        qs = range(n - 1, -1, -1) if c.sign == 1 else range(n)
        for p in range(n):
            cur = ins[p]
            qlist = list(qs)
            for k, q in enumerate(qlist):
                out = (
                    lab(("main", c.under_out, p))
                    if k == n - 1
                    else lab(("grid", c.under_in, p, k))
                )
                crossings.append(Crossing(lab(("main", c.over, q)), cur, out, c.sign))
                region[out] = tag.get(c.under_out)
                cur = out

    total = len(labels)
    succ = {c.under_in: c.under_out for c in crossings}
    start = lab(("main", d.basepoint, 0))
    order = [start]
    while True:
        a = succ[order[-1]]
        if a == start:
            break
        order.append(a)
        if len(order) > total:
            raise InvalidDiagram("cable walk does not close")
    if len(order) != total:
        raise MultiComponent(f"cable closes after {len(order)} of {total} arcs")
    m = {a: i + 1 for i, a in enumerate(order)}
    out_tags = {}
    if d.tags:
        for key, a in labels.items():
            if key[0] == "main":
                out_tags[m[a]] = tag[key[1]]
            else:
                out_tags[m[a]] = region[a]
    down = {}
    for key, a in labels.items():
        if key[0] == "main":
            down[m[a]] = key[1]
        elif key[0] == "shift":
            down[m[a]] = at
        else:
            _, u_in, _, k = key
            down[m[a]] = succ_base[u_in] if k % 2 == 0 else u_in
    out = make_diagram(
        total,
        [Crossing(m[c.over], m[c.under_in], m[c.under_out], c.sign) for c in crossings],
        tags=out_tags,
        basepoint=1,
    )
    return out, down


def longitude_passes(d: KnotDiagram, tag: str = ALL) -> list[int]:
    """Over arcs passed by the blackboard push-off of the knot or of a summand.

    For ``ALL`` this is every crossing in walk order from the basepoint.  For a
    tag it is the crossings lying in that summand (those whose ``under_out``
    carries the tag), with the push-off cutting straight across each junction.
    When the summand is traversed several times by parallel strands (a cable)
    every pass must read the same over arcs; one of them is returned.
    """
    walk = d.walk()
    if tag == ALL:
        return [c.over for _, c in walk]
    if tag not in d.tag_labels():
        raise UnknownTag(f"no arc carries tag {tag!r}")
    tags = dict(d.tags)
    marks = [tags[c.under_out] == tag for _, c in walk]
    overs = [c.over for _, c in walk]
    runs: list[list[int]] = []
    current: list[int] | None = None
    for inside, o in zip(marks, overs):
        if inside:
            if current is None:
                current = []
                runs.append(current)
            current.append(o)
        else:
            current = None
    if len(runs) <= 1:
        return runs[0] if runs else []
    if marks[0] and marks[-1]:
        if len(runs) == 2:
            # The basepoint sits inside the summand: read on past it.
            return runs[0] + runs[1]
        raise DisconnectedSummand(
            f"summand {tag!r} is traversed several times and the basepoint lies inside it"
        )
    if any(r != runs[0] for r in runs[1:]):
        raise DisconnectedSummand(
            f"summand {tag!r} splits into {len(runs)} stretches with different passes"
        )
    return runs[0]
