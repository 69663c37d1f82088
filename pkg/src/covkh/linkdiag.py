"""Oriented link diagrams as PD codes and their hypercube resolutions.

A crossing ``X(a,b,c,d)`` lists the four arc labels counterclockwise
starting at the incoming under-strand.  Resolving every crossing by a
bit vector r in {0,1}^N turns the diagram into a disjoint union of
circles; this module traces those circles, classifies each hypercube
edge as a merge or a split, and tracks the per-crossing surgery-arc
data (planar side and tail/head ordering) that the sign cochains and
the ladybug analysis consume.

Slot conventions (position = index into the crossing tuple):
  * position 0 is the head of the incoming under-strand, position 2 its tail;
  * the 0-resolution joins positions (0,1) and (2,3), the 1-resolution
    joins (0,3) and (1,2);
  * a crossing is positive when its over-strand runs from position 3 to
    position 1.

Planarity itself is not verified; PD codes of genuinely planar diagrams
carry a consistent local embedding (the counterclockwise order at each
crossing) and that is all the tracing relies on.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from functools import lru_cache


class DiagramError(ValueError):
    """Raised for malformed PD codes or inconsistent orientations."""


# Corner arcs of each resolution, as frozensets of tuple positions.
PAIRING = {
    0: (frozenset({0, 1}), frozenset({2, 3})),
    1: (frozenset({0, 3}), frozenset({1, 2})),
}

# Side of the surgery chord seen when traversing a corner arc from
# position p_in to position p_out ("L" = chord on the left).
_CHORD_SIDE = {
    0: {(0, 1): "L", (1, 0): "R", (2, 3): "L", (3, 2): "R"},
    1: {(0, 3): "R", (3, 0): "L", (1, 2): "L", (2, 1): "R"},
}


@dataclass(frozen=True)
class PDCode:
    """A validated planar-diagram code plus optional crossing-free circles."""

    crossings: tuple[tuple[int, int, int, int], ...]
    extra_circles: int = 0
    # per crossing: True if the arc at position 1 is incoming (its head here)
    over_in_at_b: tuple[bool, ...] = field(default=())
    signs: tuple[int, ...] = field(default=())

    @property
    def n(self) -> int:
        return len(self.crossings)

    @property
    def n_plus(self) -> int:
        return sum(1 for s in self.signs if s == 1)

    @property
    def n_minus(self) -> int:
        return sum(1 for s in self.signs if s == -1)

    @property
    def writhe(self) -> int:
        return self.n_plus - self.n_minus

    def component_count(self) -> int:
        return _component_count(self) + self.extra_circles

    def to_json(self) -> str:
        return json.dumps(
            {"crossings": [list(c) for c in self.crossings],
             "extra_circles": self.extra_circles},
            sort_keys=True,
        )


def make_pd(crossings, extra_circles: int = 0) -> PDCode:
    """Validate raw crossing tuples and solve the arc orientations."""
    crossings = tuple(tuple(int(a) for a in c) for c in crossings)
    for c in crossings:
        if len(c) != 4:
            raise DiagramError(f"crossing {c} does not have 4 arc labels")
        if any(a < 1 for a in c):
            raise DiagramError(f"arc labels must be positive in {c}")
    if extra_circles < 0:
        raise DiagramError("extra circle count must be >= 0")

    counts: dict[int, int] = {}
    for c in crossings:
        for a in c:
            counts[a] = counts.get(a, 0) + 1
    bad = {a: k for a, k in counts.items() if k != 2}
    if bad:
        raise DiagramError(f"arc labels must occur exactly twice, got {bad}")
    if crossings:
        labels = sorted(counts)
        if labels != list(range(1, 2 * len(crossings) + 1)):
            raise DiagramError(
                f"arc labels must be 1..{2*len(crossings)}, got {labels}"
            )

    over_in_at_b = _solve_orientations(crossings)
    signs = tuple(-1 if over_in_at_b[i] else 1 for i in range(len(crossings)))
    return PDCode(crossings, extra_circles, over_in_at_b, signs)


def _solve_orientations(crossings) -> tuple[bool, ...]:
    """Decide, per crossing, which over-strand slot is incoming.

    Position 0 is always a head and position 2 always a tail; each arc
    must end up with exactly one head and one tail.  Constraints are
    propagated through shared arcs; components never forced by an
    under-strand get the positive-crossing default (incoming at 3).
    """
    n = len(crossings)
    slots_of_arc: dict[int, list[tuple[int, int]]] = {}
    for ci, c in enumerate(crossings):
        for pos, a in enumerate(c):
            slots_of_arc.setdefault(a, []).append((ci, pos))

    # head[(ci, pos)] True = the arc at this slot is incoming there.
    head: dict[tuple[int, int], bool] = {}

    def propagate(slot, value) -> None:
        stack = [(slot, value)]
        while stack:
            (ci, pos), val = stack.pop()
            cur = head.get((ci, pos))
            if cur is not None:
                if cur != val:
                    raise DiagramError(
                        f"orientation inconsistency at crossing {ci}, "
                        f"arc {crossings[ci][pos]}"
                    )
                continue
            head[(ci, pos)] = val
            if pos in (1, 3):
                other = 3 if pos == 1 else 1
                stack.append(((ci, other), not val))
            arc = crossings[ci][pos]
            for s in slots_of_arc[arc]:
                if s != (ci, pos):
                    stack.append((s, not val))

    for ci in range(n):
        propagate((ci, 0), True)
        propagate((ci, 2), False)
    for ci in range(n):
        if (ci, 1) not in head:
            propagate((ci, 3), True)  # free component: positive default

    for arc, slots in slots_of_arc.items():
        values = sorted(head[s] for s in slots)
        if values != [False, True]:
            raise DiagramError(f"arc {arc} lacks a head/tail pair")
    return tuple(head[(ci, 1)] for ci in range(n))


def _component_count(pd: PDCode) -> int:
    if not pd.crossings:
        return 0
    # Follow strands straight through crossings: 0 <-> 2 and 1 <-> 3.
    parent: dict[int, int] = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        parent[find(x)] = find(y)

    for a, b, c, d in pd.crossings:
        union(a, c)
        union(b, d)
    return len({find(a) for c in pd.crossings for a in c})


# -- text / JSON ingestion ---------------------------------------------

_X_RE = re.compile(r"X\(\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\)")
_UNKNOT_RE = re.compile(r"UNKNOT\s+(\d+)")


def parse_pd(text: str) -> PDCode:
    """Parse `X(a,b,c,d)` tokens plus an optional `UNKNOT k` token.

    A JSON object {"crossings": [[a,b,c,d], ...], "extra_circles": k}
    is accepted as an alternative encoding.
    """
    text = text.strip()
    if not text:
        raise DiagramError("empty diagram text")
    if text.startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise DiagramError(f"bad JSON diagram: {exc}") from exc
        return make_pd(data.get("crossings", []), data.get("extra_circles", 0))

    crossings = []
    extra = 0
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _X_RE.match(text, pos)
        if m:
            crossings.append(tuple(int(g) for g in m.groups()))
            pos = m.end()
            continue
        m = _UNKNOT_RE.match(text, pos)
        if m:
            extra += int(m.group(1))
            pos = m.end()
            continue
        raise DiagramError(f"cannot parse diagram near {text[pos:pos+20]!r}")
    return make_pd(crossings, extra)


# -- resolutions --------------------------------------------------------


@dataclass(frozen=True)
class Passage:
    """One traversal of a resolved crossing site by a circle."""

    crossing: int
    p_in: int
    p_out: int
    circle: int
    order: int  # position of this passage in its circle's cyclic walk

    @property
    def pair(self) -> frozenset[int]:
        return frozenset({self.p_in, self.p_out})


@dataclass(frozen=True)
class ResolvedState:
    """Circles of one hypercube vertex, with per-crossing passage data."""

    pd: PDCode
    r: tuple[int, ...]
    n_circles: int
    # passages[crossing] = (passage, passage) for the two corner arcs
    passages: tuple[tuple[Passage, Passage], ...]
    circle_lengths: tuple[int, ...]  # passages per circle, by circle id - 1

    def circles_at(self, crossing: int) -> tuple[int, int]:
        p1, p2 = self.passages[crossing]
        return (p1.circle, p2.circle)

    def chord_side(self, passage: Passage) -> str:
        res = self.r[passage.crossing]
        return _CHORD_SIDE[res][(passage.p_in, passage.p_out)]

    def arrow_pairs(self, crossing: int, bit: int) -> tuple[frozenset, frozenset]:
        """(tail corner arc, head corner arc) of the surgery arrow."""
        low, high = PAIRING[self.r[crossing]]
        # bit 0: tail on the (0,1)-type arc at res 0 / the (0,3) arc at res 1
        return (low, high) if bit == 0 else (high, low)

    def circle_min_arcs(self) -> tuple[int, ...]:
        return tuple(sorted(self._min_arc_by_circle()))

    def _min_arc_by_circle(self):
        mins: dict[int, int] = {}
        for pair in self.passages:
            for p in pair:
                arcs = [self.pd.crossings[p.crossing][p.p_in],
                        self.pd.crossings[p.crossing][p.p_out]]
                cur = mins.get(p.circle)
                m = min(arcs)
                mins[p.circle] = m if cur is None else min(cur, m)
        return [mins[c] for c in sorted(mins)]


def resolve(pd: PDCode, r: tuple[int, ...]) -> ResolvedState:
    """Trace the circles of the resolution r (deterministic circle ids)."""
    return _resolve_cached(pd, tuple(r))


@lru_cache(maxsize=100_000)
def _resolve_cached(pd: PDCode, r: tuple[int, ...]) -> ResolvedState:
    if len(r) != pd.n:
        raise DiagramError(f"resolution vector has length {len(r)}, want {pd.n}")
    if any(b not in (0, 1) for b in r):
        raise DiagramError("resolution entries must be 0 or 1")

    # Slot graph: every (crossing, position) slot has one arc partner
    # (the other occurrence of its label) and one corner partner.
    arc_partner: dict[tuple[int, int], tuple[int, int]] = {}
    slots_of_arc: dict[int, list[tuple[int, int]]] = {}
    for ci, c in enumerate(pd.crossings):
        for pos, a in enumerate(c):
            slots_of_arc.setdefault(a, []).append((ci, pos))
    for a, slots in slots_of_arc.items():
        s1, s2 = slots
        arc_partner[s1] = s2
        arc_partner[s2] = s1

    corner_partner: dict[tuple[int, int], tuple[int, int]] = {}
    for ci in range(pd.n):
        for pair in PAIRING[r[ci]]:
            p, q = sorted(pair)
            corner_partner[(ci, p)] = (ci, q)
            corner_partner[(ci, q)] = (ci, p)

    # Walk cycles.  Start each circle at the tail slot of its smallest
    # unvisited arc so ids and traversal directions are reproducible.
    visited: set[tuple[int, int]] = set()
    raw_circles: list[tuple[int, list[tuple]]] = []  # (min arc, passages)
    for arc in sorted(slots_of_arc):
        s_start = None
        for s in slots_of_arc[arc]:
            if s not in visited:
                s_start = s
                break
        if s_start is None:
            continue
        min_arc = arc
        passages: list[tuple[int, int, int]] = []  # (crossing, p_in, p_out)
        slot = s_start
        while True:
            # arc step: jump to the other end of the current arc
            visited.add(slot)
            slot = arc_partner[slot]
            visited.add(slot)
            min_arc = min(min_arc, pd.crossings[slot[0]][slot[1]])
            # corner step: cross the resolved site
            nxt = corner_partner[slot]
            passages.append((slot[0], slot[1], nxt[1]))
            slot = nxt
            if slot == s_start:
                break
        raw_circles.append((min_arc, passages))

    raw_circles.sort(key=lambda t: t[0])
    n_arc_circles = len(raw_circles)
    passage_map: dict[tuple[int, frozenset], Passage] = {}
    lengths = []
    for cid0, (_, passages) in enumerate(raw_circles):
        lengths.append(len(passages))
        for order, (ci, p_in, p_out) in enumerate(passages):
            p = Passage(ci, p_in, p_out, cid0 + 1, order)
            passage_map[(ci, frozenset({p_in, p_out}))] = p

    per_crossing = []
    for ci in range(pd.n):
        pair_a, pair_b = PAIRING[r[ci]]
        per_crossing.append((passage_map[(ci, pair_a)], passage_map[(ci, pair_b)]))

    lengths.extend([0] * pd.extra_circles)
    return ResolvedState(
        pd=pd,
        r=tuple(r),
        n_circles=n_arc_circles + pd.extra_circles,
        passages=tuple(per_crossing),
        circle_lengths=tuple(lengths),
    )


# -- saddles -------------------------------------------------------------


@dataclass(frozen=True)
class Saddle:
    """Classification of the edge r -> r + e_i, with circle bookkeeping.

    For a split, (out1, out2) is ordered by the arc orientation at the
    1-resolved site: the surgery arrow points from out1 to out2.  The
    relabel map sends every surviving circle id at r to its id at r+e_i.
    """

    kind: str  # "merge" | "split"
    crossing: int
    inputs: tuple[int, ...]
    outputs: tuple[int, ...]
    relabel: dict[int, int]

    @property
    def merged(self) -> int:
        assert self.kind == "merge"
        return self.outputs[0]

    @property
    def split_pair(self) -> tuple[int, int]:
        assert self.kind == "split"
        return (self.outputs[0], self.outputs[1])


def saddle(pd: PDCode, r: tuple[int, ...], i: int,
           arc_orient: tuple[int, ...] | None = None) -> Saddle:
    """Classify the hypercube edge r -> r + e_i."""
    r = tuple(r)
    if r[i] != 0:
        raise DiagramError(f"edge requires r[{i}] = 0, got {r}")
    bits = arc_orient if arc_orient is not None else (0,) * pd.n
    before = resolve(pd, r)
    r_after = r[:i] + (1,) + r[i + 1:]
    after = resolve(pd, r_after)

    c_before = set(before.circles_at(i))
    c_after = set(after.circles_at(i))

    # Untouched circles match by their minimal arc label.
    def min_arc_index(state):
        out = {}
        mins = state._min_arc_by_circle()
        for cid0, m in enumerate(mins):
            out[cid0 + 1] = m
        return out

    before_min = min_arc_index(before)
    after_min = min_arc_index(after)
    after_by_min = {m: c for c, m in after_min.items()}
    relabel = {}
    for c, m in before_min.items():
        if c not in c_before:
            if m not in after_by_min:
                raise DiagramError(
                    f"internal: circle with min arc {m} lost across edge "
                    f"{r} -> {r_after} at crossing {i}"
                )
            relabel[c] = after_by_min[m]
    # Extra crossing-free circles keep their (trailing) ids.
    n_arcs_before = len(before_min)
    n_arcs_after = len(after_min)
    for k in range(pd.extra_circles):
        relabel[n_arcs_before + 1 + k] = n_arcs_after + 1 + k

    if len(c_before) == 2 and len(c_after) == 1:
        merged = next(iter(c_after))
        ins = tuple(sorted(c_before))
        return Saddle("merge", i, ins, (merged,), relabel)
    if len(c_before) == 1 and len(c_after) == 2:
        src = next(iter(c_before))
        tail_pair, head_pair = after.arrow_pairs(i, bits[i])
        p1, p2 = after.passages[i]
        by_pair = {p1.pair: p1.circle, p2.pair: p2.circle}
        out1, out2 = by_pair[tail_pair], by_pair[head_pair]
        if out1 == out2:
            raise DiagramError(
                f"internal: split at crossing {i} produced one circle"
            )
        return Saddle("split", i, (src,), (out1, out2), relabel)
    raise DiagramError(
        f"edge at crossing {i} from {r} changes circles {c_before} -> "
        f"{c_after}; expected a merge or a split"
    )


def resolution_vectors(n: int):
    """All 2^n resolutions in weight-then-lex order."""
    vecs = []
    for mask in range(2**n):
        vecs.append(tuple((mask >> k) & 1 for k in range(n)))
    vecs.sort(key=lambda v: (sum(v), v))
    return vecs


def weight(r: tuple[int, ...]) -> int:
    return sum(r)
