"""Bundled PD codes and diagram transforms for invariance pairs.

The codes are data, not asserted ground truth: the build validates each
one only by tracing (right number of crossings, arcs appearing twice,
expected component count).  Homological facts about them are always
established by the pipeline itself, never assumed from the names.
"""

from __future__ import annotations

from .linkdiag import DiagramError, PDCode, make_pd, parse_pd

# name -> (PD text, expected component count)
CORPUS: dict[str, tuple[str, int]] = {
    "unknot": ("UNKNOT 1", 1),
    "unknot_kink_pos": ("X(1,1,2,2)", 1),
    "unknot_kink_neg": ("X(1,2,2,1)", 1),
    "hopf_pos": ("X(1,3,2,4) X(3,1,4,2)", 2),
    "hopf_neg": ("X(1,4,2,3) X(3,2,4,1)", 2),
    "trefoil": ("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)", 1),
    "figure8": ("X(4,2,5,1) X(8,6,1,5) X(6,3,7,4) X(2,7,3,8)", 1),
    "5_1": ("X(1,6,2,7) X(3,8,4,9) X(5,10,6,1) X(7,2,8,3) X(9,4,10,5)", 1),
    "5_2": ("X(1,4,2,5) X(3,8,4,9) X(5,10,6,1) X(9,6,10,7) X(7,2,8,3)", 1),
    "6_1": ("X(1,4,2,5) X(7,10,8,11) X(3,9,4,8) X(9,3,10,2) X(5,12,6,1) "
            "X(11,6,12,7)", 1),
    "6_2": ("X(1,4,2,5) X(5,10,6,11) X(3,9,4,8) X(9,3,10,2) X(7,12,8,1) "
            "X(11,6,12,7)", 1),
    "6_3": ("X(4,2,5,1) X(8,4,9,3) X(12,9,1,10) X(10,5,11,6) X(6,11,7,12) "
            "X(2,8,3,7)", 1),
    "7_1": ("X(1,8,2,9) X(3,10,4,11) X(5,12,6,13) X(7,14,8,1) X(9,2,10,3) "
            "X(11,4,12,5) X(13,6,14,7)", 1),
    "7_2": ("X(1,4,2,5) X(3,10,4,11) X(5,14,6,1) X(7,12,8,13) X(11,8,12,9) "
            "X(13,6,14,7) X(9,2,10,3)", 1),
    "7_3": ("X(6,2,7,1) X(10,4,11,3) X(14,8,1,7) X(8,14,9,13) X(12,6,13,5) "
            "X(2,10,3,9) X(4,12,5,11)", 1),
    "7_4": ("X(1,4,2,5) X(3,8,4,9) X(5,12,6,13) X(7,14,8,1) X(9,2,10,3) "
            "X(11,6,12,7) X(13,10,14,11)", 1),
    "7_5": ("X(1,4,2,5) X(3,10,4,11) X(5,14,6,1) X(9,12,10,13) X(13,8,14,9) "
            "X(11,6,12,7) X(7,2,8,3)", 1),
    "7_6": ("X(1,4,2,5) X(5,12,6,13) X(3,9,4,8) X(9,3,10,2) X(11,14,12,1) "
            "X(13,6,14,7) X(7,10,8,11)", 1),
    "7_7": ("X(1,4,2,5) X(7,12,8,13) X(3,9,4,8) X(9,3,10,2) X(11,6,12,7) "
            "X(13,10,14,11) X(5,14,6,1)", 1),
}


def corpus_names() -> list[str]:
    return sorted(CORPUS)


def load(name: str) -> PDCode:
    """Parse a bundled code and run the arc-trace validation."""
    if name not in CORPUS:
        raise KeyError(f"unknown corpus diagram {name!r}")
    text, components = CORPUS[name]
    pd = parse_pd(text)
    if pd.component_count() != components:
        raise DiagramError(
            f"corpus entry {name} traces to {pd.component_count()} "
            f"components, recorded {components}")
    return pd


def arc_head_slot(pd: PDCode, arc: int) -> tuple[int, int]:
    """(crossing, position) where the arc arrives."""
    for ci, c in enumerate(pd.crossings):
        for pos, a in enumerate(c):
            if a != arc:
                continue
            if pos == 0:
                return (ci, pos)
            if pos == 2:
                continue
            over_in_b = pd.over_in_at_b[ci]
            if (pos == 1 and over_in_b) or (pos == 3 and not over_in_b):
                return (ci, pos)
    raise DiagramError(f"arc {arc} has no head occurrence")


def add_kink(pd: PDCode, arc: int, sign: int) -> PDCode:
    """Insert a Reidemeister-I kink of the given sign on an arc.

    The arc keeps its label out of its tail; the kink introduces a loop
    label and a fresh label for the stretch into the old head slot.
    """
    if not pd.crossings:
        raise DiagramError("cannot kink a crossing-free diagram")
    loop = 2 * pd.n + 1
    out = 2 * pd.n + 2
    ci, pos = arc_head_slot(pd, arc)
    crossings = [list(c) for c in pd.crossings]
    crossings[ci][pos] = out
    if sign == 1:
        kink = (arc, out, loop, loop)
    elif sign == -1:
        kink = (arc, loop, loop, out)
    else:
        raise ValueError("kink sign must be +-1")
    return make_pd([tuple(c) for c in crossings] + [kink], pd.extra_circles)
