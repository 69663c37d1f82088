"""The covering sl2 hypercube: twisted exterior algebra and signs.

Each resolution r gets the free R-module on dotted subsets of its
circles.  Words are normalized to strictly decreasing letter order with
the relation a_i a_j = XY a_j a_i (so every adjacent transposition costs
XY) and a_i^2 = 0.  Merges substitute letters, splits multiply by
(a_{i1} + XY a_{i2}) on the left, both of quantum degree -1.

Raw edge maps only commute up to the unit 2-cochain psi; this module
solves psi algebraically square by square, falling back to the tabulated
ladybug values (where the composite coefficient 1 + XY is not a unit),
and integrates a sign assignment eps with del eps = psi so that the
scaled cube commutes.  A further Koszul (-1) per edge makes squares
anticommute, and the usual q^{|r| - N_-} t^{|r| - N_-} shifts make the
differential degree-preserving.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from . import intlinalg
from .linkdiag import (
    DiagramError,
    PDCode,
    ResolvedState,
    Saddle,
    resolve,
    saddle,
)
from .polycomplex import (
    BasisVector,
    ChainComplexR,
    Cochain1,
    FreeModule,
    HomogeneousPolycomplex,
    RMatrix,
)
from .ring import (
    DOT_DEG,
    ONE,
    XY,
    RingElement,
    UnitMonomial,
    Z2Degree,
    ZIP_DEG,
    UNZIP_DEG,
    koszul_sign,
)

VARIANT_X = "X"
VARIANT_Y = "Y"


def edge_degree(pd: PDCode, i: int) -> Z2Degree:
    """Foam degree of hypercube direction i: zip if positive, else unzip."""
    return ZIP_DEG if pd.signs[i] == 1 else UNZIP_DEG


def parallel_corner(pd: PDCode) -> tuple[int, ...]:
    """The resolution whose web has no double edges."""
    return tuple(1 if s == -1 else 0 for s in pd.signs)


def splits_from_origin(pd: PDCode, r: tuple[int, ...]) -> int:
    n_r = resolve(pd, r).n_circles
    n_0 = resolve(pd, (0,) * pd.n).n_circles
    return (sum(r) + n_r - n_0) // 2


def deg_beta(pd: PDCode, r: tuple[int, ...]) -> Z2Degree:
    """Z^2-degree of the undotted cup foam at vertex r.

    Normalized so the resolution with no double edges, with n circles,
    gets (0, n); every edge then shifts it by its zip/unzip degree, plus
    (1,1) across splits.
    """
    v = parallel_corner(pd)
    base = Z2Degree(0, resolve(pd, v).n_circles)
    const = base - _path_part(pd, v)
    return const + _path_part(pd, r)


def _path_part(pd: PDCode, r: tuple[int, ...]) -> Z2Degree:
    total = Z2Degree(0, 0)
    for i, bit in enumerate(r):
        if bit:
            total = total + edge_degree(pd, i)
    return total + splits_from_origin(pd, r) * Z2Degree(1, 1)


# -- twisted exterior bases and structural maps ---------------------------


def subsets_basis(n_circles: int) -> list[frozenset[int]]:
    """All dotted subsets of circles 1..n, ordered by (size, lex)."""
    ids = range(1, n_circles + 1)
    out: list[frozenset[int]] = []
    for k in range(n_circles + 1):
        for combo in combinations(ids, k):
            out.append(frozenset(combo))
    return out


def normalize_word(seq: list[int]) -> tuple[int, frozenset[int]] | None:
    """Sort a product of letters into decreasing order.

    Returns (number of transpositions mod 2, letter set), or None when a
    letter repeats (a_i^2 = 0).  Each transposition contributes XY.
    """
    if len(set(seq)) != len(seq):
        return None
    inversions = 0
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] < seq[j]:
                inversions += 1
    return inversions % 2, frozenset(seq)


def _word(delta: frozenset[int]) -> list[int]:
    return sorted(delta, reverse=True)


def merge_matrix(n_src: int, n_tgt: int, sdl: Saddle) -> RMatrix:
    """Structural matrix of the merge map on dotted subsets."""
    src = subsets_basis(n_src)
    tgt = subsets_basis(n_tgt)
    tgt_index = {d: i for i, d in enumerate(tgt)}
    c1, c2 = sdl.inputs
    full = dict(sdl.relabel)
    full[c1] = sdl.merged
    full[c2] = sdl.merged
    out = RMatrix(len(tgt), len(src))
    for col, delta in enumerate(src):
        if c1 in delta and c2 in delta:
            continue
        norm = normalize_word([full[x] for x in _word(delta)])
        if norm is None:
            continue
        parity, image = norm
        out.entries[(tgt_index[image], col)] = (XY ** parity).as_ring_element()
    return out


def split_matrix(n_src: int, n_tgt: int, sdl: Saddle,
                 style: str = "prepend") -> RMatrix:
    """Structural matrix of the split map on dotted subsets.

    `prepend` is the sl2 coproduct (a_{i1} + XY a_{i2}) p|_{c -> i1};
    `append` puts the new letter at the bottom of the word instead, the
    way a cup-foam picks up its new dot below the existing ones.
    """
    src = subsets_basis(n_src)
    tgt = subsets_basis(n_tgt)
    tgt_index = {d: i for i, d in enumerate(tgt)}
    (c,) = sdl.inputs
    i1, i2 = sdl.split_pair
    full = dict(sdl.relabel)
    full[c] = i1
    out = RMatrix(len(tgt), len(src))
    for col, delta in enumerate(src):
        substituted = [full[x] for x in _word(delta)]
        for letter, extra in ((i1, ONE), (i2, XY)):
            seq = [letter] + substituted if style == "prepend" \
                else substituted + [letter]
            norm = normalize_word(seq)
            if norm is None:
                continue
            parity, image = norm
            key = (tgt_index[image], col)
            val = out.entries.get(key, RingElement.zero()) \
                + (extra * XY**parity).as_ring_element()
            if val:
                out.entries[key] = val
            else:
                out.entries.pop(key, None)
    return out


def structural_edge(pd: PDCode, r: tuple[int, ...], i: int,
                    bits: tuple[int, ...],
                    style: str = "prepend") -> tuple[RMatrix, Saddle]:
    sdl = saddle(pd, r, i, bits)
    n_src = resolve(pd, r).n_circles
    r_after = r[:i] + (1,) + r[i + 1:]
    n_tgt = resolve(pd, r_after).n_circles
    if sdl.kind == "merge":
        return merge_matrix(n_src, n_tgt, sdl), sdl
    return split_matrix(n_src, n_tgt, sdl, style), sdl


# -- square classification -------------------------------------------------


LADYBUG_KINDS = ("ladybug-matched", "ladybug-mismatched")

# Value of psi_sl2 (variant X) per local arc presentation.
PSI_TABLE_X = {
    "disjoint-merges": ONE,
    "adjacent-merges": ONE,
    "parallel-chords-opposite": ONE,
    "parallel-chords-same": XY,
    "merge-split-disjoint": ONE,
    "merge-split-shared": ONE,
    "disjoint-splits": XY,
    "double-split-one-circle": XY,
    "ladybug-matched": ONE,
    "ladybug-mismatched": XY,
}


def psi_table_value(kind: str, variant: str = VARIANT_X) -> UnitMonomial:
    value = PSI_TABLE_X[kind]
    if variant == VARIANT_Y and kind in LADYBUG_KINDS:
        value = value * XY
    elif variant not in (VARIANT_X, VARIANT_Y):
        raise ValueError(f"unknown variant {variant!r}")
    return value


@dataclass(frozen=True)
class SquareClass:
    kind: str
    r: tuple[int, ...]
    k: int
    l: int


def classify_square(pd: PDCode, r: tuple[int, ...], k: int, l: int,
                    bits: tuple[int, ...]) -> SquareClass:
    """Local arc presentation of the square at r in directions k < l."""
    if not (r[k] == 0 and r[l] == 0 and k < l):
        raise DiagramError("square requires k < l and r_k = r_l = 0")
    state = resolve(pd, r)
    pk = state.passages[k]
    pl = state.passages[l]
    ck = {p.circle for p in pk}
    cl = {p.circle for p in pl}

    def tail_circle(crossing, passages):
        tail_pair, _ = state.arrow_pairs(crossing, bits[crossing])
        for p in passages:
            if p.pair == tail_pair:
                return p.circle
        raise DiagramError("internal: arrow pair not among passages")

    if len(ck) == 2 and len(cl) == 2:
        shared = ck & cl
        if not shared:
            kind = "disjoint-merges"
        elif len(shared) == 2:
            same = tail_circle(k, pk) == tail_circle(l, pl)
            kind = "parallel-chords-same" if same else "parallel-chords-opposite"
        else:
            kind = "adjacent-merges"
    elif len(ck) != len(cl):
        self_c = next(iter(ck if len(ck) == 1 else cl))
        merge_cs = cl if len(ck) == 1 else ck
        kind = "merge-split-shared" if self_c in merge_cs \
            else "merge-split-disjoint"
    else:  # both chords have both feet on one circle
        if ck != cl:
            kind = "disjoint-splits"
        else:
            kind = _one_circle_kind(state, k, l, bits)
    return SquareClass(kind, tuple(r), k, l)


def _one_circle_kind(state: ResolvedState, k: int, l: int,
                     bits: tuple[int, ...]) -> str:
    pk = state.passages[k]
    pl = state.passages[l]
    circle = pk[0].circle
    length = state.circle_lengths[circle - 1]
    ok = sorted(p.order for p in pk)
    inside = sum(1 for p in pl if ok[0] < p.order < ok[1])
    if inside != 1:
        return "double-split-one-circle"

    # Ladybug.  With the traversal oriented so the base chord hangs on
    # the left, the square is "matched" when walking forward from the
    # base chord's tail first meets the other chord's tail.
    sides_k = {state.chord_side(p) for p in pk}
    sides_l = {state.chord_side(p) for p in pl}
    if len(sides_k) != 1 or len(sides_l) != 1 or sides_k == sides_l:
        raise DiagramError(
            "internal: ladybug chords do not sit on opposite sides"
        )
    forward = sides_k == {"L"}
    tail_pair_k, _ = state.arrow_pairs(k, bits[k])
    tail_pair_l, _ = state.arrow_pairs(l, bits[l])
    start = next(p for p in pk if p.pair == tail_pair_k)
    by_order = {p.order: p for p in pk + pl}
    step = 1 if forward else -1
    pos = start.order
    for _ in range(length):
        pos = (pos + step) % length
        p = by_order.get(pos)
        if p is not None and p.crossing == l:
            matched = p.pair == tail_pair_l
            return "ladybug-matched" if matched else "ladybug-mismatched"
    raise DiagramError("internal: other ladybug chord not found on circle")


# -- psi and sign assignments ----------------------------------------------


def square_ratio(m_k_first: RMatrix, m_l_first: RMatrix) -> UnitMonomial | None:
    """Unit psi with (k-then-l composite) = psi * (l-then-k composite)."""
    return m_k_first.unit_ratio_to(m_l_first)


def psi_sl2(pd: PDCode, r: tuple[int, ...], k: int, l: int,
            bits: tuple[int, ...], variant: str = VARIANT_X) -> UnitMonomial:
    """The commutation unit of the square, solved from composites.

    Only ladybug squares, whose composites have the non-invertible
    coefficient 1 + XY, fall back to the tabulated variant-dependent
    value.
    """
    m_k, _ = structural_edge(pd, r, k, bits)
    m_l, _ = structural_edge(pd, r, l, bits)
    r_k = r[:k] + (1,) + r[k + 1:]
    r_l = r[:l] + (1,) + r[l + 1:]
    m_k_then_l, _ = structural_edge(pd, r_k, l, bits)
    m_l_then_k, _ = structural_edge(pd, r_l, k, bits)
    ratio = square_ratio(m_k_then_l.compose(m_k), m_l_then_k.compose(m_l))
    cls = classify_square(pd, r, k, l, bits)
    if ratio is not None:
        if cls.kind in LADYBUG_KINDS:
            raise DiagramError(
                f"internal: ladybug square {cls} solved to {ratio}"
            )
        return ratio
    if cls.kind not in LADYBUG_KINDS:
        raise DiagramError(
            f"internal: unsolvable non-ladybug square {cls}"
        )
    return psi_table_value(cls.kind, variant)


def cube_coboundary(psi: dict, r: tuple[int, ...], i: int, j: int,
                    k: int) -> UnitMonomial:
    """Multiplicative coboundary of a 2-cochain on the 3-cube at r."""

    def face(base, a, b):
        return psi[(tuple(base), a, b)]

    def bump(v, d):
        return v[:d] + (1,) + v[d + 1:]

    top = face(bump(r, i), j, k) * face(r, i, k).inverse() \
        * face(bump(r, k), i, j)
    bottom = face(r, j, k) * face(bump(r, j), i, k).inverse() * face(r, i, j)
    return top * bottom.inverse()


def validate_two_cocycle(psi: dict, n: int) -> None:
    for r in _vertices(n):
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(j + 1, n):
                    if r[i] or r[j] or r[k]:
                        continue
                    full = all(
                        (q, a, b) in psi
                        for q, a, b in _cube_faces(r, i, j, k)
                    )
                    if full and cube_coboundary(psi, r, i, j, k) != ONE:
                        raise DiagramError(
                            f"2-cochain is not a cocycle on the 3-cube at "
                            f"{r}, directions ({i},{j},{k})"
                        )


def _cube_faces(r, i, j, k):
    def bump(v, d):
        return v[:d] + (1,) + v[d + 1:]

    return [
        (tuple(r), j, k), (tuple(bump(r, i)), j, k),
        (tuple(r), i, k), (tuple(bump(r, j)), i, k),
        (tuple(r), i, j), (tuple(bump(r, k)), i, j),
    ]


def _vertices(n: int):
    for mask in range(2**n):
        yield tuple((mask >> t) & 1 for t in range(n))


def all_squares(n: int):
    for r in _vertices(n):
        for k in range(n):
            if r[k]:
                continue
            for l in range(k + 1, n):
                if not r[l]:
                    yield (r, k, l)


def solve_sign_assignment(targets: dict, n: int,
                          scheme: str = "lex") -> Cochain1:
    """A 1-cochain eps making the target-twisted squares commute.

    `targets` maps (r, k, l) to the unit psi with
    C_(k first) = psi * C_(l first); the returned eps satisfies
    eps(r,k) eps(r+e_k,l) = psi^{-1} eps(r,l) eps(r+e_l,k), i.e.
    del eps = psi on the paper's orientation (psi is self-inverse for
    sl2 but not in general).  Two schemes give genuinely different
    integrations for independence tests.
    """
    edges = []
    for r in _vertices(n):
        for i in range(n):
            if r[i] == 0:
                edges.append((r, i))
    if scheme == "revlex":
        edges = list(reversed(edges))
    elif scheme != "lex":
        raise ValueError(f"unknown integration scheme {scheme!r}")
    index = {e: t for t, e in enumerate(edges)}

    rows = []
    rhs_sign, rhs_x, rhs_y, rhs_z = [], [], [], []
    for (r, k, l), psi in targets.items():
        r_k = r[:k] + (1,) + r[k + 1:]
        r_l = r[:l] + (1,) + r[l + 1:]
        row: dict[int, int] = {}
        for e, c in (((r, k), 1), ((r_k, l), 1), ((r, l), -1), ((r_l, k), -1)):
            row[index[e]] = row.get(index[e], 0) + c
        rows.append(row)
        inv = psi.inverse()
        rhs_sign.append(0 if inv.sign == 1 else 1)
        rhs_x.append(inv.x)
        rhs_y.append(inv.y)
        rhs_z.append(inv.z)

    n_edges = len(edges)
    try:
        sol_sign = intlinalg.solve_mod2(rows, rhs_sign, n_edges)
        sol_x = intlinalg.solve_mod2(rows, rhs_x, n_edges)
        sol_y = intlinalg.solve_mod2(rows, rhs_y, n_edges)
        sol_z = (intlinalg.solve_integer(rows, rhs_z, n_edges)
                 if any(rhs_z) else [0] * n_edges)
    except ValueError as exc:
        validate_two_cocycle(targets, n)
        raise DiagramError(f"sign assignment system unsolvable: {exc}") from exc

    eps = Cochain1()
    for t, e in enumerate(edges):
        u = UnitMonomial(-1 if sol_sign[t] else 1, sol_x[t], sol_y[t], sol_z[t])
        if u != ONE:
            eps.set(e[0], e[1], u)
    for (r, k, l), psi in targets.items():
        if eps.coboundary_on(r, k, l) != psi.inverse():
            raise DiagramError("internal: sign assignment failed to verify")
    return eps


# -- the covering sl2 complex ---------------------------------------------


@dataclass
class LinkCube:
    """A hypercube complex over R for one diagram, plus its provenance.

    `cube` has box {0,1}^N with homological weight |r|; the link-level
    homological degree is |r| - N_-, applied by `total`.  Basis elements
    are (vertex, dotted subset) pairs whose q tag already includes the
    q^{|r| - N_-} shift.
    """

    pd: PDCode
    bits: tuple[int, ...]
    variant: str
    kind: str  # "sl2" | "gl2"
    cube: HomogeneousPolycomplex
    subsets: dict[tuple[int, ...], list[frozenset[int]]]
    eps: Cochain1
    edge_units: dict  # (r, i) -> total unit scalar on that edge

    def total(self) -> ChainComplexR:
        tot = self.cube.total()
        shift = self.pd.n_minus
        return ChainComplexR(
            degrees=[t - shift for t in tot.degrees],
            modules={t - shift: m for t, m in tot.modules.items()},
            differentials={t - shift: d for t, d in tot.differentials.items()},
        )


def psi_targets(pd: PDCode, bits: tuple[int, ...],
                variant: str) -> dict:
    return {
        (r, k, l): psi_sl2(pd, r, k, l, bits, variant)
        for (r, k, l) in all_squares(pd.n)
    }


def koszul_prefix_sign(r: tuple[int, ...], i: int) -> UnitMonomial:
    return koszul_sign(sum(r[:i]))


def build_kom_sl2(pd: PDCode, bits: tuple[int, ...] | None = None,
                  variant: str = VARIANT_X, scheme: str = "lex",
                  eps: Cochain1 | None = None) -> LinkCube:
    """Assemble the covering sl2 complex of an oriented link diagram."""
    bits = tuple(bits) if bits is not None else (0,) * pd.n
    if eps is None:
        eps = solve_sign_assignment(psi_targets(pd, bits, variant), pd.n,
                                    scheme)
    objects, subsets = link_cube_modules(pd)
    edges = {}
    psi = {}
    edge_units = {}
    for r in _vertices(pd.n):
        for i in range(pd.n):
            if r[i]:
                continue
            mat, _ = structural_edge(pd, r, i, bits, style="prepend")
            unit = eps(r, i) * koszul_prefix_sign(r, i)
            edge_units[(r, i)] = unit
            scaled = mat.scale(unit)
            if not scaled.is_zero():
                edges[(r, i)] = scaled
            psi[(r, i)] = edge_degree(pd, i)
    cube = HomogeneousPolycomplex(
        n=pd.n, box=((0, 1),) * pd.n, objects=objects, edges=edges, psi=psi
    )
    cube.validate()
    return LinkCube(pd, bits, variant, "sl2", cube, subsets, eps, edge_units)


def link_cube_modules(pd: PDCode):
    """Vertex modules on dotted subsets with transported Z^2/q gradings."""
    objects = {}
    subsets = {}
    for r in _vertices(pd.n):
        state = resolve(pd, r)
        n_circ = state.n_circles
        base_deg = deg_beta(pd, r)
        q_shift = sum(r) - pd.n_minus
        deltas = subsets_basis(n_circ)
        subsets[r] = deltas
        vectors = tuple(
            BasisVector(
                name=tuple(sorted(d)),
                deg=base_deg + len(d) * DOT_DEG,
                q=n_circ - 2 * len(d) + q_shift,
            )
            for d in deltas
        )
        objects[r] = FreeModule(vectors)
    return objects, subsets
