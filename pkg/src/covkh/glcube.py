"""The gl2 side: web resolutions, foam degrees, and the hypercube comparison.

A closed web here is a resolution's circles plus one double-edge chord
for every crossing currently resolved to the H shape (1-resolution of a
positive crossing, 0-resolution of a negative one).  Formal tangle
complexes keep only web descriptors, per-edge zip/unzip degrees and the
graded-Koszul unit scalars; algebrization replaces each web by the free
module on its dotted cup-foam basis.

Cup-foam conventions.  The undotted cup foam of a web has a well-defined
Z^2-degree (deg_beta); dotted basis elements add (-1,-1) per dot, with
dots stacked bottom-to-top in increasing circle order.  Edge actions are
normalized with tau = 1: a merge acts by letter substitution and a split
appends the new dot at the bottom of the stack, both times after moving
the saddle past the existing dots, which costs bil(deg e, |dots|(-1,-1)).
The foam-evaluation scalars this normalization forgets have a nontrivial
coboundary, so the cube is completed by a solved normalization cochain
rather than by the bare graded Koszul rule; the Koszul unit is still
carried explicitly on every edge and tested against psi_gl2.

The comparison with the sl2 cube rescales the cup-foam basis through
iota: beta_delta -> bil(|delta|(-1,-1), deg beta) a_delta, extracts one
unit per edge, checks the ratio cochain is closed (retrying the other
ladybug variant if it fails by XY exactly there), and integrates it to
an explicit vertex-wise isomorphism.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .linkdiag import DiagramError, PDCode, resolve, saddle
from .polycomplex import (
    Cochain0,
    Cochain1,
    HomogeneousPolycomplex,
    PolycomplexError,
    RMatrix,
    integrate_cochain,
)
from .ring import (
    DOT_DEG,
    ONE,
    XY,
    UnitMonomial,
    Z2Degree,
    ZERO_DEG,
    bil,
    koszul_sign,
)
from .slcube import (
    LADYBUG_KINDS,
    LinkCube,
    VARIANT_X,
    VARIANT_Y,
    all_squares,
    classify_square,
    deg_beta,
    edge_degree,
    link_cube_modules,
    psi_sl2,
    psi_table_value,
    solve_sign_assignment,
    structural_edge,
    subsets_basis,
    _vertices,
)


class ComparisonError(ValueError):
    """Raised when the two hypercubes cannot be matched."""

    def __init__(self, message: str, failures=None):
        super().__init__(message)
        self.failures = failures or []


# -- formal web complexes ---------------------------------------------------


@dataclass(frozen=True)
class ClosedWeb:
    """A web descriptor: resolution circles plus H-marked crossings."""

    circles: int
    chords: tuple[int, ...]
    q_shift: int
    t_shift: int


def has_chord(pd: PDCode, i: int, bit: int) -> bool:
    return bit == 1 if pd.signs[i] == 1 else bit == 0


def web_at(pd: PDCode, r: tuple[int, ...]) -> ClosedWeb:
    state = resolve(pd, r)
    chords = tuple(i for i in range(pd.n) if has_chord(pd, i, r[i]))
    shift = sum(r) - pd.n_minus
    return ClosedWeb(state.n_circles, chords, shift, shift)


def crossing_bracket(sign: int) -> dict:
    """The length-two complex of a single crossing, as formal data.

    Positive: identity web in degree 0, H-web shifted by qt, zip edge of
    degree (-1,0).  Negative: H-web shifted by q^{-1}t^{-1} in degree -1
    relative to the identity web, unzip edge of degree (0,-1).
    """
    if sign == 1:
        return {"edge_degree": Z2Degree(-1, 0), "shifts": {0: 0, 1: 1},
                "saddle": "zip"}
    return {"edge_degree": Z2Degree(0, -1), "shifts": {0: -1, 1: 0},
            "saddle": "unzip"}


@dataclass
class FormalWebComplex:
    """The N-fold horizontal composition of crossing brackets."""

    pd: PDCode
    bits: tuple[int, ...]
    webs: dict[tuple[int, ...], ClosedWeb]
    scalars: Cochain1  # graded Koszul unit (Koszul sign folded in)
    saddle_kinds: dict  # (r, i) -> "merge" | "split"

    @property
    def n(self) -> int:
        return self.pd.n

    def edge_degree(self, i: int) -> Z2Degree:
        return edge_degree(self.pd, i)

    def validate_anticommuting(self) -> None:
        """Check every square anticommutes formally.

        The composite with direction k applied first equals
        bil(d_l, d_k) times the other composite, so the recorded
        scalars must satisfy s_k-path * bil(d_l, d_k) = -s_l-path.
        """
        for (r, k, l) in all_squares(self.n):
            d_k, d_l = self.edge_degree(k), self.edge_degree(l)
            got = self.scalars.coboundary_on(r, k, l) * bil(d_l, d_k)
            if got != UnitMonomial(-1):
                raise PolycomplexError(
                    f"formal square at {r} dirs ({k},{l}) does not "
                    f"anticommute: {got}"
                )

    def to_json(self) -> str:
        verts = []
        for r in sorted(self.webs):
            w = self.webs[r]
            verts.append({
                "r": list(r), "circles": w.circles,
                "chords": list(w.chords), "q": w.q_shift, "t": w.t_shift,
            })
        edges = []
        for r in sorted(self.webs):
            for i in range(self.n):
                if r[i]:
                    continue
                d = self.edge_degree(i)
                edges.append({
                    "from": list(r), "direction": i,
                    "saddle": self.saddle_kinds[(r, i)],
                    "degree": [d.a, d.b],
                    "scalar": str(self.scalars(r, i)),
                })
        return json.dumps({"vertices": verts, "edges": edges}, sort_keys=True)


def koszul_unit(pd: PDCode, r: tuple[int, ...], i: int) -> UnitMonomial:
    """Graded Koszul scalar on the edge r -> r+e_i of the full hypercube.

    Left-associated iteration of the standard tensor cochain: the sign
    counts earlier 1-bits, the bil part pairs the accumulated degree of
    the earlier factors against this direction's degree.
    """
    acc = ZERO_DEG
    for j in range(i):
        if r[j]:
            acc = acc + edge_degree(pd, j)
    return koszul_sign(sum(r[:i])) * bil(acc, edge_degree(pd, i))


def psi_gl2(deg_k: Z2Degree, deg_l: Z2Degree) -> UnitMonomial:
    """bil(deg F_{0*}, deg F_{*0})^{-1} for the square spanned by k < l."""
    return bil(deg_l, deg_k).inverse()


def build_kom_gl2_formal(pd: PDCode,
                         bits: tuple[int, ...] | None = None) -> FormalWebComplex:
    bits = tuple(bits) if bits is not None else (0,) * pd.n
    webs = {}
    kinds = {}
    scalars = Cochain1()
    for r in _vertices(pd.n):
        webs[r] = web_at(pd, r)
        for i in range(pd.n):
            if r[i]:
                continue
            kinds[(r, i)] = saddle(pd, r, i, bits).kind
            u = koszul_unit(pd, r, i)
            if u != ONE:
                scalars.set(r, i, u)
    fwc = FormalWebComplex(pd, bits, webs, scalars, kinds)
    fwc.validate_anticommuting()
    return fwc


def cup_basis_rank_check(web: ClosedWeb) -> bool:
    """Graded count of dotted cup foams against (q + q^{-1})^{circles}."""
    from math import comb

    counted: dict[int, int] = {}
    n = web.circles
    for k in range(n + 1):
        q = n - 2 * k
        counted[q] = counted.get(q, 0) + comb(n, k)
    want = {n - 2 * k: comb(n, k) for k in range(n + 1)}
    return counted == want


# -- algebrization ----------------------------------------------------------


def dot_interchange(pd: PDCode, i: int, size: int) -> UnitMonomial:
    """Scalar for sliding the saddle of direction i below `size` dots."""
    return bil(edge_degree(pd, i), size * DOT_DEG)


def cup_foam_edge(pd: PDCode, r: tuple[int, ...], i: int,
                  bits: tuple[int, ...]) -> RMatrix:
    """The tau = 1 cup-foam action of the edge r -> r+e_i."""
    mat, _ = structural_edge(pd, r, i, bits, style="append")
    n_src = resolve(pd, r).n_circles
    deltas = subsets_basis(n_src)
    out = RMatrix(mat.nrows, mat.ncols)
    for (row, col), v in mat.entries.items():
        out.entries[(row, col)] = \
            dot_interchange(pd, i, len(deltas[col])).as_ring_element() * v
    return out


def _rho_t(pd: PDCode, r, k, l, bits, ladybug_convention: str) -> UnitMonomial:
    """Composite ratio of the cup-foam edge maps on the square at r."""
    r_k = r[:k] + (1,) + r[k + 1:]
    r_l = r[:l] + (1,) + r[l + 1:]
    c_k_first = cup_foam_edge(pd, r_k, l, bits).compose(
        cup_foam_edge(pd, r, k, bits))
    c_l_first = cup_foam_edge(pd, r_l, k, bits).compose(
        cup_foam_edge(pd, r, l, bits))
    ratio = c_k_first.unit_ratio_to(c_l_first)
    if ratio is not None:
        return ratio
    cls = classify_square(pd, r, k, l, bits)
    if cls.kind not in LADYBUG_KINDS:
        raise DiagramError(f"internal: unsolvable non-ladybug square {cls}")
    d_k, d_l = edge_degree(pd, k), edge_degree(pd, l)
    return bil(d_l - d_k, DOT_DEG) * psi_table_value(cls.kind,
                                                     ladybug_convention)


def normalization_targets(pd: PDCode, bits, ladybug_convention: str) -> dict:
    """2-cocycle the normalization cochain must trivialize.

    The cup-foam actions with tau = 1 compose with ratio rho_T, but a
    Koszul-signed hypercube needs ratio bil(d_l, d_k); the normalization
    cochain tau-hat makes up the difference (the true foam-evaluation
    scalars would have done this for free, their coboundary is exactly
    this cocycle).
    """
    targets = {}
    for (r, k, l) in all_squares(pd.n):
        d_k, d_l = edge_degree(pd, k), edge_degree(pd, l)
        rho = _rho_t(pd, r, k, l, bits, ladybug_convention)
        targets[(r, k, l)] = bil(d_k, d_l) * rho
    return targets


def algebrize_gl2(pd: PDCode, formal: FormalWebComplex | None = None,
                  bits: tuple[int, ...] | None = None,
                  ladybug_convention: str = VARIANT_X,
                  scheme: str = "lex",
                  vertex_rescale: Cochain0 | None = None) -> LinkCube:
    """The cup-foam module hypercube of a link diagram.

    Every web must be closed (links only).  Edge maps are
    kappa * tau-hat * (cup-foam action); `vertex_rescale` emulates a
    different choice of undotted cup foams for robustness tests.
    """
    bits = tuple(bits) if bits is not None else (0,) * pd.n
    if formal is None:
        formal = build_kom_gl2_formal(pd, bits)
    if formal.pd is not pd and formal.pd != pd:
        raise DiagramError("formal complex belongs to a different diagram")
    tau = solve_sign_assignment(
        normalization_targets(pd, bits, ladybug_convention), pd.n, scheme)
    objects, subsets = link_cube_modules(pd)
    edges = {}
    psi = {}
    edge_units = {}
    rescale = vertex_rescale or Cochain0()
    for r in _vertices(pd.n):
        for i in range(pd.n):
            if r[i]:
                continue
            r_next = r[:i] + (1,) + r[i + 1:]
            unit = koszul_unit(pd, r, i) * tau(r, i) \
                * rescale(r_next) * rescale(r).inverse()
            edge_units[(r, i)] = unit
            mat = cup_foam_edge(pd, r, i, bits).scale(unit)
            if not mat.is_zero():
                edges[(r, i)] = mat
            psi[(r, i)] = edge_degree(pd, i)
    cube = HomogeneousPolycomplex(
        n=pd.n, box=((0, 1),) * pd.n, objects=objects, edges=edges, psi=psi
    )
    cube.validate()
    out = LinkCube(pd, bits, ladybug_convention, "gl2", cube, subsets, tau,
                   edge_units)
    return out


# -- the constructive comparison -------------------------------------------


def iota_unit(pd: PDCode, r: tuple[int, ...], delta: frozenset[int]) -> UnitMonomial:
    """iota_W sends beta_delta to bil(|delta|(-1,-1), deg beta^W) a_delta."""
    return bil(len(delta) * DOT_DEG, deg_beta(pd, r))


def _conjugated_edge(gl2: LinkCube, r, i) -> RMatrix:
    pd = gl2.pd
    r_next = r[:i] + (1,) + r[i + 1:]
    mat = gl2.cube.edge_matrix(r, i)
    src_deltas = gl2.subsets[r]
    tgt_deltas = gl2.subsets[r_next]
    out = RMatrix(mat.nrows, mat.ncols)
    for (row, col), v in mat.entries.items():
        u = iota_unit(pd, r_next, tgt_deltas[row]) \
            * iota_unit(pd, r, src_deltas[col]).inverse()
        out.entries[(row, col)] = u.as_ring_element() * v
    return out


@dataclass
class ComparisonResult:
    variant: str
    ratio: Cochain1
    phi: Cochain0
    iso: dict  # r -> RMatrix, the verified vertex isomorphisms


def _edge_ratios(gl2: LinkCube, sl2: LinkCube) -> Cochain1:
    ratio = Cochain1()
    failures = []
    for r in _vertices(gl2.pd.n):
        for i in range(gl2.pd.n):
            if r[i]:
                continue
            a = _conjugated_edge(gl2, r, i)
            b = sl2.cube.edge_matrix(r, i)
            u = a.unit_ratio_to(b)
            if u is None:
                failures.append((r, i))
            elif u != ONE:
                ratio.set(r, i, u)
    if failures:
        raise ComparisonError(
            f"edges not unit-proportional after iota: {failures[:5]} "
            f"({len(failures)} total)", failures)
    return ratio


def compare_hypercubes(gl2: LinkCube, sl2: LinkCube,
                       sl2_builder=None) -> ComparisonResult:
    """Match the gl2 cube with a covering sl2 cube, constructively.

    Extracts the per-edge unit ratio through iota, requires the ratio
    cochain to be closed, integrates it to a vertex rescaling and
    verifies the resulting isomorphism on every edge.  If closure fails
    by exactly XY on ladybug squares only, the other sl2 variant is
    tried (via `sl2_builder(variant)`), mirroring the X/Y freedom in
    the ladybug sign tables.
    """
    if gl2.pd != sl2.pd or gl2.bits != sl2.bits:
        raise ComparisonError("cubes come from different diagrams or "
                              "arc orientations")
    pd = gl2.pd
    ratio = _edge_ratios(gl2, sl2)
    bad = []
    for (r, k, l) in all_squares(pd.n):
        got = ratio.coboundary_on(r, k, l)
        if got != ONE:
            kind = classify_square(pd, r, k, l, gl2.bits).kind
            bad.append(((r, k, l), got, kind))
    if bad:
        ladybugs_only = all(
            kind in LADYBUG_KINDS and got == XY for (_, got, kind) in bad
        )
        if ladybugs_only and sl2_builder is not None:
            other = VARIANT_Y if sl2.variant == VARIANT_X else VARIANT_X
            return compare_hypercubes(gl2, sl2_builder(other), None)
        raise ComparisonError(
            f"ratio cochain is not closed; failing squares: "
            f"{[(sq, str(g), kind) for sq, g, kind in bad[:5]]} "
            f"({len(bad)} total)", bad)

    box = ((0, 1),) * pd.n
    phi = integrate_cochain(ratio.inverse(), box)
    iso = {}
    for r in _vertices(pd.n):
        deltas = gl2.subsets[r]
        n_basis = len(deltas)
        iso[r] = RMatrix(n_basis, n_basis, {
            (t, t): (phi(r) * iota_unit(pd, r, deltas[t])).as_ring_element()
            for t in range(n_basis)
        })
    for r in _vertices(pd.n):
        for i in range(pd.n):
            if r[i]:
                continue
            r_next = r[:i] + (1,) + r[i + 1:]
            lhs = iso[r_next].compose(gl2.cube.edge_matrix(r, i))
            rhs = sl2.cube.edge_matrix(r, i).compose(iso[r])
            if lhs != rhs:
                raise ComparisonError(
                    f"internal: integrated isomorphism fails on edge "
                    f"{r} -> +e_{i}")
    return ComparisonResult(sl2.variant, ratio, phi, iso)


# -- the local cube condition ----------------------------------------------


def psi_beta_edge(pd: PDCode, r, i, bits) -> UnitMonomial:
    """The unit with iota_W o (cup-foam edge) = psi_beta * (sl2 edge) o iota_V."""
    r_next = r[:i] + (1,) + r[i + 1:]
    t_mat = cup_foam_edge(pd, r, i, bits)
    src_deltas = subsets_basis(resolve(pd, r).n_circles)
    tgt_deltas = subsets_basis(resolve(pd, r_next).n_circles)
    conj = RMatrix(t_mat.nrows, t_mat.ncols)
    for (row, col), v in t_mat.entries.items():
        u = iota_unit(pd, r_next, tgt_deltas[row]) \
            * iota_unit(pd, r, src_deltas[col]).inverse()
        conj.entries[(row, col)] = u.as_ring_element() * v
    sl2_mat, _ = structural_edge(pd, r, i, bits, style="prepend")
    ratio = conj.unit_ratio_to(sl2_mat)
    if ratio is None:
        raise DiagramError(f"internal: psi_beta not a unit on edge {r}, {i}")
    return ratio


def normalization_cochain(pd: PDCode, bits,
                          ladybug_convention: str = VARIANT_X,
                          scheme: str = "lex") -> Cochain1:
    """The solved stand-in tau-hat for the foam-evaluation scalars."""
    return solve_sign_assignment(
        normalization_targets(pd, bits, ladybug_convention), pd.n, scheme)


def cube_condition(pd: PDCode, r, k, l, bits,
                   sl2_variant: str = VARIANT_X,
                   tau: Cochain1 | None = None,
                   vertex_rescale: Cochain0 | None = None) -> UnitMonomial:
    """del psi on the comparison 3-cube over the square at r.

    Equals psi_gl2(S) * psi_sl2(c(S))^{-1} * del psi_beta(S), where
    psi_beta(e) is the unit comparing the normalized cup-foam edge with
    the sl2 edge through iota: tau-hat(e) times the extracted ratio.
    The equivalence of the two hypercube constructions needs this to be
    1 on every square, for exactly one choice of sl2 variant.
    """
    if tau is None:
        tau = normalization_cochain(pd, bits)
    rescale = vertex_rescale or Cochain0()

    def psi_beta(base, i):
        nxt = base[:i] + (1,) + base[i + 1:]
        return tau(base, i) * psi_beta_edge(pd, base, i, bits) \
            * rescale(nxt) * rescale(base).inverse()

    r_k = r[:k] + (1,) + r[k + 1:]
    r_l = r[:l] + (1,) + r[l + 1:]
    d_k, d_l = edge_degree(pd, k), edge_degree(pd, l)
    top = psi_gl2(d_k, d_l)
    bottom = psi_sl2(pd, r, k, l, bits, sl2_variant)
    beta_k_first = psi_beta(r, k) * psi_beta(r_k, l)
    beta_l_first = psi_beta(r, l) * psi_beta(r_l, k)
    return top * bottom.inverse() * beta_k_first * beta_l_first.inverse()
