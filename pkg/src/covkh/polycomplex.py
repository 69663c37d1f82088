"""Homogeneous polycomplexes and their graded tensor calculus.

A homogeneous n-polycomplex is a Z^n-shaped diagram of free R-modules
with direction-wise differentials alpha_i that square to zero, whose
squares anticommute, and whose nonzero edges are homogeneous of the
degree prescribed by a Z^2-valued 1-cocycle psi.  The tensor product of
two such objects is twisted by a unit-valued 1-cochain; the standard
("graded Koszul") choice on a J-edge is

    (-1)^{|r|} * bil(|alpha|(r), psi_B(edge)),

and any two compatible twists give isomorphic total complexes.

Squares are always oriented the same way here: for k < l,

    del eps(sq^r_{k,l}) = [eps(r->r+e_k) eps(r+e_k->r+e_k+e_l)]
                        / [eps(r->r+e_l) eps(r+e_l->r+e_k+e_l)].

With that orientation a compatible cochain satisfies
del eps = -bil(psi_A(edge_i), psi_B(edge_j)) on mixed squares.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .ring import (
    ONE,
    RingElement,
    UnitMonomial,
    Z2Degree,
    ZERO_DEG,
    bil,
    koszul_sign,
)


class PolycomplexError(ValueError):
    """Raised when polycomplex data violates its structural invariants."""


# -- free modules and sparse matrices ------------------------------------


@dataclass(frozen=True)
class BasisVector:
    name: object
    deg: Z2Degree = ZERO_DEG
    q: int = 0


@dataclass(frozen=True)
class FreeModule:
    basis: tuple[BasisVector, ...]

    @property
    def rank(self) -> int:
        return len(self.basis)

    def index(self, name) -> int:
        for i, v in enumerate(self.basis):
            if v.name == name:
                return i
        raise KeyError(name)

    def tensor(self, other: "FreeModule") -> "FreeModule":
        return FreeModule(tuple(
            BasisVector((a.name, b.name), a.deg + b.deg, a.q + b.q)
            for a in self.basis for b in other.basis
        ))


class RMatrix:
    """A sparse matrix over R; entries[(row, col)] are nonzero."""

    __slots__ = ("nrows", "ncols", "entries")

    def __init__(self, nrows: int, ncols: int, entries=None):
        self.nrows = nrows
        self.ncols = ncols
        self.entries: dict[tuple[int, int], RingElement] = {}
        if entries:
            for (i, j), v in entries.items():
                if isinstance(v, UnitMonomial):
                    v = v.as_ring_element()
                elif isinstance(v, int):
                    v = RingElement.from_int(v)
                if v:
                    self.entries[(i, j)] = v

    @staticmethod
    def identity(n: int) -> "RMatrix":
        return RMatrix(n, n, {(i, i): RingElement.one() for i in range(n)})

    @staticmethod
    def zero(nrows: int, ncols: int) -> "RMatrix":
        return RMatrix(nrows, ncols)

    def copy(self) -> "RMatrix":
        m = RMatrix(self.nrows, self.ncols)
        m.entries = dict(self.entries)
        return m

    def __add__(self, other: "RMatrix") -> "RMatrix":
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("shape mismatch")
        out = self.copy()
        for k, v in other.entries.items():
            s = out.entries.get(k, RingElement.zero()) + v
            if s:
                out.entries[k] = s
            else:
                out.entries.pop(k, None)
        return out

    def __sub__(self, other: "RMatrix") -> "RMatrix":
        return self + other.scale(-1)

    def scale(self, u) -> "RMatrix":
        if isinstance(u, int):
            u = RingElement.from_int(u)
        elif isinstance(u, UnitMonomial):
            u = u.as_ring_element()
        out = RMatrix(self.nrows, self.ncols)
        for k, v in self.entries.items():
            w = u * v
            if w:
                out.entries[k] = w
        return out

    def compose(self, first: "RMatrix") -> "RMatrix":
        """self o first (apply `first`, then `self`)."""
        if self.ncols != first.nrows:
            raise ValueError("composition shape mismatch")
        by_col: dict[int, list[tuple[int, RingElement]]] = {}
        for (i, j), v in self.entries.items():
            by_col.setdefault(j, []).append((i, v))
        out = RMatrix(self.nrows, first.ncols)
        acc: dict[tuple[int, int], RingElement] = {}
        for (j, c), v in first.entries.items():
            for i, w in by_col.get(j, ()):
                key = (i, c)
                s = acc.get(key, RingElement.zero()) + w * v
                if s:
                    acc[key] = s
                else:
                    acc.pop(key, None)
        out.entries = acc
        return out

    def is_zero(self) -> bool:
        return not self.entries

    def __eq__(self, other) -> bool:
        if not isinstance(other, RMatrix):
            return NotImplemented
        return (self.nrows, self.ncols) == (other.nrows, other.ncols) \
            and self.entries == other.entries

    def __repr__(self) -> str:
        return f"RMatrix({self.nrows}x{self.ncols}, {len(self.entries)} entries)"

    def unit_ratio_to(self, other: "RMatrix") -> UnitMonomial | None:
        """Unit u with self == u * other, if one exists."""
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            return None
        if set(self.entries) != set(other.entries):
            return None
        if not self.entries:
            return ONE
        ratio = None
        for k, v in other.entries.items():
            if not v.is_unit():
                continue
            cand = self.entries[k] * v.as_unit().inverse()
            if not cand.is_unit():
                return None
            ratio = cand.as_unit()
            break
        if ratio is None:
            return None
        for k, v in other.entries.items():
            if self.entries[k] != v * ratio:
                return None
        return ratio


def graded_tensor_matrix(f: RMatrix, f_deg: Z2Degree, src_a: FreeModule,
                         tgt_a: FreeModule, g: RMatrix, g_deg: Z2Degree,
                         src_b: FreeModule, tgt_b: FreeModule) -> RMatrix:
    """Matrix of f (x) g on product bases.

    The graded tensor acts by (f(x)g)(v(x)w) = bil(deg g, deg v) f(v)(x)g(w),
    so the twist only sees the degree of the left-hand basis vector.
    """
    nb_src, nb_tgt = src_b.rank, tgt_b.rank
    out = RMatrix(tgt_a.rank * nb_tgt, src_a.rank * nb_src)
    for (ia, ja), va in f.entries.items():
        for (ib, jb), vb in g.entries.items():
            twist = bil(g_deg, src_a.basis[ja].deg)
            val = (twist.as_ring_element() * va) * vb
            if val:
                out.entries[(ia * nb_tgt + ib, ja * nb_src + jb)] = val
    return out


# -- cochains -------------------------------------------------------------


Vertex = tuple[int, ...]
Edge = tuple[Vertex, int]  # (base vertex r, direction i): r -> r + e_i


def _shift(r: Vertex, i: int, by: int = 1) -> Vertex:
    return r[:i] + (r[i] + by,) + r[i + 1:]


@dataclass
class Cochain0:
    """Unit-valued 0-cochain with finite support (default value 1)."""

    values: dict[Vertex, UnitMonomial] = field(default_factory=dict)

    def __call__(self, r: Vertex) -> UnitMonomial:
        return self.values.get(tuple(r), ONE)

    def coboundary_on(self, edge: Edge) -> UnitMonomial:
        r, i = edge
        return self(_shift(r, i)) * self(r).inverse()


@dataclass
class Cochain1:
    """Unit-valued 1-cochain with finite support (default value 1)."""

    values: dict[Edge, UnitMonomial] = field(default_factory=dict)

    def __call__(self, r: Vertex, i: int) -> UnitMonomial:
        return self.values.get((tuple(r), i), ONE)

    def set(self, r: Vertex, i: int, u: UnitMonomial) -> None:
        self.values[(tuple(r), i)] = u

    def times(self, other: "Cochain1") -> "Cochain1":
        out = Cochain1(dict(self.values))
        for e, u in other.values.items():
            out.values[e] = out.values.get(e, ONE) * u
        return out

    def inverse(self) -> "Cochain1":
        return Cochain1({e: u.inverse() for e, u in self.values.items()})

    def coboundary_on(self, r: Vertex, k: int, l: int) -> UnitMonomial:
        """del eps on the oriented square at r spanned by k < l."""
        if not k < l:
            raise ValueError("square directions must satisfy k < l")
        path_k = self(r, k) * self(_shift(r, k), l)
        path_l = self(r, l) * self(_shift(r, l), k)
        return path_k * path_l.inverse()


def box_vertices(box: tuple[tuple[int, int], ...]):
    return itertools.product(*[range(lo, hi + 1) for lo, hi in box])


def box_edges(box: tuple[tuple[int, int], ...]):
    for r in box_vertices(box):
        for i, (_, hi) in enumerate(box):
            if r[i] < hi:
                yield (r, i)


def box_squares(box: tuple[tuple[int, int], ...]):
    n = len(box)
    for r in box_vertices(box):
        for k in range(n):
            if r[k] >= box[k][1]:
                continue
            for l in range(k + 1, n):
                if r[l] < box[l][1]:
                    yield (r, k, l)


def integrate_cochain(ratio: Cochain1, box, order: str = "lex") -> Cochain0:
    """Find phi with  phi(r+e_i) phi(r)^{-1} = ratio(r -> r+e_i).

    Integrates along a spanning tree rooted at the minimal corner and
    verifies every edge; a closed ratio on a box always integrates.
    The `order` flag picks which coordinate the tree decrements first,
    giving genuinely different trees for independence tests.
    """
    failing = [
        (r, k, l) for (r, k, l) in box_squares(box)
        if ratio.coboundary_on(r, k, l) != ONE
    ]
    if failing:
        raise PolycomplexError(
            f"cochain ratio is not closed; first failing squares: "
            f"{failing[:3]} ({len(failing)} total)"
        )
    lo = tuple(b[0] for b in box)
    phi = Cochain0({lo: ONE})
    for r in sorted(box_vertices(box), key=lambda v: (sum(v), v)):
        if r == lo:
            continue
        drop = [i for i in range(len(box)) if r[i] > box[i][0]]
        i = min(drop) if order == "lex" else max(drop)
        prev = _shift(r, i, -1)
        phi.values[r] = phi(prev) * ratio(prev, i)
    for (r, i) in box_edges(box):
        if phi.coboundary_on((r, i)) != ratio(r, i):
            raise PolycomplexError("integration failed to verify; not closed?")
    return phi


def cochain_ratio_iso(eps: Cochain1, eps_prime: Cochain1, box,
                      order: str = "lex") -> Cochain0:
    """0-cochain phi with del phi = eps * eps'^{-1} (error if not closed)."""
    return integrate_cochain(eps.times(eps_prime.inverse()), box, order)


# -- homogeneous polycomplexes --------------------------------------------


@dataclass
class HomogeneousPolycomplex:
    """Vertex modules, direction differentials and the degree cocycle.

    Vertices outside `objects` are zero.  `psi[(r, i)]` gives the degree
    of the edge r -> r+e_i; for link hypercubes it is constant in i.
    """

    n: int
    box: tuple[tuple[int, int], ...]
    objects: dict[Vertex, FreeModule]
    edges: dict[Edge, RMatrix]
    psi: dict[Edge, Z2Degree]

    def object_at(self, r: Vertex) -> FreeModule:
        return self.objects.get(tuple(r), FreeModule(()))

    def edge_matrix(self, r: Vertex, i: int) -> RMatrix:
        key = (tuple(r), i)
        if key in self.edges:
            return self.edges[key]
        return RMatrix.zero(self.object_at(_shift(r, i)).rank,
                            self.object_at(r).rank)

    def psi_on(self, r: Vertex, i: int) -> Z2Degree:
        return self.psi.get((tuple(r), i), ZERO_DEG)

    # -- invariants ---------------------------------------------------

    def validate(self) -> None:
        for (r, i) in box_edges(self.box):
            m = self.edge_matrix(r, i)
            expected = self.psi_on(r, i)
            src, tgt = self.object_at(r), self.object_at(_shift(r, i))
            for (row, col) in m.entries:
                if tgt.basis[row].deg - src.basis[col].deg != expected:
                    raise PolycomplexError(
                        f"edge {r}->+e_{i} is not homogeneous of {expected}"
                    )
            nxt = _shift(r, i)
            if nxt[i] < self.box[i][1]:
                sq = self.edge_matrix(nxt, i).compose(m)
                if not sq.is_zero():
                    raise PolycomplexError(f"alpha^2 != 0 in direction {i} at {r}")
        for (r, k, l) in box_squares(self.box):
            a = self.edge_matrix(_shift(r, k), l).compose(self.edge_matrix(r, k))
            b = self.edge_matrix(_shift(r, l), k).compose(self.edge_matrix(r, l))
            if not (a + b).is_zero():
                raise PolycomplexError(f"square at {r} dirs ({k},{l}) "
                                       "does not anticommute")
            dpsi = (self.psi_on(r, k) + self.psi_on(_shift(r, k), l)
                    - self.psi_on(r, l) - self.psi_on(_shift(r, l), k))
            if dpsi:
                raise PolycomplexError(f"psi fails the cocycle condition on "
                                       f"square at {r} dirs ({k},{l})")

    def abs_alpha(self, r: Vertex) -> Z2Degree:
        """Path integral of psi from the minimal corner of the box to r."""
        lo = tuple(b[0] for b in self.box)
        total = ZERO_DEG
        cur = list(lo)
        for i in range(self.n):
            while cur[i] < r[i]:
                total = total + self.psi_on(tuple(cur), i)
                cur[i] += 1
        return total

    # -- total complex --------------------------------------------------

    def total(self) -> "ChainComplexR":
        self.validate()
        by_t: dict[int, list[Vertex]] = {}
        for r in box_vertices(self.box):
            if self.object_at(r).rank:
                by_t.setdefault(sum(r), []).append(tuple(r))
        for t in by_t:
            by_t[t].sort()
        degrees = sorted(by_t)
        modules: dict[int, list] = {}
        offsets: dict[Vertex, int] = {}
        for t in degrees:
            tagged = []
            for r in by_t[t]:
                offsets[r] = len(tagged)
                for v in self.object_at(r).basis:
                    tagged.append(((r,) + (v.name,), v.deg, v.q))
            modules[t] = [BasisVector(*x) for x in tagged]
        diffs: dict[int, RMatrix] = {}
        for t in degrees:
            if t + 1 not in by_t:
                continue
            nrows = len(modules[t + 1])
            ncols = len(modules[t])
            d = RMatrix(nrows, ncols)
            for r in by_t[t]:
                for i in range(self.n):
                    if r[i] >= self.box[i][1]:
                        continue
                    tgt = _shift(r, i)
                    if tgt not in offsets:
                        continue
                    m = self.edge_matrix(r, i)
                    ro, co = offsets[tgt], offsets[r]
                    for (a, b), v in m.entries.items():
                        key = (ro + a, co + b)
                        s = d.entries.get(key, RingElement.zero()) + v
                        if s:
                            d.entries[key] = s
                        else:
                            d.entries.pop(key, None)
            diffs[t] = d
        cx = ChainComplexR(
            degrees=degrees,
            modules={t: FreeModule(tuple(m)) for t, m in modules.items()},
            differentials=diffs,
        )
        cx.verify_d_squared()
        return cx


@dataclass
class ChainComplexR:
    """A bounded complex of free R-modules with tagged, q-graded bases."""

    degrees: list[int]
    modules: dict[int, FreeModule]
    differentials: dict[int, RMatrix]  # d_t : C_t -> C_{t+1}

    def module(self, t: int) -> FreeModule:
        return self.modules.get(t, FreeModule(()))

    def differential(self, t: int) -> RMatrix:
        if t in self.differentials:
            return self.differentials[t]
        return RMatrix.zero(self.module(t + 1).rank, self.module(t).rank)

    def verify_d_squared(self) -> None:
        for t in self.degrees:
            dd = self.differential(t + 1).compose(self.differential(t))
            if not dd.is_zero():
                raise PolycomplexError(f"d o d != 0 from degree {t}")


# -- tensor products -------------------------------------------------------


def _concat_box(box_a, box_b):
    return tuple(box_a) + tuple(box_b)


def koszul_cochain(a: HomogeneousPolycomplex,
                   b: HomogeneousPolycomplex) -> Cochain1:
    """The standard compatible 1-cochain for the tensor product a (x) b."""
    eps = Cochain1()
    box = _concat_box(a.box, b.box)
    na = a.n
    for (rs, k) in box_edges(box):
        r, s = rs[:na], rs[na:]
        if k < na:
            continue  # value 1 on I-direction edges
        j = k - na
        val = koszul_sign(sum(r)) * bil(a.abs_alpha(r), b.psi_on(s, j))
        if val != ONE:
            eps.set(rs, k, val)
    return eps


def check_compatible(eps: Cochain1, a: HomogeneousPolycomplex,
                     b: HomogeneousPolycomplex) -> list:
    """Squares where eps violates the compatibility condition."""
    box = _concat_box(a.box, b.box)
    na = a.n
    bad = []
    for (rs, k, l) in box_squares(box):
        got = eps.coboundary_on(rs, k, l)
        if k < na and l >= na:
            r, s = rs[:na], rs[na:]
            want = -bil(a.psi_on(r, k), b.psi_on(s, l - na))
        else:
            want = ONE
        if got != want:
            bad.append((rs, k, l, got, want))
    return bad


def tensor(a: HomogeneousPolycomplex, b: HomogeneousPolycomplex,
           eps: Cochain1 | None = None) -> HomogeneousPolycomplex:
    """The eps-tensor product; eps defaults to the graded Koszul cochain."""
    if eps is None:
        eps = koszul_cochain(a, b)
    else:
        bad = check_compatible(eps, a, b)
        if bad:
            rs, k, l, got, want = bad[0]
            raise PolycomplexError(
                f"cochain is not compatible on square {rs} dirs ({k},{l}): "
                f"del eps = {got}, required {want} ({len(bad)} squares fail)"
            )
    na = a.n
    box = _concat_box(a.box, b.box)
    objects: dict[Vertex, FreeModule] = {}
    for rs in box_vertices(box):
        mod = a.object_at(rs[:na]).tensor(b.object_at(rs[na:]))
        if mod.rank:
            objects[rs] = mod
    edges: dict[Edge, RMatrix] = {}
    psi: dict[Edge, Z2Degree] = {}
    for (rs, k) in box_edges(box):
        r, s = rs[:na], rs[na:]
        if k < na:
            f = a.edge_matrix(r, k)
            deg = a.psi_on(r, k)
            m = graded_tensor_matrix(
                f, deg, a.object_at(r), a.object_at(_shift(r, k)),
                RMatrix.identity(b.object_at(s).rank), ZERO_DEG,
                b.object_at(s), b.object_at(s),
            )
        else:
            j = k - na
            g = b.edge_matrix(s, j)
            deg = b.psi_on(s, j)
            m = graded_tensor_matrix(
                RMatrix.identity(a.object_at(r).rank), ZERO_DEG,
                a.object_at(r), a.object_at(r),
                g, deg, b.object_at(s), b.object_at(_shift(s, j)),
            )
        m = m.scale(eps(rs, k))
        if not m.is_zero():
            edges[(rs, k)] = m
        psi[(rs, k)] = deg
    return HomogeneousPolycomplex(a.n + b.n, box, objects, edges, psi)


# -- the generic sigma 0-cochain and induced structure ---------------------


def generic_sigma(a1: HomogeneousPolycomplex, b1: HomogeneousPolycomplex,
                  a2: HomogeneousPolycomplex, b2: HomogeneousPolycomplex,
                  lam1: Z2Degree, lam2: Z2Degree,
                  r1: Vertex, s1: Vertex, r2: Vertex, s2: Vertex) -> UnitMonomial:
    """The unit eps^{r,s}_{lam1,lam2} twisting induced tensor data."""
    left = bil(lam1 + a1.abs_alpha(r1) - b1.abs_alpha(s1), b2.abs_alpha(s2))
    right = bil(a1.abs_alpha(r1), lam2)
    return left.inverse() * right


@dataclass
class PolyChainMap:
    """Chain map between polycomplexes, one homogeneous block per (r, s)."""

    source: HomogeneousPolycomplex
    target: HomogeneousPolycomplex
    components: dict[tuple[Vertex, Vertex], tuple[RMatrix, Z2Degree]]

    def component(self, r: Vertex, s: Vertex) -> RMatrix:
        key = (tuple(r), tuple(s))
        if key in self.components:
            return self.components[key][0]
        return RMatrix.zero(self.target.object_at(s).rank,
                            self.source.object_at(r).rank)

    def verify(self) -> None:
        src, tgt = self.source, self.target
        for r in box_vertices(src.box):
            for s in box_vertices(tgt.box):
                if sum(s) != sum(r) + 1:
                    continue
                lhs = RMatrix.zero(tgt.object_at(s).rank, src.object_at(r).rank)
                for j in range(tgt.n):
                    if s[j] > tgt.box[j][0]:
                        prev = _shift(s, j, -1)
                        lhs = lhs + tgt.edge_matrix(prev, j).compose(
                            self.component(r, prev))
                rhs = RMatrix.zero(tgt.object_at(s).rank, src.object_at(r).rank)
                for i in range(src.n):
                    if r[i] < src.box[i][1]:
                        nxt = _shift(r, i)
                        rhs = rhs + self.component(nxt, s).compose(
                            src.edge_matrix(r, i))
                if not (lhs - rhs).is_zero():
                    raise PolycomplexError(
                        f"chain-map relation fails from {r} into {s}"
                    )


@dataclass
class PolyHomotopy:
    """Homotopy data, one homogeneous block per (r, s) with |r| = |s|+1."""

    source: HomogeneousPolycomplex
    target: HomogeneousPolycomplex
    components: dict[tuple[Vertex, Vertex], tuple[RMatrix, Z2Degree]]

    def component(self, r: Vertex, s: Vertex) -> RMatrix:
        key = (tuple(r), tuple(s))
        if key in self.components:
            return self.components[key][0]
        return RMatrix.zero(self.target.object_at(s).rank,
                            self.source.object_at(r).rank)

    def verify_bounds(self, f: PolyChainMap, g: PolyChainMap) -> None:
        """Check F - G = H o alpha + beta o H blockwise."""
        src, tgt = self.source, self.target
        for r in box_vertices(src.box):
            for s in box_vertices(tgt.box):
                if sum(s) != sum(r):
                    continue
                want = f.component(r, s) - g.component(r, s)
                got = RMatrix.zero(tgt.object_at(s).rank, src.object_at(r).rank)
                for i in range(src.n):
                    if r[i] < src.box[i][1]:
                        nxt = _shift(r, i)
                        got = got + self.component(nxt, s).compose(
                            src.edge_matrix(r, i))
                for j in range(tgt.n):
                    if s[j] > tgt.box[j][0]:
                        prev = _shift(s, j, -1)
                        got = got + tgt.edge_matrix(prev, j).compose(
                            self.component(r, prev))
                if not (want - got).is_zero():
                    raise PolycomplexError(
                        f"homotopy relation fails from {r} into {s}"
                    )


def _component_degree(mat: RMatrix, src: FreeModule, tgt: FreeModule,
                      declared: Z2Degree) -> Z2Degree:
    for (row, col) in mat.entries:
        d = tgt.basis[row].deg - src.basis[col].deg
        if d != declared:
            raise PolycomplexError(
                f"component is not homogeneous of declared degree {declared}"
            )
    return declared


def induced_morphism(f1: PolyChainMap, f2: PolyChainMap) -> PolyChainMap:
    """The chain map F1 (x) F2 between tensor-product polycomplexes."""
    a1, b1 = f1.source, f1.target
    a2, b2 = f2.source, f2.target
    src = tensor(a1, a2)
    tgt = tensor(b1, b2)
    comps: dict[tuple[Vertex, Vertex], tuple[RMatrix, Z2Degree]] = {}
    for (r1, s1), (m1, d1) in f1.components.items():
        _component_degree(m1, a1.object_at(r1), b1.object_at(s1), d1)
        for (r2, s2), (m2, d2) in f2.components.items():
            _component_degree(m2, a2.object_at(r2), b2.object_at(s2), d2)
            sigma = generic_sigma(a1, b1, a2, b2, d1, d2, r1, s1, r2, s2)
            block = graded_tensor_matrix(
                m1, d1, a1.object_at(r1), b1.object_at(s1),
                m2, d2, a2.object_at(r2), b2.object_at(s2),
            ).scale(sigma)
            if not block.is_zero():
                comps[(r1 + r2, s1 + s2)] = (block, d1 + d2)
    return PolyChainMap(src, tgt, comps)


def induced_homotopy(h1: PolyHomotopy, h2: PolyHomotopy, *,
                     f2: PolyChainMap, g1: PolyChainMap) -> PolyHomotopy:
    """Homotopy H1 (x) H2 : F1(x)F2 -> G1(x)G2.

    Takes the blocks H1 (x) F2 plus (-1)^{|r1|} G1 (x) H2, each twisted
    by the generic sigma cochain at its own degree data.
    """
    a1, b1 = h1.source, h1.target
    a2, b2 = h2.source, h2.target
    src = tensor(a1, a2)
    tgt = tensor(b1, b2)
    comps: dict[tuple[Vertex, Vertex], tuple[RMatrix, Z2Degree]] = {}

    def add(key, mat, deg):
        if key in comps:
            old, odeg = comps[key]
            if odeg != deg:
                raise PolycomplexError("induced homotopy blocks disagree in degree")
            mat = old + mat
        if mat.is_zero():
            comps.pop(key, None)
        else:
            comps[key] = (mat, deg)

    for (r1, s1), (m1, d1) in h1.components.items():
        for (r2, s2), (m2, d2) in f2.components.items():
            sigma = generic_sigma(a1, b1, a2, b2, d1, d2, r1, s1, r2, s2)
            block = graded_tensor_matrix(
                m1, d1, a1.object_at(r1), b1.object_at(s1),
                m2, d2, a2.object_at(r2), b2.object_at(s2),
            ).scale(sigma)
            add((r1 + r2, s1 + s2), block, d1 + d2)
    for (r1, s1), (m1, d1) in g1.components.items():
        for (r2, s2), (m2, d2) in h2.components.items():
            sigma = generic_sigma(a1, b1, a2, b2, d1, d2, r1, s1, r2, s2)
            block = graded_tensor_matrix(
                m1, d1, a1.object_at(r1), b1.object_at(s1),
                m2, d2, a2.object_at(r2), b2.object_at(s2),
            ).scale(sigma).scale(koszul_sign(sum(r1)))
            add((r1 + r2, s1 + s2), block, d1 + d2)
    return PolyHomotopy(src, tgt, comps)
