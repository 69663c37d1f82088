"""Exact arithmetic in the ground ring R = Z[X,Y,Z^{±1}]/(X^2=Y^2=1).

Everything downstream (hypercube edge maps, sign cochains, comparison
isomorphisms) lives over this ring.  Units of R are the signed monomials
±X^a Y^b Z^k; they form an abelian group and carry all the "twisting"
data of the theory.  General ring elements only show up as matrix
entries, so they are kept as normalized {(x,y,z): coeff} dictionaries
with integer coefficients.

Degrees live in Z^2 and interact with units through the bilinear form

    bil((a,b),(c,d)) = X^{ac} Y^{bd} Z^{ad-bc},

which is symmetric in the sense bil(g,h)*bil(h,g) = 1.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator


@dataclass(frozen=True, order=True)
class Z2Degree:
    """An element of the grading group Z^2."""

    a: int = 0
    b: int = 0

    def __add__(self, other: "Z2Degree") -> "Z2Degree":
        return Z2Degree(self.a + other.a, self.b + other.b)

    def __sub__(self, other: "Z2Degree") -> "Z2Degree":
        return Z2Degree(self.a - other.a, self.b - other.b)

    def __neg__(self) -> "Z2Degree":
        return Z2Degree(-self.a, -self.b)

    def __mul__(self, n: int) -> "Z2Degree":
        return Z2Degree(n * self.a, n * self.b)

    __rmul__ = __mul__

    def __bool__(self) -> bool:
        return bool(self.a or self.b)

    def qdeg(self) -> int:
        """Quantum degree -(a+b) of this Z^2 degree."""
        return -(self.a + self.b)

    def __repr__(self) -> str:
        return f"({self.a},{self.b})"


ZERO_DEG = Z2Degree(0, 0)

# Z^2-degrees of the five generating local foam pieces.
DOT_DEG = Z2Degree(-1, -1)
CUP_DEG = Z2Degree(0, 1)
CAP_DEG = Z2Degree(1, 0)
ZIP_DEG = Z2Degree(-1, 0)
UNZIP_DEG = Z2Degree(0, -1)


def qdeg(d: Z2Degree) -> int:
    return d.qdeg()


@dataclass(frozen=True)
class UnitMonomial:
    """A unit ±X^x Y^y Z^z of R, with x, y reduced mod 2."""

    sign: int = 1
    x: int = 0
    y: int = 0
    z: int = 0

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError(f"unit sign must be ±1, got {self.sign}")
        if self.x not in (0, 1) or self.y not in (0, 1):
            raise ValueError("X,Y exponents must be reduced mod 2")

    def __mul__(self, other: "UnitMonomial") -> "UnitMonomial":
        return UnitMonomial(
            self.sign * other.sign,
            (self.x + other.x) % 2,
            (self.y + other.y) % 2,
            self.z + other.z,
        )

    def inverse(self) -> "UnitMonomial":
        # X and Y are involutions, so only the sign of the Z exponent flips.
        return UnitMonomial(self.sign, self.x, self.y, -self.z)

    def __pow__(self, n: int) -> "UnitMonomial":
        if n % 2 == 0:
            return UnitMonomial(1, 0, 0, self.z * n)
        return UnitMonomial(self.sign, self.x, self.y, self.z * n)

    def __neg__(self) -> "UnitMonomial":
        return UnitMonomial(-self.sign, self.x, self.y, self.z)

    def specialize(self, vx: int, vy: int, vz: int) -> int:
        _check_pm1(vx, vy, vz)
        return self.sign * vx**self.x * vy**self.y * vz ** (self.z % 2)

    def as_ring_element(self) -> "RingElement":
        return RingElement({(self.x, self.y, self.z): self.sign})

    def __repr__(self) -> str:
        return _render_term(self.sign, self.x, self.y, self.z, lead=True)


ONE = UnitMonomial()
MINUS_ONE = UnitMonomial(-1)
XY = UnitMonomial(1, 1, 1, 0)


def bil(g: Z2Degree, h: Z2Degree) -> UnitMonomial:
    """The R^x-valued bilinear form X^{ac} Y^{bd} Z^{ad-bc} on Z^2 x Z^2."""
    return UnitMonomial(
        1, (g.a * h.a) % 2, (g.b * h.b) % 2, g.a * h.b - g.b * h.a
    )


def koszul_sign(n: int) -> UnitMonomial:
    return ONE if n % 2 == 0 else MINUS_ONE


class RingElement:
    """A normalized element of R: finite map (x,y,z) -> nonzero integer."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[tuple[int, int, int], int] | None = None):
        normalized: dict[tuple[int, int, int], int] = {}
        if terms:
            for (x, y, z), c in terms.items():
                if c == 0:
                    continue
                key = (x % 2, y % 2, z)
                normalized[key] = normalized.get(key, 0) + c
                if normalized[key] == 0:
                    del normalized[key]
        object.__setattr__(self, "terms", normalized)

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero() -> "RingElement":
        return RingElement()

    @staticmethod
    def one() -> "RingElement":
        return RingElement({(0, 0, 0): 1})

    @staticmethod
    def from_int(n: int) -> "RingElement":
        return RingElement({(0, 0, 0): n})

    @staticmethod
    def from_unit(u: UnitMonomial) -> "RingElement":
        return u.as_ring_element()

    # -- ring structure -----------------------------------------------

    def __add__(self, other: "RingElement") -> "RingElement":
        terms = dict(self.terms)
        for k, c in other.terms.items():
            terms[k] = terms.get(k, 0) + c
        return RingElement(terms)

    def __sub__(self, other: "RingElement") -> "RingElement":
        terms = dict(self.terms)
        for k, c in other.terms.items():
            terms[k] = terms.get(k, 0) - c
        return RingElement(terms)

    def __neg__(self) -> "RingElement":
        return RingElement({k: -c for k, c in self.terms.items()})

    def __mul__(self, other) -> "RingElement":
        if isinstance(other, UnitMonomial):
            other = other.as_ring_element()
        if isinstance(other, int):
            other = RingElement.from_int(other)
        terms: dict[tuple[int, int, int], int] = {}
        for (x1, y1, z1), c1 in self.terms.items():
            for (x2, y2, z2), c2 in other.terms.items():
                key = ((x1 + x2) % 2, (y1 + y2) % 2, z1 + z2)
                terms[key] = terms.get(key, 0) + c1 * c2
        return RingElement(terms)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, UnitMonomial):
            other = other.as_ring_element()
        if isinstance(other, int):
            other = RingElement.from_int(other)
        if not isinstance(other, RingElement):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    # -- queries --------------------------------------------------------

    def is_unit(self) -> bool:
        """True iff the element is a signed monomial ±X^x Y^y Z^z."""
        return len(self.terms) == 1 and abs(next(iter(self.terms.values()))) == 1

    def as_unit(self) -> UnitMonomial:
        if not self.is_unit():
            raise ValueError(f"{self} is not a unit monomial")
        (x, y, z), c = next(iter(self.terms.items()))
        return UnitMonomial(c, x, y, z)

    def specialize(self, vx: int, vy: int, vz: int) -> int:
        """Evaluate the ring homomorphism X->vx, Y->vy, Z->vz (all ±1)."""
        _check_pm1(vx, vy, vz)
        return sum(
            c * vx**x * vy**y * vz ** (z % 2)
            for (x, y, z), c in self.terms.items()
        )

    # -- text form ------------------------------------------------------

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for i, key in enumerate(sorted(self.terms)):
            x, y, z = key
            parts.append(_render_term(self.terms[key], x, y, z, lead=(i == 0)))
        return "".join(parts)


def _check_pm1(*values: int) -> None:
    for v in values:
        if v not in (1, -1):
            raise ValueError(f"specialization values must be ±1, got {v}")


def _render_term(coeff: int, x: int, y: int, z: int, lead: bool) -> str:
    sign = "-" if coeff < 0 else ("" if lead else "+")
    mag = abs(coeff)
    factors = []
    if x:
        factors.append("X")
    if y:
        factors.append("Y")
    if z:
        factors.append("Z" if z == 1 else f"Z^{z}")
    if not factors:
        return f"{sign}{mag}"
    coeff_txt = "" if mag == 1 else f"{mag}"
    return sign + coeff_txt + "".join(factors)


_TERM_RE = re.compile(
    r"(?P<sign>[+-]?)\s*(?P<coeff>\d+)?\s*"
    r"(?P<x>X)?\s*(?P<y>Y)?\s*(?:Z(?:\^(?P<zexp>-?\d+))?)?"
)


def parse_ring_element(text: str) -> RingElement:
    """Parse the text rendering of a ring element back, bit-exactly."""
    text = text.strip()
    if text == "0":
        return RingElement.zero()
    terms: dict[tuple[int, int, int], int] = {}
    pos = 0
    first = True
    while pos < len(text):
        m = _TERM_RE.match(text, pos)
        if m is None or m.end() == pos:
            raise ValueError(f"cannot parse ring element at {text[pos:]!r}")
        sign_txt, coeff_txt = m.group("sign"), m.group("coeff")
        if not first and not sign_txt:
            raise ValueError(f"missing +/- between terms in {text!r}")
        has_z = m.group(0).rstrip().endswith(("Z",)) or m.group("zexp") is not None
        if coeff_txt is None and not (m.group("x") or m.group("y") or has_z):
            raise ValueError(f"empty term in {text!r}")
        coeff = int(coeff_txt) if coeff_txt else 1
        if sign_txt == "-":
            coeff = -coeff
        zexp = 0
        if has_z:
            zexp = int(m.group("zexp")) if m.group("zexp") else 1
        key = (1 if m.group("x") else 0, 1 if m.group("y") else 0, zexp)
        terms[key] = terms.get(key, 0) + coeff
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
        first = False
    return RingElement(terms)


def all_unit_specializations() -> Iterator[tuple[int, int, int]]:
    for vx in (1, -1):
        for vy in (1, -1):
            for vz in (1, -1):
                yield (vx, vy, vz)
