"""Covering (unified even/odd) Khovanov homology over exact integers.

The ground ring is R = Z[X,Y,Z^{±1}]/(X^2 = Y^2 = 1): specializing
X = Y = Z = 1 recovers even Khovanov homology and X = Z = 1, Y = -1 the
odd theory.  Two pipelines build the hypercube of resolutions of a PD
code -- the twisted exterior (sl2) one and the cup-foam (gl2) one --
and a constructive comparison matches them vertex by vertex.
"""

from .glcube import (
    algebrize_gl2,
    build_kom_gl2_formal,
    compare_hypercubes,
    cube_condition,
    psi_gl2,
)
from .homology import (
    EVEN,
    ODD,
    BigradedHomology,
    LaurentPoly,
    cube_homology,
    euler_characteristic,
    homology,
    jones_oracle,
    specialize_complex,
)
from .linkdiag import PDCode, parse_pd, resolve, saddle
from .polycomplex import (
    Cochain0,
    Cochain1,
    HomogeneousPolycomplex,
    cochain_ratio_iso,
    induced_homotopy,
    induced_morphism,
    koszul_cochain,
    tensor,
)
from .ring import RingElement, UnitMonomial, Z2Degree, bil
from .slcube import build_kom_sl2, psi_sl2, solve_sign_assignment

__all__ = [
    "BigradedHomology", "Cochain0", "Cochain1", "EVEN",
    "HomogeneousPolycomplex", "LaurentPoly", "ODD", "PDCode",
    "RingElement", "UnitMonomial", "Z2Degree", "algebrize_gl2", "bil",
    "build_kom_gl2_formal", "build_kom_sl2", "cochain_ratio_iso",
    "compare_hypercubes", "cube_condition", "cube_homology",
    "euler_characteristic", "homology", "induced_homotopy",
    "induced_morphism", "jones_oracle", "koszul_cochain", "parse_pd",
    "psi_gl2", "psi_sl2", "resolve", "saddle", "solve_sign_assignment",
    "specialize_complex", "tensor",
]

__version__ = "0.1.0"
