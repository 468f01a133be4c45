"""Exact presented Chow rings of iterated-blowup moduli spaces.

Build the ring for a rational-surface lattice and n ordered blowups, compute
in it (normal forms, graded Betti ranks, intersection degrees), and cross
check the presentation against two independent oracles: the closed-form
point-count polynomial and brute-force enumeration over small finite fields.
"""

from .groebner import (GroebnerBasis, HilbertFunction, buchberger,
                       hilbert_function, hilbert_linear_algebra, normal_form)
from .poly import (DEGLEX, DEGREVLEX, INT, RAT, Generator, Monomial,
                   MonomialOrder, Polynomial, Vocabulary, compare_monomials,
                   mod_p, parse_polynomial)
from .pointcount import (PointTuple, count_points, enumerate_tuples,
                         formula_count, in_divisor, project, verify_counts)
from .presentation import (BettiTable, PresentedRing, betti_groebner,
                           betti_linear_algebra, betti_product,
                           betti_recursion, build_presentation, degree,
                           keel_polynomial, kunneth_diagonal)
from .surface import (SurfaceData, blowup_of, hirzebruch, load_surface, p1xp1,
                      p2, r_polynomial)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # poly
    "Generator", "Vocabulary", "Monomial", "Polynomial", "MonomialOrder",
    "DEGREVLEX", "DEGLEX", "INT", "RAT", "mod_p", "parse_polynomial",
    "compare_monomials",
    # groebner
    "GroebnerBasis", "HilbertFunction", "buchberger", "normal_form",
    "hilbert_function", "hilbert_linear_algebra",
    # surface
    "SurfaceData", "load_surface", "p2", "p1xp1", "hirzebruch", "blowup_of",
    "r_polynomial",
    # presentation
    "PresentedRing", "BettiTable", "build_presentation", "kunneth_diagonal",
    "keel_polynomial", "betti_product", "betti_recursion", "betti_groebner",
    "betti_linear_algebra", "degree",
    # pointcount
    "PointTuple", "project", "in_divisor", "count_points", "enumerate_tuples",
    "formula_count", "verify_counts",
]
