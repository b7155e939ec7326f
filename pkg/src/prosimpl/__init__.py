"""Finite simplicial sets, subdivision, homotopy colimits of hom-diagrams and
bounded pro-equivalence checking."""

from .budget import Budgets
from .category import FinCategory, Functor, Groupoid, Poset, nerve
from .complexes import SimplicialComplex, face_poset, order_complex
from .constructions import Product, colimit_of, pushout
from .diagrams import (Diagram, FibrantTestObject, ProMap, corner_extension_test,
                       filtered_refinement_solve, hocolim, pro_equivalence_check, realize_LK)
from .errors import (BudgetError, CoherenceError, MalformedExpression, MustTruncateError,
                     NotFilteredError, ProsimplError, ValidationError)
from .homology import homology, induced_map_homology, smith_normal_form
from .kan import ex, extension_search, function_complex, weq_test
from .simplicial import (FinSSet, SMap, SimplexRef, boundary, circle, horn, identity, nd,
                         standard_simplex, validate, validate_map)
from .subdivision import last_vertex, pi_comparison, sd_sset, tower

__all__ = [
    "Budgets",
    "FinCategory", "Functor", "Groupoid", "Poset", "nerve",
    "SimplicialComplex", "face_poset", "order_complex",
    "Product", "colimit_of", "pushout",
    "Diagram", "FibrantTestObject", "ProMap", "corner_extension_test",
    "filtered_refinement_solve", "hocolim", "pro_equivalence_check", "realize_LK",
    "BudgetError", "CoherenceError", "MalformedExpression", "MustTruncateError",
    "NotFilteredError", "ProsimplError", "ValidationError",
    "homology", "induced_map_homology", "smith_normal_form",
    "ex", "extension_search", "function_complex", "weq_test",
    "FinSSet", "SMap", "SimplexRef", "boundary", "circle", "horn", "identity", "nd",
    "standard_simplex", "validate", "validate_map",
    "last_vertex", "pi_comparison", "sd_sset", "tower",
]
