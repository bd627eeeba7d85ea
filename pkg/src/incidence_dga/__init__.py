"""Incidence algebras of finite simplicial complexes as differential
graded algebras, with the stories model of the universal differential
envelope and pullbacks along simplicial maps."""

from .algebra import (IncidenceElement, basis_pairs, degree_decompose,
                      differential, identity, multiply, pair)
from .complex import (Chain, Complex, ComplexError, basis_chain, betti, border,
                      build_complex, coborder, incidence_coeff, skeleton)
from .functor import (DifferentiabilityReport, MapError, VertexMap,
                      check_differentiable, compose, identity_map,
                      is_simplicial, pullback_algebra, pullback_stories)
from .stories import (IdealReport, StoryElement, StoryError, fair_stories,
                      ideal_generators, in_ideal, is_fair, kahler_d, lift,
                      make_story, sigma, story_element, story_multiply,
                      story_sign, verify_differential_ideal)
from .textio import (ParseError, element_from_json, element_to_json,
                     format_element, parse_complex, parse_element, parse_map)

__all__ = [
    "Chain", "Complex", "ComplexError", "DifferentiabilityReport", "IdealReport",
    "IncidenceElement", "MapError", "ParseError", "StoryElement", "StoryError",
    "VertexMap", "basis_chain", "basis_pairs", "betti", "border", "build_complex",
    "check_differentiable", "coborder", "compose", "degree_decompose", "differential",
    "element_from_json", "element_to_json", "fair_stories", "format_element",
    "ideal_generators", "identity", "identity_map", "in_ideal", "incidence_coeff",
    "is_fair", "is_simplicial", "kahler_d", "lift", "make_story", "multiply", "pair",
    "parse_complex", "parse_element", "parse_map", "pullback_algebra",
    "pullback_stories", "sigma", "skeleton", "story_element", "story_multiply",
    "story_sign", "verify_differential_ideal",
]
