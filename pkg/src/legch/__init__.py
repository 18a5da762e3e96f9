"""Legendrian contact homology workbench over Z/2."""
from .augment import Augmentation, conjugate, enumerate_augmentations, linearize
from .dga import DGA, Element, Generator, parse_dga, parse_element
from .discs import DiscRecord, differential, enumerate_discs
from .errors import LegchError
from .front import FrontDiagram, classical_invariants, front_from_events, parse_front
from .homology import ChainMap, GradedComplex, PoincarePolynomial, gf2_rank, les_feasible, mapping_cone
from .lagrangian import LagrangianDiagram, resolve


def front_dga(front: FrontDiagram, max_mult: int = 4) -> DGA:
    """Chekanov-Eliashberg DGA of a front diagram."""
    return differential(resolve(front), max_mult)


__all__ = [
    "Augmentation", "ChainMap", "DGA", "DiscRecord", "Element", "FrontDiagram", "Generator",
    "GradedComplex", "LagrangianDiagram", "LegchError", "PoincarePolynomial",
    "classical_invariants", "conjugate", "differential", "enumerate_augmentations",
    "enumerate_discs", "front_dga", "front_from_events", "gf2_rank", "les_feasible",
    "linearize", "mapping_cone", "parse_dga", "parse_element", "parse_front", "resolve",
]
