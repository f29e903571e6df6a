"""ZX/ZW diagram toolkit: semantics, rule checking, rewriting, translation, qutrit stabilizers."""
from .diagram import Diagram, DiagramError, Phase, structurally_equal
from .numerics import DEFAULT_TOL, RingElement, scalar_equiv
from .semantics import interpret

__all__ = ["Diagram", "DiagramError", "Phase", "structurally_equal", "DEFAULT_TOL",
           "RingElement", "scalar_equiv", "interpret"]
