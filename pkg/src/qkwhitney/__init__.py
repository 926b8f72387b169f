"""Exact torus-equivariant quantum K-theory of the type C_n flag manifold.

The engine expands line-bundle classes in the opposite Schubert basis through
the quantum alcove model, and a harness checks the quantum Whitney relations,
Borel relations and the Whitney-type presentation against it.
"""

__version__ = "0.1.0"

from .chevalley import classical_line_mult, quantum_line_mult
from .polyring import CharElem, NovikovPoly, QKClass, qk_equal
from .qkring import Bundle, LambdaYPoly, LineCombo, lambda_y, line_bundle_class, mult, poly_mult, wedge_class
from .rootsys import SignedPerm, Weight, eps_J

__all__ = [
    "Bundle",
    "CharElem",
    "LambdaYPoly",
    "LineCombo",
    "NovikovPoly",
    "QKClass",
    "SignedPerm",
    "Weight",
    "classical_line_mult",
    "eps_J",
    "lambda_y",
    "line_bundle_class",
    "mult",
    "poly_mult",
    "qk_equal",
    "quantum_line_mult",
    "wedge_class",
]
