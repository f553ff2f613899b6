"""Exact arithmetic for graded F-modules over R = k[x, y], k = GF(p^e).

Modules: E = H^2_(x,y)(R), R_x, their Frobenius images F(M) = F_*R (x)_R M,
graded duals *Hom(R_x, E) and *Hom(F(R_x), E), and the extension
0 -> E -> L -> (R_x)^vee -> 0 whose candidate splittings are searched exhaustively.
"""
from .extension import ExtensionL, splitting_search, walkthrough
from .field import GF, get_field
from .poly import Poly, parse_poly

__version__ = "0.1.0"

__all__ = ["GF", "get_field", "Poly", "parse_poly", "ExtensionL", "splitting_search", "walkthrough"]
