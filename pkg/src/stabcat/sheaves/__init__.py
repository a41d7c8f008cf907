"""Finite windowed models of sheaf categories: the projective line, the
Kronecker module category, and the weighted projective line of weight
type (2).  All universal statements are checked inside the configured
window; the CLI labels such results WINDOW-VERIFIED."""

from .p1 import P1Ambient, P1Line, P1Tor
from .kronecker import KronI, KronP, KronR, KroneckerAmbient
from .x2 import X2Ambient, X2Exc, X2Line, X2Ord

__all__ = [
    "P1Ambient", "P1Line", "P1Tor",
    "KroneckerAmbient", "KronP", "KronI", "KronR",
    "X2Ambient", "X2Line", "X2Exc", "X2Ord",
]
