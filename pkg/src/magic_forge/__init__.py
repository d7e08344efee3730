"""Verified numerical models of the magic square of Lie algebras.

The package builds, from scratch and at double precision, the chain of
structures leading to the magic square: the four normed division algebras,
the Jordan algebras of hermitian 3x3 matrices over them, the twelve Lie
algebras of the square with their symmetric pairs, the Freudenthal triple
systems of the third row, the invariant tensors of ranks 3, 6 and 8 attached
to the three families of isotropy representations, and the contraction
operators built from those tensors whose spectra are verified against exact
closed forms.
"""

from .division import DivisionAlgebra, R, C, H, O, BY_NAME, BY_DIM
from .jordan import JordanAlgebra

__all__ = [
    'DivisionAlgebra', 'JordanAlgebra',
    'R', 'C', 'H', 'O', 'BY_NAME', 'BY_DIM',
]

__version__ = '0.1.0'
