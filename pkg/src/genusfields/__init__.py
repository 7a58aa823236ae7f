"""Genus fields and extended genus fields of abelian extensions of the
rationals and of the rational function field over a finite field.

Character groups cut out abelian fields; the genus computations all reduce
to exact lattice arithmetic in finite abelian groups and their duals.
"""

__version__ = "0.1.0"
