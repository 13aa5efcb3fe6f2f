"""Exact algebra of ordered colored rooted forests.

Submodules:

- ``forest``: parsing, printing, enumeration, symmetry counts
- ``lincomb``: linear combinations, shuffle and concatenation
- ``grafting``: left grafting and the Grossman–Larson product
- ``cuts``: left cut families and their pieces
- ``hopf``: coproduct, antipode and convolution
- ``butcher``: unordered forests and symmetrization
- ``series``: truncated series under GL composition
- ``laws``: exhaustive law checks driving ``otree verify``
"""

__version__ = "0.1.0"
