"""ordrev - reversibility of disjoint unions of well orders and their inverses.

Decides whether a finitely presented union of ordinals (and reversed ordinals)
is a reversible poset, and emits a checkable witness whenever it is not.
"""

__version__ = "1.0.0"
