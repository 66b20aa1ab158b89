"""Homotopy types of the triple suspension of simply connected closed 6-manifolds.

Submodules, bottom up: `abelian` (cyclic group arithmetic), `catalog`
(elementary complexes, their homotopy groups and maps between them),
`wedgemap` (attaching vectors and wedge self-equivalences), `reduce`
(canonical forms), `cohomops` (operation flags), `classify` (decompositions)
and `oracle` (brute-force orbit enumeration).
"""

__version__ = "0.1.0"
