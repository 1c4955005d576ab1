"""Exact symbolic toolkit for shifted quantum loop algebras.

Subpackages are layered bottom-up: scalars (exact rational arithmetic),
cartan (root data and shifts), qweyl (difference operators), currents
(delta-function calculus), phi (generating-series realization), rtt
(Lax/transfer matrices), shuffle (symmetrized rational functions), laumon
(fixed-point modules), coproduct (tensor structure), cli (entry point).
"""

__version__ = "0.1.0"
