"""Exact-arithmetic laboratory for Moyal-Weyl star products, crossed
products with finite matrix groups, twisted traces and their
classification, Hochschild/cyclic/Poisson homological operators, dual
Koszul cohomology and finite-groupoid sector combinatorics.

All computations are exact: scalars live in cyclotomic fields with
rational coefficients, deformation parameters in truncated formal series.
"""

__version__ = "0.1.0"
