"""
wgrass: exact cohomology computations for weighted Grassmann orbifolds.

Modules by responsibility:

- ``symbols``: Schubert symbols, the lattice order, dimension data;
- ``polynomial``: exact sparse rational polynomials;
- ``plucker``: relations, weight-vector validity, (W, a) solutions,
  Plucker permutations, divisivity, scalar/permutation equivalence;
- ``torsion``: lens-complex cohomology and torsion certificates;
- ``puzzles``: triangle-puzzle enumeration and weight tables;
- ``gkm``: the fixed-point model, basis restrictions, localization;
- ``structure``: weighted equivariant and ordinary structure constants;
- ``cli``: the command-line surface.
"""

__version__ = "0.1.0"
