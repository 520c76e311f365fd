"""Exact lattice computations: even self-dual lattices, roots of Gamma^{2,2},
Weyl-vector refutation, small heights and root multiplicities."""
from .errors import LatticeLabError
from .gamma22 import (
    RootFamily,
    UnimodularMat2,
    Vec22,
    enumerate_roots22,
    family_for,
    family_member,
    from_sl2,
    inner22,
    is_root22,
    to_sl2,
)
from .height import HeightFunctional, convergents, small_height_root
from .lattice import GramLattice, classify, enumerate_norm, inner, make_gamma, make_standard, norm
from .partitions import colored_partitions, is_algebra_root, root_multiplicity
from .prospector import cartan_check, generation_check, indecomposables, split_positive
from .reflections import orbit, reflect
from .weyl import orthogonal_root, sl2_diagonalize

__version__ = "0.1.0"
